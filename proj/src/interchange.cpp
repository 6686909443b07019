#include "tch/interchange.hpp"

#include <fstream>
#include <sstream>

namespace tch {

Json dga_to_json(const Dga& d) {
    Json j;
    j["kind"] = "dga";
    j["format_version"] = 1;
    j["name"] = d.name;
    j["field"] = "GF2";
    j["idempotents"] = d.ring.labels();
    Json gens = Json::array();
    for (const Generator& g : d.generators()) {
        Json e;
        e["name"] = g.name;
        e["degree"] = g.degree;
        e["src"] = d.ring.label(g.src);
        e["tgt"] = d.ring.label(g.tgt);
        if (g.inferred_degree)
            e["inferred_degree"] = true;
        if (g.inferred_endpoints)
            e["inferred_endpoints"] = true;
        gens.push_back(e);
    }
    j["generators"] = gens;
    Json diffs = Json::object();
    for (int i = 0; i < d.num_generators(); ++i) {
        const Differential& dg = d.diff(i);
        if (dg.kind == Differential::Kind::Unspecified) {
            diffs[d.gen(i).name] = nullptr;
        } else if (dg.kind == Differential::Kind::Zero) {
            diffs[d.gen(i).name] = Json::array();
        } else {
            Json words = Json::array();
            for (const Word& w : dg.poly.words) {
                Json ww = Json::array();
                for (const Token& t : w)
                    ww.push_back(t.is_gen() ? d.gen(t.gen).name : d.ring.label(t.idem));
                words.push_back(ww);
            }
            diffs[d.gen(i).name] = words;
        }
    }
    j["differentials"] = diffs;
    return j;
}

Dga dga_from_json(const Json& j) {
    if (!j.is_object() || j.value("kind", "") != "dga")
        throw InputError("document is not a dga");
    if (j.value("field", "GF2") != "GF2")
        throw InputError("unsupported coefficient field '" + j.value("field", "") + "'");
    Dga d;
    d.name = j.value("name", "");
    for (const auto& l : j.at("idempotents"))
        d.add_idempotent(l.get<std::string>());
    for (const auto& g : j.at("generators"))
        d.add_generator(g.at("name").get<std::string>(), g.at("degree").get<int>(),
                        g.at("src").get<std::string>(), g.at("tgt").get<std::string>(),
                        g.value("inferred_degree", false), g.value("inferred_endpoints", false));
    if (j.contains("differentials")) {
        for (const auto& [name, val] : j.at("differentials").items()) {
            int gi = d.find_generator(name);
            if (val.is_null()) {
                d.set_diff(gi, Differential::unspecified());
            } else if (val.is_array() && val.empty()) {
                d.set_diff(gi, Differential::zero());
            } else if (val.is_array()) {
                std::vector<std::vector<std::string>> words;
                for (const auto& w : val)
                    words.push_back(w.get<std::vector<std::string>>());
                d.set_diff(gi, Differential::of(make_poly(d, words)));
            } else {
                throw InputError("bad differential entry for '" + name + "'");
            }
        }
    }
    return d;
}

Json morphism_to_json(const DgaMorphism& m) {
    Json j;
    j["kind"] = "morphism";
    j["name"] = m.name;
    j["labels"] = m.labels;
    j["generators"] = m.generators;
    return j;
}

DgaMorphism morphism_from_json(const Json& j) {
    if (!j.is_object() || j.value("kind", "") != "morphism")
        throw InputError("document is not a morphism");
    DgaMorphism m;
    m.name = j.value("name", "");
    for (const auto& [k, v] : j.at("labels").items())
        m.labels[k] = v.get<std::string>();
    for (const auto& [k, v] : j.at("generators").items())
        m.generators[k] = v.get<std::string>();
    return m;
}

Scene scene_from_json(const Json& j) {
    if (!j.is_object() || j.value("kind", "") != "scene")
        throw InputError("document is not a scene");
    Scene s;
    for (const auto& c : j.value("curves", Json::array())) {
        ParametricCurve pc;
        pc.label = c.at("label").get<std::string>();
        pc.closed = c.value("closed", false);
        pc.strand = c.value("strand", false);
        for (const auto& p : c.at("control_points")) {
            if (!p.is_array() || p.size() != 3)
                throw InputError("control point must be [x,y,z]");
            pc.control_points.emplace_back(p[0].get<double>(), p[1].get<double>(),
                                           p[2].get<double>());
        }
        s.curves.push_back(std::move(pc));
    }
    for (const auto& g : j.value("surfaces", Json::array())) {
        SurfaceGraph sg;
        sg.label = g.at("label").get<std::string>();
        for (const auto& row : g.at("coefficients"))
            sg.coefficients.push_back(row.get<std::vector<double>>());
        if (g.contains("domain")) {
            const auto& dom = g.at("domain");
            sg.umin = dom[0][0].get<double>();
            sg.umax = dom[0][1].get<double>();
            sg.vmin = dom[1][0].get<double>();
            sg.vmax = dom[1][1].get<double>();
        }
        if (g.contains("rotation")) {
            const auto& r = g.at("rotation");
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k)
                    sg.rotation(i, k) = r[static_cast<size_t>(i)][static_cast<size_t>(k)].get<double>();
        }
        if (g.contains("translation")) {
            const auto& t = g.at("translation");
            sg.translation = {t[0].get<double>(), t[1].get<double>(), t[2].get<double>()};
        }
        s.surfaces.push_back(std::move(sg));
    }
    return s;
}

Json scene_to_json(const Scene& s) {
    Json j;
    j["kind"] = "scene";
    Json curves = Json::array();
    for (const auto& c : s.curves) {
        Json cc;
        cc["label"] = c.label;
        cc["closed"] = c.closed;
        cc["strand"] = c.strand;
        Json pts = Json::array();
        for (const auto& p : c.control_points)
            pts.push_back({p.x(), p.y(), p.z()});
        cc["control_points"] = pts;
        curves.push_back(cc);
    }
    j["curves"] = curves;
    Json surfaces = Json::array();
    for (const auto& g : s.surfaces) {
        Json gg;
        gg["label"] = g.label;
        gg["coefficients"] = g.coefficients;
        gg["domain"] = {{g.umin, g.umax}, {g.vmin, g.vmax}};
        Json rot = Json::array();
        for (int i = 0; i < 3; ++i)
            rot.push_back({g.rotation(i, 0), g.rotation(i, 1), g.rotation(i, 2)});
        gg["rotation"] = rot;
        gg["translation"] = {g.translation.x(), g.translation.y(), g.translation.z()};
        surfaces.push_back(gg);
    }
    j["surfaces"] = surfaces;
    return j;
}

Json wellformed_to_json(const WellformedReport& r) {
    Json j;
    j["kind"] = "report";
    j["report"] = "wellformed";
    j["ok"] = r.ok();
    Json issues = Json::array();
    for (const Issue& i : r.issues)
        issues.push_back({{"generator", i.generator}, {"detail", i.detail}});
    j["issues"] = issues;
    return j;
}

Json dsquared_to_json(const Dga& d, const DSquaredReport& r) {
    Json j;
    j["kind"] = "report";
    j["report"] = "d_squared";
    j["ok"] = r.all_zero_or_undetermined();
    Json entries = Json::object();
    for (const auto& [name, st] : r.entries)
        entries[name] = st == DSquaredStatus::Zero        ? "zero"
                        : st == DSquaredStatus::Nonzero   ? "nonzero"
                                                          : "undetermined";
    j["entries"] = entries;
    Json res = Json::object();
    for (const auto& [name, p] : r.residuals)
        res[name] = poly_to_string(d, p);
    j["residuals"] = res;
    return j;
}

Json glue_report_to_json(const GlueReport& r) {
    Json j;
    j["kind"] = "report";
    j["report"] = "glue";
    Json renamed = Json::array();
    for (const auto& [o, n] : r.renamed)
        renamed.push_back({{"from", o}, {"to", n}});
    j["renamed"] = renamed;
    j["identified"] = r.identified;
    Json merged = Json::array();
    for (const auto& [o, n] : r.merged_labels)
        merged.push_back({{"dropped", o}, {"kept", n}});
    j["merged_labels"] = merged;
    return j;
}

Json augmentations_to_json(const AugmentationCount& a) {
    Json j;
    j["kind"] = "report";
    j["report"] = "augmentations";
    j["count"] = a.count;
    Json list = Json::array();
    for (const Augmentation& eps : a.augmentations)
        list.push_back(eps.values);
    j["augmentations"] = list;
    return j;
}

Json linearized_to_json(const LinearizedHomology& h) {
    Json j;
    j["kind"] = "report";
    j["report"] = "linearized_homology";
    Json betti = Json::object();
    for (const auto& [deg, b] : h.betti)
        betti[std::to_string(deg)] = b;
    j["betti"] = betti;
    Json ranks = Json::object();
    for (const auto& [deg, r] : h.ranks)
        ranks[std::to_string(deg)] = r;
    j["ranks"] = ranks;
    return j;
}

Json comparison_to_json(const ComparisonReport& r) {
    Json j;
    j["kind"] = "report";
    j["report"] = "comparison";
    Json counts = Json::object();
    for (const auto& [deg, pr] : r.generator_counts)
        counts[std::to_string(deg)] = {pr.first, pr.second};
    j["generator_counts"] = counts;
    j["counts_equal"] = r.counts_equal;
    if (r.augmentations_compared)
        j["augmentation_counts"] = {r.augmentation_counts.first, r.augmentation_counts.second};
    if (r.linearized_compared)
        j["linearized_equal"] = r.linearized_equal;
    j["skipped"] = r.skipped;
    j["verdict"] = r.verdict;
    return j;
}

Json chords_to_json(const ChordGenerators& g) {
    Json j;
    j["kind"] = "report";
    j["report"] = "chords";
    Json gens = Json::array();
    for (const auto& c : g.generators) {
        Json e;
        e["name"] = c.name;
        e["src"] = c.src_label;
        e["tgt"] = c.tgt_label;
        e["degree"] = c.degree;
        e["length"] = c.chord.length;
        e["params_a"] = c.chord.params_a;
        e["params_b"] = c.chord.params_b;
        gens.push_back(e);
    }
    j["generators"] = gens;
    j["skeleton"] = dga_to_json(g.skeleton);
    return j;
}

Json parse_document(const std::string& text, const std::string& expected_kind) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw InputError("document must be a JSON object");
    if (!expected_kind.empty() && j.value("kind", "") != expected_kind)
        throw InputError("expected a '" + expected_kind + "' document, found kind '" +
                         j.value("kind", "<missing>") + "'");
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace tch
