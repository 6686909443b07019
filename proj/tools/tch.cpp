// tch: command-line front end for the tangle contact homology engine.
//
// Exit codes: 0 success / ok-report, 1 domain error (validation, degeneracy,
// mismatch), 2 usage error or malformed input. Identical inputs and flags
// produce byte-identical output.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "tch/corpus.hpp"
#include "tch/errors.hpp"
#include "tch/interchange.hpp"
#include "tch/invariants.hpp"

namespace {

using tch::Json;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_out(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tch::InputError("cannot open output file: " + path);
    out << dump(j);
}

tch::Dga load_dga(const std::string& path) {
    return tch::dga_from_json(tch::parse_document(tch::read_file(path), "dga"));
}

tch::DgaMorphism load_morphism(const std::string& path) {
    return tch::morphism_from_json(tch::parse_document(tch::read_file(path), "morphism"));
}

/// Crossing-module document: {"kind":"crossing_module","generators":[
///   {"name":..,"degree":..,"src":..,"tgt":..,"differential":null|[]|[[..],..]}]}
std::vector<tch::ExtraGenerator> load_extras(const std::string& path) {
    Json j = tch::parse_document(tch::read_file(path), "crossing_module");
    std::vector<tch::ExtraGenerator> out;
    for (const Json& g : j.at("generators")) {
        tch::ExtraGenerator e;
        e.name = g.at("name").get<std::string>();
        e.degree = g.at("degree").get<int>();
        e.src = g.at("src").get<std::string>();
        e.tgt = g.at("tgt").get<std::string>();
        const Json& d = g.contains("differential") ? g.at("differential") : Json(nullptr);
        if (d.is_null()) {
            e.diff_kind = tch::Differential::Kind::Unspecified;
        } else {
            e.diff_kind = d.empty() ? tch::Differential::Kind::Zero : tch::Differential::Kind::Poly;
            for (const Json& w : d) e.diff_words.push_back(w.get<std::vector<std::string>>());
        }
        out.push_back(std::move(e));
    }
    return out;
}

struct Options {
    bool json_style = false;
    std::string diag_path;
};

void emit(const Options& opt, const Json& report, const std::string& human) {
    if (opt.json_style)
        std::cout << dump(report);
    else
        std::cout << human;
}

int cmd_check(const Options& opt, const std::string& file) {
    tch::Dga d = load_dga(file);
    tch::WellformedReport wf = tch::check_wellformed(d);
    tch::DSquaredReport d2 = tch::check_d_squared(d);
    Json report = Json::object();
    report["kind"] = "report";
    report["report"] = "check";
    report["name"] = d.name;
    report["wellformed"] = tch::wellformed_to_json(wf);
    report["d_squared"] = tch::dsquared_to_json(d, d2);
    std::string human = "algebra: " + d.name + "\n";
    human += "wellformed: " + std::string(wf.ok() ? "ok" : "FAILED") + "\n";
    for (const tch::Issue& i : wf.issues) human += "  " + i.generator + ": " + i.detail + "\n";
    human += "d_squared: " +
             std::string(d2.all_zero_or_undetermined() ? "zero on determined part" : "NONZERO") +
             "\n";
    for (const auto& [g, p] : d2.residuals)
        human += "  d^2(" + g + ") = " + tch::poly_to_string(d, p) + "\n";
    emit(opt, report, human);
    return wf.ok() && d2.all_zero_or_undetermined() ? 0 : 1;
}

int cmd_glue(const Options& opt, const std::string& fa, const std::string& fb,
             const std::string& fc, const std::string& fma, const std::string& fmb,
             const std::string& f12, const std::string& f21, const std::string& out_path) {
    tch::Dga a = load_dga(fa), b = load_dga(fb), c = load_dga(fc);
    tch::DgaMorphism ia = load_morphism(fma), ib = load_morphism(fmb);
    std::vector<tch::ExtraGenerator> g12, g21;
    if (!f12.empty()) g12 = load_extras(f12);
    if (!f21.empty()) g21 = load_extras(f21);
    tch::GlueReport rep;
    tch::Dga glued = tch::glue_tangles(a, b, c, ia, ib, g12, g21, &rep);
    Json doc = tch::dga_to_json(glued);
    write_out(out_path, doc);
    Json report = tch::glue_report_to_json(rep);
    std::string human = "glued: " + glued.name + " (" + std::to_string(glued.num_generators()) +
                        " generators) -> " + out_path + "\n";
    for (const auto& [o, n] : rep.renamed) human += "renamed: " + o + " -> " + n + "\n";
    for (const auto& [d, k] : rep.merged_labels) human += "merged label: " + d + " -> " + k + "\n";
    emit(opt, report, human);
    return 0;
}

int cmd_aug(const Options& opt, const std::string& file, int bound) {
    tch::Dga d = load_dga(file);
    tch::AugmentationCount a = tch::count_augmentations(d, bound);
    std::string human = "augmentations: " + std::to_string(a.count) + "\n";
    for (size_t i = 0; i < a.augmentations.size(); ++i) {
        human += "[" + std::to_string(i) + "]";
        for (const auto& [g, v] : a.augmentations[i].values)
            human += " " + g + "=" + std::to_string(v);
        human += "\n";
    }
    emit(opt, tch::augmentations_to_json(a), human);
    return 0;
}

int cmd_h0(const Options& opt, const std::string& file, int max_len) {
    tch::Dga d = load_dga(file);
    tch::PresentedAlgebra pres = tch::h0_presentation(d);
    tch::RewriteSystem rs = tch::complete_presentation(pres, max_len);
    Json report = Json::object();
    report["kind"] = "report";
    report["report"] = "h0";
    report["name"] = d.name;
    Json gens = Json::array();
    for (int gi : pres.generators) gens.push_back(d.gen(gi).name);
    report["generators"] = gens;
    Json rels = Json::array();
    for (const tch::Polynomial& r : pres.relations) rels.push_back(tch::poly_to_string(d, r));
    report["relations"] = rels;
    report["completion"] =
        rs.status == tch::NormalFormStatus::Complete ? "complete" : "truncated";
    report["rules"] = static_cast<int>(rs.rules.size());
    std::string human = "H0 presentation of " + d.name + "\n";
    human += "generators:";
    for (int gi : pres.generators) human += " " + d.gen(gi).name;
    human += "\nrelations:\n";
    for (const tch::Polynomial& r : pres.relations)
        human += "  " + tch::poly_to_string(d, r) + "\n";
    human += "completion: " + std::string(report["completion"].get<std::string>()) + " (" +
             std::to_string(rs.rules.size()) + " rules, max-len " + std::to_string(max_len) +
             ")\n";
    emit(opt, report, human);
    return 0;
}

int cmd_linhom(const Options& opt, const std::string& file, int aug_index, int bound) {
    tch::Dga d = load_dga(file);
    tch::AugmentationCount a = tch::count_augmentations(d, bound);
    if (aug_index < 0 || aug_index >= static_cast<int>(a.augmentations.size()))
        throw tch::InputError("--aug index out of range: " + std::to_string(aug_index) + " of " +
                              std::to_string(a.augmentations.size()));
    tch::LinearizedHomology h = tch::linearized_homology(d, a.augmentations[aug_index]);
    Json report = tch::linearized_to_json(h);
    report["augmentation"] = aug_index;
    std::string human =
        "linearized homology of " + d.name + " at augmentation " + std::to_string(aug_index) + "\n";
    for (const auto& [deg, b] : h.betti)
        human += "  degree " + std::to_string(deg) + ": " + std::to_string(b) + "\n";
    emit(opt, report, human);
    return 0;
}

int cmd_chords(const Options& opt, const std::string& file, int grid, double tol, double dedupe) {
    tch::Scene scene = tch::scene_from_json(tch::parse_document(tch::read_file(file), "scene"));
    tch::SceneReport sr = tch::check_scene(scene);
    if (!sr.ok()) {
        for (const tch::Issue& i : sr.issues)
            std::cerr << "scene: " << i.generator << ": " << i.detail << "\n";
        return 1;
    }
    tch::ChordParams params;
    params.grid_n = grid;
    params.tol = tol;
    params.dedupe_radius = dedupe;
    tch::ChordGenerators g = tch::chord_generators(scene, params);
    Json report = tch::chords_to_json(g);
    std::string human = "chord generators: " + std::to_string(g.generators.size()) + "\n";
    for (const tch::OrientedChordGenerator& c : g.generators) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9f", c.chord.length);
        human += "  " + c.name + ": " + c.src_label + " -> " + c.tgt_label + ", degree " +
                 std::to_string(c.degree) + ", length " + buf + "\n";
    }
    emit(opt, report, human);
    return 0;
}

int cmd_corpus(const Options& opt, const std::string& action, const std::string& id,
               const std::string& dir) {
    if (action == "list") {
        Json report = Json::object();
        report["kind"] = "report";
        report["report"] = "corpus";
        report["entries"] = tch::corpus_entries();
        std::string human;
        for (const std::string& e : tch::corpus_entries()) human += e + "\n";
        emit(opt, report, human);
        return 0;
    }
    if (action == "load") {
        if (id.empty()) throw tch::InputError("corpus load requires an entry id");
        std::cout << dump(tch::load_entry(id, dir).doc);
        return 0;
    }
    if (action == "rebuild-unknot") {
        tch::RebuildReport r = tch::rebuild_unknot(dir);
        Json report = Json::object();
        report["kind"] = "report";
        report["report"] = "rebuild_unknot";
        report["counts"] = {{"a", r.count_a}, {"b", r.count_b}, {"c", r.count_c},
                            {"result", r.count_result}};
        Json mism = Json::array();
        for (const tch::Issue& i : r.mismatches)
            mism.push_back({{"generator", i.generator}, {"detail", i.detail}});
        report["mismatches"] = mism;
        report["ok"] = r.ok();
        std::string human = "rebuilt unknot: " + std::to_string(r.count_a) + " + " +
                            std::to_string(r.count_b) + " - " + std::to_string(r.count_c) +
                            " = " + std::to_string(r.count_result) + " generators\n";
        for (const tch::Issue& i : r.mismatches)
            human += "mismatch: " + i.generator + ": " + i.detail + "\n";
        human += std::string(r.ok() ? "matches the stored glued entry\n"
                                    : "DOES NOT match the stored glued entry\n");
        emit(opt, report, human);
        return r.ok() ? 0 : 1;
    }
    throw tch::InputError("unknown corpus action: " + action +
                          " (expected list | load | rebuild-unknot)");
}

void write_diag(const std::string& path, const std::string& cls, const std::string& message) {
    if (path.empty()) return;
    Json j = Json::object();
    j["kind"] = "report";
    j["report"] = "diagnostic";
    j["error"] = cls;
    j["message"] = message;
    std::ofstream out(path, std::ios::binary);
    if (out) out << dump(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tangle contact homology engine"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--json-style", opt.json_style, "emit reports as structured documents");
    app.add_option("--diag", opt.diag_path, "write a diagnostics document on error");

    std::string file, fa, fb, fc, fma, fmb, f12, f21, out_path, action, id, dir;
    int max_len = 6, aug_index = 0, aug_bound = 24, grid = 32, cap = 2;
    double tol = 1e-10, dedupe = 1e-6;

    CLI::App* check = app.add_subcommand("check", "validate a DGA document");
    check->add_option("file", file)->required();

    CLI::App* glue = app.add_subcommand("glue", "glue two tangle algebras over a boundary");
    glue->add_option("a", fa)->required();
    glue->add_option("b", fb)->required();
    glue->add_option("c", fc)->required();
    glue->add_option("map_a", fma)->required();
    glue->add_option("map_b", fmb)->required();
    glue->add_option("--cross12", f12, "crossing-module document, a -> b chords");
    glue->add_option("--cross21", f21, "crossing-module document, b -> a chords");
    glue->add_option("--cap", cap, "crossing-word hub cap (reserved)");
    glue->add_option("-o,--out", out_path)->required();

    CLI::App* aug = app.add_subcommand("aug", "enumerate augmentations");
    aug->add_option("file", file)->required();
    aug->add_option("--bound", aug_bound, "degree-0 generator bound");

    CLI::App* h0 = app.add_subcommand("h0", "degree-zero presentation and completion");
    h0->add_option("file", file)->required();
    h0->add_option("--max-len", max_len, "completion length cap");

    CLI::App* linhom = app.add_subcommand("linhom", "linearized homology Betti table");
    linhom->add_option("file", file)->required();
    linhom->add_option("--aug", aug_index, "augmentation index");
    linhom->add_option("--bound", aug_bound, "degree-0 generator bound");

    CLI::App* chords = app.add_subcommand("chords", "enumerate binormal chords of a scene");
    chords->add_option("scene", file)->required();
    chords->add_option("--grid", grid, "Newton seeds per parameter dimension");
    chords->add_option("--tol", tol, "gradient convergence tolerance");
    chords->add_option("--dedupe", dedupe, "chord deduplication radius");

    CLI::App* corpus = app.add_subcommand("corpus", "corpus entries and reconstruction");
    corpus->add_option("action", action, "list | load | rebuild-unknot")->required();
    corpus->add_option("id", id, "entry id (for load)");
    corpus->add_option("--corpus-dir", dir, "override corpus directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) return cmd_check(opt, file);
        if (glue->parsed()) return cmd_glue(opt, fa, fb, fc, fma, fmb, f12, f21, out_path);
        if (aug->parsed()) return cmd_aug(opt, file, aug_bound);
        if (h0->parsed()) return cmd_h0(opt, file, max_len);
        if (linhom->parsed()) return cmd_linhom(opt, file, aug_index, aug_bound);
        if (chords->parsed()) return cmd_chords(opt, file, grid, tol, dedupe);
        if (corpus->parsed()) return cmd_corpus(opt, action, id, dir);
    } catch (const tch::InputError& e) {
        write_diag(opt.diag_path, "InputError", e.what());
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const tch::Error& e) {
        write_diag(opt.diag_path, "Error", e.what());
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
