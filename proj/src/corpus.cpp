#include "tch/corpus.hpp"

#include <algorithm>
#include <set>

#include "tch/errors.hpp"

namespace tch {

std::string corpus_default_dir() {
#ifdef TCH_CORPUS_DIR
    return TCH_CORPUS_DIR;
#else
    return "corpus/v1";
#endif
}

const std::vector<std::string>& corpus_entries() {
    static const std::vector<std::string> kEntries = {
        "unframed_subalgebra",    "framed_subalgebra", "boundary_diagram",
        "unframed_trivial_tangle", "framed_trivial_h1", "framed_trivial_h2",
        "unknot_T1",              "unknot_T2",         "unknot_glued",
    };
    return kEntries;
}

static std::string resolve_dir(const std::string& dir) {
    return dir.empty() ? corpus_default_dir() : dir;
}

static void require_known(const std::string& id) {
    const auto& ids = corpus_entries();
    if (std::find(ids.begin(), ids.end(), id) == ids.end())
        throw InputError("unknown corpus entry: " + id);
}

CorpusEntry load_entry(const std::string& id, const std::string& dir) {
    require_known(id);
    const std::string path = resolve_dir(dir) + "/" + id + ".json";
    CorpusEntry entry;
    entry.doc = parse_document(read_file(path), "dga");
    entry.dga = dga_from_json(entry.doc);
    if (entry.doc.contains("hat_pairs")) {
        for (const auto& [hat, pair] : entry.doc["hat_pairs"].items()) {
            if (!pair.is_array() || pair.size() != 2)
                throw InputError(path + ": hat_pairs for " + hat + " must be a [t1, t2] pair");
            entry.hat_map[entry.dga.find_generator(hat)] = {
                entry.dga.find_generator(pair[0].get<std::string>()),
                entry.dga.find_generator(pair[1].get<std::string>())};
        }
    }
    return entry;
}

Json load_provenance(const std::string& id, const std::string& dir) {
    require_known(id);
    const std::string path = resolve_dir(dir) + "/" + id + ".provenance.json";
    return parse_document(read_file(path), "provenance");
}

/// Rebuilds a polynomial of `from` inside `to`, matching factors by name.
static Polynomial translate_poly(const Dga& from, const Dga& to, const Polynomial& p) {
    std::vector<std::vector<std::string>> words;
    for (const Word& w : p.words) {
        std::vector<std::string> names;
        for (const Token& t : w)
            names.push_back(t.is_gen() ? from.gen(t.gen).name : from.ring.label(t.idem));
        words.push_back(std::move(names));
    }
    return make_poly(to, words);
}

RebuildReport rebuild_unknot(const std::string& dir) {
    const Dga a = load_entry("unknot_T1", dir).dga;
    const Dga b = load_entry("unknot_T2", dir).dga;
    const Dga c = load_entry("boundary_diagram", dir).dga;
    const Dga expected = load_entry("unknot_glued", dir).dga;

    DgaMorphism ia;
    ia.name = "boundary_into_T1";
    ia.labels = {{"e1", "e_T1"}, {"e2", "e_T1"}, {"e_unknot", "e_unknot"}};
    DgaMorphism ib;
    ib.name = "boundary_into_T2";
    for (const std::string& l : c.ring.labels()) ib.labels[l] = l;
    for (const Generator& g : c.generators()) {
        ia.generators[g.name] = g.name;
        ib.generators[g.name] = g.name;
    }

    RebuildReport report;
    report.count_a = a.num_generators();
    report.count_b = b.num_generators();
    report.count_c = c.num_generators();
    const Dga glued = glue_tangles(a, b, c, ia, ib, {}, {}, &report.glue);
    report.count_result = glued.num_generators();

    auto mismatch = [&report](const std::string& gname, const std::string& detail) {
        report.mismatches.push_back(Issue{gname, detail});
    };

    std::set<std::string> got(glued.ring.labels().begin(), glued.ring.labels().end());
    std::set<std::string> want(expected.ring.labels().begin(), expected.ring.labels().end());
    if (got != want) mismatch("", "idempotent label sets differ");

    for (const Generator& g : expected.generators())
        if (!glued.has_generator(g.name)) mismatch(g.name, "missing from rebuilt algebra");
    for (const Generator& g : glued.generators()) {
        if (!expected.has_generator(g.name)) {
            mismatch(g.name, "absent from the stored glued entry");
            continue;
        }
        const Generator& e = expected.gen(expected.find_generator(g.name));
        if (g.degree != e.degree) mismatch(g.name, "degree differs");
        if (glued.ring.label(g.src) != expected.ring.label(e.src) ||
            glued.ring.label(g.tgt) != expected.ring.label(e.tgt))
            mismatch(g.name, "endpoints differ");

        const Differential& dg = glued.diff(glued.find_generator(g.name));
        const Differential& de = expected.diff(expected.find_generator(g.name));
        if (dg.kind != de.kind) {
            mismatch(g.name, "differential kind differs");
        } else if (dg.kind == Differential::Kind::Poly) {
            Polynomial residual = poly_add(dg.poly, translate_poly(expected, glued, de.poly));
            if (!residual.is_zero())
                mismatch(g.name, "differential differs by " + poly_to_string(glued, residual));
        }
    }
    return report;
}

}  // namespace tch
