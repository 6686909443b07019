#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "tch/corpus.hpp"
#include "tch/errors.hpp"
#include "tch/gluing.hpp"

using namespace tch;

namespace {

Dga one_label_dga(const std::string& name, const std::vector<std::string>& gens,
                  const std::string& label = "e") {
    Dga d;
    d.name = name;
    d.add_idempotent(label);
    for (const std::string& g : gens) {
        d.add_generator(g, 0, label, label);
        d.set_diff(g, Differential::zero());
    }
    return d;
}

std::multiset<std::string> gen_names(const Dga& d) {
    std::multiset<std::string> out;
    for (const Generator& g : d.generators()) out.insert(g.name);
    return out;
}

DgaMorphism identity_into(const Dga& c, const Dga& /*target*/) {
    DgaMorphism m;
    for (const std::string& l : c.ring.labels()) m.labels[l] = l;
    for (const Generator& g : c.generators()) m.generators[g.name] = g.name;
    return m;
}

}  // namespace

TEST_CASE("free product is a disjoint union with shared labels identified") {
    Dga a = one_label_dga("a", {"x", "y"});
    Dga b = one_label_dga("b", {"z"});
    GlueReport rep;
    Dga ab = free_product(a, b, &rep);
    CHECK(ab.num_generators() == 3);
    CHECK(ab.ring.size() == 1);  // both "e" labels identified by name
    CHECK(rep.renamed.empty());
    // commutative and associative up to generator-name bijection
    Dga ba = free_product(b, a);
    CHECK(gen_names(ab) == gen_names(ba));
    Dga c = one_label_dga("c", {"w"});
    CHECK(gen_names(free_product(free_product(a, b), c)) ==
          gen_names(free_product(a, free_product(b, c))));
}

TEST_CASE("free product renames colliding b-side generators") {
    Dga a = one_label_dga("a", {"x"});
    Dga b = one_label_dga("b", {"x"});
    GlueReport rep;
    Dga ab = free_product(a, b, &rep);
    CHECK(ab.num_generators() == 2);
    REQUIRE(rep.renamed.size() == 1);
    CHECK(rep.renamed[0].first == "x");
    CHECK(ab.has_generator(rep.renamed[0].second));
}

TEST_CASE("amalgamated free product identifies the shared subalgebra") {
    Dga c = one_label_dga("c", {"s"});
    Dga a = one_label_dga("a", {"s", "x"});
    Dga b = one_label_dga("b", {"s", "y"});
    GlueReport rep;
    Dga glued = amalgamated_free_product(a, b, c, identity_into(c, a), identity_into(c, b), &rep);
    CHECK(glued.num_generators() == 3);  // s, x, y
    CHECK(rep.identified == std::vector<std::string>{"s"});
}

TEST_CASE("amalgamation merges idempotent labels through the maps") {
    // c has labels e1, e2; a sends both to a single label, forcing a merge in
    // the pushout even on the b side.
    Dga c;
    c.name = "c";
    c.add_idempotent("e1");
    c.add_idempotent("e2");
    c.add_generator("s", 0, "e1", "e2");
    c.set_diff("s", Differential::zero());
    Dga a;
    a.name = "a";
    a.add_idempotent("eT");
    a.add_generator("s", 0, "eT", "eT");
    a.set_diff("s", Differential::zero());
    Dga b;
    b.name = "b";
    b.add_idempotent("e1");
    b.add_idempotent("e2");
    b.add_generator("s", 0, "e1", "e2");
    b.add_generator("y", 0, "e2", "e1");
    b.set_diff("s", Differential::zero());
    b.set_diff("y", Differential::zero());
    DgaMorphism ia;
    ia.labels = {{"e1", "eT"}, {"e2", "eT"}};
    ia.generators = {{"s", "s"}};
    GlueReport rep;
    Dga glued = amalgamated_free_product(a, b, c, ia, identity_into(c, b), &rep);
    CHECK(glued.ring.size() == 1);
    CHECK(glued.num_generators() == 2);  // s, y with merged endpoints
    CHECK_FALSE(rep.merged_labels.empty());
}

TEST_CASE("conflicting determined differentials raise DifferentialMismatch") {
    Dga c = one_label_dga("c", {"u", "s"});
    Dga a = one_label_dga("a", {"u", "s"});
    Dga b = one_label_dga("b", {"u", "s"});
    // the shared copy leaves ds open; a says ds = 0, b says ds = u.
    // Degree bookkeeping is irrelevant to the merge conflict itself.
    c.set_diff("s", Differential::unspecified());
    b.set_diff("s", Differential::of(make_poly(b, {{"u"}})));
    CHECK_THROWS_AS(
        amalgamated_free_product(a, b, c, identity_into(c, a), identity_into(c, b), nullptr),
        DifferentialMismatch);
    // Unspecified on one side yields to the determined side.
    a.set_diff("s", Differential::unspecified());
    Dga glued =
        amalgamated_free_product(a, b, c, identity_into(c, a), identity_into(c, b), nullptr);
    CHECK(glued.diff(glued.find_generator("s")).kind == Differential::Kind::Poly);
}

TEST_CASE("colim_dga rejects non-functorial diagrams") {
    // Two parallel edges c -> a disagreeing on a generator image.
    Dga c = one_label_dga("c", {"s"});
    Dga a = one_label_dga("a", {"x", "y"});
    DgaMorphism m1;
    m1.labels = {{"e", "e"}};
    m1.generators = {{"s", "x"}};
    DgaMorphism m2;
    m2.labels = {{"e", "e"}};
    m2.generators = {{"s", "y"}};
    PosetDiagram diagram;
    diagram.nodes = {&c, &a};
    diagram.edges = {{0, 1, m1}, {0, 1, m2}};
    CHECK_THROWS_AS(colim_dga(diagram, nullptr), FunctorialityError);
    // With agreeing edges the colimit exists and identifies s with x.
    diagram.edges = {{0, 1, m1}, {0, 1, m1}};
    Dga col = colim_dga(diagram, nullptr);
    CHECK(col.num_generators() == 2);
}

TEST_CASE("colim over a three-face poset identifies along both inclusions") {
    // Face poset of two edges sharing a vertex: v -> e1, v -> e2.
    Dga v = one_label_dga("v", {"s"});
    Dga e1 = one_label_dga("f1", {"s", "x"});
    Dga e2 = one_label_dga("f2", {"s", "y"});
    PosetDiagram diagram;
    diagram.nodes = {&v, &e1, &e2};
    diagram.edges = {{0, 1, identity_into(v, e1)}, {0, 2, identity_into(v, e2)}};
    Dga col = colim_dga(diagram, nullptr);
    CHECK(col.num_generators() == 3);
    CHECK(gen_names(col) == std::multiset<std::string>{"s", "x", "y"});
}

TEST_CASE("enumerate_crossing_words matches the closed-form count") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Dga d;
        d.add_idempotent("eL");
        d.add_idempotent("eH");
        const int nl = 1 + static_cast<int>(rng() % 3);
        const int nh = 1 + static_cast<int>(rng() % 3);
        const int nr = 1 + static_cast<int>(rng() % 3);
        ChordModuleSpec spec;
        spec.cap = static_cast<int>(rng() % 4);
        for (int i = 0; i < nl; ++i) {
            d.add_generator("l" + std::to_string(i), 0, "eL", "eH");
            spec.left.push_back("l" + std::to_string(i));
        }
        for (int i = 0; i < nh; ++i) {
            d.add_generator("h" + std::to_string(i), 0, "eH", "eH");
            spec.hub.push_back("h" + std::to_string(i));
        }
        for (int i = 0; i < nr; ++i) {
            d.add_generator("r" + std::to_string(i), 0, "eH", "eL");
            spec.right.push_back("r" + std::to_string(i));
        }
        auto words = enumerate_crossing_words(d, spec);
        long expect = 0;
        long hk = 1;
        for (int k = 0; k <= spec.cap; ++k, hk *= nh) expect += static_cast<long>(nl) * hk * nr;
        CHECK(static_cast<long>(words.size()) == expect);
        // names are unique and deterministic
        std::set<std::string> names;
        for (const auto& w : words) names.insert(w.name);
        CHECK(static_cast<long>(names.size()) == expect);
    }
}

TEST_CASE("crossing words on the round-component subalgebra have the p c^k q shape") {
    Dga d = load_entry("unframed_subalgebra").dga;
    ChordModuleSpec spec;
    spec.left = {"p1", "p2"};
    spec.hub = {"a"};
    spec.right = {"q1", "q2"};
    spec.cap = 2;
    auto words = enumerate_crossing_words(d, spec);
    CHECK(words.size() == 12);  // 2 * (1 + 1 + 1) * 2
    for (const auto& w : words) {
        // p-side endpoints lie on the tangle strands, not the round component
        CHECK(d.ring.label(w.src) != "e_unknot");
        CHECK(d.ring.label(w.tgt) != "e_unknot");
        CHECK(word_length(w.word) >= 2);
        // first factor is a p, last is a q, interior factors are the hub chord
        CHECK(d.gen(w.word.front().gen).name.starts_with("p"));
        CHECK(d.gen(w.word.back().gen).name.starts_with("q"));
        for (size_t i = 1; i + 1 < w.word.size(); ++i)
            CHECK(d.gen(w.word[i].gen).name == "a");
    }
}

TEST_CASE("glue_tangles adjoins crossing generators with their differentials") {
    Dga c = one_label_dga("c", {"s"});
    Dga a = one_label_dga("a", {"s", "x"});
    Dga b = one_label_dga("b", {"s", "y"});
    ExtraGenerator g;
    g.name = "c12";
    g.degree = 1;
    g.src = "e";
    g.tgt = "e";
    g.diff_kind = Differential::Kind::Poly;
    g.diff_words = {{"x", "y"}};
    Dga glued =
        glue_tangles(a, b, c, identity_into(c, a), identity_into(c, b), {g}, {}, nullptr);
    CHECK(glued.num_generators() == 4);  // s, x, y, c12
    const Differential& dc = glued.diff(glued.find_generator("c12"));
    REQUIRE(dc.kind == Differential::Kind::Poly);
    CHECK(dc.poly == make_poly(glued, {{"x", "y"}}));
    CHECK(check_d_squared(glued).all_zero_or_undetermined());
}

TEST_CASE("pushout universal property holds on correct pushouts") {
    // Probe with enough room for distinct images.
    Dga probe = one_label_dga("probe", {"u", "v"});

    // Diagram 1: empty amalgam (free product).
    Dga c0;
    c0.name = "c0";
    c0.add_idempotent("e");
    Dga a = one_label_dga("a", {"x"});
    Dga b = one_label_dga("b", {"y"});
    DgaMorphism ic0;
    ic0.labels = {{"e", "e"}};
    Dga r = amalgamated_free_product(a, b, c0, ic0, ic0);
    DgaMorphism ira = identity_into(a, r), irb = identity_into(b, r);
    PushoutCheckReport rep = check_pushout_universal(a, b, c0, ic0, ic0, r, ira, irb, probe, 2);
    CHECK(rep.ok);
    CHECK(rep.pairs_checked > 0);
    CHECK(rep.pairs_with_unique == rep.pairs_checked);

    // Diagram 2: genuine amalgamation over a shared generator.
    Dga c = one_label_dga("c", {"s"});
    Dga a2 = one_label_dga("a2", {"s", "x"});
    Dga b2 = one_label_dga("b2", {"s"});
    Dga r2 = amalgamated_free_product(a2, b2, c, identity_into(c, a2), identity_into(c, b2));
    rep = check_pushout_universal(a2, b2, c, identity_into(c, a2), identity_into(c, b2), r2,
                                  identity_into(a2, r2), identity_into(b2, r2), probe, 2);
    CHECK(rep.ok);
}

TEST_CASE("pushout check detects a planted non-pushout") {
    Dga probe = one_label_dga("probe", {"u", "v"});
    Dga c0;
    c0.name = "c0";
    c0.add_idempotent("e");
    DgaMorphism ic0;
    ic0.labels = {{"e", "e"}};
    Dga a = one_label_dga("a", {"x"});
    Dga b = one_label_dga("b", {"y"});
    // Wrong candidate: collapses x and y to one generator, so factorizations
    // through it cannot reach pairs with different images for x and y.
    Dga wrong = one_label_dga("wrong", {"w"});
    DgaMorphism wra, wrb;
    wra.labels = {{"e", "e"}};
    wra.generators = {{"x", "w"}};
    wrb.labels = {{"e", "e"}};
    wrb.generators = {{"y", "w"}};
    PushoutCheckReport rep = check_pushout_universal(a, b, c0, ic0, ic0, wrong, wra, wrb, probe, 2);
    CHECK_FALSE(rep.ok);
    CHECK(rep.pairs_with_existence < rep.pairs_checked);
}

TEST_CASE("rebuild_unknot reproduces the stored glued entry") {
    RebuildReport r = rebuild_unknot();
    CHECK(r.ok());
    CHECK(r.count_a == 26);
    CHECK(r.count_b == 20);
    CHECK(r.count_c == 16);
    CHECK(r.count_result == 30);
    CHECK(r.mismatches.empty());
}
