#include "tch/gluing.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace tch {

namespace {

/// Small union-find over integer slots.
class UnionFind {
  public:
    explicit UnionFind(int n) : parent_(n) {
        for (int i = 0; i < n; ++i)
            parent_[static_cast<size_t>(i)] = i;
    }
    int find(int x) {
        while (parent_[static_cast<size_t>(x)] != x) {
            parent_[static_cast<size_t>(x)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
            x = parent_[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent_[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }

  private:
    std::vector<int> parent_;
};

const std::string& image_label(const DgaMorphism& m, const std::string& l) {
    auto it = m.labels.find(l);
    if (it == m.labels.end())
        throw InputError("morphism '" + m.name + "' has no image for label '" + l + "'");
    return it->second;
}

const std::string& image_gen(const DgaMorphism& m, const std::string& g) {
    auto it = m.generators.find(g);
    if (it == m.generators.end())
        throw InputError("morphism '" + m.name + "' has no image for generator '" + g + "'");
    return it->second;
}

}  // namespace

std::vector<Issue> check_morphism(const Dga& a, const Dga& b, const DgaMorphism& m) {
    std::vector<Issue> issues;
    for (const std::string& l : a.ring.labels()) {
        auto it = m.labels.find(l);
        if (it == m.labels.end()) {
            issues.push_back({"", "no image for label '" + l + "'"});
            continue;
        }
        if (!b.ring.has(it->second))
            issues.push_back({"", "label image '" + it->second + "' not in target ring"});
    }
    std::set<std::string> images;
    for (const Generator& g : a.generators()) {
        auto it = m.generators.find(g.name);
        if (it == m.generators.end()) {
            issues.push_back({g.name, "no image"});
            continue;
        }
        if (!b.has_generator(it->second)) {
            issues.push_back({g.name, "image '" + it->second + "' not a target generator"});
            continue;
        }
        if (!images.insert(it->second).second)
            issues.push_back({g.name, "not injective: image '" + it->second + "' repeated"});
        const Generator& h = b.gen(b.find_generator(it->second));
        if (h.degree != g.degree)
            issues.push_back({g.name, "degree changes from " + std::to_string(g.degree) + " to " +
                                          std::to_string(h.degree)});
        auto ls = m.labels.find(a.ring.label(g.src));
        auto lt = m.labels.find(a.ring.label(g.tgt));
        if (ls != m.labels.end() && b.ring.has(ls->second) &&
            b.ring.find(ls->second) != h.src)
            issues.push_back({g.name, "source endpoint not preserved"});
        if (lt != m.labels.end() && b.ring.has(lt->second) &&
            b.ring.find(lt->second) != h.tgt)
            issues.push_back({g.name, "target endpoint not preserved"});
    }
    return issues;
}

Polynomial map_poly(const Dga& a, const Dga& b, const DgaMorphism& m, const Polynomial& p) {
    std::vector<Word> words;
    for (const Word& w : p.words) {
        Word out;
        for (const Token& t : w) {
            if (t.is_gen())
                out.push_back(Token::generator(b.find_generator(image_gen(m, a.gen(t.gen).name))));
            else
                out.push_back(Token::idempotent(b.ring.find(image_label(m, a.ring.label(t.idem)))));
        }
        words.push_back(canonicalize_word(b, out));
    }
    return make_poly(b, std::move(words));
}

ChainMapReport check_chain_map(const Dga& a, const Dga& b, const DgaMorphism& m) {
    ChainMapReport rep;
    for (const Generator& g : a.generators()) {
        int ia = a.find_generator(g.name);
        int ib = b.find_generator(image_gen(m, g.name));
        const Differential& da = a.diff(ia);
        const Differential& db = b.diff(ib);
        if (!da.determined() || !db.determined()) {
            rep.skipped_undetermined.push_back(g.name);
            continue;
        }
        Polynomial lhs = da.kind == Differential::Kind::Poly ? map_poly(a, b, m, da.poly)
                                                             : Polynomial{};
        Polynomial rhs = db.kind == Differential::Kind::Poly ? db.poly : Polynomial{};
        rep.checked.push_back(g.name);
        if (lhs != rhs)
            rep.violations.push_back({g.name, "m(dx) = " + poly_to_string(b, lhs) +
                                                  " but d m(x) = " + poly_to_string(b, rhs)});
    }
    return rep;
}

Dga colim_dga(const PosetDiagram& diagram, GlueReport* report) {
    const auto& nodes = diagram.nodes;
    const int nn = static_cast<int>(nodes.size());
    if (nn == 0)
        throw InputError("colim_dga: empty diagram");

    // Validate edges as inclusion-style morphisms and detect cycles.
    std::vector<std::vector<const PosetDiagram::Edge*>> out(static_cast<size_t>(nn));
    for (const auto& e : diagram.edges) {
        if (e.from < 0 || e.from >= nn || e.to < 0 || e.to >= nn || e.from == e.to)
            throw InputError("colim_dga: bad edge endpoints");
        auto issues = check_morphism(*nodes[static_cast<size_t>(e.from)],
                                     *nodes[static_cast<size_t>(e.to)], e.map);
        if (!issues.empty())
            throw InputError("colim_dga: edge map '" + e.map.name +
                             "' invalid: " + issues.front().detail);
        out[static_cast<size_t>(e.from)].push_back(&e);
    }
    {
        std::vector<int> state(static_cast<size_t>(nn), 0);
        std::function<void(int)> dfs = [&](int v) {
            state[static_cast<size_t>(v)] = 1;
            for (const auto* e : out[static_cast<size_t>(v)]) {
                if (state[static_cast<size_t>(e->to)] == 1)
                    throw InputError("colim_dga: diagram has a cycle");
                if (state[static_cast<size_t>(e->to)] == 0)
                    dfs(e->to);
            }
            state[static_cast<size_t>(v)] = 2;
        };
        for (int v = 0; v < nn; ++v)
            if (state[static_cast<size_t>(v)] == 0)
                dfs(v);
    }

    // Functoriality: all directed paths between the same nodes must induce the
    // same generator map. DFS from each node, composing along the way.
    for (int s = 0; s < nn; ++s) {
        const Dga& src = *nodes[static_cast<size_t>(s)];
        // reached[t] = composite map of generator names from s to t
        std::map<int, std::map<std::string, std::string>> reached;
        std::function<void(int, std::map<std::string, std::string>)> walk =
            [&](int v, std::map<std::string, std::string> acc) {
                auto it = reached.find(v);
                if (it != reached.end()) {
                    if (it->second != acc)
                        throw FunctorialityError(
                            "colim_dga: two paths from node " + std::to_string(s) + " to node " +
                            std::to_string(v) + " disagree");
                } else {
                    reached[v] = acc;
                }
                for (const auto* e : out[static_cast<size_t>(v)]) {
                    std::map<std::string, std::string> next;
                    for (const auto& [k, mid] : acc)
                        next[k] = image_gen(e->map, mid);
                    walk(e->to, std::move(next));
                }
            };
        std::map<std::string, std::string> id;
        for (const Generator& g : src.generators())
            id[g.name] = g.name;
        walk(s, std::move(id));
    }

    // Slot layout: labels then generators, per node in order.
    std::vector<int> label_base(static_cast<size_t>(nn)), gen_base(static_cast<size_t>(nn));
    int nl = 0, ng = 0;
    for (int v = 0; v < nn; ++v) {
        label_base[static_cast<size_t>(v)] = nl;
        gen_base[static_cast<size_t>(v)] = ng;
        nl += nodes[static_cast<size_t>(v)]->ring.size();
        ng += nodes[static_cast<size_t>(v)]->num_generators();
    }
    UnionFind labels(nl), gens(ng);

    // Labels with equal names are the same idempotent (label union).
    std::map<std::string, int> label_by_name;
    for (int v = 0; v < nn; ++v)
        for (int i = 0; i < nodes[static_cast<size_t>(v)]->ring.size(); ++i) {
            const std::string& l = nodes[static_cast<size_t>(v)]->ring.label(i);
            int slot = label_base[static_cast<size_t>(v)] + i;
            auto [it, fresh] = label_by_name.try_emplace(l, slot);
            if (!fresh)
                labels.unite(it->second, slot);
        }

    // Identify along edges.
    for (const auto& e : diagram.edges) {
        const Dga& f = *nodes[static_cast<size_t>(e.from)];
        const Dga& t = *nodes[static_cast<size_t>(e.to)];
        for (int i = 0; i < f.ring.size(); ++i)
            labels.unite(label_base[static_cast<size_t>(e.from)] + i,
                         label_base[static_cast<size_t>(e.to)] +
                             t.ring.find(image_label(e.map, f.ring.label(i))));
        for (int i = 0; i < f.num_generators(); ++i)
            gens.unite(gen_base[static_cast<size_t>(e.from)] + i,
                       gen_base[static_cast<size_t>(e.to)] +
                           t.find_generator(image_gen(e.map, f.gen(i).name)));
    }

    // Build output ring: classes in order of first occurrence, earliest name kept.
    Dga outd;
    std::vector<int> label_out(static_cast<size_t>(nl), -1);  // slot -> output label idx
    std::set<std::string> used_names;
    for (int v = 0; v < nn; ++v)
        for (int i = 0; i < nodes[static_cast<size_t>(v)]->ring.size(); ++i) {
            int slot = label_base[static_cast<size_t>(v)] + i;
            int root = labels.find(slot);
            const std::string& nm = nodes[static_cast<size_t>(v)]->ring.label(i);
            if (label_out[static_cast<size_t>(root)] < 0) {
                label_out[static_cast<size_t>(root)] = outd.add_idempotent(nm);
                used_names.insert(nm);
            } else if (report) {
                const std::string& kept = outd.ring.label(label_out[static_cast<size_t>(root)]);
                if (nm != kept)
                    report->merged_labels.push_back({nm, kept});
            }
            label_out[static_cast<size_t>(slot)] = label_out[static_cast<size_t>(root)];
        }

    // Build output generators: classes in order of first occurrence; name kept
    // from the first member, with "#k" suffixes on collisions between classes.
    std::vector<int> gen_out(static_cast<size_t>(ng), -1);
    std::vector<int> class_size(static_cast<size_t>(ng), 0);
    for (int v = 0; v < nn; ++v)
        for (int i = 0; i < nodes[static_cast<size_t>(v)]->num_generators(); ++i)
            ++class_size[static_cast<size_t>(gens.find(gen_base[static_cast<size_t>(v)] + i))];
    for (int v = 0; v < nn; ++v) {
        const Dga& node = *nodes[static_cast<size_t>(v)];
        for (int i = 0; i < node.num_generators(); ++i) {
            int slot = gen_base[static_cast<size_t>(v)] + i;
            int root = gens.find(slot);
            if (gen_out[static_cast<size_t>(root)] >= 0) {
                gen_out[static_cast<size_t>(slot)] = gen_out[static_cast<size_t>(root)];
                continue;
            }
            const Generator& g = node.gen(i);
            std::string nm = g.name;
            if (used_names.count(nm) || outd.has_generator(nm)) {
                int k = 1;
                while (outd.has_generator(nm + "#" + std::to_string(k)) ||
                       used_names.count(nm + "#" + std::to_string(k)))
                    ++k;
                std::string fresh = nm + "#" + std::to_string(k);
                if (report)
                    report->renamed.push_back({nm, fresh});
                nm = fresh;
            }
            int oi = outd.add_generator(
                nm, g.degree,
                outd.ring.label(label_out[static_cast<size_t>(
                    labels.find(label_base[static_cast<size_t>(v)] + g.src))]),
                outd.ring.label(label_out[static_cast<size_t>(
                    labels.find(label_base[static_cast<size_t>(v)] + g.tgt))]),
                g.inferred_degree, g.inferred_endpoints);
            gen_out[static_cast<size_t>(root)] = oi;
            gen_out[static_cast<size_t>(slot)] = oi;
            if (report && class_size[static_cast<size_t>(root)] > 1)
                report->identified.push_back(nm);
        }
    }

    // Translate a node polynomial into the output algebra.
    auto translate = [&](int v, const Polynomial& p) {
        std::vector<Word> words;
        for (const Word& w : p.words) {
            Word ow;
            for (const Token& t : w) {
                if (t.is_gen())
                    ow.push_back(Token::generator(
                        gen_out[static_cast<size_t>(gen_base[static_cast<size_t>(v)] + t.gen)]));
                else
                    ow.push_back(Token::idempotent(label_out[static_cast<size_t>(
                        label_base[static_cast<size_t>(v)] + t.idem)]));
            }
            words.push_back(canonicalize_word(outd, ow));
        }
        return make_poly(outd, std::move(words));
    };

    // Differentials: merge across each class; Unspecified yields to determined,
    // two determined values must agree.
    std::vector<bool> has_diff(static_cast<size_t>(outd.num_generators()), false);
    std::vector<Differential> merged(static_cast<size_t>(outd.num_generators()),
                                     Differential::unspecified());
    std::vector<std::string> source_of(static_cast<size_t>(outd.num_generators()));
    for (int v = 0; v < nn; ++v) {
        const Dga& node = *nodes[static_cast<size_t>(v)];
        for (int i = 0; i < node.num_generators(); ++i) {
            const Differential& dg = node.diff(i);
            if (!dg.determined())
                continue;
            int oi = gen_out[static_cast<size_t>(gen_base[static_cast<size_t>(v)] + i)];
            Differential trans = dg.kind == Differential::Kind::Poly
                                     ? Differential::of(translate(v, dg.poly))
                                     : Differential::zero();
            if (!has_diff[static_cast<size_t>(oi)]) {
                has_diff[static_cast<size_t>(oi)] = true;
                merged[static_cast<size_t>(oi)] = trans;
                source_of[static_cast<size_t>(oi)] = node.name;
            } else {
                const Differential& prev = merged[static_cast<size_t>(oi)];
                bool same = prev.kind == trans.kind &&
                            (prev.kind != Differential::Kind::Poly || prev.poly == trans.poly);
                if (!same)
                    throw DifferentialMismatch(
                        "conflicting differentials for identified generator '" +
                        outd.gen(oi).name + "' (from '" + source_of[static_cast<size_t>(oi)] +
                        "' vs '" + node.name + "')");
            }
        }
    }
    for (int i = 0; i < outd.num_generators(); ++i)
        outd.set_diff(i, merged[static_cast<size_t>(i)]);
    return outd;
}

Dga free_product(const Dga& a, const Dga& b, GlueReport* report) {
    PosetDiagram dia;
    dia.nodes = {&a, &b};
    Dga out = colim_dga(dia, report);
    out.name = a.name + "*" + b.name;
    return out;
}

Dga amalgamated_free_product(const Dga& a, const Dga& b, const Dga& c, const DgaMorphism& ia,
                             const DgaMorphism& ib, GlueReport* report) {
    for (auto [m, nm] : {std::pair<const DgaMorphism*, const char*>{&ia, "ia"},
                         std::pair<const DgaMorphism*, const char*>{&ib, "ib"}}) {
        auto issues = check_morphism(c, m == &ia ? a : b, *m);
        if (!issues.empty())
            throw InputError(std::string("amalgamated_free_product: ") + nm + " invalid: " +
                             (issues.front().generator.empty() ? "" : issues.front().generator + ": ") +
                             issues.front().detail);
    }
    PosetDiagram dia;
    dia.nodes = {&a, &b, &c};
    dia.edges.push_back({2, 0, ia});
    dia.edges.push_back({2, 1, ib});
    Dga out = colim_dga(dia, report);
    out.name = a.name + "*_" + c.name + "*" + b.name;
    return out;
}

std::vector<CrossingWord> enumerate_crossing_words(const Dga& d, const ChordModuleSpec& spec) {
    if (spec.left.empty() || spec.right.empty())
        throw InputError("enumerate_crossing_words: left and right sets must be nonempty");
    if (spec.cap < 0)
        throw InputError("enumerate_crossing_words: negative cap");
    auto idx = [&](const std::string& n) { return d.find_generator(n); };
    int mid = d.gen(idx(spec.left.front())).tgt;
    for (const auto& n : spec.left)
        if (d.gen(idx(n)).tgt != mid)
            throw NonComposable("enumerate_crossing_words: left generator '" + n +
                                "' breaks the endpoint chain");
    for (const auto& n : spec.hub)
        if (d.gen(idx(n)).src != mid || d.gen(idx(n)).tgt != mid)
            throw NonComposable("enumerate_crossing_words: hub generator '" + n +
                                "' breaks the endpoint chain");
    for (const auto& n : spec.right)
        if (d.gen(idx(n)).src != mid)
            throw NonComposable("enumerate_crossing_words: right generator '" + n +
                                "' breaks the endpoint chain");
    std::vector<CrossingWord> out;
    for (int k = 0; k <= spec.cap; ++k) {
        if (k > 0 && spec.hub.empty())
            break;
        // k-digit counter in base |hub|, most significant digit first.
        std::vector<int> digits(static_cast<size_t>(k), 0);
        bool more = true;
        while (more) {
            for (const auto& l : spec.left) {
                for (const auto& r : spec.right) {
                    CrossingWord cw;
                    std::vector<std::string> names;
                    names.push_back(l);
                    for (int i = 0; i < k; ++i)
                        names.push_back(spec.hub[static_cast<size_t>(digits[static_cast<size_t>(i)])]);
                    names.push_back(r);
                    cw.word = make_word(d, names);
                    cw.degree = word_degree(d, cw.word);
                    cw.src = word_src(d, cw.word);
                    cw.tgt = word_tgt(d, cw.word);
                    cw.name.clear();
                    for (size_t i = 0; i < names.size(); ++i)
                        cw.name += (i ? "*" : "") + names[i];
                    out.push_back(std::move(cw));
                }
            }
            // advance counter
            more = false;
            for (int i = k - 1; i >= 0; --i) {
                if (++digits[static_cast<size_t>(i)] < static_cast<int>(spec.hub.size())) {
                    more = true;
                    break;
                }
                digits[static_cast<size_t>(i)] = 0;
            }
            if (k == 0)
                more = false;
        }
    }
    return out;
}

Dga glue_tangles(const Dga& a, const Dga& b, const Dga& c, const DgaMorphism& ia,
                 const DgaMorphism& ib, const std::vector<ExtraGenerator>& g12,
                 const std::vector<ExtraGenerator>& g21, GlueReport* report) {
    Dga out = amalgamated_free_product(a, b, c, ia, ib, report);
    out.name = "glue(" + a.name + "," + b.name + ")";
    std::vector<const ExtraGenerator*> extras;
    for (const auto& e : g12)
        extras.push_back(&e);
    for (const auto& e : g21)
        extras.push_back(&e);
    for (const auto* e : extras)
        out.add_generator(e->name, e->degree, e->src, e->tgt);
    for (const auto* e : extras) {
        switch (e->diff_kind) {
            case Differential::Kind::Zero:
                out.set_diff(e->name, Differential::zero());
                break;
            case Differential::Kind::Unspecified:
                break;
            case Differential::Kind::Poly:
                out.set_diff(e->name, Differential::of(make_poly(out, e->diff_words)));
                break;
        }
    }
    return out;
}

// ---- pushout universal property check --------------------------------------

namespace {

struct WordTable {
    // candidate canonical words of `probe`, bucketed by (degree, src, tgt)
    std::map<std::tuple<int, int, int>, std::vector<Word>> buckets;
};

WordTable probe_words(const Dga& probe, int max_len) {
    WordTable tab;
    for (int e = 0; e < probe.ring.size(); ++e)
        tab.buckets[{0, e, e}].push_back(Word{Token::idempotent(e)});
    // BFS over generator sequences.
    std::vector<Word> frontier;
    for (int g = 0; g < probe.num_generators(); ++g) {
        Word w{Token::generator(g)};
        frontier.push_back(w);
    }
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            tab.buckets[{word_degree(probe, w), word_src(probe, w), word_tgt(probe, w)}].push_back(w);
            if (static_cast<int>(w.size()) < max_len) {
                for (int g = 0; g < probe.num_generators(); ++g) {
                    if (probe.gen(g).src == word_tgt(probe, w)) {
                        Word w2 = w;
                        w2.push_back(Token::generator(g));
                        next.push_back(w2);
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    return tab;
}

// Probe-side (degree, src, tgt) key for a generator of `d`, matching ring
// labels by name. Returns false if a label has no counterpart in the probe.
bool probe_key(const Dga& d, const Dga& probe, const Generator& g, std::tuple<int, int, int>* key) {
    const std::string& ls = d.ring.label(g.src);
    const std::string& lt = d.ring.label(g.tgt);
    if (!probe.ring.has(ls) || !probe.ring.has(lt))
        return false;
    *key = {g.degree, probe.ring.find(ls), probe.ring.find(lt)};
    return true;
}

}  // namespace

PushoutCheckReport check_pushout_universal(const Dga& a, const Dga& b, const Dga& c,
                                           const DgaMorphism& ia, const DgaMorphism& ib,
                                           const Dga& result, const DgaMorphism& ira,
                                           const DgaMorphism& irb, const Dga& probe,
                                           int max_word_len) {
    WordTable tab = probe_words(probe, max_word_len);
    static const std::vector<Word> kNone;
    auto candidates = [&](const Dga& d, const Generator& g) -> const std::vector<Word>& {
        std::tuple<int, int, int> key;
        if (!probe_key(d, probe, g, &key))
            return kNone;
        auto it = tab.buckets.find(key);
        return it == tab.buckets.end() ? kNone : it->second;
    };

    // Enumerate assignments f for a, then complete g over b's generators not
    // forced by agreement on c, then count mediating assignments h.
    PushoutCheckReport rep;
    const long kLimit = 4000000;  // safety valve against combinatorial blowups
    long visited = 0;

    std::vector<const std::vector<Word>*> acans;
    for (const Generator& g : a.generators())
        acans.push_back(&candidates(a, g));
    std::vector<const std::vector<Word>*> bcans;
    for (const Generator& g : b.generators())
        bcans.push_back(&candidates(b, g));

    // forced_b[j] = index into c of a generator mapping onto b[j], or -1.
    std::vector<int> forced_b(static_cast<size_t>(b.num_generators()), -1);
    for (int ci = 0; ci < c.num_generators(); ++ci) {
        int bj = b.find_generator(image_gen(ib, c.gen(ci).name));
        forced_b[static_cast<size_t>(bj)] = ci;
    }

    std::vector<Word> fimg(static_cast<size_t>(a.num_generators()));
    std::vector<Word> gimg(static_cast<size_t>(b.num_generators()));

    std::function<void(int)> assign_b;
    std::function<void(int)> assign_a;

    auto count_h = [&]() {
        // h is forced on images of ira/irb; free on any other result generator.
        std::vector<const Word*> forced(static_cast<size_t>(result.num_generators()), nullptr);
        bool consistent = true;
        for (int i = 0; i < a.num_generators() && consistent; ++i) {
            int r = result.find_generator(image_gen(ira, a.gen(i).name));
            if (forced[static_cast<size_t>(r)] && !(*forced[static_cast<size_t>(r)] == fimg[static_cast<size_t>(i)]))
                consistent = false;
            forced[static_cast<size_t>(r)] = &fimg[static_cast<size_t>(i)];
        }
        for (int j = 0; j < b.num_generators() && consistent; ++j) {
            int r = result.find_generator(image_gen(irb, b.gen(j).name));
            if (forced[static_cast<size_t>(r)] && !(*forced[static_cast<size_t>(r)] == gimg[static_cast<size_t>(j)]))
                consistent = false;
            forced[static_cast<size_t>(r)] = &gimg[static_cast<size_t>(j)];
        }
        if (!consistent)
            return 0L;
        long count = 1;
        for (int r = 0; r < result.num_generators(); ++r) {
            if (forced[static_cast<size_t>(r)])
                continue;
            long n = static_cast<long>(candidates(result, result.gen(r)).size());
            count *= n;
            if (count > 2)
                return 3L;  // only 0, 1, many matter
            if (count == 0)
                return 0L;
        }
        return count;
    };

    assign_b = [&](int j) {
        if (++visited > kLimit)
            throw InputError("check_pushout_universal: enumeration limit exceeded");
        if (j == b.num_generators()) {
            ++rep.pairs_checked;
            long n = count_h();
            if (n >= 1)
                ++rep.pairs_with_existence;
            if (n == 1)
                ++rep.pairs_with_unique;
            return;
        }
        if (forced_b[static_cast<size_t>(j)] >= 0) {
            // Forced by agreement on c: g(ib(x)) = f(ia(x)).
            int ci = forced_b[static_cast<size_t>(j)];
            int ai = a.find_generator(image_gen(ia, c.gen(ci).name));
            gimg[static_cast<size_t>(j)] = fimg[static_cast<size_t>(ai)];
            assign_b(j + 1);
            return;
        }
        for (const Word& w : *bcans[static_cast<size_t>(j)]) {
            gimg[static_cast<size_t>(j)] = w;
            assign_b(j + 1);
        }
    };

    assign_a = [&](int i) {
        if (++visited > kLimit)
            throw InputError("check_pushout_universal: enumeration limit exceeded");
        if (i == a.num_generators()) {
            assign_b(0);
            return;
        }
        for (const Word& w : *acans[static_cast<size_t>(i)]) {
            fimg[static_cast<size_t>(i)] = w;
            assign_a(i + 1);
        }
    };
    assign_a(0);

    rep.ok = rep.pairs_checked > 0 && rep.pairs_with_unique == rep.pairs_checked;
    return rep;
}

}  // namespace tch
