#include "tch/invariants.hpp"

#include <algorithm>
#include <set>

namespace tch {

PresentedAlgebra h0_presentation(const Dga& d) {
    std::vector<std::string> offenders;
    PresentedAlgebra pres;
    pres.dga = &d;
    for (int i = 0; i < d.num_generators(); ++i) {
        const Generator& g = d.gen(i);
        if (g.degree == 0)
            pres.generators.push_back(i);
        if (g.degree == 1) {
            const Differential& dg = d.diff(i);
            if (!dg.determined())
                offenders.push_back(g.name);
            else if (dg.kind == Differential::Kind::Poly)
                pres.relations.push_back(dg.poly);
        }
    }
    if (!offenders.empty())
        throw UndeterminedDifferential(
            "h0_presentation: undetermined degree-1 differentials", offenders);
    return pres;
}

namespace {

/// Orients a nonzero relation: the largest word becomes the left-hand side.
RewriteSystem::Rule orient(const Polynomial& p) {
    RewriteSystem::Rule r;
    r.lhs = p.words.back();  // canonical order: last word is the largest
    r.rhs.words.assign(p.words.begin(), p.words.end() - 1);
    return r;
}

/// One left-most reduction step; returns false when no rule applies.
bool reduce_step(const Dga& d, const std::vector<RewriteSystem::Rule>& rules, const Word& w,
                 Polynomial* out) {
    for (size_t pos = 0; pos < w.size(); ++pos) {
        for (const auto& rule : rules) {
            const Word& l = rule.lhs;
            if (l.size() == 1 && l[0].is_idem()) {
                // An idempotent left-hand side only matches the whole word.
                if (w.size() == 1 && w[0] == l[0]) {
                    *out = rule.rhs;
                    return true;
                }
                continue;
            }
            if (pos + l.size() > w.size())
                continue;
            if (!std::equal(l.begin(), l.end(), w.begin() + static_cast<long>(pos)))
                continue;
            std::vector<Word> words;
            for (const Word& u : rule.rhs.words) {
                Word s(w.begin(), w.begin() + static_cast<long>(pos));
                s.insert(s.end(), u.begin(), u.end());
                s.insert(s.end(), w.begin() + static_cast<long>(pos + l.size()), w.end());
                words.push_back(canonicalize_word(d, s));
            }
            *out = make_poly(d, std::move(words));
            return true;
        }
    }
    return false;
}

Polynomial reduce_full(const Dga& d, const std::vector<RewriteSystem::Rule>& rules,
                       const Polynomial& p) {
    // Worklist of words; each rewrite strictly decreases the length-lex order
    // of the word being rewritten, so this terminates.
    Polynomial acc;
    std::vector<Word> work(p.words);
    while (!work.empty()) {
        Word w = work.back();
        work.pop_back();
        Polynomial repl;
        if (reduce_step(d, rules, w, &repl)) {
            for (const Word& u : repl.words)
                work.push_back(u);
        } else {
            acc = poly_add(acc, make_poly(d, {w}));
        }
    }
    return acc;
}

}  // namespace

RewriteSystem complete_presentation(const PresentedAlgebra& pres, int max_len) {
    const Dga& d = *pres.dga;
    RewriteSystem rs;
    auto add_relation = [&](const Polynomial& p) {
        Polynomial nf = reduce_full(d, rs.rules, p);
        if (nf.is_zero())
            return;
        RewriteSystem::Rule r = orient(nf);
        if (word_length(r.lhs) > max_len) {
            rs.status = NormalFormStatus::Truncated;
            return;
        }
        rs.rules.push_back(std::move(r));
    };
    for (const Polynomial& p : pres.relations)
        add_relation(p);

    // Critical pairs: overlap (suffix of l1 == prefix of l2) and containment
    // (l2 inside l1). New relations are reduced, oriented, and added until the
    // system is stable or the length cap discards everything new.
    const size_t kMaxRules = 5000;
    for (size_t i = 0; i < rs.rules.size(); ++i) {
        for (size_t j = 0; j < rs.rules.size(); ++j) {
            if (rs.rules.size() > kMaxRules) {
                rs.status = NormalFormStatus::Truncated;
                return rs;
            }
            const Word l1 = rs.rules[i].lhs;
            const Word l2 = rs.rules[j].lhs;
            if (l1.size() == 1 || l2.size() == 1) {
                if (l1[0].is_idem() || l2[0].is_idem())
                    continue;
            }
            // Overlaps: proper nonempty suffix of l1 equals prefix of l2.
            for (size_t k = 1; k < l1.size() && k < l2.size(); ++k) {
                if (!std::equal(l2.begin(), l2.begin() + static_cast<long>(k),
                                l1.end() - static_cast<long>(k)))
                    continue;
                // superword: l1 followed by the rest of l2
                Word u = l1;
                u.insert(u.end(), l2.begin() + static_cast<long>(k), l2.end());
                // Reduce u via rule i at position 0 and via rule j at the overlap.
                std::vector<Word> wa, wb;
                for (const Word& r : rs.rules[i].rhs.words) {
                    Word s = r;
                    s.insert(s.end(), l2.begin() + static_cast<long>(k), l2.end());
                    wa.push_back(canonicalize_word(d, s));
                }
                for (const Word& r : rs.rules[j].rhs.words) {
                    Word s(l1.begin(), l1.end() - static_cast<long>(k));
                    s.insert(s.end(), r.begin(), r.end());
                    wb.push_back(canonicalize_word(d, s));
                }
                Polynomial pa = reduce_full(d, rs.rules, make_poly(d, std::move(wa)));
                Polynomial pb = reduce_full(d, rs.rules, make_poly(d, std::move(wb)));
                Polynomial delta = poly_add(pa, pb);
                if (!delta.is_zero())
                    add_relation(delta);
            }
            // Containment: l2 a proper subword of l1.
            if (i != j && l2.size() < l1.size() && !(l2.size() == 1 && l2[0].is_idem())) {
                for (size_t pos = 0; pos + l2.size() <= l1.size(); ++pos) {
                    if (!std::equal(l2.begin(), l2.end(), l1.begin() + static_cast<long>(pos)))
                        continue;
                    std::vector<Word> wb;
                    for (const Word& r : rs.rules[j].rhs.words) {
                        Word s(l1.begin(), l1.begin() + static_cast<long>(pos));
                        s.insert(s.end(), r.begin(), r.end());
                        s.insert(s.end(), l1.begin() + static_cast<long>(pos + l2.size()), l1.end());
                        wb.push_back(canonicalize_word(d, s));
                    }
                    Polynomial pa = reduce_full(d, rs.rules, rs.rules[i].rhs);
                    Polynomial pb = reduce_full(d, rs.rules, make_poly(d, std::move(wb)));
                    Polynomial delta = poly_add(pa, pb);
                    if (!delta.is_zero())
                        add_relation(delta);
                }
            }
        }
    }
    return rs;
}

NormalForm normal_form(const RewriteSystem& rs, const PresentedAlgebra& pres, const Polynomial& p) {
    std::set<int> allowed(pres.generators.begin(), pres.generators.end());
    for (const Word& w : p.words)
        for (const Token& t : w)
            if (t.is_gen() && !allowed.count(t.gen))
                throw InputError("normal_form: '" + pres.dga->gen(t.gen).name +
                                 "' is not a degree-0 generator of the presentation");
    NormalForm nf;
    nf.status = rs.status;
    nf.value = reduce_full(*pres.dga, rs.rules, p);
    return nf;
}

NormalForm normal_form(const PresentedAlgebra& pres, const Polynomial& p, int max_len) {
    RewriteSystem rs = complete_presentation(pres, max_len);
    return normal_form(rs, pres, p);
}

int evaluate(const Dga& d, const Augmentation& eps, const Polynomial& p) {
    int acc = 0;
    for (const Word& w : p.words) {
        int prod = 1;
        for (const Token& t : w) {
            if (t.is_idem())
                continue;  // idempotents act as 1 on their own diagonal
            auto it = eps.values.find(d.gen(t.gen).name);
            int v = it == eps.values.end() ? 0 : it->second;
            prod = gf2_mul(prod, v);
        }
        acc = gf2_add(acc, prod);
    }
    return acc;
}

AugmentationCount count_augmentations(const Dga& d, int bound) {
    std::vector<int> deg0, free_gens;
    std::vector<std::string> offenders;
    std::vector<const Polynomial*> constraints;
    for (int i = 0; i < d.num_generators(); ++i) {
        const Generator& g = d.gen(i);
        if (g.degree == 0) {
            deg0.push_back(i);
            if (g.src == g.tgt)
                free_gens.push_back(i);
        } else if (g.degree == 1) {
            const Differential& dg = d.diff(i);
            if (!dg.determined())
                offenders.push_back(g.name);
            else if (dg.kind == Differential::Kind::Poly)
                constraints.push_back(&dg.poly);
        }
    }
    if (!offenders.empty())
        throw UndeterminedDifferential(
            "count_augmentations: undetermined degree-1 differentials", offenders);
    if (static_cast<int>(deg0.size()) > bound)
        throw BoundExceeded("count_augmentations: " + std::to_string(deg0.size()) +
                            " degree-0 generators exceed the bound " + std::to_string(bound));

    AugmentationCount out;
    const size_t nfree = free_gens.size();
    for (unsigned long long mask = 0; mask < (1ULL << nfree); ++mask) {
        Augmentation eps;
        for (int gi : deg0)
            eps.values[d.gen(gi).name] = 0;
        for (size_t k = 0; k < nfree; ++k)
            eps.values[d.gen(free_gens[k]).name] = static_cast<int>((mask >> k) & 1ULL);
        bool ok = true;
        for (const Polynomial* c : constraints)
            if (evaluate(d, eps, *c) != 0) {
                ok = false;
                break;
            }
        if (ok)
            out.augmentations.push_back(std::move(eps));
    }
    out.count = static_cast<long>(out.augmentations.size());
    return out;
}

int gf2_rank(std::vector<std::vector<int>> m) {
    int rank = 0;
    const size_t rows = m.size();
    if (rows == 0)
        return 0;
    const size_t cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pivot = r;
        while (pivot < rows && m[pivot][c] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(m[pivot], m[r]);
        for (size_t i = 0; i < rows; ++i)
            if (i != r && m[i][c])
                for (size_t j = c; j < cols; ++j)
                    m[i][j] ^= m[r][j];
        ++r;
        ++rank;
    }
    return rank;
}

LinearizedHomology linearized_homology(const Dga& d, const Augmentation& eps) {
    std::vector<std::string> offenders;
    for (int i = 0; i < d.num_generators(); ++i)
        if (!d.diff(i).determined())
            offenders.push_back(d.gen(i).name);
    if (!offenders.empty())
        throw UndeterminedDifferential("linearized_homology: undetermined differentials",
                                       offenders);

    // Group generators by degree.
    std::map<int, std::vector<int>> by_degree;
    for (int i = 0; i < d.num_generators(); ++i)
        by_degree[d.gen(i).degree].push_back(i);
    std::map<int, int> pos;  // generator index -> column within its degree
    for (auto& [deg, v] : by_degree)
        for (size_t k = 0; k < v.size(); ++k)
            pos[v[k]] = static_cast<int>(k);

    auto value = [&](int gi) {
        auto it = eps.values.find(d.gen(gi).name);
        return it == eps.values.end() ? 0 : it->second;
    };

    // Word-length-1 part of the ε-twisted differential of generator gi.
    auto linear_row = [&](int gi, std::vector<int>& row, const std::vector<int>& cols_of) {
        const Differential& dg = d.diff(gi);
        if (dg.kind != Differential::Kind::Poly)
            return;
        for (const Word& w : dg.poly.words) {
            std::vector<int> gfac;
            for (const Token& t : w)
                if (t.is_gen())
                    gfac.push_back(t.gen);
            for (size_t i = 0; i < gfac.size(); ++i) {
                int coeff = 1;
                for (size_t j = 0; j < gfac.size(); ++j)
                    if (j != i)
                        coeff = gf2_mul(coeff, value(gfac[j]));
                if (coeff && d.gen(gfac[i]).degree == d.gen(gi).degree - 1)
                    row[static_cast<size_t>(cols_of[static_cast<size_t>(gfac[i])])] ^= 1;
            }
        }
    };

    std::vector<int> col_of(static_cast<size_t>(d.num_generators()), -1);
    for (auto& [deg, v] : by_degree)
        for (size_t k = 0; k < v.size(); ++k)
            col_of[static_cast<size_t>(v[k])] = static_cast<int>(k);

    LinearizedHomology out;
    std::map<int, int> rank;  // degree n -> rank of M_n
    for (auto& [deg, v] : by_degree) {
        auto below = by_degree.find(deg - 1);
        size_t ncols = below == by_degree.end() ? 0 : below->second.size();
        std::vector<std::vector<int>> m(v.size(), std::vector<int>(std::max<size_t>(ncols, 1), 0));
        for (size_t r = 0; r < v.size(); ++r)
            linear_row(v[r], m[r], col_of);
        rank[deg] = ncols == 0 ? 0 : gf2_rank(m);
        out.ranks[deg] = rank[deg];
    }
    for (auto& [deg, v] : by_degree) {
        int rn = rank.count(deg) ? rank[deg] : 0;
        int rnext = rank.count(deg + 1) ? rank[deg + 1] : 0;
        out.betti[deg] = static_cast<int>(v.size()) - rn - rnext;
    }
    return out;
}

ComparisonReport compare_presentations(const Dga& a, const Dga& b, int aug_bound) {
    ComparisonReport rep;
    std::map<int, int> ca, cb;
    for (const Generator& g : a.generators())
        ++ca[g.degree];
    for (const Generator& g : b.generators())
        ++cb[g.degree];
    std::set<int> degrees;
    for (auto& [k, v] : ca)
        degrees.insert(k);
    for (auto& [k, v] : cb)
        degrees.insert(k);
    rep.counts_equal = true;
    for (int deg : degrees) {
        rep.generator_counts[deg] = {ca.count(deg) ? ca[deg] : 0, cb.count(deg) ? cb[deg] : 0};
        if (rep.generator_counts[deg].first != rep.generator_counts[deg].second)
            rep.counts_equal = false;
    }

    bool distinguished = !rep.counts_equal;

    // Augmentation counts and linearized Betti tables per augmentation.
    std::optional<AugmentationCount> aa, ab;
    std::string err_a, err_b;
    try {
        aa = count_augmentations(a, aug_bound);
    } catch (const Error& e) {
        err_a = e.what();
    }
    try {
        ab = count_augmentations(b, aug_bound);
    } catch (const Error& e) {
        err_b = e.what();
    }
    if (aa && ab) {
        rep.augmentations_compared = true;
        rep.augmentation_counts = {aa->count, ab->count};
        if (aa->count != ab->count)
            distinguished = true;
    } else if (!aa && !ab) {
        rep.skipped.push_back("augmentations: undetermined on both sides (" + err_a + ")");
    } else {
        distinguished = true;
        rep.skipped.push_back("augmentations: computable on one side only");
    }

    if (aa && ab && aa->count == ab->count) {
        auto tables = [&](const Dga& d, const AugmentationCount& ac) {
            std::vector<std::map<int, int>> t;
            try {
                for (const Augmentation& eps : ac.augmentations)
                    t.push_back(linearized_homology(d, eps).betti);
                std::sort(t.begin(), t.end());
                return std::optional<std::vector<std::map<int, int>>>(t);
            } catch (const Error&) {
                return std::optional<std::vector<std::map<int, int>>>();
            }
        };
        auto ta = tables(a, *aa), tb = tables(b, *ab);
        if (ta && tb) {
            rep.linearized_compared = true;
            rep.linearized_equal = (*ta == *tb);
            if (!rep.linearized_equal)
                distinguished = true;
        } else if (!ta && !tb) {
            rep.skipped.push_back("linearized homology: undetermined on both sides");
        } else {
            distinguished = true;
            rep.skipped.push_back("linearized homology: computable on one side only");
        }
    }

    rep.verdict = distinguished ? "distinguished" : "not distinguished at this cap";
    return rep;
}

}  // namespace tch
