#include "tch/dga.hpp"

#include <algorithm>
#include <sstream>

namespace tch {

int Dga::add_generator(const std::string& gname, int degree, const std::string& src,
                       const std::string& tgt, bool inferred_degree, bool inferred_endpoints) {
    if (index_.count(gname))
        throw DuplicateName("duplicate generator name '" + gname + "'");
    if (ring.has(gname))
        throw DuplicateName("generator name '" + gname + "' collides with an idempotent label");
    Generator g;
    g.name = gname;
    g.degree = degree;
    g.src = ring.find(src);
    g.tgt = ring.find(tgt);
    g.inferred_degree = inferred_degree;
    g.inferred_endpoints = inferred_endpoints;
    index_[gname] = static_cast<int>(gens_.size());
    gens_.push_back(std::move(g));
    diffs_.push_back(Differential::unspecified());
    return static_cast<int>(gens_.size()) - 1;
}

int Dga::find_generator(const std::string& gname) const {
    auto it = index_.find(gname);
    if (it == index_.end())
        throw UnknownName("unknown generator '" + gname + "'");
    return it->second;
}

Token Dga::token(const std::string& n) const {
    auto it = index_.find(n);
    if (it != index_.end())
        return Token::generator(it->second);
    if (ring.has(n))
        return Token::idempotent(ring.find(n));
    throw UnknownName("unknown name '" + n + "'");
}

Word canonicalize_word(const Dga& d, const Word& raw) {
    if (raw.empty())
        throw InputError("the empty word is not an element of the algebra");
    // Composability check over the raw sequence.
    for (size_t i = 0; i + 1 < raw.size(); ++i) {
        if (d.tgt_of(raw[i]) != d.src_of(raw[i + 1]))
            throw NonComposable("factors " + std::to_string(i) + "," + std::to_string(i + 1) +
                                " do not compose: tgt '" + d.ring.label(d.tgt_of(raw[i])) +
                                "' vs src '" + d.ring.label(d.src_of(raw[i + 1])) + "'");
    }
    Word out;
    for (const Token& t : raw)
        if (t.is_gen())
            out.push_back(t);
    if (out.empty()) {
        // All idempotents; composability makes them all equal.
        return Word{raw.front()};
    }
    return out;
}

Word make_word(const Dga& d, const std::vector<std::string>& factors) {
    Word raw;
    raw.reserve(factors.size());
    for (const auto& f : factors)
        raw.push_back(d.token(f));
    return canonicalize_word(d, raw);
}

int word_src(const Dga& d, const Word& w) { return d.src_of(w.front()); }
int word_tgt(const Dga& d, const Word& w) { return d.tgt_of(w.back()); }

int word_length(const Word& w) {
    int n = 0;
    for (const Token& t : w)
        if (t.is_gen())
            ++n;
    return n;
}

int word_degree(const Dga& d, const Word& w) {
    int deg = 0;
    for (const Token& t : w)
        if (t.is_gen())
            deg += d.gen(t.gen).degree;
    return deg;
}

bool word_less(const Word& a, const Word& b) {
    int la = word_length(a), lb = word_length(b);
    if (la != lb)
        return la < lb;
    // Same length: lexicographic on (is_gen, index); canonical words of equal
    // length have equal shape, so this reduces to index comparison.
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        int ka = a[i].is_gen() ? a[i].gen : a[i].idem;
        int kb = b[i].is_gen() ? b[i].gen : b[i].idem;
        if (a[i].is_gen() != b[i].is_gen())
            return b[i].is_gen();  // idempotent factors sort first
        if (ka != kb)
            return ka < kb;
    }
    return a.size() < b.size();
}

Polynomial make_poly(const Dga& d, std::vector<Word> words) {
    for (Word& w : words)
        w = canonicalize_word(d, w);
    std::sort(words.begin(), words.end(), word_less);
    // GF(2): cancel equal words in pairs.
    std::vector<Word> out;
    for (size_t i = 0; i < words.size();) {
        size_t j = i;
        while (j < words.size() && words[j] == words[i])
            ++j;
        if ((j - i) % 2 == 1)
            out.push_back(words[i]);
        i = j;
    }
    // All words of a nonzero polynomial must share endpoints.
    for (size_t i = 1; i < out.size(); ++i) {
        if (word_src(d, out[i]) != word_src(d, out[0]) ||
            word_tgt(d, out[i]) != word_tgt(d, out[0]))
            throw NonComposable("polynomial mixes words with different endpoints: '" +
                                word_to_string(d, out[0]) + "' vs '" +
                                word_to_string(d, out[i]) + "'");
    }
    return Polynomial{std::move(out)};
}

Polynomial make_poly(const Dga& d, const std::vector<std::vector<std::string>>& words) {
    std::vector<Word> ws;
    ws.reserve(words.size());
    for (const auto& f : words)
        ws.push_back(make_word(d, f));
    return make_poly(d, std::move(ws));
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    // Symmetric difference of two sorted word lists.
    Polynomial out;
    size_t i = 0, j = 0;
    while (i < a.words.size() && j < b.words.size()) {
        if (a.words[i] == b.words[j]) {
            ++i;
            ++j;
        } else if (word_less(a.words[i], b.words[j])) {
            out.words.push_back(a.words[i++]);
        } else {
            out.words.push_back(b.words[j++]);
        }
    }
    out.words.insert(out.words.end(), a.words.begin() + static_cast<long>(i), a.words.end());
    out.words.insert(out.words.end(), b.words.begin() + static_cast<long>(j), b.words.end());
    return out;
}

Polynomial poly_mul(const Dga& d, const Polynomial& a, const Polynomial& b) {
    std::vector<Word> words;
    for (const Word& u : a.words) {
        for (const Word& v : b.words) {
            Word uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            words.push_back(canonicalize_word(d, uv));
        }
    }
    return make_poly(d, std::move(words));
}

std::pair<int, int> poly_endpoints(const Dga& d, const Polynomial& p) {
    if (p.is_zero())
        throw InputError("the zero polynomial has no endpoints");
    return {word_src(d, p.words.front()), word_tgt(d, p.words.front())};
}

std::string word_to_string(const Dga& d, const Word& w) {
    std::ostringstream os;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i)
            os << "*";
        os << (w[i].is_gen() ? d.gen(w[i].gen).name : d.ring.label(w[i].idem));
    }
    return os.str();
}

std::string poly_to_string(const Dga& d, const Polynomial& p) {
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    for (size_t i = 0; i < p.words.size(); ++i) {
        if (i)
            os << " + ";
        os << word_to_string(d, p.words[i]);
    }
    return os.str();
}

std::optional<Polynomial> apply_d(const Dga& d, const Polynomial& p) {
    // Undetermined if any contributing generator is Unspecified.
    for (const Word& w : p.words)
        for (const Token& t : w)
            if (t.is_gen() && !d.diff(t.gen).determined())
                return std::nullopt;
    std::vector<Word> words;
    for (const Word& w : p.words) {
        for (size_t i = 0; i < w.size(); ++i) {
            if (!w[i].is_gen())
                continue;
            const Differential& dg = d.diff(w[i].gen);
            if (dg.kind != Differential::Kind::Poly)
                continue;  // Zero contributes nothing
            for (const Word& u : dg.poly.words) {
                Word spliced(w.begin(), w.begin() + static_cast<long>(i));
                spliced.insert(spliced.end(), u.begin(), u.end());
                spliced.insert(spliced.end(), w.begin() + static_cast<long>(i) + 1, w.end());
                words.push_back(canonicalize_word(d, spliced));
            }
        }
    }
    return make_poly(d, std::move(words));
}

WellformedReport check_wellformed(const Dga& d) {
    WellformedReport rep;
    for (int i = 0; i < d.num_generators(); ++i) {
        const Generator& g = d.gen(i);
        const Differential& dg = d.diff(i);
        if (dg.kind != Differential::Kind::Poly)
            continue;
        if (dg.poly.is_zero()) {
            rep.issues.push_back({g.name, "Poly differential with zero polynomial; use Zero"});
            continue;
        }
        for (const Word& w : dg.poly.words) {
            try {
                Word c = canonicalize_word(d, w);
                if (!(c == w)) {
                    rep.issues.push_back({g.name, "non-canonical word '" + word_to_string(d, w) + "'"});
                    continue;
                }
            } catch (const Error& e) {
                rep.issues.push_back({g.name, std::string("bad word: ") + e.what()});
                continue;
            }
            if (word_src(d, w) != g.src || word_tgt(d, w) != g.tgt)
                rep.issues.push_back(
                    {g.name, "word '" + word_to_string(d, w) + "' has endpoints (" +
                                 d.ring.label(word_src(d, w)) + "," + d.ring.label(word_tgt(d, w)) +
                                 ") but the generator has (" + d.ring.label(g.src) + "," +
                                 d.ring.label(g.tgt) + ")"});
            if (word_degree(d, w) != g.degree - 1)
                rep.issues.push_back({g.name, "word '" + word_to_string(d, w) + "' has degree " +
                                                  std::to_string(word_degree(d, w)) +
                                                  " but |x|-1 = " + std::to_string(g.degree - 1)});
        }
        // Canonical order of the word list itself.
        for (size_t k = 1; k < dg.poly.words.size(); ++k)
            if (!word_less(dg.poly.words[k - 1], dg.poly.words[k]))
                rep.issues.push_back({g.name, "differential word list is not in canonical order"});
    }
    return rep;
}

DSquaredReport check_d_squared(const Dga& d) {
    DSquaredReport rep;
    for (int i = 0; i < d.num_generators(); ++i) {
        const Differential& dg = d.diff(i);
        if (!dg.determined())
            continue;
        if (dg.kind == Differential::Kind::Zero) {
            rep.entries.push_back({d.gen(i).name, DSquaredStatus::Zero});
            continue;
        }
        auto dd = apply_d(d, dg.poly);
        if (!dd) {
            rep.entries.push_back({d.gen(i).name, DSquaredStatus::Undetermined});
        } else if (dd->is_zero()) {
            rep.entries.push_back({d.gen(i).name, DSquaredStatus::Zero});
        } else {
            rep.entries.push_back({d.gen(i).name, DSquaredStatus::Nonzero});
            rep.residuals.push_back({d.gen(i).name, *dd});
        }
    }
    return rep;
}

Polynomial stabilization_G(const Dga& d, const Polynomial& p,
                           const std::unordered_map<int, std::pair<int, int>>& hat_map) {
    std::vector<Word> words;
    for (const Word& w : p.words) {
        if (word_length(w) <= 1) {
            words.push_back(w);  // a length-1 word (or idempotent) maps to itself
            continue;
        }
        for (const Token& t : w)
            if (!t.is_gen() || !hat_map.count(t.gen))
                throw InputError("stabilization_G: factor '" +
                                 (t.is_gen() ? d.gen(t.gen).name : d.ring.label(t.idem)) +
                                 "' is not a hatted generator");
        for (size_t k = 0; k < w.size(); ++k) {
            Word term;
            term.reserve(w.size());
            for (size_t i = 0; i < w.size(); ++i) {
                if (i < k)
                    term.push_back(Token::generator(hat_map.at(w[i].gen).first));
                else if (i == k)
                    term.push_back(w[i]);
                else
                    term.push_back(Token::generator(hat_map.at(w[i].gen).second));
            }
            words.push_back(canonicalize_word(d, term));
        }
    }
    return make_poly(d, std::move(words));
}

}  // namespace tch
