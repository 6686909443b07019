#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tch/ring.hpp"

namespace tch {

/// One factor of a word: either a generator (by declaration index) or an
/// idempotent (by ring label index). Exactly one of the two fields is >= 0.
struct Token {
    int gen = -1;
    int idem = -1;

    static Token generator(int i) { return Token{i, -1}; }
    static Token idempotent(int i) { return Token{-1, i}; }
    bool is_gen() const { return gen >= 0; }
    bool is_idem() const { return idem >= 0; }
    bool operator==(const Token& o) const { return gen == o.gen && idem == o.idem; }
};

/// A composable word of tokens. Canonical form (maintained by canonicalize_word):
/// either a single idempotent token, or a nonempty sequence of generator tokens
/// with matching endpoints between neighbours. The empty word is forbidden.
using Word = std::vector<Token>;

/// GF(2) sum of words with common endpoints. Canonical form: words sorted by
/// word_less (length-first, then lexicographic by declaration index), no repeats
/// (repeats cancel in pairs). The zero polynomial is the empty set of words.
struct Polynomial {
    std::vector<Word> words;

    bool is_zero() const { return words.empty(); }
    bool operator==(const Polynomial& o) const { return words == o.words; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }
};

struct Generator {
    std::string name;
    int degree = 0;
    int src = -1;  ///< ring label index
    int tgt = -1;  ///< ring label index
    bool inferred_degree = false;    ///< degree read off from grading, not stated
    bool inferred_endpoints = false; ///< endpoints chosen to make the data composable
};

/// Three-state differential: identically zero, a known polynomial, or not
/// recorded (Unspecified). Unspecified is data, not an error; it propagates as
/// Undetermined through apply_d.
struct Differential {
    enum class Kind { Zero, Poly, Unspecified };
    Kind kind = Differential::Kind::Unspecified;
    Polynomial poly;  ///< meaningful only when kind == Poly

    static Differential zero() { return Differential{Kind::Zero, {}}; }
    static Differential unspecified() { return Differential{Kind::Unspecified, {}}; }
    static Differential of(Polynomial p) {
        if (p.is_zero()) return zero();
        return Differential{Kind::Poly, std::move(p)};
    }
    bool determined() const { return kind != Kind::Unspecified; }
};

/// Semi-free noncommutative dg-algebra over a Ring. Generators are ordered by
/// declaration; that order drives every canonical ordering in the engine.
class Dga {
  public:
    std::string name;
    Ring ring;

    int add_idempotent(const std::string& label) { return ring.add_label(label); }

    /// Declares a generator with the given degree and endpoint labels.
    /// Generator names and idempotent labels share one namespace.
    int add_generator(const std::string& gname, int degree, const std::string& src,
                      const std::string& tgt, bool inferred_degree = false,
                      bool inferred_endpoints = false);

    int num_generators() const { return static_cast<int>(gens_.size()); }
    const Generator& gen(int i) const { return gens_.at(static_cast<size_t>(i)); }
    const std::vector<Generator>& generators() const { return gens_; }

    bool has_generator(const std::string& gname) const { return index_.count(gname) != 0; }
    int find_generator(const std::string& gname) const;

    /// Resolves a name to a token: generator first, then idempotent label.
    Token token(const std::string& n) const;

    const Differential& diff(int i) const { return diffs_.at(static_cast<size_t>(i)); }
    void set_diff(int i, Differential d) { diffs_.at(static_cast<size_t>(i)) = std::move(d); }
    void set_diff(const std::string& gname, Differential d) {
        set_diff(find_generator(gname), std::move(d));
    }

    /// Endpoints of a token.
    int src_of(const Token& t) const { return t.is_idem() ? t.idem : gen(t.gen).src; }
    int tgt_of(const Token& t) const { return t.is_idem() ? t.idem : gen(t.gen).tgt; }

  private:
    std::vector<Generator> gens_;
    std::vector<Differential> diffs_;
    std::unordered_map<std::string, int> index_;
};

// ---- words and polynomials -------------------------------------------------

/// Canonicalizes a word: checks composability of adjacent factors, absorbs
/// idempotent factors into their generator neighbours (e·x = x = x·e when the
/// endpoints match), and collapses an all-idempotent word to a single token.
/// Throws NonComposable on endpoint mismatch and InputError on the empty word.
Word canonicalize_word(const Dga& d, const Word& raw);

/// Builds a canonical word from a list of names (generators or idempotent labels).
Word make_word(const Dga& d, const std::vector<std::string>& factors);

int word_src(const Dga& d, const Word& w);
int word_tgt(const Dga& d, const Word& w);

/// Number of generator factors (an idempotent word has length 0).
int word_length(const Word& w);

/// Sum of generator degrees (idempotents contribute 0).
int word_degree(const Dga& d, const Word& w);

/// Canonical order: length-first, then lexicographic by declaration index
/// (idempotent words compare by label index and sort before generator words).
bool word_less(const Word& a, const Word& b);

/// Canonical GF(2) sum of canonical words; cancels repeats, verifies that all
/// words share common endpoints (the zero polynomial has no endpoint).
Polynomial make_poly(const Dga& d, std::vector<Word> words);

/// Convenience: polynomial from lists of factor names.
Polynomial make_poly(const Dga& d, const std::vector<std::vector<std::string>>& words);
inline Polynomial make_poly(const Dga& d, std::initializer_list<std::vector<std::string>> words) {
    return make_poly(d, std::vector<std::vector<std::string>>(words));
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b);

/// Product in the path-algebra sense; throws NonComposable if any cross term
/// fails tgt(left) == src(right). Multiplication by zero is zero.
Polynomial poly_mul(const Dga& d, const Polynomial& a, const Polynomial& b);

/// Endpoints of a nonzero polynomial.
std::pair<int, int> poly_endpoints(const Dga& d, const Polynomial& p);

std::string word_to_string(const Dga& d, const Word& w);
std::string poly_to_string(const Dga& d, const Polynomial& p);

// ---- differential calculus -------------------------------------------------

/// Extends the differential to a polynomial by the Leibniz rule over GF(2).
/// Returns nullopt (Undetermined) if any generator occurring in p has an
/// Unspecified differential.
std::optional<Polynomial> apply_d(const Dga& d, const Polynomial& p);

struct Issue {
    std::string generator;  ///< offending generator ("" for algebra-level issues)
    std::string detail;
};

struct WellformedReport {
    std::vector<Issue> issues;
    bool ok() const { return issues.empty(); }
};

/// Structural validation: canonical words, composability, endpoint agreement
/// between each generator and every word of its differential, and the grading
/// rule |∂x| = |x| - 1. Unspecified differentials are skipped.
WellformedReport check_wellformed(const Dga& d);

enum class DSquaredStatus { Zero, Nonzero, Undetermined };

struct DSquaredReport {
    /// One entry per generator with a determined differential.
    std::vector<std::pair<std::string, DSquaredStatus>> entries;
    /// The offending value for each Nonzero entry.
    std::vector<std::pair<std::string, Polynomial>> residuals;
    bool all_zero_or_undetermined() const { return residuals.empty(); }
};

DSquaredReport check_d_squared(const Dga& d);

/// Telescoping stabilization map G on polynomials in "hatted" generators.
/// hat_map sends each hatted generator index to its (t1, t2) replacement pair.
/// On a monomial ĥ_1···ĥ_m it yields Σ_k t1(ĥ_1)···t1(ĥ_{k-1}) ĥ_k t2(ĥ_{k+1})···t2(ĥ_m);
/// a length-1 word maps to itself; the map is extended GF(2)-linearly.
/// Throws InputError if some generator factor is not in hat_map.
Polynomial stabilization_G(const Dga& d, const Polynomial& p,
                           const std::unordered_map<int, std::pair<int, int>>& hat_map);

}  // namespace tch
