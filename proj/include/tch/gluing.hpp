#pragma once

#include <map>
#include <string>
#include <vector>

#include "tch/dga.hpp"

namespace tch {

/// Inclusion-style morphism: generators map to single generators, idempotent
/// labels map to idempotent labels. Degrees must match; endpoints must match
/// after applying the label map. Both maps are by name.
struct DgaMorphism {
    std::string name;
    std::map<std::string, std::string> labels;      ///< src label -> tgt label
    std::map<std::string, std::string> generators;  ///< src gen -> tgt gen
};

/// Validates `m` as an inclusion-style morphism from `a` to `b`:
/// totality on a's labels and generators, existence of images, degree equality,
/// endpoint compatibility through the label map, and injectivity on generators.
/// Returns issues (empty = valid).
std::vector<Issue> check_morphism(const Dga& a, const Dga& b, const DgaMorphism& m);

/// Chain-map check on the determined part: for each generator x of `a` with a
/// determined differential whose image's differential is also determined,
/// verifies m(∂x) == ∂m(x). Skips (and reports) undetermined pairs.
struct ChainMapReport {
    std::vector<std::string> checked;
    std::vector<std::string> skipped_undetermined;
    std::vector<Issue> violations;
    bool ok() const { return violations.empty(); }
};
ChainMapReport check_chain_map(const Dga& a, const Dga& b, const DgaMorphism& m);

/// Pushes a polynomial of `a` forward along `m` into `b`.
Polynomial map_poly(const Dga& a, const Dga& b, const DgaMorphism& m, const Polynomial& p);

struct GlueReport {
    /// b-side generators renamed to avoid collisions: (old name, new name).
    std::vector<std::pair<std::string, std::string>> renamed;
    /// Generators identified by amalgamation (kept name, per c-generator).
    std::vector<std::string> identified;
    /// Idempotent labels merged: (dropped label, kept label).
    std::vector<std::pair<std::string, std::string>> merged_labels;
};

/// Free product a * b: disjoint union of generators over the label-union ring.
/// Colliding generator names on the b side are renamed with "#1", "#2", ...
/// suffixes; equal idempotent labels are identified.
Dga free_product(const Dga& a, const Dga& b, GlueReport* report = nullptr);

/// Pushout a *_c b along inclusion-style morphisms ia: c->a, ib: c->b.
/// Identifies ia(x) with ib(x) for every generator x of c (keeping the a-side
/// name) and merges idempotent labels accordingly. Conflicting determined
/// differentials raise DifferentialMismatch; Unspecified merges with anything.
Dga amalgamated_free_product(const Dga& a, const Dga& b, const Dga& c, const DgaMorphism& ia,
                             const DgaMorphism& ib, GlueReport* report = nullptr);

/// Specification of a crossing-chord module: words left · hub^k · right with
/// 0 <= k <= cap. Endpoint labels must chain:
/// tgt(left) == src(hub) == tgt(hub) == src(right) for all listed generators.
struct ChordModuleSpec {
    std::vector<std::string> left;
    std::vector<std::string> hub;
    std::vector<std::string> right;
    int cap = 2;
};

struct CrossingWord {
    std::string name;  ///< factor names joined with '*'
    Word word;
    int degree = 0;
    int src = -1;
    int tgt = -1;
};

/// Enumerates the module words of `spec` in deterministic order: k ascending,
/// then left index, hub sequence (lexicographic), right index.
std::vector<CrossingWord> enumerate_crossing_words(const Dga& d, const ChordModuleSpec& spec);

/// An extra generator adjoined by glue_tangles (a crossing chord between the
/// two tangle factors). Its differential is expressed over the glued algebra.
struct ExtraGenerator {
    std::string name;
    int degree = 0;
    std::string src;  ///< label in the glued ring
    std::string tgt;
    Differential::Kind diff_kind = Differential::Kind::Unspecified;
    std::vector<std::vector<std::string>> diff_words;  ///< when kind == Poly
};

/// Glues two tangle algebras over their common boundary subalgebra and adjoins
/// the crossing-chord generators g12 (a->b direction) and g21 (b->a direction):
/// (a *_c b) * <g12> * <g21>.
Dga glue_tangles(const Dga& a, const Dga& b, const Dga& c, const DgaMorphism& ia,
                 const DgaMorphism& ib, const std::vector<ExtraGenerator>& g12,
                 const std::vector<ExtraGenerator>& g21, GlueReport* report = nullptr);

/// Diagram over a finite poset of face inclusions. Nodes are DGAs; edges carry
/// inclusion-style morphisms from `from` to `to`.
struct PosetDiagram {
    std::vector<const Dga*> nodes;
    struct Edge {
        int from = -1;
        int to = -1;
        DgaMorphism map;
    };
    std::vector<Edge> edges;
};

/// Colimit of a diagram of semi-free DGAs: identifies generators and labels
/// along all edge maps (union-find), keeping the earliest node's names.
/// Throws FunctorialityError if two composable edge paths between the same
/// nodes disagree, and DifferentialMismatch on conflicting determined
/// differentials. The two-node discrete diagram reproduces free_product; the
/// span c -> a, c -> b reproduces amalgamated_free_product.
Dga colim_dga(const PosetDiagram& diagram, GlueReport* report = nullptr);

struct PushoutCheckReport {
    long pairs_checked = 0;       ///< compatible pairs (f, g) enumerated
    long pairs_with_existence = 0;  ///< pairs admitting at least one h
    long pairs_with_unique = 0;     ///< pairs admitting exactly one h
    bool ok = false;  ///< every pair had exactly one mediating assignment
};

/// Brute-force check of the pushout universal property at the level of
/// endpoint- and degree-respecting generator assignments (no chain-map
/// condition). Enumerates assignments of a's and b's generators to words of
/// `probe` of length <= max_word_len agreeing on c, and verifies that each such
/// pair factors uniquely through `result` (whose generators must be reachable
/// via `ira`, `irb`, or listed as extra and then freely assignable).
PushoutCheckReport check_pushout_universal(const Dga& a, const Dga& b, const Dga& c,
                                           const DgaMorphism& ia, const DgaMorphism& ib,
                                           const Dga& result, const DgaMorphism& ira,
                                           const DgaMorphism& irb, const Dga& probe,
                                           int max_word_len = 3);

}  // namespace tch
