#pragma once

#include <map>
#include <string>
#include <vector>

#include "tch/dga.hpp"

namespace tch {

/// Presentation of H^0: the degree-0 generators of a DGA modulo the relations
/// {∂y : |y| = 1}. Polynomials stay in the ambient DGA's token space.
struct PresentedAlgebra {
    const Dga* dga = nullptr;
    std::vector<int> generators;       ///< indices of the degree-0 generators
    std::vector<Polynomial> relations; ///< each a degree-0 polynomial
};

/// Extracts the H^0 presentation. Throws UndeterminedDifferential (listing the
/// offenders) if some degree-1 generator has an Unspecified differential.
PresentedAlgebra h0_presentation(const Dga& d);

enum class NormalFormStatus { Complete, Truncated };

struct RewriteSystem {
    struct Rule {
        Word lhs;
        Polynomial rhs;
    };
    std::vector<Rule> rules;
    NormalFormStatus status = NormalFormStatus::Complete;
};

/// Knuth–Bendix-style completion of the presentation's relations under the
/// length-then-lexicographic word order. Rules whose left-hand side exceeds
/// max_len are discarded and the system is marked Truncated.
RewriteSystem complete_presentation(const PresentedAlgebra& pres, int max_len = 6);

struct NormalForm {
    Polynomial value;
    NormalFormStatus status = NormalFormStatus::Complete;
};

/// Reduces `p` (a polynomial in the degree-0 generators) to its normal form
/// under the completed system. GF(2)-linear and idempotent.
NormalForm normal_form(const PresentedAlgebra& pres, const Polynomial& p, int max_len = 6);
NormalForm normal_form(const RewriteSystem& rs, const PresentedAlgebra& pres, const Polynomial& p);

/// GF(2) algebra map to the ground ring: a value in {0,1} for each degree-0
/// generator, extended multiplicatively, with every idempotent acting as 1 on
/// its own diagonal. Generators with src != tgt are forced to 0.
struct Augmentation {
    std::map<std::string, int> values;  ///< degree-0 generator name -> 0/1
};

/// Evaluates an augmentation on a degree-0 polynomial.
int evaluate(const Dga& d, const Augmentation& eps, const Polynomial& p);

struct AugmentationCount {
    long count = 0;
    std::vector<Augmentation> augmentations;  ///< deterministic order
};

/// Exhaustively enumerates augmentations: all GF(2) assignments to degree-0
/// generators with src == tgt (others forced to 0) satisfying ε(∂y) = 0 for
/// every degree-1 generator y. Requires all degree-1 differentials determined
/// (else UndeterminedDifferential) and at most `bound` degree-0 generators
/// (else BoundExceeded).
AugmentationCount count_augmentations(const Dga& d, int bound = 24);

struct LinearizedHomology {
    std::map<int, int> betti;        ///< degree -> GF(2) Betti number
    std::map<int, int> ranks;        ///< degree n -> rank of M_n : C_n -> C_{n-1}
};

/// Linearized homology at an augmentation: twists the differential by
/// g -> g + ε(g)·e, keeps the word-length-1 part, and computes GF(2) ranks.
/// Requires every differential determined.
LinearizedHomology linearized_homology(const Dga& d, const Augmentation& eps);

struct ComparisonReport {
    std::map<int, std::pair<int, int>> generator_counts;  ///< degree -> (a, b)
    bool counts_equal = false;
    bool augmentations_compared = false;  ///< false if both sides undetermined
    std::pair<long, long> augmentation_counts{-1, -1};
    bool linearized_compared = false;
    bool linearized_equal = false;
    std::string verdict;  ///< "distinguished" or "not distinguished at this cap"
    std::vector<std::string> skipped;  ///< invariants skipped and why
};

/// Tabulates generator counts per degree, augmentation counts, and linearized
/// Betti tables per augmentation (as multisets). Any computable difference
/// yields "distinguished"; equal tables yield "not distinguished at this cap".
/// Invariants that raise the same error class on both sides are skipped.
ComparisonReport compare_presentations(const Dga& a, const Dga& b, int aug_bound = 24);

// GF(2) linear algebra helper (row-reduction rank) shared by invariants/tests.
int gf2_rank(std::vector<std::vector<int>> m);

}  // namespace tch
