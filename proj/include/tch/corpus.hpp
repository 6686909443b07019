#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tch/dga.hpp"
#include "tch/gluing.hpp"
#include "tch/interchange.hpp"

namespace tch {

/// Directory the versioned corpus was installed to at configure time.
std::string corpus_default_dir();

/// Entry ids in canonical (dependency) order.
const std::vector<std::string>& corpus_entries();

/// A loaded corpus entry: the algebra, the raw document (for fields the Dga
/// does not model, e.g. "hat_pairs"), and the hatted-generator replacement map
/// consumed by stabilization_G (empty when the entry has no hatted family).
struct CorpusEntry {
    Dga dga;
    Json doc;
    std::unordered_map<int, std::pair<int, int>> hat_map;
};

/// Loads an entry by id from `dir` (default: corpus_default_dir()).
/// Throws InputError on unknown ids or malformed documents.
CorpusEntry load_entry(const std::string& id, const std::string& dir = "");

/// Loads the provenance sidecar for an entry, if present.
Json load_provenance(const std::string& id, const std::string& dir = "");

struct RebuildReport {
    GlueReport glue;
    int count_a = 0;       ///< generators of the first half
    int count_b = 0;       ///< generators of the second half
    int count_c = 0;       ///< generators of the shared boundary subalgebra
    int count_result = 0;  ///< generators of the glued algebra
    /// Differences between the rebuilt algebra and the stored glued entry.
    std::vector<Issue> mismatches;
    bool ok() const { return mismatches.empty() && count_result == count_a + count_b - count_c; }
};

/// Reconstructs the glued unknot algebra from the two halves and the boundary
/// diagram stored in the corpus, and compares the result generator-by-generator
/// (degrees, endpoints, differentials) against the stored glued entry.
RebuildReport rebuild_unknot(const std::string& dir = "");

}  // namespace tch
