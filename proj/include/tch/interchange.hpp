#pragma once

#include <json.hpp>
#include <string>

#include "tch/chords.hpp"
#include "tch/dga.hpp"
#include "tch/gluing.hpp"
#include "tch/invariants.hpp"

namespace tch {

/// Insertion-ordered JSON so serialized documents are byte-stable.
using Json = nlohmann::ordered_json;

/// Interchange documents are JSON objects tagged with a "kind" field:
/// "dga", "morphism", "scene", "report". The GF(2) field tag is explicit so
/// future coefficient rings can be added without changing the layout.
///
/// DGA layout:
///   {"kind":"dga","format_version":1,"name":...,"field":"GF2",
///    "idempotents":[...],
///    "generators":[{"name":..,"degree":..,"src":..,"tgt":..,
///                   "inferred_degree":bool,"inferred_endpoints":bool}, ...],
///    "differentials":{gen: null | [] | [[factor,...],...], ...}}
/// where null = Unspecified, [] = Zero, and each word is a list of generator
/// names and/or idempotent labels.
Json dga_to_json(const Dga& d);
Dga dga_from_json(const Json& j);

Json morphism_to_json(const DgaMorphism& m);
DgaMorphism morphism_from_json(const Json& j);

Scene scene_from_json(const Json& j);
Json scene_to_json(const Scene& s);

Json wellformed_to_json(const WellformedReport& r);
Json dsquared_to_json(const Dga& d, const DSquaredReport& r);
Json glue_report_to_json(const GlueReport& r);
Json augmentations_to_json(const AugmentationCount& a);
Json linearized_to_json(const LinearizedHomology& h);
Json comparison_to_json(const ComparisonReport& r);
Json chords_to_json(const ChordGenerators& g);

/// Parses any document and checks the "kind" tag.
Json parse_document(const std::string& text, const std::string& expected_kind);

/// Reads a file; throws InputError with the path on failure.
std::string read_file(const std::string& path);

}  // namespace tch
