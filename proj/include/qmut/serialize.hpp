#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "qmut/class_explorer.hpp"
#include "qmut/cluster_engine.hpp"
#include "qmut/laurent_poly.hpp"
#include "qmut/obstructions.hpp"
#include "qmut/quiver_core.hpp"
#include "qmut/sequence_engine.hpp"

namespace qmut {

using Json = nlohmann::json;

// All documents use 1-based vertex numbers.

/// Quiver document: {"n", "matrix", "frozen_rows"?} or {"n", "arrows", "frozen"?}.
/// In the arrows form, [s, t, m] adds m arrows s -> t; vertices above n are
/// frozen and arrows between two frozen vertices are dropped. Frozen rows use
/// the ice quiver convention: entry i > 0 means arrows i -> frozen.
/// Throws UsageError on malformed input (loops, 2-cycles, non-skew matrices)
/// and ResourceError on integers outside the 64-bit range.
IceQuiver quiver_from_json(const Json& doc);
IceQuiver parse_quiver(std::string_view text);
IceQuiver load_quiver(const std::filesystem::path& path);

/// Principal part only; throws UsageError when the document has frozen rows.
ExchangeMatrix exchange_matrix_from_json(const Json& doc);

Json to_json(const ExchangeMatrix& b);
Json to_json(const IceQuiver& q);

/// [1, 4, 3] for the 0-based steps {0, 3, 2}.
Json to_json(const MutationSequence& s);
MutationSequence sequence_from_json(const Json& doc, int n);

Json to_json(const std::vector<VertexStatus>& colors);

Json to_json(const ChordlessCycle& c);
Json to_json(const ColoringResult& r, const ExchangeMatrix& b);
Json to_json(const NoMgsCertificate& c);
Json to_json(const LaNode& root);
Json covering_pairs_json(const IceQuiver& q, const std::vector<Arc>& pairs);
Json sequence_certificate(std::string_view kind, const ExchangeMatrix& b, const MutationSequence& s);
Json to_json(const SearchOutcome& r, const ExchangeMatrix& b, std::string_view kind);

/// {"nx", "ny", "terms": [{"c": "<decimal>", "x": [...], "y": [...]}]} in term order.
Json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const Json& doc);

/// Index with canonical hashes and the mutation edge relation.
Json class_index_json(const MutationClass& c);
/// Writes index.json and rep_<i>.quiver files into dir.
void write_class_dump(const MutationClass& c, const std::filesystem::path& dir);

}  // namespace qmut
