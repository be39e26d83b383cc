#pragma once

#include <string>

#include "qmut/serialize.hpp"

namespace qmut {

struct CheckResult {
  bool ok = false;
  std::string reason;  // empty when ok
};

/// Re-validates a certificate document from its raw data.
///
/// Supported kinds: "no_mgs" (multiple_arrow_cycle, class_level), "coloring",
/// "coloring_refutation", "covering_pairs", "local_acyclicity",
/// "green_to_red" and "maximal_green". Only quiver mutation and freezing are
/// shared with the generators; cycles, reachability and colorings are
/// recomputed here by separate brute-force methods.
CheckResult check_certificate(const Json& doc);

}  // namespace qmut
