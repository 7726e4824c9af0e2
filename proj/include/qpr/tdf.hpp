#pragma once

#include <string>
#include <vector>

#include "qpr/drawing.hpp"

namespace qpr {

struct Finding {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::vector<std::string> ids;
};

struct ValidationReport {
  std::vector<Finding> findings;
  bool is_2plane = false;
  bool is_simple_topological = false;
  bool all_3crossings_untangled = false;

  bool ok() const {
    for (const auto& f : findings)
      if (f.severity == Finding::Severity::Error) return false;
    return true;
  }
};

// TDF v1: JSON text with keys version, vertices, edges, crossings, routes,
// rotations, outer_face, meta. A dart is [edge_id, segment_index]; the
// outer_face dart is read as the segment traversed along its route direction.
Drawing parse_tdf(const std::string& bytes);
std::string serialize_tdf(const Drawing& d);

ValidationReport validate(const Drawing& d);

}  // namespace qpr
