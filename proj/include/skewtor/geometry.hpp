#pragma once
// Backend-tagged geometry plus JSON (de)serialization.  The JSON schema is the
// CLI input format; indices are 1-based there and one representative per
// antisymmetry orbit is accepted.

#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"
#include "skewtor/chart.hpp"
#include "skewtor/lie.hpp"

namespace skewtor {

// malformed or structurally invalid input (CLI exit code 2)
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// request the current configuration cannot serve, e.g. exact mode on a chart
// or a potential-dependent identity without f (CLI exit code 3)
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Geometry {
  std::string name = "input";
  std::variant<LieInstance<Rat>, ChartGeometry> data;

  bool is_lie() const { return std::holds_alternative<LieInstance<Rat>>(data); }
  const LieInstance<Rat>& lie() const { return std::get<LieInstance<Rat>>(data); }
  const ChartGeometry& chart() const { return std::get<ChartGeometry>(data); }
  int dim() const { return is_lie() ? lie().n : chart().n; }
  bool has_f() const { return is_lie() ? lie().has_f : chart().has_f; }
};

// Throws ParseError on malformed or invalid input.
Geometry geometry_from_json(const nlohmann::json& j);
Geometry parse_geometry(const std::string& text);
Geometry load_geometry_file(const std::string& path);

nlohmann::ordered_json geometry_to_json(const Geometry& geo);

}  // namespace skewtor
