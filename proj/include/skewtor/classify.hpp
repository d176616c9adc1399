#pragma once
// Geometry classifiers: each returns a JSON payload with a verdict plus the
// witnesses and consequent checks its theorem demands.  A "false" verdict is
// an answer, not an error; a broken implication (e.g. the first-slot/last-slot
// exchange symmetry holds but curvature is nonzero) is an InvariantViolation,
// which signals an implementation or theorem defect and fails the process.

#include <stdexcept>

#include "json.hpp"
#include "skewtor/geometry.hpp"

namespace skewtor {

struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ClassifyOptions {
  bool exact = true;  // Lie default; charts force float
  double tol = 1e-6;
  double h_override = 0;
  int threads = 1;
};

// Individual classifiers (grid is built per call).
nlohmann::ordered_json classify_first_bianchi(const Geometry&, const ClassifyOptions&);
nlohmann::ordered_json classify_pair_symmetry(const Geometry&, const ClassifyOptions&);
nlohmann::ordered_json classify_zz_flat(const Geometry&, const ClassifyOptions&);
nlohmann::ordered_json classify_nabla_einstein(const Geometry&, const ClassifyOptions&);
nlohmann::ordered_json classify_soliton(const Geometry&, const ClassifyOptions&);

// All five over one shared grid; soliton is skipped with a note when the
// geometry carries no potential.
nlohmann::ordered_json classify_geometry(const Geometry&, const ClassifyOptions&);

}  // namespace skewtor
