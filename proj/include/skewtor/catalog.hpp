#pragma once
// Built-in geometry catalog: named constructors with optional scale (lambda)
// and torsion-family (t) parameters, each carrying the classifier verdicts
// expected at the default parameters.  load_catalog() self-checks a frozen
// closed-form value per entry on first use.

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "skewtor/geometry.hpp"

namespace skewtor {

struct CatalogEntry {
  std::string name;
  std::string summary;
  bool is_chart = false;
  bool accepts_lambda = false;
  bool accepts_t = false;
  // lambda scales the structure/torsion, t selects the torsion multiple where
  // a family exists; both default to 1 and are ignored where not accepted
  std::function<Geometry(const Rat& lambda, const Rat& t)> build;
  nlohmann::ordered_json expected;  // classifier verdicts at default parameters
};

const std::vector<CatalogEntry>& load_catalog();
const CatalogEntry* find_catalog(const std::string& name);

}  // namespace skewtor
