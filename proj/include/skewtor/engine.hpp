#pragma once
// Run orchestration: build per-point derived bundles for a geometry, evaluate
// a selection of identities over the grid, and combine member residuals,
// cross-grid constancy spreads, and one-sided bounds into pass/fail outcomes.
//
// Mode rules: the Lie backend defaults to exact rationals (pass = identically
// zero); float mode compares against the run tolerance.  Charts are float-only
// (finite differences), so exact mode on a chart is a capability error.

#include <string>
#include <vector>

#include "skewtor/geometry.hpp"
#include "skewtor/identities.hpp"
#include "skewtor/point_data.hpp"

namespace skewtor {

struct RunOptions {
  bool exact = true;        // callers set false for float mode; charts force float
  double tol = 1e-6;
  double h_override = 0;    // chart step override, 0 = geometry's own h
  std::vector<std::string> identities;  // empty = whole registry
  bool explicit_selection = false;      // selected ids must be evaluable (f present)
  EvalOptions eval;
  int threads = 1;
};

struct IdentityOutcome {
  std::string id, anchor;
  bool universal = false;
  bool skipped = false;
  std::string skip_reason;
  bool pass = true;
  bool marginal = false;  // float mode: tol < value <= 10*tol somewhere
  double residual = 0;    // max member residual over the grid
  std::string residual_exact;  // exact mode: the same residual as a rational
  int max_point = 0;
  bool has_constancy = false;
  double constancy_value = 0, constancy_spread = 0;
  std::string constancy_value_exact, constancy_spread_exact;
  bool has_bound = false;
  double bound_min = 0;  // min over grid of the bounded value (pass: >= -10*tol)
  std::string bound_min_exact;
};

struct RunResult {
  bool exact = false;
  double tol = 1e-6;
  int grid_points = 1;
  std::vector<IdentityOutcome> outcomes;  // registry order
  bool universal_failure = false;
};

// Grid builders (shared with the classifiers).  Exact grids exist only for
// the Lie backend; chart grids evaluate every grid point.
std::vector<PointData<Rat>> build_grid_exact(const Geometry& geo);
std::vector<PointData<double>> build_grid_float(const Geometry& geo, double h_override,
                                                int threads);

// Combined evaluation of one identity over a grid, in the grid's scalar type.
template <class S>
struct CombinedEval {
  S max_resid{0};
  int max_point = 0;
  bool has_constancy = false;
  S c_value{0}, c_spread{0};
  bool has_bound = false;
  S bound_min{0};
};

template <class S>
CombinedEval<S> eval_on_grid(const std::string& id, const std::vector<PointData<S>>& pts,
                             const EvalOptions& eo) {
  CombinedEval<S> out;
  bool have_c = false;
  S cmin{0}, cmax{0};
  for (std::size_t p = 0; p < pts.size(); ++p) {
    IdentityValue<S> v = eval_identity<S>(id, pts[p], eo);
    S r = point_residual(v);
    if (p == 0 || r > out.max_resid) {
      out.max_resid = r;
      out.max_point = static_cast<int>(p);
    }
    if (v.constancy) {
      if (!have_c) {
        cmin = cmax = *v.constancy;
        out.c_value = *v.constancy;
        have_c = true;
      } else {
        if (*v.constancy < cmin) cmin = *v.constancy;
        if (*v.constancy > cmax) cmax = *v.constancy;
      }
    }
    if (v.bound) {
      if (!out.has_bound || *v.bound < out.bound_min) out.bound_min = *v.bound;
      out.has_bound = true;
    }
  }
  if (have_c) {
    out.has_constancy = true;
    out.c_spread = cmax - cmin;
  }
  return out;
}

// Throws CapabilityError (exact chart, or an explicitly selected identity the
// geometry cannot serve) and std::invalid_argument for unknown identity ids.
RunResult run_identities(const Geometry& geo, const RunOptions& opt);

}  // namespace skewtor
