#pragma once
// Chart backend: metric, torsion 3-form and potential given as coordinate
// expressions on a box; all derivatives by 5-point 4th-order stencils.
//
// Derivative ladder: a stencil applied to a field that itself contains
// stencils uses a 3x larger step, so the inner layer's truncation and
// roundoff stay subdominant:
//   step h    first derivatives of input fields and pointwise algebra
//             (metric -> Christoffels, dT, nabla T, delta T, df, d|T|^2, ...)
//   step 3h   derivatives of step-h fields (curvature from the connection
//             field, nabla deltaT, Hessians and Laplacians of pointwise
//             scalars)
//   step 9h   derivatives of curvature-layer fields (dScal, nabla Ric)
//   step 27h  Laplacians of curvature-layer scalars and of Delta f
// Mixed second partials use two second-directional-derivative stencils along
// e_i + e_j and e_i - e_j (their difference isolates 4 d_i d_j), keeping every
// stencil one-dimensional.  Maximum per-coordinate reach is < 80h; geometry
// validation requires that margin inside the box.
//
// All residual-facing output is converted to the components of the pointwise
// orthonormal frame E = L^{-T} (g = L L^T Cholesky), so the identity layer is
// backend-independent.

#include <array>
#include <string>
#include <vector>

#include "skewtor/expr.hpp"
#include "skewtor/point_data.hpp"

namespace skewtor {

struct ChartTEntry {
  int i, j, k;  // 0-based orbit representative, i < j < k
  Expr expr;
};

struct ChartGeometry {
  int n = 0;
  std::vector<std::array<double, 2>> box;  // per-coordinate [lo, hi]
  double h = 1e-3;
  std::vector<std::vector<double>> grid;  // evaluation points
  std::vector<Expr> g;                    // row-major n*n metric entries
  std::vector<ChartTEntry> T;
  bool has_f = false;
  Expr f;
};

inline constexpr double kLadderReachSteps = 80.0;  // margin = 80h per coordinate

// Structural validation: dimensions, symmetric positive metric at the grid
// points, stencil margin inside the box.  Returns an error message, empty on
// success.
std::string validate_chart(const ChartGeometry& geo);

// Full derived bundle at one grid point; h_override <= 0 means geo.h.
PointData<double> chart_point_data(const ChartGeometry& geo, const std::vector<double>& x,
                                   double h_override = 0.0);

// Torsion in the orthonormal frame at one point, no derivatives; cheap probe
// for norm checks against closed forms.
Tensor<double> chart_frame_torsion_at(const ChartGeometry& geo, const std::vector<double>& x);

}  // namespace skewtor
