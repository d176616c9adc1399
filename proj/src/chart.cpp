#include "skewtor/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "skewtor/tensor.hpp"

namespace skewtor {

namespace {

using Vec = std::vector<double>;
using T2 = Tensor<double>;

// ---- pointwise evaluation -------------------------------------------------

T2 eval_g(const ChartGeometry& geo, const Vec& x) {
  T2 g(geo.n, 2);
  for (int i = 0; i < geo.n; ++i)
    for (int j = 0; j < geo.n; ++j) g(i, j) = geo.g[i * geo.n + j].eval(x.data());
  return g;
}

T2 eval_T3(const ChartGeometry& geo, const Vec& x) {
  T2 t(geo.n, 3);
  for (const auto& e : geo.T) {
    double v = e.expr.eval(x.data());
    set_alt_component(t, {e.i, e.j, e.k}, v);
  }
  return t;
}

double eval_f(const ChartGeometry& geo, const Vec& x) {
  return geo.has_f ? geo.f.eval(x.data()) : 0.0;
}

// Dense inverse by Gauss-Jordan with partial pivoting; n <= 8.
T2 mat_inverse(const T2& m, int n, bool* ok = nullptr) {
  double a[8][16];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
    for (int j = 0; j < n; ++j) a[i][n + j] = (i == j) ? 1.0 : 0.0;
  }
  bool fine = true;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    if (std::fabs(a[p][c]) < 1e-14) {
      fine = false;
      break;
    }
    if (p != c)
      for (int j = 0; j < 2 * n; ++j) std::swap(a[p][j], a[c][j]);
    double inv = 1.0 / a[c][c];
    for (int j = 0; j < 2 * n; ++j) a[c][j] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      double f = a[r][c];
      if (f == 0.0) continue;
      for (int j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  if (ok) *ok = fine;
  T2 out(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = a[i][n + j];
  return out;
}

// Cholesky g = L L^T; returns false if g is not positive definite.
bool cholesky(const T2& g, int n, T2& L) {
  L = T2(n, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = g(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      if (i == j) {
        if (s <= 0.0) return false;
        L(i, i) = std::sqrt(s);
      } else {
        L(i, j) = s / L(j, j);
      }
    }
  }
  return true;
}

// ---- stencils -------------------------------------------------------------

// 4th-order first derivative in coordinate direction `dir` at step s:
// [f(x-2s) - 8 f(x-s) + 8 f(x+s) - f(x+2s)] / (12 s).
template <class F>
auto d1(F&& f, const Vec& x, int dir, double s) {
  Vec p = x;
  p[dir] = x[dir] - 2 * s;
  auto acc = f(p);
  p[dir] = x[dir] - s;
  acc -= 8.0 * f(p);
  p[dir] = x[dir] + s;
  acc += 8.0 * f(p);
  p[dir] = x[dir] + 2 * s;
  acc -= f(p);
  return (1.0 / (12.0 * s)) * acc;
}

// 4th-order second directional derivative along v = e_i + sj * e_j (sj in
// {0, +1, -1}); center value passed in so callers can share it:
// [-f(-2v) + 16 f(-v) - 30 f(0) + 16 f(+v) - f(+2v)] / (12 s^2).
template <class F>
double d2_dir(F&& f, const Vec& x, int i, int j, double sj, double s, double f0) {
  auto at = [&](double k) {
    Vec p = x;
    p[i] += k * s;
    if (j >= 0) p[j] += sj * k * s;
    return f(p);
  };
  return (-at(-2.0) + 16.0 * at(-1.0) - 30.0 * f0 + 16.0 * at(1.0) - at(2.0)) /
         (12.0 * s * s);
}

// Full matrix of second partials d_i d_j u at x, one stencil layer at step s.
// Pure terms by the direct 5-point stencil; mixed terms from the difference of
// the two diagonal directional stencils: 4 d_i d_j = D^2_{e_i+e_j} - D^2_{e_i-e_j}.
template <class F>
T2 second_partials(F&& u, const Vec& x, int n, double s) {
  double u0 = u(x);
  T2 out(n, 2);
  for (int i = 0; i < n; ++i) out(i, i) = d2_dir(u, x, i, -1, 0.0, s, u0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double plus = d2_dir(u, x, i, j, 1.0, s, u0);
      double minus = d2_dir(u, x, i, j, -1.0, s, u0);
      out(i, j) = out(j, i) = 0.25 * (plus - minus);
    }
  return out;
}

// ---- connection and curvature fields --------------------------------------

struct Ctx {
  const ChartGeometry* geo;
  int n;
  double h;
};

// Christoffel symbols of g, stored Gamma(i, j, l) = Gamma^l_{ij}; step h.
T2 gamma_at(const Ctx& c, const Vec& x) {
  int n = c.n;
  T2 dg(n, 3);  // dg(s, i, j) = d_s g_{ij}
  for (int s = 0; s < n; ++s) {
    T2 d = d1([&](const Vec& p) { return eval_g(*c.geo, p); }, x, s, c.h);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg(s, i, j) = d(i, j);
  }
  T2 ginv = mat_inverse(eval_g(*c.geo, x), n);
  T2 out(n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        double s = 0;
        for (int m = 0; m < n; ++m)
          s += 0.5 * ginv(l, m) * (dg(i, m, j) + dg(j, m, i) - dg(m, i, j));
        out(i, j, l) = s;
      }
  return out;
}

// Connection with torsion: A^l_{ij} = Gamma^l_{ij} + (1/2) g^{ls} T_{ijs}.
T2 conn_at(const Ctx& c, const Vec& x) {
  int n = c.n;
  T2 out = gamma_at(c, x);
  T2 ginv = mat_inverse(eval_g(*c.geo, x), n);
  T2 t = eval_T3(*c.geo, x);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        double s = 0;
        for (int m = 0; m < n; ++m) s += 0.5 * ginv(l, m) * t(i, j, m);
        out(i, j, l) += s;
      }
  return out;
}

// Covariant curvature of the connection field `conn` (step-h internals),
// outer derivative at step 3h:
//   R^l_{ijk} = d_i A^l_{jk} - d_j A^l_{ik} + A^s_{jk} A^l_{is} - A^s_{ik} A^l_{js}
//   R_{ijkl} = R^s_{ijk} g_{sl}.
template <class F>
T2 curvature_cov(const Ctx& c, F&& conn, const Vec& x, const T2& g0) {
  int n = c.n;
  T2 A0 = conn(x);
  T2 dA(n, 4);  // dA(s, i, j, l) = d_s A^l_{ij}
  for (int s = 0; s < n; ++s) {
    T2 d = d1(conn, x, s, 3.0 * c.h);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) dA(s, i, j, l) = d(i, j, l);
  }
  T2 up(n, 4);  // up(i, j, k, l) = R^l_{ijk}
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = dA(i, j, k, l) - dA(j, i, k, l);
          for (int s = 0; s < n; ++s)
            v += A0(j, k, s) * A0(i, s, l) - A0(i, k, s) * A0(j, s, l);
          up(i, j, k, l) = v;
        }
  T2 out(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = 0;
          for (int s = 0; s < n; ++s) v += up(i, j, k, s) * g0(s, l);
          out(i, j, k, l) = v;
        }
  return out;
}

// Mixed-trace Ricci of the torsion connection plus both scalar curvatures at
// one point.  Shared by the step-9h derivative layer so each satellite point
// computes curvature once.
struct CurvScalars {
  T2 ric;  // Ric_{jk} = R^i_{ijk}, no metric needed for the trace
  double scal = 0, scalg = 0;
};

CurvScalars curv_scalars_at(const Ctx& c, const Vec& x) {
  int n = c.n;
  T2 g0 = eval_g(*c.geo, x);
  T2 ginv = mat_inverse(g0, n);
  T2 R = curvature_cov(c, [&](const Vec& p) { return conn_at(c, p); }, x, g0);
  T2 Rg = curvature_cov(c, [&](const Vec& p) { return gamma_at(c, p); }, x, g0);
  CurvScalars out;
  out.ric = T2(n, 2);
  // trace over the covariant pair: Ric_{jk} = g^{il} R_{ijkl}
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double v = 0;
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) v += ginv(i, l) * R(i, j, k, l);
      out.ric(j, k) = v;
    }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      out.scal += ginv(j, k) * out.ric(j, k);
      double v = 0;
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) v += ginv(i, l) * Rg(i, j, k, l);
      out.scalg += ginv(j, k) * v;
    }
  return out;
}

double scalg_at(const Ctx& c, const Vec& x) {
  int n = c.n;
  T2 g0 = eval_g(*c.geo, x);
  T2 ginv = mat_inverse(g0, n);
  T2 Rg = curvature_cov(c, [&](const Vec& p) { return gamma_at(c, p); }, x, g0);
  double s = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) s += ginv(j, k) * ginv(i, l) * Rg(i, j, k, l);
  return s;
}

// Scalar Laplacian (geometer sign) of the field u at x, one stencil layer at
// step s; Christoffel/metric data of the center point supplied by the caller:
//   Delta u = -g^{ij} (d_i d_j u - Gamma^s_{ij} d_s u).
template <class F>
double laplacian_of(const Ctx& c, F&& u, const Vec& x, double s, const T2& ginv0,
                    const T2& gamma0) {
  int n = c.n;
  T2 dd = second_partials(u, x, n, s);
  Vec du(n);
  for (int i = 0; i < n; ++i) du[i] = d1(u, x, i, s);
  double out = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double hess = dd(i, j);
      for (int m = 0; m < n; ++m) hess -= gamma0(i, j, m) * du[m];
      out -= ginv0(i, j) * hess;
    }
  return out;
}

// Delta f as a field (needed again under the step-27h Laplacian): Hessian of
// f at step 3h with the local Christoffel correction.
double lapf_at(const Ctx& c, const Vec& x) {
  T2 g0 = eval_g(*c.geo, x);
  T2 ginv = mat_inverse(g0, c.n);
  T2 gamma0 = gamma_at(c, x);
  auto f = [&](const Vec& p) { return eval_f(*c.geo, p); };
  return laplacian_of(c, f, x, 3.0 * c.h, ginv, gamma0);
}

// Covariant T^2 field, T2_{jk} = T_{jab} T_{kcd} g^{ac} g^{bd} (pointwise).
T2 t2cov_at(const Ctx& c, const Vec& x) {
  int n = c.n;
  T2 t = eval_T3(*c.geo, x);
  T2 ginv = mat_inverse(eval_g(*c.geo, x), n);
  T2 out(n, 2);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double v = 0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int cc = 0; cc < n; ++cc)
            for (int d = 0; d < n; ++d)
              v += t(j, a, b) * t(k, cc, d) * ginv(a, cc) * ginv(b, d);
      out(j, k) = v;
    }
  return out;
}

double normT2_at(const Ctx& c, const Vec& x) {
  int n = c.n;
  T2 t2 = t2cov_at(c, x);
  T2 ginv = mat_inverse(eval_g(*c.geo, x), n);
  double v = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) v += ginv(j, k) * t2(j, k);
  return v;
}

// delta T field: deltaT_{jk} = -g^{ab} (nabla^g_a T)_{bjk}; step-h internals.
T2 deltaT_at(const Ctx& c, const Vec& x) {
  int n = c.n;
  T2 gamma0 = gamma_at(c, x);
  T2 t0 = eval_T3(*c.geo, x);
  T2 ginv = mat_inverse(eval_g(*c.geo, x), n);
  T2 dT(n, 4);  // dT(s, j, k, l) = d_s T_{jkl}
  for (int s = 0; s < n; ++s) {
    T2 d = d1([&](const Vec& p) { return eval_T3(*c.geo, p); }, x, s, c.h);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) dT(s, j, k, l) = d(j, k, l);
  }
  T2 out(n, 2);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double v = 0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          double nab = dT(a, b, j, k);
          for (int s = 0; s < n; ++s)
            nab -= gamma0(a, b, s) * t0(s, j, k) + gamma0(a, j, s) * t0(b, s, k) +
                   gamma0(a, k, s) * t0(b, j, s);
          v -= ginv(a, b) * nab;
        }
      out(j, k) = v;
    }
  return out;
}

// Frame conversion: contract every covariant slot with E = L^{-T}.  Each pass
// contracts the leading slot and appends the frame index last, so `rank`
// passes land back in the original slot order.
T2 to_frame(T2 coord, const T2& E, int /*n*/, int rank) {
  for (int s = 0; s < rank; ++s) coord = contract(coord, E, {{0, 0}});
  return coord;
}

}  // namespace

std::string validate_chart(const ChartGeometry& geo) {
  char buf[256];
  if (geo.n < kMinDim || geo.n > kMaxDim) {
    std::snprintf(buf, sizeof buf, "chart dim %d out of range [%d,%d]", geo.n, kMinDim,
                  kMaxDim);
    return buf;
  }
  if ((int)geo.box.size() != geo.n) return "box must list one [lo,hi] per coordinate";
  for (int i = 0; i < geo.n; ++i)
    if (!(geo.box[i][0] < geo.box[i][1])) return "box interval is empty";
  if (!(geo.h > 0) || geo.h > 1e-1) return "step h must lie in (0, 0.1]";
  if ((int)geo.g.size() != geo.n * geo.n) return "metric must have dim*dim entries";
  if (geo.grid.empty()) return "grid must contain at least one point";
  int maxvar = 0;
  for (const auto& e : geo.g) maxvar = std::max(maxvar, e.max_var_index());
  for (const auto& e : geo.T) maxvar = std::max(maxvar, e.expr.max_var_index());
  if (geo.has_f) maxvar = std::max(maxvar, geo.f.max_var_index());
  if (maxvar > geo.n) {
    std::snprintf(buf, sizeof buf, "expression uses x%d but dim is %d", maxvar, geo.n);
    return buf;
  }
  for (const auto& e : geo.T) {
    if (!(0 <= e.i && e.i < e.j && e.j < e.k && e.k < geo.n))
      return "torsion entries must have strictly increasing indices below dim";
  }
  double margin = kLadderReachSteps * geo.h;
  for (size_t p = 0; p < geo.grid.size(); ++p) {
    if ((int)geo.grid[p].size() != geo.n) return "grid point has wrong dimension";
    for (int i = 0; i < geo.n; ++i) {
      double xi = geo.grid[p][i];
      if (xi - margin < geo.box[i][0] || xi + margin > geo.box[i][1]) {
        std::snprintf(buf, sizeof buf,
                      "grid point %zu is closer than the stencil margin %.6g to the box "
                      "boundary in coordinate %d",
                      p, margin, i + 1);
        return buf;
      }
    }
  }
  // metric sanity at each grid point: symmetric and positive definite
  for (size_t p = 0; p < geo.grid.size(); ++p) {
    Vec x(geo.grid[p].begin(), geo.grid[p].end());
    T2 g0 = eval_g(geo, x);
    for (int i = 0; i < geo.n; ++i)
      for (int j = 0; j < i; ++j)
        if (std::fabs(g0(i, j) - g0(j, i)) > 1e-12)
          return "metric is not symmetric at a grid point";
    T2 L;
    if (!cholesky(g0, geo.n, L)) return "metric is not positive definite at a grid point";
  }
  return "";
}

PointData<double> chart_point_data(const ChartGeometry& geo, const Vec& x,
                                   double h_override) {
  Ctx c{&geo, geo.n, h_override > 0 ? h_override : geo.h};
  int n = c.n;
  double h = c.h;

  PointData<double> P;
  P.allocate(n);
  P.has_f = geo.has_f;

  T2 g0 = eval_g(geo, x);
  T2 ginv0 = mat_inverse(g0, n);
  T2 L;
  cholesky(g0, n, L);
  T2 E = mat_inverse(L, n);  // rows of L^{-1}; frame matrix is its transpose
  {
    T2 Et(n, 2);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a) Et(i, a) = E(a, i);
    E = Et;  // E(i, a): coordinate components of frame vector a
  }

  T2 gamma0 = gamma_at(c, x);
  T2 A0 = conn_at(c, x);
  T2 t0 = eval_T3(geo, x);

  // ---- step-h layer ----
  T2 dTpart(n, 4);  // dTpart(s, j, k, l) = d_s T_{jkl}
  for (int s = 0; s < n; ++s) {
    T2 d = d1([&](const Vec& p) { return eval_T3(geo, p); }, x, s, h);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) dTpart(s, j, k, l) = d(j, k, l);
  }
  T2 dT4(n, 4), nablaT(n, 4), nablagT(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          dT4(i, j, k, l) = dTpart(i, j, k, l) - dTpart(j, i, k, l) +
                            dTpart(k, i, j, l) - dTpart(l, i, j, k);
          double a = dTpart(i, j, k, l), b = a;
          for (int s = 0; s < n; ++s) {
            a -= A0(i, j, s) * t0(s, k, l) + A0(i, k, s) * t0(j, s, l) +
                 A0(i, l, s) * t0(j, k, s);
            b -= gamma0(i, j, s) * t0(s, k, l) + gamma0(i, k, s) * t0(j, s, l) +
                 gamma0(i, l, s) * t0(j, k, s);
          }
          nablaT(i, j, k, l) = a;
          nablagT(i, j, k, l) = b;
        }
  T2 deltaT0(n, 2);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double v = 0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) v -= ginv0(a, b) * nablagT(a, b, j, k);
      deltaT0(j, k) = v;
    }

  Vec df0(n), dnt2(n);
  for (int i = 0; i < n; ++i) {
    df0[i] = geo.has_f ? d1([&](const Vec& p) { return eval_f(geo, p); }, x, i, h) : 0.0;
    dnt2[i] = d1([&](const Vec& p) { return normT2_at(c, p); }, x, i, h);
  }

  // divergence-facing nabla^g of the pointwise T^2 field, outer step h
  T2 ngT2(n, 3);
  {
    T2 t2c0 = t2cov_at(c, x);
    for (int i = 0; i < n; ++i) {
      T2 d = d1([&](const Vec& p) { return t2cov_at(c, p); }, x, i, h);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double v = d(j, k);
          for (int s = 0; s < n; ++s)
            v -= gamma0(i, j, s) * t2c0(s, k) + gamma0(i, k, s) * t2c0(j, s);
          ngT2(i, j, k) = v;
        }
    }
  }

  // ---- step-3h layer ----
  T2 Rcov = curvature_cov(c, [&](const Vec& p) { return conn_at(c, p); }, x, g0);
  T2 Rgcov = curvature_cov(c, [&](const Vec& p) { return gamma_at(c, p); }, x, g0);

  T2 ndT(n, 3);  // (nabla_i deltaT)_{jk}, outer step 3h over the deltaT field
  for (int i = 0; i < n; ++i) {
    T2 d = d1([&](const Vec& p) { return deltaT_at(c, p); }, x, i, 3.0 * h);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double v = d(j, k);
        for (int s = 0; s < n; ++s)
          v -= A0(i, j, s) * deltaT0(s, k) + A0(i, k, s) * deltaT0(j, s);
        ndT(i, j, k) = v;
      }
  }

  T2 hessg(n, 2);
  double lapf0 = 0, normdf2 = 0;
  Vec dndf2(n, 0.0), dlapf(n, 0.0);
  double lap_lapf = 0;
  if (geo.has_f) {
    auto f = [&](const Vec& p) { return eval_f(geo, p); };
    T2 dd = second_partials(f, x, n, 3.0 * h);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = dd(i, j);
        for (int s = 0; s < n; ++s) v -= gamma0(i, j, s) * df0[s];
        hessg(i, j) = v;
        lapf0 -= ginv0(i, j) * v;
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) normdf2 += ginv0(i, j) * df0[i] * df0[j];
    // |df|^2 field carries step-h stencils, so its derivative sits at 3h
    auto ndf2_field = [&](const Vec& p) {
      T2 gi = mat_inverse(eval_g(geo, p), n);
      Vec dfp(n);
      for (int i = 0; i < n; ++i) dfp[i] = d1(f, p, i, h);
      double v = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v += gi(i, j) * dfp[i] * dfp[j];
      return v;
    };
    for (int i = 0; i < n; ++i) dndf2[i] = d1(ndf2_field, x, i, 3.0 * h);
    // Delta f field has step-3h internals: its gradient at 9h, Laplacian at 27h
    auto lapf_field = [&](const Vec& p) { return lapf_at(c, p); };
    for (int i = 0; i < n; ++i) dlapf[i] = d1(lapf_field, x, i, 9.0 * h);
    lap_lapf = laplacian_of(c, lapf_field, x, 27.0 * h, ginv0, gamma0);
  }

  double lap_normT2 =
      laplacian_of(c, [&](const Vec& p) { return normT2_at(c, p); }, x, 3.0 * h, ginv0,
                   gamma0);

  // ---- step-9h layer: one curvature evaluation per satellite point ----
  CurvScalars cs0 = curv_scalars_at(c, x);
  Vec dScal(n), dScalg(n);
  T2 nRic(n, 3);
  for (int i = 0; i < n; ++i) {
    double s9 = 9.0 * h;
    CurvScalars sat[4];
    Vec p = x;
    p[i] = x[i] - 2 * s9;
    sat[0] = curv_scalars_at(c, p);
    p[i] = x[i] - s9;
    sat[1] = curv_scalars_at(c, p);
    p[i] = x[i] + s9;
    sat[2] = curv_scalars_at(c, p);
    p[i] = x[i] + 2 * s9;
    sat[3] = curv_scalars_at(c, p);
    double w = 1.0 / (12.0 * s9);
    dScal[i] = w * (sat[0].scal - 8.0 * sat[1].scal + 8.0 * sat[2].scal - sat[3].scal);
    dScalg[i] =
        w * (sat[0].scalg - 8.0 * sat[1].scalg + 8.0 * sat[2].scalg - sat[3].scalg);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double v = w * (sat[0].ric(j, k) - 8.0 * sat[1].ric(j, k) +
                        8.0 * sat[2].ric(j, k) - sat[3].ric(j, k));
        for (int s = 0; s < n; ++s)
          v -= A0(i, j, s) * cs0.ric(s, k) + A0(i, k, s) * cs0.ric(j, s);
        nRic(i, j, k) = v;
      }
  }

  // ---- step-27h layer ----
  double lap_scalg =
      laplacian_of(c, [&](const Vec& p) { return scalg_at(c, p); }, x, 27.0 * h, ginv0,
                   gamma0);

  // ---- frame conversion at the center ----
  P.T = to_frame(t0, E, n, 3);
  P.dT = to_frame(dT4, E, n, 4);
  P.nablaT = to_frame(nablaT, E, n, 4);
  P.nablagT = to_frame(nablagT, E, n, 4);
  P.deltaT = to_frame(deltaT0, E, n, 2);
  P.R = to_frame(Rcov, E, n, 4);
  P.Rg = to_frame(Rgcov, E, n, 4);
  P.nablaRic = to_frame(nRic, E, n, 3);
  P.nabla_deltaT = to_frame(ndT, E, n, 3);
  P.nablag_T2 = to_frame(ngT2, E, n, 3);
  auto vec_frame = [&](const Vec& v) {
    T2 coord(n, 1);
    for (int i = 0; i < n; ++i) coord(i) = v[i];
    return to_frame(coord, E, n, 1);
  };
  P.dScal = vec_frame(dScal);
  P.dScalg = vec_frame(dScalg);
  P.dnormT2 = vec_frame(dnt2);
  P.df = vec_frame(df0);
  P.dnormdf2 = vec_frame(dndf2);
  P.dlapf = vec_frame(dlapf);
  if (geo.has_f) {
    P.Hessgf = to_frame(hessg, E, n, 2);
    T2 hessc(n, 2);  // torsion-connection Hessian: Hessg minus (A-Gamma) df term
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = hessg(i, j);
        for (int s = 0; s < n; ++s) v -= (A0(i, j, s) - gamma0(i, j, s)) * df0[s];
        hessc(i, j) = v;
      }
    P.Hessf = to_frame(hessc, E, n, 2);
  }
  P.f = geo.has_f ? eval_f(geo, x) : 0.0;
  P.lapf = lapf0;
  P.lap_lapf = lap_lapf;
  P.lap_normT2 = lap_normT2;
  P.lap_Scalg = lap_scalg;

  finalize_pointwise(P);
  (void)normdf2;  // finalize recomputes it from the frame df
  return P;
}

Tensor<double> chart_frame_torsion_at(const ChartGeometry& geo, const std::vector<double>& x) {
  int n = geo.n;
  T2 g0 = eval_g(geo, x);
  T2 L;
  cholesky(g0, n, L);
  T2 E = mat_inverse(L, n);
  T2 Et(n, 2);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) Et(i, a) = E(a, i);
  return to_frame(eval_T3(geo, x), Et, n, 3);
}

}  // namespace skewtor
