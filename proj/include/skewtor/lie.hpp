#pragma once
// Lie-frame backend: a left-invariant orthonormal frame {e_i} with structure
// constants c(i,j,k) ([e_i,e_j] = sum_k c(i,j,k) e_k, metric = delta in this
// frame), an invariant torsion 3-form T, and a constant potential f.  All
// derived quantities are constant, so one evaluation point represents the
// whole space and exact rational arithmetic goes end to end.
//
// Koszul in an orthonormal invariant frame:
//   Gg(i,j,k) = (1/2)(c(i,j,k) - c(j,k,i) + c(k,i,j))
// Curvature of a constant frame connection G:
//   R(i,j,k,l) = sum_s [G(j,k,s)G(i,s,l) - G(i,k,s)G(j,s,l) - c(i,j,s)G(s,k,l)]
// Invariant covariant derivative of a constant covariant tensor:
//   (nabla_i S)(j,k,..) = -G(i,j,s)S(s,k,..) - G(i,k,s)S(j,s,..) - ...
// Exterior derivative of an invariant p-form (no derivative terms):
//   dw(x_0..x_p) = sum_{u<v} (-1)^{u+v} w([x_u,x_v], x_0.. ^u.. ^v ..x_p)

#include <optional>
#include <stdexcept>
#include <string>

#include "skewtor/point_data.hpp"
#include "skewtor/rational.hpp"
#include "skewtor/tensor.hpp"

namespace skewtor {

template <class S>
struct LieInstance {
  int n = 0;
  Tensor<S> c;  // rank 3, antisymmetric in slots 0,1
  Tensor<S> T;  // rank 3, totally alternating
  bool has_f = false;
  S f{0};  // constant potential (invariant scalars on a homogeneous space)
};

// Structural validation; returns an error message or empty on success.
template <class S>
std::string validate_lie(const LieInstance<S>& L) {
  const int n = L.n;
  if (L.c.dim() != n || L.c.rank() != 3 || L.T.dim() != n || L.T.rank() != 3)
    return "structure constants and torsion must be rank-3 of the instance dimension";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!scalar_traits<S>::is_zero(L.c(i, j, k) + L.c(j, i, k)))
          return "structure constants not antisymmetric in the first two slots";
  if (!is_alternating(L.T)) return "torsion is not a 3-form";
  // Jacobi: sum_s c(i,j,s)c(s,k,l) + c(j,k,s)c(s,i,l) + c(k,i,s)c(s,j,l) = 0
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          S acc(0);
          for (int s = 0; s < n; ++s)
            acc += L.c(i, j, s) * L.c(s, k, l) + L.c(j, k, s) * L.c(s, i, l) +
                   L.c(k, i, s) * L.c(s, j, l);
          if (!scalar_traits<S>::is_zero(acc)) return "structure constants violate the Jacobi identity";
        }
  return {};
}

template <class S>
Tensor<S> koszul_gamma(const Tensor<S>& c) {
  const int n = c.dim();
  Tensor<S> G(n, 3);
  const S half = frac<S>(1, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) G(i, j, k) = half * (c(i, j, k) - c(j, k, i) + c(k, i, j));
  return G;
}

template <class S>
Tensor<S> frame_curvature(const Tensor<S>& c, const Tensor<S>& G) {
  const int n = c.dim();
  Tensor<S> R(n, 4);
  for_each_index(n, 4, [&](const std::array<int, kMaxRank>& x) {
    const int i = x[0], j = x[1], k = x[2], l = x[3];
    S acc(0);
    for (int s = 0; s < n; ++s)
      acc += G(j, k, s) * G(i, s, l) - G(i, k, s) * G(j, s, l) - c(i, j, s) * G(s, k, l);
    R.at_idx(x) = acc;
  });
  return R;
}

// (nabla_i S)(..) for a constant covariant tensor of rank 1..4 w.r.t. the
// constant frame connection G; output rank = rank(S) + 1, derivative slot first.
template <class S>
Tensor<S> invariant_nabla(const Tensor<S>& G, const Tensor<S>& t) {
  const int n = t.dim();
  const int r = t.rank();
  if (r + 1 > kMaxRank) throw std::invalid_argument("invariant_nabla: result rank exceeds 4");
  Tensor<S> out(n, r + 1);
  std::array<int, kMaxRank> src{};
  for_each_index(n, r + 1, [&](const std::array<int, kMaxRank>& x) {
    const int i = x[0];
    S acc(0);
    for (int slot = 0; slot < r; ++slot) {
      for (int q = 0; q < r; ++q) src[static_cast<std::size_t>(q)] = x[static_cast<std::size_t>(q + 1)];
      const int j = src[static_cast<std::size_t>(slot)];
      for (int s = 0; s < n; ++s) {
        src[static_cast<std::size_t>(slot)] = s;
        acc -= G(i, j, s) * t.at_idx(src);
      }
      src[static_cast<std::size_t>(slot)] = j;
    }
    out.at_idx(x) = acc;
  });
  return out;
}

// d of an invariant 3-form via the bracket expansion.
template <class S>
Tensor<S> invariant_d3(const Tensor<S>& c, const Tensor<S>& T) {
  const int n = c.dim();
  Tensor<S> out(n, 4);
  for_each_index(n, 4, [&](const std::array<int, kMaxRank>& x) {
    S acc(0);
    for (int u = 0; u < 4; ++u)
      for (int v = u + 1; v < 4; ++v) {
        int rest[2], w = 0;
        for (int r = 0; r < 4; ++r)
          if (r != u && r != v) rest[w++] = x[static_cast<std::size_t>(r)];
        S term(0);
        for (int s = 0; s < n; ++s)
          term += c(x[static_cast<std::size_t>(u)], x[static_cast<std::size_t>(v)], s) * T(s, rest[0], rest[1]);
        if ((u + v) % 2 == 0)
          acc += term;
        else
          acc -= term;
      }
    out.at_idx(x) = acc;
  });
  return out;
}

// Full derived bundle at the (single) evaluation point of a Lie instance.
template <class S>
PointData<S> lie_point_data(const LieInstance<S>& L) {
  PointData<S> P;
  P.allocate(L.n);
  P.has_f = L.has_f;
  P.f = L.f;

  P.T = L.T;
  P.Gg = koszul_gamma(L.c);
  P.G = P.Gg;
  {
    const S half = frac<S>(1, 2);
    for (std::size_t p = 0; p < P.G.size(); ++p) P.G.at_flat(p) += half * P.T.at_flat(p);
  }
  P.R = frame_curvature(L.c, P.G);
  P.Rg = frame_curvature(L.c, P.Gg);
  P.dT = invariant_d3(L.c, L.T);
  P.nablaT = invariant_nabla(P.G, L.T);
  P.nablagT = invariant_nabla(P.Gg, L.T);
  // deltaT(j,k) = -sum_a nablagT(a,a,j,k)
  for (int j = 0; j < L.n; ++j)
    for (int k = 0; k < L.n; ++k) {
      S acc(0);
      for (int a = 0; a < L.n; ++a) acc -= P.nablagT(a, a, j, k);
      P.deltaT(j, k) = acc;
    }
  finalize_pointwise(P);
  // invariant second layer: scalars are constant (gradients stay zero);
  // tensor derivatives are algebraic in the connection constants
  P.nablaRic = invariant_nabla(P.G, P.Ric);
  P.nabla_deltaT = invariant_nabla(P.G, P.deltaT);
  P.nablag_T2 = invariant_nabla(P.Gg, P.T2);
  // constant f: every potential-layer member is identically zero
  return P;
}

// Exact instance -> float instance (for float-mode runs of Lie geometries).
inline LieInstance<double> to_double(const LieInstance<Rat>& L) {
  LieInstance<double> out;
  out.n = L.n;
  out.c = Tensor<double>(L.n, 3);
  out.T = Tensor<double>(L.n, 3);
  for (std::size_t p = 0; p < L.c.size(); ++p) out.c.at_flat(p) = L.c.at_flat(p).get_d();
  for (std::size_t p = 0; p < L.T.size(); ++p) out.T.at_flat(p) = L.T.at_flat(p).get_d();
  out.has_f = L.has_f;
  out.f = L.f.get_d();
  return out;
}

}  // namespace skewtor
