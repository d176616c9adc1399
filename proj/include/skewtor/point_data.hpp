#pragma once
// Per-point bundle of every derived quantity the identity suite consumes, in
// the components of a pointwise orthonormal frame.  Both backends (Lie frame
// and finite-difference chart) fill the same struct, so each identity has a
// single assembly path.
//
// Index conventions (0-based):
//   T(i,j,k)            torsion 3-form components, totally alternating
//   R(i,j,k,l)          g(R(e_i,e_j)e_k, e_l) for the torsion connection
//   Ric(j,k) = sum_i R(i,j,k,i);  Scal = sum_{i,j} R(i,j,j,i)
//   nablaT(i,j,k,l)     (nabla_{e_i} T)(e_j,e_k,e_l), torsion connection
//   nablagT(i,j,k,l)    same for the Levi-Civita connection
//   deltaT(j,k)         -sum_a nablagT(a,a,j,k)   (codifferential)
//   dT(i,j,k,l)         exterior derivative, determinant convention
//   sigma(a,b,c,d)      sum_s [T(s,a,b)T(s,c,d) - T(s,a,c)T(s,b,d) + T(s,a,d)T(s,b,c)]
//   theta(j)            sum_{a,b} deltaT(a,b) T(j,a,b)
//   Theta(j)            sum_{a,b,c} T(a,b,c) dT(j,a,b,c)
//   nablaRic(i,j,k)     (nabla_i Ric)(j,k), torsion connection
//   nabla_deltaT(i,j,k) (nabla_i deltaT)(j,k), torsion connection
//   nablag_T2(i,j,k)    (nabla^g_i T^2)(j,k)
// Scalar-field members (f and friends) use the geometer's sign Delta = -div grad.

#include "skewtor/tensor.hpp"

namespace skewtor {

template <class S>
struct PointData {
  int n = 0;
  bool has_f = false;

  // connection data (filled by the Lie backend; zero-initialized on charts,
  // where all residuals are assembled from the frame tensor fields below)
  Tensor<S> Gg;  // Levi-Civita frame Christoffels Gg(i,j,k) = g(nablag_{e_i} e_j, e_k)
  Tensor<S> G;   // torsion connection, G = Gg + T/2

  // torsion and its algebra
  Tensor<S> T;        // rank 3
  Tensor<S> T2;       // rank 2, T2(i,j) = sum_{ab} T(i,a,b) T(j,a,b)
  S normT2{0};        // |T|^2 = sum_{abc} T(a,b,c)^2  (full unweighted sum)
  Tensor<S> sigma;    // rank 4

  // curvature, torsion connection and Levi-Civita
  Tensor<S> R, Ric;   // rank 4, rank 2
  S Scal{0};
  Tensor<S> Rg, Ricg;
  S Scalg{0};

  // first derivatives of the torsion
  Tensor<S> dT;       // rank 4
  Tensor<S> nablaT;   // rank 4
  Tensor<S> nablagT;  // rank 4
  Tensor<S> deltaT;   // rank 2
  Tensor<S> theta;    // rank 1
  Tensor<S> Theta;    // rank 1

  // gradients of derived scalars and second-layer derivatives
  Tensor<S> dScal, dScalg, dnormT2;      // rank 1 each
  Tensor<S> nablaRic;                    // rank 3
  Tensor<S> nabla_deltaT;                // rank 3
  Tensor<S> nablag_T2;                   // rank 3

  // scalar potential layer
  S f{0};
  Tensor<S> df;        // rank 1
  Tensor<S> Hessf;     // rank 2, torsion connection (skew part is the torsion correction)
  Tensor<S> Hessgf;    // rank 2, Levi-Civita (symmetric)
  S lapf{0};           // Delta f = -sum_i Hessgf(i,i)
  S normdf2{0};        // |df|^2
  Tensor<S> dnormdf2;  // rank 1
  Tensor<S> dlapf;     // rank 1
  S lap_lapf{0};       // Delta(Delta f)
  S lap_normT2{0};     // Delta |T|^2
  S lap_Scalg{0};      // Delta Scal^g

  void allocate(int dim) {
    n = dim;
    Gg = Tensor<S>(n, 3);
    G = Tensor<S>(n, 3);
    T = Tensor<S>(n, 3);
    T2 = Tensor<S>(n, 2);
    sigma = Tensor<S>(n, 4);
    R = Tensor<S>(n, 4);
    Ric = Tensor<S>(n, 2);
    Rg = Tensor<S>(n, 4);
    Ricg = Tensor<S>(n, 2);
    dT = Tensor<S>(n, 4);
    nablaT = Tensor<S>(n, 4);
    nablagT = Tensor<S>(n, 4);
    deltaT = Tensor<S>(n, 2);
    theta = Tensor<S>(n, 1);
    Theta = Tensor<S>(n, 1);
    dScal = Tensor<S>(n, 1);
    dScalg = Tensor<S>(n, 1);
    dnormT2 = Tensor<S>(n, 1);
    nablaRic = Tensor<S>(n, 3);
    nabla_deltaT = Tensor<S>(n, 3);
    nablag_T2 = Tensor<S>(n, 3);
    df = Tensor<S>(n, 1);
    Hessf = Tensor<S>(n, 2);
    Hessgf = Tensor<S>(n, 2);
    dnormdf2 = Tensor<S>(n, 1);
    dlapf = Tensor<S>(n, 1);
  }
};

// ---- pointwise algebra shared by both backends ------------------------------

template <class S>
Tensor<S> t2_of(const Tensor<S>& T) {
  return contract(T, T, {{1, 1}, {2, 2}});
}

template <class S>
S norm2_full(const Tensor<S>& T) {
  S acc(0);
  for (std::size_t p = 0; p < T.size(); ++p) acc += T.at_flat(p) * T.at_flat(p);
  return acc;
}

template <class S>
Tensor<S> sigma_of(const Tensor<S>& T) {
  const int n = T.dim();
  Tensor<S> out(n, 4);
  for_each_index(n, 4, [&](const std::array<int, kMaxRank>& x) {
    const int a = x[0], b = x[1], c = x[2], d = x[3];
    S acc(0);
    for (int s = 0; s < n; ++s)
      acc += T(s, a, b) * T(s, c, d) - T(s, a, c) * T(s, b, d) + T(s, a, d) * T(s, b, c);
    out.at_idx(x) = acc;
  });
  return out;
}

template <class S>
Tensor<S> ricci_of(const Tensor<S>& R) {
  // Ric(j,k) = sum_i R(i,j,k,i)
  const int n = R.dim();
  Tensor<S> out(n, 2);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      S acc(0);
      for (int i = 0; i < n; ++i) acc += R(i, j, k, i);
      out(j, k) = acc;
    }
  return out;
}

template <class S>
S trace_of(const Tensor<S>& M) {
  S acc(0);
  for (int i = 0; i < M.dim(); ++i) acc += M(i, i);
  return acc;
}

template <class S>
Tensor<S> theta_of(const Tensor<S>& deltaT, const Tensor<S>& T) {
  const int n = T.dim();
  Tensor<S> out(n, 1);
  for (int j = 0; j < n; ++j) {
    S acc(0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) acc += deltaT(a, b) * T(j, a, b);
    out(j) = acc;
  }
  return out;
}

template <class S>
Tensor<S> big_theta_of(const Tensor<S>& T, const Tensor<S>& dT) {
  const int n = T.dim();
  Tensor<S> out(n, 1);
  for (int j = 0; j < n; ++j) {
    S acc(0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) acc += T(a, b, c) * dT(j, a, b, c);
    out(j) = acc;
  }
  return out;
}

// Fill the members that are pure pointwise algebra in the frame components.
// Backends call this after supplying T, R, Rg, dT, deltaT, df.
template <class S>
void finalize_pointwise(PointData<S>& P) {
  P.T2 = t2_of(P.T);
  P.normT2 = norm2_full(P.T);
  P.sigma = sigma_of(P.T);
  P.Ric = ricci_of(P.R);
  P.Scal = trace_of(P.Ric);
  P.Ricg = ricci_of(P.Rg);
  P.Scalg = trace_of(P.Ricg);
  P.theta = theta_of(P.deltaT, P.T);
  P.Theta = big_theta_of(P.T, P.dT);
  S acc(0);
  for (int i = 0; i < P.n; ++i) acc += P.df(i) * P.df(i);
  P.normdf2 = acc;
}

}  // namespace skewtor
