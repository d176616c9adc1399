#pragma once
// The identity suite: every curvature/torsion identity the engine checks, each
// assembled from the SAME PointData members (one code path, cross-checked by
// independent oracles in the tests).
//
// An identity evaluates at a point to one or more residual tensors (max-abs
// over free indices is the point residual), plus optionally
//   - a constancy value: a scalar whose max-minus-min across the grid is the
//     residual (used for the two "constant of the structure" checks), and
//   - a bound value: a scalar required to be >= -slack pointwise.

#include <optional>
#include <string>
#include <vector>

#include "skewtor/point_data.hpp"
#include "skewtor/tensor.hpp"

namespace skewtor {

struct IdentityInfo {
  std::string id;
  std::string anchor;    // short slug naming what the identity says
  bool universal;        // holds on every geometry (theorem); nonzero exact residual = bug
  bool needs_f;          // consumes the scalar potential layer
};

const std::vector<IdentityInfo>& identity_registry();
bool is_identity_id(const std::string& id);
const IdentityInfo& identity_info(const std::string& id);
std::vector<std::string> universal_identity_ids();

struct EvalOptions {
  bool mutate_gen_sigma_flip = false;  // fault-injection hook used by the self-check
};

template <class S>
struct IdentityValue {
  std::vector<Tensor<S>> members;  // pointwise residual tensors
  std::optional<S> constancy;      // scalar tracked for cross-grid constancy
  std::optional<S> bound;          // scalar required >= -slack
};

// ---- assembly ---------------------------------------------------------------

template <class S>
IdentityValue<S> eval_identity(const std::string& id, const PointData<S>& P,
                               const EvalOptions& opt = {}) {
  const int n = P.n;
  IdentityValue<S> out;
  auto member = [&](int rank) -> Tensor<S>& {
    out.members.emplace_back(n, rank);
    return out.members.back();
  };

  if (id == "DH") {
    // dT = (cyclic nabla T over the first three slots) + 2 sigma - nabla_V T
    auto& M = member(4);
    for_each_index(n, 4, [&](const std::array<int, kMaxRank>& q) {
      const int x = q[0], y = q[1], z = q[2], v = q[3];
      M.at_idx(q) = P.dT(x, y, z, v) - P.nablaT(x, y, z, v) - P.nablaT(y, z, x, v) -
                    P.nablaT(z, x, y, v) - frac<S>(2) * P.sigma(x, y, z, v) +
                    P.nablaT(v, x, y, z);
    });
  } else if (id == "RICS1") {
    auto& M = member(2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        M(i, j) = P.Ricg(i, j) - P.Ric(i, j) - frac<S>(1, 2) * P.deltaT(i, j) -
                  frac<S>(1, 4) * P.T2(i, j);
  } else if (id == "RICS2") {
    auto& M = member(0);
    M() = P.Scalg - P.Scal - frac<S>(1, 4) * P.normT2;
  } else if (id == "RICS3") {
    auto& M = member(2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = P.Ric(i, j) - P.Ric(j, i) + P.deltaT(i, j);
  } else if (id == "FIRST_BIANCHI_T") {
    // cyclic R sum = dT - sigma + nabla_V T
    auto& M = member(4);
    for_each_index(n, 4, [&](const std::array<int, kMaxRank>& q) {
      const int x = q[0], y = q[1], z = q[2], v = q[3];
      M.at_idx(q) = P.R(x, y, z, v) + P.R(y, z, x, v) + P.R(z, x, y, v) - P.dT(x, y, z, v) +
                    P.sigma(x, y, z, v) - P.nablaT(v, x, y, z);
    });
  } else if (id == "GEN") {
    // difference of the two cyclic sums = (3/2) dT - sigma
    const S sflip = opt.mutate_gen_sigma_flip ? S(-1) : S(1);
    auto& M = member(4);
    for_each_index(n, 4, [&](const std::array<int, kMaxRank>& q) {
      const int x = q[0], y = q[1], z = q[2], v = q[3];
      M.at_idx(q) = P.R(x, y, z, v) + P.R(y, z, x, v) + P.R(z, x, y, v) - P.R(v, x, y, z) -
                    P.R(v, y, z, x) - P.R(v, z, x, y) - frac<S>(3, 2) * P.dT(x, y, z, v) +
                    sflip * P.sigma(x, y, z, v);
    });
  } else if (id == "BI1V") {
    // cyclic sum in the first slot pattern: sum R(V,.,.,.) = -dT/2 + nabla_V T
    auto& M = member(4);
    for_each_index(n, 4, [&](const std::array<int, kMaxRank>& q) {
      const int x = q[0], y = q[1], z = q[2], v = q[3];
      M.at_idx(q) = P.R(v, x, y, z) + P.R(v, y, z, x) + P.R(v, z, x, y) +
                    frac<S>(1, 2) * P.dT(x, y, z, v) - P.nablaT(v, x, y, z);
    });
  } else if (id == "RB") {
    auto& M = member(4);
    for_each_index(n, 4, [&](const std::array<int, kMaxRank>& q) {
      const int x = q[0], y = q[1], z = q[2], v = q[3];
      M.at_idx(q) = P.R(x, y, z, v) + P.R(y, z, x, v) + P.R(z, x, y, v);
    });
  } else if (id == "PAIR_SYM" || id == "FOURF_B") {
    auto& M = member(4);
    for_each_index(n, 4, [&](const std::array<int, kMaxRank>& q) {
      const int x = q[0], y = q[1], z = q[2], v = q[3];
      M.at_idx(q) = P.R(x, y, z, v) - P.R(z, v, x, y);
    });
  } else if (id == "FOURF_A") {
    // nabla T alternating <=> antisymmetric in (derivative slot, first form slot)
    auto& M = member(4);
    for_each_index(n, 4, [&](const std::array<int, kMaxRank>& q) {
      const int i = q[0], j = q[1], k = q[2], l = q[3];
      M.at_idx(q) = P.nablaT(i, j, k, l) + P.nablaT(j, i, k, l);
    });
  } else if (id == "FOURF_C") {
    auto& M = member(4);
    for_each_index(n, 4, [&](const std::array<int, kMaxRank>& q) {
      const int i = q[0], j = q[1], k = q[2], l = q[3];
      M.at_idx(q) = P.dT(i, j, k, l) - frac<S>(4) * P.nablagT(i, j, k, l);
    });
  } else if (id == "SIGT") {
    auto& M = member(1);
    for (int i = 0; i < n; ++i) {
      S acc(0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) acc += P.T(a, b, c) * P.sigma(a, b, c, i);
      M(i) = acc;
    }
  } else if (id == "EIN10") {
    auto& M = member(1);
    for (int j = 0; j < n; ++j) {
      S acc(0);
      for (int i = 0; i < n; ++i) acc += frac<S>(2) * P.nabla_deltaT(i, i, j);
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a) acc -= P.deltaT(i, a) * P.T(i, a, j);
      M(j) = acc;
    }
  } else if (id == "E13") {
    auto& M = member(1);
    for (int j = 0; j < n; ++j) {
      S acc = frac<S>(3) * P.theta(j) + P.Theta(j) - frac<S>(1, 2) * P.dnormT2(j);
      for (int s = 0; s < n; ++s) acc += frac<S>(3) * P.nablag_T2(s, s, j);
      M(j) = acc;
    }
  } else if (id == "E1") {
    auto& M = member(1);
    for (int j = 0; j < n; ++j) {
      S acc = P.dScal(j) + frac<S>(1, 6) * P.dnormT2(j) + P.theta(j) + frac<S>(1, 6) * P.Theta(j);
      for (int i = 0; i < n; ++i) acc -= frac<S>(2) * P.nablaRic(i, j, i);
      M(j) = acc;
    }
  } else if (id == "TWO_BI") {
    auto& M = member(1);
    for (int j = 0; j < n; ++j) {
      S acc = P.dScal(j) + frac<S>(1, 4) * P.dnormT2(j) + P.theta(j);
      for (int s = 0; s < n; ++s) acc -= frac<S>(2) * P.nablaRic(s, j, s);
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) acc -= frac<S>(1, 2) * P.nablaT(i, a, b, j) * P.T(i, a, b);
      M(j) = acc;
    }
  } else if (id == "BIII") {
    auto& M = member(1);
    for (int j = 0; j < n; ++j)
      M(j) = frac<S>(6) * P.theta(j) + P.Theta(j) + P.dnormT2(j);
  } else if (id == "BSK") {
    // parallel-torsion family: dT = -2 nabla T and dT = (2/3) sigma
    auto& M1 = member(4);
    for_each_index(n, 4, [&](const std::array<int, kMaxRank>& q) {
      M1.at_idx(q) = P.dT.at_idx(q) + frac<S>(2) * P.nablaT.at_idx(q);
    });
    auto& M2 = member(4);
    for_each_index(n, 4, [&](const std::array<int, kMaxRank>& q) {
      M2.at_idx(q) = P.dT.at_idx(q) - frac<S>(2, 3) * P.sigma.at_idx(q);
    });
  } else if (id == "ZZ") {
    auto& M = member(4);
    for_each_index(n, 4, [&](const std::array<int, kMaxRank>& q) {
      const int x = q[0], y = q[1], z = q[2], v = q[3];
      M.at_idx(q) = P.R(x, y, z, v) - P.R(z, y, x, v);
    });
  } else if (id == "ZZ1") {
    auto& M = member(4);
    for_each_index(n, 4, [&](const std::array<int, kMaxRank>& q) {
      M.at_idx(q) = frac<S>(3) * P.dT.at_idx(q) - frac<S>(2) * P.sigma.at_idx(q);
    });
  } else if (id == "EIN2") {
    // symmetric Ricci part a multiple of the metric, with factor Scal/n
    auto& M = member(2);
    const S lam = P.Scal / frac<S>(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        S acc = P.Ric(i, j) + frac<S>(1, 2) * P.deltaT(i, j);
        if (i == j) acc -= lam;
        M(i, j) = acc;
      }
  } else if (id == "EIN6") {
    auto& M = member(1);
    for (int j = 0; j < n; ++j) {
      S acc = frac<S>(n - 2, n) * P.dScal(j) + frac<S>(1, 4) * P.dnormT2(j);
      for (int s = 0; s < n; ++s) acc -= frac<S>(1, 2) * P.nablag_T2(s, s, j);
      M(j) = acc;
    }
  } else if (id == "EIN9") {
    // C = Scal + n/(6(n-2)) |T|^2 constant across the grid, and equal to the
    // Levi-Civita form C2 = Scal^g - (n-6)/(12(n-2)) |T|^2
    if (n == 2) return out;  // (n-2) factors degenerate; reported not-applicable
    const S C = P.Scal + frac<S>(n, 6 * (n - 2)) * P.normT2;
    const S C2 = P.Scalg - frac<S>(n - 6, 12 * (n - 2)) * P.normT2;
    auto& M = member(0);
    M() = C - C2;
    out.constancy = C;
  } else if (id == "EIN8") {
    if (n == 2) return out;
    out.constancy = P.Scal + frac<S>(n, 2 * (n - 2)) * P.normT2;
  } else if (id == "GEIN1") {
    auto& A = member(2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        A(i, j) = P.Ricg(i, j) - frac<S>(1, 4) * P.T2(i, j) + P.Hessgf(i, j);
    auto& B = member(2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        S acc = P.deltaT(i, j);
        for (int s = 0; s < n; ++s) acc += P.df(s) * P.T(s, i, j);
        B(i, j) = acc;
      }
    out.members.push_back(P.dT);
  } else if (id == "GEIN2") {
    auto& M = member(2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = P.Hessf(i, j) - P.Hessf(j, i) - P.deltaT(i, j);
  } else if (id == "GEIN3") {
    auto& A = member(2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = P.Ric(i, j) + P.Hessf(i, j);
    auto& B = member(0);
    B() = P.Scal - P.lapf;
  } else if (id == "GEIN7A") {
    auto& M = member(1);
    for (int j = 0; j < n; ++j)
      M(j) = -P.dlapf(j) - P.dnormdf2(j) + frac<S>(1, 6) * P.dnormT2(j);
  } else if (id == "GEIN7B") {
    auto& M = member(1);
    for (int j = 0; j < n; ++j) {
      S acc = P.dlapf(j) + frac<S>(1, 6) * P.dnormT2(j);
      for (int i = 0; i < n; ++i) acc -= frac<S>(2) * P.nablaRic(i, i, j);
      M(j) = acc;
    }
  } else if (id == "GEIN8_EQ") {
    auto& M = member(0);
    S acc = P.lap_lapf - frac<S>(1, 6) * P.lap_normT2;
    for (int j = 0; j < n; ++j)
      acc += (P.dlapf(j) + frac<S>(1, 6) * P.dnormT2(j)) * P.df(j);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc -= frac<S>(2) * P.Ric(i, j) * P.Ric(i, j);
    M() = acc;
  } else if (id == "FFINN") {
    S acc = P.lap_Scalg - frac<S>(5, 12) * P.lap_normT2;
    for (int j = 0; j < n; ++j)
      acc += (P.dScalg(j) - frac<S>(1, 12) * P.dnormT2(j)) * P.df(j);
    out.bound = acc;
  } else {
    throw std::invalid_argument("unknown identity id: " + id);
  }
  return out;
}

// Point residual: max over members of max-abs over free indices.
template <class S>
S point_residual(const IdentityValue<S>& v) {
  S best(0);
  for (const auto& m : v.members) {
    S a = max_abs_val(m);
    if (best < a) best = a;
  }
  return best;
}

}  // namespace skewtor
