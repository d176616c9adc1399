#include "doctest.h"
#include "oracles.hpp"
#include "skewtor/identities.hpp"
#include "skewtor/lie.hpp"

using namespace skewtor;

namespace {

// epsilon-tensor torsion on an abelian R^3: T = lam * e123, flat metric
LieInstance<Rat> flat_torus_3(const Rat& lam) {
  LieInstance<Rat> L;
  L.n = 3;
  L.c = Tensor<Rat>(3, 3);
  L.T = Tensor<Rat>(3, 3);
  set_alt_component(L.T, {0, 1, 2}, lam);
  L.has_f = true;
  L.f = Rat(0);
  return L;
}

// su(2) with c = lam*eps and the flat connection's torsion T = -lam*eps
LieInstance<Rat> su2_cs(const Rat& lam) {
  LieInstance<Rat> L;
  L.n = 3;
  L.c = Tensor<Rat>(3, 3);
  L.T = Tensor<Rat>(3, 3);
  set_alt_component(L.c, {0, 1, 2}, lam);
  set_alt_component(L.T, {0, 1, 2}, Rat(-lam));
  L.has_f = true;
  L.f = Rat(0);
  return L;
}

LieInstance<Rat> su2_family(const Rat& lam, const Rat& t) {
  auto L = su2_cs(lam);
  L.T = Tensor<Rat>(3, 3);
  set_alt_component(L.T, {0, 1, 2}, Rat(-t * lam));
  return L;
}

// h3 + R^3: [e1,e2] = e3 in 1-based labels, torsion supported off the bracket
LieInstance<Rat> heis3_r3() {
  LieInstance<Rat> L;
  L.n = 6;
  L.c = Tensor<Rat>(6, 3);
  L.c(0, 1, 2) = Rat(1);
  L.c(1, 0, 2) = Rat(-1);
  L.T = Tensor<Rat>(6, 3);
  set_alt_component(L.T, {2, 3, 4}, Rat(1));
  L.has_f = true;
  L.f = Rat(0);
  return L;
}

LieInstance<Rat> flat_torus_6() {
  LieInstance<Rat> L;
  L.n = 6;
  L.c = Tensor<Rat>(6, 3);
  L.T = Tensor<Rat>(6, 3);
  set_alt_component(L.T, {0, 1, 2}, Rat(1));
  set_alt_component(L.T, {3, 4, 5}, Rat(1));
  L.has_f = true;
  L.f = Rat(0);
  return L;
}

}  // namespace

TEST_CASE("structural validation: antisymmetry and Jacobi") {
  CHECK(validate_lie(su2_cs(Rat(1))).empty());
  CHECK(validate_lie(heis3_r3()).empty());
  // break Jacobi: [e1,e2]=e3, [e1,e3]=-e2, [e2,e3]=e2 has defect -e3
  LieInstance<Rat> bad;
  bad.n = 3;
  bad.c = Tensor<Rat>(3, 3);
  bad.T = Tensor<Rat>(3, 3);
  bad.c(0, 1, 2) = Rat(1);
  bad.c(1, 0, 2) = Rat(-1);
  bad.c(0, 2, 1) = Rat(-1);
  bad.c(2, 0, 1) = Rat(1);
  bad.c(1, 2, 1) = Rat(1);
  bad.c(2, 1, 1) = Rat(-1);
  CHECK(oracle::jacobi_defect(bad.c)(0, 1, 2, 2) != Rat(0));
  CHECK(!validate_lie(bad).empty());
  // non-antisymmetric c
  LieInstance<Rat> bad2 = su2_cs(Rat(1));
  bad2.c(0, 0, 1) = Rat(1);
  CHECK(!validate_lie(bad2).empty());
}

TEST_CASE("Koszul constants: library equals oracle, torsion-free, metric") {
  auto L = heis3_r3();
  auto Gg = koszul_gamma(L.c);
  CHECK(Gg == oracle::koszul(L.c));
  // frozen values for the Heisenberg block (0-based (0,1,2) = labels (1,2,3))
  CHECK(Gg(0, 1, 2) == Rat(1, 2));
  CHECK(Gg(1, 2, 0) == Rat(1, 2));
  CHECK(Gg(2, 0, 1) == Rat(-1, 2));
  // metric compatibility: antisymmetric in the last two slots
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) CHECK(Gg(i, j, k) + Gg(i, k, j) == Rat(0));
  // torsion-free: Gg(i,j,k) - Gg(j,i,k) = c(i,j,k)
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) CHECK(Gg(i, j, k) - Gg(j, i, k) == L.c(i, j, k));
}

TEST_CASE("flat 3-torus closed forms") {
  const Rat lam(1);
  auto P = lie_point_data(flat_torus_3(lam));

  // connection: G(i,j,k) = (lam/2) eps_{ijk}
  CHECK(P.G(0, 1, 2) == lam / 2);
  CHECK(P.G(1, 0, 2) == -lam / 2);
  CHECK(P.Gg(0, 1, 2) == Rat(0));

  // R(i,j,k,l) = (lam^2/4)(d_{jl} d_{ki} - d_{il} d_{kj})
  const Rat q = lam * lam / 4;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          Rat want = q * (Rat(j == l) * Rat(k == i) - Rat(i == l) * Rat(k == j));
          CHECK(P.R(i, j, k, l) == want);
        }
  CHECK(P.R == oracle::lie_curvature(Tensor<Rat>(3, 3), P.G));

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(P.Ric(i, j) == (i == j ? -lam * lam / 2 : Rat(0)));
      CHECK(P.T2(i, j) == (i == j ? 2 * lam * lam : Rat(0)));
    }
  CHECK(P.Scal == Rat(-3, 2) * lam * lam);
  CHECK(P.normT2 == 6 * lam * lam);
  CHECK(P.Scalg == Rat(0));
  CHECK(is_exactly_zero(P.sigma));
  CHECK(is_exactly_zero(P.nablaT));
  CHECK(is_exactly_zero(P.nablagT));
  CHECK(is_exactly_zero(P.dT));
  CHECK(is_exactly_zero(P.deltaT));
  CHECK(is_exactly_zero(P.theta));
  CHECK(is_exactly_zero(P.Theta));
}

TEST_CASE("flat 3-torus identity verdicts and witnesses") {
  auto P = lie_point_data(flat_torus_3(Rat(1)));

  // universal set identically zero
  for (const auto& id : universal_identity_ids())
    CHECK_MESSAGE(point_residual(eval_identity(id, P)) == Rat(0), id);

  // first-Bianchi in Riemannian form HOLDS here (torsion is parallel), via
  // the brute-force cyclic-sum oracle
  Tensor<Rat> cyc(3, 4);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int z = 0; z < 3; ++z)
        for (int v = 0; v < 3; ++v) cyc(x, y, z, v) = P.R(x, y, z, v) + P.R(y, z, x, v) + P.R(z, x, y, v);
  CHECK(is_exactly_zero(cyc));
  CHECK(point_residual(eval_identity("RB", P)) == Rat(0));
  CHECK(point_residual(eval_identity("BSK", P)) == Rat(0));

  // slot-exchange symmetry fails with the frozen witness |R(1,2,2,1)| = 1/4
  auto zz = eval_identity("ZZ", P);
  CHECK(point_residual(zz) == Rat(1, 4));
  CHECK(P.R(0, 1, 1, 0) == Rat(-1, 4));
  CHECK(P.R(1, 1, 0, 0) == Rat(0));

  // pair-interchange holds; Einstein condition holds with factor Scal/3 = -1/2
  CHECK(point_residual(eval_identity("PAIR_SYM", P)) == Rat(0));
  CHECK(point_residual(eval_identity("EIN2", P)) == Rat(0));

  // structure constants: C = Scal + (n/(6(n-2)))|T|^2 = 3/2, B = 15/2
  auto e9 = eval_identity("EIN9", P);
  REQUIRE(e9.constancy.has_value());
  CHECK(*e9.constancy == Rat(3, 2));
  CHECK(point_residual(e9) == Rat(0));  // Levi-Civita form agrees
  auto e8 = eval_identity("EIN8", P);
  CHECK(*e8.constancy == Rat(15, 2));

  // soliton system fails with residual lam^2/2 in the curved-Ricci member
  auto g1 = eval_identity("GEIN1", P);
  CHECK(point_residual(g1) == Rat(1, 2));
}

TEST_CASE("su(2) flat connection: zero curvature, soliton data") {
  const Rat lam(1);
  auto P = lie_point_data(su2_cs(lam));
  CHECK(is_exactly_zero(P.G));
  CHECK(is_exactly_zero(P.R));
  CHECK(P.Gg(0, 1, 2) == Rat(1, 2));
  CHECK(is_exactly_zero(P.Ric));
  CHECK(P.Scal == Rat(0));
  CHECK(P.normT2 == 6 * lam * lam);
  CHECK(is_exactly_zero(P.dT));
  CHECK(is_exactly_zero(P.deltaT));

  // bi-invariant Levi-Civita Ricci oracle: Ricg = (1/4) c_{jab} c_{kab} = T2/4
  auto L = su2_cs(lam);
  auto ricg_oracle = oracle::biinvariant_ricci(L.c);
  CHECK(P.Ricg == ricg_oracle);
  Tensor<Rat> quarter_t2 = frac<Rat>(1, 4) * P.T2;
  CHECK(P.Ricg == quarter_t2);

  for (const auto& id : universal_identity_ids())
    CHECK_MESSAGE(point_residual(eval_identity(id, P)) == Rat(0), id);

  CHECK(point_residual(eval_identity("RB", P)) == Rat(0));
  CHECK(point_residual(eval_identity("BSK", P)) == Rat(0));
  CHECK(point_residual(eval_identity("ZZ", P)) == Rat(0));
  CHECK(point_residual(eval_identity("ZZ1", P)) == Rat(0));
  CHECK(point_residual(eval_identity("PAIR_SYM", P)) == Rat(0));
  CHECK(point_residual(eval_identity("FOURF_A", P)) == Rat(0));
  CHECK(point_residual(eval_identity("FOURF_C", P)) == Rat(0));
  // whole soliton system at f = 0
  CHECK(point_residual(eval_identity("GEIN1", P)) == Rat(0));
  CHECK(point_residual(eval_identity("GEIN2", P)) == Rat(0));
  CHECK(point_residual(eval_identity("GEIN3", P)) == Rat(0));
  CHECK(point_residual(eval_identity("GEIN8_EQ", P)) == Rat(0));
  auto e9 = eval_identity("EIN9", P);
  CHECK(*e9.constancy == Rat(3));
  CHECK(point_residual(e9) == Rat(0));
}

TEST_CASE("su(2) connection family: frozen curvature form") {
  const Rat lam(2), t(1, 3);
  auto P = lie_point_data(su2_family(lam, t));
  const Rat mu = (Rat(1) - t) / 2;
  const Rat q = lam * lam * (mu * mu - mu);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          Rat want = q * (Rat(i == k) * Rat(j == l) - Rat(i == l) * Rat(j == k));
          CHECK(P.R(i, j, k, l) == want);
        }
  for (const auto& id : universal_identity_ids())
    CHECK_MESSAGE(point_residual(eval_identity(id, P)) == Rat(0), id);
  // three-dimensional invariant torsion is parallel: Riemannian Bianchi holds
  CHECK(point_residual(eval_identity("RB", P)) == Rat(0));
  CHECK(is_exactly_zero(P.nablaT));
}

TEST_CASE("nilpotent example: frozen dT and a Riemannian-Bianchi failure") {
  auto L = heis3_r3();
  auto P = lie_point_data(L);

  // dT = -e^{1245} (1-based labels): single orbit, value -1 at (0,1,3,4)
  CHECK(P.dT == oracle::invariant_d3(L.c, L.T));
  CHECK(P.dT(0, 1, 3, 4) == Rat(-1));
  CHECK(is_alternating(P.dT));
  Tensor<Rat> expect_dT(6, 4);
  set_alt_component(expect_dT, {0, 1, 3, 4}, Rat(-1));
  CHECK(P.dT == expect_dT);

  for (const auto& id : universal_identity_ids())
    CHECK_MESSAGE(point_residual(eval_identity(id, P)) == Rat(0), id);

  // hand-expanded witness: cyclic curvature sum at (e1,e2,e4,e5) equals -1
  CHECK(P.R(0, 1, 3, 4) + P.R(1, 3, 0, 4) + P.R(3, 0, 1, 4) == Rat(-1));
  CHECK(point_residual(eval_identity("RB", P)) >= Rat(1));
}

TEST_CASE("two commuting torsion blocks in dimension six") {
  auto P = lie_point_data(flat_torus_6());
  CHECK(is_exactly_zero(P.nablaT));
  // sigma vanishes: each product needs all four free indices inside one
  // 3-element block, where a 4-form has no room
  CHECK(is_exactly_zero(P.sigma));
  CHECK(P.normT2 == Rat(12));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(P.Ric(i, j) == (i == j ? Rat(-1, 2) : Rat(0)));
  for (const auto& id : universal_identity_ids())
    CHECK_MESSAGE(point_residual(eval_identity(id, P)) == Rat(0), id);
  CHECK(point_residual(eval_identity("RB", P)) == Rat(0));
  CHECK(point_residual(eval_identity("EIN2", P)) == Rat(0));
  auto e9 = eval_identity("EIN9", P);
  CHECK(*e9.constancy == Rat(0));
  CHECK(point_residual(e9) == Rat(0));
  auto e8 = eval_identity("EIN8", P);
  CHECK(*e8.constancy == Rat(6));
}

TEST_CASE("fault injection: sigma sign flip breaks the cyclic-difference identity") {
  // needs nonzero sigma, so use overlapping torsion blocks on abelian R^5
  LieInstance<Rat> L;
  L.n = 5;
  L.c = Tensor<Rat>(5, 3);
  L.T = Tensor<Rat>(5, 3);
  set_alt_component(L.T, {0, 1, 2}, Rat(1));
  set_alt_component(L.T, {0, 3, 4}, Rat(1));
  auto P = lie_point_data(L);
  CHECK(!is_exactly_zero(P.sigma));
  EvalOptions flip;
  flip.mutate_gen_sigma_flip = true;
  CHECK(point_residual(eval_identity("GEN", P)) == Rat(0));
  CHECK(point_residual(eval_identity("GEN", P, flip)) > Rat(0));
}
