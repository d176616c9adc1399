#include <stdexcept>

#include "doctest.h"
#include "json.hpp"
#include "skewtor/catalog.hpp"
#include "skewtor/classify.hpp"
#include "skewtor/geometry.hpp"
#include "skewtor/lie.hpp"

using namespace skewtor;
using nlohmann::ordered_json;

namespace {

Geometry built(const char* name, const Rat& lam = Rat(1), const Rat& t = Rat(1)) {
  const CatalogEntry* e = find_catalog(name);
  REQUIRE(e != nullptr);
  return e->build(lam, t);
}

ClassifyOptions exact_opts() { return {}; }

ClassifyOptions float_opts() {
  ClassifyOptions o;
  o.exact = false;
  return o;
}

}  // namespace

TEST_CASE("catalog sweep: every entry matches its expected verdicts, no violations") {
  for (const auto& e : load_catalog()) {
    Geometry g = e.build(Rat(1), Rat(1));
    ClassifyOptions co;
    co.exact = !e.is_chart;
    ordered_json j;
    // a thrown InvariantViolation here means a theorem consequent broke
    REQUIRE_NOTHROW(j = classify_geometry(g, co));
    CHECK(j["geometry"] == e.name);
    CHECK(j["backend"] == (e.is_chart ? "chart" : "lie"));
    CHECK(j["mode"] == (e.is_chart ? "float" : "exact"));
    for (const char* k : {"first_bianchi", "pair_symmetry", "zz_flat", "nabla_einstein", "soliton"}) {
      REQUIRE_MESSAGE(j["classifiers"][k].contains("verdict"), e.name << "/" << k);
      CHECK_MESSAGE(j["classifiers"][k]["verdict"].get<bool>() == e.expected[k].get<bool>(),
                    e.name << "/" << k);
    }
  }
}

TEST_CASE("flat torus: exact payload details") {
  auto j = classify_geometry(built("flat_torus_3"), exact_opts());

  const auto& fb = j["classifiers"]["first_bianchi"];
  CHECK(fb["verdict"] == true);
  CHECK(fb["residual_exact"] == "0");
  REQUIRE(fb.contains("consequents"));
  CHECK(fb["consequents"]["bsk_residual_exact"] == "0");
  CHECK(fb["consequents"]["nabla13_residual_exact"] == "0");
  CHECK(fb["consequents"]["dnormT2_max_exact"] == "0");
  CHECK(fb["consequents"]["rb2_residual_exact"] == "0");
  CHECK(!fb.contains("witness"));

  const auto& zz = j["classifiers"]["zz_flat"];
  CHECK(zz["verdict"] == false);
  CHECK(zz["zz_residual_exact"] == "1/4");
  CHECK(zz["zz1_residual_exact"] == "0");
  CHECK(zz["curvature_max_exact"] == "1/4");
  REQUIRE(zz.contains("witness"));
  CHECK(zz["witness"]["point"] == 0);
  CHECK(zz["witness"]["indices"] == ordered_json::array({1, 1, 2, 2}));
  CHECK(zz["witness"]["value"].get<double>() == doctest::Approx(0.25));

  const auto& ein = j["classifiers"]["nabla_einstein"];
  CHECK(ein["verdict"] == true);
  CHECK(ein["lambda_exact"] == "-1/2");
  CHECK(ein["lambda_spread_exact"] == "0");
  CHECK(ein["ein6_residual_exact"] == "0");
  CHECK(ein["t11_residual_exact"] == "0");
  CHECK(ein["pair_symmetry"] == true);
  CHECK(ein["ein9"]["C_exact"] == "3/2");
  CHECK(ein["ein9"]["spread_exact"] == "0");
  CHECK(ein["ein9"]["lc_form_gap_exact"] == "0");
  CHECK(ein["ein8"]["B_exact"] == "15/2");
  CHECK(ein["ein8"]["spread_exact"] == "0");

  // not a soliton: curved Ricci blocks the system, and the four equivalent
  // conditions split (|T|^2, f, Scal^g constant; Ric nonzero)
  const auto& sol = j["classifiers"]["soliton"];
  CHECK(sol["verdict"] == false);
  CHECK(sol["gein1_residual_exact"] == "1/2");
  CHECK(sol["gein2_residual_exact"] == "0");
  CHECK(sol["gein3_residual_exact"] == "3/2");
  REQUIRE(sol.contains("witness"));
  CHECK(sol["witness"]["indices"] == ordered_json::array({1, 1}));
  CHECK(sol["witness"]["value"].get<double>() == doctest::Approx(-0.5));
  const auto& cond = sol["equivalent_conditions"];
  CHECK(cond["ric_max_exact"] == "1/2");
  CHECK(cond["conditions"]["a_torsion_norm_constant"] == true);
  CHECK(cond["conditions"]["b_f_constant"] == true);
  CHECK(cond["conditions"]["c_ric_zero"] == false);
  CHECK(cond["conditions"]["d_scalg_constant"] == true);
  CHECK(cond["agree"] == false);
  // consequent layer only runs on a true verdict
  CHECK(!sol.contains("gein7a_residual"));
  CHECK(!sol.contains("harmonic_torsion"));
}

TEST_CASE("flat connection: true verdicts carry their full consequent payloads") {
  auto j = classify_geometry(built("su2_cs"), exact_opts());

  const auto& pair = j["classifiers"]["pair_symmetry"];
  CHECK(pair["verdict"] == true);
  CHECK(pair["equivalences"]["nablaT_alternating"] == true);
  CHECK(pair["equivalences"]["pair_exchange"] == true);
  CHECK(pair["equivalences"]["dT_equals_4_lc_nablaT"] == true);
  // dT = 0 here, so the Levi-Civita-parallel corollary is checked and reported
  CHECK(pair["lc_parallel_residual_exact"] == "0");

  const auto& sol = j["classifiers"]["soliton"];
  CHECK(sol["verdict"] == true);
  for (const char* k : {"gein1_residual_exact", "gein2_residual_exact", "gein3_residual_exact",
                        "gein7a_residual_exact", "gein7b_residual_exact", "gein8_residual_exact"})
    CHECK(sol[k] == "0");
  CHECK(sol["ffinn_min_exact"] == "0");
  const auto& cond = sol["equivalent_conditions"];
  for (const char* k : {"a_torsion_norm_constant", "b_f_constant", "c_ric_zero", "d_scalg_constant"})
    CHECK(cond["conditions"][k] == true);
  CHECK(cond["agree"] == true);
  REQUIRE(sol.contains("harmonic_torsion"));
  CHECK(sol["harmonic_torsion"]["dT_max_exact"] == "0");
  CHECK(sol["harmonic_torsion"]["deltaT_max_exact"] == "0");

  const auto& ein = j["classifiers"]["nabla_einstein"];
  CHECK(ein["ein9"]["C_exact"] == "3");
  CHECK(ein["ein8"]["B_exact"] == "9");
}

TEST_CASE("nilpotent example: false verdicts come with witnesses, not errors") {
  auto j = classify_geometry(built("heis3_r3"), exact_opts());

  const auto& fb = j["classifiers"]["first_bianchi"];
  CHECK(fb["verdict"] == false);
  CHECK(fb["residual_exact"] == "1");
  REQUIRE(fb.contains("witness"));
  CHECK(fb["witness"]["point"] == 0);
  CHECK(fb["witness"]["indices"] == ordered_json::array({1, 2, 4, 5}));
  CHECK(fb["witness"]["value"].get<double>() == doctest::Approx(-1.0));
  CHECK(!fb.contains("consequents"));

  const auto& pair = j["classifiers"]["pair_symmetry"];
  CHECK(pair["verdict"] == false);
  // the three equivalent formulations must fail together
  CHECK(pair["equivalences"]["nablaT_alternating"] == false);
  CHECK(pair["equivalences"]["pair_exchange"] == false);
  CHECK(pair["equivalences"]["dT_equals_4_lc_nablaT"] == false);
  CHECK(pair["residuals"]["fourf_a_exact"] == "1/2");
  CHECK(pair["residuals"]["fourf_b_exact"] == "1/2");
  CHECK(pair["residuals"]["fourf_c_exact"] == "1");
  CHECK(!pair.contains("lc_parallel_residual"));

  const auto& ein = j["classifiers"]["nabla_einstein"];
  CHECK(ein["verdict"] == false);
  CHECK(ein["ein2_residual_exact"] == "1/3");
  CHECK(ein["lambda_exact"] == "-1/3");
  REQUIRE(ein.contains("witness"));
  CHECK(ein["witness"]["indices"] == ordered_json::array({3, 3}));
  // the consequent ladder is gated on the verdict
  CHECK(!ein.contains("ein6_residual"));
  CHECK(!ein.contains("ein9"));
  CHECK(!ein.contains("ein8"));
}

TEST_CASE("torsion family halfway point: Einstein but not flat, not a soliton") {
  auto j = classify_geometry(built("su2_family", Rat(1), frac<Rat>(1, 2)), exact_opts());
  CHECK(j["classifiers"]["first_bianchi"]["verdict"] == true);
  CHECK(j["classifiers"]["pair_symmetry"]["verdict"] == true);

  const auto& zz = j["classifiers"]["zz_flat"];
  CHECK(zz["verdict"] == false);
  CHECK(zz["zz_residual_exact"] == "3/16");
  CHECK(zz["curvature_max_exact"] == "3/16");

  const auto& ein = j["classifiers"]["nabla_einstein"];
  CHECK(ein["verdict"] == true);
  CHECK(ein["lambda_exact"] == "3/8");
  CHECK(ein["ein9"]["C_exact"] == "15/8");
  CHECK(ein["ein8"]["B_exact"] == "27/8");

  CHECK(j["classifiers"]["soliton"]["verdict"] == false);
}

TEST_CASE("six-dimensional Einstein case reports the extra scalar constancy") {
  auto j = classify_nabla_einstein(built("flat_torus_6"), exact_opts());
  CHECK(j["verdict"] == true);
  CHECK(j["lambda_exact"] == "-1/2");
  CHECK(j["ein9"]["C_exact"] == "0");
  CHECK(j["ein8"]["B_exact"] == "6");
  REQUIRE(j.contains("scalg_spread_exact"));
  CHECK(j["scalg_spread_exact"] == "0");
  CHECK(j["six_dim_constant_scalg"] == true);
}

TEST_CASE("chart classifiers: float verdicts and the shared-grid wrapper") {
  auto j = classify_geometry(built("chart_phi"), float_opts());
  CHECK(j["backend"] == "chart");
  CHECK(j["mode"] == "float");
  const auto& pair = j["classifiers"]["pair_symmetry"];
  CHECK(pair["verdict"] == false);
  CHECK(pair["equivalences"]["nablaT_alternating"] == false);
  CHECK(pair["equivalences"]["pair_exchange"] == false);
  CHECK(pair["equivalences"]["dT_equals_4_lc_nablaT"] == false);
  // genuinely failing residuals, far above the tolerance
  CHECK(pair["residuals"]["fourf_a"].get<double>() > 0.1);
  CHECK(pair["residuals"]["fourf_b"].get<double>() > 0.1);
  CHECK(pair["residuals"]["fourf_c"].get<double>() > 0.1);
  CHECK(j["classifiers"]["first_bianchi"]["verdict"] == false);
  CHECK(j["classifiers"]["soliton"]["verdict"] == false);
  // float payloads carry no *_exact twins
  CHECK(!j["classifiers"]["zz_flat"].contains("zz_residual_exact"));
}

TEST_CASE("capability boundaries of the classifiers") {
  // exact mode on a finite-difference chart
  CHECK_THROWS_AS(classify_geometry(built("chart_phi"), exact_opts()), CapabilityError);
  CHECK_THROWS_AS(classify_zz_flat(built("chart_conformal"), exact_opts()), CapabilityError);

  // soliton needs the potential
  Geometry g = built("su2_cs");
  LieInstance<Rat> L = g.lie();
  L.has_f = false;
  g.data = L;
  CHECK_THROWS_AS(classify_soliton(g, exact_opts()), CapabilityError);
  // ...but the combined wrapper degrades to a skip note
  auto j = classify_geometry(g, exact_opts());
  REQUIRE(j["classifiers"]["soliton"].contains("skipped"));
  CHECK(j["classifiers"]["soliton"]["skipped"] == "geometry has no potential f");
  CHECK(!j["classifiers"]["soliton"].contains("verdict"));
  // the other four classifiers are unaffected
  CHECK(j["classifiers"]["first_bianchi"]["verdict"] == true);
}
