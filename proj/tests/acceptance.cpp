// Acceptance gate: ten gating properties, one printed line each, exit 1 if
// any fails.  Run after the unit suite; everything here goes through public
// entry points plus the brute-force oracles, never through engine internals.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "oracles.hpp"
#include "skewtor/catalog.hpp"
#include "skewtor/classify.hpp"
#include "skewtor/engine.hpp"
#include "skewtor/fuzz.hpp"
#include "skewtor/geometry.hpp"
#include "skewtor/point_data.hpp"

using namespace skewtor;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

int failures = 0;
int crit_no = 0;

void criterion(const std::string& desc, const std::function<bool()>& body) {
  ++crit_no;
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "  criterion %d threw: %s\n", crit_no, ex.what());
  }
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", crit_no, desc.c_str());
  if (!ok) ++failures;
}

Geometry built(const char* name) {
  const CatalogEntry* e = find_catalog(name);
  if (!e) throw std::runtime_error(std::string("missing catalog entry ") + name);
  return e->build(Rat(1), Rat(1));
}

}  // namespace

int main() {
  FuzzResult fuzz200;  // shared between criteria 1 and 4

  criterion(
      "universal identities vanish on the full catalog and 200 seeded random frames within 60 s",
      [&] {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        auto uni = universal_identity_ids();
        for (const auto& e : load_catalog()) {
          Geometry g = e.build(Rat(1), Rat(1));
          RunOptions opt;
          opt.exact = !e.is_chart;
          opt.identities = uni;
          RunResult res = run_identities(g, opt);
          if (res.outcomes.size() != uni.size()) ok = false;
          for (const auto& o : res.outcomes) {
            if (!o.pass || o.skipped) ok = false;
            if (opt.exact && o.residual_exact != "0") ok = false;
            if (!opt.exact && !(o.residual <= 1e-6)) ok = false;
          }
        }
        FuzzOptions fo;
        fo.seed = 7;
        fo.count = 200;
        fo.dims = {3, 5, 6};
        fuzz200 = run_fuzz(fo);
        if (!fuzz200.ok || fuzz200.instances != 200) ok = false;
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return ok && secs <= 60.0;
      });

  criterion("flat 3-torus closed forms match brute-force frame-loop oracles exactly", [&] {
    Geometry g = built("flat_torus_3");
    const auto& L = g.lie();
    auto P = lie_point_data(L);
    bool ok = true;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        ok &= P.Ric(i, j) == (i == j ? frac<Rat>(-1, 2) : Rat(0));
        ok &= P.T2(i, j) == (i == j ? Rat(2) : Rat(0));
      }
    ok &= P.Scal == frac<Rat>(-3, 2);
    ok &= P.normT2 == Rat(6);
    ok &= P.Scalg == Rat(0);
    ok &= is_exactly_zero(P.sigma);
    ok &= is_exactly_zero(P.theta);
    ok &= is_exactly_zero(P.Theta);
    // independent route: Koszul + T/2, brute-force curvature, then contract
    Tensor<Rat> Gw = oracle::koszul(L.c);
    Gw += frac<Rat>(1, 2) * P.T;
    ok &= P.G == Gw;
    ok &= P.R == oracle::lie_curvature(L.c, Gw);
    Tensor<Rat> ric(3, 2);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Rat acc(0);
        for (int i = 0; i < 3; ++i) acc += P.R(i, j, k, i);
        ric(j, k) = acc;
      }
    ok &= P.Ric == ric;
    return ok;
  });

  criterion(
      "parallelizable frame has zero connection and curvature and passes every flatness classifier",
      [&] {
        Geometry g = built("su2_cs");
        auto P = lie_point_data(g.lie());
        bool ok = is_exactly_zero(P.G) && is_exactly_zero(P.R) && P.normT2 == Rat(6);
        ClassifyOptions co;
        ordered_json fb = classify_first_bianchi(g, co);
        ok &= fb["verdict"] == true;
        ok &= fb["consequents"]["bsk_residual_exact"] == "0";
        ok &= fb["consequents"]["nabla13_residual_exact"] == "0";
        ok &= fb["consequents"]["dnormT2_max_exact"] == "0";
        ok &= fb["consequents"]["rb2_residual_exact"] == "0";
        ok &= classify_zz_flat(g, co)["verdict"] == true;
        ordered_json sol = classify_soliton(g, co);
        ok &= sol["verdict"] == true;
        const auto& eq = sol["equivalent_conditions"];
        ok &= eq["conditions"]["a_torsion_norm_constant"] == true;
        ok &= eq["conditions"]["b_f_constant"] == true;
        ok &= eq["conditions"]["c_ric_zero"] == true;
        ok &= eq["conditions"]["d_scalg_constant"] == true;
        ok &= eq["agree"] == true;
        ok &= eq["f_spread_exact"] == "0";
        ok &= sol["harmonic_torsion"]["dT_max_exact"] == "0";
        ok &= sol["harmonic_torsion"]["deltaT_max_exact"] == "0";
        return ok;
      });

  criterion("the three pair-symmetry equivalence tests agree on every catalog and random instance",
            [&] {
              bool ok = fuzz200.ok &&
                        fuzz200.pair_true + fuzz200.pair_false == fuzz200.instances;
              for (const auto& e : load_catalog()) {
                Geometry g = e.build(Rat(1), Rat(1));
                ClassifyOptions co;
                co.exact = !e.is_chart;
                ordered_json p = classify_pair_symmetry(g, co);
                bool a = p["equivalences"]["nablaT_alternating"].get<bool>();
                bool b = p["equivalences"]["pair_exchange"].get<bool>();
                bool c = p["equivalences"]["dT_equals_4_lc_nablaT"].get<bool>();
                if (a != b || b != c) ok = false;
                if (e.name == "su2_cs" && !(a && b && c)) ok = false;
                if (e.name == "chart_phi" && (a || b || c)) ok = false;
              }
              return ok;
            });

  criterion(
      "an exchange-symmetry pass always comes with flat curvature; the 3-torus fails it with "
      "residual 1/4",
      [&] {
        bool ok = true;
        for (const auto& e : load_catalog()) {
          Geometry g = e.build(Rat(1), Rat(1));
          ClassifyOptions co;
          co.exact = !e.is_chart;
          ordered_json z = classify_zz_flat(g, co);  // InvariantViolation would throw
          if (z["verdict"].get<bool>()) ok &= z["curvature_max"].get<double>() <= co.tol;
          if (e.name == "flat_torus_3") {
            ok &= z["verdict"] == false;
            ok &= z["zz_residual_exact"] == "1/4";
            ok &= std::abs(std::abs(z["witness"]["value"].get<double>()) - 0.25) < 1e-12;
          }
        }
        return ok;
      });

  criterion("every curvature-symmetry pass carries vanishing parallel-torsion consequents", [&] {
    bool ok = true;
    int trues = 0;
    for (const auto& e : load_catalog()) {
      Geometry g = e.build(Rat(1), Rat(1));
      ClassifyOptions co;
      co.exact = !e.is_chart;
      ordered_json f = classify_first_bianchi(g, co);
      if (!f["verdict"].get<bool>()) continue;
      ++trues;
      const auto& q = f["consequents"];
      ok &= q["bsk_residual"].get<double>() <= co.tol;
      ok &= q["nabla13_residual"].get<double>() <= co.tol;
      ok &= q["dnormT2_max"].get<double>() <= co.tol;
      ok &= q["rb2_residual"].get<double>() <= co.tol;
    }
    return ok && trues == 11;
  });

  criterion("defect constants report exact values with zero spread on the closed-form frames", [&] {
    auto constants = [](const char* name) {
      Geometry g = built(name);
      RunOptions opt;
      opt.identities = {"EIN9", "EIN8"};
      return run_identities(g, opt);
    };
    RunResult a = constants("flat_torus_3");
    if (a.outcomes.size() != 2) return false;
    bool ok = a.outcomes[0].id == "EIN9" && a.outcomes[0].has_constancy &&
              a.outcomes[0].constancy_value_exact == "3/2" &&
              a.outcomes[0].constancy_spread_exact == "0";
    ok &= a.outcomes[1].id == "EIN8" && a.outcomes[1].has_constancy &&
          a.outcomes[1].constancy_value_exact == "15/2" &&
          a.outcomes[1].constancy_spread_exact == "0";
    RunResult b = constants("su2_cs");
    if (b.outcomes.size() != 2) return false;
    ok &= b.outcomes[0].constancy_value_exact == "3" &&
          b.outcomes[0].constancy_spread_exact == "0";
    ok &= b.outcomes[1].constancy_value_exact == "9" &&
          b.outcomes[1].constancy_spread_exact == "0";
    return ok;
  });

  criterion("halving the finite-difference step cuts the cyclic curvature residual at least "
            "12-fold",
            [&] {
              Geometry g = built("chart_conformal");
              RunOptions opt;
              opt.exact = false;
              opt.identities = {"FIRST_BIANCHI_T"};
              RunResult r1 = run_identities(g, opt);
              opt.h_override = 5e-4;
              RunResult r2 = run_identities(g, opt);
              if (r1.outcomes.size() != 1 || r2.outcomes.size() != 1) return false;
              double a = r1.outcomes[0].residual, b = r2.outcomes[0].residual;
              return a <= 1e-6 && b > 0 && a / b >= 12.0;
            });

  criterion("repeated full-catalog float runs emit byte-identical reports", [&] {
    fs::path dir = fs::temp_directory_path() / "skewtor_acceptance";
    fs::create_directories(dir);
    fs::path A = dir / "determinism_a.json", B = dir / "determinism_b.json";
    auto run = [&](const fs::path& p) {
      std::string cmd = std::string(SKEWTOR_BIN) +
                        " check --catalog all --mode float --seed 7 --out " + p.string() +
                        " >/dev/null 2>&1";
      int rc = std::system(cmd.c_str());
      return rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
    };
    auto slurp = [](const fs::path& p) {
      std::ifstream in(p);
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    };
    bool ok = run(A) && run(B);
    std::string sa = slurp(A);
    ok &= !sa.empty() && sa == slurp(B);
    ordered_json j = ordered_json::parse(sa, nullptr, false);
    ok &= !j.is_discarded() && j.contains("runs") && j["runs"].size() == 14;
    return ok;
  });

  criterion("an injected sign flip in one assembly is caught by the randomized exact suite", [&] {
    FuzzOptions fo;
    fo.seed = 7;
    fo.count = 200;
    fo.dims = {3, 5, 6};
    fo.mutate_gen_sigma_flip = true;
    FuzzResult r = run_fuzz(fo);
    return !r.ok && r.failed_identity == "GEN" && !r.counterexample.empty() &&
           r.counterexample["residual_exact"].is_string() &&
           r.counterexample["residual_exact"] != "0";
  });

  if (failures) std::printf("%d of %d criteria failed\n", failures, crit_no);
  return failures == 0 ? 0 : 1;
}
