#include "skewtor/catalog.hpp"

#include <cmath>
#include <stdexcept>

#include "skewtor/chart.hpp"
#include "skewtor/lie.hpp"
#include "skewtor/point_data.hpp"

namespace skewtor {

namespace {

using nlohmann::ordered_json;

Geometry lie_geom(const std::string& name, LieInstance<Rat> L) {
  std::string err = validate_lie(L);
  if (!err.empty()) throw std::logic_error("catalog entry " + name + ": " + err);
  Geometry g;
  g.name = name;
  g.data = std::move(L);
  return g;
}

Geometry chart_geom(const std::string& name, ChartGeometry C) {
  std::string err = validate_chart(C);
  if (!err.empty()) throw std::logic_error("catalog entry " + name + ": " + err);
  Geometry g;
  g.name = name;
  g.data = std::move(C);
  return g;
}

// ---- Lie entries ------------------------------------------------------------

LieInstance<Rat> abelian3(const Rat& lam) {
  LieInstance<Rat> L;
  L.n = 3;
  L.c = Tensor<Rat>(3, 3);
  L.T = Tensor<Rat>(3, 3);
  set_alt_component(L.T, {0, 1, 2}, lam);
  L.has_f = true;
  L.f = Rat(0);
  return L;
}

LieInstance<Rat> su2(const Rat& lam, const Rat& t) {
  LieInstance<Rat> L;
  L.n = 3;
  L.c = Tensor<Rat>(3, 3);
  L.T = Tensor<Rat>(3, 3);
  set_alt_component(L.c, {0, 1, 2}, lam);
  set_alt_component(L.T, {0, 1, 2}, Rat(-t * lam));
  L.has_f = true;
  L.f = Rat(0);
  return L;
}

LieInstance<Rat> heis(const Rat& t) {
  LieInstance<Rat> L;
  L.n = 6;
  L.c = Tensor<Rat>(6, 3);
  L.c(0, 1, 2) = Rat(1);
  L.c(1, 0, 2) = Rat(-1);
  L.T = Tensor<Rat>(6, 3);
  set_alt_component(L.T, {2, 3, 4}, t);
  L.has_f = true;
  L.f = Rat(0);
  return L;
}

LieInstance<Rat> abelian6(const Rat& lam) {
  LieInstance<Rat> L;
  L.n = 6;
  L.c = Tensor<Rat>(6, 3);
  L.T = Tensor<Rat>(6, 3);
  set_alt_component(L.T, {0, 1, 2}, lam);
  set_alt_component(L.T, {3, 4, 5}, lam);
  L.has_f = true;
  L.f = Rat(0);
  return L;
}

// ---- chart entries ----------------------------------------------------------

ChartGeometry phi_chart() {
  ChartGeometry C;
  C.n = 4;
  C.box.assign(4, {-1.0, 1.0});
  C.h = 1e-3;
  C.grid = {{0.1, 0.2, -0.3, 0.4}, {-0.5, 0.1, 0.2, -0.2}, {0.3, -0.4, 0.1, 0.6}};
  C.g.resize(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) C.g[static_cast<std::size_t>(4 * i + j)] = Expr::parse(i == j ? "1" : "0");
  C.T.push_back({0, 1, 2, Expr::parse("0.5+0.2*sin(x1+x4)")});
  C.has_f = true;
  C.f = Expr::parse("0");
  return C;
}

// seven-sphere-style 3-form on a conformally flat R^7, rotated in the (1,6)
// coordinate plane at rate omega along x7; the conformal weight e^{3u} makes
// the frame components pure trig with |T|^2 = 42 a^2 pointwise
constexpr double kConfA = 0.2;  // frame amplitude a; rotation rate omega = 9

ChartGeometry conformal_chart() {
  ChartGeometry C;
  C.n = 7;
  C.box.assign(7, {-1.0, 1.0});
  C.h = 1e-3;
  C.grid = {{0, 0, 0, 0, 0, 0, 0.05}, {0, 0, 0, 0, 0, 0, -0.11}, {0, 0, 0, 0, 0, 0, 0.17}};
  const std::string e2u = "exp(2*(0.1*sin(x7)+0.05*cos(2*x7)))";
  C.g.resize(49);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      C.g[static_cast<std::size_t>(7 * i + j)] = Expr::parse(i == j ? e2u : "0");

  // the associative 3-form, one representative per orbit
  Tensor<double> phi(7, 3);
  set_alt_component(phi, {0, 1, 2}, 1.0);
  set_alt_component(phi, {0, 3, 4}, 1.0);
  set_alt_component(phi, {0, 5, 6}, 1.0);
  set_alt_component(phi, {1, 3, 5}, 1.0);
  set_alt_component(phi, {1, 4, 6}, -1.0);
  set_alt_component(phi, {2, 3, 6}, -1.0);
  set_alt_component(phi, {2, 4, 5}, -1.0);

  // pull back through the rotation e0 -> cos e0 + sin e5, e5 -> -sin e0 + cos e5;
  // triples meeting the plane in 0 or 2 indices are invariant, the rest pick up
  // a single cos or sin factor
  const std::string amp = "0.2*exp(3*(0.1*sin(x7)+0.05*cos(2*x7)))";
  const std::string cosw = "*cos(9*x7)", sinw = "*sin(9*x7)";
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j)
      for (int k = j + 1; k < 7; ++k) {
        bool h0 = (i == 0 || j == 0 || k == 0), h5 = (i == 5 || j == 5 || k == 5);
        double k0 = 0, kc = 0, ks = 0;
        if (h0 == h5) {
          k0 = phi(i, j, k);
        } else if (h0) {
          kc = phi(i, j, k);
          ks = phi(i == 0 ? 5 : i, j == 0 ? 5 : j, k == 0 ? 5 : k);
        } else {
          kc = phi(i, j, k);
          ks = -phi(i == 5 ? 0 : i, j == 5 ? 0 : j, k == 5 ? 0 : k);
        }
        std::string expr;
        if (k0 != 0)
          expr = (k0 < 0 ? "-" : "") + amp;
        else if (kc != 0)
          expr = (kc < 0 ? "-" : "") + amp + cosw;
        else if (ks != 0)
          expr = (ks < 0 ? "-" : "") + amp + sinw;
        if (!expr.empty()) C.T.push_back({i, j, k, Expr::parse(expr)});
      }

  C.has_f = true;
  C.f = Expr::parse("0.15*sin(x7)");
  return C;
}

// ---- expected classifier verdicts at default parameters ---------------------

ordered_json verdicts(bool fb, bool pair, bool zz, bool ein, bool sol) {
  ordered_json v;
  v["first_bianchi"] = fb;
  v["pair_symmetry"] = pair;
  v["zz_flat"] = zz;
  v["nabla_einstein"] = ein;
  v["soliton"] = sol;
  return v;
}

Geometry strip_torsion(Geometry g) {
  if (g.is_lie()) {
    LieInstance<Rat> L = g.lie();
    L.T = Tensor<Rat>(L.n, 3);
    g.data = std::move(L);
  } else {
    ChartGeometry C = g.chart();
    C.T.clear();
    g.data = std::move(C);
  }
  return g;
}

std::vector<CatalogEntry> make_catalog() {
  std::vector<CatalogEntry> cat;

  cat.push_back({"flat_torus_3",
                 "flat 3-torus, T = lambda * e123; curvature comes from torsion alone",
                 false, true, false,
                 [](const Rat& lam, const Rat&) { return lie_geom("flat_torus_3", abelian3(lam)); },
                 verdicts(true, true, false, true, false)});

  cat.push_back({"su2_cs",
                 "su(2) with c = lambda * eps and T = -lambda * eps: the flat +-connection",
                 false, true, false,
                 [](const Rat& lam, const Rat&) { return lie_geom("su2_cs", su2(lam, Rat(1))); },
                 verdicts(true, true, true, true, true)});

  cat.push_back({"su2_family",
                 "su(2) line T = -t * lambda * eps through the Levi-Civita (t=0) and flat (t=1) points",
                 false, true, true,
                 [](const Rat& lam, const Rat& t) { return lie_geom("su2_family", su2(lam, t)); },
                 verdicts(true, true, true, true, true)});

  cat.push_back({"heis3_r3",
                 "Heisenberg x R^3 with torsion t * e345 straddling the center",
                 false, false, true,
                 [](const Rat&, const Rat& t) { return lie_geom("heis3_r3", heis(t)); },
                 verdicts(false, false, false, false, false)});

  cat.push_back({"flat_torus_6",
                 "flat 6-torus with the two-block torsion lambda * (e123 + e456)",
                 false, true, false,
                 [](const Rat& lam, const Rat&) { return lie_geom("flat_torus_6", abelian6(lam)); },
                 verdicts(true, true, false, true, false)});

  cat.push_back({"chart_phi",
                 "flat R^4 chart with one oscillating torsion orbit phi(x) * e123",
                 true, false, false,
                 [](const Rat&, const Rat&) { return chart_geom("chart_phi", phi_chart()); },
                 verdicts(false, false, false, false, false)});

  cat.push_back({"chart_conformal",
                 "conformally flat R^7 chart carrying a rotated associative 3-form and a potential",
                 true, false, false,
                 [](const Rat&, const Rat&) { return chart_geom("chart_conformal", conformal_chart()); },
                 verdicts(false, false, false, false, false)});

  // torsion-free companions: Levi-Civita behaviour on the same metrics
  struct ZeroSpec {
    const char* base;
    ordered_json expected;
  };
  const ZeroSpec zero[] = {
      {"flat_torus_3", verdicts(true, true, true, true, true)},
      {"su2_cs", verdicts(true, true, false, true, false)},
      {"su2_family", verdicts(true, true, false, true, false)},
      {"heis3_r3", verdicts(true, true, false, false, false)},
      {"flat_torus_6", verdicts(true, true, true, true, true)},
      {"chart_phi", verdicts(true, true, true, true, true)},
      {"chart_conformal", verdicts(true, true, false, false, false)},
  };
  std::size_t base_count = cat.size();
  for (const ZeroSpec& z : zero) {
    const CatalogEntry* base = nullptr;
    for (std::size_t i = 0; i < base_count; ++i)
      if (cat[i].name == z.base) base = &cat[i];
    CatalogEntry e;
    e.name = std::string(z.base) + "_zero_t";
    e.summary = std::string("torsion-free companion of ") + z.base;
    e.is_chart = base->is_chart;
    e.accepts_lambda = base->accepts_lambda;
    e.accepts_t = false;
    auto build_base = base->build;
    std::string nm = e.name;
    e.build = [build_base, nm](const Rat& lam, const Rat& t) {
      Geometry g = strip_torsion(build_base(lam, t));
      g.name = nm;
      return g;
    };
    e.expected = z.expected;
    cat.push_back(std::move(e));
  }
  return cat;
}

void fail_check(const std::string& entry, const std::string& what) {
  throw std::logic_error("catalog self-check failed for " + entry + ": " + what);
}

// frozen closed-form values; a mismatch means the backends drifted
void self_check(const std::vector<CatalogEntry>& cat) {
  auto find = [&](const char* n) -> const CatalogEntry& {
    for (const auto& e : cat)
      if (e.name == n) return e;
    throw std::logic_error(std::string("catalog misses entry ") + n);
  };

  {
    PointData<Rat> P = lie_point_data(find("flat_torus_3").build(Rat(1), Rat(1)).lie());
    if (P.Scal != frac<Rat>(-3, 2)) fail_check("flat_torus_3", "Scal != -3/2");
    if (P.normT2 != Rat(6)) fail_check("flat_torus_3", "|T|^2 != 6");
    if (P.R(0, 1, 1, 0) != frac<Rat>(-1, 4)) fail_check("flat_torus_3", "R(1,2,2,1) != -1/4");
  }
  {
    PointData<Rat> P = lie_point_data(find("su2_cs").build(Rat(1), Rat(1)).lie());
    if (!is_exactly_zero(P.R)) fail_check("su2_cs", "curvature not zero");
    if (P.Ricg(0, 0) != frac<Rat>(1, 2)) fail_check("su2_cs", "Ricg != T^2/4");
  }
  {
    PointData<Rat> P = lie_point_data(find("su2_family").build(Rat(1), frac<Rat>(1, 2)).lie());
    // mu = (1-t)/2 = 1/4, R(0,1,0,1) = mu^2 - mu = -3/16
    if (P.R(0, 1, 0, 1) != frac<Rat>(-3, 16)) fail_check("su2_family", "R(1,2,1,2) != -3/16");
  }
  {
    PointData<Rat> P = lie_point_data(find("heis3_r3").build(Rat(1), Rat(1)).lie());
    if (P.Ricg(0, 0) != frac<Rat>(-1, 2)) fail_check("heis3_r3", "Ricg(1,1) != -1/2");
    if (P.dT(0, 1, 3, 4) != Rat(-1)) fail_check("heis3_r3", "dT(1,2,4,5) != -1");
  }
  {
    PointData<Rat> P = lie_point_data(find("flat_torus_6").build(Rat(1), Rat(1)).lie());
    if (P.Scal != Rat(-3)) fail_check("flat_torus_6", "Scal != -3");
    if (P.T2(0, 0) != Rat(2)) fail_check("flat_torus_6", "T^2 != 2 delta");
  }
  {
    const Geometry g = find("chart_phi").build(Rat(1), Rat(1));
    const auto& x = g.chart().grid[0];
    Tensor<double> Tf = chart_frame_torsion_at(g.chart(), x);
    double f = 0.5 + 0.2 * std::sin(x[0] + x[3]);
    if (std::fabs(norm2_full(Tf) - 6.0 * f * f) > 1e-12) fail_check("chart_phi", "|T|^2 != 6 phi^2");
  }
  {
    const Geometry g = find("chart_conformal").build(Rat(1), Rat(1));
    if (g.chart().T.size() != 11) fail_check("chart_conformal", "orbit count != 11");
    for (const auto& x : g.chart().grid) {
      Tensor<double> Tf = chart_frame_torsion_at(g.chart(), x);
      if (std::fabs(norm2_full(Tf) - 42.0 * kConfA * kConfA) > 1e-12)
        fail_check("chart_conformal", "|T|^2 != 42 a^2");
      Tensor<double> T2 = t2_of(Tf);
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
          if (std::fabs(T2(i, j) - (i == j ? 6.0 * kConfA * kConfA : 0.0)) > 1e-12)
            fail_check("chart_conformal", "T^2 != 6 a^2 delta");
    }
  }
}

}  // namespace

const std::vector<CatalogEntry>& load_catalog() {
  static const std::vector<CatalogEntry> cat = [] {
    std::vector<CatalogEntry> c = make_catalog();
    self_check(c);
    return c;
  }();
  return cat;
}

const CatalogEntry* find_catalog(const std::string& name) {
  for (const CatalogEntry& e : load_catalog())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace skewtor
