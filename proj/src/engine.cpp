#include "skewtor/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

#include "skewtor/classify.hpp"
#include "skewtor/lie.hpp"

namespace skewtor {

namespace {

using nlohmann::ordered_json;

double as_d(const Rat& v) { return scalar_traits<Rat>::to_double(v); }
double as_d(double v) { return v; }

std::string exact_str(const Rat& v) { return format_rational(v); }
std::string exact_str(double) { return std::string(); }

// pass predicates per scalar mode
bool small(const Rat& v, double) { return scalar_traits<Rat>::is_zero(v); }
bool small(double v, double tol) { return std::fabs(v) <= tol; }
bool bound_ok(const Rat& v, double) { return v >= 0; }
bool bound_ok(double v, double tol) { return v >= -10.0 * tol; }

template <class S>
constexpr bool kExact = scalar_traits<S>::exact;

// ---- grid construction ------------------------------------------------------

std::vector<PointData<double>> chart_grid(const ChartGeometry& C, double h_override,
                                          int threads) {
  const int N = static_cast<int>(C.grid.size());
  std::vector<PointData<double>> out(static_cast<std::size_t>(N));
  int nthreads = std::max(1, std::min(threads, N));
  if (nthreads == 1) {
    for (int i = 0; i < N; ++i)
      out[static_cast<std::size_t>(i)] = chart_point_data(C, C.grid[static_cast<std::size_t>(i)], h_override);
    return out;
  }
  // indexed slots: each point's result is schedule-independent
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < N; i += nthreads)
        out[static_cast<std::size_t>(i)] = chart_point_data(C, C.grid[static_cast<std::size_t>(i)], h_override);
    });
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace

std::vector<PointData<Rat>> build_grid_exact(const Geometry& geo) {
  if (!geo.is_lie())
    throw CapabilityError(
        "exact mode requires the algebraic backend; chart geometries are finite-difference "
        "and float-only");
  return {lie_point_data(geo.lie())};
}

std::vector<PointData<double>> build_grid_float(const Geometry& geo, double h_override,
                                                int threads) {
  if (geo.is_lie()) return {lie_point_data(to_double(geo.lie()))};
  return chart_grid(geo.chart(), h_override, threads);
}

// ---- identity runs ----------------------------------------------------------

namespace {

template <class S>
RunResult run_impl(const Geometry& geo, const RunOptions& opt,
                   const std::vector<PointData<S>>& pts) {
  RunResult R;
  R.exact = kExact<S>;
  R.tol = opt.tol;
  R.grid_points = static_cast<int>(pts.size());

  // selection, normalized to registry order
  std::set<std::string> wanted(opt.identities.begin(), opt.identities.end());
  for (const auto& id : opt.identities)
    if (!is_identity_id(id)) throw std::invalid_argument("unknown identity id: " + id);

  for (const IdentityInfo& info : identity_registry()) {
    if (!wanted.empty() && !wanted.count(info.id)) continue;
    IdentityOutcome o;
    o.id = info.id;
    o.anchor = info.anchor;
    o.universal = info.universal;

    if (info.needs_f && !geo.has_f()) {
      if (opt.explicit_selection)
        throw CapabilityError("identity " + info.id +
                              " consumes the potential f, which this geometry does not supply");
      o.skipped = true;
      o.skip_reason = "geometry has no potential f";
      R.outcomes.push_back(std::move(o));
      continue;
    }
    if ((info.id == "EIN9" || info.id == "EIN8") && geo.dim() == 2) {
      o.skipped = true;
      o.skip_reason = "constants degenerate in dimension 2 (n-2 factors); not applicable";
      R.outcomes.push_back(std::move(o));
      continue;
    }

    CombinedEval<S> ev = eval_on_grid<S>(info.id, pts, opt.eval);
    o.residual = as_d(ev.max_resid);
    o.max_point = ev.max_point;
    if (kExact<S>) o.residual_exact = exact_str(ev.max_resid);
    bool ok = small(ev.max_resid, opt.tol);
    bool marg = !kExact<S> && o.residual > opt.tol && o.residual <= 10.0 * opt.tol;
    if (ev.has_constancy) {
      o.has_constancy = true;
      o.constancy_value = as_d(ev.c_value);
      o.constancy_spread = as_d(ev.c_spread);
      if (kExact<S>) {
        o.constancy_value_exact = exact_str(ev.c_value);
        o.constancy_spread_exact = exact_str(ev.c_spread);
      }
      if (!small(ev.c_spread, opt.tol)) {
        ok = false;
        if (!kExact<S> && o.constancy_spread <= 10.0 * opt.tol) marg = true;
      }
    }
    if (ev.has_bound) {
      o.has_bound = true;
      o.bound_min = as_d(ev.bound_min);
      if (kExact<S>) o.bound_min_exact = exact_str(ev.bound_min);
      if (!bound_ok(ev.bound_min, opt.tol)) ok = false;
    }
    o.pass = ok;
    o.marginal = !ok && marg;
    if (info.universal && !ok) R.universal_failure = true;
    R.outcomes.push_back(std::move(o));
  }
  return R;
}

}  // namespace

RunResult run_identities(const Geometry& geo, const RunOptions& opt) {
  bool exact = opt.exact;
  if (exact && !geo.is_lie())
    throw CapabilityError(
        "exact mode requires the algebraic backend; chart geometries are finite-difference "
        "and float-only");
  if (exact) return run_impl<Rat>(geo, opt, build_grid_exact(geo));
  return run_impl<double>(geo, opt, build_grid_float(geo, opt.h_override, opt.threads));
}

// ---- classifiers ------------------------------------------------------------

namespace {

template <class S>
void put(ordered_json& j, const std::string& key, const S& v) {
  j[key] = as_d(v);
  if (kExact<S>) j[key + "_exact"] = exact_str(v);
}

// max over grid and members of |component|, with its location
template <class S>
struct MaxComponent {
  double value = 0;  // signed value of the extremal component
  double abs = -1;
  int point = 0;
  int rank = 0;
  std::array<int, kMaxRank> idx{};
};

template <class S>
MaxComponent<S> max_component(const std::string& id, const std::vector<PointData<S>>& pts) {
  MaxComponent<S> best;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    IdentityValue<S> v = eval_identity<S>(id, pts[p], {});
    for (const auto& m : v.members) {
      const int n = m.dim() > 0 ? m.dim() : 1;
      if (m.rank() == 0) {
        double a = std::fabs(as_d(m()));
        if (a > best.abs) {
          best = {as_d(m()), a, static_cast<int>(p), 0, {}};
        }
        continue;
      }
      for_each_index(n, m.rank(), [&](const std::array<int, kMaxRank>& q) {
        double a = std::fabs(as_d(m.at_idx(q)));
        if (a > best.abs) {
          best.value = as_d(m.at_idx(q));
          best.abs = a;
          best.point = static_cast<int>(p);
          best.rank = m.rank();
          best.idx = q;
        }
      });
    }
  }
  return best;
}

template <class S>
ordered_json witness_json(const std::string& id, const std::vector<PointData<S>>& pts) {
  MaxComponent<S> m = max_component(id, pts);
  ordered_json w;
  w["point"] = m.point;
  ordered_json idx = ordered_json::array();
  for (int s = 0; s < m.rank; ++s) idx.push_back(m.idx[static_cast<std::size_t>(s)] + 1);
  w["indices"] = std::move(idx);
  w["value"] = m.value;
  return w;
}

// max-abs of a PointData tensor member across the grid
template <class S, class Get>
S grid_max_abs(const std::vector<PointData<S>>& pts, Get&& get) {
  S best(0);
  for (const auto& P : pts) {
    S a = max_abs_val(get(P));
    if (a > best) best = a;
  }
  return best;
}

template <class S, class Get>
S grid_spread(const std::vector<PointData<S>>& pts, Get&& get) {
  S lo = get(pts[0]), hi = lo;
  for (const auto& P : pts) {
    S v = get(P);
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return hi - lo;
}

struct Mode {
  bool exact;
  double tol;
};

template <class S>
bool passes(Mode md, const S& v) {
  return small(v, md.tol);
}

// ---- first Bianchi (Riemannian form) ---------------------------------------

template <class S>
ordered_json fb_impl(const std::vector<PointData<S>>& pts, Mode md) {
  ordered_json j;
  CombinedEval<S> rb = eval_on_grid<S>("RB", pts, {});
  bool verdict = passes(md, rb.max_resid);
  j["verdict"] = verdict;
  put(j, "residual", rb.max_resid);
  if (!verdict) {
    j["witness"] = witness_json<S>("RB", pts);
    return j;
  }
  // consequents: the parallel-torsion family, constant |T|^2, and the
  // contracted Riemannian second Bianchi identity with no torsion terms
  CombinedEval<S> bsk = eval_on_grid<S>("BSK", pts, {});
  S nabla13(0);  // nabla T + (1/3) sigma, the parallel connection's derivative
  {
    const int n = pts[0].n;
    for (const auto& P : pts) {
      Tensor<S> m(n, 4);
      for_each_index(n, 4, [&](const std::array<int, kMaxRank>& q) {
        m.at_idx(q) = P.nablaT.at_idx(q) + frac<S>(1, 3) * P.sigma.at_idx(q);
      });
      S a = max_abs_val(m);
      if (a > nabla13) nabla13 = a;
    }
  }
  S dnt2 = grid_max_abs<S>(pts, [](const PointData<S>& P) -> const Tensor<S>& { return P.dnormT2; });
  S rb2(0);
  {
    const int n = pts[0].n;
    for (const auto& P : pts) {
      for (int jj = 0; jj < n; ++jj) {
        S acc = P.dScal(jj);
        for (int i = 0; i < n; ++i) acc -= frac<S>(2) * P.nablaRic(i, jj, i);
        S a = scalar_traits<S>::abs(acc);
        if (a > rb2) rb2 = a;
      }
    }
  }
  ordered_json c;
  put(c, "bsk_residual", bsk.max_resid);
  put(c, "nabla13_residual", nabla13);
  put(c, "dnormT2_max", dnt2);
  put(c, "rb2_residual", rb2);
  j["consequents"] = std::move(c);
  if (!passes(md, bsk.max_resid) || !passes(md, nabla13) || !passes(md, dnt2) ||
      !passes(md, rb2))
    throw InvariantViolation(
        "Riemannian first Bianchi identity holds but a consequent fails (report: " +
        j.dump() + ")");
  return j;
}

// ---- pair-symmetry triple --------------------------------------------------

template <class S>
ordered_json pair_impl(const std::vector<PointData<S>>& pts, Mode md) {
  CombinedEval<S> a = eval_on_grid<S>("FOURF_A", pts, {});
  CombinedEval<S> b = eval_on_grid<S>("FOURF_B", pts, {});
  CombinedEval<S> c = eval_on_grid<S>("FOURF_C", pts, {});
  bool va = passes(md, a.max_resid), vb = passes(md, b.max_resid), vc = passes(md, c.max_resid);
  ordered_json j;
  j["verdict"] = vb;
  ordered_json f;
  f["nablaT_alternating"] = va;
  f["pair_exchange"] = vb;
  f["dT_equals_4_lc_nablaT"] = vc;
  j["equivalences"] = std::move(f);
  ordered_json r;
  put(r, "fourf_a", a.max_resid);
  put(r, "fourf_b", b.max_resid);
  put(r, "fourf_c", c.max_resid);
  j["residuals"] = std::move(r);
  if (va != vb || vb != vc)
    throw InvariantViolation("the three pair-symmetry equivalences disagree: " + j.dump());
  if (vb) {
    // corollary: with the exchange symmetry and dT = 0, T is Levi-Civita parallel
    S dt = grid_max_abs<S>(pts, [](const PointData<S>& P) -> const Tensor<S>& { return P.dT; });
    if (passes(md, dt)) {
      S lc = grid_max_abs<S>(pts, [](const PointData<S>& P) -> const Tensor<S>& { return P.nablagT; });
      put(j, "lc_parallel_residual", lc);
      if (!passes(md, lc))
        throw InvariantViolation(
            "pair symmetry with closed torsion must force Levi-Civita-parallel torsion: " +
            j.dump());
    }
  }
  return j;
}

// ---- first/last slot exchange => flat --------------------------------------

template <class S>
ordered_json zz_impl(const std::vector<PointData<S>>& pts, Mode md) {
  CombinedEval<S> zz = eval_on_grid<S>("ZZ", pts, {});
  CombinedEval<S> zz1 = eval_on_grid<S>("ZZ1", pts, {});
  S rnorm = grid_max_abs<S>(pts, [](const PointData<S>& P) -> const Tensor<S>& { return P.R; });
  bool verdict = passes(md, zz.max_resid);
  ordered_json j;
  j["verdict"] = verdict;
  put(j, "zz_residual", zz.max_resid);
  put(j, "zz1_residual", zz1.max_resid);
  put(j, "curvature_max", rnorm);
  if (!verdict) {
    j["witness"] = witness_json<S>("ZZ", pts);
    return j;
  }
  if (!passes(md, rnorm))
    throw InvariantViolation(
        "first/last slot exchange symmetry holds but the connection is not flat: " + j.dump());
  return j;
}

// ---- Einstein condition for the torsion connection -------------------------

template <class S>
ordered_json einstein_impl(const std::vector<PointData<S>>& pts, Mode md) {
  const int n = pts[0].n;
  ordered_json j;
  CombinedEval<S> e2 = eval_on_grid<S>("EIN2", pts, {});
  bool verdict = passes(md, e2.max_resid);
  j["verdict"] = verdict;
  put(j, "ein2_residual", e2.max_resid);
  put(j, "lambda", S(pts[0].Scal / frac<S>(n)));
  put(j, "lambda_spread",
      grid_spread<S>(pts, [&](const PointData<S>& P) { return S(P.Scal / frac<S>(n)); }));
  if (!verdict) {
    j["witness"] = witness_json<S>("EIN2", pts);
    return j;
  }
  CombinedEval<S> e6 = eval_on_grid<S>("EIN6", pts, {});
  put(j, "ein6_residual", e6.max_resid);
  if (!passes(md, e6.max_resid))
    throw InvariantViolation("Einstein condition holds but its gradient identity fails: " +
                             j.dump());
  // gate for the first constant: 3 theta + Theta = 0
  S t11(0);
  for (const auto& P : pts)
    for (int jj = 0; jj < n; ++jj) {
      S a = scalar_traits<S>::abs(frac<S>(3) * P.theta(jj) + P.Theta(jj));
      if (a > t11) t11 = a;
    }
  put(j, "t11_residual", t11);
  bool pair_sym = passes(md, eval_on_grid<S>("PAIR_SYM", pts, {}).max_resid);
  j["pair_symmetry"] = pair_sym;
  if (n == 2) {
    j["constants"] = "not applicable in dimension 2";
    return j;
  }
  if (passes(md, t11)) {
    CombinedEval<S> e9 = eval_on_grid<S>("EIN9", pts, {});
    ordered_json c;
    put(c, "C", e9.c_value);
    put(c, "spread", e9.c_spread);
    put(c, "lc_form_gap", e9.max_resid);  // C against the Levi-Civita expression
    j["ein9"] = std::move(c);
    if (!passes(md, e9.c_spread))
      throw InvariantViolation("scalar-plus-torsion-norm constant fails to be constant: " +
                               j.dump());
  }
  if (pair_sym) {
    CombinedEval<S> e8 = eval_on_grid<S>("EIN8", pts, {});
    ordered_json c;
    put(c, "B", e8.c_value);
    put(c, "spread", e8.c_spread);
    j["ein8"] = std::move(c);
    if (!passes(md, e8.c_spread))
      throw InvariantViolation("pair-symmetric scalar constant fails to be constant: " +
                               j.dump());
  }
  if (n == 6) {
    S sp = grid_spread<S>(pts, [](const PointData<S>& P) { return P.Scalg; });
    put(j, "scalg_spread", sp);
    j["six_dim_constant_scalg"] = passes(md, sp);
  }
  return j;
}

// ---- gradient soliton system ------------------------------------------------

template <class S>
ordered_json soliton_impl(const std::vector<PointData<S>>& pts, Mode md) {
  ordered_json j;
  CombinedEval<S> g1 = eval_on_grid<S>("GEIN1", pts, {});
  CombinedEval<S> g2 = eval_on_grid<S>("GEIN2", pts, {});
  CombinedEval<S> g3 = eval_on_grid<S>("GEIN3", pts, {});
  bool verdict = passes(md, g1.max_resid);
  j["verdict"] = verdict;
  put(j, "gein1_residual", g1.max_resid);
  put(j, "gein2_residual", g2.max_resid);
  put(j, "gein3_residual", g3.max_resid);
  if (!verdict) j["witness"] = witness_json<S>("GEIN1", pts);

  // the four equivalent conditions of the soliton theorem
  S dnt2 = grid_max_abs<S>(pts, [](const PointData<S>& P) -> const Tensor<S>& { return P.dnormT2; });
  S fspread = grid_spread<S>(pts, [](const PointData<S>& P) { return P.f; });
  S dfmax = grid_max_abs<S>(pts, [](const PointData<S>& P) -> const Tensor<S>& { return P.df; });
  S ricmax = grid_max_abs<S>(pts, [](const PointData<S>& P) -> const Tensor<S>& { return P.Ric; });
  S sgspread = grid_spread<S>(pts, [](const PointData<S>& P) { return P.Scalg; });
  bool ca = passes(md, dnt2);
  bool cb = passes(md, fspread) && passes(md, dfmax);
  bool cc = passes(md, ricmax);
  bool cd = passes(md, sgspread);
  ordered_json m;
  put(m, "dnormT2_max", dnt2);
  put(m, "f_spread", fspread);
  put(m, "df_max", dfmax);
  put(m, "ric_max", ricmax);
  put(m, "scalg_spread", sgspread);
  ordered_json conds;
  conds["a_torsion_norm_constant"] = ca;
  conds["b_f_constant"] = cb;
  conds["c_ric_zero"] = cc;
  conds["d_scalg_constant"] = cd;
  m["conditions"] = std::move(conds);
  bool agree = (ca == cb && cb == cc && cc == cd);
  m["agree"] = agree;
  j["equivalent_conditions"] = std::move(m);

  if (verdict) {
    CombinedEval<S> g7a = eval_on_grid<S>("GEIN7A", pts, {});
    CombinedEval<S> g7b = eval_on_grid<S>("GEIN7B", pts, {});
    CombinedEval<S> g8 = eval_on_grid<S>("GEIN8_EQ", pts, {});
    CombinedEval<S> fb = eval_on_grid<S>("FFINN", pts, {});
    put(j, "gein7a_residual", g7a.max_resid);
    put(j, "gein7b_residual", g7b.max_resid);
    put(j, "gein8_residual", g8.max_resid);
    put(j, "ffinn_min", fb.bound_min);
    if (!passes(md, g2.max_resid) || !passes(md, g3.max_resid) ||
        !passes(md, g7a.max_resid) || !passes(md, g7b.max_resid) ||
        !passes(md, g8.max_resid) || !bound_ok(fb.bound_min, md.tol))
      throw InvariantViolation("soliton system holds but a derived identity fails: " +
                               j.dump());
    if (!agree)
      throw InvariantViolation(
          "soliton system holds but the four equivalent conditions disagree: " + j.dump());
    if (ca || cb || cc || cd) {
      S dt = grid_max_abs<S>(pts, [](const PointData<S>& P) -> const Tensor<S>& { return P.dT; });
      S del = grid_max_abs<S>(pts, [](const PointData<S>& P) -> const Tensor<S>& { return P.deltaT; });
      ordered_json h;
      put(h, "dT_max", dt);
      put(h, "deltaT_max", del);
      j["harmonic_torsion"] = std::move(h);
      if (!passes(md, dt) || !passes(md, del))
        throw InvariantViolation("soliton conditions hold but the torsion is not harmonic: " +
                                 j.dump());
    }
  }
  return j;
}

// dispatch helper: build the right grid and call impl
template <class Fn>
ordered_json dispatch(const Geometry& geo, const ClassifyOptions& o, Fn&& fn) {
  bool exact = o.exact;
  if (exact && !geo.is_lie())
    throw CapabilityError(
        "exact mode requires the algebraic backend; chart geometries are finite-difference "
        "and float-only");
  Mode md{exact, o.tol};
  if (exact) return fn(build_grid_exact(geo), md);
  return fn(build_grid_float(geo, o.h_override, o.threads), md);
}

}  // namespace

ordered_json classify_first_bianchi(const Geometry& geo, const ClassifyOptions& o) {
  return dispatch(geo, o, [&](const auto& pts, Mode md) { return fb_impl(pts, md); });
}
ordered_json classify_pair_symmetry(const Geometry& geo, const ClassifyOptions& o) {
  return dispatch(geo, o, [&](const auto& pts, Mode md) { return pair_impl(pts, md); });
}
ordered_json classify_zz_flat(const Geometry& geo, const ClassifyOptions& o) {
  return dispatch(geo, o, [&](const auto& pts, Mode md) { return zz_impl(pts, md); });
}
ordered_json classify_nabla_einstein(const Geometry& geo, const ClassifyOptions& o) {
  return dispatch(geo, o, [&](const auto& pts, Mode md) { return einstein_impl(pts, md); });
}
ordered_json classify_soliton(const Geometry& geo, const ClassifyOptions& o) {
  if (!geo.has_f())
    throw CapabilityError("the soliton classifier needs the potential f, which this geometry "
                          "does not supply");
  return dispatch(geo, o, [&](const auto& pts, Mode md) { return soliton_impl(pts, md); });
}

ordered_json classify_geometry(const Geometry& geo, const ClassifyOptions& o) {
  return dispatch(geo, o, [&](const auto& pts, Mode md) {
    ordered_json j;
    j["geometry"] = geo.name;
    j["backend"] = geo.is_lie() ? "lie" : "chart";
    j["dim"] = geo.dim();
    j["mode"] = md.exact ? "exact" : "float";
    j["tolerance"] = md.tol;
    ordered_json c;
    c["first_bianchi"] = fb_impl(pts, md);
    c["pair_symmetry"] = pair_impl(pts, md);
    c["zz_flat"] = zz_impl(pts, md);
    c["nabla_einstein"] = einstein_impl(pts, md);
    if (geo.has_f())
      c["soliton"] = soliton_impl(pts, md);
    else
      c["soliton"] = ordered_json{{"skipped", "geometry has no potential f"}};
    j["classifiers"] = std::move(c);
    return j;
  });
}

}  // namespace skewtor
