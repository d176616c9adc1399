#include "skewtor/geometry.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace skewtor {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

int get_index(const json& e, const char* key, int n) {
  if (!e.contains(key) || !e[key].is_number_integer())
    bad(std::string("torsion/bracket entry needs integer field '") + key + "'");
  int v = e[key].get<int>();
  if (v < 1 || v > n) bad(std::string("index '") + key + "' out of range 1.." + std::to_string(n));
  return v - 1;  // to 0-based
}

Rat get_rational(const json& e, const char* key) {
  if (!e.contains(key)) bad(std::string("entry needs field '") + key + "'");
  const json& v = e[key];
  auto take = [&](const std::string& text) -> Rat {
    std::optional<Rat> r = parse_rational(text);
    if (!r) bad(std::string("bad rational value '") + text + "'");
    return *r;
  };
  if (v.is_string()) return take(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long>());
  if (v.is_number_float()) return take(v.dump());  // decimal literal, exact
  bad(std::string("field '") + key + "' must be a rational string or number");
}

Expr get_expr(const json& v, const std::string& where) {
  if (!v.is_string()) bad(where + " must be an expression string");
  try {
    return Expr::parse(v.get<std::string>());
  } catch (const ExprError& ex) {
    bad(where + ": " + ex.what());
  }
}

Geometry lie_from_json(const json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_integer()) bad("lie geometry needs integer 'dim'");
  int n = j["dim"].get<int>();
  if (n < kMinDim || n > kMaxDim)
    bad("dim " + std::to_string(n) + " out of range " + std::to_string(kMinDim) + ".." +
        std::to_string(kMaxDim));
  LieInstance<Rat> L;
  L.n = n;
  L.c = Tensor<Rat>(n, 3);
  L.T = Tensor<Rat>(n, 3);
  std::set<std::array<int, 3>> seen_c, seen_t;
  if (j.contains("c")) {
    if (!j["c"].is_array()) bad("'c' must be an array of {i,j,k,v} entries");
    for (const auto& e : j["c"]) {
      int i = get_index(e, "i", n), jj = get_index(e, "j", n), k = get_index(e, "k", n);
      if (i >= jj) bad("bracket entries need i < j (one representative per orbit)");
      if (!seen_c.insert({i, jj, k}).second) bad("duplicate bracket entry");
      Rat v = get_rational(e, "v");
      L.c(i, jj, k) = v;
      L.c(jj, i, k) = Rat(-v);
    }
  }
  if (j.contains("T")) {
    if (!j["T"].is_array()) bad("'T' must be an array of {i,j,k,v} entries");
    for (const auto& e : j["T"]) {
      int i = get_index(e, "i", n), jj = get_index(e, "j", n), k = get_index(e, "k", n);
      if (!(i < jj && jj < k)) bad("torsion entries need i < j < k (one representative per orbit)");
      if (!seen_t.insert({i, jj, k}).second) bad("duplicate torsion entry");
      set_alt_component(L.T, {i, jj, k}, get_rational(e, "v"));
    }
  }
  if (j.contains("f")) {
    L.has_f = true;
    L.f = get_rational(j, "f");
  }
  std::string err = validate_lie(L);
  if (!err.empty()) bad(err);
  Geometry out;
  out.data = std::move(L);
  return out;
}

Geometry chart_from_json(const json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_integer()) bad("chart geometry needs integer 'dim'");
  ChartGeometry C;
  C.n = j["dim"].get<int>();
  if (!j.contains("box") || !j["box"].is_array()) bad("chart geometry needs 'box'");
  for (const auto& iv : j["box"]) {
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
      bad("each box entry must be [lo, hi]");
    C.box.push_back({iv[0].get<double>(), iv[1].get<double>()});
  }
  if (j.contains("h")) {
    if (!j["h"].is_number()) bad("'h' must be a number");
    C.h = j["h"].get<double>();
  }
  if (!j.contains("grid") || !j["grid"].is_array() || j["grid"].empty())
    bad("chart geometry needs a non-empty 'grid'");
  for (const auto& p : j["grid"]) {
    if (!p.is_array()) bad("grid points must be coordinate arrays");
    std::vector<double> x;
    for (const auto& c : p) {
      if (!c.is_number()) bad("grid coordinates must be numbers");
      x.push_back(c.get<double>());
    }
    C.grid.push_back(std::move(x));
  }
  if (!j.contains("g") || !j["g"].is_array() || (int)j["g"].size() != C.n)
    bad("chart geometry needs 'g' as a dim x dim array of expression strings");
  for (int r = 0; r < C.n; ++r) {
    const auto& row = j["g"][r];
    if (!row.is_array() || (int)row.size() != C.n) bad("metric rows must have dim entries");
    for (int cc = 0; cc < C.n; ++cc)
      C.g.push_back(get_expr(row[cc], "g[" + std::to_string(r + 1) + "][" +
                                          std::to_string(cc + 1) + "]"));
  }
  if (j.contains("T")) {
    if (!j["T"].is_array()) bad("'T' must be an array of {i,j,k,expr} entries");
    std::set<std::array<int, 3>> seen;
    for (const auto& e : j["T"]) {
      int i = get_index(e, "i", C.n), jj = get_index(e, "j", C.n), k = get_index(e, "k", C.n);
      if (!(i < jj && jj < k)) bad("torsion entries need i < j < k (one representative per orbit)");
      if (!seen.insert({i, jj, k}).second) bad("duplicate torsion entry");
      if (!e.contains("expr")) bad("torsion entry needs 'expr'");
      C.T.push_back({i, jj, k, get_expr(e["expr"], "torsion expression")});
    }
  }
  if (j.contains("f")) {
    C.has_f = true;
    C.f = get_expr(j["f"], "'f'");
  }
  std::string err = validate_chart(C);
  if (!err.empty()) bad(err);
  Geometry out;
  out.data = std::move(C);
  return out;
}

}  // namespace

Geometry geometry_from_json(const json& j) {
  if (!j.is_object()) bad("geometry must be a JSON object");
  if (!j.contains("backend") || !j["backend"].is_string())
    bad("geometry needs a 'backend' field (\"lie\" or \"chart\")");
  std::string backend = j["backend"].get<std::string>();
  Geometry geo;
  if (backend == "lie")
    geo = lie_from_json(j);
  else if (backend == "chart")
    geo = chart_from_json(j);
  else
    bad("unknown backend '" + backend + "'");
  if (j.contains("name") && j["name"].is_string()) geo.name = j["name"].get<std::string>();
  return geo;
}

Geometry parse_geometry(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("geometry file is not valid JSON");
  return geometry_from_json(j);
}

Geometry load_geometry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open geometry file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_geometry(ss.str());
}

nlohmann::ordered_json geometry_to_json(const Geometry& geo) {
  ordered_json j;
  if (geo.is_lie()) {
    const auto& L = geo.lie();
    j["backend"] = "lie";
    j["name"] = geo.name;
    j["dim"] = L.n;
    ordered_json cs = ordered_json::array();
    for (int i = 0; i < L.n; ++i)
      for (int jj = i + 1; jj < L.n; ++jj)
        for (int k = 0; k < L.n; ++k)
          if (!scalar_traits<Rat>::is_zero(L.c(i, jj, k)))
            cs.push_back({{"i", i + 1}, {"j", jj + 1}, {"k", k + 1},
                          {"v", format_rational(L.c(i, jj, k))}});
    j["c"] = std::move(cs);
    ordered_json ts = ordered_json::array();
    for (int i = 0; i < L.n; ++i)
      for (int jj = i + 1; jj < L.n; ++jj)
        for (int k = jj + 1; k < L.n; ++k)
          if (!scalar_traits<Rat>::is_zero(L.T(i, jj, k)))
            ts.push_back({{"i", i + 1}, {"j", jj + 1}, {"k", k + 1},
                          {"v", format_rational(L.T(i, jj, k))}});
    j["T"] = std::move(ts);
    if (L.has_f) j["f"] = format_rational(L.f);
  } else {
    const auto& C = geo.chart();
    j["backend"] = "chart";
    j["name"] = geo.name;
    j["dim"] = C.n;
    ordered_json box = ordered_json::array();
    for (const auto& iv : C.box) box.push_back({iv[0], iv[1]});
    j["box"] = std::move(box);
    j["h"] = C.h;
    ordered_json grid = ordered_json::array();
    for (const auto& p : C.grid) grid.push_back(p);
    j["grid"] = std::move(grid);
    ordered_json g = ordered_json::array();
    for (int r = 0; r < C.n; ++r) {
      ordered_json row = ordered_json::array();
      for (int cc = 0; cc < C.n; ++cc) row.push_back(C.g[r * C.n + cc].source());
      g.push_back(std::move(row));
    }
    j["g"] = std::move(g);
    ordered_json ts = ordered_json::array();
    for (const auto& e : C.T)
      ts.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"k", e.k + 1}, {"expr", e.expr.source()}});
    j["T"] = std::move(ts);
    if (C.has_f) j["f"] = C.f.source();
  }
  return j;
}

}  // namespace skewtor
