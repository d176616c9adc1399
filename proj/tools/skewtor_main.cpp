// Command-line front end: check (identity suites), classify (theorem-backed
// verdicts), fuzz (randomized exact verification), catalog (list/export).
// Exit codes: 0 ok, 1 universal failure / invariant violation / counterexample,
// 2 malformed input, 3 capability mismatch.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skewtor/catalog.hpp"
#include "skewtor/classify.hpp"
#include "skewtor/engine.hpp"
#include "skewtor/fuzz.hpp"
#include "skewtor/report.hpp"

using namespace skewtor;
using nlohmann::ordered_json;

namespace {

int threads_from_env() {
  const char* v = std::getenv("SKEWTOR_THREADS");
  if (!v) return 1;
  int n = std::atoi(v);
  return n > 1 ? n : 1;
}

Rat require_rational(const std::string& text, const char* what) {
  auto r = parse_rational(text);
  if (!r) throw ParseError(std::string("bad rational for ") + what + ": '" + text + "'");
  return *r;
}

struct Select {
  std::string catalog;  // name or "all"
  std::string input;    // file path
  std::string lambda = "1", tparam = "1";
};

std::vector<Geometry> resolve(const Select& s) {
  if (!s.catalog.empty() && !s.input.empty())
    throw ParseError("give either --catalog or --input, not both");
  if (s.catalog.empty() && s.input.empty())
    throw ParseError("one of --catalog or --input is required");
  std::vector<Geometry> out;
  if (!s.input.empty()) {
    out.push_back(load_geometry_file(s.input));
    return out;
  }
  Rat lam = require_rational(s.lambda, "--lambda");
  Rat t = require_rational(s.tparam, "--t");
  if (s.catalog == "all") {
    for (const auto& e : load_catalog()) out.push_back(e.build(lam, t));
    return out;
  }
  const CatalogEntry* e = find_catalog(s.catalog);
  if (!e) throw ParseError("unknown catalog entry '" + s.catalog + "' (try: catalog list)");
  out.push_back(e->build(lam, t));
  return out;
}

std::vector<std::vector<double>> parse_grid_override(const std::string& text, int n) {
  std::vector<std::vector<double>> pts;
  std::stringstream ss(text);
  std::string pt;
  while (std::getline(ss, pt, ';')) {
    std::vector<double> x;
    std::stringstream ps(pt);
    std::string c;
    while (std::getline(ps, c, ',')) {
      try {
        x.push_back(std::stod(c));
      } catch (...) {
        throw ParseError("bad coordinate '" + c + "' in --grid");
      }
    }
    if (static_cast<int>(x.size()) != n)
      throw ParseError("--grid point has " + std::to_string(x.size()) + " coordinates, geometry needs " +
                       std::to_string(n));
    pts.push_back(std::move(x));
  }
  if (pts.empty()) throw ParseError("--grid is empty");
  return pts;
}

std::vector<std::string> parse_identity_list(const std::string& text) {
  std::vector<std::string> ids;
  if (text == "all") return ids;
  std::stringstream ss(text);
  std::string id;
  while (std::getline(ss, id, ',')) {
    if (id.empty()) continue;
    if (!is_identity_id(id)) throw ParseError("unknown identity id '" + id + "'");
    ids.push_back(id);
  }
  return ids;
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  auto add = [&](int d) {
    if (d < 3 || d > 8) throw ParseError("--dims entries must lie in 3..8");
    dims.push_back(d);
  };
  auto range = text.find("..");
  if (range != std::string::npos) {
    try {
      int lo = std::stoi(text.substr(0, range));
      int hi = std::stoi(text.substr(range + 2));
      if (hi < lo) throw ParseError("--dims range is reversed");
      for (int d = lo; d <= hi; ++d) add(d);
    } catch (const ParseError&) {
      throw;
    } catch (...) {
      throw ParseError("bad --dims range '" + text + "'");
    }
    return dims;
  }
  std::stringstream ss(text);
  std::string d;
  while (std::getline(ss, d, ',')) {
    try {
      add(std::stoi(d));
    } catch (const ParseError&) {
      throw;
    } catch (...) {
      throw ParseError("bad --dims entry '" + d + "'");
    }
  }
  if (dims.empty()) throw ParseError("--dims is empty");
  return dims;
}

bool exact_for(const std::string& mode, const Geometry& g) {
  if (mode == "exact") return true;
  if (mode == "float") return false;
  return g.is_lie();  // auto
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ParseError("cannot open output file '" + out_path + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification engine for metric connections with skew-symmetric torsion"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // frees -h/--h for the step size

  Select sel;
  std::string mode = "auto", identities = "all", format = "json", out_path, grid_override;
  double tol = 1e-6, h_override = 0;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* c, bool with_identities) {
    c->set_help_flag("--help", "print help");
    c->add_option("--catalog", sel.catalog, "catalog entry name, or 'all'");
    c->add_option("--input", sel.input, "geometry JSON file");
    c->add_option("--mode", mode, "exact|float|auto (auto: exact on lie, float on chart)")
        ->check(CLI::IsMember({"exact", "float", "auto"}));
    c->add_option("--tol", tol, "float-mode tolerance (default 1e-6)");
    c->add_option("--h", h_override, "chart step override");
    c->add_option("--grid", grid_override, "chart grid override: 'x1,..,xn;x1,..,xn'");
    c->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    c->add_option("--out", out_path, "write the report here instead of stdout");
    c->add_option("--lambda", sel.lambda, "scale parameter for catalog entries (rational)");
    c->add_option("--t", sel.tparam, "torsion family parameter (rational)");
    c->add_option("--seed", seed, "accepted for config parity; check/classify ignore it");
    if (with_identities)
      c->add_option("--identities", identities, "'all' or a comma-separated id list");
  };

  CLI::App* c_check = app.add_subcommand("check", "evaluate identities, report residuals");
  add_common(c_check, true);
  CLI::App* c_classify = app.add_subcommand("classify", "run the theorem classifiers");
  add_common(c_classify, false);

  CLI::App* c_fuzz = app.add_subcommand("fuzz", "randomized exact verification");
  c_fuzz->set_help_flag("--help", "print help");
  std::string dims_text = "3,5,6", mutate;
  int count = 100;
  c_fuzz->add_option("--seed", seed, "RNG seed");
  c_fuzz->add_option("--count", count, "number of instances");
  c_fuzz->add_option("--dims", dims_text, "dimensions: '3,5,6' or '3..7'");
  c_fuzz->add_option("--mutate", mutate, "fault injection (gen-sigma-flip)")
      ->check(CLI::IsMember({"gen-sigma-flip"}));
  c_fuzz->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
  c_fuzz->add_option("--out", out_path, "write the report here instead of stdout");

  CLI::App* c_catalog = app.add_subcommand("catalog", "list or export built-in geometries");
  c_catalog->set_help_flag("--help", "print help");
  CLI::App* c_list = c_catalog->add_subcommand("list", "list entries");
  c_list->set_help_flag("--help", "print help");
  std::string list_format = "text";
  c_list->add_option("--format", list_format, "text|json")
      ->check(CLI::IsMember({"json", "text"}));
  c_list->add_option("--out", out_path, "write here instead of stdout");
  CLI::App* c_export = c_catalog->add_subcommand("export", "print one entry as geometry JSON");
  c_export->set_help_flag("--help", "print help");
  c_export->add_option("--catalog", sel.catalog, "entry name")->required();
  c_export->add_option("--lambda", sel.lambda, "scale parameter (rational)");
  c_export->add_option("--t", sel.tparam, "torsion family parameter (rational)");
  c_export->add_option("--out", out_path, "write here instead of stdout");
  c_catalog->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  const int threads = threads_from_env();
  try {
    if (app.got_subcommand(c_check)) {
      std::vector<Geometry> geos = resolve(sel);
      std::vector<std::string> ids = parse_identity_list(identities);
      bool any_universal_failure = false;
      std::vector<ordered_json> reports;
      std::string text_out;
      for (Geometry& g : geos) {
        if (!grid_override.empty()) {
          if (g.is_lie()) throw ParseError("--grid applies to chart geometries only");
          ChartGeometry C = g.chart();
          C.grid = parse_grid_override(grid_override, C.n);
          std::string err = validate_chart(C);
          if (!err.empty()) throw ParseError("--grid override rejected: " + err);
          g.data = std::move(C);
        }
        RunOptions opt;
        opt.exact = exact_for(mode, g);
        opt.tol = tol;
        opt.h_override = h_override;
        opt.identities = ids;
        opt.explicit_selection = !ids.empty();
        opt.threads = threads;
        RunResult res = run_identities(g, opt);
        any_universal_failure = any_universal_failure || res.universal_failure;
        if (format == "json")
          reports.push_back(run_report_json(g, opt, res));
        else
          text_out += run_report_text(g, opt, res) + "\n";
      }
      if (format == "json") {
        ordered_json j;
        if (reports.size() == 1) {
          j = std::move(reports[0]);
        } else {
          j["runs"] = ordered_json::array();
          for (auto& r : reports) j["runs"].push_back(std::move(r));
        }
        emit(j.dump(2), out_path);
      } else {
        emit(text_out, out_path);
      }
      return any_universal_failure ? 1 : 0;
    }

    if (app.got_subcommand(c_classify)) {
      std::vector<Geometry> geos = resolve(sel);
      std::vector<ordered_json> results;
      std::string text_out;
      for (const Geometry& g : geos) {
        ClassifyOptions co;
        co.exact = exact_for(mode, g);
        co.tol = tol;
        co.h_override = h_override;
        co.threads = threads;
        ordered_json j = classify_geometry(g, co);
        if (format == "text") {
          text_out += g.name + " (" + (g.is_lie() ? "lie" : "chart") + ", dim " +
                      std::to_string(g.dim()) + ")\n";
          for (auto& [key, val] : j["classifiers"].items()) {
            std::string v = val.contains("verdict")
                                ? (val["verdict"].get<bool>() ? "true" : "false")
                                : "skipped";
            char line[96];
            std::snprintf(line, sizeof line, "  %-16s %s", key.c_str(), v.c_str());
            text_out += std::string(line) + "\n";
          }
          text_out += "\n";
        }
        results.push_back(std::move(j));
      }
      if (format == "json") {
        ordered_json j;
        if (results.size() == 1) {
          j = std::move(results[0]);
        } else {
          j["classifications"] = ordered_json::array();
          for (auto& r : results) j["classifications"].push_back(std::move(r));
        }
        emit(j.dump(2), out_path);
      } else {
        emit(text_out, out_path);
      }
      return 0;
    }

    if (app.got_subcommand(c_fuzz)) {
      FuzzOptions fo;
      fo.seed = seed;
      fo.count = count;
      fo.dims = parse_dims(dims_text);
      fo.mutate_gen_sigma_flip = (mutate == "gen-sigma-flip");
      FuzzResult r = run_fuzz(fo);
      ordered_json j;
      j["seed"] = fo.seed;
      j["count"] = fo.count;
      j["dims"] = fo.dims;
      j["mutation"] = mutate.empty() ? ordered_json(nullptr) : ordered_json(mutate);
      j["instances"] = r.instances;
      j["ok"] = r.ok;
      j["pair_symmetry_true"] = r.pair_true;
      j["pair_symmetry_false"] = r.pair_false;
      if (!r.ok) {
        j["failed_identity"] = r.failed_identity;
        j["failed_index"] = r.failed_index;
        j["counterexample"] = r.counterexample;
      }
      if (format == "json") {
        emit(j.dump(2), out_path);
      } else {
        std::ostringstream t;
        t << "fuzz seed " << fo.seed << ", " << r.instances << " instances: "
          << (r.ok ? "all universal identities exact" : "FAILED " + r.failed_identity) << "\n";
        emit(t.str(), out_path);
      }
      return r.ok ? 0 : 1;
    }

    if (app.got_subcommand(c_catalog)) {
      if (c_catalog->got_subcommand(c_list)) {
        if (list_format == "json") {
          ordered_json arr = ordered_json::array();
          for (const auto& e : load_catalog()) {
            ordered_json x;
            x["name"] = e.name;
            x["backend"] = e.is_chart ? "chart" : "lie";
            x["dim"] = e.build(Rat(1), Rat(1)).dim();
            x["accepts_lambda"] = e.accepts_lambda;
            x["accepts_t"] = e.accepts_t;
            x["summary"] = e.summary;
            x["expected_verdicts"] = e.expected;
            arr.push_back(std::move(x));
          }
          emit(arr.dump(2), out_path);
        } else {
          std::ostringstream t;
          for (const auto& e : load_catalog()) {
            char line[200];
            std::snprintf(line, sizeof line, "%-24s %-5s dim %d  %s", e.name.c_str(),
                          e.is_chart ? "chart" : "lie", e.build(Rat(1), Rat(1)).dim(),
                          e.summary.c_str());
            t << line << "\n";
          }
          emit(t.str(), out_path);
        }
        return 0;
      }
      // export
      const CatalogEntry* e = find_catalog(sel.catalog);
      if (!e) throw ParseError("unknown catalog entry '" + sel.catalog + "'");
      Geometry g = e->build(require_rational(sel.lambda, "--lambda"),
                            require_rational(sel.tparam, "--t"));
      emit(geometry_to_json(g).dump(2), out_path);
      return 0;
    }
  } catch (const ParseError& ex) {
    std::cerr << "parse error: " << ex.what() << "\n";
    return 2;
  } catch (const CapabilityError& ex) {
    std::cerr << "capability error: " << ex.what() << "\n";
    return 3;
  } catch (const InvariantViolation& ex) {
    std::cerr << "invariant violation: " << ex.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "parse error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
