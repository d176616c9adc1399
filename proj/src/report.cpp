#include "skewtor/report.hpp"

#include <cstdio>
#include <sstream>

namespace skewtor {

namespace {
using nlohmann::ordered_json;

const char* status_of(const IdentityOutcome& o) {
  if (o.skipped) return "skipped";
  return o.pass ? "pass" : "fail";
}
}  // namespace

ordered_json run_report_json(const Geometry& geo, const RunOptions& opt,
                             const RunResult& res) {
  ordered_json j;
  j["geometry"] = geo.name;
  j["backend"] = geo.is_lie() ? "lie" : "chart";
  j["dim"] = geo.dim();
  j["mode"] = res.exact ? "exact" : "float";
  j["tolerance"] = res.tol;
  if (!geo.is_lie()) j["h"] = opt.h_override > 0 ? opt.h_override : geo.chart().h;
  j["grid_points"] = res.grid_points;
  ordered_json ids = ordered_json::array();
  int passed = 0, failed = 0, skipped = 0, marginal = 0;
  for (const IdentityOutcome& o : res.outcomes) {
    ordered_json e;
    e["id"] = o.id;
    e["anchor"] = o.anchor;
    e["universal"] = o.universal;
    e["status"] = status_of(o);
    if (o.skipped) {
      e["skip_reason"] = o.skip_reason;
      ++skipped;
      ids.push_back(std::move(e));
      continue;
    }
    e["marginal"] = o.marginal;
    e["residual"] = o.residual;
    if (!o.residual_exact.empty()) e["residual_exact"] = o.residual_exact;
    e["max_point"] = o.max_point;
    if (o.has_constancy) {
      ordered_json c;
      c["value"] = o.constancy_value;
      if (!o.constancy_value_exact.empty()) c["value_exact"] = o.constancy_value_exact;
      c["spread"] = o.constancy_spread;
      if (!o.constancy_spread_exact.empty()) c["spread_exact"] = o.constancy_spread_exact;
      e["constancy"] = std::move(c);
    }
    if (o.has_bound) {
      e["bound_min"] = o.bound_min;
      if (!o.bound_min_exact.empty()) e["bound_min_exact"] = o.bound_min_exact;
    }
    (o.pass ? passed : failed)++;
    if (o.marginal) ++marginal;
    ids.push_back(std::move(e));
  }
  j["identities"] = std::move(ids);
  ordered_json s;
  s["evaluated"] = passed + failed;
  s["passed"] = passed;
  s["failed"] = failed;
  s["skipped"] = skipped;
  s["marginal"] = marginal;
  s["universal_failure"] = res.universal_failure;
  j["summary"] = std::move(s);
  return j;
}

std::string run_report_text(const Geometry& geo, const RunOptions& opt, const RunResult& res) {
  std::ostringstream out;
  out << geo.name << " (" << (geo.is_lie() ? "lie" : "chart") << ", dim " << geo.dim()
      << "), mode " << (res.exact ? "exact" : "float") << ", tol " << res.tol << ", "
      << res.grid_points << (res.grid_points == 1 ? " point" : " points");
  if (!geo.is_lie())
    out << ", h " << (opt.h_override > 0 ? opt.h_override : geo.chart().h);
  out << "\n";
  int passed = 0, failed = 0, skipped = 0;
  for (const IdentityOutcome& o : res.outcomes) {
    char line[160];
    if (o.skipped) {
      std::snprintf(line, sizeof line, "  %-16s %-8s %s", o.id.c_str(), "skipped",
                    o.skip_reason.c_str());
      ++skipped;
      out << line << "\n";
      continue;
    }
    std::string status = o.pass ? "pass" : "FAIL";
    if (o.marginal) status += "*";
    std::string detail = o.residual_exact.empty()
                             ? [&] {
                                 char b[40];
                                 std::snprintf(b, sizeof b, "%.3e", o.residual);
                                 return std::string(b);
                               }()
                             : o.residual_exact;
    if (o.has_constancy) {
      detail += "  const ";
      detail += o.constancy_value_exact.empty() ? std::to_string(o.constancy_value)
                                                : o.constancy_value_exact;
      detail += " spread ";
      detail += o.constancy_spread_exact.empty() ? [&] {
        char b[40];
        std::snprintf(b, sizeof b, "%.3e", o.constancy_spread);
        return std::string(b);
      }()
                                                 : o.constancy_spread_exact;
    }
    if (o.has_bound) {
      detail += "  min ";
      detail += o.bound_min_exact.empty() ? [&] {
        char b[40];
        std::snprintf(b, sizeof b, "%.3e", o.bound_min);
        return std::string(b);
      }()
                                          : o.bound_min_exact;
    }
    std::snprintf(line, sizeof line, "  %-16s %-8s %s%s", o.id.c_str(), status.c_str(),
                  detail.c_str(), o.universal ? "  [universal]" : "");
    (o.pass ? passed : failed)++;
    out << line << "\n";
  }
  out << "summary: " << (passed + failed) << " evaluated, " << passed << " passed, " << failed
      << " failed, " << skipped << " skipped";
  if (res.universal_failure) out << "  UNIVERSAL FAILURE";
  out << "\n";
  return out.str();
}

}  // namespace skewtor
