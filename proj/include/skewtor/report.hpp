#pragma once
// Report assembly: a finished identity run serialized as JSON (stable field
// order, registry-ordered identity list) or as an aligned text table.

#include <string>

#include "json.hpp"
#include "skewtor/engine.hpp"

namespace skewtor {

nlohmann::ordered_json run_report_json(const Geometry& geo, const RunOptions& opt,
                                       const RunResult& res);
std::string run_report_text(const Geometry& geo, const RunOptions& opt, const RunResult& res);

}  // namespace skewtor
