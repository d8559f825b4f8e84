#pragma once

#include <string>
#include <vector>

#include "qaforge/bundle.h"
#include "qaforge/gates.h"

namespace qaforge {

std::string html_escape(const std::string& text);

// Self-contained static dashboard: per-version metric tables, finding
// rollups, gate verdicts, trend directions and the raw JSON artifacts.
std::string render_dashboard(const std::string& version_label,
                             const std::vector<AnalysisBundle>& version_history,
                             const std::vector<Finding>& findings, const GateResult* gate_result,
                             const std::vector<TrendSeries>& trends,
                             const std::vector<std::pair<std::string, std::string>>& artifacts);

}  // namespace qaforge
