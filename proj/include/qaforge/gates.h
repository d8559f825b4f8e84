#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaforge/bundle.h"

namespace qaforge {

enum class GateOp {
    Less,
    LessEq,
    Eq,
    GreaterEq,
    Greater,
};

GateOp gate_op_from_name(const std::string& name);
std::string gate_op_name(GateOp op);

struct GateScope {
    std::vector<std::string> paths;  // regexes over file paths
    bool change_set = false;         // restrict to the bundle's change set
    bool empty() const { return paths.empty() && !change_set; }
};

struct GateFilter {
    std::string category;        // empty = any
    std::string taxonomy_class;  // empty = any
    int min_severity = 1;
    double min_confidence = 0.0;
};

struct Gate {
    std::string id;
    std::string metric;  // key from the published metric catalog
    GateOp op = GateOp::LessEq;
    double threshold = 0.0;
    bool hard = true;
    GateScope scope;
    std::optional<GateFilter> filter;  // findings.count only
};

struct GateSpec {
    std::vector<Gate> gates;
    static GateSpec from_json_text(const std::string& text);
    static GateSpec load(const std::string& path);
};

struct GateEntryResult {
    std::string id;
    std::string metric;
    bool passed = false;
    bool config_error = false;
    bool hard = true;
    double value = 0.0;  // resolved metric value (0 when config_error)
    double threshold = 0.0;
    std::string op;
    std::string message;
};

struct GateResult {
    std::vector<GateEntryResult> entries;
    bool overall_pass = true;  // fails iff any hard gate fails
    int exit_code = 0;         // 0 pass, 1 hard failure, 2 config error
};

// Pure function of (gates, bundle); gate order never changes the verdict.
GateResult evaluate_gates(const GateSpec& spec, const AnalysisBundle& bundle);

std::string gate_result_json(const std::string& version_label, const GateResult& result);

// ---- trends ------------------------------------------------------------

enum class TrendDirection {
    Improving,
    Worsening,
    Flat,
};

std::string trend_direction_name(TrendDirection d);

// Which way is better, per metric. Unlisted metrics default to lower-is-
// better, the natural polarity for defect-style metrics.
struct PolarityTable {
    std::map<std::string, bool> lower_is_better;
    bool default_lower_is_better = true;

    bool lower_better(const std::string& metric) const;
    static PolarityTable from_json_text(const std::string& text);
    static PolarityTable load(const std::string& path);
};

struct TrendSeries {
    std::string metric;
    std::vector<std::pair<std::string, double>> points;  // (version_label, value)
    TrendDirection direction = TrendDirection::Flat;
};

// One series per metric present in every bundle; bundles must already be in
// version order. Fewer than two bundles is an error ("need history").
std::vector<TrendSeries> compute_trends(const std::vector<AnalysisBundle>& bundles,
                                        const PolarityTable& polarity);

std::string trend_report_json(const std::vector<TrendSeries>& series);

}  // namespace qaforge
