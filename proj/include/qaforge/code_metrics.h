#pragma once

#include <string>
#include <vector>

#include "qaforge/findings.h"
#include "qaforge/source_model.h"

namespace qaforge {

struct FunctionMetrics {
    std::string name;
    std::string path;
    int line = 0;
    int cyclomatic_complexity = 1;  // 1 + branch/loop/case keywords
    int max_nested_block_depth = 0; // blocks inside the body, body itself = 1
    int parameter_count = 0;
    int length_units = 0;
};

struct FileCodeMetrics {
    std::string path;
    int loc = 0;
    int sloc = 0;  // lines carrying non-comment tokens
    double comment_ratio = 0.0;
    std::vector<FunctionMetrics> functions;
};

struct MetricThresholds {
    int max_cyclomatic_complexity = 10;
    int max_nested_block_depth = 5;
};

struct CodeMetrics {
    std::vector<FileCodeMetrics> files;
    // Corpus aggregates.
    long long loc = 0;
    long long sloc = 0;
    double comment_ratio = 0.0;
    int function_count = 0;
    int max_cyclomatic_complexity = 0;
    int max_nested_block_depth = 0;
    // Threshold breaches as native findings (tool "native", category
    // "maintainability", class smell).
    std::vector<Finding> native_findings;
};

CodeMetrics compute_code_metrics(const Corpus& corpus, const MetricThresholds& thresholds = {});

// metrics.v1
std::string code_metrics_json(const std::string& version_label, const CodeMetrics& metrics);

}  // namespace qaforge
