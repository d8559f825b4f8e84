#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaforge/clone_detect.h"
#include "qaforge/code_metrics.h"
#include "qaforge/conformance.h"
#include "qaforge/findings.h"

namespace qaforge {

// Per-file slice of the analyses. Scoped gates recompute their metric over
// these rows instead of prorating corpus-wide numbers.
struct FileRow {
    std::string path;
    long long analysed_units = 0;
    long long cloned_units = 0;      // conventional
    long long redundant_units = 0;   // conventional
    long long gapped_cloned_units = 0;
    long long gapped_redundant_units = 0;
    int longest_clone = 0;
    int max_instances = 0;
    int gapped_longest_clone = 0;
    int gapped_max_instances = 0;
    long long loc = 0;
    long long sloc = 0;
    long long comment_lines = 0;
    int max_cyclomatic_complexity = 0;
    int max_nested_block_depth = 0;
};

struct FindingKey {
    TaxonomyClass taxonomy_class = TaxonomyClass::Smell;
    std::string category;
    int severity = 3;
    double confidence = 100.0;
    std::string path;
};

struct ViolationKey {
    std::string from_component;
    std::string to_component;
    DefectClass defect_class = DefectClass::Other;
    std::vector<std::string> paths;  // origin files
};

// Everything one analysed version contributes to gates, trends and the
// dashboard.
struct AnalysisBundle {
    std::string version_label;
    std::map<std::string, double> metrics;  // published metric catalog
    std::vector<FileRow> files;
    std::vector<FindingKey> findings;
    std::vector<ViolationKey> violations;
    std::optional<std::vector<std::string>> change_set;
};

AnalysisBundle make_bundle(const std::string& version_label, const Corpus& corpus,
                           const std::vector<CloneClass>& conventional, const CloneMetrics& conventional_metrics,
                           const std::vector<CloneClass>& gapped, const CloneMetrics& gapped_metrics,
                           const ConformanceResult& conformance,
                           const std::vector<std::vector<std::string>>& cycles,
                           const std::vector<Finding>& findings, const CodeMetrics& code_metrics);

// bundle.v1
std::string bundle_to_json_text(const AnalysisBundle& bundle);
AnalysisBundle bundle_from_json_text(const std::string& text);
AnalysisBundle load_bundle(const std::string& path);

}  // namespace qaforge
