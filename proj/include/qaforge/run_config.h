#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qaforge/clone_detect.h"
#include "qaforge/code_metrics.h"
#include "qaforge/findings.h"

namespace qaforge {

struct FindingsInput {
    std::string path;
    std::string format = "findings.v1";  // or "csv"
    std::string mapping_path;            // required for csv
};

// Project configuration for one analysed version (runconfig.v1). Relative
// paths resolve against the config file's directory.
struct RunConfig {
    std::string version_label;
    std::vector<std::string> corpus_roots;
    std::string profile = "cstyle";  // name or path
    std::vector<std::string> exclusions;
    Normalization normalization = Normalization::Identifiers;

    CloneParams clone_params;
    std::string clone_suppressions;  // optional

    std::string architecture_model;  // optional; required by the arch command

    std::vector<FindingsInput> findings_inputs;
    std::string taxonomy_config;      // optional
    std::optional<RuleSelector> selector;
    std::string finding_suppressions;  // optional

    MetricThresholds thresholds;

    std::string gate_spec;       // required by the gate command
    std::string polarity_table;  // optional
    std::optional<std::vector<std::string>> change_set;
};

RunConfig load_run_config(const std::string& path);
RunConfig run_config_from_json_text(const std::string& text, const std::string& base_dir);

}  // namespace qaforge
