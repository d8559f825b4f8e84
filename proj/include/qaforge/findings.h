#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qaforge/profile.h"

namespace qaforge {

enum class TaxonomyClass {
    Bug,       // obvious defect
    Smell,     // heuristic for a latent defect
    Pedantry,  // style-only issue
};

TaxonomyClass taxonomy_class_from_name(const std::string& name);
std::string taxonomy_class_name(TaxonomyClass c);

struct Finding {
    std::string tool;
    std::string rule_id;
    std::string category;  // tool-reported
    TaxonomyClass taxonomy_class = TaxonomyClass::Smell;
    int severity = 3;      // 1..5
    double confidence = 100.0;  // percent
    std::string path;
    int line = 0;
    std::string message;
    bool suppressed = false;
    bool external = false;  // location not present in the corpus
    nlohmann::json extras;  // unknown input fields, preserved verbatim
};

struct IngestResult {
    std::vector<Finding> findings;
    std::vector<std::string> rejects;  // itemized records that failed mapping
};

// Column mapping and value normalization for CSV reports; also applies to
// findings.v1 for per-tool severity normalization.
struct MappingConfig {
    std::map<std::string, std::string> columns;        // finding field -> CSV column name
    std::map<std::string, std::string> constants;      // finding field -> fixed value
    std::map<std::string, int> severity_map;           // tool severity word -> 1..5
    static MappingConfig from_json_text(const std::string& text);
};

// findings.v1 JSON or CSV (with mapping). Unreadable file is fatal; more
// than half the records failing mapping is a mapping mismatch and fatal.
IngestResult ingest_findings(const std::string& report_file, const std::string& format,
                             const MappingConfig& mapping = {});
IngestResult ingest_findings_text(const std::string& text, const std::string& format,
                                  const MappingConfig& mapping, const std::string& origin);

struct TaxonomyRule {
    std::string tool;      // empty = any
    std::string rule_id;   // empty = any
    std::string category;  // empty = any
    TaxonomyClass cls = TaxonomyClass::Smell;
};

struct TaxonomyConfig {
    std::vector<TaxonomyRule> rules;  // first match wins
    TaxonomyClass default_class = TaxonomyClass::Smell;
    static TaxonomyConfig from_json_text(const std::string& text);
};

TaxonomyClass classify(const Finding& finding, const TaxonomyConfig& config);

struct RuleSelector {
    std::vector<std::string> include_categories;
    std::vector<std::string> include_rules;
    std::vector<std::string> exclude_rules;
    int min_severity = 1;
    double min_confidence = 0.0;
    std::vector<std::string> path_scopes;  // regexes; empty = all paths

    void validate() const;  // include/exclude disjoint
    static RuleSelector from_json(const nlohmann::json& j);
};

// Conjunction of all selector clauses; suppressed findings always drop out;
// input order is preserved.
std::vector<Finding> filter_findings(const std::vector<Finding>& findings, const RuleSelector& selector);

// Suppression entries match by rule, path and a +-2 line window.
struct FindingSuppression {
    std::string rule_id;
    std::string path;
    int line = 0;
};
std::vector<FindingSuppression> load_finding_suppressions(const std::string& path);
void apply_suppressions(std::vector<Finding>& findings, const std::vector<FindingSuppression>& entries);

std::string findings_to_json_text(const std::vector<Finding>& findings);
std::vector<Finding> findings_from_json_text(const std::string& text);

}  // namespace qaforge
