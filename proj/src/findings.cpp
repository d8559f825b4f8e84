#include "qaforge/findings.h"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

using nlohmann::json;

namespace qaforge {

TaxonomyClass taxonomy_class_from_name(const std::string& name) {
    if (name == "bug") return TaxonomyClass::Bug;
    if (name == "smell") return TaxonomyClass::Smell;
    if (name == "pedantry") return TaxonomyClass::Pedantry;
    throw FatalError("unknown taxonomy class: " + name);
}

std::string taxonomy_class_name(TaxonomyClass c) {
    switch (c) {
        case TaxonomyClass::Bug: return "bug";
        case TaxonomyClass::Smell: return "smell";
        case TaxonomyClass::Pedantry: return "pedantry";
    }
    return "smell";
}

MappingConfig MappingConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FatalError(std::string("mapping config is not valid JSON: ") + e.what());
    }
    MappingConfig config;
    if (j.contains("columns"))
        for (const auto& [field, column] : j.at("columns").items()) config.columns[field] = column.get<std::string>();
    if (j.contains("constants"))
        for (const auto& [field, value] : j.at("constants").items())
            config.constants[field] = value.is_string() ? value.get<std::string>() : value.dump();
    if (j.contains("severity_map"))
        for (const auto& [word, sev] : j.at("severity_map").items()) config.severity_map[word] = sev.get<int>();
    return config;
}

namespace {

// RFC-4180-ish: quoted fields, doubled quotes, commas inside quotes.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

int normalize_severity(const json& value, const MappingConfig& mapping) {
    if (value.is_number()) {
        int sev = value.get<int>();
        if (sev < 1 || sev > 5) throw std::runtime_error("severity out of range: " + value.dump());
        return sev;
    }
    std::string word = value.get<std::string>();
    auto it = mapping.severity_map.find(word);
    if (it != mapping.severity_map.end()) {
        if (it->second < 1 || it->second > 5)
            throw std::runtime_error("severity_map target out of range for '" + word + "'");
        return it->second;
    }
    size_t used = 0;
    int sev = std::stoi(word, &used);
    if (used != word.size() || sev < 1 || sev > 5) throw std::runtime_error("severity not mappable: " + word);
    return sev;
}

Finding finding_from_record(const json& record, const MappingConfig& mapping) {
    Finding f;
    static const std::set<std::string> known = {"tool",    "rule_id", "category",  "taxonomy_class",
                                                "severity", "confidence", "path",  "line",
                                                "message", "suppressed", "external"};
    f.tool = record.value("tool", "");
    f.rule_id = record.at("rule_id").get<std::string>();
    f.category = record.value("category", "");
    if (record.contains("taxonomy_class"))
        f.taxonomy_class = taxonomy_class_from_name(record.at("taxonomy_class").get<std::string>());
    if (record.contains("severity")) f.severity = normalize_severity(record.at("severity"), mapping);
    if (record.contains("confidence")) {
        f.confidence = record.at("confidence").get<double>();
        if (f.confidence < 0.0 || f.confidence > 100.0)
            throw std::runtime_error("confidence out of range: " + record.at("confidence").dump());
    }
    f.path = record.value("path", "");
    f.line = record.value("line", 0);
    f.message = record.value("message", "");
    f.suppressed = record.value("suppressed", false);
    f.external = record.value("external", false);
    json extras = json::object();
    for (const auto& [key, value] : record.items())
        if (!known.count(key)) extras[key] = value;
    f.extras = std::move(extras);
    return f;
}

}  // namespace

IngestResult ingest_findings_text(const std::string& text, const std::string& format,
                                  const MappingConfig& mapping, const std::string& origin) {
    IngestResult result;
    size_t record_count = 0;

    if (format == "findings.v1") {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw FatalError(origin + ": not valid JSON: " + e.what());
        }
        if (j.value("schema", "") != "findings.v1") throw FatalError(origin + ": expected schema findings.v1");
        for (const auto& record : j.at("findings")) {
            ++record_count;
            try {
                result.findings.push_back(finding_from_record(record, mapping));
            } catch (const std::exception& e) {
                result.rejects.push_back("record " + std::to_string(record_count) + ": " + e.what());
            }
        }
    } else if (format == "csv") {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line)) return result;
        std::vector<std::string> header = split_csv_line(line);
        std::map<std::string, size_t> column_index;
        for (size_t i = 0; i < header.size(); ++i) column_index[header[i]] = i;

        while (std::getline(in, line)) {
            if (line.empty() || line == "\r") continue;
            ++record_count;
            std::vector<std::string> fields = split_csv_line(line);
            json record = json::object();
            try {
                for (const auto& [field, column] : mapping.columns) {
                    auto it = column_index.find(column);
                    if (it == column_index.end()) throw std::runtime_error("missing column '" + column + "'");
                    if (it->second >= fields.size()) throw std::runtime_error("short row");
                    record[field] = fields[it->second];
                }
                for (const auto& [field, value] : mapping.constants) record[field] = value;
                // Numeric coercions for fields CSV keeps as text.
                if (record.contains("line")) record["line"] = std::stoi(record["line"].get<std::string>());
                if (record.contains("confidence"))
                    record["confidence"] = std::stod(record["confidence"].get<std::string>());
                if (record.contains("suppressed")) record["suppressed"] = record["suppressed"].get<std::string>() == "true";
                if (record.contains("external")) record["external"] = record["external"].get<std::string>() == "true";
                result.findings.push_back(finding_from_record(record, mapping));
            } catch (const std::exception& e) {
                result.rejects.push_back("record " + std::to_string(record_count) + ": " + e.what());
            }
        }
    } else {
        throw FatalError(origin + ": unknown findings format '" + format + "'");
    }

    if (record_count > 0 && result.rejects.size() * 2 > record_count)
        throw FatalError(origin + ": mapping mismatch, " + std::to_string(result.rejects.size()) + " of " +
                         std::to_string(record_count) + " records rejected");
    return result;
}

IngestResult ingest_findings(const std::string& report_file, const std::string& format,
                             const MappingConfig& mapping) {
    std::ifstream in(report_file, std::ios::binary);
    if (!in) throw FatalError("findings report not readable: " + report_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return ingest_findings_text(ss.str(), format, mapping, report_file);
}

TaxonomyConfig TaxonomyConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FatalError(std::string("taxonomy config is not valid JSON: ") + e.what());
    }
    TaxonomyConfig config;
    if (j.contains("rules"))
        for (const auto& r : j.at("rules")) {
            TaxonomyRule rule;
            rule.tool = r.value("tool", "");
            rule.rule_id = r.value("rule_id", "");
            rule.category = r.value("category", "");
            rule.cls = taxonomy_class_from_name(r.at("class").get<std::string>());
            config.rules.push_back(std::move(rule));
        }
    config.default_class = taxonomy_class_from_name(j.value("default", "smell"));
    return config;
}

TaxonomyClass classify(const Finding& finding, const TaxonomyConfig& config) {
    auto matches = [](const std::string& pattern, const std::string& value) {
        return pattern.empty() || pattern == "*" || pattern == value;
    };
    for (const auto& rule : config.rules)
        if (matches(rule.tool, finding.tool) && matches(rule.rule_id, finding.rule_id) &&
            matches(rule.category, finding.category))
            return rule.cls;
    return config.default_class;
}

void RuleSelector::validate() const {
    std::set<std::string> included(include_rules.begin(), include_rules.end());
    for (const auto& r : exclude_rules)
        if (included.count(r))
            throw FatalError("rule selector lists '" + r + "' in both include_rules and exclude_rules");
    if (min_severity < 1 || min_severity > 5) throw FatalError("selector min_severity out of range");
    if (min_confidence < 0.0 || min_confidence > 100.0) throw FatalError("selector min_confidence out of range");
    for (const auto& pattern : path_scopes) {
        try {
            std::regex re(pattern);
        } catch (const std::regex_error& e) {
            throw FatalError("selector path scope '" + pattern + "' does not compile: " + e.what());
        }
    }
}

RuleSelector RuleSelector::from_json(const json& j) {
    RuleSelector s;
    if (j.contains("include_categories"))
        for (const auto& c : j.at("include_categories")) s.include_categories.push_back(c.get<std::string>());
    if (j.contains("include_rules"))
        for (const auto& r : j.at("include_rules")) s.include_rules.push_back(r.get<std::string>());
    if (j.contains("exclude_rules"))
        for (const auto& r : j.at("exclude_rules")) s.exclude_rules.push_back(r.get<std::string>());
    s.min_severity = j.value("min_severity", 1);
    s.min_confidence = j.value("min_confidence", 0.0);
    if (j.contains("path_scopes"))
        for (const auto& p : j.at("path_scopes")) s.path_scopes.push_back(p.get<std::string>());
    s.validate();
    return s;
}

std::vector<Finding> filter_findings(const std::vector<Finding>& findings, const RuleSelector& selector) {
    selector.validate();
    std::vector<std::regex> scopes;
    for (const auto& pattern : selector.path_scopes) scopes.emplace_back(pattern);

    std::vector<Finding> out;
    for (const auto& f : findings) {
        if (f.suppressed) continue;
        if (!selector.include_categories.empty() &&
            std::find(selector.include_categories.begin(), selector.include_categories.end(), f.category) ==
                selector.include_categories.end())
            continue;
        if (!selector.include_rules.empty() &&
            std::find(selector.include_rules.begin(), selector.include_rules.end(), f.rule_id) ==
                selector.include_rules.end())
            continue;
        if (std::find(selector.exclude_rules.begin(), selector.exclude_rules.end(), f.rule_id) !=
            selector.exclude_rules.end())
            continue;
        if (f.severity < selector.min_severity) continue;
        if (f.confidence < selector.min_confidence) continue;
        if (!scopes.empty()) {
            bool in_scope = false;
            for (const auto& re : scopes)
                if (std::regex_match(f.path, re)) {
                    in_scope = true;
                    break;
                }
            if (!in_scope) continue;
        }
        out.push_back(f);
    }
    return out;
}

std::vector<FindingSuppression> load_finding_suppressions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FatalError("finding suppression file not readable: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    json j;
    try {
        j = json::parse(ss.str());
    } catch (const json::exception& e) {
        throw FatalError(path + ": not valid JSON: " + e.what());
    }
    std::vector<FindingSuppression> out;
    for (const auto& e : j.at("entries"))
        out.push_back({e.at("rule_id").get<std::string>(), e.at("path").get<std::string>(), e.at("line").get<int>()});
    return out;
}

void apply_suppressions(std::vector<Finding>& findings, const std::vector<FindingSuppression>& entries) {
    for (auto& f : findings)
        for (const auto& s : entries)
            if (f.rule_id == s.rule_id && f.path == s.path && std::abs(f.line - s.line) <= 2) {
                f.suppressed = true;
                break;
            }
}

std::string findings_to_json_text(const std::vector<Finding>& findings) {
    json arr = json::array();
    for (const auto& f : findings) {
        json record = {{"tool", f.tool},
                       {"rule_id", f.rule_id},
                       {"category", f.category},
                       {"taxonomy_class", taxonomy_class_name(f.taxonomy_class)},
                       {"severity", f.severity},
                       {"confidence", f.confidence},
                       {"path", f.path},
                       {"line", f.line},
                       {"message", f.message},
                       {"suppressed", f.suppressed},
                       {"external", f.external}};
        for (const auto& [key, value] : f.extras.items()) record[key] = value;
        arr.push_back(std::move(record));
    }
    json j = {{"schema", "findings.v1"}, {"findings", arr}};
    return j.dump(2) + "\n";
}

std::vector<Finding> findings_from_json_text(const std::string& text) {
    IngestResult r = ingest_findings_text(text, "findings.v1", {}, "findings.v1 document");
    if (!r.rejects.empty()) throw FatalError("findings.v1 document has invalid records");
    return r.findings;
}

}  // namespace qaforge
