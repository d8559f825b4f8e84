#include "qaforge/gates.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

using nlohmann::json;

namespace qaforge {

GateOp gate_op_from_name(const std::string& name) {
    if (name == "<") return GateOp::Less;
    if (name == "<=") return GateOp::LessEq;
    if (name == "=" || name == "==") return GateOp::Eq;
    if (name == ">=") return GateOp::GreaterEq;
    if (name == ">") return GateOp::Greater;
    throw FatalError("unknown gate operator: " + name);
}

std::string gate_op_name(GateOp op) {
    switch (op) {
        case GateOp::Less: return "<";
        case GateOp::LessEq: return "<=";
        case GateOp::Eq: return "=";
        case GateOp::GreaterEq: return ">=";
        case GateOp::Greater: return ">";
    }
    return "<=";
}

GateSpec GateSpec::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FatalError(std::string("gate spec is not valid JSON: ") + e.what());
    }
    if (j.value("schema", "gates.v1") != "gates.v1") throw FatalError("gate spec has unknown schema");
    GateSpec spec;
    for (const auto& g : j.at("gates")) {
        Gate gate;
        gate.id = g.at("id").get<std::string>();
        gate.metric = g.at("metric").get<std::string>();
        gate.op = gate_op_from_name(g.at("op").get<std::string>());
        gate.threshold = g.at("threshold").get<double>();
        gate.hard = g.value("hard", true);
        if (g.contains("scope")) {
            const auto& s = g.at("scope");
            if (s.contains("paths"))
                for (const auto& p : s.at("paths")) gate.scope.paths.push_back(p.get<std::string>());
            gate.scope.change_set = s.value("change_set", false);
        }
        if (g.contains("filter")) {
            const auto& f = g.at("filter");
            GateFilter filter;
            filter.category = f.value("category", "");
            filter.taxonomy_class = f.value("taxonomy_class", "");
            filter.min_severity = f.value("min_severity", 1);
            filter.min_confidence = f.value("min_confidence", 0.0);
            gate.filter = filter;
        }
        spec.gates.push_back(std::move(gate));
    }
    return spec;
}

GateSpec GateSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FatalError("gate spec not readable: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

namespace {

struct ScopeMatcher {
    bool unrestricted = true;
    std::vector<std::regex> patterns;
    std::set<std::string> change_set;
    bool use_change_set = false;

    bool contains(const std::string& path) const {
        if (unrestricted) return true;
        if (use_change_set) return change_set.count(path) > 0;
        for (const auto& re : patterns)
            if (std::regex_match(path, re)) return true;
        return false;
    }
};

ScopeMatcher make_matcher(const GateScope& scope, const AnalysisBundle& bundle, std::string& error) {
    ScopeMatcher m;
    if (scope.empty()) return m;
    m.unrestricted = false;
    if (scope.change_set) {
        if (!bundle.change_set) {
            error = "gate scoped to the change set but the bundle has none";
            return m;
        }
        m.use_change_set = true;
        m.change_set.insert(bundle.change_set->begin(), bundle.change_set->end());
        return m;
    }
    for (const auto& pattern : scope.paths) {
        try {
            m.patterns.emplace_back(pattern);
        } catch (const std::regex_error& e) {
            error = "gate scope pattern '" + pattern + "' does not compile: " + e.what();
            return m;
        }
    }
    return m;
}

// Recomputes a catalog metric over the files selected by the scope. Sums and
// maxima come straight from the per-file rows; ratios are recomputed from
// the summed counters, never prorated.
std::optional<double> resolve_metric(const std::string& metric, const AnalysisBundle& bundle,
                                     const ScopeMatcher& scope, const std::optional<GateFilter>& filter,
                                     std::string& error) {
    if (filter && metric != "findings.count") {
        error = "filter clauses apply to the findings.count metric only";
        return std::nullopt;
    }

    if (metric == "findings.count" || metric.rfind("findings.", 0) == 0) {
        GateFilter f = filter.value_or(GateFilter{});
        std::optional<TaxonomyClass> want_class;
        if (metric == "findings.bugs") want_class = TaxonomyClass::Bug;
        else if (metric == "findings.smells") want_class = TaxonomyClass::Smell;
        else if (metric == "findings.pedantry") want_class = TaxonomyClass::Pedantry;
        else if (metric != "findings.total" && metric != "findings.count") {
            error = "unknown metric key '" + metric + "'";
            return std::nullopt;
        }
        // Recorded aggregates answer the plain lookups; filters and scopes
        // need the per-finding index.
        if (scope.unrestricted && !filter) {
            auto it = bundle.metrics.find(metric);
            if (it != bundle.metrics.end()) return it->second;
        }
        auto recorded_total = bundle.metrics.find("findings.total");
        if (bundle.findings.empty() && recorded_total != bundle.metrics.end() && recorded_total->second > 0) {
            error = "bundle records findings only as aggregates; '" + metric + "' cannot be filtered or scoped";
            return std::nullopt;
        }
        if (!f.taxonomy_class.empty()) want_class = taxonomy_class_from_name(f.taxonomy_class);
        long long count = 0;
        for (const auto& rec : bundle.findings) {
            if (want_class && rec.taxonomy_class != *want_class) continue;
            if (!f.category.empty() && rec.category != f.category) continue;
            if (rec.severity < f.min_severity) continue;
            if (rec.confidence < f.min_confidence) continue;
            if (!scope.contains(rec.path)) continue;
            ++count;
        }
        return static_cast<double>(count);
    }

    if (metric.rfind("arch.", 0) == 0) {
        if (scope.unrestricted) {
            auto it = bundle.metrics.find(metric);
            if (it == bundle.metrics.end()) {
                error = "unknown metric key '" + metric + "'";
                return std::nullopt;
            }
            return it->second;
        }
        auto in_scope = [&](const ViolationKey& v) {
            for (const auto& p : v.paths)
                if (scope.contains(p)) return true;
            return false;
        };
        if (metric == "arch.violations_entity") {
            long long count = 0;
            for (const auto& v : bundle.violations)
                if (in_scope(v)) ++count;
            return static_cast<double>(count);
        }
        if (metric == "arch.violations_component") {
            std::set<std::pair<std::string, std::string>> pairs;
            for (const auto& v : bundle.violations)
                if (in_scope(v)) pairs.insert({v.from_component, v.to_component});
            return static_cast<double>(pairs.size());
        }
        error = "metric '" + metric + "' cannot be scoped";
        return std::nullopt;
    }

    if (scope.unrestricted) {
        auto it = bundle.metrics.find(metric);
        if (it == bundle.metrics.end()) {
            error = "unknown metric key '" + metric + "'";
            return std::nullopt;
        }
        return it->second;
    }

    if (bundle.files.empty()) {
        error = "metric '" + metric + "' is scoped but the bundle has no per-file rows";
        return std::nullopt;
    }

    bool gapped = metric.rfind("clone.gapped.", 0) == 0;
    long long analysed = 0, cloned = 0, redundant = 0, loc = 0, sloc = 0, comments = 0;
    int longest = 0, instances = 0, max_cc = 0, max_depth = 0;
    for (const auto& r : bundle.files) {
        if (!scope.contains(r.path)) continue;
        analysed += r.analysed_units;
        cloned += gapped ? r.gapped_cloned_units : r.cloned_units;
        redundant += gapped ? r.gapped_redundant_units : r.redundant_units;
        longest = std::max(longest, gapped ? r.gapped_longest_clone : r.longest_clone);
        instances = std::max(instances, gapped ? r.gapped_max_instances : r.max_instances);
        loc += r.loc;
        sloc += r.sloc;
        comments += r.comment_lines;
        max_cc = std::max(max_cc, r.max_cyclomatic_complexity);
        max_depth = std::max(max_depth, r.max_nested_block_depth);
    }

    std::string tail = metric;
    if (metric.rfind("clone.conventional.", 0) == 0) tail = metric.substr(19);
    else if (gapped) tail = metric.substr(13);

    if (metric.rfind("clone.", 0) == 0) {
        if (tail == "analysed_units") return static_cast<double>(analysed);
        if (tail == "cloned_units") return static_cast<double>(cloned);
        if (tail == "unit_coverage") {
            if (analysed == 0) {
                error = "scope matches no analysed units";
                return std::nullopt;
            }
            return 100.0 * static_cast<double>(cloned) / static_cast<double>(analysed);
        }
        if (tail == "blow_up") {
            if (analysed == 0 || analysed == redundant) {
                error = "scope matches no analysed units";
                return std::nullopt;
            }
            return 100.0 * static_cast<double>(analysed) / static_cast<double>(analysed - redundant);
        }
        if (tail == "longest_clone") return static_cast<double>(longest);
        if (tail == "max_instances") return static_cast<double>(instances);
        error = "unknown metric key '" + metric + "'";
        return std::nullopt;
    }
    if (metric == "code.loc") return static_cast<double>(loc);
    if (metric == "code.sloc") return static_cast<double>(sloc);
    if (metric == "code.comment_ratio") {
        if (loc == 0) {
            error = "scope matches no lines";
            return std::nullopt;
        }
        return static_cast<double>(comments) / static_cast<double>(loc);
    }
    if (metric == "code.max_cyclomatic_complexity") return static_cast<double>(max_cc);
    if (metric == "code.max_nested_block_depth") return static_cast<double>(max_depth);
    error = "unknown metric key '" + metric + "'";
    return std::nullopt;
}

bool compare(double value, GateOp op, double threshold) {
    switch (op) {
        case GateOp::Less: return value < threshold;
        case GateOp::LessEq: return value <= threshold;
        case GateOp::Eq: return value == threshold;
        case GateOp::GreaterEq: return value >= threshold;
        case GateOp::Greater: return value > threshold;
    }
    return false;
}

}  // namespace

GateResult evaluate_gates(const GateSpec& spec, const AnalysisBundle& bundle) {
    GateResult result;
    bool any_config_error = false;
    bool any_hard_fail = false;
    for (const auto& gate : spec.gates) {
        GateEntryResult entry;
        entry.id = gate.id;
        entry.metric = gate.metric;
        entry.hard = gate.hard;
        entry.threshold = gate.threshold;
        entry.op = gate_op_name(gate.op);

        std::string error;
        ScopeMatcher scope = make_matcher(gate.scope, bundle, error);
        std::optional<double> value;
        if (error.empty()) value = resolve_metric(gate.metric, bundle, scope, gate.filter, error);
        if (!value) {
            entry.passed = false;
            entry.config_error = true;
            entry.message = error;
            any_config_error = true;
            if (gate.hard) any_hard_fail = true;
        } else {
            entry.value = *value;
            entry.passed = compare(*value, gate.op, gate.threshold);
            if (!entry.passed && gate.hard) any_hard_fail = true;
        }
        result.entries.push_back(std::move(entry));
    }
    result.overall_pass = !any_hard_fail;
    result.exit_code = any_config_error ? 2 : (any_hard_fail ? 1 : 0);
    return result;
}

std::string gate_result_json(const std::string& version_label, const GateResult& result) {
    json entries = json::array();
    for (const auto& e : result.entries)
        entries.push_back({{"id", e.id},
                           {"metric", e.metric},
                           {"op", e.op},
                           {"threshold", e.threshold},
                           {"value", e.value},
                           {"hard", e.hard},
                           {"passed", e.passed},
                           {"config_error", e.config_error},
                           {"message", e.message}});
    json j = {{"schema", "gateresult.v1"},
              {"version_label", version_label},
              {"gates", entries},
              {"overall", result.overall_pass ? "pass" : "fail"},
              {"exit_code", result.exit_code}};
    return j.dump(2) + "\n";
}

std::string trend_direction_name(TrendDirection d) {
    switch (d) {
        case TrendDirection::Improving: return "improving";
        case TrendDirection::Worsening: return "worsening";
        case TrendDirection::Flat: return "flat";
    }
    return "flat";
}

bool PolarityTable::lower_better(const std::string& metric) const {
    auto it = lower_is_better.find(metric);
    return it != lower_is_better.end() ? it->second : default_lower_is_better;
}

PolarityTable PolarityTable::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FatalError(std::string("polarity table is not valid JSON: ") + e.what());
    }
    PolarityTable table;
    if (j.contains("metrics"))
        for (const auto& [key, value] : j.at("metrics").items()) {
            std::string polarity = value.get<std::string>();
            if (polarity != "lower_is_better" && polarity != "higher_is_better")
                throw FatalError("polarity for '" + key + "' must be lower_is_better or higher_is_better");
            table.lower_is_better[key] = polarity == "lower_is_better";
        }
    std::string fallback = j.value("default", "lower_is_better");
    table.default_lower_is_better = fallback == "lower_is_better";
    return table;
}

PolarityTable PolarityTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FatalError("polarity table not readable: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::vector<TrendSeries> compute_trends(const std::vector<AnalysisBundle>& bundles,
                                        const PolarityTable& polarity) {
    if (bundles.size() < 2) throw FatalError("need history: trends require at least two bundles");

    std::vector<std::string> metrics;
    for (const auto& [key, _] : bundles.front().metrics) {
        bool everywhere = true;
        for (const auto& b : bundles)
            if (!b.metrics.count(key)) {
                everywhere = false;
                break;
            }
        if (everywhere) metrics.push_back(key);
    }

    std::vector<TrendSeries> out;
    for (const auto& metric : metrics) {
        TrendSeries s;
        s.metric = metric;
        for (const auto& b : bundles) s.points.emplace_back(b.version_label, b.metrics.at(metric));
        double first = s.points.front().second;
        double last = s.points.back().second;
        if (last == first) {
            s.direction = TrendDirection::Flat;
        } else {
            bool decreased = last < first;
            bool lower_better = polarity.lower_better(metric);
            s.direction = decreased == lower_better ? TrendDirection::Improving : TrendDirection::Worsening;
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::string trend_report_json(const std::vector<TrendSeries>& series) {
    json arr = json::array();
    for (const auto& s : series) {
        json points = json::array();
        for (const auto& [label, value] : s.points) points.push_back({{"version_label", label}, {"value", value}});
        arr.push_back({{"metric", s.metric}, {"points", points}, {"direction", trend_direction_name(s.direction)}});
    }
    json j = {{"schema", "trends.v1"}, {"series", arr}};
    return j.dump(2) + "\n";
}

}  // namespace qaforge
