#include "qaforge/html_report.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "dashboard_template.h"

namespace qaforge {

std::string html_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&#39;"; break;
            default: out += c; break;
        }
    }
    return out;
}

namespace {

void replace_token(std::string& text, const std::string& token, const std::string& value) {
    size_t at = text.find(token);
    if (at != std::string::npos) text.replace(at, token.size(), value);
}

std::string format_number(double value) {
    std::ostringstream os;
    if (value == static_cast<long long>(value)) {
        os << static_cast<long long>(value);
    } else {
        os.precision(1);
        os << std::fixed << value;
    }
    return os.str();
}

std::string metric_or(const AnalysisBundle& b, const std::string& key) {
    auto it = b.metrics.find(key);
    return it != b.metrics.end() ? format_number(it->second) : "–";
}

std::string clone_rows(const std::vector<AnalysisBundle>& history, const std::string& prefix) {
    std::ostringstream os;
    for (const auto& b : history) {
        os << "<tr><td class=\"l\">" << html_escape(b.version_label) << "</td>"
           << "<td>" << metric_or(b, prefix + ".analysed_units") << "</td>"
           << "<td>" << metric_or(b, prefix + ".cloned_units") << "</td>"
           << "<td>" << metric_or(b, prefix + ".blow_up") << "</td>"
           << "<td>" << metric_or(b, prefix + ".unit_coverage") << "</td>"
           << "<td>" << metric_or(b, prefix + ".longest_clone") << "</td>"
           << "<td>" << metric_or(b, prefix + ".max_instances") << "</td></tr>\n";
    }
    if (history.empty()) os << "<tr><td class=\"l muted\" colspan=\"7\">no data</td></tr>\n";
    return os.str();
}

}  // namespace

std::string render_dashboard(const std::string& version_label,
                             const std::vector<AnalysisBundle>& version_history,
                             const std::vector<Finding>& findings, const GateResult* gate_result,
                             const std::vector<TrendSeries>& trends,
                             const std::vector<std::pair<std::string, std::string>>& artifacts) {
    std::string page = generated::kDashboardTemplate;
    replace_token(page, "{{VERSION}}", html_escape(version_label));
    replace_token(page, "{{VERSION}}", html_escape(version_label));

    replace_token(page, "{{CLONE_CONV_ROWS}}", clone_rows(version_history, "clone.conventional"));
    replace_token(page, "{{CLONE_GAPPED_ROWS}}", clone_rows(version_history, "clone.gapped"));

    std::ostringstream arch;
    for (const auto& b : version_history) {
        arch << "<tr><td class=\"l\">" << html_escape(b.version_label) << "</td>"
             << "<td>" << metric_or(b, "arch.violations_component") << "</td>"
             << "<td>" << metric_or(b, "arch.violations_entity") << "</td>"
             << "<td>" << metric_or(b, "arch.cycles") << "</td>"
             << "<td>" << metric_or(b, "arch.violations_layer_circumvention") << "</td>"
             << "<td>" << metric_or(b, "arch.violations_circular_dependency") << "</td>"
             << "<td>" << metric_or(b, "arch.violations_undocumented_common_use") << "</td>"
             << "<td>" << metric_or(b, "arch.violations_other") << "</td></tr>\n";
    }
    if (version_history.empty()) arch << "<tr><td class=\"l muted\" colspan=\"8\">no data</td></tr>\n";
    replace_token(page, "{{ARCH_ROWS}}", arch.str());

    struct Rollup {
        long long count = 0;
        int max_severity = 0;
        std::string cls;
    };
    std::map<std::pair<std::string, std::string>, Rollup> rollups;
    for (const auto& f : findings) {
        if (f.suppressed) continue;
        Rollup& r = rollups[{f.tool, f.rule_id}];
        ++r.count;
        r.max_severity = std::max(r.max_severity, f.severity);
        r.cls = taxonomy_class_name(f.taxonomy_class);
    }
    std::ostringstream frows;
    for (const auto& [key, r] : rollups)
        frows << "<tr><td class=\"l\">" << html_escape(key.first) << "</td><td class=\"l\">"
              << html_escape(key.second) << "</td><td class=\"l\">" << r.cls << "</td><td>" << r.count
              << "</td><td>" << r.max_severity << "</td></tr>\n";
    if (rollups.empty()) frows << "<tr><td class=\"l muted\" colspan=\"5\">no findings</td></tr>\n";
    replace_token(page, "{{FINDINGS_ROWS}}", frows.str());

    std::ostringstream grows;
    if (gate_result) {
        for (const auto& e : gate_result->entries) {
            std::string verdict = e.config_error ? "config error" : (e.passed ? "pass" : "fail");
            grows << "<tr><td class=\"l\">" << html_escape(e.id) << "</td><td class=\"l\">"
                  << html_escape(e.metric) << "</td><td class=\"l\">" << html_escape(e.op) << " "
                  << format_number(e.threshold) << "</td><td>" << format_number(e.value)
                  << "</td><td class=\"l\">" << (e.hard ? "yes" : "no") << "</td><td class=\"l "
                  << (e.passed ? "pass" : "fail") << "\">" << verdict << "</td></tr>\n";
        }
    }
    if (!gate_result || gate_result->entries.empty())
        grows << "<tr><td class=\"l muted\" colspan=\"6\">no gates evaluated</td></tr>\n";
    replace_token(page, "{{GATE_ROWS}}", grows.str());

    std::ostringstream trows;
    for (const auto& s : trends) {
        std::ostringstream values;
        for (size_t i = 0; i < s.points.size(); ++i) {
            if (i > 0) values << " → ";
            values << format_number(s.points[i].second);
        }
        std::string dir = trend_direction_name(s.direction);
        trows << "<tr><td class=\"l\">" << html_escape(s.metric) << "</td><td class=\"l\">" << values.str()
              << "</td><td class=\"l " << dir << "\">" << dir << "</td></tr>\n";
    }
    if (trends.empty()) trows << "<tr><td class=\"l muted\" colspan=\"3\">no history</td></tr>\n";
    replace_token(page, "{{TREND_ROWS}}", trows.str());

    std::ostringstream arts;
    for (const auto& [name, text] : artifacts)
        arts << "<details><summary>" << html_escape(name) << "</summary><pre>" << html_escape(text)
             << "</pre></details>\n";
    replace_token(page, "{{ARTIFACTS}}", arts.str());
    return page;
}

}  // namespace qaforge
