#include "qaforge/code_metrics.h"

#include <algorithm>
#include <map>

#include <json.hpp>

using nlohmann::json;

namespace qaforge {

namespace {

// Identifier directly before the first '(' of the header unit; methods are
// approximated from block nesting, so this is best effort.
std::string function_name(const Corpus& corpus, const Unit& header) {
    std::string previous;
    for (int code : header.token_ids) {
        const std::string& text = corpus.tokens.text_of(code);
        if (text == "(" && !previous.empty()) return previous;
        previous = corpus.tokens.kind_of(code) == TokenKind::Identifier ? text : "";
    }
    return "<anonymous>";
}

int parameter_count(const Corpus& corpus, const Unit& header) {
    int depth = 0;
    int commas = 0;
    bool content = false;
    bool seen_paren = false;
    for (int code : header.token_ids) {
        const std::string& text = corpus.tokens.text_of(code);
        if (text == "(") {
            if (depth == 0 && seen_paren) break;
            ++depth;
            seen_paren = true;
            continue;
        }
        if (!seen_paren || depth == 0) continue;
        if (text == ")") {
            --depth;
            if (depth == 0) break;
            continue;
        }
        if (depth == 1 && text == ",") {
            ++commas;
            continue;
        }
        content = true;
    }
    return content || commas > 0 ? commas + 1 : 0;
}

}  // namespace

CodeMetrics compute_code_metrics(const Corpus& corpus, const MetricThresholds& thresholds) {
    CodeMetrics out;
    const auto& complexity_keywords = corpus.profile.complexity_keywords;
    long long comment_lines_total = 0;

    for (const auto& file : corpus.files) {
        FileCodeMetrics fm;
        fm.path = file.path;
        fm.loc = file.line_count;
        fm.sloc = file.code_line_count;
        fm.comment_ratio = file.line_count > 0
                               ? static_cast<double>(file.comment_line_count) / file.line_count
                               : 0.0;

        std::map<int, std::vector<const Unit*>> methods;
        for (const auto& u : file.units)
            if (u.method_scope >= 0) methods[u.method_scope].push_back(&u);

        for (const auto& [scope, units] : methods) {
            FunctionMetrics f;
            const Unit& header = *units.front();
            f.name = function_name(corpus, header);
            f.path = file.path;
            f.line = header.start_line;
            f.parameter_count = parameter_count(corpus, header);
            f.length_units = static_cast<int>(units.size());
            for (const Unit* u : units) {
                for (int code : u->token_ids)
                    if (corpus.tokens.kind_of(code) == TokenKind::Keyword &&
                        complexity_keywords.count(corpus.tokens.text_of(code)))
                        ++f.cyclomatic_complexity;
                int depth = u->block_depth - corpus.profile.method_boundary_depth + 1;
                f.max_nested_block_depth = std::max(f.max_nested_block_depth, depth);
            }

            if (f.cyclomatic_complexity > thresholds.max_cyclomatic_complexity) {
                Finding n;
                n.tool = "native";
                n.rule_id = "max-cyclomatic-complexity";
                n.category = "maintainability";
                n.taxonomy_class = TaxonomyClass::Smell;
                n.severity = 3;
                n.path = f.path;
                n.line = f.line;
                n.message = "function '" + f.name + "': cyclomatic complexity " +
                            std::to_string(f.cyclomatic_complexity) + " > " +
                            std::to_string(thresholds.max_cyclomatic_complexity);
                n.extras = json::object();
                out.native_findings.push_back(std::move(n));
            }
            if (f.max_nested_block_depth > thresholds.max_nested_block_depth) {
                Finding n;
                n.tool = "native";
                n.rule_id = "max-nested-block-depth";
                n.category = "maintainability";
                n.taxonomy_class = TaxonomyClass::Smell;
                n.severity = 3;
                n.path = f.path;
                n.line = f.line;
                n.message = "function '" + f.name + "': nested block depth " +
                            std::to_string(f.max_nested_block_depth) + " > " +
                            std::to_string(thresholds.max_nested_block_depth);
                n.extras = json::object();
                out.native_findings.push_back(std::move(n));
            }

            out.max_cyclomatic_complexity = std::max(out.max_cyclomatic_complexity, f.cyclomatic_complexity);
            out.max_nested_block_depth = std::max(out.max_nested_block_depth, f.max_nested_block_depth);
            fm.functions.push_back(std::move(f));
        }

        out.loc += fm.loc;
        out.sloc += fm.sloc;
        comment_lines_total += file.comment_line_count;
        out.function_count += static_cast<int>(fm.functions.size());
        out.files.push_back(std::move(fm));
    }
    out.comment_ratio = out.loc > 0 ? static_cast<double>(comment_lines_total) / out.loc : 0.0;
    return out;
}

std::string code_metrics_json(const std::string& version_label, const CodeMetrics& metrics) {
    json files = json::array();
    for (const auto& fm : metrics.files) {
        json functions = json::array();
        for (const auto& f : fm.functions)
            functions.push_back({{"name", f.name},
                                 {"line", f.line},
                                 {"cyclomatic_complexity", f.cyclomatic_complexity},
                                 {"max_nested_block_depth", f.max_nested_block_depth},
                                 {"parameter_count", f.parameter_count},
                                 {"length_units", f.length_units}});
        files.push_back({{"path", fm.path},
                         {"loc", fm.loc},
                         {"sloc", fm.sloc},
                         {"comment_ratio", fm.comment_ratio},
                         {"functions", functions}});
    }
    json native = json::array();
    for (const auto& f : metrics.native_findings)
        native.push_back({{"tool", f.tool},
                          {"rule_id", f.rule_id},
                          {"category", f.category},
                          {"taxonomy_class", taxonomy_class_name(f.taxonomy_class)},
                          {"severity", f.severity},
                          {"confidence", f.confidence},
                          {"path", f.path},
                          {"line", f.line},
                          {"message", f.message},
                          {"suppressed", f.suppressed},
                          {"external", f.external}});
    json j = {{"schema", "metrics.v1"},
              {"version_label", version_label},
              {"files", files},
              {"aggregate",
               {{"loc", metrics.loc},
                {"sloc", metrics.sloc},
                {"comment_ratio", metrics.comment_ratio},
                {"function_count", metrics.function_count},
                {"max_cyclomatic_complexity", metrics.max_cyclomatic_complexity},
                {"max_nested_block_depth", metrics.max_nested_block_depth}}},
              {"native_findings", native}};
    return j.dump(2) + "\n";
}

}  // namespace qaforge
