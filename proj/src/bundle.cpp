#include "qaforge/bundle.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

using nlohmann::json;

namespace qaforge {

namespace {

bool unit_in_gap(const std::vector<GapSpan>& gaps, int unit) {
    for (const auto& g : gaps)
        if (unit >= g.start_unit && unit <= g.end_unit) return true;
    return false;
}

struct CloneRows {
    std::vector<long long> cloned;
    std::vector<long long> redundant;
    std::vector<int> longest;
    std::vector<int> max_instances;
};

// Same claiming discipline as compute_metrics, attributed to the file each
// instance lives in.
CloneRows per_file_rows(const std::vector<CloneClass>& classes, const Corpus& corpus) {
    size_t nfiles = corpus.files.size();
    CloneRows rows{std::vector<long long>(nfiles, 0), std::vector<long long>(nfiles, 0),
                   std::vector<int>(nfiles, 0), std::vector<int>(nfiles, 0)};

    std::vector<int> offsets(nfiles, 0);
    int total = 0;
    for (size_t f = 0; f < nfiles; ++f) {
        offsets[f] = total;
        total += static_cast<int>(corpus.files[f].units.size());
    }
    std::vector<char> covered(total, 0);
    for (const auto& c : classes) {
        for (const auto& inst : c.instances) {
            rows.longest[inst.file_id] = std::max(rows.longest[inst.file_id], c.length);
            rows.max_instances[inst.file_id] =
                std::max(rows.max_instances[inst.file_id], static_cast<int>(c.instances.size()));
            for (int u = inst.start_unit; u <= inst.end_unit; ++u) {
                if (unit_in_gap(inst.gap_spans, u)) continue;
                int g = offsets[inst.file_id] + u;
                if (!covered[g]) {
                    covered[g] = 1;
                    ++rows.cloned[inst.file_id];
                }
            }
        }
    }

    std::vector<const CloneClass*> order;
    for (const auto& c : classes) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const CloneClass* a, const CloneClass* b) {
        if (a->length != b->length) return a->length > b->length;
        return a->fingerprint < b->fingerprint;
    });
    std::vector<char> claimed(total, 0);
    for (const CloneClass* c : order) {
        for (size_t k = 0; k < c->instances.size(); ++k) {
            const CloneInstance& inst = c->instances[k];
            for (int u = inst.start_unit; u <= inst.end_unit; ++u) {
                if (unit_in_gap(inst.gap_spans, u)) continue;
                int g = offsets[inst.file_id] + u;
                if (claimed[g]) continue;
                claimed[g] = 1;
                if (k > 0) ++rows.redundant[inst.file_id];
            }
        }
    }
    return rows;
}

}  // namespace

AnalysisBundle make_bundle(const std::string& version_label, const Corpus& corpus,
                           const std::vector<CloneClass>& conventional, const CloneMetrics& conventional_metrics,
                           const std::vector<CloneClass>& gapped, const CloneMetrics& gapped_metrics,
                           const ConformanceResult& conformance,
                           const std::vector<std::vector<std::string>>& cycles,
                           const std::vector<Finding>& findings, const CodeMetrics& code_metrics) {
    AnalysisBundle b;
    b.version_label = version_label;

    CloneRows conv_rows = per_file_rows(conventional, corpus);
    CloneRows gap_rows = per_file_rows(gapped, corpus);
    for (size_t f = 0; f < corpus.files.size(); ++f) {
        FileRow row;
        row.path = corpus.files[f].path;
        row.analysed_units = static_cast<long long>(corpus.files[f].units.size());
        row.cloned_units = conv_rows.cloned[f];
        row.redundant_units = conv_rows.redundant[f];
        row.gapped_cloned_units = gap_rows.cloned[f];
        row.gapped_redundant_units = gap_rows.redundant[f];
        row.longest_clone = conv_rows.longest[f];
        row.max_instances = conv_rows.max_instances[f];
        row.gapped_longest_clone = gap_rows.longest[f];
        row.gapped_max_instances = gap_rows.max_instances[f];
        row.loc = corpus.files[f].line_count;
        row.sloc = corpus.files[f].code_line_count;
        row.comment_lines = corpus.files[f].comment_line_count;
        b.files.push_back(std::move(row));
    }
    for (const auto& fm : code_metrics.files) {
        auto it = std::find_if(b.files.begin(), b.files.end(), [&](const FileRow& r) { return r.path == fm.path; });
        if (it == b.files.end()) continue;
        for (const auto& fn : fm.functions) {
            it->max_cyclomatic_complexity = std::max(it->max_cyclomatic_complexity, fn.cyclomatic_complexity);
            it->max_nested_block_depth = std::max(it->max_nested_block_depth, fn.max_nested_block_depth);
        }
    }

    for (const auto& f : findings)
        if (!f.suppressed)
            b.findings.push_back({f.taxonomy_class, f.category, f.severity, f.confidence, f.path});

    std::map<std::string, int> by_class = {{"layer_circumvention", 0},
                                           {"circular_dependency", 0},
                                           {"undocumented_common_use", 0},
                                           {"other", 0}};
    for (const auto& v : conformance.violations) {
        ViolationKey key;
        key.from_component = v.from_component;
        key.to_component = v.to_component;
        key.defect_class = v.defect_class;
        for (const auto& loc : v.locations)
            if (std::find(key.paths.begin(), key.paths.end(), loc.path) == key.paths.end())
                key.paths.push_back(loc.path);
        ++by_class[defect_class_name(v.defect_class)];
        b.violations.push_back(std::move(key));
    }

    auto& m = b.metrics;
    m["clone.conventional.analysed_units"] = static_cast<double>(conventional_metrics.analysed_units);
    m["clone.conventional.cloned_units"] = static_cast<double>(conventional_metrics.cloned_units);
    m["clone.conventional.unit_coverage"] = conventional_metrics.unit_coverage;
    m["clone.conventional.blow_up"] = conventional_metrics.blow_up;
    m["clone.conventional.longest_clone"] = conventional_metrics.longest_clone;
    m["clone.conventional.max_instances"] = conventional_metrics.max_instances;
    m["clone.gapped.analysed_units"] = static_cast<double>(gapped_metrics.analysed_units);
    m["clone.gapped.cloned_units"] = static_cast<double>(gapped_metrics.cloned_units);
    m["clone.gapped.unit_coverage"] = gapped_metrics.unit_coverage;
    m["clone.gapped.blow_up"] = gapped_metrics.blow_up;
    m["clone.gapped.longest_clone"] = gapped_metrics.longest_clone;
    m["clone.gapped.max_instances"] = gapped_metrics.max_instances;

    m["arch.violations_component"] = static_cast<double>(conformance.component_pairs.size());
    m["arch.violations_entity"] = static_cast<double>(conformance.violations.size());
    m["arch.tolerated"] = static_cast<double>(conformance.tolerated.size());
    m["arch.cycles"] = static_cast<double>(cycles.size());
    for (const auto& [name, count] : by_class) m["arch.violations_" + name] = count;

    long long bugs = 0, smells = 0, pedantry = 0;
    for (const auto& f : b.findings) {
        if (f.taxonomy_class == TaxonomyClass::Bug) ++bugs;
        else if (f.taxonomy_class == TaxonomyClass::Smell) ++smells;
        else ++pedantry;
    }
    m["findings.total"] = static_cast<double>(b.findings.size());
    m["findings.bugs"] = static_cast<double>(bugs);
    m["findings.smells"] = static_cast<double>(smells);
    m["findings.pedantry"] = static_cast<double>(pedantry);

    m["code.loc"] = static_cast<double>(code_metrics.loc);
    m["code.sloc"] = static_cast<double>(code_metrics.sloc);
    m["code.comment_ratio"] = code_metrics.comment_ratio;
    m["code.functions"] = code_metrics.function_count;
    m["code.max_cyclomatic_complexity"] = code_metrics.max_cyclomatic_complexity;
    m["code.max_nested_block_depth"] = code_metrics.max_nested_block_depth;
    return b;
}

std::string bundle_to_json_text(const AnalysisBundle& b) {
    json files = json::array();
    for (const auto& r : b.files)
        files.push_back({{"path", r.path},
                         {"analysed_units", r.analysed_units},
                         {"cloned_units", r.cloned_units},
                         {"redundant_units", r.redundant_units},
                         {"gapped_cloned_units", r.gapped_cloned_units},
                         {"gapped_redundant_units", r.gapped_redundant_units},
                         {"longest_clone", r.longest_clone},
                         {"max_instances", r.max_instances},
                         {"gapped_longest_clone", r.gapped_longest_clone},
                         {"gapped_max_instances", r.gapped_max_instances},
                         {"loc", r.loc},
                         {"sloc", r.sloc},
                         {"comment_lines", r.comment_lines},
                         {"max_cyclomatic_complexity", r.max_cyclomatic_complexity},
                         {"max_nested_block_depth", r.max_nested_block_depth}});
    json findings = json::array();
    for (const auto& f : b.findings)
        findings.push_back({{"class", taxonomy_class_name(f.taxonomy_class)},
                            {"category", f.category},
                            {"severity", f.severity},
                            {"confidence", f.confidence},
                            {"path", f.path}});
    json violations = json::array();
    for (const auto& v : b.violations)
        violations.push_back({{"from_component", v.from_component},
                              {"to_component", v.to_component},
                              {"defect_class", defect_class_name(v.defect_class)},
                              {"paths", v.paths}});
    json j = {{"schema", "bundle.v1"},
              {"version_label", b.version_label},
              {"metrics", b.metrics},
              {"files", files},
              {"findings", findings},
              {"violations", violations}};
    if (b.change_set) j["change_set"] = *b.change_set;
    return j.dump(2) + "\n";
}

namespace {

DefectClass defect_class_from_name(const std::string& name) {
    if (name == "layer_circumvention") return DefectClass::LayerCircumvention;
    if (name == "circular_dependency") return DefectClass::CircularDependency;
    if (name == "undocumented_common_use") return DefectClass::UndocumentedCommonUse;
    return DefectClass::Other;
}

}  // namespace

AnalysisBundle bundle_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FatalError(std::string("bundle is not valid JSON: ") + e.what());
    }
    if (j.value("schema", "") != "bundle.v1") throw FatalError("bundle has unknown schema");
    AnalysisBundle b;
    b.version_label = j.value("version_label", "");
    if (j.contains("metrics"))
        for (const auto& [key, value] : j.at("metrics").items()) b.metrics[key] = value.get<double>();
    if (j.contains("files"))
        for (const auto& r : j.at("files")) {
            FileRow row;
            row.path = r.value("path", "");
            row.analysed_units = r.value("analysed_units", 0LL);
            row.cloned_units = r.value("cloned_units", 0LL);
            row.redundant_units = r.value("redundant_units", 0LL);
            row.gapped_cloned_units = r.value("gapped_cloned_units", 0LL);
            row.gapped_redundant_units = r.value("gapped_redundant_units", 0LL);
            row.longest_clone = r.value("longest_clone", 0);
            row.max_instances = r.value("max_instances", 0);
            row.gapped_longest_clone = r.value("gapped_longest_clone", 0);
            row.gapped_max_instances = r.value("gapped_max_instances", 0);
            row.loc = r.value("loc", 0LL);
            row.sloc = r.value("sloc", 0LL);
            row.comment_lines = r.value("comment_lines", 0LL);
            row.max_cyclomatic_complexity = r.value("max_cyclomatic_complexity", 0);
            row.max_nested_block_depth = r.value("max_nested_block_depth", 0);
            b.files.push_back(std::move(row));
        }
    if (j.contains("findings"))
        for (const auto& f : j.at("findings"))
            b.findings.push_back({taxonomy_class_from_name(f.value("class", "smell")), f.value("category", ""),
                                  f.value("severity", 3), f.value("confidence", 100.0), f.value("path", "")});
    if (j.contains("violations"))
        for (const auto& v : j.at("violations")) {
            ViolationKey key;
            key.from_component = v.value("from_component", "");
            key.to_component = v.value("to_component", "");
            key.defect_class = defect_class_from_name(v.value("defect_class", "other"));
            if (v.contains("paths"))
                for (const auto& p : v.at("paths")) key.paths.push_back(p.get<std::string>());
            b.violations.push_back(std::move(key));
        }
    if (j.contains("change_set")) {
        std::vector<std::string> cs;
        for (const auto& p : j.at("change_set")) cs.push_back(p.get<std::string>());
        b.change_set = std::move(cs);
    }
    return b;
}

AnalysisBundle load_bundle(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FatalError("bundle not readable: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return bundle_from_json_text(ss.str());
}

}  // namespace qaforge
