#include "qaforge/run_config.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace qaforge {

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
    if (path.empty()) return path;
    fs::path p(path);
    if (p.is_absolute() || base_dir.empty()) return path;
    return (fs::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

RunConfig run_config_from_json_text(const std::string& text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FatalError(std::string("run config is not valid JSON: ") + e.what());
    }
    if (j.value("schema", "runconfig.v1") != "runconfig.v1") throw FatalError("run config has unknown schema");

    RunConfig c;
    c.version_label = j.value("version_label", "");
    if (c.version_label.empty()) throw FatalError("run config: version_label must be non-empty");

    if (!j.contains("corpus")) throw FatalError("run config: corpus section missing");
    const auto& corpus = j.at("corpus");
    for (const auto& r : corpus.at("roots")) c.corpus_roots.push_back(resolve(base_dir, r.get<std::string>()));
    if (c.corpus_roots.empty()) throw FatalError("run config: corpus.roots must not be empty");
    c.profile = corpus.value("profile", "cstyle");
    if (c.profile.find('/') != std::string::npos || c.profile.ends_with(".json"))
        c.profile = resolve(base_dir, c.profile);
    if (corpus.contains("exclusions"))
        for (const auto& e : corpus.at("exclusions")) c.exclusions.push_back(e.get<std::string>());
    c.normalization = normalization_from_name(corpus.value("normalization", "identifiers"));

    if (j.contains("clones")) {
        const auto& clones = j.at("clones");
        c.clone_params.min_length = clones.value("min_length", 10);
        c.clone_params.max_gaps = clones.value("max_gaps", 1);
        c.clone_params.max_gap_ratio = clones.value("max_gap_ratio", 0.30);
        c.clone_params.respect_method_boundaries = clones.value("respect_method_boundaries", true);
        c.clone_suppressions = resolve(base_dir, clones.value("suppressions", ""));
        c.clone_params.validate();
    }

    if (j.contains("architecture")) c.architecture_model = resolve(base_dir, j.at("architecture").value("model", ""));

    if (j.contains("findings")) {
        const auto& findings = j.at("findings");
        if (findings.contains("reports"))
            for (const auto& r : findings.at("reports")) {
                FindingsInput input;
                input.path = resolve(base_dir, r.at("path").get<std::string>());
                input.format = r.value("format", "findings.v1");
                input.mapping_path = resolve(base_dir, r.value("mapping", ""));
                if (input.format == "csv" && input.mapping_path.empty())
                    throw FatalError("run config: csv findings input '" + input.path + "' needs a mapping");
                c.findings_inputs.push_back(std::move(input));
            }
        c.taxonomy_config = resolve(base_dir, findings.value("taxonomy", ""));
        if (findings.contains("selector")) c.selector = RuleSelector::from_json(findings.at("selector"));
        c.finding_suppressions = resolve(base_dir, findings.value("suppressions", ""));
    }

    if (j.contains("metrics")) {
        c.thresholds.max_cyclomatic_complexity = j.at("metrics").value("max_cyclomatic_complexity", 10);
        c.thresholds.max_nested_block_depth = j.at("metrics").value("max_nested_block_depth", 5);
    }

    if (j.contains("gates")) {
        c.gate_spec = resolve(base_dir, j.at("gates").value("spec", ""));
        c.polarity_table = resolve(base_dir, j.at("gates").value("polarity", ""));
    }

    if (j.contains("change_set")) {
        std::vector<std::string> cs;
        for (const auto& p : j.at("change_set")) cs.push_back(p.get<std::string>());
        c.change_set = std::move(cs);
    }
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FatalError("run config not readable: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return run_config_from_json_text(ss.str(), fs::path(path).parent_path().string());
}

}  // namespace qaforge
