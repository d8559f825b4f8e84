#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qaforge/bundle.h"
#include "qaforge/clone_detect.h"
#include "qaforge/code_metrics.h"
#include "qaforge/conformance.h"
#include "qaforge/gates.h"
#include "qaforge/html_report.h"
#include "qaforge/run_config.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qaforge;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitGateFailure = 1;
constexpr int kExitConfigError = 2;

struct OutputDir {
    fs::path dir;
    fs::path lock_path;

    explicit OutputDir(const std::string& out) : dir(out) {
        fs::create_directories(dir);
        lock_path = dir / ".qaforge.lock";
        std::ifstream existing(lock_path);
        if (existing) throw FatalError("output directory locked by another run; remove " + lock_path.string());
        std::ofstream lock(lock_path);
        lock << "qaforge\n";
    }
    ~OutputDir() {
        std::error_code ec;
        fs::remove(lock_path, ec);
    }

    void write(const std::string& name, const std::string& content) const {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw FatalError("cannot write " + (dir / name).string());
        out << content;
    }
};

// Timestamps live here and only here; every other artifact is reproducible.
void write_manifest(const OutputDir& out, const std::string& command, const std::string& config_path,
                    const std::string& version_label) {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    json j = {{"tool", "qaforge"},
              {"command", command},
              {"config", config_path},
              {"version_label", version_label},
              {"started_at", buf}};
    out.write("run_manifest.json", j.dump(2) + "\n");
}

Corpus load_configured_corpus(const RunConfig& config, const std::string& profile_override) {
    LanguageProfile profile = load_profile(profile_override.empty() ? config.profile : profile_override);
    if (config.corpus_roots.size() == 1)
        return load_corpus(config.corpus_roots.front(), profile, config.exclusions, config.version_label);

    Corpus merged;
    merged.profile = profile;
    merged.version_label = config.version_label;
    for (const auto& root : config.corpus_roots) {
        Corpus part = load_corpus(root, profile, config.exclusions, config.version_label);
        std::string prefix = fs::path(root).filename().string();
        for (auto& file : part.files) {
            SourceFile moved;
            moved.path = prefix.empty() ? file.path : prefix + "/" + file.path;
            moved.line_count = file.line_count;
            moved.comment_line_count = file.comment_line_count;
            moved.code_line_count = file.code_line_count;
            moved.imports = file.imports;
            int file_id = static_cast<int>(merged.files.size());
            for (auto& unit : file.units) {
                Unit u = unit;
                u.file_id = file_id;
                for (int& code : u.token_ids)
                    code = merged.tokens.intern(part.tokens.kind_of(code), part.tokens.text_of(code));
                moved.units.push_back(std::move(u));
            }
            merged.files.push_back(std::move(moved));
        }
        for (const auto& w : part.warnings) merged.warnings.push_back(w);
    }
    return merged;
}

struct CloneRun {
    std::vector<CloneClass> conventional;
    CloneMetrics conventional_metrics;
    std::vector<CloneClass> gapped;
    CloneMetrics gapped_metrics;
};

CloneRun run_clone_analysis(const RunConfig& config, const Corpus& normalized) {
    CloneRun run;
    run.conventional = detect_clones(normalized, config.clone_params);
    run.gapped = detect_gapped(normalized, config.clone_params);
    if (!config.clone_suppressions.empty()) {
        run.conventional = suppress(std::move(run.conventional), config.clone_suppressions).classes;
        auto gapped = suppress(std::move(run.gapped), config.clone_suppressions);
        run.gapped = std::move(gapped.classes);
        for (const auto& w : gapped.warnings) std::cerr << "warning: " << w << "\n";
    }
    run.conventional_metrics = compute_metrics(run.conventional, normalized);
    run.gapped_metrics = compute_metrics(run.gapped, normalized);
    return run;
}

struct ArchRun {
    ArchitectureModel model;
    MappedGraph mapped;
    ConformanceResult conformance;
    std::vector<std::vector<std::string>> cycles;
};

ArchRun run_arch_analysis(const RunConfig& config, const Corpus& corpus) {
    if (config.architecture_model.empty())
        throw FatalError("no architecture model configured; set architecture.model in the run config");
    if (!fs::exists(config.architecture_model))
        throw FatalError("architecture model not found: " + config.architecture_model);
    ArchRun run;
    run.model = parse_architecture(config.architecture_model);
    DependencyGraph graph = extract_dependencies(corpus);
    run.mapped = map_entities(graph, run.model);
    run.conformance = check_conformance(run.mapped, run.model);
    run.cycles = detect_cycles(component_graph(run.mapped));
    for (auto& v : run.conformance.violations) v.defect_class = classify_violation(v, run.model, run.cycles);
    return run;
}

std::vector<Finding> run_findings_analysis(const RunConfig& config, const CodeMetrics& code_metrics,
                                           const Corpus& corpus) {
    std::set<std::string> corpus_paths;
    for (const auto& f : corpus.files) corpus_paths.insert(f.path);
    TaxonomyConfig taxonomy;
    if (!config.taxonomy_config.empty()) {
        std::ifstream in(config.taxonomy_config);
        if (!in) throw FatalError("taxonomy config not readable: " + config.taxonomy_config);
        std::stringstream ss;
        ss << in.rdbuf();
        taxonomy = TaxonomyConfig::from_json_text(ss.str());
    }

    std::vector<Finding> findings;
    for (const auto& input : config.findings_inputs) {
        MappingConfig mapping;
        if (!input.mapping_path.empty()) {
            std::ifstream in(input.mapping_path);
            if (!in) throw FatalError("mapping config not readable: " + input.mapping_path);
            std::stringstream ss;
            ss << in.rdbuf();
            mapping = MappingConfig::from_json_text(ss.str());
        }
        IngestResult result = ingest_findings(input.path, input.format, mapping);
        for (const auto& reject : result.rejects)
            std::cerr << "warning: " << input.path << ": " << reject << "\n";
        for (auto& f : result.findings) findings.push_back(std::move(f));
    }
    for (const auto& f : code_metrics.native_findings) findings.push_back(f);
    for (auto& f : findings) {
        f.taxonomy_class = classify(f, taxonomy);
        if (!corpus_paths.count(f.path)) f.external = true;
    }

    if (!config.finding_suppressions.empty())
        apply_suppressions(findings, load_finding_suppressions(config.finding_suppressions));
    if (config.selector) return filter_findings(findings, *config.selector);
    return findings;
}

AnalysisBundle assemble_bundle(const RunConfig& config, const Corpus& raw_corpus, const Corpus& normalized) {
    CloneRun clones = run_clone_analysis(config, normalized);
    CodeMetrics code_metrics = compute_code_metrics(raw_corpus, config.thresholds);
    std::vector<Finding> findings = run_findings_analysis(config, code_metrics, raw_corpus);

    ConformanceResult conformance;
    std::vector<std::vector<std::string>> cycles;
    AnalysisBundle bundle;
    if (!config.architecture_model.empty()) {
        ArchRun arch = run_arch_analysis(config, raw_corpus);
        bundle = make_bundle(config.version_label, normalized, clones.conventional, clones.conventional_metrics,
                             clones.gapped, clones.gapped_metrics, arch.conformance, arch.cycles, findings,
                             code_metrics);
    } else {
        bundle = make_bundle(config.version_label, normalized, clones.conventional, clones.conventional_metrics,
                             clones.gapped, clones.gapped_metrics, conformance, cycles, findings, code_metrics);
    }
    bundle.change_set = config.change_set;
    return bundle;
}

std::vector<AnalysisBundle> load_history(const std::string& history_dir) {
    if (!fs::is_directory(history_dir)) throw FatalError("history directory not readable: " + history_dir);
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(history_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            names.push_back(entry.path().string());
    std::sort(names.begin(), names.end());
    std::vector<AnalysisBundle> bundles;
    for (const auto& name : names) bundles.push_back(load_bundle(name));
    return bundles;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qaforge - clone detection, architecture conformance, findings and quality gates"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "qaforge-out", version_label, history_dir, profile_override;
    app.add_option("--config", config_path, "run configuration (runconfig.v1)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--version-label", version_label, "override the config's version label");
    app.add_option("--history", history_dir, "directory of bundle.v1 files, one per version");
    app.add_option("--profile", profile_override, "override the language profile");

    auto* cmd_clones = app.add_subcommand("clones", "detect conventional and gapped clones");
    auto* cmd_arch = app.add_subcommand("arch", "check architecture conformance");
    auto* cmd_findings = app.add_subcommand("findings", "ingest and normalize findings reports");
    auto* cmd_metrics = app.add_subcommand("metrics", "compute code metrics");
    auto* cmd_gate = app.add_subcommand("gate", "evaluate quality gates");
    auto* cmd_trend = app.add_subcommand("trend", "compute metric trends from history");
    auto* cmd_report = app.add_subcommand("report", "render the HTML dashboard");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_trend->parsed() && config_path.empty() && !history_dir.empty()) {
            // Trends need only the history.
            OutputDir out(out_dir);
            std::vector<AnalysisBundle> bundles = load_history(history_dir);
            PolarityTable polarity;
            std::vector<TrendSeries> trends = compute_trends(bundles, polarity);
            out.write("trends.json", trend_report_json(trends));
            write_manifest(out, "trend", config_path, bundles.back().version_label);
            std::cout << "trend: " << trends.size() << " series over " << bundles.size() << " versions\n";
            return kExitPass;
        }

        if (config_path.empty()) throw FatalError("--config is required");
        RunConfig config = load_run_config(config_path);
        if (!version_label.empty()) config.version_label = version_label;

        OutputDir out(out_dir);
        write_manifest(out, app.get_subcommands().front()->get_name(), config_path, config.version_label);

        if (cmd_clones->parsed()) {
            Corpus corpus = load_configured_corpus(config, profile_override);
            Corpus normalized = normalize(corpus, config.normalization);
            for (const auto& w : corpus.warnings) std::cerr << "warning: " << w << "\n";
            CloneRun run = run_clone_analysis(config, normalized);
            out.write("clones.json", clone_report_json(normalized, config.clone_params, run.conventional,
                                                       run.conventional_metrics, run.gapped, run.gapped_metrics));
            std::cout << "clones: " << run.conventional.size() << " conventional classes, coverage "
                      << run.conventional_metrics.unit_coverage << "%, blow-up " << run.conventional_metrics.blow_up
                      << "%; " << run.gapped.size() << " gapped classes, coverage "
                      << run.gapped_metrics.unit_coverage << "%\n";
            return kExitPass;
        }
        if (cmd_arch->parsed()) {
            Corpus corpus = load_configured_corpus(config, profile_override);
            ArchRun run = run_arch_analysis(config, corpus);
            out.write("arch.json",
                      arch_report_json(config.version_label, run.model, run.mapped, run.conformance, run.cycles));
            std::cout << "arch: " << run.conformance.component_pairs.size() << " violating component pairs, "
                      << run.conformance.violations.size() << " violating entity pairs, " << run.cycles.size()
                      << " cycles, " << run.mapped.unmapped.size() << " unmapped entities\n";
            return kExitPass;
        }
        if (cmd_findings->parsed()) {
            Corpus corpus = load_configured_corpus(config, profile_override);
            CodeMetrics code_metrics = compute_code_metrics(corpus, config.thresholds);
            std::vector<Finding> findings = run_findings_analysis(config, code_metrics, corpus);
            out.write("findings.json", findings_to_json_text(findings));
            long long bugs = 0, smells = 0, pedantry = 0;
            for (const auto& f : findings) {
                if (f.taxonomy_class == TaxonomyClass::Bug) ++bugs;
                else if (f.taxonomy_class == TaxonomyClass::Smell) ++smells;
                else ++pedantry;
            }
            std::cout << "findings: " << findings.size() << " total (" << bugs << " bugs, " << smells
                      << " smells, " << pedantry << " pedantry)\n";
            return kExitPass;
        }
        if (cmd_metrics->parsed()) {
            Corpus corpus = load_configured_corpus(config, profile_override);
            CodeMetrics metrics = compute_code_metrics(corpus, config.thresholds);
            out.write("metrics.json", code_metrics_json(config.version_label, metrics));
            std::cout << "metrics: " << metrics.loc << " loc, " << metrics.sloc << " sloc, "
                      << metrics.function_count << " functions, max complexity "
                      << metrics.max_cyclomatic_complexity << ", max nesting " << metrics.max_nested_block_depth
                      << ", " << metrics.native_findings.size() << " threshold breaches\n";
            return kExitPass;
        }
        if (cmd_gate->parsed()) {
            if (config.gate_spec.empty()) throw FatalError("no gate spec configured; set gates.spec");
            GateSpec spec = GateSpec::load(config.gate_spec);
            Corpus corpus = load_configured_corpus(config, profile_override);
            Corpus normalized = normalize(corpus, config.normalization);
            AnalysisBundle bundle = assemble_bundle(config, corpus, normalized);
            GateResult result = evaluate_gates(spec, bundle);
            out.write("bundle.json", bundle_to_json_text(bundle));
            out.write("gateresult.json", gate_result_json(config.version_label, result));
            for (const auto& e : result.entries) {
                std::string verdict = e.config_error ? "CONFIG ERROR" : (e.passed ? "pass" : "FAIL");
                std::cout << "gate " << e.id << ": " << verdict;
                if (!e.config_error)
                    std::cout << " (" << e.metric << " = " << e.value << " " << e.op << " " << e.threshold << ")";
                else
                    std::cout << " (" << e.message << ")";
                if (!e.hard && !e.passed && !e.config_error) std::cout << " [soft]";
                std::cout << "\n";
            }
            std::cout << "overall: " << (result.overall_pass ? "pass" : "fail") << "\n";
            return result.exit_code;
        }
        if (cmd_trend->parsed()) {
            if (history_dir.empty()) throw FatalError("--history is required for trend");
            std::vector<AnalysisBundle> bundles = load_history(history_dir);
            PolarityTable polarity;
            if (!config.polarity_table.empty()) polarity = PolarityTable::load(config.polarity_table);
            std::vector<TrendSeries> trends = compute_trends(bundles, polarity);
            out.write("trends.json", trend_report_json(trends));
            std::cout << "trend: " << trends.size() << " series over " << bundles.size() << " versions\n";
            return kExitPass;
        }
        if (cmd_report->parsed()) {
            std::vector<AnalysisBundle> bundles;
            if (!history_dir.empty()) bundles = load_history(history_dir);
            if (fs::exists(out.dir / "bundle.json")) {
                AnalysisBundle current = load_bundle((out.dir / "bundle.json").string());
                bool already = false;
                for (const auto& b : bundles) already = already || b.version_label == current.version_label;
                if (!already) bundles.push_back(std::move(current));
            }

            std::vector<Finding> findings;
            if (fs::exists(out.dir / "findings.json"))
                findings = findings_from_json_text(slurp(out.dir / "findings.json"));

            std::vector<TrendSeries> trends;
            PolarityTable polarity;
            if (!config.polarity_table.empty()) polarity = PolarityTable::load(config.polarity_table);
            if (bundles.size() >= 2) trends = compute_trends(bundles, polarity);

            GateResult gate_result;
            bool have_gates = false;
            if (fs::exists(out.dir / "gateresult.json")) {
                json gr = json::parse(slurp(out.dir / "gateresult.json"));
                for (const auto& e : gr.at("gates")) {
                    GateEntryResult entry;
                    entry.id = e.value("id", "");
                    entry.metric = e.value("metric", "");
                    entry.op = e.value("op", "");
                    entry.threshold = e.value("threshold", 0.0);
                    entry.value = e.value("value", 0.0);
                    entry.hard = e.value("hard", true);
                    entry.passed = e.value("passed", false);
                    entry.config_error = e.value("config_error", false);
                    entry.message = e.value("message", "");
                    gate_result.entries.push_back(std::move(entry));
                }
                gate_result.overall_pass = gr.value("overall", "pass") == "pass";
                have_gates = true;
            }

            std::vector<std::pair<std::string, std::string>> artifacts;
            for (const char* name : {"clones.json", "arch.json", "findings.json", "metrics.json",
                                     "gateresult.json", "trends.json", "bundle.json"})
                if (fs::exists(out.dir / name)) artifacts.emplace_back(name, slurp(out.dir / name));

            std::string html = render_dashboard(config.version_label, bundles, findings,
                                                have_gates ? &gate_result : nullptr, trends, artifacts);
            out.write("report.html", html);
            std::cout << "report: " << bundles.size() << " versions, " << findings.size() << " findings, "
                      << trends.size() << " trend series -> " << (out.dir / "report.html").string() << "\n";
            return kExitPass;
        }
    } catch (const FatalError& e) {
        std::cerr << "error: " << e.message << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitConfigError;
}
