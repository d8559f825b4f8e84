#include "qaforge/conformance.h"

#include <algorithm>
#include <functional>
#include <regex>

#include <json.hpp>

using nlohmann::json;

namespace qaforge {

std::string defect_class_name(DefectClass d) {
    switch (d) {
        case DefectClass::LayerCircumvention: return "layer_circumvention";
        case DefectClass::CircularDependency: return "circular_dependency";
        case DefectClass::UndocumentedCommonUse: return "undocumented_common_use";
        case DefectClass::Other: return "other";
    }
    return "other";
}

MappedGraph map_entities(const DependencyGraph& graph, const ArchitectureModel& model) {
    std::vector<std::regex> exclude_res;
    for (const auto& pattern : model.exclude) exclude_res.emplace_back(pattern);

    struct CompiledComponent {
        std::string name;
        int depth;
        std::string parent;
        std::vector<std::regex> patterns;
    };
    std::vector<CompiledComponent> compiled;
    for (const auto& [name, info] : model.index) {
        CompiledComponent cc{name, info.depth, info.parent, {}};
        for (const auto& pattern : info.maps) cc.patterns.emplace_back(pattern);
        compiled.push_back(std::move(cc));
    }

    MappedGraph mapped;
    std::set<std::string> excluded_set;
    std::vector<std::string> overlap_errors;
    for (const auto& entity : graph.nodes) {
        bool excluded = false;
        for (const auto& re : exclude_res)
            if (std::regex_match(entity, re)) {
                excluded = true;
                break;
            }
        if (excluded) {
            mapped.excluded.push_back(entity);
            excluded_set.insert(entity);
            continue;
        }
        // Deepest match wins; two matches at the same depth that are not in
        // an ancestor relation violate sibling disjointness.
        std::string best;
        int best_depth = -1;
        for (const auto& cc : compiled) {
            bool hit = false;
            for (const auto& re : cc.patterns)
                if (std::regex_match(entity, re)) {
                    hit = true;
                    break;
                }
            if (!hit) continue;
            if (cc.depth > best_depth) {
                best = cc.name;
                best_depth = cc.depth;
            } else if (cc.depth == best_depth && cc.name != best) {
                overlap_errors.push_back("entity '" + entity + "' matches sibling components '" + best +
                                         "' and '" + cc.name + "'");
            }
        }
        if (best.empty()) {
            mapped.unmapped.push_back(entity);
            mapped.component_of[entity] = kUnmappedComponent;
        } else {
            mapped.component_of[entity] = best;
        }
    }
    if (!overlap_errors.empty()) {
        std::string msg = "architecture mapping is ambiguous:";
        for (const auto& e : overlap_errors) msg += "\n  - " + e;
        throw FatalError(msg);
    }

    mapped.graph.nodes = graph.nodes;
    std::erase_if(mapped.graph.nodes, [&](const std::string& n) { return excluded_set.count(n) > 0; });
    for (const auto& e : graph.edges) {
        if (excluded_set.count(e.from) || excluded_set.count(e.to)) continue;
        mapped.graph.edges.push_back(e);
    }
    return mapped;
}

namespace {

// Most specific rule for an edge: both endpoints inside the rule's subtrees,
// ranked by combined subtree depth; deny beats tolerate beats allow on ties.
const Rule* effective_rule(const ArchitectureModel& model, const std::string& from, const std::string& to) {
    const Rule* best = nullptr;
    int best_score = -1;
    auto strictness = [](Policy p) { return p == Policy::Deny ? 2 : (p == Policy::Tolerate ? 1 : 0); };
    for (const auto& rule : model.rules) {
        if (!model.within(from, rule.from) || !model.within(to, rule.to)) continue;
        int score = model.depth_of(rule.from) + model.depth_of(rule.to);
        if (score > best_score ||
            (score == best_score && best && strictness(rule.policy) > strictness(best->policy))) {
            best = &rule;
            best_score = score;
        }
    }
    return best;
}

}  // namespace

ConformanceResult check_conformance(const MappedGraph& mapped, const ArchitectureModel& model) {
    ConformanceResult result;
    std::set<std::pair<std::string, std::string>> component_pairs;
    for (const auto& edge : mapped.graph.edges) {
        const std::string& from_c = mapped.component_of.at(edge.from);
        const std::string& to_c = mapped.component_of.at(edge.to);
        if (from_c == to_c) {
            ++result.intra_component_edges;
            continue;
        }
        Policy policy = model.default_policy;
        bool rule_matched = false;
        if (from_c != kUnmappedComponent && to_c != kUnmappedComponent) {
            if (const Rule* rule = effective_rule(model, from_c, to_c)) {
                policy = rule->policy;
                rule_matched = true;
            }
        }
        switch (policy) {
            case Policy::Allow:
                ++result.allowed_edges;
                break;
            case Policy::Tolerate:
                result.tolerated.push_back({edge.from, edge.to, from_c, to_c});
                break;
            case Policy::Deny: {
                Violation v;
                v.from_entity = edge.from;
                v.to_entity = edge.to;
                v.from_component = from_c;
                v.to_component = to_c;
                v.policy_found = rule_matched ? PolicyFound::Deny : PolicyFound::Unmatched;
                v.locations = edge.locations;
                result.violations.push_back(std::move(v));
                component_pairs.insert({from_c, to_c});
                break;
            }
        }
    }
    std::sort(result.violations.begin(), result.violations.end(), [](const Violation& a, const Violation& b) {
        return std::tie(a.from_component, a.to_component, a.from_entity, a.to_entity) <
               std::tie(b.from_component, b.to_component, b.from_entity, b.to_entity);
    });
    std::sort(result.tolerated.begin(), result.tolerated.end(), [](const ToleratedEdge& a, const ToleratedEdge& b) {
        return std::tie(a.from_component, a.to_component, a.from_entity, a.to_entity) <
               std::tie(b.from_component, b.to_component, b.from_entity, b.to_entity);
    });
    result.component_pairs.assign(component_pairs.begin(), component_pairs.end());
    return result;
}

std::map<std::string, std::set<std::string>> component_graph(const MappedGraph& mapped) {
    std::map<std::string, std::set<std::string>> graph;
    for (const auto& [entity, component] : mapped.component_of) graph[component];
    for (const auto& edge : mapped.graph.edges) {
        const std::string& from_c = mapped.component_of.at(edge.from);
        const std::string& to_c = mapped.component_of.at(edge.to);
        if (from_c != to_c) graph[from_c].insert(to_c);
    }
    return graph;
}

std::vector<std::vector<std::string>> detect_cycles(const std::map<std::string, std::set<std::string>>& graph) {
    // Tarjan, iterative.
    std::map<std::string, int> index_of;
    std::vector<std::string> names;
    for (const auto& [n, _] : graph) {
        index_of[n] = static_cast<int>(names.size());
        names.push_back(n);
    }
    // Edges may reference nodes absent from the key set.
    for (const auto& [n, succs] : graph)
        for (const auto& s : succs)
            if (!index_of.count(s)) {
                index_of[s] = static_cast<int>(names.size());
                names.push_back(s);
            }
    int n = static_cast<int>(names.size());
    std::vector<std::vector<int>> adj(n);
    std::vector<bool> self_edge(n, false);
    for (const auto& [from, succs] : graph) {
        int u = index_of[from];
        for (const auto& s : succs) {
            int v = index_of[s];
            if (u == v) self_edge[u] = true;
            adj[u].push_back(v);
        }
    }

    std::vector<int> order(n, -1), low(n, 0), on_stack(n, 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> sccs;
    int counter = 0;

    struct Frame {
        int v;
        size_t child;
    };
    for (int start = 0; start < n; ++start) {
        if (order[start] != -1) continue;
        std::vector<Frame> work{{start, 0}};
        while (!work.empty()) {
            Frame& f = work.back();
            int v = f.v;
            if (f.child == 0) {
                order[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            bool descended = false;
            while (f.child < adj[v].size()) {
                int w = adj[v][f.child++];
                if (order[w] == -1) {
                    work.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], order[w]);
            }
            if (descended) continue;
            if (low[v] == order[v]) {
                std::vector<int> scc;
                while (true) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    scc.push_back(w);
                    if (w == v) break;
                }
                sccs.push_back(std::move(scc));
            }
            work.pop_back();
            if (!work.empty()) {
                int parent = work.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }

    std::vector<std::vector<std::string>> cycles;
    for (const auto& scc : sccs) {
        if (scc.size() < 2 && !(scc.size() == 1 && self_edge[scc[0]])) continue;
        std::vector<std::string> members;
        for (int v : scc) members.push_back(names[v]);
        std::sort(members.begin(), members.end());
        cycles.push_back(std::move(members));
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

DefectClass classify_violation(const Violation& v, const ArchitectureModel& model,
                               const std::vector<std::vector<std::string>>& cycles) {
    auto rank_of = [&](const std::string& component) -> std::optional<int> {
        auto it = model.index.find(component);
        if (it == model.index.end()) return std::nullopt;
        return it->second.layer_rank;
    };
    std::optional<int> from_rank = rank_of(v.from_component);
    std::optional<int> to_rank = rank_of(v.to_component);
    if (from_rank && to_rank && *to_rank - *from_rank >= 2) return DefectClass::LayerCircumvention;

    for (const auto& cycle : cycles) {
        bool from_in = std::binary_search(cycle.begin(), cycle.end(), v.from_component);
        bool to_in = std::binary_search(cycle.begin(), cycle.end(), v.to_component);
        if (from_in && to_in) return DefectClass::CircularDependency;
    }

    auto it = model.index.find(v.to_component);
    if (it != model.index.end() && it->second.common) return DefectClass::UndocumentedCommonUse;
    return DefectClass::Other;
}

std::string arch_report_json(const std::string& version_label, const ArchitectureModel& model,
                             const MappedGraph& mapped, const ConformanceResult& result,
                             const std::vector<std::vector<std::string>>& cycles) {
    json j;
    j["schema"] = "archreport.v1";
    j["version_label"] = version_label;

    std::map<std::string, int> by_class;
    for (const char* name : {"layer_circumvention", "circular_dependency", "undocumented_common_use", "other"})
        by_class[name] = 0;
    json entity_level = json::array();
    std::map<std::pair<std::string, std::string>, std::set<std::pair<std::string, std::string>>> pair_entities;
    for (const auto& v : result.violations) {
        ++by_class[defect_class_name(v.defect_class)];
        json locations = json::array();
        for (const auto& loc : v.locations) locations.push_back({{"path", loc.path}, {"line", loc.line}});
        entity_level.push_back({{"from_entity", v.from_entity},
                                {"to_entity", v.to_entity},
                                {"from_component", v.from_component},
                                {"to_component", v.to_component},
                                {"policy_found", v.policy_found == PolicyFound::Deny ? "deny" : "unmatched"},
                                {"defect_class", defect_class_name(v.defect_class)},
                                {"locations", locations}});
        pair_entities[{v.from_component, v.to_component}].insert({v.from_entity, v.to_entity});
    }
    json component_level = json::array();
    for (const auto& [pair, entities] : pair_entities)
        component_level.push_back(
            {{"from", pair.first}, {"to", pair.second}, {"entity_pairs", static_cast<int>(entities.size())}});

    json tolerated = json::array();
    for (const auto& t : result.tolerated)
        tolerated.push_back({{"from_entity", t.from_entity},
                             {"to_entity", t.to_entity},
                             {"from_component", t.from_component},
                             {"to_component", t.to_component}});

    json cycles_json = json::array();
    for (const auto& c : cycles) cycles_json.push_back(c);

    // Components with zero static edges cannot be analysed statically; their
    // wiring is likely dynamic.
    std::set<std::string> touched;
    for (const auto& edge : mapped.graph.edges) {
        touched.insert(mapped.component_of.at(edge.from));
        touched.insert(mapped.component_of.at(edge.to));
    }
    json diagnostics = json::array();
    for (const auto& [name, info] : model.index)
        if (!touched.count(name))
            diagnostics.push_back("component '" + name + "' has zero static edges; dynamic wiring is not analysable");

    j["summary"] = {{"components", static_cast<int>(model.index.size())},
                    {"rules", static_cast<int>(model.rules.size())},
                    {"entities", static_cast<int>(mapped.graph.nodes.size())},
                    {"edges", static_cast<int>(mapped.graph.edges.size())},
                    {"mapped", static_cast<int>(mapped.graph.nodes.size() - mapped.unmapped.size())},
                    {"unmapped", static_cast<int>(mapped.unmapped.size())},
                    {"excluded", static_cast<int>(mapped.excluded.size())},
                    {"allowed_edges", result.allowed_edges},
                    {"intra_component_edges", result.intra_component_edges},
                    {"tolerated", static_cast<int>(result.tolerated.size())},
                    {"violating_component_pairs", static_cast<int>(result.component_pairs.size())},
                    {"violating_entity_pairs", static_cast<int>(entity_level.size())},
                    {"cycles", static_cast<int>(cycles.size())},
                    {"by_defect_class", by_class}};
    j["component_level"] = component_level;
    j["entity_level"] = entity_level;
    j["tolerated"] = tolerated;
    j["cycles"] = cycles_json;
    j["unmapped_entities"] = mapped.unmapped;
    j["excluded_entities"] = mapped.excluded;
    j["diagnostics"] = diagnostics;
    return j.dump(2) + "\n";
}

}  // namespace qaforge
