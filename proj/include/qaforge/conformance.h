#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qaforge/arch_model.h"
#include "qaforge/dependency_graph.h"

namespace qaforge {

// Entities that match no component map to this pseudo-component; their edges
// can never be allowed by rules and therefore surface as violations.
inline constexpr const char* kUnmappedComponent = "<unmapped>";

struct MappedGraph {
    DependencyGraph graph;                          // excluded entities already dropped
    std::map<std::string, std::string> component_of;  // entity -> component (or pseudo)
    std::vector<std::string> unmapped;
    std::vector<std::string> excluded;
};

// Maps each entity to the deepest matching component. Overlapping sibling
// patterns are a model defect and fatal; matching both a parent and its
// child resolves to the child.
MappedGraph map_entities(const DependencyGraph& graph, const ArchitectureModel& model);

enum class DefectClass {
    LayerCircumvention,
    CircularDependency,
    UndocumentedCommonUse,
    Other,
};

std::string defect_class_name(DefectClass d);

enum class PolicyFound {
    Deny,       // an explicit deny rule matched
    Unmatched,  // no rule matched, default policy denied the edge
};

struct Violation {
    std::string from_entity;
    std::string to_entity;
    std::string from_component;
    std::string to_component;
    PolicyFound policy_found = PolicyFound::Unmatched;
    DefectClass defect_class = DefectClass::Other;
    std::vector<Location> locations;
};

struct ToleratedEdge {
    std::string from_entity;
    std::string to_entity;
    std::string from_component;
    std::string to_component;
};

struct ConformanceResult {
    std::vector<Violation> violations;  // entity level, sorted
    std::vector<ToleratedEdge> tolerated;
    long long allowed_edges = 0;
    long long intra_component_edges = 0;
    // Distinct violating component pairs, the component-level view.
    std::vector<std::pair<std::string, std::string>> component_pairs;
};

// Evaluates every inter-component edge: the most specific matching rule
// wins, otherwise the model's default policy applies. Intra-component edges
// are always allowed; tolerated edges are reported but are not violations.
ConformanceResult check_conformance(const MappedGraph& mapped, const ArchitectureModel& model);

// Component-level dependency graph of a mapped corpus (inter-component
// edges only).
std::map<std::string, std::set<std::string>> component_graph(const MappedGraph& mapped);

// Strongly connected components of size >= 2 plus single nodes carrying a
// self-edge, each reported as one cycle (members sorted; cycles sorted).
std::vector<std::vector<std::string>> detect_cycles(const std::map<std::string, std::set<std::string>>& graph);

// First match in this order: layer circumvention (both ranks known, two or
// more layers skipped downward), circular dependency (edge inside a cycle),
// undocumented use of a common component, otherwise other.
DefectClass classify_violation(const Violation& v, const ArchitectureModel& model,
                               const std::vector<std::vector<std::string>>& cycles);

// archreport.v1
std::string arch_report_json(const std::string& version_label, const ArchitectureModel& model,
                             const MappedGraph& mapped, const ConformanceResult& result,
                             const std::vector<std::vector<std::string>>& cycles);

}  // namespace qaforge
