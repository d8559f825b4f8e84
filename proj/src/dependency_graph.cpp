#include "qaforge/dependency_graph.h"

#include <algorithm>
#include <set>

namespace qaforge {

std::string entity_of_path(const std::string& path) {
    std::string entity = path;
    size_t dot = entity.find_last_of('.');
    size_t slash = entity.find_last_of('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) entity.erase(dot);
    std::replace(entity.begin(), entity.end(), '/', '.');
    return entity;
}

DependencyGraph extract_dependencies(const Corpus& corpus) {
    std::set<std::string> nodes;
    std::map<std::pair<std::string, std::string>, std::vector<Location>> edges;
    for (const auto& file : corpus.files) {
        std::string from = entity_of_path(file.path);
        nodes.insert(from);
        for (const auto& imp : file.imports) {
            std::string to = imp.target;
            std::replace(to.begin(), to.end(), '/', '.');
            if (to.empty() || to == from) continue;
            nodes.insert(to);
            edges[{from, to}].push_back({file.path, imp.line});
        }
    }
    DependencyGraph graph;
    graph.nodes.assign(nodes.begin(), nodes.end());
    for (auto& [key, locations] : edges) {
        std::sort(locations.begin(), locations.end(), [](const Location& a, const Location& b) {
            return std::tie(a.path, a.line) < std::tie(b.path, b.line);
        });
        graph.edges.push_back({key.first, key.second, EdgeKind::Import, std::move(locations)});
    }
    return graph;
}

}  // namespace qaforge
