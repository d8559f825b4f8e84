#pragma once

#include <map>
#include <string>
#include <vector>

#include "qaforge/source_model.h"

namespace qaforge {

struct Location {
    std::string path;
    int line = 0;
};

enum class EdgeKind {
    Import,
    Reference,
};

struct Edge {
    std::string from;
    std::string to;
    EdgeKind kind = EdgeKind::Import;
    std::vector<Location> locations;
};

struct DependencyGraph {
    std::vector<std::string> nodes;  // sorted, unique
    std::vector<Edge> edges;         // sorted by (from, to), one per entity pair
};

// Entity name of a source file: relative path, separators to dots, extension
// dropped ("ui/login.src" -> "ui.login").
std::string entity_of_path(const std::string& path);

// Builds the entity graph from the import references collected at corpus
// load time: one edge per distinct (from, to) pair carrying every match
// location. Files without imports contribute isolated nodes. Self-loops are
// dropped.
DependencyGraph extract_dependencies(const Corpus& corpus);

}  // namespace qaforge
