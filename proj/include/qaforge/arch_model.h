#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaforge/profile.h"

namespace qaforge {

enum class Policy {
    Allow,
    Tolerate,
    Deny,
};

Policy policy_from_name(const std::string& name);
std::string policy_name(Policy p);

struct Component {
    std::string name;
    std::vector<std::string> maps;  // regex patterns over entity names
    std::optional<int> layer_rank;
    bool common = false;
    std::vector<Component> contains;
};

struct Rule {
    std::string from;
    std::string to;
    Policy policy = Policy::Allow;
};

// Hierarchical reflexion model: components with mapping patterns plus the
// dependency rules between them.
struct ArchitectureModel {
    std::vector<Component> components;
    std::vector<Rule> rules;
    Policy default_policy = Policy::Deny;
    std::vector<std::string> exclude;  // entity patterns dropped before mapping

    // Flattened view, filled by finalize().
    struct ComponentInfo {
        std::vector<std::string> maps;
        std::optional<int> layer_rank;
        bool common = false;
        std::string parent;  // empty at roots
        int depth = 0;
    };
    std::map<std::string, ComponentInfo> index;

    void finalize();  // builds index, validates; throws FatalError with all errors
    bool has_component(const std::string& name) const { return index.count(name) > 0; }
    int depth_of(const std::string& name) const { return index.at(name).depth; }
    // True when `name` equals ancestor or lies in its subtree.
    bool within(const std::string& name, const std::string& ancestor) const;
};

// archmodel.v1
ArchitectureModel parse_architecture(const std::string& path);
ArchitectureModel architecture_from_json_text(const std::string& text);

}  // namespace qaforge
