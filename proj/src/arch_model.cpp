#include "qaforge/arch_model.h"

#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

using nlohmann::json;

namespace qaforge {

Policy policy_from_name(const std::string& name) {
    if (name == "allow") return Policy::Allow;
    if (name == "tolerate") return Policy::Tolerate;
    if (name == "deny") return Policy::Deny;
    throw FatalError("unknown policy: " + name);
}

std::string policy_name(Policy p) {
    switch (p) {
        case Policy::Allow: return "allow";
        case Policy::Tolerate: return "tolerate";
        case Policy::Deny: return "deny";
    }
    return "deny";
}

void ArchitectureModel::finalize() {
    index.clear();
    std::vector<std::string> errors;

    // Depth-first walk; components must have globally unique names.
    struct Frame {
        const Component* component;
        std::string parent;
        int depth;
    };
    std::vector<Frame> stack;
    for (const auto& c : components) stack.push_back({&c, "", 0});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.component->name.empty()) {
            errors.push_back("component with empty name");
            continue;
        }
        ComponentInfo info{f.component->maps, f.component->layer_rank, f.component->common, f.parent, f.depth};
        if (!index.emplace(f.component->name, std::move(info)).second)
            errors.push_back("duplicate component name '" + f.component->name + "'");
        for (const auto& pattern : f.component->maps) {
            try {
                std::regex re(pattern);
            } catch (const std::regex_error& e) {
                errors.push_back("component '" + f.component->name + "' mapping pattern '" + pattern +
                                 "' does not compile: " + e.what());
            }
        }
        for (const auto& child : f.component->contains)
            stack.push_back({&child, f.component->name, f.depth + 1});
    }

    for (const auto& r : rules) {
        if (!index.count(r.from)) errors.push_back("rule references unknown component '" + r.from + "'");
        if (!index.count(r.to)) errors.push_back("rule references unknown component '" + r.to + "'");
    }
    for (const auto& pattern : exclude) {
        try {
            std::regex re(pattern);
        } catch (const std::regex_error& e) {
            errors.push_back("exclusion pattern '" + pattern + "' does not compile: " + e.what());
        }
    }

    if (!errors.empty()) {
        std::string msg = "invalid architecture model:";
        for (const auto& e : errors) msg += "\n  - " + e;
        throw FatalError(msg);
    }
}

bool ArchitectureModel::within(const std::string& name, const std::string& ancestor) const {
    std::string cur = name;
    while (true) {
        if (cur == ancestor) return true;
        auto it = index.find(cur);
        if (it == index.end() || it->second.parent.empty()) return false;
        cur = it->second.parent;
    }
}

namespace {

Component component_from_json(const json& j) {
    Component c;
    c.name = j.value("name", "");
    if (j.contains("maps"))
        for (const auto& m : j.at("maps")) c.maps.push_back(m.get<std::string>());
    if (j.contains("layer_rank")) c.layer_rank = j.at("layer_rank").get<int>();
    c.common = j.value("common", false);
    if (j.contains("contains"))
        for (const auto& child : j.at("contains")) c.contains.push_back(component_from_json(child));
    return c;
}

}  // namespace

ArchitectureModel architecture_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FatalError(std::string("architecture model is not valid JSON: ") + e.what());
    }
    if (j.value("schema", "archmodel.v1") != "archmodel.v1")
        throw FatalError("architecture model has unknown schema '" + j.value("schema", "") + "'");
    ArchitectureModel model;
    if (j.contains("components"))
        for (const auto& c : j.at("components")) model.components.push_back(component_from_json(c));
    if (j.contains("rules"))
        for (const auto& r : j.at("rules"))
            model.rules.push_back({r.at("from").get<std::string>(), r.at("to").get<std::string>(),
                                   policy_from_name(r.value("policy", "allow"))});
    model.default_policy = policy_from_name(j.value("default_policy", "deny"));
    if (j.contains("exclude"))
        for (const auto& e : j.at("exclude")) model.exclude.push_back(e.get<std::string>());
    model.finalize();
    return model;
}

ArchitectureModel parse_architecture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FatalError("architecture model not readable: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return architecture_from_json_text(ss.str());
}

}  // namespace qaforge
