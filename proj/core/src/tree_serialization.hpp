#pragma once

#include <json.hpp>

#include "frauddet/decision_tree.hpp"

namespace frauddet {

inline nlohmann::json tree_to_json(const DecisionTree& tree) {
    nlohmann::json j;
    auto& feature = j["feature"] = nlohmann::json::array();
    auto& threshold = j["threshold"] = nlohmann::json::array();
    auto& left = j["left"] = nlohmann::json::array();
    auto& right = j["right"] = nlohmann::json::array();
    auto& value = j["value"] = nlohmann::json::array();
    for (const TreeNode& n : tree.nodes) {
        feature.push_back(n.feature);
        threshold.push_back(n.threshold);
        left.push_back(n.left);
        right.push_back(n.right);
        value.push_back(n.value);
    }
    return j;
}

inline DecisionTree tree_from_json(const nlohmann::json& j) {
    DecisionTree tree;
    const std::size_t count = j["feature"].size();
    tree.nodes.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        tree.nodes[i].feature = j["feature"][i].get<int>();
        tree.nodes[i].threshold = j["threshold"][i].get<double>();
        tree.nodes[i].left = j["left"][i].get<std::int32_t>();
        tree.nodes[i].right = j["right"][i].get<std::int32_t>();
        tree.nodes[i].value = j["value"][i].get<double>();
    }
    return tree;
}

}  // namespace frauddet
