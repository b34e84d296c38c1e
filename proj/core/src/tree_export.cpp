#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"
#include "xmap/preimage.hpp"

namespace xmap {

namespace {

using NodeIndex = std::map<std::uint64_t, const PreimageNode*>;

[[noreturn]] void reject(std::uint64_t value, const std::string& why) {
  throw TreeError("invalid tree node " + std::to_string(value) + ": " + why);
}

NodeIndex validate(const std::vector<PreimageNode>& nodes) {
  NodeIndex index;
  for (const auto& node : nodes) {
    if (!index.emplace(node.value, &node).second) reject(node.value, "duplicate value");
  }

  for (const auto& node : nodes) {
    switch (node.kind) {
      case EdgeKind::CycleSeed:
        if (node.parent) reject(node.value, "cycle seed with a parent");
        if (!in_fundamental_cycle(static_cast<std::int64_t>(node.value))) {
          reject(node.value, "cycle seed outside {2,3,5,9}");
        }
        break;
      case EdgeKind::PrimeHalf:
        if (!node.parent || *node.parent != 2 * node.value - 1) {
          reject(node.value, "prime-half node must have parent 2*value-1");
        }
        break;
      case EdgeKind::BiprimePair:
        if (!node.parent) reject(node.value, "biprime node without parent");
        if (node.k == node.j || node.k % 2 == 0 || node.j % 2 == 0) {
          reject(node.value, "biprime factors must be distinct and odd");
        }
        if (static_cast<unsigned __int128>(node.k) * node.j != node.value ||
            node.k + node.j != *node.parent + 1) {
          reject(node.value, "biprime factors inconsistent with value/parent");
        }
        break;
    }
    for (std::uint64_t child : node.children) {
      auto it = index.find(child);
      if (it == index.end()) reject(node.value, "child " + std::to_string(child) + " missing");
      if (it->second->parent != node.value) {
        reject(node.value, "child " + std::to_string(child) + " has another parent");
      }
    }
    if (node.parent) {
      auto it = index.find(*node.parent);
      if (it != index.end()) {
        const auto& siblings = it->second->children;
        if (std::find(siblings.begin(), siblings.end(), node.value) == siblings.end()) {
          reject(node.value, "not listed among its parent's children");
        }
      }
    }
  }

  // Everything must hang under a root; anything else sits on a cycle.
  std::size_t reached = 0;
  std::vector<const PreimageNode*> stack;
  for (const auto& [value, node] : index) {
    if (!node->parent || !index.contains(*node->parent)) stack.push_back(node);
  }
  while (!stack.empty()) {
    const PreimageNode* node = stack.back();
    stack.pop_back();
    ++reached;
    for (std::uint64_t child : node->children) stack.push_back(index.at(child));
  }
  if (reached != index.size()) {
    throw TreeError("node set contains a cycle outside the seeds");
  }
  return index;
}

bool is_root(const PreimageNode& node, const NodeIndex& index) {
  return !node.parent || !index.contains(*node.parent);
}

std::string to_dot(const NodeIndex& index) {
  std::ostringstream os;
  os << "digraph survivors {\n";
  for (const auto& [value, node] : index) {
    os << "  " << value;
    if (node->kind == EdgeKind::CycleSeed) os << " [shape=doublecircle]";
    os << ";\n";
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  for (const auto& [value, node] : index) {
    if (node->parent && index.contains(*node->parent)) {
      edges.emplace_back(value, *node->parent);
    }
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& [child, parent] : edges) {
    os << "  " << child << " -> " << parent << ";\n";
  }
  os << "}\n";
  return os.str();
}

nlohmann::ordered_json to_json_node(const PreimageNode& node, const NodeIndex& index) {
  nlohmann::ordered_json j;
  j["value"] = node.value;
  j["edge_kind"] = to_string(node.kind);
  if (node.kind == EdgeKind::BiprimePair) j["factors"] = {node.k, node.j};
  std::vector<std::uint64_t> children = node.children;
  std::sort(children.begin(), children.end());
  auto arr = nlohmann::ordered_json::array();
  for (std::uint64_t c : children) arr.push_back(to_json_node(*index.at(c), index));
  j["children"] = std::move(arr);
  return j;
}

}  // namespace

std::string export_tree(const std::vector<PreimageNode>& nodes, TreeFormat format) {
  const NodeIndex index = validate(nodes);
  if (format == TreeFormat::Dot) return to_dot(index);

  auto roots = nlohmann::ordered_json::array();
  for (const auto& [value, node] : index) {
    if (is_root(*node, index)) roots.push_back(to_json_node(*node, index));
  }
  nlohmann::ordered_json doc;
  doc["roots"] = std::move(roots);
  return doc.dump(1) + "\n";
}

}  // namespace xmap
