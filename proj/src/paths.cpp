#include "htc/paths.hpp"

#include <algorithm>
#include <set>

namespace htc {

namespace {

std::vector<LabelPath> sorted_unique(std::vector<LabelPath> paths) {
  std::sort(paths.begin(), paths.end(),
            [](const LabelPath& a, const LabelPath& b) { return a.nodes < b.nodes; });
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
  return paths;
}

}  // namespace

std::vector<LabelPath> enumerate_paths(const Subgraph& g, const Taxonomy& taxonomy) {
  const int depth = taxonomy.depth();
  std::vector<LabelPath> paths;
  if (depth < 2 || g.empty()) {
    return paths;
  }

  std::set<std::pair<LabelId, LabelId>> edges(g.edges.begin(), g.edges.end());
  for (LabelId node : g.nodes) {
    if (taxonomy.label(node).level != depth) {
      continue;
    }
    // A node has at most one parent, so the upward chain is unique; it is a
    // path iff every hop's edge survived into G.
    std::vector<LabelId> chain{node};
    LabelId cur = node;
    bool complete = true;
    for (int l = depth; l > 1; --l) {
      const auto parent = taxonomy.parent(cur);
      if (!parent || edges.count({*parent, cur}) == 0) {
        complete = false;
        break;
      }
      chain.push_back(*parent);
      cur = *parent;
    }
    if (complete) {
      std::reverse(chain.begin(), chain.end());
      paths.push_back(LabelPath{std::move(chain)});
    }
  }
  return sorted_unique(std::move(paths));
}

std::vector<LabelPath> all_taxonomy_paths(const Taxonomy& taxonomy) {
  const int depth = taxonomy.depth();
  std::vector<LabelPath> paths;
  if (depth < 1) {
    return paths;
  }
  for (LabelId leaf : taxonomy.labels_at_level(depth)) {
    std::vector<LabelId> chain;
    chain.reserve(static_cast<std::size_t>(depth));
    LabelId cur = leaf;
    chain.push_back(cur);
    while (auto parent = taxonomy.parent(cur)) {
      chain.push_back(*parent);
      cur = *parent;
    }
    std::reverse(chain.begin(), chain.end());
    paths.push_back(LabelPath{std::move(chain)});
  }
  return sorted_unique(std::move(paths));
}

std::string serialize_paths(const std::vector<LabelPath>& paths,
                            const Taxonomy& taxonomy) {
  std::vector<std::string> lines;
  lines.reserve(paths.size());
  for (const auto& path : paths) {
    std::string line;
    for (std::size_t i = 0; i < path.nodes.size(); ++i) {
      if (i > 0) {
        line += " -> ";
      }
      line += taxonomy.name(path.nodes[i]);
    }
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) {
      out += '\n';
    }
    out += lines[i];
  }
  return out;
}

}  // namespace htc
