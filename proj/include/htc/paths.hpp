#pragma once

#include <string>
#include <vector>

#include "htc/subgraph.hpp"
#include "htc/taxonomy.hpp"

namespace htc {

// One root-to-leaf chain: node i sits at level i+1, consecutive nodes are
// parent and child, length equals the taxonomy depth.
struct LabelPath {
  std::vector<LabelId> nodes;

  bool operator==(const LabelPath&) const = default;
};

// All full-depth (level 1..L) chains in G, assembled by walking up from each
// level-L node of G and reversing. Chains that stop short of level 1 are
// dropped. Sorted by node-id sequence; empty G yields the empty set.
std::vector<LabelPath> enumerate_paths(const Subgraph& g, const Taxonomy& taxonomy);

// Every root-to-leaf path of the whole taxonomy (the full-KG ablation input).
std::vector<LabelPath> all_taxonomy_paths(const Taxonomy& taxonomy);

// One path per line, node names joined by " -> ", lines ordered
// lexicographically, no trailing newline.
std::string serialize_paths(const std::vector<LabelPath>& paths,
                            const Taxonomy& taxonomy);

}  // namespace htc
