#include "htc/subgraph.hpp"

#include <algorithm>
#include <set>

namespace htc {

bool Subgraph::has_node(LabelId id) const {
  return std::binary_search(nodes.begin(), nodes.end(), id);
}

std::vector<CandidateSet> retrieve_all_levels(const LevelIndex& index,
                                              const Embedding& x,
                                              const RetrievalConfig& config) {
  std::vector<CandidateSet> out;
  out.reserve(static_cast<std::size_t>(index.depth()));
  for (int l = 1; l <= index.depth(); ++l) {
    out.push_back(index.query(x, l, config));
  }
  return out;
}

Subgraph build_subgraph(const Taxonomy& taxonomy,
                        const std::vector<CandidateSet>& candidates) {
  std::vector<std::set<LabelId>> retrieved(candidates.size() + 1);
  for (const auto& set : candidates) {
    for (const auto& c : set.members) {
      retrieved[static_cast<std::size_t>(set.level)].insert(c.id);
    }
  }

  std::set<std::pair<LabelId, LabelId>> edges;
  std::set<LabelId> nodes;
  const int max_level = static_cast<int>(retrieved.size()) - 1;
  for (int l = 2; l <= max_level; ++l) {
    for (LabelId child : retrieved[static_cast<std::size_t>(l)]) {
      const auto parent = taxonomy.parent(child);
      if (parent && retrieved[static_cast<std::size_t>(l - 1)].count(*parent) > 0) {
        edges.emplace(*parent, child);
        nodes.insert(*parent);
        nodes.insert(child);
      }
    }
  }

  Subgraph g;
  g.nodes.assign(nodes.begin(), nodes.end());
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

Subgraph retrieve_subgraph(const Taxonomy& taxonomy, const LevelIndex& index,
                           const Embedding& x, const RetrievalConfig& config) {
  return build_subgraph(taxonomy, retrieve_all_levels(index, x, config));
}

}  // namespace htc
