#pragma once

#include <utility>
#include <vector>

#include "htc/index.hpp"
#include "htc/taxonomy.hpp"

namespace htc {

// Per-document fragment of the taxonomy: the parent-child edges whose
// endpoints both survived retrieval. Nodes are exactly the edge endpoints.
// Canonically ordered (ascending) so identical inputs compare equal.
struct Subgraph {
  std::vector<LabelId> nodes;
  std::vector<std::pair<LabelId, LabelId>> edges;  // (parent, child)

  bool empty() const { return edges.empty(); }
  bool has_node(LabelId id) const;
};

// Q^1..Q^L for one query embedding.
std::vector<CandidateSet> retrieve_all_levels(const LevelIndex& index,
                                              const Embedding& x,
                                              const RetrievalConfig& config);

// Keeps each taxonomy edge (parent, child) with child in Q^child.level and
// parent in Q^{child.level - 1}; set semantics deduplicate repeats.
Subgraph build_subgraph(const Taxonomy& taxonomy,
                        const std::vector<CandidateSet>& candidates);

Subgraph retrieve_subgraph(const Taxonomy& taxonomy, const LevelIndex& index,
                           const Embedding& x, const RetrievalConfig& config);

}  // namespace htc
