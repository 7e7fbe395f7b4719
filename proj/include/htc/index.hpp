#pragma once

#include <map>
#include <vector>

#include "htc/embedding.hpp"
#include "htc/taxonomy.hpp"

namespace htc {

enum class RetrievalMode { TopK, Threshold };

// Per-level retrieval knobs. Threshold mode keeps labels with cosine distance
// <= tau_l; top-k keeps the k nearest. Levels without an explicit k fall back
// to published defaults (level 1: whole level; level 2: 10 for depth-3
// taxonomies, 20 for depth-2; level 3 and deeper: 40).
struct RetrievalConfig {
  RetrievalMode mode = RetrievalMode::TopK;
  std::map<int, double> tau_per_level;
  std::map<int, int> k_per_level;

  static RetrievalConfig defaults_for(const Taxonomy& taxonomy);

  // Throws ConfigError on k < 1 or tau outside [0, 2], or when the active
  // mode has no value for a level in [1, depth].
  void validate(const Taxonomy& taxonomy) const;

  int k_at(int level) const;
  double tau_at(int level) const;
};

struct Candidate {
  LabelId id = -1;
  double distance = 0.0;
};

// Retrieved labels Q^l, ascending by distance; ties by ascending label id.
struct CandidateSet {
  int level = 0;
  std::vector<Candidate> members;

  bool contains(LabelId id) const;
  std::vector<LabelId> ids() const;
};

// Exact per-level vector index over label-name embeddings. No approximation:
// queries are full linear scans, which is cheap for label spaces of at most a
// few hundred entries per level and keeps results testable against a
// sort-scan oracle. Immutable after build.
class LevelIndex {
 public:
  LevelIndex() = default;

  // Embeds every label name through `provider` (wrap it in a CachingProvider
  // to make partial builds resumable). `workers` > 1 fans the provider calls
  // out over that many threads.
  static LevelIndex build(const Taxonomy& taxonomy, EmbeddingProvider& provider,
                          int workers = 1);

  CandidateSet query(const Embedding& x, int level,
                     const RetrievalConfig& config) const;

  bool built() const { return !per_level_.empty(); }
  int depth() const { return static_cast<int>(per_level_.size()); }
  std::size_t dim() const { return dim_; }
  std::size_t total_entries() const;
  const Embedding& label_embedding(LabelId id) const;

 private:
  struct Entry {
    LabelId id = -1;
    Embedding vec;
  };

  std::vector<std::vector<Entry>> per_level_;
  std::vector<const Embedding*> by_id_;
  std::size_t dim_ = 0;
};

}  // namespace htc
