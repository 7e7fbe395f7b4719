#pragma once

#include <condition_variable>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "htc/index.hpp"
#include "htc/llm.hpp"
#include "htc/paths.hpp"
#include "htc/prompt.hpp"
#include "htc/subgraph.hpp"
#include "htc/taxonomy.hpp"

namespace htc {

struct Document {
  std::string id;
  std::string text;
  std::vector<std::string> gold;  // normalized names, one per level; may be empty
};

enum class ClassifierMode { KgHtc, FullKg, WeakBaseline };

std::string to_string(ClassifierMode mode);
ClassifierMode classifier_mode_from_string(const std::string& name);

enum class MatchKind { Exact, Containment, Fallback };

std::string to_string(MatchKind kind);

struct LevelOutcome {
  int level = 0;
  std::string raw_output;
  LabelId label = -1;
  MatchKind match_kind = MatchKind::Exact;
  std::vector<LabelId> candidates;  // offered, in prompt order
  std::vector<LabelId> retrieved;   // Q^l; empty in weak-baseline
  std::string prompt_hash;
};

struct Prediction {
  std::string doc_id;
  bool failed = false;
  std::string error;
  int subgraph_edges = 0;
  int path_count = 0;
  std::vector<LevelOutcome> levels;
};

struct ClassifierConfig {
  ClassifierMode mode = ClassifierMode::KgHtc;
  RetrievalConfig retrieval;
  PromptTemplate prompt;
  std::string task_description = "the text";
  GenerationConfig generation;
  bool containment_matching = true;
  unsigned fallback_seed = 42;
  int workers = 1;
};

// Candidates offered at one level, in prompt order. Level 1 offers all of
// C^1. Deeper levels in the kg modes offer the children of the previous
// prediction (ascending id) followed by retrieved labels not already present
// (ascending distance); if that union is empty, the whole level. The weak
// baseline always offers the whole level.
std::vector<LabelId> candidate_set_for_level(const Taxonomy& taxonomy, int level,
                                             std::optional<LabelId> previous,
                                             const CandidateSet* retrieved,
                                             ClassifierMode mode);

// Exact / containment matching of a raw model output against the offered
// candidates; no match yields nullopt (the caller then falls back).
std::optional<std::pair<LabelId, MatchKind>> match_output(
    const std::string& raw_output, const std::vector<LabelId>& candidates,
    const Taxonomy& taxonomy, bool containment_enabled);

// Dedicated out-of-space fallback generator (seed 42 by default).
class FallbackSampler {
 public:
  explicit FallbackSampler(unsigned seed) : rng_(seed) {}

  std::size_t draw(std::size_t space_size);

 private:
  std::mt19937 rng_;
};

// Normalize-then-match with random fallback into the full level label space.
std::pair<LabelId, MatchKind> map_output_to_label(
    const std::string& raw_output, const std::vector<LabelId>& candidates,
    const Taxonomy& taxonomy, int level, bool containment_enabled,
    FallbackSampler& fallback);

// Serializes fallback draws into (document index, level) order regardless of
// worker completion timing, so parallel runs reproduce the sequential stream.
// Every (doc, level) slot must be resolved exactly once, via draw() or skip().
class OrderedFallback {
 public:
  OrderedFallback(unsigned seed, std::size_t num_docs, int num_levels);

  std::size_t draw(std::size_t doc_index, int level, std::size_t space_size);
  void skip(std::size_t doc_index, int level);

 private:
  std::size_t slot(std::size_t doc_index, int level) const;
  void advance_locked();

  std::mutex mutex_;
  std::condition_variable cv_;
  std::mt19937 rng_;
  std::vector<char> resolved_;
  std::size_t cursor_ = 0;
  int num_levels_;
};

// Level-wise zero-shot classification over one taxonomy + index + chat
// provider. One engine instance owns the fallback stream of one run.
class ClassifierEngine {
 public:
  // `index` and `embedder` may be null in weak-baseline mode (it never
  // retrieves). `audit`, when set, receives one record per chat call.
  ClassifierEngine(const Taxonomy& taxonomy, const LevelIndex* index,
                   EmbeddingProvider* embedder, ChatProvider& chat,
                   ClassifierConfig config, AuditLog* audit = nullptr);

  // Classifies all documents, in parallel when config.workers > 1. Provider
  // failures mark the document failed without aborting the batch. Output
  // order matches input order.
  std::vector<Prediction> run(const std::vector<Document>& docs);

 private:
  Prediction classify_one(const Document& doc, std::size_t doc_index,
                          OrderedFallback& fallback);

  const Taxonomy& taxonomy_;
  const LevelIndex* index_;
  EmbeddingProvider* embedder_;
  ChatProvider& chat_;
  ClassifierConfig config_;
  AuditLog* audit_;
  std::string full_kg_knowledge_;
  int full_kg_path_count_ = 0;
};

}  // namespace htc
