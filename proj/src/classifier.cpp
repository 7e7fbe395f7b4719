#include "htc/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_set>

#include "htc/errors.hpp"
#include "htc/text.hpp"

namespace htc {

std::string to_string(ClassifierMode mode) {
  switch (mode) {
    case ClassifierMode::KgHtc:
      return "kg-htc";
    case ClassifierMode::FullKg:
      return "full-kg";
    case ClassifierMode::WeakBaseline:
      return "weak-baseline";
  }
  return "unknown";
}

ClassifierMode classifier_mode_from_string(const std::string& name) {
  if (name == "kg-htc") {
    return ClassifierMode::KgHtc;
  }
  if (name == "full-kg") {
    return ClassifierMode::FullKg;
  }
  if (name == "weak-baseline") {
    return ClassifierMode::WeakBaseline;
  }
  throw ConfigError("unknown classifier mode '" + name + "'");
}

std::string to_string(MatchKind kind) {
  switch (kind) {
    case MatchKind::Exact:
      return "exact";
    case MatchKind::Containment:
      return "containment";
    case MatchKind::Fallback:
      return "fallback";
  }
  return "unknown";
}

std::vector<LabelId> candidate_set_for_level(const Taxonomy& taxonomy, int level,
                                             std::optional<LabelId> previous,
                                             const CandidateSet* retrieved,
                                             ClassifierMode mode) {
  const auto& whole_level = taxonomy.labels_at_level(level);
  if (mode == ClassifierMode::WeakBaseline || level == 1) {
    return whole_level;
  }
  if (!previous) {
    throw Error("candidate_set_for_level at level " + std::to_string(level) +
                " needs the previous prediction");
  }

  std::vector<LabelId> out = taxonomy.children(*previous);
  std::unordered_set<LabelId> seen(out.begin(), out.end());
  if (retrieved != nullptr) {
    for (const auto& c : retrieved->members) {
      if (seen.insert(c.id).second) {
        out.push_back(c.id);
      }
    }
  }
  if (out.empty()) {
    return whole_level;
  }
  return out;
}

std::optional<std::pair<LabelId, MatchKind>> match_output(
    const std::string& raw_output, const std::vector<LabelId>& candidates,
    const Taxonomy& taxonomy, bool containment_enabled) {
  const std::string norm = normalize_name(raw_output);
  for (LabelId id : candidates) {
    if (taxonomy.name(id) == norm) {
      return std::make_pair(id, MatchKind::Exact);
    }
  }
  if (containment_enabled && !norm.empty()) {
    std::optional<LabelId> hit;
    int hits = 0;
    for (LabelId id : candidates) {
      const std::string& name = taxonomy.name(id);
      if (norm.find(name) != std::string::npos ||
          name.find(norm) != std::string::npos) {
        ++hits;
        hit = id;
      }
    }
    if (hits == 1) {
      return std::make_pair(*hit, MatchKind::Containment);
    }
  }
  return std::nullopt;
}

std::size_t FallbackSampler::draw(std::size_t space_size) {
  if (space_size == 0) {
    throw Error("fallback draw over an empty label space");
  }
  std::uniform_int_distribution<std::size_t> dist(0, space_size - 1);
  return dist(rng_);
}

std::pair<LabelId, MatchKind> map_output_to_label(
    const std::string& raw_output, const std::vector<LabelId>& candidates,
    const Taxonomy& taxonomy, int level, bool containment_enabled,
    FallbackSampler& fallback) {
  if (candidates.empty()) {
    throw NoCandidates("map_output_to_label with no candidates");
  }
  if (auto matched = match_output(raw_output, candidates, taxonomy,
                                  containment_enabled)) {
    return *matched;
  }
  const auto& space = taxonomy.labels_at_level(level);
  return {space[fallback.draw(space.size())], MatchKind::Fallback};
}

OrderedFallback::OrderedFallback(unsigned seed, std::size_t num_docs,
                                 int num_levels)
    : rng_(seed),
      resolved_(num_docs * static_cast<std::size_t>(num_levels), 0),
      num_levels_(num_levels) {}

std::size_t OrderedFallback::slot(std::size_t doc_index, int level) const {
  return doc_index * static_cast<std::size_t>(num_levels_) +
         static_cast<std::size_t>(level - 1);
}

void OrderedFallback::advance_locked() {
  while (cursor_ < resolved_.size() && resolved_[cursor_] != 0) {
    ++cursor_;
  }
}

std::size_t OrderedFallback::draw(std::size_t doc_index, int level,
                                  std::size_t space_size) {
  if (space_size == 0) {
    throw Error("fallback draw over an empty label space");
  }
  std::unique_lock lock(mutex_);
  const std::size_t s = slot(doc_index, level);
  cv_.wait(lock, [&] { return cursor_ == s; });
  std::uniform_int_distribution<std::size_t> dist(0, space_size - 1);
  const std::size_t value = dist(rng_);
  resolved_[s] = 1;
  advance_locked();
  cv_.notify_all();
  return value;
}

void OrderedFallback::skip(std::size_t doc_index, int level) {
  std::lock_guard lock(mutex_);
  resolved_[slot(doc_index, level)] = 1;
  advance_locked();
  cv_.notify_all();
}

ClassifierEngine::ClassifierEngine(const Taxonomy& taxonomy,
                                   const LevelIndex* index,
                                   EmbeddingProvider* embedder,
                                   ChatProvider& chat, ClassifierConfig config,
                                   AuditLog* audit)
    : taxonomy_(taxonomy),
      index_(index),
      embedder_(embedder),
      chat_(chat),
      config_(std::move(config)),
      audit_(audit) {
  config_.generation.validate();
  const bool needs_retrieval = config_.mode != ClassifierMode::WeakBaseline;
  if (needs_retrieval) {
    if (index_ == nullptr || !index_->built()) {
      throw IndexNotBuilt(to_string(config_.mode) + " mode needs a built index");
    }
    if (embedder_ == nullptr) {
      throw ConfigError(to_string(config_.mode) + " mode needs an embedding provider");
    }
    config_.retrieval.validate(taxonomy_);
  }
  if (config_.mode == ClassifierMode::FullKg) {
    const auto paths = all_taxonomy_paths(taxonomy_);
    full_kg_path_count_ = static_cast<int>(paths.size());
    full_kg_knowledge_ = serialize_paths(paths, taxonomy_);
  }
}

Prediction ClassifierEngine::classify_one(const Document& doc,
                                          std::size_t doc_index,
                                          OrderedFallback& fallback) {
  const int depth = taxonomy_.depth();
  Prediction prediction;
  prediction.doc_id = doc.id;

  int next_level = 1;
  try {
    std::vector<CandidateSet> retrieved;
    std::string knowledge;
    if (config_.mode == ClassifierMode::KgHtc) {
      const Embedding x = embedder_->embed(doc.text);
      retrieved = retrieve_all_levels(*index_, x, config_.retrieval);
      const Subgraph g = build_subgraph(taxonomy_, retrieved);
      const auto paths = enumerate_paths(g, taxonomy_);
      prediction.subgraph_edges = static_cast<int>(g.edges.size());
      prediction.path_count = static_cast<int>(paths.size());
      knowledge = serialize_paths(paths, taxonomy_);
    } else if (config_.mode == ClassifierMode::FullKg) {
      const Embedding x = embedder_->embed(doc.text);
      retrieved = retrieve_all_levels(*index_, x, config_.retrieval);
      prediction.path_count = full_kg_path_count_;
      knowledge = full_kg_knowledge_;
    }

    std::optional<LabelId> previous;
    for (int level = 1; level <= depth; ++level) {
      next_level = level;
      const CandidateSet* level_retrieved =
          retrieved.empty() ? nullptr : &retrieved[static_cast<std::size_t>(level - 1)];
      const auto candidates = candidate_set_for_level(taxonomy_, level, previous,
                                                      level_retrieved, config_.mode);
      const auto bundle = build_prompt(config_.prompt, config_.task_description,
                                       candidates, taxonomy_, knowledge);

      const auto start = std::chrono::steady_clock::now();
      ChatExchange exchange =
          chat_.complete(bundle.text, doc.text, config_.generation);
      exchange.latency = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start);
      if (audit_ != nullptr) {
        audit_->append(doc.id, level, exchange);
      }

      LevelOutcome outcome;
      outcome.level = level;
      outcome.raw_output = exchange.response_text;
      outcome.candidates = candidates;
      if (level_retrieved != nullptr) {
        outcome.retrieved = level_retrieved->ids();
      }
      outcome.prompt_hash = hex64(fnv1a64(bundle.text));

      if (auto matched = match_output(exchange.response_text, candidates,
                                      taxonomy_, config_.containment_matching)) {
        fallback.skip(doc_index, level);
        outcome.label = matched->first;
        outcome.match_kind = matched->second;
      } else {
        const auto& space = taxonomy_.labels_at_level(level);
        const std::size_t idx = fallback.draw(doc_index, level, space.size());
        outcome.label = space[idx];
        outcome.match_kind = MatchKind::Fallback;
      }
      previous = outcome.label;
      prediction.levels.push_back(std::move(outcome));
      next_level = level + 1;
    }
  } catch (const ProviderError& e) {
    prediction.failed = true;
    prediction.error = e.what();
  } catch (const EmptyText& e) {
    prediction.failed = true;
    prediction.error = e.what();
  }

  // Unreached levels still hold fallback slots; release them so later
  // documents' draws stay in order.
  if (prediction.failed) {
    for (int level = next_level; level <= depth; ++level) {
      fallback.skip(doc_index, level);
    }
  }
  return prediction;
}

std::vector<Prediction> ClassifierEngine::run(const std::vector<Document>& docs) {
  OrderedFallback fallback(config_.fallback_seed, docs.size(), taxonomy_.depth());
  std::vector<Prediction> out(docs.size());

  const int workers = std::max(1, config_.workers);
  if (workers == 1 || docs.size() <= 1) {
    for (std::size_t i = 0; i < docs.size(); ++i) {
      out[i] = classify_one(docs[i], i, fallback);
    }
    return out;
  }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= docs.size()) {
        return;
      }
      out[i] = classify_one(docs[i], i, fallback);
    }
  };
  std::vector<std::thread> pool;
  const int n = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(workers), docs.size()));
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    pool.emplace_back(work);
  }
  for (auto& t : pool) {
    t.join();
  }
  return out;
}

}  // namespace htc
