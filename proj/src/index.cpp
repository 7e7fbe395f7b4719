#include "htc/index.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "htc/errors.hpp"

namespace htc {

RetrievalConfig RetrievalConfig::defaults_for(const Taxonomy& taxonomy) {
  RetrievalConfig config;
  config.mode = RetrievalMode::TopK;
  const int depth = taxonomy.depth();
  for (int l = 1; l <= depth; ++l) {
    int k;
    if (l == 1) {
      k = static_cast<int>(taxonomy.labels_at_level(1).size());
    } else if (l == 2) {
      k = depth == 2 ? 20 : 10;
    } else {
      k = 40;
    }
    config.k_per_level[l] = k;
  }
  return config;
}

void RetrievalConfig::validate(const Taxonomy& taxonomy) const {
  for (int l = 1; l <= taxonomy.depth(); ++l) {
    if (mode == RetrievalMode::TopK) {
      auto it = k_per_level.find(l);
      if (it == k_per_level.end()) {
        throw ConfigError("top-k retrieval has no k for level " + std::to_string(l));
      }
      if (it->second < 1) {
        throw ConfigError("k must be >= 1 at level " + std::to_string(l) +
                          ", got " + std::to_string(it->second));
      }
    } else {
      auto it = tau_per_level.find(l);
      if (it == tau_per_level.end()) {
        throw ConfigError("threshold retrieval has no tau for level " +
                          std::to_string(l));
      }
      if (it->second < 0.0 || it->second > 2.0) {
        throw ConfigError("tau must lie in [0, 2] at level " + std::to_string(l));
      }
    }
  }
}

int RetrievalConfig::k_at(int level) const {
  auto it = k_per_level.find(level);
  if (it == k_per_level.end()) {
    throw ConfigError("no k configured for level " + std::to_string(level));
  }
  return it->second;
}

double RetrievalConfig::tau_at(int level) const {
  auto it = tau_per_level.find(level);
  if (it == tau_per_level.end()) {
    throw ConfigError("no tau configured for level " + std::to_string(level));
  }
  return it->second;
}

bool CandidateSet::contains(LabelId id) const {
  return std::any_of(members.begin(), members.end(),
                     [id](const Candidate& c) { return c.id == id; });
}

std::vector<LabelId> CandidateSet::ids() const {
  std::vector<LabelId> out;
  out.reserve(members.size());
  for (const auto& c : members) {
    out.push_back(c.id);
  }
  return out;
}

LevelIndex LevelIndex::build(const Taxonomy& taxonomy, EmbeddingProvider& provider,
                             int workers) {
  LevelIndex index;
  index.dim_ = provider.dim();
  index.per_level_.resize(static_cast<std::size_t>(taxonomy.depth()));

  std::vector<LabelId> all;
  all.reserve(taxonomy.size());
  for (int l = 1; l <= taxonomy.depth(); ++l) {
    for (LabelId id : taxonomy.labels_at_level(l)) {
      all.push_back(id);
    }
  }

  std::vector<Embedding> vecs(all.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < all.size(); ++i) {
      vecs[i] = provider.embed(taxonomy.name(all[i]));
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto work = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= all.size()) {
          return;
        }
        try {
          vecs[i] = provider.embed(taxonomy.name(all[i]));
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) {
            first_error = std::current_exception();
          }
          next.store(all.size());
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(workers, static_cast<int>(all.size()));
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      pool.emplace_back(work);
    }
    for (auto& t : pool) {
      t.join();
    }
    if (first_error) {
      std::rethrow_exception(first_error);
    }
  }

  index.by_id_.resize(taxonomy.size(), nullptr);
  for (std::size_t i = 0; i < all.size(); ++i) {
    validate_embedding(vecs[i], index.dim_);
    const LabelId id = all[i];
    auto& bucket = index.per_level_[static_cast<std::size_t>(taxonomy.label(id).level - 1)];
    bucket.push_back(Entry{id, std::move(vecs[i])});
  }
  for (auto& level : index.per_level_) {
    std::sort(level.begin(), level.end(),
              [](const Entry& a, const Entry& b) { return a.id < b.id; });
    for (const auto& e : level) {
      index.by_id_[static_cast<std::size_t>(e.id)] = &e.vec;
    }
  }
  return index;
}

CandidateSet LevelIndex::query(const Embedding& x, int level,
                               const RetrievalConfig& config) const {
  if (!built()) {
    throw IndexNotBuilt("query before index build");
  }
  if (level < 1 || level > depth()) {
    throw LevelOutOfRange("query level " + std::to_string(level) +
                          " outside [1, " + std::to_string(depth()) + "]");
  }
  const auto& entries = per_level_[static_cast<std::size_t>(level - 1)];

  CandidateSet out;
  out.level = level;
  out.members.reserve(entries.size());
  for (const auto& e : entries) {
    out.members.push_back(Candidate{e.id, cosine_distance(x, e.vec)});
  }
  std::sort(out.members.begin(), out.members.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.distance != b.distance) {
                return a.distance < b.distance;
              }
              return a.id < b.id;
            });

  if (config.mode == RetrievalMode::TopK) {
    const auto k = static_cast<std::size_t>(config.k_at(level));
    if (out.members.size() > k) {
      out.members.resize(k);
    }
  } else {
    const double tau = config.tau_at(level);
    auto past = std::find_if(out.members.begin(), out.members.end(),
                             [tau](const Candidate& c) { return c.distance > tau; });
    out.members.erase(past, out.members.end());
  }
  return out;
}

std::size_t LevelIndex::total_entries() const {
  std::size_t n = 0;
  for (const auto& level : per_level_) {
    n += level.size();
  }
  return n;
}

const Embedding& LevelIndex::label_embedding(LabelId id) const {
  if (!built()) {
    throw IndexNotBuilt("label_embedding before index build");
  }
  if (id < 0 || static_cast<std::size_t>(id) >= by_id_.size() ||
      by_id_[static_cast<std::size_t>(id)] == nullptr) {
    throw UnknownLabel("label id " + std::to_string(id) + " is not indexed");
  }
  return *by_id_[static_cast<std::size_t>(id)];
}

}  // namespace htc
