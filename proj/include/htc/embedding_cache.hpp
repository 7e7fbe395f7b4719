#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "htc/embedding.hpp"

namespace htc {

// Append-only on-disk embedding store. Layout under one directory:
//   embeddings.bin  - concatenated little-endian float32 records
//   manifest.txt    - one line per record: "<offset> <dim> <key>"
// Keys are "<provider id>\t<model id>\t<normalized text>". Corrupt manifest
// lines or out-of-bounds records are dropped with a warning at load time.
// Writes are serialized through one internal lock.
class EmbeddingCache {
 public:
  explicit EmbeddingCache(std::filesystem::path dir);

  static std::string key_for(const EmbeddingProvider& provider,
                             const std::string& text);

  std::optional<Embedding> lookup(const std::string& key) const;
  void store(const std::string& key, const Embedding& v);

  std::size_t size() const;
  std::size_t dropped_entries() const { return dropped_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  void load();

  std::filesystem::path dir_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, Embedding> entries_;
  std::size_t dropped_ = 0;
};

// Provider wrapper that serves hits from the cache and writes misses through.
// Makes remote embedders operationally deterministic and index builds
// resumable.
class CachingProvider final : public EmbeddingProvider {
 public:
  CachingProvider(EmbeddingProvider& inner, EmbeddingCache& cache)
      : inner_(inner), cache_(cache) {}

  Embedding embed(const std::string& text) override;
  std::size_t dim() const override { return inner_.dim(); }
  std::string id() const override { return inner_.id(); }
  std::string model() const override { return inner_.model(); }

 private:
  EmbeddingProvider& inner_;
  EmbeddingCache& cache_;
};

}  // namespace htc
