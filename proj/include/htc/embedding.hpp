#pragma once

#include <atomic>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace htc {

using Embedding = std::vector<float>;

// Similarity of two same-dimension nonzero vectors, in [-1, 1].
// Throws DimMismatch / ZeroVector.
double cosine_similarity(const Embedding& a, const Embedding& b);

// 1 - cosine_similarity, in [0, 2].
double cosine_distance(const Embedding& a, const Embedding& b);

// Throws unless the vector is finite, nonzero and of the expected dimension.
void validate_embedding(const Embedding& v, std::size_t expected_dim);

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  // Deterministic for a fixed provider and text. Throws EmptyText on
  // empty/whitespace-only input, ProviderError on transport failure.
  virtual Embedding embed(const std::string& text) = 0;

  virtual std::size_t dim() const = 0;
  virtual std::string id() const = 0;
  virtual std::string model() const = 0;
};

// Offline embedder: each lowercased whitespace token hashes to one of `dim`
// coordinate buckets; the embedding is the L2-normalized bucket-count vector.
class MockHashProvider final : public EmbeddingProvider {
 public:
  explicit MockHashProvider(std::size_t dim = 64);

  Embedding embed(const std::string& text) override;
  std::size_t dim() const override { return dim_; }
  std::string id() const override { return "mock-hash"; }
  std::string model() const override;

  // Bucket a single token lands in; exposed so fixtures can build
  // collision-free vocabularies.
  std::size_t bucket(std::string_view token) const;

 private:
  std::size_t dim_;
};

// Pass-through decorator that counts calls reaching the wrapped provider.
// Used to verify that warm caches issue no upstream requests.
class CountingProvider final : public EmbeddingProvider {
 public:
  explicit CountingProvider(EmbeddingProvider& inner) : inner_(inner) {}

  Embedding embed(const std::string& text) override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_.embed(text);
  }
  std::size_t dim() const override { return inner_.dim(); }
  std::string id() const override { return inner_.id(); }
  std::string model() const override { return inner_.model(); }

  long calls() const { return calls_.load(std::memory_order_relaxed); }

 private:
  EmbeddingProvider& inner_;
  std::atomic<long> calls_{0};
};

}  // namespace htc
