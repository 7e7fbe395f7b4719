#include "htc/embedding.hpp"

#include <cmath>

#include "htc/errors.hpp"
#include "htc/text.hpp"

namespace htc {

namespace {

double squared_norm(const Embedding& v) {
  double s = 0.0;
  for (float x : v) {
    s += static_cast<double>(x) * static_cast<double>(x);
  }
  return s;
}

}  // namespace

double cosine_similarity(const Embedding& a, const Embedding& b) {
  if (a.size() != b.size()) {
    throw DimMismatch("cosine over dims " + std::to_string(a.size()) + " and " +
                      std::to_string(b.size()));
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i];
    const double y = b[i];
    dot += x * y;
    na += x * x;
    nb += y * y;
  }
  if (na == 0.0 || nb == 0.0) {
    throw ZeroVector("cosine of the all-zero vector is undefined");
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double cosine_distance(const Embedding& a, const Embedding& b) {
  return 1.0 - cosine_similarity(a, b);
}

void validate_embedding(const Embedding& v, std::size_t expected_dim) {
  if (v.size() != expected_dim) {
    throw DimMismatch("embedding has dim " + std::to_string(v.size()) +
                      ", provider declared " + std::to_string(expected_dim));
  }
  for (float x : v) {
    if (!std::isfinite(x)) {
      throw ProviderError("embedding contains a non-finite entry");
    }
  }
  if (squared_norm(v) == 0.0) {
    throw ZeroVector("provider returned the all-zero vector");
  }
}

MockHashProvider::MockHashProvider(std::size_t dim) : dim_(dim == 0 ? 1 : dim) {}

std::string MockHashProvider::model() const {
  return "bag-d" + std::to_string(dim_);
}

std::size_t MockHashProvider::bucket(std::string_view token) const {
  return static_cast<std::size_t>(fnv1a64(token) % dim_);
}

Embedding MockHashProvider::embed(const std::string& text) {
  const auto tokens = tokenize(text);
  if (tokens.empty()) {
    throw EmptyText("cannot embed empty text");
  }
  std::vector<double> counts(dim_, 0.0);
  for (const auto& tok : tokens) {
    counts[bucket(tok)] += 1.0;
  }
  double norm = 0.0;
  for (double c : counts) {
    norm += c * c;
  }
  norm = std::sqrt(norm);
  Embedding out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    out[i] = static_cast<float>(counts[i] / norm);
  }
  return out;
}

}  // namespace htc
