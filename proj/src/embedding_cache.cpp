#include "htc/embedding_cache.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "htc/errors.hpp"
#include "htc/text.hpp"

namespace htc {

namespace {

constexpr const char* kBinName = "embeddings.bin";
constexpr const char* kManifestName = "manifest.txt";

}  // namespace

EmbeddingCache::EmbeddingCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
  load();
}

std::string EmbeddingCache::key_for(const EmbeddingProvider& provider,
                                    const std::string& text) {
  return provider.id() + "\t" + provider.model() + "\t" + normalize_name(text);
}

void EmbeddingCache::load() {
  const auto bin_path = dir_ / kBinName;
  const auto manifest_path = dir_ / kManifestName;
  if (!std::filesystem::exists(manifest_path)) {
    return;
  }
  std::uintmax_t bin_size = 0;
  if (std::filesystem::exists(bin_path)) {
    bin_size = std::filesystem::file_size(bin_path);
  }
  std::ifstream bin(bin_path, std::ios::binary);
  std::ifstream manifest(manifest_path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(manifest, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::istringstream fields(line);
    std::uint64_t offset = 0;
    std::uint64_t dim = 0;
    if (!(fields >> offset >> dim) || dim == 0) {
      std::cerr << "warning: embedding cache manifest line " << line_no
                << " is malformed, dropping\n";
      ++dropped_;
      continue;
    }
    fields.get();  // separator
    std::string key;
    std::getline(fields, key);
    if (key.empty() || offset + dim * sizeof(float) > bin_size) {
      std::cerr << "warning: embedding cache entry at manifest line " << line_no
                << " is out of bounds, dropping\n";
      ++dropped_;
      continue;
    }
    Embedding v(dim);
    bin.seekg(static_cast<std::streamoff>(offset));
    bin.read(reinterpret_cast<char*>(v.data()),
             static_cast<std::streamsize>(dim * sizeof(float)));
    if (!bin) {
      std::cerr << "warning: embedding cache record at manifest line " << line_no
                << " is unreadable, dropping\n";
      bin.clear();
      ++dropped_;
      continue;
    }
    entries_[key] = std::move(v);  // later records win
  }
}

std::optional<Embedding> EmbeddingCache::lookup(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    return std::nullopt;
  }
  return it->second;
}

void EmbeddingCache::store(const std::string& key, const Embedding& v) {
  if (v.empty()) {
    throw ZeroVector("refusing to cache an empty embedding");
  }
  std::lock_guard lock(mutex_);
  const auto bin_path = dir_ / kBinName;
  std::uintmax_t offset = 0;
  if (std::filesystem::exists(bin_path)) {
    offset = std::filesystem::file_size(bin_path);
  }
  {
    std::ofstream bin(bin_path, std::ios::binary | std::ios::app);
    bin.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(float)));
    if (!bin) {
      throw Error("failed to append to " + bin_path.string());
    }
  }
  {
    std::ofstream manifest(dir_ / kManifestName, std::ios::app);
    manifest << offset << ' ' << v.size() << ' ' << key << '\n';
    if (!manifest) {
      throw Error("failed to append to cache manifest in " + dir_.string());
    }
  }
  entries_[key] = v;
}

std::size_t EmbeddingCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

Embedding CachingProvider::embed(const std::string& text) {
  const std::string key = EmbeddingCache::key_for(inner_, text);
  if (auto hit = cache_.lookup(key)) {
    if (hit->size() == inner_.dim()) {
      return *hit;
    }
    // Stale record from a differently-sized model; re-embed and overwrite.
  }
  Embedding v = inner_.embed(text);
  validate_embedding(v, inner_.dim());
  cache_.store(key, v);
  return v;
}

}  // namespace htc
