#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace htc {

// Canonical label-name form: lowercase, the characters " ' * removed,
// whitespace runs collapsed to single spaces, leading/trailing space trimmed.
// LLM outputs are pushed through the same function before matching.
std::string normalize_name(std::string_view raw);

// Lowercased whitespace-separated tokens of `text` (no name normalization).
std::vector<std::string> tokenize(std::string_view text);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// FNV-1a, used for prompt hashes and the mock embedder's token buckets.
std::uint64_t fnv1a64(std::string_view data);

// 16-hex-digit rendering of a 64-bit hash.
std::string hex64(std::uint64_t value);

}  // namespace htc
