#pragma once

#include <stdexcept>
#include <string>

namespace htc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Taxonomy construction and lookup.
struct EmptyInput : Error {
  using Error::Error;
};
struct RaggedRow : Error {
  using Error::Error;
};
struct ConflictingParent : Error {
  using Error::Error;
};
struct UnknownLabel : Error {
  using Error::Error;
};
struct LevelOutOfRange : Error {
  using Error::Error;
};

// Embeddings and vector index.
struct EmptyText : Error {
  using Error::Error;
};
struct DimMismatch : Error {
  using Error::Error;
};
struct ZeroVector : Error {
  using Error::Error;
};
struct IndexNotBuilt : Error {
  using Error::Error;
};

// Prompt assembly.
struct NoCandidates : Error {
  using Error::Error;
};

// Provider transport.
struct ProviderError : Error {
  using Error::Error;
};
struct ProviderExhausted : ProviderError {
  using ProviderError::ProviderError;
};
struct AuthError : ProviderError {
  using ProviderError::ProviderError;
};
struct MalformedResponse : ProviderError {
  using ProviderError::ProviderError;
};

// Evaluation.
struct LengthMismatch : Error {
  using Error::Error;
};
struct DivisionByZero : Error {
  using Error::Error;
};
struct MissingLog : Error {
  using Error::Error;
};

// Harness.
struct ParseError : Error {
  using Error::Error;
};
struct DatasetMismatch : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace htc
