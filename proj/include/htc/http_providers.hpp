#pragma once

#include <chrono>
#include <condition_variable>
#include <functional>
#include <mutex>
#include <string>

#include "htc/embedding.hpp"
#include "htc/llm.hpp"

namespace htc {

// Connection and retry settings for an OpenAI-compatible endpoint.
struct HttpSettings {
  std::string base_url = "https://api.openai.com/v1";
  std::string api_key;  // empty -> no Authorization header
  int max_retries = 5;
  std::chrono::milliseconds initial_delay{250};
  double backoff_factor = 2.0;
  int max_in_flight = 4;
  double requests_per_minute = 0.0;  // 0 -> unthrottled
  std::chrono::seconds timeout{60};
};

// Delay before retry `attempt` (0-based): initial_delay * factor^attempt.
// Nondecreasing for factor >= 1.
std::chrono::milliseconds backoff_delay(const HttpSettings& settings, int attempt);

// Blocking cap on concurrently outstanding requests.
class InFlightGate {
 public:
  explicit InFlightGate(int limit);
  void acquire();
  void release();

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  int available_;
};

// Token bucket: `rate` tokens per minute, burst up to `capacity`. acquire()
// sleeps until a token is available. A zero rate disables throttling.
class RateLimiter {
 public:
  using Clock = std::chrono::steady_clock;
  RateLimiter(double per_minute, double capacity = 1.0);

  void acquire();
  // Time the caller must still wait at `now`; consumes a token once due.
  std::chrono::milliseconds next_delay(Clock::time_point now);

 private:
  std::mutex mutex_;
  double rate_per_sec_;
  double capacity_;
  double tokens_;
  Clock::time_point last_;
};

using SleepFn = std::function<void(std::chrono::milliseconds)>;

// Chat-completion client for {base_url}/chat/completions. Retries 429/5xx and
// transport failures with exponential backoff; 401/403 raise AuthError
// immediately. The retry count of a successful call is surfaced in
// provider_meta["retries"].
class HttpChatProvider final : public ChatProvider {
 public:
  explicit HttpChatProvider(HttpSettings settings, SleepFn sleep_fn = {});

  ChatExchange complete(const std::string& system_text,
                        const std::string& user_text,
                        const GenerationConfig& config) override;
  std::string id() const override { return "openai-compat"; }

 private:
  HttpSettings settings_;
  SleepFn sleep_;
  InFlightGate gate_;
  RateLimiter limiter_;
};

// Embedding client for {base_url}/embeddings. `dim` is the declared vector
// size of the configured model; responses are validated against it.
class HttpEmbeddingProvider final : public EmbeddingProvider {
 public:
  HttpEmbeddingProvider(HttpSettings settings, std::string model, std::size_t dim,
                        SleepFn sleep_fn = {});

  Embedding embed(const std::string& text) override;
  std::size_t dim() const override { return dim_; }
  std::string id() const override { return "openai-compat"; }
  std::string model() const override { return model_; }

 private:
  HttpSettings settings_;
  std::string model_;
  std::size_t dim_;
  SleepFn sleep_;
  InFlightGate gate_;
  RateLimiter limiter_;
};

}  // namespace htc
