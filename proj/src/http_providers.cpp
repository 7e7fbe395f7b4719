#include "htc/http_providers.hpp"

#include <cmath>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "htc/errors.hpp"

namespace htc {

namespace {

using json = nlohmann::json;

struct ParsedUrl {
  std::string origin;       // scheme://host[:port]
  std::string path_prefix;  // possibly empty, no trailing slash
};

ParsedUrl split_base_url(const std::string& base_url) {
  auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("base_url must include a scheme: " + base_url);
  }
  auto path_start = base_url.find('/', scheme_end + 3);
  ParsedUrl out;
  if (path_start == std::string::npos) {
    out.origin = base_url;
  } else {
    out.origin = base_url.substr(0, path_start);
    out.path_prefix = base_url.substr(path_start);
    while (!out.path_prefix.empty() && out.path_prefix.back() == '/') {
      out.path_prefix.pop_back();
    }
  }
  return out;
}

bool retryable_status(int status) {
  return status == 429 || (status >= 500 && status < 600);
}

struct PostOutcome {
  json body;
  int retries = 0;
  int status = 0;
};

// One POST with the settings' retry schedule. Throws AuthError,
// ProviderExhausted or ProviderError.
PostOutcome post_with_retries(const HttpSettings& settings, RateLimiter& limiter,
                              const std::string& path, const std::string& body,
                              const SleepFn& sleep_fn) {
  const auto url = split_base_url(settings.base_url);
  httplib::Headers headers;
  if (!settings.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + settings.api_key);
  }

  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt <= settings.max_retries; ++attempt) {
    if (attempt > 0) {
      sleep_fn(backoff_delay(settings, attempt - 1));
    }
    limiter.acquire();

    httplib::Client client(url.origin);
    client.set_connection_timeout(settings.timeout.count(), 0);
    client.set_read_timeout(settings.timeout.count(), 0);
    auto res = client.Post(url.path_prefix + path, headers, body, "application/json");
    if (!res) {
      last_failure = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 401 || res->status == 403) {
      throw AuthError("endpoint returned HTTP " + std::to_string(res->status));
    }
    if (retryable_status(res->status)) {
      last_failure = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw ProviderError("endpoint returned HTTP " + std::to_string(res->status) +
                          ": " + res->body);
    }
    json parsed = json::parse(res->body, nullptr, false);
    if (parsed.is_discarded()) {
      throw MalformedResponse("response is not valid JSON");
    }
    return PostOutcome{std::move(parsed), attempt, res->status};
  }
  throw ProviderExhausted("gave up after " + std::to_string(settings.max_retries) +
                          " retries; last failure: " + last_failure);
}

SleepFn default_sleep(SleepFn fn) {
  if (fn) {
    return fn;
  }
  return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

}  // namespace

std::chrono::milliseconds backoff_delay(const HttpSettings& settings, int attempt) {
  const double factor = std::pow(settings.backoff_factor, attempt);
  const double ms = static_cast<double>(settings.initial_delay.count()) * factor;
  return std::chrono::milliseconds(static_cast<long long>(ms));
}

InFlightGate::InFlightGate(int limit) : available_(limit < 1 ? 1 : limit) {}

void InFlightGate::acquire() {
  std::unique_lock lock(mutex_);
  cv_.wait(lock, [this] { return available_ > 0; });
  --available_;
}

void InFlightGate::release() {
  {
    std::lock_guard lock(mutex_);
    ++available_;
  }
  cv_.notify_one();
}

RateLimiter::RateLimiter(double per_minute, double capacity)
    : rate_per_sec_(per_minute / 60.0),
      capacity_(capacity < 1.0 ? 1.0 : capacity),
      tokens_(capacity_),
      last_(Clock::now()) {}

std::chrono::milliseconds RateLimiter::next_delay(Clock::time_point now) {
  std::lock_guard lock(mutex_);
  if (rate_per_sec_ <= 0.0) {
    return std::chrono::milliseconds(0);
  }
  const double elapsed = std::chrono::duration<double>(now - last_).count();
  last_ = now;
  tokens_ = std::min(capacity_, tokens_ + elapsed * rate_per_sec_);
  if (tokens_ >= 1.0) {
    tokens_ -= 1.0;
    return std::chrono::milliseconds(0);
  }
  const double wait_sec = (1.0 - tokens_) / rate_per_sec_;
  return std::chrono::milliseconds(static_cast<long long>(wait_sec * 1000.0) + 1);
}

void RateLimiter::acquire() {
  for (;;) {
    const auto delay = next_delay(Clock::now());
    if (delay.count() == 0) {
      return;
    }
    std::this_thread::sleep_for(delay);
  }
}

HttpChatProvider::HttpChatProvider(HttpSettings settings, SleepFn sleep_fn)
    : settings_(std::move(settings)),
      sleep_(default_sleep(std::move(sleep_fn))),
      gate_(settings_.max_in_flight),
      limiter_(settings_.requests_per_minute) {}

ChatExchange HttpChatProvider::complete(const std::string& system_text,
                                        const std::string& user_text,
                                        const GenerationConfig& config) {
  config.validate();
  if (system_text.empty() && user_text.empty()) {
    throw EmptyText("chat call with empty prompts");
  }

  json messages = json::array();
  if (!system_text.empty()) {
    messages.push_back({{"role", "system"}, {"content", system_text}});
  }
  messages.push_back({{"role", "user"}, {"content", user_text}});
  const json body{
      {"model", config.model},       {"messages", messages},
      {"temperature", config.temperature}, {"top_p", config.top_p},
      {"max_tokens", config.max_tokens},
  };

  gate_.acquire();
  const auto start = std::chrono::steady_clock::now();
  PostOutcome outcome;
  try {
    outcome = post_with_retries(settings_, limiter_, "/chat/completions",
                                body.dump(), sleep_);
  } catch (...) {
    gate_.release();
    throw;
  }
  gate_.release();
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  ChatExchange e;
  e.system_text = system_text;
  e.user_text = user_text;
  e.latency = elapsed;
  e.provider_meta["retries"] = std::to_string(outcome.retries);
  e.provider_meta["status"] = std::to_string(outcome.status);
  try {
    e.response_text = outcome.body.at("choices").at(0).at("message").at("content")
                          .get<std::string>();
  } catch (const json::exception& ex) {
    throw MalformedResponse(std::string("unexpected chat response shape: ") +
                            ex.what());
  }
  return e;
}

HttpEmbeddingProvider::HttpEmbeddingProvider(HttpSettings settings,
                                             std::string model, std::size_t dim,
                                             SleepFn sleep_fn)
    : settings_(std::move(settings)),
      model_(std::move(model)),
      dim_(dim),
      sleep_(default_sleep(std::move(sleep_fn))),
      gate_(settings_.max_in_flight),
      limiter_(settings_.requests_per_minute) {}

Embedding HttpEmbeddingProvider::embed(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw EmptyText("cannot embed empty text");
  }
  const json body{{"model", model_}, {"input", json::array({text})}};

  gate_.acquire();
  PostOutcome outcome;
  try {
    outcome = post_with_retries(settings_, limiter_, "/embeddings", body.dump(),
                                sleep_);
  } catch (...) {
    gate_.release();
    throw;
  }
  gate_.release();

  Embedding v;
  try {
    const auto& values = outcome.body.at("data").at(0).at("embedding");
    v.reserve(values.size());
    for (const auto& x : values) {
      v.push_back(x.get<float>());
    }
  } catch (const json::exception& ex) {
    throw MalformedResponse(std::string("unexpected embeddings response shape: ") +
                            ex.what());
  }
  validate_embedding(v, dim_);
  return v;
}

}  // namespace htc
