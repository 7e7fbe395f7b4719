#include "htc/llm.hpp"

#include <algorithm>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "htc/errors.hpp"
#include "htc/text.hpp"

namespace htc {

namespace {

void check_prompts(const std::string& system_text, const std::string& user_text) {
  if (system_text.empty() && user_text.empty()) {
    throw EmptyText("chat call with empty prompts");
  }
}

ChatExchange make_exchange(std::string system_text, std::string user_text,
                           std::string response) {
  ChatExchange e;
  e.system_text = std::move(system_text);
  e.user_text = std::move(user_text);
  e.response_text = std::move(response);
  return e;
}

}  // namespace

void GenerationConfig::validate() const {
  if (temperature < 0.0) {
    throw ConfigError("temperature must be >= 0");
  }
  if (top_p <= 0.0 || top_p > 1.0) {
    throw ConfigError("top_p must lie in (0, 1]");
  }
  if (max_tokens < 1) {
    throw ConfigError("max_tokens must be >= 1");
  }
  if (model.empty()) {
    throw ConfigError("model must be non-empty");
  }
}

ScriptedChatProvider::ScriptedChatProvider(std::vector<std::string> responses) {
  for (auto& r : responses) {
    queue_.push_back(std::move(r));
  }
}

void ScriptedChatProvider::push(std::string response) {
  std::lock_guard lock(mutex_);
  queue_.push_back(std::move(response));
}

ChatExchange ScriptedChatProvider::complete(const std::string& system_text,
                                            const std::string& user_text,
                                            const GenerationConfig& config) {
  config.validate();
  check_prompts(system_text, user_text);
  std::lock_guard lock(mutex_);
  if (queue_.empty()) {
    throw ProviderExhausted("scripted provider has no responses left");
  }
  std::string response = std::move(queue_.front());
  queue_.pop_front();
  auto e = make_exchange(system_text, user_text, std::move(response));
  log_.push_back(e);
  return e;
}

std::vector<ChatExchange> ScriptedChatProvider::exchanges() const {
  std::lock_guard lock(mutex_);
  return log_;
}

std::size_t ScriptedChatProvider::remaining() const {
  std::lock_guard lock(mutex_);
  return queue_.size();
}

std::vector<std::string> CandidateEchoChatProvider::parse_candidates(
    const std::string& system_text) {
  const std::string open = "categories: ";
  const std::string close = ". You must directly output";
  const auto start = system_text.find(open);
  if (start == std::string::npos) {
    return {};
  }
  const auto begin = start + open.size();
  const auto end = system_text.find(close, begin);
  if (end == std::string::npos) {
    return {};
  }
  std::vector<std::string> out;
  std::size_t pos = begin;
  while (pos < end) {
    auto comma = system_text.find(", ", pos);
    if (comma == std::string::npos || comma >= end) {
      comma = end;
    }
    out.push_back(system_text.substr(pos, comma - pos));
    pos = comma + 2;
  }
  return out;
}

int CandidateEchoChatProvider::token_overlap(const std::string& candidate,
                                             const std::string& user_text) {
  const auto user_tokens = tokenize(user_text);
  const std::unordered_set<std::string> user_set(user_tokens.begin(),
                                                 user_tokens.end());
  int overlap = 0;
  for (const auto& tok : tokenize(candidate)) {
    if (user_set.count(tok) > 0) {
      ++overlap;
    }
  }
  return overlap;
}

ChatExchange CandidateEchoChatProvider::complete(const std::string& system_text,
                                                 const std::string& user_text,
                                                 const GenerationConfig& config) {
  config.validate();
  check_prompts(system_text, user_text);
  const auto candidates = parse_candidates(system_text);
  if (candidates.empty()) {
    throw MalformedResponse("candidate-echo mock found no category list in prompt");
  }
  std::size_t best = 0;
  int best_overlap = -1;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const int overlap = token_overlap(candidates[i], user_text);
    if (overlap > best_overlap) {
      best_overlap = overlap;
      best = i;
    }
  }
  auto e = make_exchange(system_text, user_text, candidates[best]);
  std::lock_guard lock(mutex_);
  log_.push_back(e);
  return e;
}

std::vector<ChatExchange> CandidateEchoChatProvider::exchanges() const {
  std::lock_guard lock(mutex_);
  return log_;
}

ChatExchange FixedResponseChatProvider::complete(const std::string& system_text,
                                                 const std::string& user_text,
                                                 const GenerationConfig& config) {
  config.validate();
  check_prompts(system_text, user_text);
  return make_exchange(system_text, user_text, response_);
}

AuditLog::AuditLog(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  out_.open(path, std::ios::app);
  if (!out_) {
    throw Error("cannot open audit log " + path.string());
  }
}

void AuditLog::append(const std::string& doc_id, int level,
                      const ChatExchange& exchange) {
  nlohmann::json record{
      {"doc_id", doc_id},
      {"level", level},
      {"system", exchange.system_text},
      {"user", exchange.user_text},
      {"response", exchange.response_text},
      {"latency_ms", exchange.latency.count()},
  };
  if (!exchange.provider_meta.empty()) {
    record["provider_meta"] = exchange.provider_meta;
  }
  std::lock_guard lock(mutex_);
  out_ << record.dump() << '\n';
  out_.flush();
}

}  // namespace htc
