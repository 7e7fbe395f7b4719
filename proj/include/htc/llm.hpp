#pragma once

#include <chrono>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace htc {

struct GenerationConfig {
  double temperature = 0.4;
  double top_p = 0.4;
  int max_tokens = 32;  // outputs are single labels
  std::string model = "gpt-3.5-turbo";

  // Throws ConfigError on out-of-range values.
  void validate() const;
};

struct ChatExchange {
  std::string system_text;
  std::string user_text;
  std::string response_text;  // verbatim, pre-normalization
  std::chrono::milliseconds latency{0};
  std::map<std::string, std::string> provider_meta;
};

class ChatProvider {
 public:
  virtual ~ChatProvider() = default;

  // Throws ProviderExhausted / AuthError / MalformedResponse. Prompts must be
  // non-empty (system may be empty only if user is not).
  virtual ChatExchange complete(const std::string& system_text,
                                const std::string& user_text,
                                const GenerationConfig& config) = 0;
  virtual std::string id() const = 0;
};

// Plays back a fixed queue of responses, one per call, and records every
// exchange for later assertions. Throws ProviderExhausted when the queue runs
// dry. Thread-safe.
class ScriptedChatProvider final : public ChatProvider {
 public:
  ScriptedChatProvider() = default;
  explicit ScriptedChatProvider(std::vector<std::string> responses);

  void push(std::string response);

  ChatExchange complete(const std::string& system_text,
                        const std::string& user_text,
                        const GenerationConfig& config) override;
  std::string id() const override { return "scripted"; }

  std::vector<ChatExchange> exchanges() const;
  std::size_t remaining() const;

 private:
  mutable std::mutex mutex_;
  std::deque<std::string> queue_;
  std::vector<ChatExchange> log_;
};

// Mock that behaves like an oracle classifier over the offered candidates:
// it parses the category list back out of the system prompt and answers the
// candidate with the highest token overlap against the user text, ties going
// to the earliest-listed candidate. Thread-safe; bitwise deterministic.
class CandidateEchoChatProvider final : public ChatProvider {
 public:
  ChatExchange complete(const std::string& system_text,
                        const std::string& user_text,
                        const GenerationConfig& config) override;
  std::string id() const override { return "candidate-echo"; }

  std::vector<ChatExchange> exchanges() const;

  // The category list as parsed from a default-template prompt.
  static std::vector<std::string> parse_candidates(const std::string& system_text);
  // Count of candidate tokens present in the user text's token set.
  static int token_overlap(const std::string& candidate, const std::string& user_text);

 private:
  mutable std::mutex mutex_;
  std::vector<ChatExchange> log_;
};

// Mock that always answers the same (typically out-of-space) text; drives the
// fallback path deterministically.
class FixedResponseChatProvider final : public ChatProvider {
 public:
  explicit FixedResponseChatProvider(std::string response)
      : response_(std::move(response)) {}

  ChatExchange complete(const std::string& system_text,
                        const std::string& user_text,
                        const GenerationConfig& config) override;
  std::string id() const override { return "fixed"; }

 private:
  std::string response_;
};

// Append-only JSON-lines log of chat calls, shared across worker threads.
class AuditLog {
 public:
  explicit AuditLog(const std::filesystem::path& path);

  void append(const std::string& doc_id, int level, const ChatExchange& exchange);

 private:
  std::mutex mutex_;
  std::ofstream out_;
};

}  // namespace htc
