#pragma once

#include "cotr/gateway.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace cotr {

/// Fixture-driven deterministic backend. The fixture maps request_tag to a
/// scripted response or a sequence of steps (failures, then a response);
/// the last step is sticky. Also instruments call counts and the maximum
/// number of concurrently in-flight sends, for concurrency-bound tests.
class MockChatBackend : public ChatBackend {
 public:
  struct Step {
    std::string text;
    FinishReason finish_reason = FinishReason::Complete;
    long prompt_tokens = -1;      // -1: derive from request
    long completion_tokens = -1;  // -1: derive from text
    std::string fail;             // transport | rate_limit | auth | provider
    int fail_status = 500;
  };

  MockChatBackend() = default;
  static std::shared_ptr<MockChatBackend> from_file(
      const std::filesystem::path& fixture);

  ChatResponse send(const ChatRequest& req) override;
  std::string name() const override { return "mock"; }

  void script(const std::string& tag, std::vector<Step> steps);
  void set_default_text(std::string text);
  void set_delay_ms(int delay_ms) { delay_ms_ = delay_ms; }

  long calls() const;
  int max_in_flight() const;

 private:
  ChatResponse run_step(const Step& step, const ChatRequest& req);

  mutable std::mutex mutex_;
  std::map<std::string, std::vector<Step>> scripts_;
  std::map<std::string, std::size_t> cursor_;
  std::string default_text_;
  bool has_default_ = false;
  int delay_ms_ = 0;
  long calls_ = 0;
  int in_flight_ = 0;
  int max_in_flight_ = 0;
};

struct HttpBackendConfig {
  std::string endpoint_url;    // full URL of the chat-completions endpoint
  std::string credential_env;  // env var holding the bearer token, may be ""
  int timeout_s = 120;
};

/// Minimal chat-completions client: POSTs {model, messages, temperature,
/// max_tokens} and reads choices[0].message.content plus usage counts.
class HttpChatBackend : public ChatBackend {
 public:
  explicit HttpChatBackend(HttpBackendConfig config);
  ChatResponse send(const ChatRequest& req) override;
  std::string name() const override { return "http"; }

 private:
  HttpBackendConfig config_;
  std::string base_url_;
  std::string path_;
};

}  // namespace cotr
