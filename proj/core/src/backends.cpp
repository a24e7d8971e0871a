#include "cotr/backends.hpp"

#include "cotr/errors.hpp"
#include "cotr/text.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

namespace cotr {

namespace {

using nlohmann::json;

long whitespace_token_count(const std::string& s) {
  return static_cast<long>(text::split_whitespace(s).size());
}

MockChatBackend::Step step_from_json(const json& j, const std::string& tag) {
  MockChatBackend::Step step;
  if (!j.is_object()) {
    throw ConfigError("mock fixture entry for '" + tag +
                      "' must be an object or array of objects");
  }
  step.text = j.value("text", "");
  if (j.contains("finish_reason")) {
    step.finish_reason =
        finish_reason_from_name(j.at("finish_reason").get<std::string>());
  }
  step.prompt_tokens = j.value("prompt_tokens", -1);
  step.completion_tokens = j.value("completion_tokens", -1);
  step.fail = j.value("fail", "");
  step.fail_status = j.value("status", 500);
  if (step.fail.empty() && step.text.empty() &&
      step.finish_reason == FinishReason::Complete) {
    throw ConfigError("mock fixture entry for '" + tag +
                      "' has neither text nor fail");
  }
  return step;
}

}  // namespace

std::shared_ptr<MockChatBackend> MockChatBackend::from_file(
    const std::filesystem::path& fixture) {
  std::ifstream in(fixture);
  if (!in) throw FileError("cannot open mock fixture: " + fixture.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("mock fixture " + fixture.string() + ": " + e.what());
  }
  auto backend = std::make_shared<MockChatBackend>();
  if (doc.contains("default")) {
    backend->set_default_text(doc.at("default").value("text", ""));
  }
  backend->set_delay_ms(doc.value("delay_ms", 0));
  if (doc.contains("responses")) {
    for (const auto& [tag, entry] : doc.at("responses").items()) {
      std::vector<Step> steps;
      if (entry.is_array()) {
        for (const auto& item : entry) steps.push_back(step_from_json(item, tag));
      } else {
        steps.push_back(step_from_json(entry, tag));
      }
      if (steps.empty()) {
        throw ConfigError("mock fixture entry for '" + tag + "' is empty");
      }
      backend->script(tag, std::move(steps));
    }
  }
  return backend;
}

void MockChatBackend::script(const std::string& tag, std::vector<Step> steps) {
  std::lock_guard<std::mutex> lock(mutex_);
  scripts_[tag] = std::move(steps);
  cursor_[tag] = 0;
}

void MockChatBackend::set_default_text(std::string text) {
  std::lock_guard<std::mutex> lock(mutex_);
  default_text_ = std::move(text);
  has_default_ = true;
}

long MockChatBackend::calls() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return calls_;
}

int MockChatBackend::max_in_flight() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return max_in_flight_;
}

ChatResponse MockChatBackend::run_step(const Step& step, const ChatRequest& req) {
  if (!step.fail.empty()) {
    if (step.fail == "transport") throw TransportError("scripted transport failure");
    if (step.fail == "rate_limit") throw RateLimitError("scripted rate limit");
    if (step.fail == "auth") throw AuthError("scripted auth failure");
    if (step.fail == "provider") {
      throw ProviderError(step.fail_status, "scripted provider failure");
    }
    throw ConfigError("unknown mock failure kind '" + step.fail + "'");
  }
  ChatResponse r;
  r.raw_text = step.text;
  r.finish_reason = step.finish_reason;
  if (r.finish_reason == FinishReason::Refused ||
      r.finish_reason == FinishReason::Error) {
    r.raw_text.clear();
  }
  r.prompt_tokens = step.prompt_tokens >= 0
                        ? step.prompt_tokens
                        : whitespace_token_count(req.system_text) +
                              whitespace_token_count(req.user_text);
  r.completion_tokens = step.completion_tokens >= 0
                            ? step.completion_tokens
                            : whitespace_token_count(r.raw_text);
  return r;
}

ChatResponse MockChatBackend::send(const ChatRequest& req) {
  Step step;
  int delay_ms = 0;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    ++calls_;
    ++in_flight_;
    max_in_flight_ = std::max(max_in_flight_, in_flight_);
    delay_ms = delay_ms_;
    auto it = scripts_.find(req.request_tag);
    if (it != scripts_.end()) {
      std::size_t& cur = cursor_[req.request_tag];
      step = it->second[std::min(cur, it->second.size() - 1)];
      ++cur;
    } else if (has_default_) {
      step.text = default_text_;
    } else {
      --in_flight_;
      throw ProviderError(404, "mock fixture has no entry for tag '" +
                                   req.request_tag + "' and no default");
    }
  }
  struct FlightGuard {
    MockChatBackend& self;
    ~FlightGuard() {
      std::lock_guard<std::mutex> lock(self.mutex_);
      --self.in_flight_;
    }
  } guard{*this};
  if (delay_ms > 0) {
    std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
  }
  return run_step(step, req);
}

namespace {

// Splits "https://host:port/some/path" into base and path parts for httplib.
std::pair<std::string, std::string> split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint_url must include a scheme: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpChatBackend::HttpChatBackend(HttpBackendConfig config)
    : config_(std::move(config)) {
  std::tie(base_url_, path_) = split_url(config_.endpoint_url);
}

ChatResponse HttpChatBackend::send(const ChatRequest& req) {
  httplib::Client client(base_url_);
  client.set_connection_timeout(config_.timeout_s);
  client.set_read_timeout(config_.timeout_s);
  httplib::Headers headers;
  if (!config_.credential_env.empty()) {
    const char* token = std::getenv(config_.credential_env.c_str());
    if (token == nullptr || *token == '\0') {
      throw AuthError("environment variable " + config_.credential_env +
                      " is not set");
    }
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }

  json body;
  body["model"] = req.model_id;
  body["messages"] = json::array();
  if (!req.system_text.empty()) {
    body["messages"].push_back({{"role", "system"}, {"content", req.system_text}});
  }
  body["messages"].push_back({{"role", "user"}, {"content", req.user_text}});
  body["temperature"] = req.temperature;
  body["max_tokens"] = req.max_tokens;

  auto result = client.Post(path_, headers, body.dump(), "application/json");
  if (!result) {
    throw TransportError("request to " + config_.endpoint_url + " failed: " +
                         httplib::to_string(result.error()));
  }
  const int status = result->status;
  if (status == 401 || status == 403) {
    throw AuthError("provider rejected credentials (status " +
                    std::to_string(status) + ")");
  }
  if (status == 429) throw RateLimitError("provider rate limit (status 429)");
  if (status >= 500) {
    throw TransportError("provider server error (status " +
                         std::to_string(status) + ")");
  }
  if (status != 200) throw ProviderError(status, result->body);

  json doc;
  try {
    doc = json::parse(result->body);
  } catch (const json::parse_error& e) {
    throw ProviderError(status, std::string("unparseable body: ") + e.what());
  }
  ChatResponse r;
  try {
    const auto& choice = doc.at("choices").at(0);
    r.raw_text = choice.at("message").value("content", "");
    const std::string finish = choice.value("finish_reason", "stop");
    if (finish == "stop") r.finish_reason = FinishReason::Complete;
    else if (finish == "length") r.finish_reason = FinishReason::Truncated;
    else if (finish == "content_filter") r.finish_reason = FinishReason::Refused;
    else r.finish_reason = FinishReason::Complete;
  } catch (const json::exception& e) {
    throw ProviderError(status, std::string("unexpected response shape: ") + e.what());
  }
  if (doc.contains("usage")) {
    r.prompt_tokens = doc["usage"].value("prompt_tokens", 0);
    r.completion_tokens = doc["usage"].value("completion_tokens", 0);
  }
  if (r.finish_reason == FinishReason::Refused) r.raw_text.clear();
  return r;
}

}  // namespace cotr
