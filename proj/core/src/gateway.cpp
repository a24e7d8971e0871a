#include "cotr/gateway.hpp"

#include "cotr/digest.hpp"
#include "cotr/errors.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <condition_variable>
#include <mutex>
#include <thread>

namespace cotr {

namespace {

using nlohmann::ordered_json;

void append_field(std::string& material, std::string_view value) {
  material += std::to_string(value.size());
  material.push_back(':');
  material += value;
  material.push_back('\x1f');
}

}  // namespace

std::string_view finish_reason_name(FinishReason r) {
  switch (r) {
    case FinishReason::Complete: return "complete";
    case FinishReason::Truncated: return "truncated";
    case FinishReason::Refused: return "refused";
    case FinishReason::Error: return "error";
  }
  return "?";
}

FinishReason finish_reason_from_name(std::string_view name) {
  if (name == "complete") return FinishReason::Complete;
  if (name == "truncated") return FinishReason::Truncated;
  if (name == "refused") return FinishReason::Refused;
  if (name == "error") return FinishReason::Error;
  throw ConfigError("unknown finish_reason '" + std::string(name) + "'");
}

std::string ChatResponse::serialize() const {
  ordered_json j;
  j["raw_text"] = raw_text;
  j["finish_reason"] = std::string(finish_reason_name(finish_reason));
  j["prompt_tokens"] = prompt_tokens;
  j["completion_tokens"] = completion_tokens;
  j["latency_ms"] = latency_ms;
  j["attempts"] = attempts;
  return j.dump();
}

ChatResponse ChatResponse::deserialize(const std::string& json_text) {
  const auto j = ordered_json::parse(json_text);
  ChatResponse r;
  r.raw_text = j.at("raw_text").get<std::string>();
  r.finish_reason =
      finish_reason_from_name(j.at("finish_reason").get<std::string>());
  r.prompt_tokens = j.at("prompt_tokens").get<long>();
  r.completion_tokens = j.at("completion_tokens").get<long>();
  r.latency_ms = j.at("latency_ms").get<double>();
  r.attempts = j.value("attempts", 0);
  r.from_cache = false;
  return r;
}

CacheKey chat_cache_key(const ChatRequest& req) {
  std::string material = "chat.v1\x1f";
  append_field(material, req.model_id);
  append_field(material, req.system_text);
  append_field(material, req.user_text);
  append_field(material, canonical_double(req.temperature));
  append_field(material, std::to_string(req.max_tokens));
  return CacheKey{sha256_hex(material)};
}

struct ChatGateway::Impl {
  std::mutex mutex;
  std::condition_variable slot_free;
  int in_flight = 0;
  int parallelism = 4;

  struct Slot {
    Impl& impl;
    explicit Slot(Impl& i) : impl(i) {
      std::unique_lock<std::mutex> lock(impl.mutex);
      impl.slot_free.wait(lock, [&] { return impl.in_flight < impl.parallelism; });
      ++impl.in_flight;
    }
    ~Slot() {
      {
        std::lock_guard<std::mutex> lock(impl.mutex);
        --impl.in_flight;
      }
      impl.slot_free.notify_one();
    }
  };
};

ChatGateway::ChatGateway(std::shared_ptr<ChatBackend> backend,
                         std::optional<DiskCache> cache, RetryPolicy policy,
                         int parallelism)
    : backend_(std::move(backend)),
      cache_(std::move(cache)),
      policy_(policy),
      impl_(std::make_unique<Impl>()) {
  if (!backend_) throw ConfigError("gateway requires a backend");
  if (policy_.max_attempts < 1) throw ConfigError("max_attempts must be >= 1");
  impl_->parallelism = parallelism > 0 ? parallelism : 1;
}

ChatGateway::~ChatGateway() = default;

ChatResponse ChatGateway::complete(const ChatRequest& req) {
  const CacheKey key = chat_cache_key(req);
  if (cache_) {
    if (auto hit = cache_->get(key.digest_hex)) {
      try {
        ChatResponse r = ChatResponse::deserialize(*hit);
        r.from_cache = true;
        ++stats_.cache_hits;
        return r;
      } catch (const std::exception&) {
        // Unreadable entry: fall through to a fresh call.
      }
    }
  }

  Impl::Slot slot(*impl_);
  int backoff_ms = policy_.initial_backoff_ms;
  for (int attempt = 1;; ++attempt) {
    const auto start = std::chrono::steady_clock::now();
    try {
      ++stats_.backend_calls;
      ChatResponse r = backend_->send(req);
      const auto elapsed = std::chrono::steady_clock::now() - start;
      r.latency_ms =
          std::chrono::duration<double, std::milli>(elapsed).count();
      r.attempts = attempt;
      r.from_cache = false;
      if (cache_) cache_->put(key.digest_hex, r.serialize());
      return r;
    } catch (const RateLimitError&) {
      if (attempt >= policy_.max_attempts) throw;
    } catch (const TransportError&) {
      if (attempt >= policy_.max_attempts) throw;
    }
    ++stats_.retried_attempts;
    if (backoff_ms > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
    }
    backoff_ms = static_cast<int>(
        std::min<double>(backoff_ms * policy_.multiplier, policy_.max_backoff_ms));
  }
}

}  // namespace cotr
