#pragma once

#include "cotr/cache.hpp"

#include <atomic>
#include <memory>
#include <optional>
#include <string>

namespace cotr {

/// Provider-agnostic completion call. `request_tag` (example id + strategy)
/// is routing metadata only — it never participates in the cache key.
struct ChatRequest {
  std::string model_id;
  std::string system_text;
  std::string user_text;
  double temperature = 0.0;
  int max_tokens = 1024;
  std::string request_tag;
};

enum class FinishReason { Complete, Truncated, Refused, Error };

std::string_view finish_reason_name(FinishReason r);
FinishReason finish_reason_from_name(std::string_view name);

struct ChatResponse {
  std::string raw_text;  // present iff finish_reason is complete|truncated
  FinishReason finish_reason = FinishReason::Error;
  long prompt_tokens = 0;
  long completion_tokens = 0;
  double latency_ms = 0.0;
  bool from_cache = false;
  int attempts = 0;

  std::string serialize() const;  // canonical JSON, stable key order
  static ChatResponse deserialize(const std::string& json_text);
};

/// 256-bit content hash of (model_id, system_text, user_text, temperature,
/// max_tokens). Deterministic across processes and platforms.
struct CacheKey {
  std::string digest_hex;
};

CacheKey chat_cache_key(const ChatRequest& req);

struct RetryPolicy {
  int max_attempts = 3;
  int initial_backoff_ms = 200;
  double multiplier = 2.0;
  int max_backoff_ms = 5000;
};

/// Anything that can answer a ChatRequest: an HTTP provider or the
/// deterministic fixture-driven mock.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual ChatResponse send(const ChatRequest& req) = 0;
  virtual std::string name() const = 0;
};

struct GatewayStats {
  std::atomic<long> backend_calls{0};
  std::atomic<long> cache_hits{0};
  std::atomic<long> retried_attempts{0};
};

/// Sends requests with retries, a concurrency bound, and a content-addressed
/// response cache. complete() is safe to call from many threads; in-flight
/// backend calls never exceed `parallelism`.
class ChatGateway {
 public:
  ChatGateway(std::shared_ptr<ChatBackend> backend,
              std::optional<DiskCache> cache, RetryPolicy policy,
              int parallelism = 4);
  ~ChatGateway();

  ChatGateway(const ChatGateway&) = delete;
  ChatGateway& operator=(const ChatGateway&) = delete;

  /// Cache hit: returns the stored response with from_cache=true, no backend
  /// call. Miss: calls the backend, retrying RateLimitError/TransportError
  /// with exponential backoff up to policy.max_attempts, then stores the
  /// response. AuthError and ProviderError are never retried.
  ChatResponse complete(const ChatRequest& req);

  const GatewayStats& stats() const { return stats_; }
  const std::string backend_name() const { return backend_->name(); }

 private:
  struct Impl;
  std::shared_ptr<ChatBackend> backend_;
  std::optional<DiskCache> cache_;
  RetryPolicy policy_;
  GatewayStats stats_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cotr
