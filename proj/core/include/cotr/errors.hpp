#pragma once

#include <stdexcept>
#include <string>

namespace cotr {

/// Base class for every error raised by the harness.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dataset loading
class FileError : public Error { public: using Error::Error; };
class SchemaError : public Error { public: using Error::Error; };
class LabelError : public Error { public: using Error::Error; };

// Input validation (empty text, malformed language codes, bad builder args)
class ValidationError : public Error { public: using Error::Error; };
class StrategyError : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };

// Gateway / provider failures
class AuthError : public Error { public: using Error::Error; };
class RateLimitError : public Error { public: using Error::Error; };
class TransportError : public Error { public: using Error::Error; };
class UnsupportedLanguageError : public Error { public: using Error::Error; };

/// Non-retryable provider response (or a retryable one after retries ran out).
class ProviderError : public Error {
 public:
  ProviderError(int status, std::string body)
      : Error("provider error, status " + std::to_string(status) + ": " + body),
        status_(status),
        body_(std::move(body)) {}

  int status() const { return status_; }
  const std::string& body() const { return body_; }

 private:
  int status_;
  std::string body_;
};

// Metrics
class EmptyCorpusError : public Error { public: using Error::Error; };
class LengthMismatchError : public Error { public: using Error::Error; };
class EmptyError : public Error { public: using Error::Error; };

// Reporting
class IncompatibleRunsError : public Error { public: using Error::Error; };

}  // namespace cotr
