#pragma once

#include "cotr/cache.hpp"
#include "cotr/gateway.hpp"  // RetryPolicy

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace cotr {

struct TranslationResult {
  std::string source_text;
  std::string translated_text;
  std::string source_lang;
  std::string target_lang;
  std::string provider;
  bool from_cache = false;

  std::string serialize() const;
  static TranslationResult deserialize(const std::string& json_text);
};

/// A machine-translation provider.
class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::string translate_text(const std::string& text,
                                     const std::string& source_lang,
                                     const std::string& target_lang) = 0;
  virtual bool supports(const std::string& source_lang,
                        const std::string& target_lang) const = 0;
  virtual std::string name() const = 0;
};

/// Fixture-driven provider: a file of language pairs and exact
/// source -> target text mappings.
class MockTranslator : public Translator {
 public:
  static std::shared_ptr<MockTranslator> from_file(
      const std::filesystem::path& fixture);

  std::string translate_text(const std::string& text,
                             const std::string& source_lang,
                             const std::string& target_lang) override;
  bool supports(const std::string& source_lang,
                const std::string& target_lang) const override;
  std::string name() const override { return name_; }

  void add(const std::string& source_lang, const std::string& target_lang,
           const std::string& source, const std::string& target);

 private:
  std::string name_ = "mock-mt";
  // key: "src-tgt" -> source text -> target text
  std::map<std::string, std::map<std::string, std::string>> table_;
};

/// Generic HTTP MT endpoint: POST {q, source, target} -> {translatedText}.
class HttpTranslator : public Translator {
 public:
  struct Config {
    std::string endpoint_url;
    std::string credential_env;
    int timeout_s = 60;
  };
  explicit HttpTranslator(Config config);

  std::string translate_text(const std::string& text,
                             const std::string& source_lang,
                             const std::string& target_lang) override;
  bool supports(const std::string&, const std::string&) const override { return true; }
  std::string name() const override { return "http-mt"; }

 private:
  Config config_;
};

/// True for well-formed tags: two-letter primary subtag, optional
/// alphanumeric subtags ("mr", "en", "mr-IN").
bool is_valid_language_code(const std::string& code);

struct TranslationStats {
  std::atomic<long> provider_calls{0};
  std::atomic<long> cache_hits{0};
};

/// Caching front of an MT provider; results are cached by
/// (provider, text, source, target) with the same write-then-rename
/// discipline as the chat gateway.
class TranslationService {
 public:
  TranslationService(std::shared_ptr<Translator> provider,
                     std::optional<DiskCache> cache,
                     RetryPolicy policy = {});

  /// Throws ValidationError on empty text or a malformed language code,
  /// UnsupportedLanguageError when the provider lacks the pair.
  TranslationResult translate(const std::string& text,
                              const std::string& source_lang,
                              const std::string& target_lang);

  const TranslationStats& stats() const { return stats_; }
  std::string provider_name() const { return provider_->name(); }

 private:
  std::shared_ptr<Translator> provider_;
  std::optional<DiskCache> cache_;
  RetryPolicy policy_;
  TranslationStats stats_;
};

}  // namespace cotr
