#include "cotr/translate.hpp"

#include "cotr/digest.hpp"
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
using nlohmann::ordered_json;

std::string pair_key(const std::string& src, const std::string& tgt) {
  return src + "-" + tgt;
}

}  // namespace

std::string TranslationResult::serialize() const {
  ordered_json j;
  j["source_text"] = source_text;
  j["translated_text"] = translated_text;
  j["source_lang"] = source_lang;
  j["target_lang"] = target_lang;
  j["provider"] = provider;
  return j.dump();
}

TranslationResult TranslationResult::deserialize(const std::string& json_text) {
  const auto j = ordered_json::parse(json_text);
  TranslationResult r;
  r.source_text = j.at("source_text").get<std::string>();
  r.translated_text = j.at("translated_text").get<std::string>();
  r.source_lang = j.at("source_lang").get<std::string>();
  r.target_lang = j.at("target_lang").get<std::string>();
  r.provider = j.at("provider").get<std::string>();
  r.from_cache = false;
  return r;
}

bool is_valid_language_code(const std::string& code) {
  if (code.size() < 2) return false;
  std::size_t i = 0;
  for (; i < 2; ++i) {
    if (code[i] < 'a' || code[i] > 'z') return false;
  }
  while (i < code.size()) {
    if (code[i] != '-') return false;
    ++i;
    std::size_t run = 0;
    while (i < code.size() && code[i] != '-') {
      const char c = code[i];
      const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9');
      if (!ok) return false;
      ++i;
      ++run;
    }
    if (run == 0 || run > 8) return false;
  }
  return true;
}

std::shared_ptr<MockTranslator> MockTranslator::from_file(
    const std::filesystem::path& fixture) {
  std::ifstream in(fixture);
  if (!in) throw FileError("cannot open MT fixture: " + fixture.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("MT fixture " + fixture.string() + ": " + e.what());
  }
  auto mt = std::make_shared<MockTranslator>();
  if (doc.contains("provider")) mt->name_ = doc.at("provider").get<std::string>();
  for (const auto& [pair, entries] : doc.at("translations").items()) {
    for (const auto& [source, target] : entries.items()) {
      mt->table_[pair][source] = target.get<std::string>();
    }
  }
  return mt;
}

void MockTranslator::add(const std::string& source_lang,
                         const std::string& target_lang,
                         const std::string& source, const std::string& target) {
  table_[pair_key(source_lang, target_lang)][source] = target;
}

bool MockTranslator::supports(const std::string& source_lang,
                              const std::string& target_lang) const {
  return table_.count(pair_key(source_lang, target_lang)) > 0;
}

std::string MockTranslator::translate_text(const std::string& text,
                                           const std::string& source_lang,
                                           const std::string& target_lang) {
  auto pair_it = table_.find(pair_key(source_lang, target_lang));
  if (pair_it == table_.end()) {
    throw UnsupportedLanguageError("mock MT has no pair " +
                                   pair_key(source_lang, target_lang));
  }
  auto it = pair_it->second.find(text);
  if (it == pair_it->second.end()) {
    throw ProviderError(404, "mock MT fixture has no translation for: " + text);
  }
  return it->second;
}

HttpTranslator::HttpTranslator(Config config) : config_(std::move(config)) {}

std::string HttpTranslator::translate_text(const std::string& text,
                                           const std::string& source_lang,
                                           const std::string& target_lang) {
  const auto scheme_end = config_.endpoint_url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("MT endpoint_url must include a scheme");
  }
  const auto path_start = config_.endpoint_url.find('/', scheme_end + 3);
  const std::string base = path_start == std::string::npos
                               ? config_.endpoint_url
                               : config_.endpoint_url.substr(0, path_start);
  const std::string path =
      path_start == std::string::npos ? "/" : config_.endpoint_url.substr(path_start);

  httplib::Client client(base);
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
  body["q"] = text;
  body["source"] = source_lang;
  body["target"] = target_lang;
  auto result = client.Post(path, headers, body.dump(), "application/json");
  if (!result) {
    throw TransportError("MT request failed: " + httplib::to_string(result.error()));
  }
  if (result->status == 401 || result->status == 403) {
    throw AuthError("MT provider rejected credentials");
  }
  if (result->status == 429) throw RateLimitError("MT provider rate limit");
  if (result->status >= 500) {
    throw TransportError("MT provider server error (status " +
                         std::to_string(result->status) + ")");
  }
  if (result->status != 200) throw ProviderError(result->status, result->body);
  try {
    const auto doc = json::parse(result->body);
    return doc.at("translatedText").get<std::string>();
  } catch (const json::exception& e) {
    throw ProviderError(result->status,
                        std::string("unexpected MT response shape: ") + e.what());
  }
}

TranslationService::TranslationService(std::shared_ptr<Translator> provider,
                                       std::optional<DiskCache> cache,
                                       RetryPolicy policy)
    : provider_(std::move(provider)), cache_(std::move(cache)), policy_(policy) {
  if (!provider_) throw ConfigError("translation service requires a provider");
}

TranslationResult TranslationService::translate(const std::string& text,
                                                const std::string& source_lang,
                                                const std::string& target_lang) {
  if (text::trim(text).empty()) {
    throw ValidationError("cannot translate empty text");
  }
  if (!is_valid_language_code(source_lang) || !is_valid_language_code(target_lang)) {
    throw ValidationError("malformed language code: " + source_lang + " -> " +
                          target_lang);
  }
  if (!provider_->supports(source_lang, target_lang)) {
    throw UnsupportedLanguageError("provider " + provider_->name() +
                                   " does not support " + source_lang + " -> " +
                                   target_lang);
  }

  std::string material = "mt.v1\x1f";
  const auto append = [&material](std::string_view v) {
    material += std::to_string(v.size());
    material.push_back(':');
    material += v;
    material.push_back('\x1f');
  };
  append(provider_->name());
  append(text);
  append(source_lang);
  append(target_lang);
  const std::string key = sha256_hex(material);

  if (cache_) {
    if (auto hit = cache_->get(key)) {
      try {
        TranslationResult r = TranslationResult::deserialize(*hit);
        r.from_cache = true;
        ++stats_.cache_hits;
        return r;
      } catch (const std::exception&) {
        // fall through to a fresh call
      }
    }
  }

  int backoff_ms = policy_.initial_backoff_ms;
  for (int attempt = 1;; ++attempt) {
    try {
      ++stats_.provider_calls;
      TranslationResult r;
      r.source_text = text;
      r.translated_text = provider_->translate_text(text, source_lang, target_lang);
      r.source_lang = source_lang;
      r.target_lang = target_lang;
      r.provider = provider_->name();
      r.from_cache = false;
      if (r.translated_text.empty()) {
        throw ProviderError(502, "provider returned an empty translation");
      }
      if (cache_) cache_->put(key, r.serialize());
      return r;
    } catch (const RateLimitError&) {
      if (attempt >= policy_.max_attempts) throw;
    } catch (const TransportError&) {
      if (attempt >= policy_.max_attempts) throw;
    }
    if (backoff_ms > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
    }
    backoff_ms = static_cast<int>(std::min<double>(
        backoff_ms * policy_.multiplier, policy_.max_backoff_ms));
  }
}

}  // namespace cotr
