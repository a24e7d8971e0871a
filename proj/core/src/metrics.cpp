#include "cotr/metrics.hpp"

#include "cotr/errors.hpp"
#include "cotr/text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cotr {

TokenSequence tokenize(std::string_view input) {
  TokenSequence seq;
  const std::string folded = text::fold_case(text::nfc(input));
  for (const std::string& piece : text::split_whitespace(folded)) {
    std::string token = text::strip_edge_punctuation(piece);
    if (!token.empty()) seq.tokens.push_back(std::move(token));
  }
  return seq;
}

std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b) {
  const auto& x = a.tokens;
  const auto& y = b.tokens;
  if (x.empty() || y.empty()) return 0;
  // Two-row DP over the classic recurrence.
  std::vector<std::size_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      if (x[i - 1] == y[j - 1]) {
        cur[j] = prev[j - 1] + 1;
      } else {
        cur[j] = std::max(prev[j], cur[j - 1]);
      }
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

RougeScore rouge_l(const TokenSequence& candidate, const TokenSequence& reference) {
  RougeScore score;
  const auto lcs = static_cast<double>(lcs_length(candidate, reference));
  score.precision = candidate.empty() ? 0.0 : lcs / static_cast<double>(candidate.size());
  score.recall = reference.empty() ? 0.0 : lcs / static_cast<double>(reference.size());
  const double denom = score.precision + score.recall;
  score.f1 = denom == 0.0 ? 0.0 : 2.0 * score.precision * score.recall / denom;
  return score;
}

double corpus_rouge_l(
    const std::vector<std::pair<TokenSequence, TokenSequence>>& pairs) {
  if (pairs.empty()) {
    throw EmptyCorpusError("corpus ROUGE-L over an empty pair list");
  }
  double sum = 0.0;
  for (const auto& [candidate, reference] : pairs) {
    sum += rouge_l(candidate, reference).f1;
  }
  return 100.0 * sum / static_cast<double>(pairs.size());
}

double ErrorStats::error_pct() const {
  if (n_total == 0) throw EmptyError("error rate over zero examples");
  return 100.0 * static_cast<double>(n_wrong) / static_cast<double>(n_total);
}

ErrorStats error_rate(const std::vector<std::optional<std::string>>& predictions,
                      const std::vector<std::string>& golds) {
  if (predictions.size() != golds.size()) {
    throw LengthMismatchError(
        "predictions (" + std::to_string(predictions.size()) +
        ") and golds (" + std::to_string(golds.size()) + ") differ in length");
  }
  if (golds.empty()) throw EmptyError("error rate over zero examples");
  ErrorStats stats;
  stats.n_total = golds.size();
  for (std::size_t i = 0; i < golds.size(); ++i) {
    if (!predictions[i].has_value()) {
      ++stats.n_wrong;
      ++stats.n_parse_failures;
    } else if (*predictions[i] != golds[i]) {
      ++stats.n_wrong;
    }
  }
  return stats;
}

double weighted_average(
    const std::vector<std::pair<double, std::size_t>>& per_dataset) {
  if (per_dataset.empty()) throw EmptyError("weighted average of nothing");
  double weighted_sum = 0.0;
  double total = 0.0;
  for (const auto& [pct, n] : per_dataset) {
    if (n == 0) throw ValidationError("weighted average with a zero-sized dataset");
    weighted_sum += pct * static_cast<double>(n);
    total += static_cast<double>(n);
  }
  return weighted_sum / total;
}

std::string format_pct(double value) {
  // Half-up at two decimals; llround ties away from zero.
  long long rounded = std::llround(value * 100.0);
  const bool negative = rounded < 0;
  if (negative) rounded = -rounded;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%lld.%02lld", negative ? "-" : "",
                rounded / 100, rounded % 100);
  return buf;
}

}  // namespace cotr
