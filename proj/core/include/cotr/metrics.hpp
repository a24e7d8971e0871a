#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cotr {

/// Ordered tokens produced by `tokenize`; no token contains whitespace.
struct TokenSequence {
  std::vector<std::string> tokens;

  bool operator==(const TokenSequence&) const = default;
  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

/// Unicode-aware tokenizer: NFC-normalize, case-fold, split on whitespace,
/// strip leading/trailing punctuation from each token, drop empties.
/// Devanagari text passes through unharmed.
TokenSequence tokenize(std::string_view text);

/// Length of the longest (not necessarily contiguous) common subsequence.
/// Symmetric; at most min(|a|, |b|).
std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b);

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// ROUGE-L on whole sequences: P = LCS/|candidate|, R = LCS/|reference|,
/// F1 their harmonic mean (0 when P+R = 0). Empty sides yield 0 for the
/// corresponding ratio without division errors.
RougeScore rouge_l(const TokenSequence& candidate, const TokenSequence& reference);

/// Unweighted mean of per-pair F1 times 100. Throws EmptyCorpusError on an
/// empty list.
double corpus_rouge_l(
    const std::vector<std::pair<TokenSequence, TokenSequence>>& pairs);

struct ErrorStats {
  std::size_t n_total = 0;
  std::size_t n_wrong = 0;
  std::size_t n_parse_failures = 0;  // absent predictions; subset of n_wrong

  double error_pct() const;  // throws EmptyError when n_total = 0
};

/// Compares predictions (absent = parse failure, counted wrong) against
/// golds. Throws LengthMismatchError / EmptyError.
ErrorStats error_rate(const std::vector<std::optional<std::string>>& predictions,
                      const std::vector<std::string>& golds);

/// Sample-count-weighted mean of per-dataset error percentages:
/// sum(pct*n)/sum(n). Throws EmptyError on an empty list, ValidationError
/// on n = 0.
double weighted_average(const std::vector<std::pair<double, std::size_t>>& per_dataset);

/// Display form: two decimals, half-up. Full precision lives in the values
/// themselves; rounding happens only here.
std::string format_pct(double value);

}  // namespace cotr
