#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cotr {

/// The canonical label vocabulary of one classification task. Label order is
/// stable and defines report column / confusion order.
class LabelSet {
 public:
  /// Throws ValidationError unless labels are non-empty and pairwise
  /// distinct after case-folding.
  LabelSet(std::string task_name, std::vector<std::string> labels);

  const std::string& task_name() const { return task_name_; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool contains(std::string_view label) const;

  /// Case-folded lookup; returns the canonical spelling or empty.
  std::string canonical(std::string_view label) const;

  /// "Positive, Negative, Neutral" — for prompt instructions.
  std::string enumerated() const;

 private:
  std::string task_name_;
  std::vector<std::string> labels_;
  std::vector<std::string> folded_;
};

}  // namespace cotr
