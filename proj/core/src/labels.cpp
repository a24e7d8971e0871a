#include "cotr/labels.hpp"

#include "cotr/errors.hpp"
#include "cotr/text.hpp"

namespace cotr {

LabelSet::LabelSet(std::string task_name, std::vector<std::string> labels)
    : task_name_(std::move(task_name)), labels_(std::move(labels)) {
  if (labels_.empty()) {
    throw ValidationError("label set for task '" + task_name_ + "' is empty");
  }
  folded_.reserve(labels_.size());
  for (const auto& label : labels_) {
    std::string folded = text::fold_case(text::trim(label));
    if (folded.empty()) {
      throw ValidationError("label set for task '" + task_name_ +
                            "' contains a blank label");
    }
    for (const auto& seen : folded_) {
      if (seen == folded) {
        throw ValidationError("label '" + label + "' duplicates another label after case-folding");
      }
    }
    folded_.push_back(std::move(folded));
  }
}

bool LabelSet::contains(std::string_view label) const {
  return !canonical(label).empty();
}

std::string LabelSet::canonical(std::string_view label) const {
  const std::string folded = text::fold_case(text::trim(label));
  for (std::size_t i = 0; i < folded_.size(); ++i) {
    if (folded_[i] == folded) return labels_[i];
  }
  return {};
}

std::string LabelSet::enumerated() const {
  std::string out;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i > 0) out += ", ";
    out += labels_[i];
  }
  return out;
}

}  // namespace cotr
