#include "htc/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "htc/errors.hpp"

namespace htc {

std::map<std::string, ClassCounts> confusion_counts(
    const std::vector<std::string>& golds, const std::vector<std::string>& preds,
    const std::vector<std::string>& label_space) {
  if (golds.size() != preds.size()) {
    throw LengthMismatch("golds and predictions differ in length: " +
                         std::to_string(golds.size()) + " vs " +
                         std::to_string(preds.size()));
  }
  std::map<std::string, ClassCounts> counts;
  for (const auto& label : label_space) {
    counts.emplace(label, ClassCounts{});
  }
  for (std::size_t i = 0; i < golds.size(); ++i) {
    auto gold_it = counts.find(golds[i]);
    auto pred_it = counts.find(preds[i]);
    if (gold_it == counts.end()) {
      throw UnknownLabel("gold label '" + golds[i] + "' not in label space");
    }
    if (pred_it == counts.end()) {
      throw UnknownLabel("predicted label '" + preds[i] + "' not in label space");
    }
    gold_it->second.support += 1;
    if (golds[i] == preds[i]) {
      gold_it->second.true_positive += 1;
    } else {
      pred_it->second.false_positive += 1;
      gold_it->second.false_negative += 1;
    }
  }
  return counts;
}

double f1_for_class(const ClassCounts& c) {
  const double denom = 2.0 * static_cast<double>(c.true_positive) +
                       static_cast<double>(c.false_positive) +
                       static_cast<double>(c.false_negative);
  if (denom == 0.0) {
    return 0.0;
  }
  return 2.0 * static_cast<double>(c.true_positive) / denom;
}

std::map<std::string, double> per_class_f1(
    const std::vector<std::string>& golds, const std::vector<std::string>& preds,
    const std::vector<std::string>& label_space) {
  std::map<std::string, double> out;
  for (const auto& [label, counts] : confusion_counts(golds, preds, label_space)) {
    out.emplace(label, f1_for_class(counts));
  }
  return out;
}

double f1_macro(const std::vector<std::string>& golds,
                const std::vector<std::string>& preds,
                const std::vector<std::string>& label_space) {
  if (label_space.empty()) {
    throw LengthMismatch("label space is empty");
  }
  const auto by_class = per_class_f1(golds, preds, label_space);
  double sum = 0.0;
  for (const auto& [label, f1] : by_class) {
    sum += f1;
  }
  return sum / static_cast<double>(by_class.size());
}

DecayResult decay_rates(const std::vector<double>& per_level_f1) {
  if (per_level_f1.size() < 2) {
    throw LengthMismatch("decay needs at least two levels");
  }
  DecayResult out;
  out.per_level.reserve(per_level_f1.size() - 1);
  double sum = 0.0;
  for (std::size_t i = 1; i < per_level_f1.size(); ++i) {
    const double prev = per_level_f1[i - 1];
    if (prev == 0.0) {
      throw DivisionByZero("F1 at level " + std::to_string(i) +
                           " is zero; decay at level " + std::to_string(i + 1) +
                           " undefined");
    }
    const double decay = (prev - per_level_f1[i]) / prev;
    out.per_level.push_back(decay);
    sum += decay;
  }
  out.average = sum / static_cast<double>(out.per_level.size());
  return out;
}

std::optional<double> hit_rate(
    const std::vector<std::vector<std::string>>& retrieved_per_doc,
    const std::vector<std::string>& golds, const std::vector<char>* subset_mask) {
  if (retrieved_per_doc.size() != golds.size()) {
    throw LengthMismatch("retrieval logs and golds differ in length");
  }
  if (subset_mask != nullptr && subset_mask->size() != golds.size()) {
    throw LengthMismatch("subset mask and golds differ in length");
  }
  long selected = 0;
  long hits = 0;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    if (subset_mask != nullptr && (*subset_mask)[i] == 0) {
      continue;
    }
    const auto& retrieved = retrieved_per_doc[i];
    if (retrieved.empty()) {
      throw MissingLog("document " + std::to_string(i) +
                       " has no retrieval log at this level");
    }
    ++selected;
    if (std::find(retrieved.begin(), retrieved.end(), golds[i]) != retrieved.end()) {
      ++hits;
    }
  }
  if (selected == 0) {
    return std::nullopt;
  }
  return static_cast<double>(hits) / static_cast<double>(selected);
}

void print_report(const MetricsReport& report, std::ostream& out) {
  out << "dataset: " << report.dataset << "\n"
      << "mode:    " << report.mode << "\n"
      << "docs:    " << report.documents;
  if (report.failed_documents > 0) {
    out << " (" << report.failed_documents << " failed)";
  }
  out << "\n\n";
  out << std::fixed << std::setprecision(4);
  out << "level   f1-macro   decay      hit@k      hit@k(miscls)\n";
  for (int l = 1; l <= report.levels; ++l) {
    out << std::left << std::setw(8) << l;
    out << std::setw(11) << report.per_level_f1_macro[static_cast<std::size_t>(l - 1)];
    if (l >= 2) {
      const auto& decay = report.decay_per_level[static_cast<std::size_t>(l - 2)];
      if (decay.has_value()) {
        out << std::setw(11) << *decay;
      } else {
        out << std::setw(11) << "n/a";
      }
    } else {
      out << std::setw(11) << "-";
    }
    auto hit = report.hit_at_k.find(l);
    if (hit != report.hit_at_k.end()) {
      out << std::setw(11) << hit->second;
    } else {
      out << std::setw(11) << "-";
    }
    auto miss = report.hit_at_k_misclassified.find(l);
    if (miss != report.hit_at_k_misclassified.end()) {
      out << std::setw(11) << miss->second;
    } else {
      out << std::setw(11) << "-";
    }
    out << "\n";
  }
  if (report.decay_avg.has_value()) {
    out << "\naverage decay rate: " << *report.decay_avg << "\n";
  }
  // Macro-F1 averages over the full level label space; zero-support classes
  // that are never predicted count as F1 = 0.
  out << "convention: zero-support, never-predicted classes score F1 = 0\n";
}

std::string per_class_csv(const MetricsReport& report, int level) {
  if (level < 1 || level > report.levels) {
    throw LevelOutOfRange("per_class_csv level " + std::to_string(level));
  }
  const auto& f1s = report.per_class_f1_by_level[static_cast<std::size_t>(level - 1)];
  const auto& supports = report.support_by_level[static_cast<std::size_t>(level - 1)];

  std::vector<std::pair<std::string, long>> order;
  order.reserve(supports.size());
  for (const auto& [label, support] : supports) {
    order.emplace_back(label, support);
  }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) {
      return a.second > b.second;
    }
    return a.first < b.first;
  });

  std::ostringstream out;
  out << "label,support,f1\n";
  out << std::fixed << std::setprecision(6);
  for (const auto& [label, support] : order) {
    std::string quoted = label;
    if (quoted.find(',') != std::string::npos) {
      quoted = "\"" + quoted + "\"";
    }
    out << quoted << ',' << support << ',' << f1s.at(label) << "\n";
  }
  return out.str();
}

}  // namespace htc
