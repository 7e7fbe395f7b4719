#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace htc {

struct ClassCounts {
  long true_positive = 0;
  long false_positive = 0;
  long false_negative = 0;
  long support = 0;  // gold occurrences
};

// Per-class confusion counts over parallel gold/prediction name vectors.
// Throws LengthMismatch and UnknownLabel.
std::map<std::string, ClassCounts> confusion_counts(
    const std::vector<std::string>& golds, const std::vector<std::string>& preds,
    const std::vector<std::string>& label_space);

// Harmonic mean of precision and recall; a class with zero predicted and zero
// actual positives scores 0 (averaging stays over the full label space).
double f1_for_class(const ClassCounts& counts);

std::map<std::string, double> per_class_f1(
    const std::vector<std::string>& golds, const std::vector<std::string>& preds,
    const std::vector<std::string>& label_space);

// Unweighted mean of per-class F1 over every class in label_space.
double f1_macro(const std::vector<std::string>& golds,
                const std::vector<std::string>& preds,
                const std::vector<std::string>& label_space);

struct DecayResult {
  std::vector<double> per_level;  // decay_2 .. decay_L
  double average = 0.0;
};

// decay_i = (F1_{i-1} - F1_i) / F1_{i-1}; average over i = 2..L.
// Throws DivisionByZero when a denominator level has F1 = 0, and
// LengthMismatch for fewer than two levels.
DecayResult decay_rates(const std::vector<double>& per_level_f1);

// Fraction of (optionally masked) documents whose gold label appears in the
// retrieved candidate list. Throws MissingLog when a selected document has no
// log, LengthMismatch on ragged inputs. Returns nullopt for an empty subset.
std::optional<double> hit_rate(
    const std::vector<std::vector<std::string>>& retrieved_per_doc,
    const std::vector<std::string>& golds, const std::vector<char>* subset_mask);

struct MetricsReport {
  std::string dataset;
  std::string mode;
  int levels = 0;
  long documents = 0;
  long failed_documents = 0;
  std::vector<double> per_level_f1_macro;
  std::vector<std::optional<double>> decay_per_level;  // levels 2..L
  std::optional<double> decay_avg;
  std::map<int, double> hit_at_k;                // by level; kg modes only
  std::map<int, double> hit_at_k_misclassified;  // by level, misclassified docs
  std::vector<std::map<std::string, double>> per_class_f1_by_level;
  std::vector<std::map<std::string, long>> support_by_level;
};

// Human-readable summary table.
void print_report(const MetricsReport& report, std::ostream& out);

// Per-class F1 and support for one level, sorted by descending support then
// name, as CSV ("label,support,f1").
std::string per_class_csv(const MetricsReport& report, int level);

}  // namespace htc
