// eval.hpp - confusion matrices, accuracy / precision / recall / F-measure,
// and the comparison tables.
//
// A zero denominator makes precision or recall 0 and sets the matching
// `*_undefined` flag; F is 0 when precision + recall is 0.

#ifndef SENTI_EVAL_HPP
#define SENTI_EVAL_HPP

#include "senti/classifiers.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace senti::eval
{

/// Binary tally relative to one positive class. Every other class counts as
/// negative.
struct confusion_matrix
{
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const { return tp + fp + fn + tn; }
    std::uint64_t correct() const { return tp + tn; }
    std::uint64_t incorrect() const { return fp + fn; }

    /// Relabel with the roles of positive and negative swapped.
    confusion_matrix swapped() const { return {tn, fn, fp, tp}; }

    bool operator==(const confusion_matrix&) const = default;
};

confusion_matrix tally(std::span<const std::uint32_t> actual, std::span<const std::uint32_t> predicted,
                       std::uint32_t positive);

struct eval_report
{
    std::string model_name;
    std::string algorithm;  // short name, e.g. "mnb"
    std::string positive_class;
    std::uint64_t total = 0;
    std::uint64_t correct = 0;
    std::uint64_t incorrect = 0;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    bool precision_undefined = false;
    bool recall_undefined = false;
    confusion_matrix matrix;
};

/// 2PR / (P + R), or 0 when P + R is 0.
double f_measure(double precision, double recall);

/// Derive every metric from a confusion matrix.
eval_report report_from_matrix(const confusion_matrix& m, std::string model_name, std::string positive_class);

/// Index of `name` among the model's classes; "" picks "pos" if declared,
/// else class 0. Throws config_error for an unknown name.
std::uint32_t resolve_positive_class(const std::vector<std::string>& classes, const std::string& name);

eval_report evaluate(const ml::model& m, const vectorize::feature_matrix& test, const std::string& positive_class = {});

struct named_model
{
    std::string name;
    const ml::model* model = nullptr;
};

/// One report per model, ordered by descending accuracy, then name.
std::vector<eval_report> compare(std::span<const named_model> models, const vectorize::feature_matrix& test,
                                 const std::string& positive_class = {});

/// Sort reports by descending accuracy, ties by name.
void rank(std::vector<eval_report>& reports);

/// "Classifier | Total Testing Reviews | Correctly Classified | Incorrectly Classified | Accuracy (%)"
std::string render_accuracy_table(const std::vector<eval_report>& reports);
/// "Classifier | Precision | Recall | F-Measure", two decimals.
std::string render_measures_table(const std::vector<eval_report>& reports);
/// All eight columns in one table.
std::string render_combined_table(const std::vector<eval_report>& reports);

/// Machine-readable report, schema "senti.report/1", full precision.
std::string report_json(const std::vector<eval_report>& reports, const std::string& test_set);

}  // namespace senti::eval

#endif  // SENTI_EVAL_HPP
