#include "senti/eval.hpp"

#include "senti/errors.hpp"

#include <algorithm>

namespace senti::eval
{

confusion_matrix tally(std::span<const std::uint32_t> actual, std::span<const std::uint32_t> predicted,
                       std::uint32_t positive)
{
    if (actual.size() != predicted.size())
        throw data_error("prediction count does not match the test set");
    confusion_matrix m;
    for (std::size_t i = 0; i < actual.size(); ++i)
    {
        const bool a = actual[i] == positive;
        const bool p = predicted[i] == positive;
        if (a && p)
            ++m.tp;
        else if (!a && p)
            ++m.fp;
        else if (a)
            ++m.fn;
        else
            ++m.tn;
    }
    return m;
}

double f_measure(double precision, double recall)
{
    const double denom = precision + recall;
    return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

eval_report report_from_matrix(const confusion_matrix& m, std::string model_name, std::string positive_class)
{
    eval_report r;
    r.model_name = std::move(model_name);
    r.positive_class = std::move(positive_class);
    r.matrix = m;
    r.total = m.total();
    r.correct = m.correct();
    r.incorrect = m.incorrect();
    r.accuracy = r.total ? static_cast<double>(r.correct) / static_cast<double>(r.total) : 0.0;
    r.precision_undefined = m.tp + m.fp == 0;
    r.recall_undefined = m.tp + m.fn == 0;
    r.precision = r.precision_undefined ? 0.0 : static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
    r.recall = r.recall_undefined ? 0.0 : static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
    r.f_measure = f_measure(r.precision, r.recall);
    return r;
}

std::uint32_t resolve_positive_class(const std::vector<std::string>& classes, const std::string& name)
{
    const std::string& wanted = name.empty() ? std::string("pos") : name;
    for (std::uint32_t c = 0; c < classes.size(); ++c)
        if (classes[c] == wanted)
            return c;
    if (name.empty() && !classes.empty())
        return 0;
    throw config_error("positive class '" + name + "' is not one of the model's classes");
}

eval_report evaluate(const ml::model& m, const vectorize::feature_matrix& test, const std::string& positive_class)
{
    if (test.class_values != m.class_values)
        throw schema_error("test set classes differ from the model's classes");
    const auto positive = resolve_positive_class(m.class_values, positive_class);
    const auto predicted = ml::predict_batch(m, test);
    auto r = report_from_matrix(tally(test.labels, predicted, positive), std::string(ml::display_name(m.variant)),
                                m.class_values[positive]);
    r.algorithm = std::string(ml::to_string(m.variant));
    return r;
}

void rank(std::vector<eval_report>& reports)
{
    std::stable_sort(reports.begin(), reports.end(), [](const eval_report& a, const eval_report& b) {
        // compare correct/total exactly by cross-multiplication
        const auto lhs = static_cast<unsigned __int128>(a.correct) * b.total;
        const auto rhs = static_cast<unsigned __int128>(b.correct) * a.total;
        if (lhs != rhs)
            return lhs > rhs;
        return a.model_name < b.model_name;
    });
}

std::vector<eval_report> compare(std::span<const named_model> models, const vectorize::feature_matrix& test,
                                 const std::string& positive_class)
{
    if (models.empty())
        throw config_error("compare needs at least one model");
    std::vector<eval_report> out;
    for (const auto& nm : models)
    {
        auto r = evaluate(*nm.model, test, positive_class);
        if (!nm.name.empty())
            r.model_name = nm.name;
        out.push_back(std::move(r));
    }
    rank(out);
    return out;
}

}  // namespace senti::eval
