#include "senti/eval.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>

namespace senti::eval
{
namespace
{

std::string fixed(double v, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

using table_rows = std::vector<std::vector<std::string>>;

// First column left-aligned, the rest right-aligned.
std::string render(const std::vector<std::string>& header, const table_rows& rows)
{
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c)
        width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c)
            width[c] = std::max(width[c], r[c].size());

    auto line = [&](const std::vector<std::string>& cells) {
        std::string out;
        for (std::size_t c = 0; c < cells.size(); ++c)
        {
            const std::string pad(width[c] - cells[c].size(), ' ');
            if (c)
                out += " | ";
            out += c == 0 ? cells[c] + pad : pad + cells[c];
        }
        while (!out.empty() && out.back() == ' ')
            out.pop_back();
        return out + '\n';
    };

    std::string out = line(header);
    std::string rule;
    for (std::size_t c = 0; c < header.size(); ++c)
    {
        if (c)
            rule += "-+-";
        rule += std::string(width[c], '-');
    }
    out += rule + '\n';
    for (const auto& r : rows)
        out += line(r);
    return out;
}

std::string flagged(double v, bool undefined)
{
    return fixed(v, 2) + (undefined ? "*" : "");
}

std::string footnote(const std::vector<eval_report>& reports)
{
    std::string out;
    if (!reports.empty())
        out += "positive class: " + reports.front().positive_class + '\n';
    const bool any = std::any_of(reports.begin(), reports.end(),
                                 [](const eval_report& r) { return r.precision_undefined || r.recall_undefined; });
    if (any)
        out += "* zero denominator, reported as 0\n";
    return out;
}

}  // namespace

std::string render_accuracy_table(const std::vector<eval_report>& reports)
{
    table_rows rows;
    for (const auto& r : reports)
        rows.push_back({r.model_name, std::to_string(r.total), std::to_string(r.correct), std::to_string(r.incorrect),
                        fixed(100.0 * r.accuracy, 2)});
    return render({"Classifier", "Total Testing Reviews", "Correctly Classified", "Incorrectly Classified",
                   "Accuracy (%)"},
                  rows);
}

std::string render_measures_table(const std::vector<eval_report>& reports)
{
    table_rows rows;
    for (const auto& r : reports)
        rows.push_back({r.model_name, flagged(r.precision, r.precision_undefined), flagged(r.recall, r.recall_undefined),
                        fixed(r.f_measure, 2)});
    return render({"Classifier", "Precision", "Recall", "F-Measure"}, rows) + footnote(reports);
}

std::string render_combined_table(const std::vector<eval_report>& reports)
{
    table_rows rows;
    for (const auto& r : reports)
        rows.push_back({r.model_name, std::to_string(r.total), std::to_string(r.correct), std::to_string(r.incorrect),
                        fixed(100.0 * r.accuracy, 2), flagged(r.precision, r.precision_undefined),
                        flagged(r.recall, r.recall_undefined), fixed(r.f_measure, 2)});
    return render({"Classifier", "Total Testing Reviews", "Correctly Classified", "Incorrectly Classified", "Accuracy (%)", "Precision", "Recall", "F-Measure"},
                  rows) +
           footnote(reports);
}

std::string report_json(const std::vector<eval_report>& reports, const std::string& test_set)
{
    nlohmann::ordered_json doc;
    doc["schema"] = "senti.report/1";
    doc["test_set"] = test_set;
    doc["positive_class"] = reports.empty() ? std::string() : reports.front().positive_class;
    auto& list = doc["models"] = nlohmann::ordered_json::array();
    for (const auto& r : reports)
    {
        nlohmann::ordered_json m;
        m["name"] = r.model_name;
        m["algorithm"] = r.algorithm;
        m["total"] = r.total;
        m["correct"] = r.correct;
        m["incorrect"] = r.incorrect;
        m["accuracy"] = r.accuracy;
        m["precision"] = r.precision;
        m["recall"] = r.recall;
        m["f_measure"] = r.f_measure;
        m["precision_undefined"] = r.precision_undefined;
        m["recall_undefined"] = r.recall_undefined;
        m["confusion"] = {{"tp", r.matrix.tp}, {"fp", r.matrix.fp}, {"fn", r.matrix.fn}, {"tn", r.matrix.tn}};
        list.push_back(std::move(m));
    }
    return doc.dump(2) + '\n';
}

}  // namespace senti::eval
