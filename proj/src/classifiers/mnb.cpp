#include "detail.hpp"

#include "senti/errors.hpp"

#include <cmath>

namespace senti::ml
{

model train_mnb(const feature_matrix& data, const mnb_params& params)
{
    detail::check_training(data, "multinomial naive bayes");
    if (!(params.alpha > 0.0) || !std::isfinite(params.alpha))
        throw config_error("mnb smoothing alpha must be positive");

    const std::size_t classes = data.class_values.size();
    const std::size_t width = data.width;
    std::vector<double> term_totals(classes * width, 0.0);
    std::vector<std::size_t> docs(classes, 0);
    for (std::size_t r = 0; r < data.size(); ++r)
    {
        const auto c = data.labels[r];
        ++docs[c];
        const auto& row = data.rows[r];
        for (std::size_t k = 0; k < row.nnz(); ++k)
        {
            if (row.weight[k] < 0.0)
                throw data_error("multinomial naive bayes needs non-negative feature weights");
            term_totals[c * width + row.index[k]] += row.weight[k];
        }
    }
    for (std::size_t c = 0; c < classes; ++c)
        if (docs[c] == 0)
            throw data_error("multinomial naive bayes: class '" + data.class_values[c] + "' has no training instances");

    mnb_state s;
    s.log_prior.resize(classes);
    s.log_likelihood.resize(classes * width);
    const double n = static_cast<double>(data.size());
    for (std::size_t c = 0; c < classes; ++c)
    {
        s.log_prior[c] = std::log(static_cast<double>(docs[c]) / n);
        double total = 0.0;
        for (std::size_t i = 0; i < width; ++i)
            total += term_totals[c * width + i];
        const double denom = total + params.alpha * static_cast<double>(width);
        for (std::size_t i = 0; i < width; ++i)
            s.log_likelihood[c * width + i] = std::log((term_totals[c * width + i] + params.alpha) / denom);
    }

    model m = detail::make_model(algorithm::mnb, data);
    m.hyperparameters.emplace_back("alpha", detail::num(params.alpha));
    m.state = std::move(s);
    return m;
}

namespace detail
{

std::vector<double> mnb_log_scores(const mnb_state& s, std::span<const double> x)
{
    const std::size_t classes = s.log_prior.size();
    const std::size_t width = x.size();
    std::vector<double> out(s.log_prior);
    for (std::size_t i = 0; i < width; ++i)
    {
        if (x[i] == 0.0)
            continue;
        for (std::size_t c = 0; c < classes; ++c)
            out[c] += x[i] * s.log_likelihood[c * width + i];
    }
    return out;
}

}  // namespace detail
}  // namespace senti::ml
