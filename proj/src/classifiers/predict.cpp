#include "detail.hpp"

#include "senti/errors.hpp"

#include <cmath>
#include <exception>

namespace senti::ml
{
namespace
{

void check_width(const model& m, std::span<const double> x)
{
    if (x.size() != m.feature_width)
        throw data_error("feature vector has width " + std::to_string(x.size()) + " but the model expects " +
                         std::to_string(m.feature_width) +
                         "; was the data vectorized under the training vocabulary?");
}

std::vector<double> margin_pair(double v) { return {-v, v}; }

}  // namespace

std::vector<double> predict_scores(const model& m, std::span<const double> x)
{
    check_width(m, x);
    const std::size_t classes = m.class_values.size();
    return std::visit(
        [&](const auto& s) -> std::vector<double> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, mnb_state>)
            {
                auto scores = detail::mnb_log_scores(s, x);
                const double top = scores[argmax(scores)];
                double sum = 0.0;
                for (auto& v : scores)
                {
                    v = std::exp(v - top);
                    sum += v;
                }
                for (auto& v : scores)
                    v /= sum;
                return scores;
            }
            else if constexpr (std::is_same_v<T, knn_state>)
                return detail::knn_votes(s, x, classes);
            else if constexpr (std::is_same_v<T, tree>)
                return s.leaf_for(x).distribution;
            else if constexpr (std::is_same_v<T, forest_state>)
                return detail::forest_scores(s, x, classes);
            else if constexpr (std::is_same_v<T, boost_state>)
                return margin_pair(detail::boost_margin(s, x));
            else if constexpr (std::is_same_v<T, svm_state>)
                return margin_pair(detail::svm_margin(s, x));
            else
                return detail::mlp_probabilities(s, x);
        },
        m.state);
}

std::uint32_t predict(const model& m, std::span<const double> x)
{
    check_width(m, x);
    if (const auto* s = std::get_if<mnb_state>(&m.state))
        return argmax(detail::mnb_log_scores(*s, x));
    if (const auto* s = std::get_if<tree>(&m.state))
        return s->leaf_for(x).label;
    if (const auto* s = std::get_if<boost_state>(&m.state))
        return detail::boost_margin(*s, x) > 0.0 ? 1 : 0;
    if (const auto* s = std::get_if<svm_state>(&m.state))
        return detail::svm_margin(*s, x) > 0.0 ? 1 : 0;
    return argmax(predict_scores(m, x));
}

std::vector<std::uint32_t> predict_batch(const model& m, const feature_matrix& data)
{
    if (data.width != m.feature_width)
        throw data_error("test data has width " + std::to_string(data.width) + " but the model expects " +
                         std::to_string(m.feature_width) +
                         "; vectorize the test set under the training vocabulary");
    std::vector<std::uint32_t> out(data.size());
    std::exception_ptr failure;
    const auto n = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel
    {
        std::vector<double> x(data.width);
#pragma omp for schedule(dynamic, 16)
        for (std::ptrdiff_t r = 0; r < n; ++r)
        {
            try
            {
                data.rows[r].densify_into(x);
                out[r] = predict(m, x);
            }
            catch (...)
            {
#pragma omp critical
                failure = std::current_exception();
            }
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

std::vector<std::uint32_t> predict_batch_serial(const model& m, const feature_matrix& data)
{
    if (data.width != m.feature_width)
        throw data_error("test data has width " + std::to_string(data.width) + " but the model expects " +
                         std::to_string(m.feature_width) +
                         "; vectorize the test set under the training vocabulary");
    std::vector<std::uint32_t> out(data.size());
    std::vector<double> x(data.width);
    for (std::size_t r = 0; r < data.size(); ++r)
    {
        data.rows[r].densify_into(x);
        out[r] = predict(m, x);
    }
    return out;
}

}  // namespace senti::ml
