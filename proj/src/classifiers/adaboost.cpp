#include "detail.hpp"

#include "senti/errors.hpp"

#include <cmath>

namespace senti::ml
{

model train_adaboost(const feature_matrix& data, const adaboost_params& params, std::uint64_t seed,
                     boost_trace* trace)
{
    detail::check_training(data, "adaboost", true);
    if (params.rounds == 0)
        throw config_error("adaboost: need at least one round");
    if (params.weak.min_leaf == 0)
        throw config_error("adaboost: min_leaf must be at least 1");

    const std::size_t n = data.size();
    const std::vector<std::uint32_t> counts(n, 1);
    std::vector<double> weights(n, 1.0 / static_cast<double>(n));
    std::vector<char> wrong(n, 0);
    std::vector<double> x(data.width);

    boost_state s;
    for (std::size_t t = 0; t < params.rounds; ++t)
    {
        tree learner = grow_tree(data, {counts, weights}, params.weak);

        double eps = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            data.rows[i].densify_into(x);
            wrong[i] = learner.leaf_for(x).label != data.labels[i];
            if (wrong[i])
                eps += weights[i];
        }
        if (trace)
            trace->errors.push_back(eps);

        if (eps >= 0.5)
        {
            // no better than chance under the current weights: discard
            if (trace)
                trace->stopped_weak = true;
            break;
        }
        if (eps <= 0.0)
        {
            s.learners.push_back(std::move(learner));
            s.alphas.push_back(adaboost_alpha_cap);
            if (trace)
            {
                trace->alphas.push_back(adaboost_alpha_cap);
                trace->stopped_perfect = true;
            }
            break;
        }

        const double alpha = 0.5 * std::log((1.0 - eps) / eps);
        const double up = std::exp(alpha);
        const double down = std::exp(-alpha);
        double z = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            weights[i] *= wrong[i] ? up : down;
            z += weights[i];
        }
        double rebalanced = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            weights[i] /= z;
            if (wrong[i])
                rebalanced += weights[i];
        }
        s.learners.push_back(std::move(learner));
        s.alphas.push_back(alpha);
        if (trace)
        {
            trace->alphas.push_back(alpha);
            trace->rebalanced_errors.push_back(rebalanced);
            trace->weights.push_back(weights);
        }
    }

    model m = detail::make_model(algorithm::adaboost, data);
    m.hyperparameters.emplace_back("rounds", detail::num(params.rounds));
    detail::add_tree_params(m, "weak_", params.weak);
    m.hyperparameters.emplace_back("seed", std::to_string(seed));
    m.state = std::move(s);
    return m;
}

namespace detail
{

double boost_margin(const boost_state& s, std::span<const double> x)
{
    double f = 0.0;
    for (std::size_t t = 0; t < s.learners.size(); ++t)
        f += s.alphas[t] * (s.learners[t].leaf_for(x).label == 1 ? 1.0 : -1.0);
    return f;
}

}  // namespace detail
}  // namespace senti::ml
