#include "detail.hpp"

#include "senti/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace senti::ml
{
namespace
{

double sparse_dot(const std::vector<double>& w, const vectorize::sparse_row& row)
{
    double s = 0.0;
    for (std::size_t k = 0; k < row.nnz(); ++k)
        s += w[row.index[k]] * row.weight[k];
    return s;
}

/// argmin over b of sum max(0, 1 - y_i (f_i + b)). Term i has its kink at
/// y_i - f_i; the slope starts at -(number of positives) and rises by one at
/// every kink, so the flat minimum lies between kinks P and P+1. Returns the
/// midpoint of that interval.
double best_bias(const std::vector<double>& f, const std::vector<double>& y)
{
    std::vector<double> kinks(f.size());
    std::size_t positives = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
    {
        kinks[i] = y[i] - f[i];
        positives += y[i] > 0;
    }
    std::sort(kinks.begin(), kinks.end());
    if (positives == 0)
        return kinks.front();
    if (positives == kinks.size())
        return kinks.back();
    return 0.5 * (kinks[positives - 1] + kinks[positives]);
}

}  // namespace

double svm_objective(const svm_state& state, const feature_matrix& data, double lambda)
{
    double norm2 = 0.0;
    for (const double v : state.weights)
        norm2 += v * v;
    double hinge = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i)
    {
        const double y = data.labels[i] == 1 ? 1.0 : -1.0;
        hinge += std::max(0.0, 1.0 - y * (sparse_dot(state.weights, data.rows[i]) + state.bias));
    }
    return 0.5 * lambda * norm2 + hinge / static_cast<double>(data.size());
}

// Pegasos stochastic subgradient descent on w. Step t (1-based, counted
// across epochs) uses eta = 1 / (lambda * t):
//   w <- (1 - eta * lambda) w;  if y (w.x + b) < 1:  w += eta y x
// The margin is measured before the shrink. The bias is not regularized and
// is held fixed during an epoch; it starts at the exact minimizer of the
// objective for w = 0 and is re-solved exactly after every epoch.
model train_svm(const feature_matrix& data, const svm_params& params, std::uint64_t seed, svm_trace* trace)
{
    detail::check_training(data, "svm", true);
    if (!(params.lambda > 0.0) || !std::isfinite(params.lambda))
        throw config_error("svm: lambda must be positive");
    if (params.epochs == 0)
        throw config_error("svm: need at least one epoch");

    const std::size_t n = data.size();
    svm_state s;
    s.weights.assign(data.width, 0.0);
    std::vector<double> f(n, 0.0);
    std::vector<double> ys(n);
    for (std::size_t r = 0; r < n; ++r)
        ys[r] = data.labels[r] == 1 ? 1.0 : -1.0;
    s.bias = best_bias(f, ys);
    if (trace)
        trace->objectives.push_back(svm_objective(s, data, params.lambda));

    // w is kept as scale * v so the shrink is O(1)
    std::vector<double> v(data.width, 0.0);
    double scale = 1.0;
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    splitmix64 rng(seed);
    std::uint64_t t = 0;

    for (std::size_t epoch = 0; epoch < params.epochs; ++epoch)
    {
        rng.shuffle(std::span<std::uint32_t>(order));
        for (const auto i : order)
        {
            ++t;
            const double eta = 1.0 / (params.lambda * static_cast<double>(t));
            const auto& row = data.rows[i];
            const double y = data.labels[i] == 1 ? 1.0 : -1.0;
            const double margin = y * (scale * sparse_dot(v, row) + s.bias);

            const double shrink = 1.0 - eta * params.lambda;
            if (shrink == 0.0)
            {
                std::fill(v.begin(), v.end(), 0.0);
                scale = 1.0;
            }
            else
            {
                scale *= shrink;
            }
            if (margin < 1.0)
            {
                for (std::size_t k = 0; k < row.nnz(); ++k)
                    v[row.index[k]] += eta * y * row.weight[k] / scale;
            }
            if (scale < 1e-100)
            {
                for (auto& e : v)
                    e *= scale;
                scale = 1.0;
            }
        }
        for (std::size_t k = 0; k < v.size(); ++k)
            s.weights[k] = v[k] * scale;
        for (std::size_t r = 0; r < n; ++r)
            f[r] = sparse_dot(s.weights, data.rows[r]);
        s.bias = best_bias(f, ys);
        if (trace)
            trace->objectives.push_back(svm_objective(s, data, params.lambda));
    }

    model m = detail::make_model(algorithm::svm, data);
    m.hyperparameters.emplace_back("lambda", detail::num(params.lambda));
    m.hyperparameters.emplace_back("epochs", detail::num(params.epochs));
    m.hyperparameters.emplace_back("seed", std::to_string(seed));
    m.state = std::move(s);
    return m;
}

namespace detail
{

double svm_margin(const svm_state& s, std::span<const double> x)
{
    double v = s.bias;
    for (std::size_t i = 0; i < x.size(); ++i)
        v += s.weights[i] * x[i];
    return v;
}

}  // namespace detail
}  // namespace senti::ml
