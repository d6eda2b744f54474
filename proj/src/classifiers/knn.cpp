#include "detail.hpp"

#include "senti/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace senti::ml
{
namespace
{

inline double row_distance(const knn_params& p, const double* row, std::span<const double> x)
{
    double sum = 0.0;
    const std::size_t width = x.size();
    switch (p.distance)
    {
    case distance_kind::euclidean:
        for (std::size_t i = 0; i < width; ++i)
        {
            const double d = row[i] - x[i];
            sum += d * d;
        }
        break;
    case distance_kind::manhattan:
        for (std::size_t i = 0; i < width; ++i)
            sum += std::abs(row[i] - x[i]);
        break;
    case distance_kind::minkowski:
        for (std::size_t i = 0; i < width; ++i)
            sum += std::pow(std::abs(row[i] - x[i]), p.p);
        break;
    }
    return sum;
}

}  // namespace

model train_knn(const feature_matrix& data, const knn_params& params)
{
    detail::check_training(data, "k-nn");
    if (params.k == 0)
        throw config_error("k-nn: k must be positive");
    if (params.k > data.size())
        throw config_error("k-nn: k = " + std::to_string(params.k) + " exceeds the " + std::to_string(data.size()) +
                           " training instances");
    if (params.distance == distance_kind::minkowski && !(params.p >= 1.0 && std::isfinite(params.p)))
        throw config_error("k-nn: minkowski p must be a finite value >= 1");

    knn_state s;
    s.params = params;
    s.training = data;
    s.dense = data.dense();

    model m = detail::make_model(algorithm::knn, data);
    m.hyperparameters.emplace_back("k", detail::num(params.k));
    m.hyperparameters.emplace_back("distance", std::string(to_string(params.distance)));
    if (params.distance == distance_kind::minkowski)
        m.hyperparameters.emplace_back("p", detail::num(params.p));
    m.state = std::move(s);
    return m;
}

void knn_distances(const knn_state& s, std::span<const double> x, std::span<double> out)
{
    const auto n = static_cast<std::ptrdiff_t>(s.training.size());
    const std::size_t width = s.training.width;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < n; ++r)
        out[r] = row_distance(s.params, s.dense.data() + static_cast<std::size_t>(r) * width, x);
}

void knn_distances_serial(const knn_state& s, std::span<const double> x, std::span<double> out)
{
    const std::size_t width = s.training.width;
    for (std::size_t r = 0; r < s.training.size(); ++r)
        out[r] = row_distance(s.params, s.dense.data() + r * width, x);
}

namespace detail
{

std::vector<double> knn_votes(const knn_state& s, std::span<const double> x, std::size_t classes)
{
    const std::size_t n = s.training.size();
    std::vector<double> dist(n);
    // batch prediction is already parallel over queries
    knn_distances_serial(s, x, dist);
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    const std::size_t k = std::min(s.params.k, n);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::uint32_t a, std::uint32_t b) { return dist[a] < dist[b] || (dist[a] == dist[b] && a < b); });
    std::vector<double> votes(classes, 0.0);
    for (std::size_t j = 0; j < k; ++j)
        votes[s.training.labels[order[j]]] += 1.0;
    for (auto& v : votes)
        v /= static_cast<double>(k);
    return votes;
}

}  // namespace detail
}  // namespace senti::ml
