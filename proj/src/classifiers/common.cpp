#include "detail.hpp"

#include "senti/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace senti::ml
{
namespace
{

constexpr std::array<algorithm, 8> every_algorithm{algorithm::mnb,     algorithm::knn,      algorithm::dtree,
                                                   algorithm::bagging, algorithm::rforest,  algorithm::adaboost,
                                                   algorithm::svm,     algorithm::mlp};

}  // namespace

std::string_view to_string(algorithm a)
{
    switch (a)
    {
    case algorithm::mnb: return "mnb";
    case algorithm::knn: return "knn";
    case algorithm::dtree: return "dtree";
    case algorithm::bagging: return "bagging";
    case algorithm::rforest: return "rforest";
    case algorithm::adaboost: return "adaboost";
    case algorithm::svm: return "svm";
    case algorithm::mlp: return "mlp";
    }
    return "?";
}

std::string_view display_name(algorithm a)
{
    switch (a)
    {
    case algorithm::mnb: return "Multinomial Naive Bayes";
    case algorithm::knn: return "k-NN";
    case algorithm::dtree: return "Decision Tree";
    case algorithm::bagging: return "Bagging";
    case algorithm::rforest: return "Random Forests";
    case algorithm::adaboost: return "AdaBoost";
    case algorithm::svm: return "SVM";
    case algorithm::mlp: return "Deep Neural Network";
    }
    return "?";
}

algorithm parse_algorithm(std::string_view name)
{
    for (const auto a : every_algorithm)
        if (to_string(a) == name)
            return a;
    std::string valid;
    for (const auto a : every_algorithm)
    {
        if (!valid.empty())
            valid += ", ";
        valid += to_string(a);
    }
    throw config_error("unknown algorithm '" + std::string(name) + "'; valid algorithms: " + valid);
}

std::span<const algorithm> all_algorithms() { return every_algorithm; }

std::string_view to_string(distance_kind d)
{
    switch (d)
    {
    case distance_kind::euclidean: return "euclidean";
    case distance_kind::manhattan: return "manhattan";
    case distance_kind::minkowski: return "minkowski";
    }
    return "?";
}

distance_kind parse_distance(std::string_view name)
{
    if (name == "euclidean")
        return distance_kind::euclidean;
    if (name == "manhattan")
        return distance_kind::manhattan;
    if (name == "minkowski")
        return distance_kind::minkowski;
    throw config_error("unknown distance '" + std::string(name) + "' (expected euclidean, manhattan or minkowski)");
}

std::string_view to_string(activation a)
{
    return a == activation::logistic ? "logistic" : "tanh";
}

activation parse_activation(std::string_view name)
{
    if (name == "logistic")
        return activation::logistic;
    if (name == "tanh")
        return activation::tanh;
    throw config_error("unknown activation '" + std::string(name) + "' (expected logistic or tanh)");
}

std::uint32_t argmax(std::span<const double> scores)
{
    std::uint32_t best = 0;
    for (std::uint32_t i = 1; i < scores.size(); ++i)
        if (scores[i] > scores[best])
            best = i;
    return best;
}

namespace detail
{

void check_training(const feature_matrix& data, std::string_view who, bool binary_only)
{
    if (data.size() == 0)
        throw data_error(std::string(who) + ": empty training set");
    if (data.class_values.size() < 2)
        throw data_error(std::string(who) + ": need at least two declared classes");
    if (binary_only && data.class_values.size() != 2)
        throw data_error(std::string(who) + " supports binary classification only, got " +
                         std::to_string(data.class_values.size()) + " classes");
    data.validate(false);
}

model make_model(algorithm a, const feature_matrix& data)
{
    model m;
    m.variant = a;
    m.class_values = data.class_values;
    m.feature_width = data.width;
    return m;
}

void add_tree_params(model& m, const std::string& prefix, const tree_params& p)
{
    m.hyperparameters.emplace_back(prefix + "max_depth", num(p.max_depth));
    m.hyperparameters.emplace_back(prefix + "min_leaf", num(p.min_leaf));
}

double value_at(const vectorize::sparse_row& row, std::uint32_t feature)
{
    const auto it = std::lower_bound(row.index.begin(), row.index.end(), feature);
    if (it == row.index.end() || *it != feature)
        return 0.0;
    return row.weight[static_cast<std::size_t>(it - row.index.begin())];
}

}  // namespace detail

model train(algorithm which, const feature_matrix& data, const train_config& config)
{
    switch (which)
    {
    case algorithm::mnb: return train_mnb(data, config.mnb);
    case algorithm::knn: return train_knn(data, config.knn);
    case algorithm::dtree: return train_dtree(data, config.tree);
    case algorithm::bagging: return train_bagging(data, config.bagging, config.seed, config.parallel);
    case algorithm::rforest: return train_rforest(data, config.forest, config.seed, config.parallel);
    case algorithm::adaboost: return train_adaboost(data, config.adaboost, config.seed);
    case algorithm::svm: return train_svm(data, config.svm, config.seed);
    case algorithm::mlp: return train_mlp(data, config.mlp, config.seed);
    }
    throw config_error("unknown algorithm");
}

}  // namespace senti::ml
