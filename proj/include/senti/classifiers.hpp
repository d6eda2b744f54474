// classifiers.hpp - the eight classifiers behind one train/predict contract.
//
// Conventions shared by every variant:
//  * Ties (votes, argmax, equal distances, sign 0) go to the lowest class
//    index, lowest feature index or lowest training-row index.
//  * Binary margin models (svm, adaboost) map class index 1 to +1 and
//    class index 0 to -1; predict_scores returns (-v, v).
//  * All randomness comes from splitmix64 (see rng.hpp). Ensemble member i
//    draws from splitmix64::stream(seed, i), so training members in
//    parallel never changes the result.

#ifndef SENTI_CLASSIFIERS_HPP
#define SENTI_CLASSIFIERS_HPP

#include "senti/rng.hpp"
#include "senti/vectorize.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace senti::ml
{

using vectorize::feature_matrix;

enum class algorithm
{
    mnb,
    knn,
    dtree,
    bagging,
    rforest,
    adaboost,
    svm,
    mlp
};

std::string_view to_string(algorithm a);
/// Human-readable name used in report tables.
std::string_view display_name(algorithm a);
/// Throws config_error naming the eight valid names.
algorithm parse_algorithm(std::string_view name);
std::span<const algorithm> all_algorithms();

enum class distance_kind
{
    euclidean,
    manhattan,
    minkowski
};

enum class activation
{
    logistic,
    tanh
};

std::string_view to_string(distance_kind d);
distance_kind parse_distance(std::string_view name);
std::string_view to_string(activation a);
activation parse_activation(std::string_view name);

// ---------------------------------------------------------------------------
// Hyperparameters. Defaults are the toolkit defaults.

struct mnb_params
{
    double alpha = 1.0;
};

struct knn_params
{
    std::size_t k = 1;
    distance_kind distance = distance_kind::euclidean;
    double p = 2.0;  // minkowski only
};

struct tree_params
{
    std::size_t max_depth = 0;  // 0 = unlimited
    std::size_t min_leaf = 1;
};

struct bagging_params
{
    std::size_t trees = 10;
    tree_params base;
};

struct forest_params
{
    std::size_t trees = 10;
    std::size_t features_per_split = 0;  // 0 = ceil(sqrt(width))
    tree_params base;
};

struct adaboost_params
{
    std::size_t rounds = 10;
    tree_params weak{1, 1};
};

struct svm_params
{
    double lambda = 1e-3;
    std::size_t epochs = 100;
};

struct mlp_params
{
    std::vector<std::size_t> hidden{32, 32};
    activation act = activation::logistic;
    double learning_rate = 0.1;
    std::size_t epochs = 200;
    std::size_t batch_size = 16;
};

struct train_config
{
    std::uint64_t seed = 42;
    mnb_params mnb;
    knn_params knn;
    tree_params tree;
    bagging_params bagging;
    forest_params forest;
    adaboost_params adaboost;
    svm_params svm;
    mlp_params mlp;
    /// Train ensemble members with OpenMP. Results are identical either way.
    bool parallel = true;
};

// ---------------------------------------------------------------------------
// Learned state per variant.

struct mnb_state
{
    std::vector<double> log_prior;       // per class
    std::vector<double> log_likelihood;  // classes x width, row-major
};

struct knn_state
{
    knn_params params;
    feature_matrix training;  // stored verbatim
    std::vector<double> dense;  // row-major cache of training.rows
};

struct tree_node
{
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;     // x[feature] <= threshold goes left
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::uint32_t label = 0;            // weighted majority at this node
    double gain = 0.0;                  // information gain of the split
    std::vector<double> distribution;   // normalized class weights

    bool is_leaf() const { return feature < 0; }
    bool operator==(const tree_node&) const = default;
};

/// Nodes in preorder; nodes[0] is the root.
struct tree
{
    std::vector<tree_node> nodes;

    const tree_node& leaf_for(std::span<const double> x) const;
    std::size_t depth() const;
    bool operator==(const tree&) const = default;
};

struct forest_state
{
    std::vector<tree> trees;
};

struct boost_state
{
    std::vector<tree> learners;
    std::vector<double> alphas;
};

struct svm_state
{
    std::vector<double> weights;
    double bias = 0.0;
};

struct mlp_layer
{
    std::size_t inputs = 0;
    std::size_t outputs = 0;
    std::vector<double> weights;  // outputs x inputs, row-major
    std::vector<double> bias;
};

struct mlp_state
{
    activation act = activation::logistic;
    std::vector<mlp_layer> layers;  // hidden layers then the softmax layer
};

using model_state = std::variant<mnb_state, knn_state, tree, forest_state, boost_state, svm_state, mlp_state>;

struct model
{
    algorithm variant = algorithm::mnb;
    std::vector<std::string> class_values;
    std::size_t feature_width = 0;
    /// Training configuration as (name, value) text, persisted verbatim.
    std::vector<std::pair<std::string, std::string>> hyperparameters;
    model_state state;
};

// ---------------------------------------------------------------------------
// Training. Every function rejects an empty matrix, non-finite weights and
// undeclared labels with a data_error.

model train_mnb(const feature_matrix& data, const mnb_params& params = {});
model train_knn(const feature_matrix& data, const knn_params& params = {});
model train_dtree(const feature_matrix& data, const tree_params& params = {});
model train_bagging(const feature_matrix& data, const bagging_params& params, std::uint64_t seed,
                    bool parallel = true);
model train_rforest(const feature_matrix& data, const forest_params& params, std::uint64_t seed,
                    bool parallel = true);

/// Per-round record of an AdaBoost run.
struct boost_trace
{
    std::vector<double> errors;             // weighted error of learner t
    std::vector<double> alphas;
    std::vector<double> rebalanced_errors;  // error of learner t under round t+1 weights
    std::vector<std::vector<double>> weights;  // weights after each update
    bool stopped_perfect = false;
    bool stopped_weak = false;
};

/// Weak learner weight used when a round reaches zero training error.
inline constexpr double adaboost_alpha_cap = 11.512925464970229;  // ln(1e10) / 2

model train_adaboost(const feature_matrix& data, const adaboost_params& params, std::uint64_t seed,
                     boost_trace* trace = nullptr);

/// objective(w, b) = lambda/2 |w|^2 + mean hinge loss
double svm_objective(const svm_state& state, const feature_matrix& data, double lambda);

/// Full-data objective after every epoch; objectives[0] is the starting
/// point, w = 0 with its optimal bias.
struct svm_trace
{
    std::vector<double> objectives;
};

model train_svm(const feature_matrix& data, const svm_params& params, std::uint64_t seed,
                svm_trace* trace = nullptr);

model train_mlp(const feature_matrix& data, const mlp_params& params, std::uint64_t seed);

/// Untrained network, weights drawn exactly as train_mlp draws them.
mlp_state init_mlp(std::size_t inputs, std::size_t classes, const mlp_params& params, splitmix64& rng);

/// Mean cross-entropy over `data`; when `gradient` is non-null it receives
/// d loss / d parameters in mlp_parameters() order.
double mlp_loss(const mlp_state& net, const feature_matrix& data, std::vector<double>* gradient = nullptr);

/// Flatten as layer by layer: weights then bias.
std::vector<double> mlp_parameters(const mlp_state& net);
void set_mlp_parameters(mlp_state& net, std::span<const double> params);

/// Dispatch on `which` using the matching section of `config`.
model train(algorithm which, const feature_matrix& data, const train_config& config);

// ---------------------------------------------------------------------------
// Tree internals exposed for verification.

/// -sum p log2 p over the normalized weights. Zero weights contribute 0.
double entropy(std::span<const double> class_weights);

/// Multiplicity of each row in one bootstrap sample: n draws of next_index(n).
std::vector<std::uint32_t> bootstrap_counts(std::size_t n, splitmix64& rng);

struct tree_sample
{
    std::span<const std::uint32_t> counts;  // multiplicity per row, 0 = absent
    std::span<const double> weights;        // class-count weight per row
};

/// Grow one tree. When `features_per_split` < width, every node that is
/// considered for a split draws a fresh sorted subset from `rng`.
tree grow_tree(const feature_matrix& data, const tree_sample& sample, const tree_params& params,
               std::size_t features_per_split = 0, splitmix64* rng = nullptr);

// ---------------------------------------------------------------------------
// Prediction.

/// Throws data_error unless x.size() == m.feature_width.
std::uint32_t predict(const model& m, std::span<const double> x);
std::vector<double> predict_scores(const model& m, std::span<const double> x);

/// Predicted class index per row. OpenMP over rows.
std::vector<std::uint32_t> predict_batch(const model& m, const feature_matrix& data);
std::vector<std::uint32_t> predict_batch_serial(const model& m, const feature_matrix& data);

/// Minkowski-family distance to every stored training row (without the
/// final root). OpenMP over training rows; the serial twin is the reference.
void knn_distances(const knn_state& s, std::span<const double> x, std::span<double> out);
void knn_distances_serial(const knn_state& s, std::span<const double> x, std::span<double> out);

/// Index of the largest score, lowest index on ties.
std::uint32_t argmax(std::span<const double> scores);

}  // namespace senti::ml

#endif  // SENTI_CLASSIFIERS_HPP
