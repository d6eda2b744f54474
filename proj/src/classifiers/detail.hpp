#ifndef SENTI_CLASSIFIERS_DETAIL_HPP
#define SENTI_CLASSIFIERS_DETAIL_HPP

#include "senti/classifiers.hpp"
#include "senti/io.hpp"

#include <string>

namespace senti::ml::detail
{

/// Throws data_error for an unusable training matrix.
void check_training(const feature_matrix& data, std::string_view who, bool binary_only = false);

model make_model(algorithm a, const feature_matrix& data);

inline std::string num(double v) { return io::format_double(v); }
inline std::string num(std::size_t v) { return std::to_string(v); }

void add_tree_params(model& m, const std::string& prefix, const tree_params& p);

/// Dense copy of one sparse row.
inline void densify(const vectorize::sparse_row& row, std::span<double> out) { row.densify_into(out); }

/// x[feature] for a sparse row, by binary search.
double value_at(const vectorize::sparse_row& row, std::uint32_t feature);

std::vector<double> mnb_log_scores(const mnb_state& s, std::span<const double> x);
std::vector<double> knn_votes(const knn_state& s, std::span<const double> x, std::size_t classes);
std::vector<double> forest_scores(const forest_state& s, std::span<const double> x, std::size_t classes);
double boost_margin(const boost_state& s, std::span<const double> x);
double svm_margin(const svm_state& s, std::span<const double> x);
std::vector<double> mlp_probabilities(const mlp_state& s, std::span<const double> x);

}  // namespace senti::ml::detail

#endif
