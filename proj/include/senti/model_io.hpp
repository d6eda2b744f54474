// model_io.hpp - plain-text model persistence, format version 1.
//
//   senti-model 1
//   variant <name>
//   feature_width <n>
//   classes <count>
//   class <name>            one line per class, in index order
//   param <name> <value>    training configuration, in training order
//   body
//   ...variant-specific lines...
//   end
//
// Numbers are written in shortest round-trip decimal form, so a saved model
// reloads bit for bit and saving it again reproduces the same bytes.
//
// Body lines:
//   mnb      log_prior <v...> / log_likelihood <class> <v...>
//   knn      k, distance, p, rows <n>, then `row <label> <idx>:<v> ...`
//   dtree    tree <nodes>, then one `node` line per node in preorder:
//            node <feature> <threshold> <left> <right> <label> <gain> <dist...>
//   bagging/rforest  trees <n> followed by that many trees
//   adaboost learners <n>, then per learner `alpha <v>` and a tree
//   svm      bias <v> / weights <v...>
//   mlp      activation <name> / layers <n>, then per layer
//            `layer <inputs> <outputs>`, `weights <v...>`, `bias <v...>`

#ifndef SENTI_MODEL_IO_HPP
#define SENTI_MODEL_IO_HPP

#include "senti/classifiers.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace senti::ml
{

inline constexpr int model_format_version = 1;

std::string save_model(const model& m);
/// Throws data_error on malformed text or an unknown format version.
model load_model(std::string_view text);

void save_model_file(const model& m, const std::filesystem::path& path);
model load_model_file(const std::filesystem::path& path);

}  // namespace senti::ml

#endif  // SENTI_MODEL_IO_HPP
