// synthetic.hpp - seeded generator for a Roman-Urdu-style review corpus.
//
// Stands in for the unpublished automobile-review dataset. Every review mixes
// neutral vocabulary (car nouns, verbs, stop-words) with keywords drawn only
// from its own class's pool, so the two classes are separable by design.
//
// Draw order per review (one splitmix64 for the whole corpus, reviews
// generated class by class, neg first): filler count, keyword count, each
// filler word, each keyword, stop-word count, each stop-word, one shuffle of
// the assembled words, capitalization coin, terminal punctuation choice.

#ifndef SENTI_SYNTHETIC_HPP
#define SENTI_SYNTHETIC_HPP

#include "senti/arff.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>

namespace senti::corpus
{

struct synthetic_spec
{
    std::size_t per_class = 1000;
    std::uint64_t seed = 42;
    std::size_t min_filler = 2;
    std::size_t max_filler = 6;
    std::size_t min_keywords = 2;
    std::size_t max_keywords = 4;
    std::size_t max_stopwords = 4;
};

std::span<const std::string_view> positive_keywords();
std::span<const std::string_view> negative_keywords();
std::span<const std::string_view> neutral_words();

/// (text: string, class: {neg, pos}) dataset, neg reviews first.
arff::dataset generate_synthetic(const synthetic_spec& spec);

/// Lay the dataset out as root/<class>/<class>_NNNNN.txt.
void write_text_directory(const arff::dataset& data, const std::filesystem::path& root);

}  // namespace senti::corpus

#endif  // SENTI_SYNTHETIC_HPP
