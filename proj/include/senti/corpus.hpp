// corpus.hpp - review text normalization and train/test partitioning.

#ifndef SENTI_CORPUS_HPP
#define SENTI_CORPUS_HPP

#include "senti/arff.hpp"

#include <bitset>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace senti::corpus
{

/// Byte-level delimiter set. Delimiters must be ASCII so UTF-8 text is never
/// split inside a multibyte sequence.
class tokenizer_config
{
public:
    /// Space, tab, CR, LF and . , ; : ' " ( ) ? !
    tokenizer_config();
    explicit tokenizer_config(std::string_view delimiters);

    bool is_delimiter(char c) const { return set_[static_cast<unsigned char>(c)]; }
    const std::string& delimiters() const { return chars_; }

    bool operator==(const tokenizer_config& other) const { return chars_ == other.chars_; }

private:
    std::bitset<256> set_;
    std::string chars_;
};

class stopword_list
{
public:
    stopword_list() = default;
    /// Entries are lowercased; empty entries are rejected.
    explicit stopword_list(const std::vector<std::string>& words);

    /// One word per line, `#` starts a comment, blank lines ignored.
    static stopword_list parse(std::string_view text);
    static stopword_list load(const std::filesystem::path& path);

    bool contains(std::string_view word) const { return words_.find(word) != words_.end(); }
    std::size_t size() const { return words_.size(); }
    const std::set<std::string, std::less<>>& words() const { return words_; }

    bool operator==(const stopword_list&) const = default;

private:
    std::set<std::string, std::less<>> words_;
};

/// The bundled Roman Urdu list (data/stopwords_roman_urdu.txt, compiled in).
std::string_view default_stopwords_text();
stopword_list default_stopwords();

std::vector<std::string> tokenize(std::string_view text, const tokenizer_config& config = {});

/// ASCII and Latin-1 Supplement capitals are lowered; other bytes pass through.
std::string to_lower(std::string_view text);
std::vector<std::string> lowercase(std::vector<std::string> tokens);

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens, const stopword_list& stops);

/// tokenize -> lowercase -> remove_stopwords
std::vector<std::string> process(std::string_view text, const tokenizer_config& config, const stopword_list& stops);

struct split_spec
{
    double train_fraction = 0.8;
    bool stratified = true;
    std::uint64_t seed = 42;
};

struct split_result
{
    arff::dataset train;
    arff::dataset test;
    /// Source instance indices, ascending, of each partition.
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
};

/// Deterministic partition. Each partition keeps the source instance order.
///
/// Stratified: every class's members are shuffled (classes in declaration
/// order, one generator) and the per-class train quotas are floor(f * n_c)
/// plus a largest-remainder share of round(f * n) so the total matches the
/// unstratified count. Unstratified: one shuffle, first round(f * n) train.
split_result split(const arff::dataset& data, const split_spec& spec);

}  // namespace senti::corpus

#endif  // SENTI_CORPUS_HPP
