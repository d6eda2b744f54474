// vectorize.hpp - bag-of-words feature extraction over a vocabulary frozen
// from training documents.
//
// The vocabulary is every distinct processed token (tokenize, lowercase,
// drop stop-words) of the training documents, sorted lexicographically by
// byte value. Tokens outside the vocabulary are dropped at transform time.
//
// Weights per (term i, document j):
//   binary  1 if i occurs in j, else 0
//   count   occurrences of i in j
//   tfidf   count * ln(doc_count / doc_frequency[i])

#ifndef SENTI_VECTORIZE_HPP
#define SENTI_VECTORIZE_HPP

#include "senti/arff.hpp"
#include "senti/corpus.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace senti::vectorize
{

enum class weighting
{
    binary,
    count,
    tfidf
};

std::string_view to_string(weighting w);
weighting parse_weighting(std::string_view name);

/// Sparse vector: strictly increasing indices, one weight each.
struct sparse_row
{
    std::vector<std::uint32_t> index;
    std::vector<double> weight;

    std::size_t nnz() const { return index.size(); }
    void densify_into(std::span<double> out) const;
    bool operator==(const sparse_row&) const = default;
};

struct feature_matrix
{
    std::size_t width = 0;
    std::vector<sparse_row> rows;
    std::vector<std::uint32_t> labels;  // index into class_values
    std::vector<std::string> class_values;

    std::size_t size() const { return rows.size(); }
    std::vector<double> dense_row(std::size_t r) const;
    /// Row-major copy, rows() x width.
    std::vector<double> dense() const;

    /// Throws schema_error when a row is wider than `width`, unsorted,
    /// carries a non-finite (or, if required, negative) weight, or a label
    /// is undeclared.
    void validate(bool require_nonnegative = true) const;

    bool operator==(const feature_matrix&) const = default;
};

struct fit_options
{
    weighting mode = weighting::count;
    corpus::tokenizer_config tokenizer;
    corpus::stopword_list stopwords;
    /// Drop terms whose total training occurrence count is below this.
    std::size_t min_term_freq = 1;
};

class vector_space
{
public:
    const std::vector<std::string>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    std::optional<std::uint32_t> index_of(std::string_view term) const;

    weighting mode() const { return options_.mode; }
    const fit_options& options() const { return options_; }
    std::size_t doc_count() const { return doc_count_; }
    /// Per-term document counts; empty unless mode() == tfidf.
    const std::vector<std::uint32_t>& doc_frequency() const { return doc_frequency_; }
    const std::vector<std::string>& class_values() const { return class_values_; }
    const std::string& class_name() const { return class_name_; }

    bool operator==(const vector_space&) const = default;

private:
    friend vector_space fit(const arff::dataset&, const fit_options&);

    fit_options options_;
    std::vector<std::string> terms_;
    std::map<std::string, std::uint32_t, std::less<>> lookup_;
    std::size_t doc_count_ = 0;
    std::vector<std::uint32_t> doc_frequency_;
    std::vector<std::string> class_values_;
    std::string class_name_;
};

/// Index of the single string attribute; throws schema_error unless the
/// dataset is exactly one string attribute plus a nominal class.
std::size_t text_attribute(const arff::dataset& data);

vector_space fit(const arff::dataset& train, const fit_options& options = {});

/// Weights for one document. Used by both transform paths.
sparse_row transform_document(const vector_space& space, std::string_view text);

/// OpenMP over documents.
feature_matrix transform(const vector_space& space, const arff::dataset& data);
/// Reference single-threaded path; must equal transform() exactly.
feature_matrix transform_serial(const vector_space& space, const arff::dataset& data);

/// One numeric attribute per term, then the nominal class (renamed with
/// trailing underscores if it collides with a term).
arff::dataset to_arff(const vector_space& space, const feature_matrix& matrix, std::string relation = "vectorized");

/// Read a numeric-features + nominal-class dataset back into a matrix.
feature_matrix from_arff(const arff::dataset& data);

}  // namespace senti::vectorize

#endif  // SENTI_VECTORIZE_HPP
