#include "senti/vectorize.hpp"

#include "senti/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace senti::vectorize
{

std::string_view to_string(weighting w)
{
    switch (w)
    {
    case weighting::binary: return "binary";
    case weighting::count: return "count";
    case weighting::tfidf: return "tfidf";
    }
    return "count";
}

weighting parse_weighting(std::string_view name)
{
    if (name == "binary")
        return weighting::binary;
    if (name == "count")
        return weighting::count;
    if (name == "tfidf")
        return weighting::tfidf;
    throw config_error("unknown weighting '" + std::string(name) + "' (expected binary, count or tfidf)");
}

void sparse_row::densify_into(std::span<double> out) const
{
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t k = 0; k < index.size(); ++k)
        out[index[k]] = weight[k];
}

std::vector<double> feature_matrix::dense_row(std::size_t r) const
{
    std::vector<double> out(width);
    rows.at(r).densify_into(out);
    return out;
}

std::vector<double> feature_matrix::dense() const
{
    std::vector<double> out(rows.size() * width, 0.0);
    for (std::size_t r = 0; r < rows.size(); ++r)
        rows[r].densify_into(std::span<double>(out).subspan(r * width, width));
    return out;
}

void feature_matrix::validate(bool require_nonnegative) const
{
    if (labels.size() != rows.size())
        throw schema_error("feature matrix has " + std::to_string(rows.size()) + " rows but " +
                           std::to_string(labels.size()) + " labels");
    for (std::size_t r = 0; r < rows.size(); ++r)
    {
        const auto& row = rows[r];
        if (row.index.size() != row.weight.size())
            throw schema_error("malformed sparse row " + std::to_string(r));
        for (std::size_t k = 0; k < row.index.size(); ++k)
        {
            if (row.index[k] >= width || (k > 0 && row.index[k] <= row.index[k - 1]))
                throw schema_error("row " + std::to_string(r) + " has a bad feature index");
            if (!std::isfinite(row.weight[k]))
                throw schema_error("row " + std::to_string(r) + " has a non-finite weight");
            if (require_nonnegative && row.weight[k] < 0.0)
                throw schema_error("row " + std::to_string(r) + " has a negative weight");
        }
        if (labels[r] >= class_values.size())
            throw schema_error("row " + std::to_string(r) + " has an undeclared label");
    }
}

std::optional<std::uint32_t> vector_space::index_of(std::string_view term) const
{
    const auto it = lookup_.find(term);
    if (it == lookup_.end())
        return std::nullopt;
    return it->second;
}

std::size_t text_attribute(const arff::dataset& data)
{
    const auto& cls = data.class_attribute();
    (void)cls;
    std::optional<std::size_t> text;
    for (std::size_t i = 0; i < data.attributes.size(); ++i)
    {
        if (i == *data.class_index)
            continue;
        if (data.attributes[i].kind != arff::attribute_kind::string || text)
            throw schema_error("expected exactly one string attribute plus a nominal class attribute in '" +
                               data.relation + "'");
        text = i;
    }
    if (!text)
        throw schema_error("dataset '" + data.relation + "' has no string attribute");
    return *text;
}

namespace
{

const std::string& text_of(const arff::dataset& data, std::size_t text_attr, std::size_t r)
{
    const auto* s = std::get_if<std::string>(&data.instances[r][text_attr]);
    if (!s)
        throw data_error("instance " + std::to_string(r) + " has a missing text value");
    return *s;
}

}  // namespace

vector_space fit(const arff::dataset& train, const fit_options& options)
{
    const std::size_t text_attr = text_attribute(train);
    if (options.min_term_freq == 0)
        throw config_error("min_term_freq must be at least 1");

    std::map<std::string, std::pair<std::size_t, std::uint32_t>, std::less<>> stats;  // total, df
    for (std::size_t r = 0; r < train.instances.size(); ++r)
    {
        train.class_of(r);
        const auto tokens = corpus::process(text_of(train, text_attr, r), options.tokenizer, options.stopwords);
        std::set<std::string_view> seen;
        for (const auto& t : tokens)
        {
            auto& s = stats[t];
            ++s.first;
            if (seen.insert(t).second)
                ++s.second;
        }
    }

    vector_space space;
    space.options_ = options;
    space.doc_count_ = train.instances.size();
    space.class_values_ = train.class_attribute().values;
    space.class_name_ = train.class_attribute().name;
    for (const auto& [term, s] : stats)
    {
        if (s.first < options.min_term_freq)
            continue;
        const auto idx = static_cast<std::uint32_t>(space.terms_.size());
        space.terms_.push_back(term);
        space.lookup_.emplace(term, idx);
        if (options.mode == weighting::tfidf)
            space.doc_frequency_.push_back(s.second);
    }
    if (space.terms_.empty())
        throw data_error("empty vocabulary: no training token survives tokenization and stop-word removal");
    return space;
}

sparse_row transform_document(const vector_space& space, std::string_view text)
{
    const auto& opts = space.options();
    const auto tokens = corpus::process(text, opts.tokenizer, opts.stopwords);
    std::vector<std::uint32_t> hits;
    hits.reserve(tokens.size());
    for (const auto& t : tokens)
        if (const auto idx = space.index_of(t))
            hits.push_back(*idx);
    std::sort(hits.begin(), hits.end());

    sparse_row row;
    for (std::size_t k = 0; k < hits.size();)
    {
        std::size_t end = k;
        while (end < hits.size() && hits[end] == hits[k])
            ++end;
        const auto count = static_cast<double>(end - k);
        double w = count;
        switch (space.mode())
        {
        case weighting::binary:
            w = 1.0;
            break;
        case weighting::count:
            break;
        case weighting::tfidf:
            w = count * std::log(static_cast<double>(space.doc_count()) /
                                 static_cast<double>(space.doc_frequency()[hits[k]]));
            break;
        }
        row.index.push_back(hits[k]);
        row.weight.push_back(w);
        k = end;
    }
    return row;
}

namespace
{

feature_matrix prepare(const vector_space& space, const arff::dataset& data, std::size_t& text_attr)
{
    text_attr = text_attribute(data);
    if (data.class_attribute().values != space.class_values())
        throw schema_error("class values of '" + data.relation + "' differ from the fitted vector space");
    feature_matrix m;
    m.width = space.size();
    m.class_values = space.class_values();
    m.rows.resize(data.instances.size());
    m.labels.resize(data.instances.size());
    for (std::size_t r = 0; r < data.instances.size(); ++r)
    {
        m.labels[r] = data.class_of(r);
        text_of(data, text_attr, r);
    }
    return m;
}

}  // namespace

feature_matrix transform(const vector_space& space, const arff::dataset& data)
{
    std::size_t text_attr = 0;
    feature_matrix m = prepare(space, data, text_attr);
    const auto n = static_cast<std::ptrdiff_t>(data.instances.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t r = 0; r < n; ++r)
        m.rows[r] = transform_document(space, std::get<std::string>(data.instances[r][text_attr]));
    return m;
}

feature_matrix transform_serial(const vector_space& space, const arff::dataset& data)
{
    std::size_t text_attr = 0;
    feature_matrix m = prepare(space, data, text_attr);
    for (std::size_t r = 0; r < data.instances.size(); ++r)
        m.rows[r] = transform_document(space, std::get<std::string>(data.instances[r][text_attr]));
    return m;
}

arff::dataset to_arff(const vector_space& space, const feature_matrix& matrix, std::string relation)
{
    if (matrix.width != space.size())
        throw schema_error("matrix width does not match the vector space");
    arff::dataset out;
    out.relation = std::move(relation);
    out.attributes.reserve(space.size() + 1);
    for (const auto& t : space.terms())
        out.attributes.push_back(arff::attribute::numeric(t));
    std::string class_name = space.class_name().empty() ? std::string("class") : space.class_name();
    while (space.index_of(class_name))
        class_name += '_';
    out.attributes.push_back(arff::attribute::nominal(class_name, matrix.class_values));
    out.class_index = space.size();

    out.instances.reserve(matrix.size());
    for (std::size_t r = 0; r < matrix.size(); ++r)
    {
        arff::row cells(space.size() + 1, 0.0);
        const auto& row = matrix.rows[r];
        for (std::size_t k = 0; k < row.nnz(); ++k)
            cells[row.index[k]] = row.weight[k];
        cells.back() = arff::nominal{matrix.labels[r]};
        out.instances.push_back(std::move(cells));
    }
    return out;
}

feature_matrix from_arff(const arff::dataset& data)
{
    const auto& cls = data.class_attribute();
    feature_matrix m;
    m.width = data.attributes.size() - 1;
    m.class_values = cls.values;
    for (std::size_t i = 0; i < data.attributes.size(); ++i)
        if (i != *data.class_index && data.attributes[i].kind != arff::attribute_kind::numeric)
            throw schema_error("attribute '" + data.attributes[i].name +
                               "' is not numeric; vectorize the dataset first");
    if (data.has_missing())
        throw data_error("dataset '" + data.relation + "' contains missing values, which classifiers reject");

    m.rows.reserve(data.instances.size());
    for (std::size_t r = 0; r < data.instances.size(); ++r)
    {
        sparse_row row;
        std::uint32_t feature = 0;
        for (std::size_t i = 0; i < data.attributes.size(); ++i)
        {
            if (i == *data.class_index)
                continue;
            const double v = std::get<double>(data.instances[r][i]);
            if (v != 0.0)
            {
                row.index.push_back(feature);
                row.weight.push_back(v);
            }
            ++feature;
        }
        m.rows.push_back(std::move(row));
        m.labels.push_back(data.class_of(r));
    }
    return m;
}

}  // namespace senti::vectorize
