// generators.hpp - hand-rolled random inputs for the property tests.

#ifndef SENTI_TEST_GENERATORS_HPP
#define SENTI_TEST_GENERATORS_HPP

#include "senti/arff.hpp"
#include "senti/rng.hpp"
#include "senti/vectorize.hpp"

#include <string>
#include <vector>

namespace gen
{

inline std::string random_word(senti::splitmix64& rng, std::string_view alphabet = "abcdefghijklmnop", std::size_t max_len = 8)
{
    std::string w;
    const std::size_t len = 1 + rng.next_index(max_len);
    for (std::size_t i = 0; i < len; ++i)
        w += alphabet[rng.next_index(alphabet.size())];
    return w;
}

/// Text with awkward characters: quotes, separators, escapes, UTF-8.
inline std::string nasty_text(senti::splitmix64& rng)
{
    static const std::vector<std::string> pieces{"a", "b", " ", ",", "'", "\"", "\\", "\n", "\t", "\r", "%", "{",
                                                 "}", "?", "é", "گ", "🚗", "''", "x y", "@data"};
    std::string s;
    const std::size_t len = rng.next_index(12);
    for (std::size_t i = 0; i < len; ++i)
        s += pieces[rng.next_index(pieces.size())];
    return s;
}

inline double random_number(senti::splitmix64& rng)
{
    switch (rng.next_index(5))
    {
    case 0: return 0.0;
    case 1: return static_cast<double>(rng.next_index(100));
    case 2: return rng.uniform(-1e6, 1e6);
    case 3: return rng.uniform(-1, 1) * 1e-300;
    default: return -static_cast<double>(rng.next_index(10)) / 8.0;
    }
}

/// A valid dataset with every attribute kind, missing values and a class.
inline senti::arff::dataset random_dataset(senti::splitmix64& rng)
{
    using namespace senti::arff;
    dataset d;
    d.relation = rng.next_index(3) == 0 ? nasty_text(rng) + "r" : random_word(rng);
    const std::size_t width = 1 + rng.next_index(5);
    for (std::size_t a = 0; a < width; ++a)
    {
        const std::string name = "a" + std::to_string(a) + (rng.next_index(4) == 0 ? nasty_text(rng) : "");
        switch (rng.next_index(3))
        {
        case 0: d.attributes.push_back(attribute::numeric(name)); break;
        case 1: d.attributes.push_back(attribute::string(name)); break;
        default:
        {
            std::vector<std::string> values;
            const std::size_t k = 1 + rng.next_index(4);
            for (std::size_t v = 0; v < k; ++v)
                values.push_back("v" + std::to_string(v) + (rng.next_index(3) == 0 ? nasty_text(rng) : ""));
            d.attributes.push_back(attribute::nominal(name, values));
        }
        }
    }
    if (d.attributes.back().kind == attribute_kind::nominal)
        d.class_index = d.attributes.size() - 1;
    const std::size_t rows = rng.next_index(8);
    for (std::size_t r = 0; r < rows; ++r)
    {
        row inst;
        for (const auto& a : d.attributes)
        {
            if (rng.next_index(6) == 0)
            {
                inst.emplace_back(std::monostate{});
                continue;
            }
            switch (a.kind)
            {
            case attribute_kind::numeric: inst.emplace_back(random_number(rng)); break;
            case attribute_kind::string: inst.emplace_back(nasty_text(rng)); break;
            case attribute_kind::nominal:
                inst.emplace_back(nominal{static_cast<std::uint32_t>(rng.next_index(a.values.size()))});
                break;
            }
        }
        d.instances.push_back(std::move(inst));
    }
    return d;
}

/// Byte-level damage: deletions, insertions, duplications.
inline void mutate(std::string& text, senti::splitmix64& rng)
{
    static const std::string inserts = "{},'\"\\?%@ \n\t\xC3\xFFx0.-e";
    const std::size_t edits = 1 + rng.next_index(4);
    for (std::size_t e = 0; e < edits && !text.empty(); ++e)
    {
        const std::size_t at = rng.next_index(text.size());
        switch (rng.next_index(3))
        {
        case 0: text.erase(at, 1 + rng.next_index(3)); break;
        case 1: text.insert(text.begin() + static_cast<std::ptrdiff_t>(at), inserts[rng.next_index(inserts.size())]); break;
        default: text.insert(at, text.substr(at, rng.next_index(10))); break;
        }
    }
}

/// Labeled sparse matrix with nonnegative integer-ish weights.
inline senti::vectorize::feature_matrix random_matrix(senti::splitmix64& rng, std::size_t rows, std::size_t width,
                                                      std::size_t classes = 2, double density = 0.3,
                                                      bool allow_negative = false)
{
    senti::vectorize::feature_matrix m;
    m.width = width;
    for (std::size_t c = 0; c < classes; ++c)
        m.class_values.push_back("c" + std::to_string(c));
    for (std::size_t r = 0; r < rows; ++r)
    {
        senti::vectorize::sparse_row row;
        for (std::uint32_t f = 0; f < width; ++f)
            if (rng.next_double() < density)
            {
                row.index.push_back(f);
                double w = static_cast<double>(1 + rng.next_index(5));
                if (allow_negative && rng.next_index(2))
                    w = rng.uniform(-3, 3);
                row.weight.push_back(w);
            }
        m.rows.push_back(std::move(row));
        m.labels.push_back(static_cast<std::uint32_t>(rng.next_index(classes)));
    }
    return m;
}

/// Build a matrix from dense rows.
inline senti::vectorize::feature_matrix from_dense(const std::vector<std::vector<double>>& rows,
                                                   const std::vector<std::uint32_t>& labels,
                                                   std::vector<std::string> classes = {"neg", "pos"})
{
    senti::vectorize::feature_matrix m;
    m.width = rows.empty() ? 0 : rows[0].size();
    m.class_values = std::move(classes);
    m.labels = labels;
    for (const auto& r : rows)
    {
        senti::vectorize::sparse_row s;
        for (std::uint32_t i = 0; i < r.size(); ++i)
            if (r[i] != 0.0)
            {
                s.index.push_back(i);
                s.weight.push_back(r[i]);
            }
        m.rows.push_back(std::move(s));
    }
    return m;
}

}  // namespace gen

#endif  // SENTI_TEST_GENERATORS_HPP
