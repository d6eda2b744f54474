#include "senti/synthetic.hpp"

#include "senti/errors.hpp"
#include "senti/io.hpp"
#include "senti/rng.hpp"

#include <array>
#include <cstdio>
#include <string>
#include <vector>

namespace senti::corpus
{
namespace
{

constexpr std::array<std::string_view, 6> positive_pool{"acha", "zabardast", "behtreen", "shandar", "kamal", "mazedar"};

constexpr std::array<std::string_view, 6> negative_pool{"kharab", "bakwas", "mehnga", "ganda", "bekar", "naqis"};

constexpr std::array<std::string_view, 40> neutral_pool{
    "gari", "engine", "mileage", "AC", "seat", "suspension", "body", "price", "model", "Honda",
    "Suzuki", "Toyota", "civic", "corolla", "mehran", "cultus", "alto", "tyre", "brake", "steering",
    "safar", "sheher", "road", "petrol", "service", "showroom", "parts", "rang", "design", "interior",
    "speed", "power", "chalai", "dekhi", "li", "saal", "family", "office", "drive", "pickup"};

// a subset of the shipped stop-word list
constexpr std::array<std::string_view, 12> stop_pool{
    "hai", "ka", "ki", "ke", "bohot", "bhi", "aur", "mein", "ye", "se", "to", "hain"};

template <typename Pool>
std::string_view pick(const Pool& pool, splitmix64& rng)
{
    return pool[rng.next_index(pool.size())];
}

std::size_t between(std::size_t lo, std::size_t hi, splitmix64& rng)
{
    return lo + rng.next_index(hi - lo + 1);
}

}  // namespace

std::span<const std::string_view> positive_keywords() { return positive_pool; }
std::span<const std::string_view> negative_keywords() { return negative_pool; }
std::span<const std::string_view> neutral_words() { return neutral_pool; }

arff::dataset generate_synthetic(const synthetic_spec& spec)
{
    if (spec.per_class == 0)
        throw config_error("synthetic corpus needs at least one review per class");
    if (spec.min_filler > spec.max_filler || spec.min_keywords > spec.max_keywords || spec.min_keywords == 0)
        throw config_error("bad synthetic corpus ranges");

    arff::dataset data;
    data.relation = "synthetic_reviews";
    data.attributes.push_back(arff::attribute::string("text"));
    data.attributes.push_back(arff::attribute::nominal("class", {"neg", "pos"}));
    data.class_index = 1;

    splitmix64 rng(spec.seed);
    for (std::uint32_t cls = 0; cls < 2; ++cls)
    {
        for (std::size_t r = 0; r < spec.per_class; ++r)
        {
            const std::size_t fillers = between(spec.min_filler, spec.max_filler, rng);
            const std::size_t keywords = between(spec.min_keywords, spec.max_keywords, rng);
            std::vector<std::string_view> words;
            for (std::size_t i = 0; i < fillers; ++i)
                words.push_back(pick(neutral_pool, rng));
            for (std::size_t i = 0; i < keywords; ++i)
                words.push_back(cls == 1 ? pick(positive_pool, rng) : pick(negative_pool, rng));
            const std::size_t stops = rng.next_index(spec.max_stopwords + 1);
            for (std::size_t i = 0; i < stops; ++i)
                words.push_back(pick(stop_pool, rng));
            rng.shuffle(std::span<std::string_view>(words));

            std::string text;
            for (std::size_t i = 0; i < words.size(); ++i)
            {
                if (i)
                    text += ' ';
                text += words[i];
            }
            if (rng.next_index(2) == 1 && !text.empty() && text[0] >= 'a' && text[0] <= 'z')
                text[0] = static_cast<char>(text[0] - 32);
            static constexpr std::array<std::string_view, 3> endings{".", "!", ""};
            text += pick(endings, rng);
            data.instances.push_back({std::move(text), arff::nominal{cls}});
        }
    }
    return data;
}

void write_text_directory(const arff::dataset& data, const std::filesystem::path& root)
{
    const auto& cls = data.class_attribute();
    std::size_t text_attr = data.attributes.size();
    for (std::size_t i = 0; i < data.attributes.size(); ++i)
        if (data.attributes[i].kind == arff::attribute_kind::string)
            text_attr = i;
    if (text_attr == data.attributes.size())
        throw schema_error("dataset has no string attribute to write");

    for (const auto& v : cls.values)
        std::filesystem::create_directories(root / v);
    std::vector<std::size_t> counters(cls.values.size(), 0);
    for (std::size_t i = 0; i < data.instances.size(); ++i)
    {
        const auto c = data.class_of(i);
        std::array<char, 16> num{};
        std::snprintf(num.data(), num.size(), "%05zu", counters[c]++);
        const auto& text = std::get<std::string>(data.instances[i][text_attr]);
        io::write_atomic(root / cls.values[c] / (cls.values[c] + "_" + num.data() + ".txt"), text);
    }
}

}  // namespace senti::corpus
