#include "senti/corpus.hpp"

#include "senti/errors.hpp"
#include "senti/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace senti::corpus
{
namespace
{

arff::dataset subset(const arff::dataset& data, const std::vector<std::size_t>& indices)
{
    arff::dataset out;
    out.relation = data.relation;
    out.attributes = data.attributes;
    out.class_index = data.class_index;
    out.instances.reserve(indices.size());
    for (const auto i : indices)
        out.instances.push_back(data.instances[i]);
    return out;
}

}  // namespace

split_result split(const arff::dataset& data, const split_spec& spec)
{
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw config_error("train fraction must lie strictly between 0 and 1");

    const std::size_t n = data.instances.size();
    const auto total_train = static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(n)));
    splitmix64 rng(spec.seed);
    std::vector<char> in_train(n, 0);

    if (spec.stratified)
    {
        const auto& cls = data.class_attribute();
        std::vector<std::vector<std::size_t>> members(cls.values.size());
        for (std::size_t i = 0; i < n; ++i)
            members[data.class_of(i)].push_back(i);
        for (std::size_t c = 0; c < members.size(); ++c)
            if (members[c].empty())
                throw data_error("cannot stratify: class '" + cls.values[c] + "' has no instances");

        std::vector<std::size_t> quota(members.size());
        std::vector<double> remainder(members.size());
        std::size_t assigned = 0;
        for (std::size_t c = 0; c < members.size(); ++c)
        {
            const double target = spec.train_fraction * static_cast<double>(members[c].size());
            quota[c] = static_cast<std::size_t>(std::floor(target));
            remainder[c] = target - static_cast<double>(quota[c]);
            assigned += quota[c];
        }
        std::vector<std::size_t> order(members.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
        for (std::size_t k = 0; assigned < total_train && k < order.size(); ++k)
        {
            const auto c = order[k];
            if (quota[c] < members[c].size())
            {
                ++quota[c];
                ++assigned;
            }
        }
        for (std::size_t c = 0; c < members.size(); ++c)
        {
            rng.shuffle(std::span<std::size_t>(members[c]));
            for (std::size_t k = 0; k < quota[c]; ++k)
                in_train[members[c][k]] = 1;
        }
    }
    else
    {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        rng.shuffle(std::span<std::size_t>(all));
        for (std::size_t k = 0; k < total_train; ++k)
            in_train[all[k]] = 1;
    }

    split_result out;
    for (std::size_t i = 0; i < n; ++i)
        (in_train[i] ? out.train_indices : out.test_indices).push_back(i);
    out.train = subset(data, out.train_indices);
    out.test = subset(data, out.test_indices);
    return out;
}

}  // namespace senti::corpus
