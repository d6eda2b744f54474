#include "detail.hpp"

#include "senti/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace senti::ml
{

double entropy(std::span<const double> class_weights)
{
    double total = 0.0;
    for (const double w : class_weights)
        total += w;
    if (total <= 0.0)
        return 0.0;
    double h = 0.0;
    for (const double w : class_weights)
    {
        if (w <= 0.0)
            continue;
        const double p = w / total;
        h -= p * std::log2(p);
    }
    return h;
}

std::vector<std::uint32_t> bootstrap_counts(std::size_t n, splitmix64& rng)
{
    std::vector<std::uint32_t> counts(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        ++counts[rng.next_index(n)];
    return counts;
}

const tree_node& tree::leaf_for(std::span<const double> x) const
{
    const tree_node* node = &nodes.front();
    while (!node->is_leaf())
        node = &nodes[x[static_cast<std::size_t>(node->feature)] <= node->threshold ? node->left : node->right];
    return *node;
}

std::size_t tree::depth() const
{
    std::vector<std::size_t> d(nodes.size(), 0);
    std::size_t deepest = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
    {
        deepest = std::max(deepest, d[i]);
        if (!nodes[i].is_leaf())
        {
            d[nodes[i].left] = d[i] + 1;
            d[nodes[i].right] = d[i] + 1;
        }
    }
    return deepest;
}

namespace
{

constexpr double min_gain = 1e-12;

struct column_entry
{
    double value;
    std::uint32_t row;
};

struct split_choice
{
    std::int32_t feature = -1;
    double threshold = 0.0;
    double gain = min_gain;
};

class tree_builder
{
public:
    tree_builder(const feature_matrix& data, const tree_sample& sample, const tree_params& params,
                 std::size_t features_per_split, splitmix64* rng)
        : data_(data)
        , sample_(sample)
        , params_(params)
        , classes_(data.class_values.size())
        , subset_size_(features_per_split == 0 ? data.width : std::min(features_per_split, data.width))
        , rng_(rng)
        , node_of_(data.size(), -1)
        , columns_(data.width)
    {
        for (std::uint32_t r = 0; r < data.size(); ++r)
        {
            if (sample.counts[r] == 0)
                continue;
            const auto& row = data.rows[r];
            for (std::size_t k = 0; k < row.nnz(); ++k)
                if (row.weight[k] != 0.0)
                    columns_[row.index[k]].push_back({row.weight[k], r});
        }
        for (auto& col : columns_)
            std::sort(col.begin(), col.end(), [](const column_entry& a, const column_entry& b) {
                return a.value < b.value || (a.value == b.value && a.row < b.row);
            });
    }

    tree run()
    {
        std::vector<std::uint32_t> rows;
        for (std::uint32_t r = 0; r < data_.size(); ++r)
            if (sample_.counts[r] > 0)
                rows.push_back(r);
        if (rows.empty())
            throw data_error("decision tree: empty training sample");
        build(rows, 0);
        return std::move(out_);
    }

private:
    std::uint32_t build(const std::vector<std::uint32_t>& rows, std::size_t depth)
    {
        const auto id = static_cast<std::uint32_t>(out_.nodes.size());
        out_.nodes.emplace_back();

        std::vector<double> totals(classes_, 0.0);
        std::size_t count = 0;
        for (const auto r : rows)
        {
            totals[data_.labels[r]] += sample_.weights[r];
            count += sample_.counts[r];
            node_of_[r] = static_cast<std::int32_t>(id);
        }
        double total_weight = 0.0;
        std::size_t populated = 0;
        for (const double w : totals)
        {
            total_weight += w;
            populated += w > 0.0 ? 1 : 0;
        }
        {
            auto& node = out_.nodes[id];
            node.distribution.resize(classes_, 0.0);
            if (total_weight > 0.0)
                for (std::size_t c = 0; c < classes_; ++c)
                    node.distribution[c] = totals[c] / total_weight;
            else
                std::fill(node.distribution.begin(), node.distribution.end(), 1.0 / static_cast<double>(classes_));
            node.label = argmax(node.distribution);
        }

        const bool depth_ok = params_.max_depth == 0 || depth < params_.max_depth;
        if (populated <= 1 || !depth_ok || count < 2 * params_.min_leaf)
            return id;

        const split_choice best = find_split(id, totals, total_weight, count);
        if (best.feature < 0)
            return id;

        std::vector<std::uint32_t> left;
        std::vector<std::uint32_t> right;
        for (const auto r : rows)
            (detail::value_at(data_.rows[r], static_cast<std::uint32_t>(best.feature)) <= best.threshold ? left : right)
                .push_back(r);

        out_.nodes[id].feature = best.feature;
        out_.nodes[id].threshold = best.threshold;
        out_.nodes[id].gain = best.gain;
        const auto l = build(left, depth + 1);
        const auto r = build(right, depth + 1);
        out_.nodes[id].left = l;
        out_.nodes[id].right = r;
        return id;
    }

    std::vector<std::uint32_t> candidate_features()
    {
        std::vector<std::uint32_t> features(data_.width);
        std::iota(features.begin(), features.end(), 0u);
        if (subset_size_ >= data_.width || rng_ == nullptr)
            return features;
        // partial Fisher-Yates from the front
        for (std::size_t i = 0; i < subset_size_; ++i)
        {
            const std::size_t j = i + rng_->next_index(data_.width - i);
            std::swap(features[i], features[j]);
        }
        features.resize(subset_size_);
        std::sort(features.begin(), features.end());
        return features;
    }

    split_choice find_split(std::uint32_t id, const std::vector<double>& totals, double total_weight,
                            std::size_t count)
    {
        const double parent_h = entropy(totals);
        split_choice best;
        std::vector<column_entry> entries;
        std::vector<double> zero_w(classes_);
        std::vector<double> left_w(classes_);
        std::vector<double> right_w(classes_);

        for (const auto f : candidate_features())
        {
            entries.clear();
            for (const auto& e : columns_[f])
                if (node_of_[e.row] == static_cast<std::int32_t>(id))
                    entries.push_back(e);

            zero_w = totals;
            std::size_t zero_count = count;
            for (const auto& e : entries)
            {
                zero_w[data_.labels[e.row]] -= sample_.weights[e.row];
                zero_count -= sample_.counts[e.row];
            }
            // clamp rounding residue from the subtraction above
            for (auto& w : zero_w)
                if (w < 0.0)
                    w = 0.0;

            std::fill(left_w.begin(), left_w.end(), 0.0);
            double left_total = 0.0;
            std::size_t left_count = 0;
            bool zero_done = zero_count == 0;
            bool have_prev = false;
            double prev = 0.0;

            auto consider = [&](double next_value) {
                if (!have_prev || left_count < params_.min_leaf || count - left_count < params_.min_leaf)
                    return;
                double threshold = prev + (next_value - prev) / 2.0;
                if (!(threshold < next_value))
                    threshold = prev;
                for (std::size_t c = 0; c < classes_; ++c)
                    right_w[c] = std::max(0.0, totals[c] - left_w[c]);
                const double right_total = std::max(0.0, total_weight - left_total);
                const double gain = parent_h - (left_total / total_weight) * entropy(left_w) -
                                    (right_total / total_weight) * entropy(right_w);
                if (gain > best.gain)
                {
                    best.feature = static_cast<std::int32_t>(f);
                    best.threshold = threshold;
                    best.gain = gain;
                }
            };
            auto absorb_zero = [&]() {
                consider(0.0);
                for (std::size_t c = 0; c < classes_; ++c)
                {
                    left_w[c] += zero_w[c];
                    left_total += zero_w[c];
                }
                left_count += zero_count;
                prev = 0.0;
                have_prev = true;
                zero_done = true;
            };

            for (std::size_t k = 0; k < entries.size();)
            {
                const double v = entries[k].value;
                if (!zero_done && v > 0.0)
                    absorb_zero();
                consider(v);
                while (k < entries.size() && entries[k].value == v)
                {
                    const auto r = entries[k].row;
                    left_w[data_.labels[r]] += sample_.weights[r];
                    left_total += sample_.weights[r];
                    left_count += sample_.counts[r];
                    ++k;
                }
                prev = v;
                have_prev = true;
            }
            if (!zero_done)
                absorb_zero();
        }
        return best;
    }

    const feature_matrix& data_;
    const tree_sample& sample_;
    const tree_params& params_;
    std::size_t classes_;
    std::size_t subset_size_;
    splitmix64* rng_;
    std::vector<std::int32_t> node_of_;
    std::vector<std::vector<column_entry>> columns_;
    tree out_;
};

void check_tree_params(const tree_params& p, std::string_view who)
{
    if (p.min_leaf == 0)
        throw config_error(std::string(who) + ": min_leaf must be at least 1");
}

std::vector<std::uint32_t> forest_votes(const forest_state& s, std::span<const double> x, std::size_t classes)
{
    std::vector<std::uint32_t> votes(classes, 0);
    for (const auto& t : s.trees)
        ++votes[t.leaf_for(x).label];
    return votes;
}

model train_ensemble(algorithm which, const feature_matrix& data, std::size_t trees, const tree_params& base,
                     std::size_t features_per_split, std::uint64_t seed, bool parallel)
{
    const std::size_t n = data.size();
    forest_state s;
    s.trees.resize(trees);
    const auto members = static_cast<std::ptrdiff_t>(trees);

    auto grow_member = [&](std::ptrdiff_t i) {
        auto rng = splitmix64::stream(seed, static_cast<std::uint64_t>(i));
        const auto counts = bootstrap_counts(n, rng);
        std::vector<double> weights(counts.begin(), counts.end());
        const tree_sample sample{counts, weights};
        s.trees[static_cast<std::size_t>(i)] = grow_tree(data, sample, base, features_per_split, &rng);
    };

    if (parallel)
    {
        // exceptions must not escape an OpenMP region
        std::vector<std::exception_ptr> failures(trees);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < members; ++i)
        {
            try
            {
                grow_member(i);
            }
            catch (...)
            {
                failures[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
        for (const auto& f : failures)
            if (f)
                std::rethrow_exception(f);
    }
    else
    {
        for (std::ptrdiff_t i = 0; i < members; ++i)
            grow_member(i);
    }

    model m = detail::make_model(which, data);
    m.hyperparameters.emplace_back("trees", detail::num(trees));
    if (which == algorithm::rforest)
        m.hyperparameters.emplace_back("features_per_split", detail::num(features_per_split));
    detail::add_tree_params(m, "", base);
    m.hyperparameters.emplace_back("seed", std::to_string(seed));
    m.state = std::move(s);
    return m;
}

}  // namespace

tree grow_tree(const feature_matrix& data, const tree_sample& sample, const tree_params& params,
               std::size_t features_per_split, splitmix64* rng)
{
    if (sample.counts.size() != data.size() || sample.weights.size() != data.size())
        throw data_error("decision tree: sample size does not match the data");
    return tree_builder(data, sample, params, features_per_split, rng).run();
}

model train_dtree(const feature_matrix& data, const tree_params& params)
{
    detail::check_training(data, "decision tree");
    check_tree_params(params, "decision tree");
    const std::vector<std::uint32_t> counts(data.size(), 1);
    const std::vector<double> weights(data.size(), 1.0);
    model m = detail::make_model(algorithm::dtree, data);
    detail::add_tree_params(m, "", params);
    m.state = grow_tree(data, {counts, weights}, params);
    return m;
}

model train_bagging(const feature_matrix& data, const bagging_params& params, std::uint64_t seed, bool parallel)
{
    detail::check_training(data, "bagging");
    check_tree_params(params.base, "bagging");
    if (params.trees == 0)
        throw config_error("bagging: need at least one tree");
    return train_ensemble(algorithm::bagging, data, params.trees, params.base, 0, seed, parallel);
}

model train_rforest(const feature_matrix& data, const forest_params& params, std::uint64_t seed, bool parallel)
{
    detail::check_training(data, "random forest");
    check_tree_params(params.base, "random forest");
    if (params.trees == 0)
        throw config_error("random forest: need at least one tree");
    std::size_t subset = params.features_per_split;
    if (subset == 0)
        subset = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(data.width))));
    subset = std::max<std::size_t>(subset, 1);
    if (subset > data.width)
        throw config_error("random forest: features_per_split exceeds the feature width");
    return train_ensemble(algorithm::rforest, data, params.trees, params.base, subset, seed, parallel);
}

namespace detail
{

std::vector<double> forest_scores(const forest_state& s, std::span<const double> x, std::size_t classes)
{
    const auto votes = forest_votes(s, x, classes);
    std::vector<double> out(classes);
    for (std::size_t c = 0; c < classes; ++c)
        out[c] = static_cast<double>(votes[c]) / static_cast<double>(s.trees.size());
    return out;
}

}  // namespace detail
}  // namespace senti::ml
