#include "detail.hpp"

#include "senti/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace senti::ml
{
namespace
{

double activate(activation a, double z)
{
    if (a == activation::logistic)
        return 1.0 / (1.0 + std::exp(-z));
    return std::tanh(z);
}

// derivative expressed through the activation value
double activate_prime(activation a, double out)
{
    if (a == activation::logistic)
        return out * (1.0 - out);
    return 1.0 - out * out;
}

void softmax_inplace(std::vector<double>& z)
{
    const double top = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (auto& v : z)
    {
        v = std::exp(v - top);
        sum += v;
    }
    for (auto& v : z)
        v /= sum;
}

/// Forward pass; acts[0] is the input, acts.back() the softmax output.
void forward(const mlp_state& net, std::span<const double> x, std::vector<std::vector<double>>& acts)
{
    acts.resize(net.layers.size() + 1);
    acts[0].assign(x.begin(), x.end());
    for (std::size_t l = 0; l < net.layers.size(); ++l)
    {
        const auto& layer = net.layers[l];
        const auto& in = acts[l];
        auto& out = acts[l + 1];
        out = layer.bias;
        for (std::size_t i = 0; i < layer.inputs; ++i)
        {
            const double xi = in[i];
            if (xi == 0.0)
                continue;
            for (std::size_t j = 0; j < layer.outputs; ++j)
                out[j] += layer.weights[j * layer.inputs + i] * xi;
        }
        if (l + 1 == net.layers.size())
            softmax_inplace(out);
        else
            for (auto& v : out)
                v = activate(net.act, v);
    }
}

/// Adds the cross-entropy gradient for one example into `grad` (same layout
/// as mlp_parameters) and returns the example's loss.
double backward(const mlp_state& net, const std::vector<std::vector<double>>& acts, std::uint32_t label,
                std::vector<double>& grad, const std::vector<std::size_t>& offsets, std::vector<double>& delta,
                std::vector<double>& next_delta)
{
    const auto& probs = acts.back();
    const double loss = -std::log(std::max(probs[label], 1e-300));

    delta = probs;
    delta[label] -= 1.0;
    for (std::size_t l = net.layers.size(); l-- > 0;)
    {
        const auto& layer = net.layers[l];
        const auto& in = acts[l];
        double* gw = grad.data() + offsets[l];
        double* gb = gw + layer.outputs * layer.inputs;
        for (std::size_t j = 0; j < layer.outputs; ++j)
        {
            const double d = delta[j];
            gb[j] += d;
            if (d == 0.0)
                continue;
            double* row = gw + j * layer.inputs;
            for (std::size_t i = 0; i < layer.inputs; ++i)
                if (in[i] != 0.0)
                    row[i] += d * in[i];
        }
        if (l == 0)
            break;
        next_delta.assign(layer.inputs, 0.0);
        for (std::size_t j = 0; j < layer.outputs; ++j)
        {
            const double d = delta[j];
            const double* row = layer.weights.data() + j * layer.inputs;
            for (std::size_t i = 0; i < layer.inputs; ++i)
                next_delta[i] += row[i] * d;
        }
        for (std::size_t i = 0; i < layer.inputs; ++i)
            next_delta[i] *= activate_prime(net.act, in[i]);
        std::swap(delta, next_delta);
    }
    return loss;
}

std::vector<std::size_t> parameter_offsets(const mlp_state& net)
{
    std::vector<std::size_t> offsets;
    std::size_t at = 0;
    for (const auto& layer : net.layers)
    {
        offsets.push_back(at);
        at += layer.outputs * layer.inputs + layer.outputs;
    }
    offsets.push_back(at);
    return offsets;
}

}  // namespace

mlp_state init_mlp(std::size_t inputs, std::size_t classes, const mlp_params& params, splitmix64& rng)
{
    if (params.hidden.empty())
        throw config_error("mlp: need at least one hidden layer");
    for (const auto w : params.hidden)
        if (w == 0)
            throw config_error("mlp: hidden layer width must be positive");

    mlp_state net;
    net.act = params.act;
    std::vector<std::size_t> widths{inputs};
    widths.insert(widths.end(), params.hidden.begin(), params.hidden.end());
    widths.push_back(classes);
    for (std::size_t l = 0; l + 1 < widths.size(); ++l)
    {
        mlp_layer layer;
        layer.inputs = widths[l];
        layer.outputs = widths[l + 1];
        const double r = std::sqrt(6.0 / static_cast<double>(layer.inputs + layer.outputs));
        layer.weights.resize(layer.inputs * layer.outputs);
        for (auto& w : layer.weights)
            w = rng.uniform(-r, r);
        layer.bias.assign(layer.outputs, 0.0);
        net.layers.push_back(std::move(layer));
    }
    return net;
}

std::vector<double> mlp_parameters(const mlp_state& net)
{
    std::vector<double> out;
    for (const auto& layer : net.layers)
    {
        out.insert(out.end(), layer.weights.begin(), layer.weights.end());
        out.insert(out.end(), layer.bias.begin(), layer.bias.end());
    }
    return out;
}

void set_mlp_parameters(mlp_state& net, std::span<const double> params)
{
    std::size_t at = 0;
    for (auto& layer : net.layers)
    {
        if (at + layer.weights.size() + layer.bias.size() > params.size())
            throw data_error("mlp: parameter vector too short");
        std::copy_n(params.begin() + static_cast<std::ptrdiff_t>(at), layer.weights.size(), layer.weights.begin());
        at += layer.weights.size();
        std::copy_n(params.begin() + static_cast<std::ptrdiff_t>(at), layer.bias.size(), layer.bias.begin());
        at += layer.bias.size();
    }
    if (at != params.size())
        throw data_error("mlp: parameter vector too long");
}

double mlp_loss(const mlp_state& net, const feature_matrix& data, std::vector<double>* gradient)
{
    const auto offsets = parameter_offsets(net);
    std::vector<double> grad(offsets.back(), 0.0);
    std::vector<std::vector<double>> acts;
    std::vector<double> x(data.width);
    std::vector<double> delta;
    std::vector<double> scratch;
    double loss = 0.0;
    for (std::size_t r = 0; r < data.size(); ++r)
    {
        data.rows[r].densify_into(x);
        forward(net, x, acts);
        loss += backward(net, acts, data.labels[r], grad, offsets, delta, scratch);
    }
    const double n = static_cast<double>(data.size());
    if (gradient)
    {
        for (auto& g : grad)
            g /= n;
        *gradient = std::move(grad);
    }
    return loss / n;
}

// Mini-batch gradient descent on mean cross-entropy. Each epoch shuffles the
// row order once; the last batch of an epoch may be short.
model train_mlp(const feature_matrix& data, const mlp_params& params, std::uint64_t seed)
{
    detail::check_training(data, "mlp");
    if (!(params.learning_rate > 0.0) || !std::isfinite(params.learning_rate))
        throw config_error("mlp: learning rate must be positive");
    if (params.batch_size == 0)
        throw config_error("mlp: batch size must be positive");

    splitmix64 rng(seed);
    mlp_state net = init_mlp(data.width, data.class_values.size(), params, rng);
    const auto offsets = parameter_offsets(net);

    const std::size_t n = data.size();
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::vector<double> grad(offsets.back(), 0.0);
    std::vector<std::vector<double>> acts;
    std::vector<double> x(data.width);
    std::vector<double> delta;
    std::vector<double> scratch;

    for (std::size_t epoch = 0; epoch < params.epochs; ++epoch)
    {
        rng.shuffle(std::span<std::uint32_t>(order));
        for (std::size_t start = 0; start < n; start += params.batch_size)
        {
            const std::size_t end = std::min(n, start + params.batch_size);
            std::fill(grad.begin(), grad.end(), 0.0);
            for (std::size_t k = start; k < end; ++k)
            {
                const auto r = order[k];
                data.rows[r].densify_into(x);
                forward(net, x, acts);
                backward(net, acts, data.labels[r], grad, offsets, delta, scratch);
            }
            const double step = params.learning_rate / static_cast<double>(end - start);
            for (std::size_t l = 0; l < net.layers.size(); ++l)
            {
                auto& layer = net.layers[l];
                const double* gw = grad.data() + offsets[l];
                const double* gb = gw + layer.weights.size();
                for (std::size_t i = 0; i < layer.weights.size(); ++i)
                    layer.weights[i] -= step * gw[i];
                for (std::size_t j = 0; j < layer.bias.size(); ++j)
                    layer.bias[j] -= step * gb[j];
            }
        }
    }

    model m = detail::make_model(algorithm::mlp, data);
    std::string hidden;
    for (const auto w : params.hidden)
    {
        if (!hidden.empty())
            hidden += ',';
        hidden += std::to_string(w);
    }
    m.hyperparameters.emplace_back("hidden", hidden);
    m.hyperparameters.emplace_back("activation", std::string(to_string(params.act)));
    m.hyperparameters.emplace_back("learning_rate", detail::num(params.learning_rate));
    m.hyperparameters.emplace_back("epochs", detail::num(params.epochs));
    m.hyperparameters.emplace_back("batch_size", detail::num(params.batch_size));
    m.hyperparameters.emplace_back("seed", std::to_string(seed));
    m.state = std::move(net);
    return m;
}

namespace detail
{

std::vector<double> mlp_probabilities(const mlp_state& s, std::span<const double> x)
{
    std::vector<std::vector<double>> acts;
    forward(s, x, acts);
    return acts.back();
}

}  // namespace detail
}  // namespace senti::ml
