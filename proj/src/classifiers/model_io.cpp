#include "senti/model_io.hpp"

#include "detail.hpp"
#include "senti/errors.hpp"
#include "senti/io.hpp"

#include <charconv>
#include <cmath>

namespace senti::ml
{
namespace
{

void put_values(std::string& out, std::string_view key, std::span<const double> values)
{
    out += key;
    for (const double v : values)
    {
        out += ' ';
        out += io::format_double(v);
    }
    out += '\n';
}

void put_tree(std::string& out, const tree& t)
{
    out += "tree " + std::to_string(t.nodes.size()) + '\n';
    for (const auto& n : t.nodes)
    {
        out += "node " + std::to_string(n.feature) + ' ' + io::format_double(n.threshold) + ' ' +
               std::to_string(n.left) + ' ' + std::to_string(n.right) + ' ' + std::to_string(n.label) + ' ' +
               io::format_double(n.gain);
        for (const double d : n.distribution)
            out += ' ' + io::format_double(d);
        out += '\n';
    }
}

bool single_line(std::string_view s)
{
    return s.find('\n') == std::string_view::npos && s.find('\r') == std::string_view::npos;
}

// --- reading ---------------------------------------------------------------

class line_reader
{
public:
    explicit line_reader(std::string_view text) : text_(text) {}

    /// Next line split at the first space into (key, rest).
    std::pair<std::string_view, std::string_view> next()
    {
        if (pos_ >= text_.size())
            fail("unexpected end of model file");
        const auto nl = text_.find('\n', pos_);
        std::string_view line = text_.substr(pos_, nl == std::string_view::npos ? std::string_view::npos : nl - pos_);
        pos_ = nl == std::string_view::npos ? text_.size() : nl + 1;
        ++line_no_;
        const auto sp = line.find(' ');
        if (sp == std::string_view::npos)
            return {line, {}};
        return {line.substr(0, sp), line.substr(sp + 1)};
    }

    std::string_view expect(std::string_view key)
    {
        auto [k, rest] = next();
        if (k != key)
            fail("expected '" + std::string(key) + "', found '" + std::string(k) + "'");
        return rest;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw data_error("model file line " + std::to_string(line_no_) + ": " + what);
    }

    bool at_end() const { return pos_ >= text_.size(); }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
};

std::vector<std::string_view> fields(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size())
    {
        const auto sp = s.find(' ', i);
        const auto end = sp == std::string_view::npos ? s.size() : sp;
        if (end > i)
            out.push_back(s.substr(i, end - i));
        i = end + 1;
    }
    return out;
}

template <typename Int>
Int to_int(const line_reader& in, std::string_view s)
{
    Int v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        in.fail("bad integer '" + std::string(s) + "'");
    return v;
}

double to_double(const line_reader& in, std::string_view s)
{
    const auto v = io::parse_double(s);
    if (!v || !std::isfinite(*v))
        in.fail("bad number '" + std::string(s) + "'");
    return *v;
}

std::vector<double> doubles(const line_reader& in, std::string_view s, std::size_t expected)
{
    std::vector<double> out;
    for (const auto f : fields(s))
        out.push_back(to_double(in, f));
    if (out.size() != expected)
        in.fail("expected " + std::to_string(expected) + " values, found " + std::to_string(out.size()));
    return out;
}

tree read_tree(line_reader& in, std::size_t width, std::size_t classes)
{
    const auto count = to_int<std::size_t>(in, in.expect("tree"));
    if (count == 0)
        in.fail("empty tree");
    tree t;
    t.nodes.resize(count);
    for (std::size_t i = 0; i < count; ++i)
    {
        const auto f = fields(in.expect("node"));
        if (f.size() != 6 + classes)
            in.fail("malformed tree node");
        auto& n = t.nodes[i];
        n.feature = to_int<std::int32_t>(in, f[0]);
        n.threshold = to_double(in, f[1]);
        n.left = to_int<std::uint32_t>(in, f[2]);
        n.right = to_int<std::uint32_t>(in, f[3]);
        n.label = to_int<std::uint32_t>(in, f[4]);
        n.gain = to_double(in, f[5]);
        for (std::size_t c = 0; c < classes; ++c)
            n.distribution.push_back(to_double(in, f[6 + c]));
        if (n.label >= classes)
            in.fail("tree node label out of range");
        if (!n.is_leaf())
        {
            if (static_cast<std::size_t>(n.feature) >= width || n.left <= i || n.right <= i || n.left >= count ||
                n.right >= count)
                in.fail("tree node links out of range");
        }
    }
    return t;
}

}  // namespace

std::string save_model(const model& m)
{
    for (const auto& c : m.class_values)
        if (!single_line(c) || c.empty())
            throw data_error("class name '" + c + "' cannot be persisted");
    for (const auto& [k, v] : m.hyperparameters)
        if (!single_line(k) || !single_line(v) || k.find(' ') != std::string::npos)
            throw data_error("hyperparameter '" + k + "' cannot be persisted");

    std::string out;
    out += "senti-model " + std::to_string(model_format_version) + '\n';
    out += "variant " + std::string(to_string(m.variant)) + '\n';
    out += "feature_width " + std::to_string(m.feature_width) + '\n';
    out += "classes " + std::to_string(m.class_values.size()) + '\n';
    for (const auto& c : m.class_values)
        out += "class " + c + '\n';
    for (const auto& [k, v] : m.hyperparameters)
        out += "param " + k + ' ' + v + '\n';
    out += "body\n";

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, mnb_state>)
            {
                put_values(out, "log_prior", s.log_prior);
                for (std::size_t c = 0; c < s.log_prior.size(); ++c)
                    put_values(out, "log_likelihood " + std::to_string(c),
                               std::span<const double>(s.log_likelihood).subspan(c * m.feature_width, m.feature_width));
            }
            else if constexpr (std::is_same_v<T, knn_state>)
            {
                out += "k " + std::to_string(s.params.k) + '\n';
                out += "distance " + std::string(to_string(s.params.distance)) + '\n';
                out += "p " + io::format_double(s.params.p) + '\n';
                out += "rows " + std::to_string(s.training.size()) + '\n';
                for (std::size_t r = 0; r < s.training.size(); ++r)
                {
                    const auto& row = s.training.rows[r];
                    out += "row " + std::to_string(s.training.labels[r]);
                    for (std::size_t k = 0; k < row.nnz(); ++k)
                        out += ' ' + std::to_string(row.index[k]) + ':' + io::format_double(row.weight[k]);
                    out += '\n';
                }
            }
            else if constexpr (std::is_same_v<T, tree>)
                put_tree(out, s);
            else if constexpr (std::is_same_v<T, forest_state>)
            {
                out += "trees " + std::to_string(s.trees.size()) + '\n';
                for (const auto& t : s.trees)
                    put_tree(out, t);
            }
            else if constexpr (std::is_same_v<T, boost_state>)
            {
                out += "learners " + std::to_string(s.learners.size()) + '\n';
                for (std::size_t t = 0; t < s.learners.size(); ++t)
                {
                    out += "alpha " + io::format_double(s.alphas[t]) + '\n';
                    put_tree(out, s.learners[t]);
                }
            }
            else if constexpr (std::is_same_v<T, svm_state>)
            {
                out += "bias " + io::format_double(s.bias) + '\n';
                put_values(out, "weights", s.weights);
            }
            else
            {
                out += "activation " + std::string(to_string(s.act)) + '\n';
                out += "layers " + std::to_string(s.layers.size()) + '\n';
                for (const auto& layer : s.layers)
                {
                    out += "layer " + std::to_string(layer.inputs) + ' ' + std::to_string(layer.outputs) + '\n';
                    put_values(out, "weights", layer.weights);
                    put_values(out, "bias", layer.bias);
                }
            }
        },
        m.state);
    out += "end\n";
    return out;
}

model load_model(std::string_view text)
{
    line_reader in(text);
    const auto version = in.expect("senti-model");
    if (version != std::to_string(model_format_version))
        in.fail("unsupported model format version '" + std::string(version) + "'");

    model m;
    try
    {
        m.variant = parse_algorithm(in.expect("variant"));
    }
    catch (const config_error& e)
    {
        in.fail(e.what());
    }
    m.feature_width = to_int<std::size_t>(in, in.expect("feature_width"));
    const auto classes = to_int<std::size_t>(in, in.expect("classes"));
    if (classes < 2)
        in.fail("a model needs at least two classes");
    for (std::size_t c = 0; c < classes; ++c)
        m.class_values.emplace_back(in.expect("class"));

    while (true)
    {
        auto [k, rest] = in.next();
        if (k == "body")
            break;
        if (k != "param")
            in.fail("expected 'param' or 'body', found '" + std::string(k) + "'");
        const auto sp = rest.find(' ');
        if (sp == std::string_view::npos)
            in.fail("malformed param line");
        m.hyperparameters.emplace_back(std::string(rest.substr(0, sp)), std::string(rest.substr(sp + 1)));
    }

    const std::size_t width = m.feature_width;
    switch (m.variant)
    {
    case algorithm::mnb: {
        mnb_state s;
        s.log_prior = doubles(in, in.expect("log_prior"), classes);
        for (std::size_t c = 0; c < classes; ++c)
        {
            const auto rest = in.expect("log_likelihood");
            const auto sp = rest.find(' ');
            const auto head = rest.substr(0, sp);
            if (to_int<std::size_t>(in, head) != c)
                in.fail("log_likelihood rows out of order");
            const auto vals = doubles(in, sp == std::string_view::npos ? std::string_view{} : rest.substr(sp + 1), width);
            s.log_likelihood.insert(s.log_likelihood.end(), vals.begin(), vals.end());
        }
        m.state = std::move(s);
        break;
    }
    case algorithm::knn: {
        knn_state s;
        s.params.k = to_int<std::size_t>(in, in.expect("k"));
        try
        {
            s.params.distance = parse_distance(in.expect("distance"));
        }
        catch (const config_error& e)
        {
            in.fail(e.what());
        }
        s.params.p = to_double(in, in.expect("p"));
        const auto rows = to_int<std::size_t>(in, in.expect("rows"));
        if (s.params.k == 0 || s.params.k > rows)
            in.fail("k out of range");
        s.training.width = width;
        s.training.class_values = m.class_values;
        for (std::size_t r = 0; r < rows; ++r)
        {
            const auto f = fields(in.expect("row"));
            if (f.empty())
                in.fail("malformed knn row");
            const auto label = to_int<std::uint32_t>(in, f[0]);
            if (label >= classes)
                in.fail("knn label out of range");
            vectorize::sparse_row row;
            for (std::size_t i = 1; i < f.size(); ++i)
            {
                const auto colon = f[i].find(':');
                if (colon == std::string_view::npos)
                    in.fail("malformed knn entry");
                const auto idx = to_int<std::uint32_t>(in, f[i].substr(0, colon));
                if (idx >= width || (!row.index.empty() && idx <= row.index.back()))
                    in.fail("knn feature index out of order");
                row.index.push_back(idx);
                row.weight.push_back(to_double(in, f[i].substr(colon + 1)));
            }
            s.training.rows.push_back(std::move(row));
            s.training.labels.push_back(label);
        }
        s.dense = s.training.dense();
        m.state = std::move(s);
        break;
    }
    case algorithm::dtree:
        m.state = read_tree(in, width, classes);
        break;
    case algorithm::bagging:
    case algorithm::rforest: {
        forest_state s;
        const auto count = to_int<std::size_t>(in, in.expect("trees"));
        if (count == 0)
            in.fail("ensemble without trees");
        for (std::size_t t = 0; t < count; ++t)
            s.trees.push_back(read_tree(in, width, classes));
        m.state = std::move(s);
        break;
    }
    case algorithm::adaboost: {
        boost_state s;
        const auto count = to_int<std::size_t>(in, in.expect("learners"));
        for (std::size_t t = 0; t < count; ++t)
        {
            s.alphas.push_back(to_double(in, in.expect("alpha")));
            s.learners.push_back(read_tree(in, width, classes));
        }
        m.state = std::move(s);
        break;
    }
    case algorithm::svm: {
        svm_state s;
        s.bias = to_double(in, in.expect("bias"));
        s.weights = doubles(in, in.expect("weights"), width);
        m.state = std::move(s);
        break;
    }
    case algorithm::mlp: {
        mlp_state s;
        try
        {
            s.act = parse_activation(in.expect("activation"));
        }
        catch (const config_error& e)
        {
            in.fail(e.what());
        }
        const auto layers = to_int<std::size_t>(in, in.expect("layers"));
        if (layers < 2)
            in.fail("mlp needs a hidden layer and an output layer");
        std::size_t expected_inputs = width;
        for (std::size_t l = 0; l < layers; ++l)
        {
            const auto f = fields(in.expect("layer"));
            if (f.size() != 2)
                in.fail("malformed layer line");
            mlp_layer layer;
            layer.inputs = to_int<std::size_t>(in, f[0]);
            layer.outputs = to_int<std::size_t>(in, f[1]);
            if (layer.inputs != expected_inputs || layer.outputs == 0)
                in.fail("layer shapes do not chain");
            layer.weights = doubles(in, in.expect("weights"), layer.inputs * layer.outputs);
            layer.bias = doubles(in, in.expect("bias"), layer.outputs);
            expected_inputs = layer.outputs;
            s.layers.push_back(std::move(layer));
        }
        if (expected_inputs != classes)
            in.fail("output layer width does not match the class count");
        m.state = std::move(s);
        break;
    }
    }
    in.expect("end");
    return m;
}

void save_model_file(const model& m, const std::filesystem::path& path)
{
    io::write_atomic(path, save_model(m));
}

model load_model_file(const std::filesystem::path& path)
{
    return load_model(io::read_text(path));
}

}  // namespace senti::ml
