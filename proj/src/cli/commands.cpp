#include "senti/cli.hpp"

#include "senti/arff.hpp"
#include "senti/classifiers.hpp"
#include "senti/corpus.hpp"
#include "senti/errors.hpp"
#include "senti/eval.hpp"
#include "senti/io.hpp"
#include "senti/model_io.hpp"
#include "senti/synthetic.hpp"
#include "senti/vectorize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace senti::cli
{
namespace
{

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Option structs filled by CLI11.

struct synth_opts
{
    std::string out_dir;
    std::size_t per_class = 1000;
    std::uint64_t seed = 42;
};

struct convert_opts
{
    std::string input_dir;
    std::string output;
};

struct split_opts
{
    std::string input;
    double train_fraction = 0.8;
    std::uint64_t seed = 42;
    bool no_stratify = false;
    std::string out_train;
    std::string out_test;
};

struct vectorize_flags
{
    std::string weighting = "count";
    std::string stopwords;
    bool no_stopwords = false;
    std::size_t min_term_freq = 1;
};

struct vectorize_opts
{
    std::string train;
    std::string test;
    vectorize_flags vec;
    std::string out_train;
    std::string out_test;
    std::string vocab;
};

struct hyper_flags
{
    ml::train_config config;
    std::string distance = "euclidean";
    std::string hidden = "32,32";
    std::string activation = "logistic";
    std::size_t weak_depth = 1;
};

struct train_opts
{
    std::string train;
    std::string algorithm;
    std::string model_out;
    hyper_flags hyper;
};

struct evaluate_opts
{
    std::string model;
    std::string test;
    std::string positive_class;
    std::string out_dir = ".";
};

struct compare_opts
{
    std::string train;
    std::string test;
    std::vector<std::string> algorithms;
    std::string out_dir;
    std::string positive_class;
    vectorize_flags vec;
    hyper_flags hyper;
};

void add_vectorize_flags(CLI::App* cmd, vectorize_flags& v)
{
    cmd->add_option("--weighting", v.weighting, "binary, count or tfidf")
        ->check(CLI::IsMember({"binary", "count", "tfidf"}))
        ->capture_default_str();
    cmd->add_option("--stopwords", v.stopwords, "stop-word file (default: bundled Roman Urdu list)");
    cmd->add_flag("--no-stopwords", v.no_stopwords, "disable stop-word removal");
    cmd->add_option("--min-term-freq", v.min_term_freq, "drop terms seen fewer times in training")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_hyper_flags(CLI::App* cmd, hyper_flags& h)
{
    auto& c = h.config;
    cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
    cmd->add_option("--alpha", c.mnb.alpha, "mnb: smoothing")->capture_default_str();
    cmd->add_option("--k", c.knn.k, "knn: neighbours")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--distance", h.distance, "knn: euclidean, manhattan or minkowski")
        ->check(CLI::IsMember({"euclidean", "manhattan", "minkowski"}))
        ->capture_default_str();
    cmd->add_option("--p", c.knn.p, "knn: minkowski exponent")->capture_default_str();
    cmd->add_option("--max-depth", c.tree.max_depth, "trees: depth limit, 0 = unlimited")->capture_default_str();
    cmd->add_option("--min-leaf", c.tree.min_leaf, "trees: minimum instances per leaf")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--trees", c.bagging.trees, "bagging/rforest: ensemble size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--features-per-split", c.forest.features_per_split, "rforest: 0 = ceil(sqrt(width))")
        ->capture_default_str();
    cmd->add_option("--rounds", c.adaboost.rounds, "adaboost: boosting rounds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--weak-depth", h.weak_depth, "adaboost: weak tree depth")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--lambda", c.svm.lambda, "svm: regularization")->capture_default_str();
    cmd->add_option("--svm-epochs", c.svm.epochs, "svm: passes over the data")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--hidden", h.hidden, "mlp: comma-separated hidden widths")->capture_default_str();
    cmd->add_option("--activation", h.activation, "mlp: logistic or tanh")
        ->check(CLI::IsMember({"logistic", "tanh"}))
        ->capture_default_str();
    cmd->add_option("--learning-rate", c.mlp.learning_rate, "mlp: step size")->capture_default_str();
    cmd->add_option("--mlp-epochs", c.mlp.epochs, "mlp: passes over the data")->capture_default_str();
    cmd->add_option("--batch-size", c.mlp.batch_size, "mlp: mini-batch size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

ml::train_config resolve(const hyper_flags& h)
{
    ml::train_config c = h.config;
    c.knn.distance = ml::parse_distance(h.distance);
    c.mlp.act = ml::parse_activation(h.activation);
    c.mlp.hidden.clear();
    for (const auto& part : CLI::detail::split(h.hidden, ','))
    {
        const auto trimmed = CLI::detail::trim_copy(part);
        std::size_t used = 0;
        unsigned long width = 0;
        try
        {
            width = std::stoul(trimmed, &used);
        }
        catch (const std::exception&)
        {
            used = 0;
        }
        if (used != trimmed.size() || trimmed.empty())
            throw config_error("--hidden expects comma-separated positive integers, got '" + h.hidden + "'");
        c.mlp.hidden.push_back(width);
    }
    c.forest.trees = c.bagging.trees;
    c.bagging.base = c.tree;
    c.forest.base = c.tree;
    c.adaboost.weak = {h.weak_depth, c.tree.min_leaf};
    return c;
}

corpus::stopword_list resolve_stopwords(const vectorize_flags& v)
{
    if (v.no_stopwords)
    {
        if (!v.stopwords.empty())
            throw config_error("--stopwords and --no-stopwords are mutually exclusive");
        return {};
    }
    if (!v.stopwords.empty())
        return corpus::stopword_list::load(v.stopwords);
    return corpus::default_stopwords();
}

vectorize::fit_options resolve(const vectorize_flags& v)
{
    vectorize::fit_options o;
    o.mode = vectorize::parse_weighting(v.weighting);
    o.stopwords = resolve_stopwords(v);
    o.min_term_freq = v.min_term_freq;
    return o;
}

/// Every option of `cmd` with its effective value.
json resolved_options(const CLI::App* cmd)
{
    json config = json::object();
    for (const auto* opt : cmd->get_options())
    {
        const auto name = opt->get_single_name();
        if (name == "help" || name.empty())
            continue;
        if (opt->count() > 0)
        {
            const auto& res = opt->results();
            if (opt->get_type_size() == 0)
                config[name] = true;
            else if (res.size() == 1)
                config[name] = res.front();
            else
                config[name] = res;
        }
        else if (opt->get_type_size() == 0)
            config[name] = false;
        else
            config[name] = opt->get_default_str();
    }
    return config;
}

void write_manifest(const fs::path& path, const CLI::App* cmd, const std::vector<std::string>& args)
{
    json m;
    m["schema"] = "senti.manifest/1";
    m["tool"] = "senti";
    m["version"] = tool_version;
    m["command"] = cmd->get_name();
    m["arguments"] = args;
    m["config"] = resolved_options(cmd);
    io::write_atomic(path, m.dump(2) + '\n');
}

fs::path dir_of(const std::string& file)
{
    auto p = fs::path(file).parent_path();
    return p.empty() ? fs::path(".") : p;
}

std::string class_counts(const arff::dataset& d)
{
    const auto& cls = d.class_attribute();
    std::vector<std::size_t> counts(cls.values.size(), 0);
    for (std::size_t i = 0; i < d.instances.size(); ++i)
        ++counts[d.class_of(i)];
    std::string out;
    for (std::size_t c = 0; c < counts.size(); ++c)
    {
        if (c)
            out += ", ";
        out += cls.values[c] + "=" + std::to_string(counts[c]);
    }
    return out;
}

bool is_text_dataset(const arff::dataset& d)
{
    return std::any_of(d.attributes.begin(), d.attributes.end(),
                       [](const arff::attribute& a) { return a.kind == arff::attribute_kind::string; });
}

std::size_t zero_rows(const vectorize::feature_matrix& m)
{
    return static_cast<std::size_t>(
        std::count_if(m.rows.begin(), m.rows.end(), [](const vectorize::sparse_row& r) { return r.nnz() == 0; }));
}

std::string vocabulary_text(const vectorize::vector_space& space)
{
    std::string out;
    for (const auto& t : space.terms())
        out += t + '\n';
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string pct(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", 100.0 * v);
    return buf;
}

double training_accuracy(const ml::model& m, const vectorize::feature_matrix& data)
{
    const auto predicted = ml::predict_batch(m, data);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        correct += predicted[i] == data.labels[i];
    return data.size() ? static_cast<double>(correct) / static_cast<double>(data.size()) : 0.0;
}

// ---------------------------------------------------------------------------
// Commands.

int do_synth(const synth_opts& o, std::ostream& out)
{
    corpus::synthetic_spec spec;
    spec.per_class = o.per_class;
    spec.seed = o.seed;
    const auto data = corpus::generate_synthetic(spec);
    corpus::write_text_directory(data, o.out_dir);
    out << "wrote " << data.instances.size() << " reviews to " << o.out_dir << " (" << class_counts(data) << ")\n";
    return exit_ok;
}

int do_convert(const convert_opts& o, std::ostream& out)
{
    const auto data = arff::load_text_directory(o.input_dir);
    io::write_atomic(o.output, arff::write(data));
    out << data.instances.size() << " instances, " << data.class_attribute().values.size() << " classes ("
        << class_counts(data) << ")\n";
    return exit_ok;
}

int do_split(const split_opts& o, std::ostream& out)
{
    const auto data = arff::read_file(o.input);
    corpus::split_spec spec{o.train_fraction, !o.no_stratify, o.seed};
    const auto parts = corpus::split(data, spec);
    io::write_atomic(o.out_train, arff::write(parts.train));
    io::write_atomic(o.out_test, arff::write(parts.test));
    out << "train: " << parts.train.instances.size() << " (" << class_counts(parts.train) << ")\n"
        << "test:  " << parts.test.instances.size() << " (" << class_counts(parts.test) << ")\n";
    return exit_ok;
}

int do_vectorize(const vectorize_opts& o, std::ostream& out, std::ostream& err)
{
    if (!o.test.empty() && o.out_test.empty())
        throw config_error("--test requires --out-test");
    const auto train = arff::read_file(o.train);
    const auto space = vectorize::fit(train, resolve(o.vec));
    const auto train_m = vectorize::transform(space, train);
    if (const auto z = zero_rows(train_m))
        err << "warning: " << z << " training rows have no vocabulary terms\n";
    io::write_atomic(o.out_train, arff::write(vectorize::to_arff(space, train_m, train.relation + "_vectors"), {true}));
    if (!o.test.empty())
    {
        const auto test = arff::read_file(o.test);
        const auto test_m = vectorize::transform(space, test);
        if (const auto z = zero_rows(test_m))
            err << "warning: " << z << " of " << test_m.size()
                << " test rows contain only out-of-vocabulary words and are all zero\n";
        io::write_atomic(o.out_test, arff::write(vectorize::to_arff(space, test_m, test.relation + "_vectors"), {true}));
    }
    if (!o.vocab.empty())
        io::write_atomic(o.vocab, vocabulary_text(space));
    out << "vocabulary: " << space.size() << " terms (" << vectorize::to_string(space.mode()) << ")\n";
    return exit_ok;
}

int do_train(const train_opts& o, std::ostream& out)
{
    const auto which = ml::parse_algorithm(o.algorithm);
    const auto config = resolve(o.hyper);
    const auto data = vectorize::from_arff(arff::read_file(o.train));
    const auto start = std::chrono::steady_clock::now();
    const auto m = ml::train(which, data, config);
    const double elapsed = seconds_since(start);
    ml::save_model_file(m, o.model_out);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", elapsed);
    out << "trained " << ml::to_string(which) << " in " << buf << " s; training accuracy "
        << pct(training_accuracy(m, data)) << "%\n";
    return exit_ok;
}

int do_evaluate(const evaluate_opts& o, std::ostream& out)
{
    const auto m = ml::load_model_file(o.model);
    const auto test = vectorize::from_arff(arff::read_file(o.test));
    if (test.width != m.feature_width)
        throw schema_error("test set has " + std::to_string(test.width) + " features but the model was trained on " +
                           std::to_string(m.feature_width) +
                           "; re-run `senti vectorize` with the training set and this test set together");
    const std::vector<eval::eval_report> reports{eval::evaluate(m, test, o.positive_class)};
    fs::create_directories(o.out_dir);
    io::write_atomic(fs::path(o.out_dir) / "report.json", eval::report_json(reports, o.test));
    out << eval::render_combined_table(reports);
    return exit_ok;
}

int do_compare(const compare_opts& o, std::ostream& out, std::ostream& err)
{
    const auto config = resolve(o.hyper);
    std::vector<ml::algorithm> algos;
    if (o.algorithms.empty())
        algos.assign(ml::all_algorithms().begin(), ml::all_algorithms().end());
    for (const auto& a : o.algorithms)
        algos.push_back(ml::parse_algorithm(a));

    const auto train_ds = arff::read_file(o.train);
    const auto test_ds = arff::read_file(o.test);
    vectorize::feature_matrix train;
    vectorize::feature_matrix test;
    fs::create_directories(fs::path(o.out_dir) / "models");
    if (is_text_dataset(train_ds))
    {
        const auto space = vectorize::fit(train_ds, resolve(o.vec));
        train = vectorize::transform(space, train_ds);
        test = vectorize::transform(space, test_ds);
        io::write_atomic(fs::path(o.out_dir) / "vocabulary.txt", vocabulary_text(space));
        out << "vocabulary: " << space.size() << " terms (" << vectorize::to_string(space.mode()) << ")\n";
        if (const auto z = zero_rows(test))
            err << "warning: " << z << " test rows contain only out-of-vocabulary words\n";
    }
    else
    {
        train = vectorize::from_arff(train_ds);
        test = vectorize::from_arff(test_ds);
    }
    if (train.width != test.width)
        throw schema_error("train and test sets have different feature widths");

    std::vector<eval::eval_report> reports;
    int status = exit_ok;
    for (const auto which : algos)
    {
        try
        {
            const auto start = std::chrono::steady_clock::now();
            const auto m = ml::train(which, train, config);
            const double elapsed = seconds_since(start);
            ml::save_model_file(m, fs::path(o.out_dir) / "models" / (std::string(ml::to_string(which)) + ".model"));
            reports.push_back(eval::evaluate(m, test, o.positive_class));
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", elapsed);
            out << "trained " << ml::to_string(which) << " in " << buf << " s\n";
        }
        catch (const config_error& e)
        {
            err << "error: " << ml::to_string(which) << ": " << e.what() << '\n';
            status = std::max(status, exit_usage);
        }
        catch (const data_error& e)
        {
            err << "error: " << ml::to_string(which) << ": " << e.what() << '\n';
            status = std::max(status, exit_data);
        }
    }
    if (status == exit_usage)
        status = exit_data;
    eval::rank(reports);

    const std::string tables = "Accuracies of classifiers\n\n" + eval::render_accuracy_table(reports) +
                               "\nEvaluation measures\n\n" + eval::render_measures_table(reports);
    io::write_atomic(fs::path(o.out_dir) / "report.json", eval::report_json(reports, o.test));
    io::write_atomic(fs::path(o.out_dir) / "tables.txt", tables);
    out << '\n' << tables;
    return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"senti - sentiment classification toolkit for Roman Urdu reviews", "senti"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);
    int threads = 0;
#ifdef _OPENMP
    app.add_option("--threads", threads, "OpenMP threads (0 = runtime default)");
#endif

    synth_opts synth;
    auto* synth_cmd = app.add_subcommand("synth", "generate the bundled synthetic review corpus");
    synth_cmd->add_option("--out-dir", synth.out_dir, "corpus root")->required();
    synth_cmd->add_option("--per-class", synth.per_class, "reviews per class")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed, "random seed")->capture_default_str();

    convert_opts convert;
    auto* convert_cmd = app.add_subcommand("convert", "load root/<class>/<file> text into an ARFF file");
    convert_cmd->add_option("--input-dir", convert.input_dir, "corpus root")->required();
    convert_cmd->add_option("--output", convert.output, "ARFF file to write")->required();

    split_opts split;
    auto* split_cmd = app.add_subcommand("split", "partition an ARFF dataset into train and test files");
    split_cmd->add_option("--input", split.input, "ARFF dataset")->required();
    split_cmd->add_option("--train-fraction", split.train_fraction, "share of instances used for training")
        ->capture_default_str();
    split_cmd->add_option("--seed", split.seed, "random seed")->capture_default_str();
    split_cmd->add_flag("--no-stratify", split.no_stratify, "ignore class proportions");
    split_cmd->add_option("--out-train", split.out_train, "training ARFF to write")->required();
    split_cmd->add_option("--out-test", split.out_test, "test ARFF to write")->required();

    vectorize_opts vec;
    auto* vec_cmd = app.add_subcommand("vectorize", "bag-of-words vectors over the training vocabulary");
    vec_cmd->add_option("--train", vec.train, "text ARFF used to fit the vocabulary")->required();
    vec_cmd->add_option("--test", vec.test, "text ARFF transformed under the training vocabulary");
    add_vectorize_flags(vec_cmd, vec.vec);
    vec_cmd->add_option("--out-train", vec.out_train, "vectorized training ARFF")->required();
    vec_cmd->add_option("--out-test", vec.out_test, "vectorized test ARFF");
    vec_cmd->add_option("--vocab", vec.vocab, "vocabulary file, one term per line");

    train_opts train;
    auto* train_cmd = app.add_subcommand("train", "train one classifier on a vectorized ARFF");
    train_cmd->add_option("--train", train.train, "vectorized training ARFF")->required();
    train_cmd->add_option("--algorithm", train.algorithm, "mnb, knn, dtree, bagging, rforest, adaboost, svm or mlp")
        ->required();
    train_cmd->add_option("--model-out", train.model_out, "model file to write")->required();
    add_hyper_flags(train_cmd, train.hyper);

    evaluate_opts evaluate;
    auto* eval_cmd = app.add_subcommand("evaluate", "score a model on a supplied test set");
    eval_cmd->add_option("--model", evaluate.model, "model file")->required();
    eval_cmd->add_option("--test", evaluate.test, "vectorized test ARFF")->required();
    eval_cmd->add_option("--positive-class", evaluate.positive_class, "reference class (default: pos, else first)");
    eval_cmd->add_option("--out-dir", evaluate.out_dir, "directory for report.json")->capture_default_str();

    compare_opts compare;
    auto* compare_cmd = app.add_subcommand("compare", "train and evaluate several classifiers on one split");
    compare_cmd->add_option("--train", compare.train, "training ARFF (text or vectorized)")->required();
    compare_cmd->add_option("--test", compare.test, "test ARFF (same kind as --train)")->required();
    compare_cmd->add_option("--algorithms", compare.algorithms, "subset to run (default: all eight)")
        ->delimiter(',');
    compare_cmd->add_option("--out-dir", compare.out_dir, "output directory")->required();
    compare_cmd->add_option("--positive-class", compare.positive_class, "reference class (default: pos, else first)");
    add_vectorize_flags(compare_cmd, compare.vec);
    add_hyper_flags(compare_cmd, compare.hyper);

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError& e)
    {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
    }

#ifdef _OPENMP
    if (threads > 0)
        omp_set_num_threads(threads);
#endif

    try
    {
        if (synth_cmd->parsed())
        {
            const int rc = do_synth(synth, out);
            write_manifest(fs::path(synth.out_dir) / "synth.manifest.json", synth_cmd, args);
            return rc;
        }
        if (convert_cmd->parsed())
        {
            const int rc = do_convert(convert, out);
            write_manifest(dir_of(convert.output) / "convert.manifest.json", convert_cmd, args);
            return rc;
        }
        if (split_cmd->parsed())
        {
            const int rc = do_split(split, out);
            write_manifest(dir_of(split.out_train) / "split.manifest.json", split_cmd, args);
            return rc;
        }
        if (vec_cmd->parsed())
        {
            const int rc = do_vectorize(vec, out, err);
            write_manifest(dir_of(vec.out_train) / "vectorize.manifest.json", vec_cmd, args);
            return rc;
        }
        if (train_cmd->parsed())
        {
            const int rc = do_train(train, out);
            write_manifest(fs::path(train.model_out + ".manifest.json"), train_cmd, args);
            return rc;
        }
        if (eval_cmd->parsed())
        {
            const int rc = do_evaluate(evaluate, out);
            write_manifest(fs::path(evaluate.out_dir) / "evaluate.manifest.json", eval_cmd, args);
            return rc;
        }
        if (compare_cmd->parsed())
        {
            const int rc = do_compare(compare, out, err);
            write_manifest(fs::path(compare.out_dir) / "compare.manifest.json", compare_cmd, args);
            return rc;
        }
    }
    catch (const config_error& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const data_error& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_data;
    }
    catch (const fs::filesystem_error& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_data;
    }
    catch (const std::exception& e)
    {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_usage;
}

}  // namespace senti::cli
