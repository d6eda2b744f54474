// acceptance.cpp - one PASS/FAIL line per acceptance criterion.
//
//   acceptance                       run every criterion
//   acceptance --write-goldens DIR   regenerate the seed-42 model files

#include "../unit/generators.hpp"
#include "../unit/oracles.hpp"

#include "senti/arff.hpp"
#include "senti/classifiers.hpp"
#include "senti/cli.hpp"
#include "senti/corpus.hpp"
#include "senti/eval.hpp"
#include "senti/io.hpp"
#include "senti/model_io.hpp"
#include "senti/synthetic.hpp"
#include "senti/vectorize.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace senti;
using clock_type = std::chrono::steady_clock;

namespace
{

const fs::path data_root{SENTI_TEST_DATA};

struct outcome
{
    bool pass = true;
    std::string detail;
    /// Passed locally, but part of the criterion cannot be checked here.
    bool partial = false;

    void require(bool ok, const std::string& what)
    {
        if (!ok)
        {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(clock_type::time_point t) { return std::chrono::duration<double>(clock_type::now() - t).count(); }

std::size_t training_errors(const ml::model& m, const vectorize::feature_matrix& d)
{
    const auto p = ml::predict_batch(m, d);
    std::size_t e = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        e += p[i] != d.labels[i];
    return e;
}

// ---------------------------------------------------------------------------

outcome arff_round_trip()
{
    outcome o;
    const auto start = clock_type::now();
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(data_root / "arff"))
    {
        const auto once = arff::read_file(e.path());
        const auto text = arff::write(once);
        const auto twice = arff::parse(text);
        o.require(twice == once, e.path().filename().string() + " does not round trip");
        o.require(arff::write(twice) == text && arff::write(once) == text,
                  e.path().filename().string() + " writer output unstable");
        ++files;
    }
    const double t = seconds_since(start);
    o.require(files == 20, "expected 20 golden files, found " + std::to_string(files));
    o.require(t < 1.0, "took " + fmt("%.3f s", t));
    if (o.pass)
        o.detail = std::to_string(files) + " files, " + fmt("%.3f s", t);
    return o;
}

outcome metric_formulas()
{
    outcome o;
    const auto r = eval::report_from_matrix({200, 21, 20, 159}, "mnb", "pos");
    o.require(r.correct == 359 && r.total == 400, "matrix totals");
    o.require(100.0 * r.accuracy == 89.75, "accuracy " + fmt("%.17g", 100.0 * r.accuracy));
    const double f = eval::f_measure(0.93, 0.96);
    const double oracle = 2 * 0.93 * 0.96 / (0.93 + 0.96);
    o.require(std::fabs(f - oracle) < 1e-9, "F differs from 2PR/(P+R)");
    o.require(std::fabs(f - 0.9448) < 1e-4, "F(0.93, 0.96) = " + fmt("%.6f", f));
    if (o.pass)
        o.detail = "accuracy 89.75%, F(0.93, 0.96) = " + fmt("%.4f", f);
    return o;
}

outcome mnb_oracle()
{
    outcome o;
    // vocabulary achi, gari, kharab
    const auto data = gen::from_dense({{1, 1, 0}, {1, 0, 0}, {0, 1, 1}, {0, 0, 1}}, {1, 1, 0, 0});
    const auto m = ml::load_model(ml::save_model(ml::train_mnb(data, {1.0})));
    const auto& s = std::get<ml::mnb_state>(m.state);
    const double pos[] = {3.0 / 6, 2.0 / 6, 1.0 / 6};
    const double neg[] = {1.0 / 6, 2.0 / 6, 3.0 / 6};
    for (std::size_t w = 0; w < 3; ++w)
    {
        o.require(std::fabs(std::exp(s.log_likelihood[3 + w]) - pos[w]) < 1e-12, "P(w|pos)");
        o.require(std::fabs(std::exp(s.log_likelihood[w]) - neg[w]) < 1e-12, "P(w|neg)");
    }
    // pos 1/2 * 1/2 * 1/3, neg 1/2 * 1/6 * 1/3
    const double joint_pos = 0.5 * 0.5 / 3, joint_neg = 0.5 / 6 / 3;
    const std::vector<double> query{1, 1, 0};
    const auto scores = ml::predict_scores(m, query);
    o.require(std::fabs(scores[1] - joint_pos / (joint_pos + joint_neg)) < 1e-12, "posterior(pos)");
    o.require(std::fabs(scores[0] - joint_neg / (joint_pos + joint_neg)) < 1e-12, "posterior(neg)");
    o.require(m.class_values[ml::predict(m, query)] == "pos", "prediction");
    if (o.pass)
        o.detail = "posteriors pos " + fmt("%.6f", scores[1]) + ", neg " + fmt("%.6f", scores[0]) + ", predicts pos";
    return o;
}

outcome entropy_gain()
{
    outcome o;
    const double h = ml::entropy(std::vector<double>{9, 5});
    o.require(std::fabs(h - 0.9403) <= 1e-4, "H(9,5) = " + fmt("%.6f", h));

    std::size_t splits = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed)
    {
        splitmix64 rng(seed);
        const auto data = gen::random_matrix(rng, 80, 8, 3, 0.4);
        for (const auto& n : std::get<ml::tree>(ml::train_dtree(data).state).nodes)
            if (!n.is_leaf())
            {
                ++splits;
                o.require(n.gain > 0.0, "split with gain " + fmt("%g", n.gain));
            }
    }
    const auto sep = gen::from_dense({{0, 3}, {1, 7}, {4, 2}, {5, 7}, {6, 1}}, {0, 0, 1, 1, 1});
    const auto m = ml::train_dtree(sep);
    o.require(std::get<ml::tree>(m.state).depth() == 1, "separable set did not give a depth-1 tree");
    o.require(training_errors(m, sep) == 0, "separable set misclassified");
    if (o.pass)
        o.detail = "H(9,5) = " + fmt("%.4f", h) + ", " + std::to_string(splits) + " splits all with gain > 0, depth-1 tree";
    return o;
}

outcome knn_equivalence()
{
    outcome o;
    const auto start = clock_type::now();
    splitmix64 rng(5);
    std::vector<std::vector<double>> rows;
    std::vector<std::uint32_t> labels;
    for (int i = 0; i < 200; ++i)
    {
        std::vector<double> r(20);
        for (auto& v : r)
            v = rng.uniform(0, 1) < 0.5 ? 0.0 : std::round(rng.uniform(0, 4) * 4) / 4;
        rows.push_back(r);
        labels.push_back(static_cast<std::uint32_t>(rng.next_index(2)));
    }
    const auto data = gen::from_dense(rows, labels);
    std::size_t queries = 0, agree = 0;
    for (const auto kind : {ml::distance_kind::euclidean, ml::distance_kind::manhattan, ml::distance_kind::minkowski})
        for (const std::size_t k : {1, 3, 5})
        {
            const auto m = ml::train_knn(data, {k, kind, 3.0});
            for (std::size_t q = 0; q < 200; ++q)
            {
                const auto& query = q < 100 ? rows[q] : rows[rng.next_index(200)];
                std::vector<double> probe = query;
                if (q >= 100)
                    probe[rng.next_index(20)] += 0.25;
                ++queries;
                agree += ml::predict(m, probe) == oracle::knn(rows, labels, 2, probe, k, kind, 3.0);
            }
        }
    const double t = seconds_since(start);
    o.require(agree == queries, std::to_string(queries - agree) + " of " + std::to_string(queries) + " disagree");
    o.require(t < 5.0, "took " + fmt("%.3f s", t));
    if (o.pass)
        o.detail = std::to_string(agree) + "/" + std::to_string(queries) + " queries match, " + fmt("%.3f s", t);
    return o;
}

outcome adaboost_identity()
{
    outcome o;
    std::vector<std::vector<double>> rows;
    std::vector<double> xs;
    for (int i = 1; i <= 8; ++i)
    {
        rows.push_back({static_cast<double>(i)});
        xs.push_back(i);
    }
    const std::vector<std::uint32_t> labels{1, 1, 0, 0, 0, 0, 1, 1};
    const auto data = gen::from_dense(rows, labels);
    ml::boost_trace trace;
    const auto m = ml::train_adaboost(data, {3, {1, 1}}, 42, &trace);
    for (const double r : trace.rebalanced_errors)
        o.require(std::fabs(r - 0.5) <= 1e-9, "rebalanced error " + fmt("%.12f", r));
    o.require(trace.rebalanced_errors.size() == 3, "expected three rounds");
    const double stump = oracle::best_stump(xs, labels, std::vector<double>(8, 1.0 / 8)).error;
    const double ensemble = static_cast<double>(training_errors(m, data)) / 8;
    o.require(ensemble < stump, "ensemble error " + fmt("%g", ensemble) + " vs stump " + fmt("%g", stump));
    if (o.pass)
        o.detail = "3 rounds at 0.5 +- 1e-9; ensemble error " + fmt("%.3f", ensemble) + " < best stump " +
                   fmt("%.3f", stump);
    return o;
}

outcome mlp_gradient()
{
    outcome o;
    const auto probe = gen::from_dense({{0.5, -1.0}, {1.5, 0.25}, {-0.75, 2.0}}, {0, 1, 1});
    splitmix64 rng(42);
    ml::mlp_params p;
    p.hidden = {3};
    const auto net = ml::init_mlp(2, 2, p, rng);
    std::vector<double> analytic;
    ml::mlp_loss(net, probe, &analytic);
    const double err = oracle::max_relative_error(analytic, oracle::mlp_numeric_gradient(net, probe));
    o.require(err < 1e-4, "max relative error " + fmt("%g", err));

    const auto xor_set = gen::from_dense({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {0, 1, 1, 0});
    p.hidden = {4};
    p.learning_rate = 0.5;
    p.epochs = 2000;
    const auto m = ml::train_mlp(xor_set, p, 42);
    o.require(training_errors(m, xor_set) == 0, "XOR not learned");
    if (o.pass)
        o.detail = "max relative error " + fmt("%.2e", err) + ", XOR 4/4";
    return o;
}

outcome svm_blobs()
{
    outcome o;
    const auto start = clock_type::now();
    splitmix64 rng(7);
    std::vector<std::vector<double>> x;
    std::vector<std::uint32_t> labels;
    std::vector<int> y;
    for (int i = 0; i < 40; ++i)
    {
        const int c = i % 2;
        x.push_back({(c ? 2.0 : -2.0) + rng.uniform(-1, 1), (c ? 1.5 : -1.5) + rng.uniform(-1, 1)});
        labels.push_back(static_cast<std::uint32_t>(c));
        y.push_back(c ? 1 : -1);
    }
    const auto data = gen::from_dense(x, labels);
    const double lambda = 1e-2;
    const auto m = ml::train_svm(data, {lambda, 100}, 42);
    const double objective = ml::svm_objective(std::get<ml::svm_state>(m.state), data, lambda);
    const double grid = oracle::svm_grid_minimum(x, y, lambda);
    const double t = seconds_since(start);
    o.require(training_errors(m, data) == 0, "not separable after training");
    o.require(objective <= 1.05 * grid, "objective " + fmt("%g", objective) + " vs grid " + fmt("%g", grid));
    o.require(t < 10.0, "took " + fmt("%.3f s", t));
    if (o.pass)
        o.detail = "40/40, objective " + fmt("%.6g", objective) + " vs grid " + fmt("%.6g", grid) + " (" +
                   fmt("%+.2f%%", 100 * (objective / grid - 1)) + "), lambda 0.01, " + fmt("%.3f s", t);
    return o;
}

int quiet_run(const std::vector<std::string>& args, std::string* out = nullptr)
{
    std::ostringstream o, e;
    const int rc = cli::run(args, o, e);
    if (out)
        *out = o.str();
    if (rc != 0)
        std::cerr << "  senti " << args.front() << " failed: " << e.str();
    return rc;
}

outcome end_to_end()
{
    outcome o;
    const auto dir = fs::temp_directory_path() / "senti_acceptance_e2e";
    fs::remove_all(dir);
    const auto start = clock_type::now();
    o.require(quiet_run({"synth", "--out-dir", (dir / "corpus").string(), "--seed", "42"}) == 0, "synth");
    o.require(quiet_run({"convert", "--input-dir", (dir / "corpus").string(), "--output", (dir / "all.arff").string()}) == 0,
              "convert");
    o.require(quiet_run({"split", "--input", (dir / "all.arff").string(), "--out-train", (dir / "train.arff").string(),
                         "--out-test", (dir / "test.arff").string(), "--seed", "42"}) == 0,
              "split");
    if (!o.pass)
        return o;
    const auto train = arff::read_file(dir / "train.arff");
    const auto test = arff::read_file(dir / "test.arff");
    o.require(train.instances.size() == 1600 && test.instances.size() == 400, "split sizes");

    std::string tables;
    const auto compare_start = clock_type::now();
    for (const char* run : {"run1", "run2"})
        o.require(quiet_run({"compare", "--train", (dir / "train.arff").string(), "--test", (dir / "test.arff").string(),
                             "--seed", "42", "--out-dir", (dir / run).string()},
                            &tables) == 0,
                  std::string("compare ") + run);
    const double compare_time = seconds_since(compare_start) / 2;
    if (!o.pass)
        return o;

    const auto r1 = io::read_text(dir / "run1" / "report.json");
    o.require(r1 == io::read_text(dir / "run2" / "report.json"), "report.json differs between runs");
    o.require(io::read_text(dir / "run1" / "tables.txt") == io::read_text(dir / "run2" / "tables.txt"),
              "tables differ between runs");
    for (const char* col : {"Total Testing Reviews", "Correctly Classified", "Incorrectly Classified", "Accuracy (%)",
                            "Precision", "Recall", "F-Measure"})
        o.require(tables.find(col) != std::string::npos, std::string("missing column ") + col);

    const auto report = nlohmann::json::parse(r1);
    o.require(report["models"].size() == 8, "expected 8 models");
    double worst = 1.0;
    std::string worst_name;
    for (const auto& m : report["models"])
    {
        const double acc = m["accuracy"].get<double>();
        if (acc < worst)
        {
            worst = acc;
            worst_name = m["name"].get<std::string>();
        }
        o.require(acc >= 0.9, m["name"].get<std::string>() + " at " + fmt("%.2f%%", 100 * acc));
    }
    const double total = seconds_since(start);
    o.require(compare_time < 60.0, "compare took " + fmt("%.1f s", compare_time));
    if (o.pass)
        o.detail = "8 models, lowest " + worst_name + " " + fmt("%.2f%%", 100 * worst) + ", compare " +
                   fmt("%.2f s", compare_time) + " (pipeline " + fmt("%.2f s", total) + "), reruns byte-identical";
    fs::remove_all(dir);
    return o;
}

// The golden models: synthetic corpus (100 per class, seed 42), 80/20
// stratified split with seed 42, count vectors with the bundled stop-words,
// every algorithm at its defaults with seed 42.
std::vector<std::pair<std::string, std::string>> golden_models()
{
    corpus::synthetic_spec spec;
    spec.per_class = 100;
    const auto parts = corpus::split(corpus::generate_synthetic(spec), {0.8, true, 42});
    vectorize::fit_options options;
    options.stopwords = corpus::default_stopwords();
    const auto space = vectorize::fit(parts.train, options);
    const auto train = vectorize::transform(space, parts.train);
    std::vector<std::pair<std::string, std::string>> out;
    ml::train_config config;
    for (const auto a : ml::all_algorithms())
        out.emplace_back(std::string(ml::to_string(a)) + ".model", ml::save_model(ml::train(a, train, config)));
    return out;
}

outcome platform_determinism()
{
    outcome o;
    std::size_t matched = 0;
    for (const auto& [name, text] : golden_models())
    {
        const auto path = data_root / "models" / name;
        if (!fs::exists(path))
        {
            o.require(false, "missing golden " + name);
            continue;
        }
        const bool same = io::read_text(path) == text;
        o.require(same, name + " differs from the committed golden");
        matched += same;
    }
    if (o.pass)
    {
        o.partial = true;
        o.detail = std::to_string(matched) +
                   "/8 models byte-identical to the committed seed-42 goldens on this platform; "
                   "a second operating system was not available, so cross-OS identity is unverified";
    }
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc == 3 && std::string(argv[1]) == "--write-goldens")
    {
        fs::create_directories(argv[2]);
        for (const auto& [name, text] : golden_models())
            io::write_atomic(fs::path(argv[2]) / name, text);
        std::cout << "wrote 8 golden models to " << argv[2] << '\n';
        return 0;
    }

    const std::vector<std::pair<std::string, std::function<outcome()>>> criteria{
        {"ARFF round trip", arff_round_trip},
        {"metric formulas", metric_formulas},
        {"MNB oracle", mnb_oracle},
        {"entropy and gain", entropy_gain},
        {"k-NN equivalence", knn_equivalence},
        {"AdaBoost identity", adaboost_identity},
        {"MLP gradient check", mlp_gradient},
        {"SVM", svm_blobs},
        {"end-to-end compare", end_to_end},
        {"platform determinism", platform_determinism},
    };
    int failed = 0, partial = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        outcome o;
        try
        {
            o = criteria[i].second();
        }
        catch (const std::exception& e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        partial += o.pass && o.partial;
        std::cout << (!o.pass ? "FAIL" : o.partial ? "PART" : "PASS") << "  " << (i + 1 < 10 ? " " : "") << i + 1 << ". "
                  << criteria[i].first << ": " << o.detail << std::endl;
    }
    std::cout << criteria.size() - failed - partial << " passed, " << partial << " partial, " << failed << " failed\n";
    return failed ? 1 : 0;
}
