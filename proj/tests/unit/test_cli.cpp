#include "senti/cli.hpp"
#include "senti/io.hpp"
#include "senti/model_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <sstream>

namespace fs = std::filesystem;
using namespace senti;

namespace
{

struct result
{
    int status;
    std::string out;
    std::string err;
};

result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int status = cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("senti_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string s(const fs::path& p) { return p.string(); }

}  // namespace

TEST_CASE("usage errors exit 1")
{
    CHECK(run({}).status == cli::exit_usage);
    CHECK(run({"--help"}).status == cli::exit_ok);
    CHECK(run({"frobnicate"}).status == cli::exit_usage);
    CHECK(run({"split", "--input", "x"}).status == cli::exit_usage);
    CHECK(run({"train", "--train", "x", "--algorithm", "mnb", "--model-out", "m", "--bogus"}).status ==
          cli::exit_usage);
    const auto bad_algo = run({"train", "--train", "x", "--algorithm", "c45", "--model-out", "m"});
    CHECK(bad_algo.status == cli::exit_usage);
    CHECK(bad_algo.err.find("mnb") != std::string::npos);
    CHECK(run({"vectorize", "--train", "x", "--out-train", "y", "--weighting", "bm25"}).status == cli::exit_usage);
}

TEST_CASE("data errors exit 2")
{
    const auto dir = scratch("data");
    io::write_atomic(dir / "bad.arff", "@relation r\n@data\n");
    const auto r = run({"split", "--input", s(dir / "bad.arff"), "--out-train", s(dir / "a"), "--out-test",
                        s(dir / "b")});
    CHECK(r.status == cli::exit_data);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(run({"convert", "--input-dir", s(dir / "missing"), "--output", s(dir / "o.arff")}).status ==
          cli::exit_data);
}

TEST_CASE("train on the hand corpus persists the smoothed likelihoods")
{
    const auto dir = scratch("hand");
    io::write_atomic(dir / "hand.arff", "@relation hand\n@attribute achi numeric\n@attribute gari numeric\n"
                                        "@attribute kharab numeric\n@attribute class {neg,pos}\n@data\n"
                                        "{0 1,1 1,3 pos}\n{0 1,3 pos}\n{1 1,2 1}\n{2 1}\n");
    const auto r = run({"train", "--train", s(dir / "hand.arff"), "--algorithm", "mnb", "--model-out",
                        s(dir / "mnb.model")});
    REQUIRE(r.status == cli::exit_ok);
    const auto m = ml::load_model_file(dir / "mnb.model");
    const auto& st = std::get<ml::mnb_state>(m.state);
    CHECK(std::exp(st.log_likelihood[3]) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fs::exists(dir / "mnb.model.manifest.json"));
    const auto manifest = nlohmann::json::parse(io::read_text(dir / "mnb.model.manifest.json"));
    CHECK(manifest["schema"] == "senti.manifest/1");
    CHECK(manifest["command"] == "train");
    CHECK(manifest["config"]["algorithm"] == "mnb");
}

TEST_CASE("full pipeline")
{
    const auto dir = scratch("pipeline");
    REQUIRE(run({"synth", "--out-dir", s(dir / "corpus"), "--per-class", "60"}).status == 0);
    REQUIRE(run({"convert", "--input-dir", s(dir / "corpus"), "--output", s(dir / "all.arff")}).status == 0);
    REQUIRE(run({"split", "--input", s(dir / "all.arff"), "--out-train", s(dir / "train.arff"), "--out-test",
                 s(dir / "test.arff")})
                .status == 0);

    const auto v = run({"vectorize", "--train", s(dir / "train.arff"), "--test", s(dir / "test.arff"),
                        "--weighting", "tfidf", "--out-train", s(dir / "train_vec.arff"), "--out-test",
                        s(dir / "test_vec.arff"), "--vocab", s(dir / "vocab.txt")});
    REQUIRE(v.status == 0);
    CHECK(v.out.find("vocabulary:") != std::string::npos);

    REQUIRE(run({"train", "--train", s(dir / "train_vec.arff"), "--algorithm", "svm", "--model-out",
                 s(dir / "svm.model")})
                .status == 0);
    const auto e = run({"evaluate", "--model", s(dir / "svm.model"), "--test", s(dir / "test_vec.arff"), "--out-dir",
                        s(dir / "eval")});
    REQUIRE(e.status == 0);
    CHECK(e.out.find("Accuracy (%)") != std::string::npos);
    const auto report = nlohmann::json::parse(io::read_text(dir / "eval" / "report.json"));
    const auto& model = report["models"][0];
    const auto& c = model["confusion"];
    CHECK(model["accuracy"].get<double>() ==
          static_cast<double>(c["tp"].get<int>() + c["tn"].get<int>()) / model["total"].get<double>());

    // a test set vectorized under another vocabulary
    io::write_atomic(dir / "narrow.arff", "@relation r\n@attribute w numeric\n@attribute class {neg,pos}\n@data\n1,pos\n");
    const auto mismatch = run({"evaluate", "--model", s(dir / "svm.model"), "--test", s(dir / "narrow.arff"),
                               "--out-dir", s(dir / "eval2")});
    CHECK(mismatch.status == cli::exit_data);
    CHECK(mismatch.err.find("vectorize") != std::string::npos);
}

TEST_CASE("compare is deterministic and reports every model")
{
    const auto dir = scratch("compare");
    REQUIRE(run({"synth", "--out-dir", s(dir / "corpus"), "--per-class", "40"}).status == 0);
    REQUIRE(run({"convert", "--input-dir", s(dir / "corpus"), "--output", s(dir / "all.arff")}).status == 0);
    REQUIRE(run({"split", "--input", s(dir / "all.arff"), "--out-train", s(dir / "train.arff"), "--out-test",
                 s(dir / "test.arff")})
                .status == 0);
    const std::vector<std::string> base{"compare", "--train", s(dir / "train.arff"), "--test", s(dir / "test.arff"),
                                        "--mlp-epochs", "20"};
    auto a = base;
    a.insert(a.end(), {"--out-dir", s(dir / "a")});
    auto b = base;
    b.insert(b.end(), {"--out-dir", s(dir / "b")});
    REQUIRE(run(a).status == 0);
    REQUIRE(run(b).status == 0);
    CHECK(io::read_text(dir / "a" / "report.json") == io::read_text(dir / "b" / "report.json"));
    CHECK(io::read_text(dir / "a" / "tables.txt") == io::read_text(dir / "b" / "tables.txt"));
    CHECK(io::read_text(dir / "a" / "models" / "rforest.model") ==
          io::read_text(dir / "b" / "models" / "rforest.model"));
    const auto report = nlohmann::json::parse(io::read_text(dir / "a" / "report.json"));
    CHECK(report["models"].size() == 8);
    CHECK(fs::exists(dir / "a" / "compare.manifest.json"));
    CHECK(fs::exists(dir / "a" / "vocabulary.txt"));

    auto subset = base;
    subset.insert(subset.end(), {"--algorithms", "mnb,knn", "--out-dir", s(dir / "c")});
    REQUIRE(run(subset).status == 0);
    CHECK(nlohmann::json::parse(io::read_text(dir / "c" / "report.json"))["models"].size() == 2);

    auto failing = base;
    failing.insert(failing.end(), {"--algorithms", "mnb,knn", "--k", "100000", "--out-dir", s(dir / "d")});
    const auto partial = run(failing);
    CHECK(partial.status == cli::exit_data);
    CHECK(partial.err.find("knn") != std::string::npos);
    CHECK(nlohmann::json::parse(io::read_text(dir / "d" / "report.json"))["models"].size() == 1);
}
