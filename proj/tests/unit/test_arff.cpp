#include "generators.hpp"

#include "senti/arff.hpp"
#include "senti/errors.hpp"
#include "senti/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;
using namespace senti;
using arff::attribute;
using arff::nominal;

namespace
{

std::vector<fs::path> golden_files()
{
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(fs::path(SENTI_TEST_DATA) / "arff"))
        out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

parse_error::kind parse_kind(std::string_view text)
{
    try
    {
        arff::parse(text);
    }
    catch (const parse_error& e)
    {
        return e.error_kind();
    }
    FAIL("expected a parse error for: " << text);
    return {};
}

}  // namespace

TEST_CASE("golden files round trip and match canonical output")
{
    const auto files = golden_files();
    REQUIRE(files.size() == 20);
    for (const auto& f : files)
    {
        CAPTURE(f.filename().string());
        const auto parsed = arff::read_file(f);
        const auto text = arff::write(parsed);
        CHECK(arff::parse(text) == parsed);
        CHECK(arff::write(arff::parse(text)) == text);
        CHECK(text == io::read_text(fs::path(SENTI_TEST_DATA) / "canonical" / f.filename()));
        CHECK(arff::parse(arff::write(parsed, {true})) == parsed);
    }
}

TEST_CASE("header parsing")
{
    const auto d = arff::parse("@relation weather\n@attribute outlook {sunny, overcast}\n"
                               "@attribute t numeric\n@attribute play {yes,no}\n@data\nsunny,85,no\n");
    REQUIRE(d.attributes.size() == 3);
    CHECK(d.relation == "weather");
    CHECK(d.attributes[0] == attribute::nominal("outlook", {"sunny", "overcast"}));
    CHECK(d.attributes[1].kind == arff::attribute_kind::numeric);
    CHECK(d.class_index == 2u);
    REQUIRE(d.instances.size() == 1);
    CHECK(d.instances[0][0] == arff::value{nominal{0}});
    CHECK(d.instances[0][1] == arff::value{85.0});
    CHECK(d.class_of(0) == 1);
}

TEST_CASE("class index defaults to the last attribute only when nominal")
{
    CHECK_FALSE(arff::parse("@relation r\n@attribute a {x,y}\n@attribute b numeric\n@data\n").class_index);
    CHECK_THROWS_AS(arff::parse("@relation r\n@attribute a numeric\n@data\n1\n").class_of(0), schema_error);
}

TEST_CASE("sparse rows fill numeric zeros and first nominal values")
{
    const auto d = arff::parse("@relation r\n@attribute a numeric\n@attribute b numeric\n"
                               "@attribute c {lo,hi}\n@data\n{1 2.5}\n{0 1,2 hi}\n");
    CHECK(d.instances[0] == arff::row{0.0, 2.5, nominal{0}});
    CHECK(d.instances[1] == arff::row{1.0, 0.0, nominal{1}});
}

TEST_CASE("sparse writer omits zeros and default nominals")
{
    arff::dataset d;
    d.relation = "r";
    d.attributes = {attribute::numeric("a"), attribute::numeric("b"), attribute::nominal("c", {"lo", "hi"})};
    d.class_index = 2;
    d.instances = {{0.0, 3.0, nominal{0}}, {1.0, 0.0, nominal{1}}, {arff::value{}, 0.0, nominal{0}}};
    CHECK(arff::write(d, {true}) ==
          "@relation r\n\n@attribute a numeric\n@attribute b numeric\n@attribute c {lo,hi}\n\n@data\n"
          "{1 3}\n{0 1,2 hi}\n{0 ?}\n");
}

TEST_CASE("quoting")
{
    CHECK(arff::quote_token("plain") == "plain");
    CHECK(arff::quote_token("") == "''");
    CHECK(arff::quote_token("?") == "'?'");
    CHECK(arff::quote_token("a b") == "'a b'");
    CHECK(arff::quote_token("it's") == "'it''s'");
    CHECK(arff::quote_token("a\nb") == "'a\\nb'");
    CHECK(arff::quote_token("c:\\x") == "'c:\\\\x'");
    CHECK(arff::quote_token("50%") == "'50%'");
}

TEST_CASE("missing values survive")
{
    const auto d = arff::parse("@relation r\n@attribute a numeric\n@attribute s string\n@data\n?,?\n1,'?'\n");
    CHECK(arff::is_missing(d.instances[0][0]));
    CHECK(arff::is_missing(d.instances[0][1]));
    CHECK(d.instances[1][1] == arff::value{std::string("?")});
    CHECK(d.has_missing());
}

TEST_CASE("syntax errors carry positions")
{
    try
    {
        arff::parse("@relation r\n@attribute a numeric\n@data\n1\nabc\n");
        FAIL("no error");
    }
    catch (const parse_error& e)
    {
        CHECK(e.line() == 5);
        CHECK(e.column() == 1);
        CHECK(e.error_kind() == parse_error::kind::domain);
    }
    CHECK(parse_kind("@attribute a numeric\n@data\n") == parse_error::kind::syntax);
    CHECK(parse_kind("@relation r\n@data\n") == parse_error::kind::syntax);
    CHECK(parse_kind("@relation r\n@attribute a {x,y\n@data\n") == parse_error::kind::syntax);
    CHECK(parse_kind("@relation r\n@attribute a {}\n@data\n") == parse_error::kind::syntax);
    CHECK(parse_kind("@relation r\n@attribute a date\n@data\n") == parse_error::kind::syntax);
    CHECK(parse_kind("@relation r\n@attribute a numeric\n@attribute a numeric\n@data\n") ==
          parse_error::kind::syntax);
    CHECK(parse_kind("@relation r\n@attribute s string\n@data\n'open\n") == parse_error::kind::syntax);
}

TEST_CASE("arity and domain errors")
{
    const std::string head = "@relation r\n@attribute a numeric\n@attribute c {x,y}\n@data\n";
    CHECK(parse_kind(head + "1\n") == parse_error::kind::arity);
    CHECK(parse_kind(head + "1,x,2\n") == parse_error::kind::arity);
    CHECK(parse_kind(head + "1,z\n") == parse_error::kind::domain);
    CHECK(parse_kind(head + "{5 1}\n") == parse_error::kind::arity);
    CHECK(parse_kind(head + "{1 x,0 1}\n") == parse_error::kind::syntax);
    CHECK(parse_kind("@relation r\n@attribute s string\n@data\n{}\n") == parse_error::kind::arity);
}

TEST_CASE("invalid UTF-8 is an encoding error")
{
    CHECK(parse_kind("@relation r\n@attribute s string\n@data\n'\xC3\x28'\n") == parse_error::kind::encoding);
    CHECK(parse_kind("@relation \xED\xA0\x80\n") == parse_error::kind::encoding);
    CHECK(parse_kind("@relation \xC0\xAF\n") == parse_error::kind::encoding);
}

TEST_CASE("read_file reports the path")
{
    const auto path = fs::temp_directory_path() / "senti_bad.arff";
    io::write_atomic(path, "@relation r\n@data\n");
    try
    {
        arff::read_file(path);
        FAIL("no error");
    }
    catch (const parse_error& e)
    {
        CHECK(std::string(e.what()).find(path.string()) == 0);
    }
    CHECK_THROWS_AS(arff::read_file(fs::temp_directory_path() / "senti_missing_file.arff"), io_error);
}

TEST_CASE("validate catches broken datasets")
{
    arff::dataset d;
    d.relation = "r";
    d.attributes = {attribute::numeric("a"), attribute::nominal("c", {"x"})};
    d.class_index = 1;
    d.instances = {{1.0, nominal{0}}};
    CHECK_NOTHROW(d.validate());
    d.instances = {{1.0, nominal{3}}};
    CHECK_THROWS_AS(d.validate(), schema_error);
    d.instances = {{1.0}};
    CHECK_THROWS_AS(d.validate(), schema_error);
    d.instances = {{std::string("s"), nominal{0}}};
    CHECK_THROWS_AS(d.validate(), schema_error);
    d.instances = {};
    d.class_index = 0;
    CHECK_THROWS_AS(d.validate(), schema_error);
}

TEST_CASE("text directory loader")
{
    const auto root = fs::temp_directory_path() / "senti_textdir";
    fs::remove_all(root);
    fs::create_directories(root / "pos");
    fs::create_directories(root / "neg");
    io::write_atomic(root / "pos" / "b.txt", "acha hai");
    io::write_atomic(root / "pos" / "a.txt", "zabardast\ngari");
    io::write_atomic(root / "neg" / "z.txt", "bakwas");
    const auto d = arff::load_text_directory(root);
    CHECK(d.relation == "senti_textdir");
    CHECK(d.attributes[1].values == std::vector<std::string>{"neg", "pos"});
    REQUIRE(d.instances.size() == 3);
    CHECK(std::get<std::string>(d.instances[0][0]) == "bakwas");
    CHECK(std::get<std::string>(d.instances[1][0]) == "zabardast\ngari");
    CHECK(d.class_of(2) == 1);
    CHECK(arff::parse(arff::write(d)) == d);

    fs::remove_all(root / "neg");
    fs::remove_all(root / "pos");
    CHECK_THROWS_AS(arff::load_text_directory(root), data_error);
    CHECK_THROWS_AS(arff::load_text_directory(root / "nope"), data_error);
    fs::remove_all(root);
}

TEST_CASE("property: write then parse is identity on random datasets")
{
    for (std::uint64_t seed = 1; seed <= 300; ++seed)
    {
        splitmix64 rng(seed);
        const auto d = gen::random_dataset(rng);
        CAPTURE(seed);
        const auto dense = arff::write(d);
        const auto sparse = arff::write(d, {true});
        CHECK(arff::parse(dense) == d);
        CHECK(arff::parse(sparse) == d);
        CHECK(arff::write(arff::parse(dense)) == dense);
    }
}

TEST_CASE("property: the parser is total on mutated input")
{
    const auto files = golden_files();
    std::size_t parsed = 0;
    for (std::uint64_t seed = 1; seed <= 2000; ++seed)
    {
        splitmix64 rng(seed);
        std::string text = io::read_text(files[rng.next_index(files.size())]);
        gen::mutate(text, rng);
        try
        {
            const auto d = arff::parse(text);
            ++parsed;
            CHECK(arff::parse(arff::write(d)) == d);
        }
        catch (const parse_error& e)
        {
            CHECK(e.line() >= 1);
            CHECK(e.column() >= 1);
        }
    }
    CHECK(parsed > 0);
}
