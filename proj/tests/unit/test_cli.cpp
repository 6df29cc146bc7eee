#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <cli/cli.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

struct result {
    int code;
    std::string out;
    std::string err;
    json doc() const
    {
        return json::parse(out);
    }
};

result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = holkit::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path workdir()
{
    const auto dir = fs::temp_directory_path() / "holkit_test_cli";
    fs::create_directories(dir);
    return dir;
}

std::string write(const std::string &name, const std::string &content)
{
    const auto path = workdir() / name;
    std::ofstream(path) << content;
    return path.string();
}

} // namespace

TEST_CASE("chi-table")
{
    const auto r = run({"chi-table", "--n", "2", "--kmin", "-3", "--kmax", "3"});
    REQUIRE(r.code == 0);
    const auto d = r.doc();
    CHECK(d["schema_version"] == 1);
    CHECK(d["command"] == "chi-table");
    REQUIRE(d["outputs"]["rows"].size() == 7);
    for (const auto &row : d["outputs"]["rows"]) {
        CHECK(row["match"] == true);
        CHECK(row["hrr"] == row["oracle"]);
    }
    CHECK(d["outputs"]["rows"][6]["hrr"] == 10);
    CHECK(d["provenance"]["seed"] == 0);
}

TEST_CASE("hrr and grr")
{
    auto r = run({"hrr", "--space", "P2", "--bundle", "O(3)"});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["outputs"]["chi"] == 10);
    CHECK(r.doc()["outputs"]["match"] == true);

    r = run({"hrr", "--space", "P1xP1", "--bundle", "O(2,3)"});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["outputs"]["chi"] == 12);

    r = run({"grr", "--map", "P1xP1->P1", "--bundle", "O(a,b)", "-a", "2", "-b", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["outputs"]["equal"] == true);
    CHECK(r.doc()["outputs"]["bundle"] == "O(2,3)");
    CHECK(r.doc()["outputs"]["pushed_rank"] == 4);

    r = run({"grr", "--map", "P(O+O(1))/P1->P1", "--bundle", "O(2)"});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["outputs"]["pushed_rank"] == 3);

    // a wrong pushforward is a verified mismatch
    r = run({"grr", "--map", "P1xP1->P1", "--bundle", "O(1,1)", "--pushed", "O(1)"});
    CHECK(r.code == 1);
    CHECK(r.doc()["outputs"]["equal"] == false);

    CHECK(run({"hrr", "--space", "Q7", "--bundle", "O"}).code == 2);
    CHECK(run({"hrr", "--space", "P2", "--bundle", "O(1"}).code == 2);
    CHECK(run({"grr", "--map", "P1->P2", "--bundle", "O"}).code == 2);
}

TEST_CASE("weierstrass and divide")
{
    const auto f = write("f.json", R"({"nvars": 2, "trunc": 6, "expr": "x1 + x1^2 - x2 - x1*x2"})");
    auto r = run({"weierstrass", "--input", f, "--order", "4"});
    REQUIRE(r.code == 0);
    auto d = r.doc();
    CHECK(d["outputs"]["k"] == 1);
    CHECK(d["outputs"]["g"] == "x1 - x2");
    CHECK(d["outputs"]["u"] == "1 + x1");
    CHECK_FALSE(d["outputs"].contains("change"));

    // X2 alone needs a coordinate change
    const auto x2 = write("x2.json", R"({"nvars": 2, "trunc": 6, "expr": "x2"})");
    r = run({"weierstrass", "--input", x2, "--order", "3", "--seed", "5"});
    REQUIRE(r.code == 0);
    d = r.doc();
    CHECK(d["outputs"].contains("change"));
    CHECK(d["provenance"]["seed"] == 5);

    const auto num = write("num.json", R"({"nvars": 2, "expr": "x1^3"})");
    const auto den = write("den.json", R"({"nvars": 2, "expr": "x1^2 - x2"})");
    r = run({"divide", "--input", num, "--divisor", den, "--order", "4"});
    REQUIRE(r.code == 0);
    d = r.doc();
    CHECK(d["outputs"]["q"] == "x1");
    CHECK(d["outputs"]["r"] == "x1*x2");
    CHECK(d["inputs"]["f"] == "x1^3");

    const auto zero = write("zero.json", R"({"nvars": 2, "trunc": 4, "terms": []})");
    r = run({"weierstrass", "--input", zero, "--order", "3"});
    CHECK(r.code == 2);
    CHECK(r.err.find("last seed") != std::string::npos);

    CHECK(run({"weierstrass", "--input", (workdir() / "missing.json").string(), "--order", "3"}).code == 2);
    const auto lead = write("lead.json", R"({"nvars": 2, "expr": "2*x1^2 - x2"})");
    CHECK(run({"divide", "--input", num, "--divisor", lead, "--order", "4"}).code == 2);
}

TEST_CASE("operators")
{
    const auto fr = write("fred.json", R"({"dim": 3, "rows": [{"lambda": 1, "v": [1, 0, 0]}]})");
    auto r = run({"fredholm", "--input", fr});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["outputs"]["kernel_dim"] == 1);
    CHECK(r.doc()["outputs"]["match"] == true);
    CHECK(r.doc()["provenance"]["mode"] == "float");

    const auto fe = write("fred_exact.json", R"({"dim": 2, "rows": [{"lambda": "1/2", "v": ["1", "1/2"]}]})");
    r = run({"fredholm", "--input", fe, "--mode", "exact"});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["outputs"]["kernel_dim"] == 0);
    CHECK(r.doc()["provenance"]["mode"] == "exact");

    const auto bad = write("bad.json", "{\"dim\": 3, \"rows\": [");
    CHECK(run({"fredholm", "--input", bad}).code == 2);
    const auto sup = write("sup.json", R"({"dim": 2, "rows": [{"lambda": 1, "v": [2, 0]}]})");
    CHECK(run({"fredholm", "--input", sup}).code == 2);
    CHECK(run({"fredholm", "--input", fr, "--mode", "fuzzy"}).code == 2);

    const auto m = write("m.json", R"([[3, 0], [0, 4]])");
    r = run({"schatten", "--input", m, "--p", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["outputs"]["schatten_sum"].get<double>() == doctest::Approx(25));

    const auto rot = write("rot.json", R"({"matrix": [[0, -1], [1, 0]]})");
    r = run({"spectrum", "--input", rot, "--residual"});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["outputs"]["eigenvalues"].size() == 2);
    CHECK(run({"spectrum", "--input", write("rect.json", "[[1, 2, 3]]")}).code == 2);
}

TEST_CASE("hh")
{
    auto r = run({"hh", "--vars", "2", "--deg", "3", "--check"});
    REQUIRE(r.code == 0);
    const auto d = r.doc();
    CHECK(d["outputs"]["hkr"]["passed"] == true);
    CHECK(d["outputs"]["acyclicity"]["passed"] == true);
    CHECK(d["outputs"]["dims"][1] == json::array({0, 2, 4, 6}));
    CHECK(run({"hh", "--vars", "0", "--deg", "3"}).code == 2);
}

TEST_CASE("locale")
{
    auto r = run({"locale", "prove", "--lhs", "|f|<=1 & |g|<=1", "--rhs", "|f*g|<=1"});
    REQUIRE(r.code == 0);
    auto d = r.doc();
    CHECK(d["outputs"]["verdict"] == "Proved");
    CHECK(d["outputs"]["replay"]["valid"] == true);
    CHECK(d["outputs"]["trace"].size() == 3);

    r = run({"locale", "empty", "--expr", "|f|<=1/2 & |f|>=1"});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["outputs"]["verdict"] == "Empty");

    r = run({"locale", "prove", "--lhs", "|f|<=1", "--rhs", "|g|<=1"});
    CHECK(r.code == 1);
    CHECK(r.doc()["outputs"]["verdict"] == "Unknown");

    r = run({"locale", "prove", "--lhs", "|f|<=1/2", "--rhs", "|f^8|<=1/256", "--depth", "1"});
    CHECK(r.code == 1);
    CHECK(r.doc()["outputs"]["depth_capped"] == true);

    r = run({"locale", "prove", "--lhs", "|f+g|<=x", "--rhs", "|f|<=1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("position 7") != std::string::npos);
    CHECK(run({"locale"}).code == 2);
}

TEST_CASE("usage, determinism and output files")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"hrr", "--space", "P2"}).code == 2);
    CHECK(run({"--help"}).code == 0);

    const std::vector<std::string> args{"grr", "--map", "P1xP1->P1", "--bundle", "O(a,b)", "-a", "1", "-b", "4"};
    CHECK(run(args).out == run(args).out);

    const auto path = (workdir() / "report.json").string();
    auto with_output = args;
    with_output.insert(with_output.end(), {"--output", path});
    const auto r = run(with_output);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == run(args).out);
}

TEST_CASE("templates and catalog pushforwards")
{
    using holkit::cli::instantiate_template;
    CHECK(instantiate_template("O(a,b)", 2, -3) == "O(2,-3)");
    CHECK(instantiate_template("2*O(a)-O", 1, 0) == "2*O(1)-O");

    const auto f = holkit::parse_map("P1xP1->P1");
    const auto v = holkit::parse_bundle(*f.source, "O(1,-3)");
    const auto pushed = holkit::cli::catalog_pushforward(f, v);
    // chi(P1, O(-3)) = -2
    CHECK(pushed.rank() == -2);
}

TEST_CASE("default truncation from the environment")
{
    const auto f = write("notrunc.json", R"({"nvars": 2, "expr": "x1^2 - x2 + x1^5"})");
    ::setenv("HOLKIT_TRUNC", "3", 1);
    auto r = run({"weierstrass", "--input", f, "--order", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["inputs"]["trunc"] == 3);
    r = run({"weierstrass", "--input", f, "--order", "2", "--trunc", "6"});
    CHECK(r.doc()["inputs"]["trunc"] == 6);
    ::setenv("HOLKIT_TRUNC", "zero", 1);
    CHECK(run({"weierstrass", "--input", f, "--order", "2"}).code == 2);
    ::unsetenv("HOLKIT_TRUNC");
    r = run({"weierstrass", "--input", f, "--order", "2"});
    CHECK(r.doc()["inputs"]["trunc"] == 8);
}
