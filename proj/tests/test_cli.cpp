#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace lz::cli;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    ::unsetenv("LARGEZETA_OUT_DIR");
    args.insert(args.begin(), "largezeta");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_main(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

double cell_real(const Cell& c) {
    if (auto d = std::get_if<double>(&c)) return *d;
    return double(std::get<std::int64_t>(c));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("format_real") {
    CHECK(format_real(1) == "1.0");
    CHECK(format_real(-3) == "-3.0");
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_real(2.0 / 3)) == 2.0 / 3);
}

TEST_CASE("CSV and JSON round trips") {
    ResultTable t;
    t.columns = {"n", "value", "label"};
    t.add_row({std::int64_t(3), 0.1, std::string("a,b")});
    t.add_row({std::int64_t(-7), 1e300, std::string("plain")});
    t.set_meta("x", "12");
    t.set_meta("note", "two words");
    for (const auto& back : {ResultTable::from_csv(t.to_csv()), ResultTable::from_json(t.to_json())}) {
        CHECK(back.columns == t.columns);
        REQUIRE(back.rows.size() == 2);
        CHECK(back.rows == t.rows);
        CHECK(back.meta("x") == std::optional<std::string>("12"));
        CHECK(back.meta("note") == std::optional<std::string>("two words"));
    }
    CHECK_THROWS(t.add_row({0.0}));
}

TEST_CASE("parse_real and lists") {
    CHECK(parse_real("1e7") == 1e7);
    CHECK(parse_real("pi/2") == doctest::Approx(1.5707963267948966));
    CHECK(parse_real("-pi") == doctest::Approx(-3.141592653589793));
    CHECK_THROWS_AS(parse_real("ten"), UsageError);
    const Params p("zetasum", {{"t", "1:3:3"}, {"theta", "pi/2,-pi/2"}});
    CHECK(p.get_list("t", {}) == std::vector<double>{1, 2, 3});
    CHECK(p.get_list("theta", {})[1] == doctest::Approx(-1.5707963267948966));
    CHECK(p.get_list("missing", {4}) == std::vector<double>{4});
}

TEST_CASE("config precedence") {
    std::istringstream in("# comment\nx = 5\nzetasum.x = 7 # trailing\nother.x = 9\nt = 1\n");
    const auto config = parse_config(in);
    CHECK(Params("zetasum", {}, config).get_double("x", 0) == 7);
    CHECK(Params("zetasum", {{"x", "8"}}, config).get_double("x", 0) == 8);
    CHECK(Params("friable", {}, config).get_double("x", 0) == 5);
    CHECK(Params("friable", {}, config).get_double("y", 2.5) == 2.5);
    CHECK_THROWS_AS(Params("friable", {}, config).require_double("y"), UsageError);
    CHECK(Params("zetasum", {}, config).get_seed() == 1);
}

TEST_CASE("zetasum row") {
    const auto r = run({"zetasum", "--x", "3", "--t", "1"});
    REQUIRE(r.code == 0);
    const auto t = ResultTable::from_csv(r.out);
    CHECK(t.meta("command") == std::optional<std::string>("zetasum"));
    REQUIRE(t.rows.size() == 1);
    CHECK(cell_real(t.rows[0][1]) == doctest::Approx(1 + std::cos(std::log(2.0)) + std::cos(std::log(3.0))));
    CHECK(cell_real(t.rows[0][2]) == doctest::Approx(std::sin(std::log(2.0)) + std::sin(std::log(3.0))));
}

TEST_CASE("config file and output file") {
    const auto dir = std::filesystem::temp_directory_path() / "largezeta_cli_test";
    std::filesystem::create_directories(dir);
    const auto cfg = (dir / "run.cfg").string();
    std::ofstream(cfg) << "x = 10\nfriable.y = 3\n";
    const auto out = (dir / "psi.json").string();
    const auto r = run({"--config", cfg, "--format", "json", "--out", out, "friable"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    const auto t = ResultTable::from_json(ss.str());
    REQUIRE(!t.rows.empty());
    CHECK(t.meta("config") == std::optional<std::string>(cfg));
    std::filesystem::remove_all(dir);
}

TEST_CASE("exit codes") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"zetasum", "--x", "abc", "--t", "1"}).code == 2);
    const auto bad = run({"zetasum", "--x", "0.5", "--t", "1"});
    CHECK(bad.code == 3);
    CHECK(bad.err.find("\"error\"") != std::string::npos);
    // a check that cannot pass: PV ratio below an impossible cap
    const auto fail = run({"exp-pv-ratio", "--t", "1000", "--max-ratio", "1e-9"});
    CHECK(fail.code == 1);
    CHECK(fail.err.find("\"failures\"") != std::string::npos);
}

TEST_CASE("tables do not depend on the thread count") {
    const std::vector<std::vector<std::string>> cmds = {
        {"moments", "--x", "5", "--k", "2", "--T", "1e4", "--samples", "2000"},
        {"galsum", "--prime-count", "6", "--exponent-budget", "3"},
        {"exp-thm11", "--arm", "sample", "--T", "1e6", "--x", "200", "--y", "20", "--samples", "50"},
    };
    for (auto args : cmds) {
        auto one = args, four = args;
        one.insert(one.begin(), {"--threads", "1"});
        four.insert(four.begin(), {"--threads", "4"});
        const auto a = run(one), b = run(four);
        REQUIRE(a.code == b.code);
        CHECK(a.out == b.out);
    }
}

}  // TEST_SUITE
