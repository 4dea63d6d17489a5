#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "paircorr/cli.hpp"

namespace fs = std::filesystem;
using namespace paircorr;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "paircorr");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name, const std::string& content = {}) {
    const fs::path dir = fs::temp_directory_path() / "paircorr_cli_test";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    if (!content.empty()) std::ofstream(p) << content;
    return p;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string f; std::getline(in, f, ',');) v.push_back(f);
    return v;
}

const std::string kThree = "14.134725142\n21.022039639\n25.010857580\n";

}  // namespace

TEST_CASE("zeros validate") {
    const auto good = scratch("three.txt", "# header\n" + kThree);
    auto r = run({"zeros", "validate", good.string()});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "count,min,max\n3,14.134725142,25.01085758\n");

    const auto bad = scratch("bad.txt", "14.13\n25.01\n21.02\n");
    r = run({"zeros", "validate", bad.string()});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("line 3") != std::string::npos);

    r = run({"zeros", "validate", (fs::temp_directory_path() / "no_such_zero_file.txt").string()});
    CHECK(r.code == cli::kExitUsage);
    CHECK(!r.err.empty());
}

TEST_CASE("fxt direct on three zeros") {
    const auto file = scratch("three.txt", kThree);
    const auto r = run({"fxt", "direct", "--zeros", file.string(), "--x", "10", "--T", "25.01085758", "--exact"});
    REQUIRE(r.code == cli::kExitOk);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "x,T,method,value,error_bound,pairs");
    const auto f = split(rows[1]);
    REQUIRE(f.size() == 6);
    CHECK(f[2] == "direct");
    const double expect = oracle::pair_sum({14.134725142, 21.022039639, 25.010857580}, 10);
    CHECK(std::stod(f[3]) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::stod(f[5]) == 3);  // pairs gamma < gamma'

    const auto i = run({"fxt", "integral", "--zeros", file.string(), "--x", "10", "--T", "25.01085758"});
    REQUIRE(i.code == cli::kExitOk);
    CHECK(std::stod(split(lines(i.out)[1])[3]) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("fxt formula") {
    const std::vector<std::string> base{"fxt", "formula", "--T", "10000", "--x", "10000", "--sieve-limit", "100000",
                                        "--hmax", "10000"};
    auto r = run(base);
    REQUIRE(r.code == cli::kExitOk);
    CHECK(lines(r.out)[0] == "x,T,total,error_budget");
    const double total = std::stod(split(lines(r.out)[1])[2]);
    CHECK(std::isfinite(total));

    auto args = base;
    args.push_back("--breakdown");
    r = run(args);
    REQUIRE(r.code == cli::kExitOk);
    const auto rows = lines(r.out);
    CHECK(rows.size() == 14);
    CHECK(rows[9] == "total," + split(rows[9])[1]);
    CHECK(std::stod(split(rows[9])[1]) == total);

    r = run({"fxt", "formula", "--T", "10000", "--x", "1e9"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("above") != std::string::npos);
}

TEST_CASE("verify exit codes") {
    auto r = run({"verify", "oscillatory"});
    CHECK(r.code == cli::kExitOk);
    const auto rows = lines(r.out);
    CHECK(!rows.empty());
    for (const auto& row : rows) CHECK(row.rfind("PASS,", 0) == 0);

    r = run({"verify", "singular", "--set-A", "0.5"});
    CHECK(r.code == cli::kExitCheckFailed);
    CHECK(r.out.find("FAIL,") != std::string::npos);

    CHECK(run({"verify", "nonsense"}).code == cli::kExitUsage);
    CHECK(run({"--help"}).code == cli::kExitOk);
    CHECK(run({}).code == cli::kExitUsage);
}

TEST_CASE("config file") {
    const auto out = scratch("cfg_table.csv");
    const auto cfg = scratch("cfg.txt", "# table run\nhmax = 50\nsieve-limit = 100000\nout = " + out.string() + "\n");
    auto r = run({"singular", "table", "--config", cfg.string()});
    REQUIRE(r.code == cli::kExitOk);
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(lines(ss.str()).size() == 51);

    // the command line wins over the file
    r = run({"singular", "table", "--config", cfg.string(), "--hmax", "20"});
    REQUIRE(r.code == cli::kExitOk);
    std::ifstream in2(out);
    std::stringstream ss2;
    ss2 << in2.rdbuf();
    CHECK(lines(ss2.str()).size() == 21);

    const auto bad = scratch("cfg_bad.txt", "hmax = 50\n\nfrobnicate = 3\n");
    r = run({"singular", "table", "--config", bad.string()});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(r.err.find("frobnicate") != std::string::npos);
}

TEST_CASE("singular table prefix sums") {
    const auto r = run({"singular", "table", "--hmax", "200", "--sieve-limit", "100000"});
    REQUIRE(r.code == cli::kExitOk);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 201);
    CHECK(rows[0] == "h,singular_series,prefix0,epsilon,f");
    double acc = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = split(rows[i]);
        REQUIRE(f.size() == 5);
        CHECK(std::stoul(f[0]) == i);
        acc += std::stod(f[1]);
        CHECK(std::stod(f[2]) == doctest::Approx(acc).epsilon(1e-12));
        if (i % 2 == 1) CHECK(std::stod(f[1]) == 0.0);
    }
}

TEST_CASE("smoothing profile") {
    const auto r = run({"smoothing", "profile", "--U", "10", "--K", "4", "--points", "101"});
    REQUIRE(r.code == cli::kExitOk);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 204);
    CHECK(rows[0] == "t,psi");
    CHECK(rows[102] == "y,re_psi_hat");
    for (std::size_t i = 1; i <= 101; ++i) {
        const double psi = std::stod(split(rows[i])[1]);
        CHECK(psi >= 0.0);
        CHECK(psi <= 1.0);
    }
    CHECK(std::stod(split(rows[103])[1]) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(run({"smoothing", "profile", "--U", "10", "--K", "99"}).code == cli::kExitUsage);
}

TEST_CASE("thread count does not change output") {
    const fs::path data = fs::path(PAIRCORR_DATA_DIR) / "zeros_1k.txt";
    const auto file = fs::exists(data) ? data : scratch("three.txt", kThree);
    const std::vector<std::string> base{"fxt", "compare", "--zeros", file.string(), "--x-min", "2", "--x-max", "50",
                                        "--points", "3", "--M", "3", "--sieve-limit", "100000", "--hmax", "10000"};
    auto one = base, many = base;
    one.insert(one.begin(), {"--threads", "1"});
    many.insert(many.begin(), {"--threads", "4"});
    const auto a = run(one), b = run(many);
    REQUIRE(a.code == cli::kExitOk);
    CHECK(a.out == b.out);
    CHECK(lines(a.out).size() == 4);
}
