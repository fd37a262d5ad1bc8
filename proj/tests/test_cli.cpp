#include <doctest.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pif/cli.hpp"
#include "pif/errors.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "pif");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    int code = pif::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        std::vector<double> r;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) r.push_back(std::stod(cell));
        rows.push_back(r);
    }
    return rows;
}

const std::string fixtures = PIF_FIXTURE_DIR;

}  // namespace

TEST_CASE("grid parsing") {
    std::vector<double> g = pif::parse_grid("0:1:0.25");
    REQUIRE(g.size() == 5);
    CHECK(g.back() == 1.0);
    g = pif::parse_grid("0:1:0.3");
    REQUIRE(g.size() == 5);
    CHECK(g[3] == doctest::Approx(0.9));
    CHECK(g[4] == 1.0);
    CHECK(pif::parse_grid("2:2:0.1").size() == 1);
    CHECK_THROWS_AS(pif::parse_grid("0:1"), pif::InvalidArgument);
    CHECK_THROWS_AS(pif::parse_grid("0:1:-0.1"), pif::InvalidArgument);
    CHECK_THROWS_AS(pif::parse_grid("1:0:0.1"), pif::InvalidArgument);
    CHECK_THROWS_AS(pif::parse_grid("a:1:0.1"), pif::InvalidArgument);
}

TEST_CASE("kadec") {
    Run r = run({"kadec", "--L", "0.2"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["certified"] == true);
    CHECK(j["bound"].get<double>() < 1.0);
    r = run({"kadec", "--threshold", "--tol", "1e-6"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["threshold"].get<double>() == doctest::Approx(0.2394).epsilon(1e-3));
    CHECK(run({"kadec", "--L", "0.6"}).code == 2);
    CHECK(run({"kadec", "--bogus"}).code == 2);
}

TEST_CASE("reconstruct") {
    Run r = run({"reconstruct", "-i", fixtures + "/jittered_sinc.json"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("# method=shannon") != std::string::npos);
    double err = 0.0;
    for (const auto& row : csv_rows(r.out))
        if (std::abs(row[0]) <= 100) err = std::max(err, row.at(3));
    CHECK(err < 1e-6);

    r = run({"reconstruct", "-i", fixtures + "/zero_jitter.json"});
    REQUIRE(r.code == 0);
    std::ifstream f(fixtures + "/zero_jitter.json");
    std::vector<double> vals = json::parse(f)["values"].get<std::vector<double>>();
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == vals.size());
    double d = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) d = std::max(d, std::abs(rows[i][1] - vals[i]));
    CHECK(d < 1e-12);

    r = run({"reconstruct", "-i", fixtures + "/above_threshold.json"});
    CHECK(r.code == 3);
    CHECK(json::parse(r.out)["error"] == "not_certified");

    CHECK(run({"reconstruct", "-i", fixtures + "/missing.json"}).code == 2);
    CHECK(run({"reconstruct"}).code == 2);
}

TEST_CASE("rv basis table") {
    Run r = run({"rv", "basis", "--n", "3", "--grid", "0:4:0.1"});
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    CHECK(rows.size() == 41);
    for (int m = 1; m <= 16; ++m) {
        std::ostringstream x;
        x << std::setprecision(17) << std::sqrt(static_cast<double>(m));
        Run p = run({"rv", "basis", "--n", "3", "--grid", x.str() + ":" + x.str() + ":1"});
        REQUIRE(p.code == 0);
        auto row = csv_rows(p.out).at(0);
        CHECK(std::abs(row[1] - (m == 3 ? 1.0 : 0.0)) < 1e-6);
        CHECK(std::abs(row[2]) < 1e-6);
    }
    CHECK(run({"rv", "basis", "--n", "-1"}).code == 2);
    CHECK(run({"rv", "basis", "--n", "1", "--grid", "0:1"}).code == 2);
}

TEST_CASE("rv poisson and certify") {
    Run r = run({"rv", "poisson", "--gaussian", "2"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["residual"].get<double>() < 1e-12);

    for (const char* delta : {"0.005", "0.01"}) {
        r = run({"rv", "certify", "--delta", delta});
        json j = json::parse(r.out);
        bool cert = j["certified"].get<bool>();
        CHECK(r.code == (cert ? 0 : 3));
        CHECK(j["bound"].get<double>() ==
              std::min(j["schur"]["bound"].get<double>(), j["hs"]["bound"].get<double>()));
    }
    CHECK(json::parse(run({"rv", "certify", "--delta", "0.005"}).out)["certified"] == true);
    CHECK(run({"rv", "certify", "--s", "1"}).code == 2);
}

TEST_CASE("rv recover") {
    Run r = run({"rv", "recover", "--gaussian", "1", "--delta", "0.005"});
    REQUIRE(r.code == 0);
    double err = 0.0;
    for (const auto& row : csv_rows(r.out))
        if (row[0] <= 16) err = std::max(err, row.at(4));
    CHECK(err < 1e-4);
    r = run({"rv", "recover", "--delta", "0.05", "--N", "24"});
    CHECK(r.code == 3);
    CHECK(json::parse(r.out)["error"] == "not_certified");
    r = run({"rv", "recover", "--delta", "0.05", "--N", "24", "--uncertified"});
    CHECK(r.code == 0);
}

TEST_CASE("verify-all fault injection") {
    Run r = run({"verify-all", "--only", "4", "--inject-lambda-fault", "--lines"});
    CHECK(r.code == 1);
    CHECK(r.err.find("FAIL") != std::string::npos);
    CHECK(r.err.find("lambda-q-expansion") != std::string::npos);
    json j = json::parse(r.out);
    CHECK(j["pass"] == false);
    r = run({"verify-all", "--only", "4"});
    CHECK(r.code == 0);
    CHECK(run({"verify-all", "--only", "99"}).code == 2);
}
