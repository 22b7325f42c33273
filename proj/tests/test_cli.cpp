#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "swsh");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = swsh::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

TEST_CASE("coeffs") {
    const auto r = cli({"coeffs", "--m", "1/2", "--order", "4"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["schema"] == 1);
    CHECK(doc["m"] == "1/2");
    CHECK(doc["s"] == "1/2");
    CHECK(doc["order"] == 4);
    CHECK(doc["energy"] == json({"0", "-1/3", "-11/27", "-64/1215", "-224/10935"}));
    CHECK(doc["w"][0] == json({{"n", 1}, {"a", json::object()}, {"b", {{"1", "-1/3"}}}}));
    CHECK(doc["notices"][0]["quantity"] == "E_{0,2}");
    CHECK(doc["notices"][0]["class"] == "PAPER-DIVERGENCE");
    CHECK(r.out == doc.dump(2) + "\n");  // sorted keys, canonical layout

    const auto csv = cli({"coeffs", "--m", "3/2", "--order", "2", "--format", "csv"});
    REQUIRE(csv.code == 0);
    const auto rows = lines(csv.out);
    CHECK(rows[0] == "n,part,index,value");
    CHECK(rows[2] == "1,E,0,-1/5");
}

TEST_CASE("eigen") {
    const auto r = cli({"eigen", "--m", "1/2", "--order", "4", "--beta", "0.0:0.2:5"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == "beta,E_series,E_oracle,abs_diff,fitted_order");
    const auto first = split(rows[1]);
    CHECK(first[0] == "0");
    CHECK(first[3] == "0");
    const double slope = std::stod(first[4]);
    CHECK(slope >= 4.7);
    CHECK(slope <= 5.3);
    const auto last = split(rows[5]);
    CHECK(std::stod(last[0]) == 0.2);
}

TEST_CASE("wavefunc") {
    const auto r = cli({"wavefunc", "--m", "1/2", "--order", "8", "--beta", "0.1"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 182);
    CHECK(rows[0] == "theta,psi0,theta0,residual");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto cells = split(rows[i]);
        REQUIRE(cells.size() == 4);
        CHECK(std::stod(cells[1]) > 0);
        CHECK(std::stod(cells[3]) <= 1e-7);
    }
    CHECK(cli({"wavefunc", "--beta", "0:0.1:3"}).code == 1);
}

TEST_CASE("excited") {
    const auto r = cli({"excited", "--m", "1/2", "--order", "4", "--level", "2"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc["steps"].size() == 2);
    for (const auto& step : doc["steps"]) {
        for (const auto& order : step["orders"]) CHECK(order["theta_independence"] == "exact");
    }
    CHECK(doc["steps"][0]["orders"][0]["R"] == "3");
    CHECK(doc["steps"][0]["orders"][0]["C"]["0"] == "2");
    CHECK(doc["steps"][0]["orders"][1]["R"] == "4/15");
    CHECK(doc["steps"][0]["orders"][1]["D"]["1"] == "1/5");
    CHECK(doc["excited_energy"][1]["coefficients"][1] == "-1/15");
    CHECK(doc["excited_energy"][2]["coefficients"][0] == "8");

    const auto csv = cli({"excited", "--m", "1/2", "--order", "2", "--level", "1", "--format", "csv"});
    REQUIRE(csv.code == 0);
    const auto rows = lines(csv.out);
    CHECK(rows[0] == "level,order,coefficient");
    CHECK(rows.size() == 7);
    CHECK(rows[5] == "1,1,-1/15");
    CHECK(cli({"excited", "--level", "0"}).code == 1);
}

TEST_CASE("verify") {
    const auto r = cli({"verify", "--m", "1/2", "--order", "8"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    REQUIRE(doc["riccati"].size() == 8);
    for (int n = 0; n < 8; ++n) {
        CHECK(doc["riccati"][n]["n"] == n + 1);
        CHECK(doc["riccati"][n]["residual"] == "exact-zero");
    }
    CHECK(doc["summary"]["status"] == "PASS");
    CHECK(doc["summary"]["EXACT-FAIL"] == 0);
    CHECK(doc["summary"]["ORACLE-FAIL"] == 0);
    std::vector<std::string> quantities;
    for (const auto& n : doc["notices"]) {
        CHECK(n["class"] == "PAPER-DIVERGENCE");
        quantities.push_back(n["quantity"]);
    }
    CHECK(quantities == std::vector<std::string>{"E_{0,2}", "R_{1}"});
    CHECK(std::abs(doc["notices"][0]["oracle_series_fit"].get<double>() + 11.0 / 27.0) <= 1e-6);
    CHECK(r.err.find("0 exact-fail") != std::string::npos);

    CHECK(cli({"verify", "--m", "1/2", "--order", "8"}).out == r.out);
    CHECK(cli({"verify", "--format", "csv"}).code == 1);
}

TEST_CASE("oracle") {
    const auto r = cli({"oracle", "--m", "1/2", "--beta", "0:0.2:3", "--level", "1"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0] == "beta,level,eigenvalue,truncation_error,lmax");
    CHECK(rows[1] == "0,0,0,0,32");
    CHECK(rows[2] == "0,1,3,0,32");
    const auto j = cli({"oracle", "--m", "3/2", "--beta", "0.1", "--format", "json", "--lmax", "16"});
    REQUIRE(j.code == 0);
    CHECK(json::parse(j.out)["rows"][0]["lmax"] == 16);
}

TEST_CASE("configuration errors exit 1") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"coeffs", "--m", "abc"},
             {"coeffs", "--m", "-1/2"},
             {"coeffs", "--m", "1/0"},
             {"coeffs", "--order", "-1"},
             {"coeffs", "--format", "xml"},
             {"coeffs", "--bogus", "1"},
             {"eigen", "--beta", "0:1"},
             {"eigen", "--beta", "0:1:0"},
             {"eigen", "--beta", "x"},
             {"oracle", "--lmax", "3"},
             {"nonsense"},
             {}}) {
        const auto r = cli(args);
        CHECK_MESSAGE(r.code == 1, "args: " << (args.empty() ? std::string("<none>") : args.front()));
        CHECK(r.out.empty());
    }
    CHECK(cli({"coeffs", "--help"}).code == 0);
}

TEST_CASE("verification failures map to exit 2") {
    CHECK(swsh::cli::exit_code_for(swsh::VerificationError("series-engine", "riccati_residual", 3, "h_2 != 0")) == 2);
    CHECK(swsh::cli::exit_code_for(swsh::SingularFlowError(2, 1, "alpha = 0")) == 2);
    CHECK(swsh::cli::exit_code_for(swsh::NumericError("no convergence")) == 2);
    CHECK(swsh::cli::exit_code_for(swsh::DomainError("bad m")) == 1);
    swsh::verify::Outcome outcome;
    CHECK(swsh::cli::exit_code_for(outcome) == 0);
    outcome.divergences = 3;
    CHECK(swsh::cli::exit_code_for(outcome) == 0);
    outcome.oracle_failures = 1;
    CHECK(swsh::cli::exit_code_for(outcome) == 2);
    outcome.oracle_failures = 0;
    outcome.exact_failures = 1;
    CHECK(swsh::cli::exit_code_for(outcome) == 2);
}

TEST_CASE("--out writes the same bytes as stdout") {
    const std::string path = "cli_test_out.json";
    const auto a = cli({"verify", "--m", "3/2", "--order", "4", "--out", path});
    REQUIRE(a.code == 0);
    CHECK(a.out.empty());
    std::ifstream in(path, std::ios::binary);
    const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(written == cli({"verify", "--m", "3/2", "--order", "4"}).out);
    std::remove(path.c_str());
    CHECK(cli({"coeffs", "--out", "/nonexistent-dir/x.json"}).code == 1);
}
