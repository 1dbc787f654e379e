#include "doctest.h"

#include "intlot/arbitrage.hpp"
#include "intlot/cli.hpp"
#include "intlot/hedging.hpp"
#include "intlot/io.hpp"
#include "intlot/pricing.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace intlot;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::vector<std::string>& args, std::string* captured = nullptr) {
    std::ostringstream out, err;
    int rc = cli::run(args, out, err);
    if (captured) *captured = out.str() + err.str();
    return rc;
}

std::string data_path(const std::string& rel) { return "data/" + rel; }

} // namespace

TEST_CASE("every bundled model file validates and round-trips") {
    int count = 0;
    for (const auto& entry : fs::directory_iterator(data_path("models"))) {
        ++count;
        io::json original = io::load_json_file(entry.path().string());
        market::MarketModel m = io::model_from_json(original);
        CHECK(market::validate_model(m).empty());
        io::json again = io::model_to_json(m);
        CHECK(io::model_from_json(again).states == m.states);
        CHECK(io::model_to_json(io::model_from_json(again)) == again);
    }
    CHECK(count == 7);
}

TEST_CASE("the expectation corpus reproduces") {
    int files = 0;
    for (const auto& entry : fs::directory_iterator(data_path("expect"))) {
        ++files;
        io::json exp = io::load_json_file(entry.path().string());
        INFO("expectation file ", entry.path().string());
        market::MarketModel m =
            io::load_model(data_path(exp.at("model").get<std::string>()));
        NumericContext ctx = m.context();

        if (exp.contains("check")) {
            for (const auto& [prop, want] : exp.at("check").items()) {
                std::string got;
                if (prop == "na")
                    got = arb::na_check(m).holds ? "holds" : "fails";
                else if (prop == "nifl")
                    got = arb::nifl_check(m).holds ? "holds" : "fails";
                else {
                    auto rep = arb::nia_check(m);
                    got = rep.verdict == arb::Verdict::holds    ? "holds"
                          : rep.verdict == arb::Verdict::fails  ? "fails"
                                                                : "inconclusive";
                }
                CHECK(got == want.get<std::string>());
            }
        }
        if (!exp.contains("claims")) continue;
        for (const auto& cj : exp.at("claims")) {
            market::Claim c =
                io::load_claim(data_path(cj.at("file").get<std::string>()), m.n());
            INFO("claim ", cj.at("file").get<std::string>());
            if (cj.contains("classical_lo")) {
                auto iv = pricing::classical_price_bounds(m, c);
                CHECK(iv.lo == io::scalar_from_json(cj.at("classical_lo")));
                CHECK(iv.hi == io::scalar_from_json(cj.at("classical_hi")));
            }
            if (cj.contains("nia_lo")) {
                auto iv = pricing::nia_price_interval(m, c);
                CHECK(iv.lo == io::scalar_from_json(cj.at("nia_lo")));
                CHECK(iv.hi == io::scalar_from_json(cj.at("nia_hi")));
                if (cj.contains("proven_empty"))
                    CHECK(iv.empty == cj.at("proven_empty").get<bool>());
            }
            if (cj.contains("nia_lo_approx")) {
                auto iv = pricing::nia_price_interval(m, c);
                CHECK(iv.lo.to_double(ctx) ==
                      doctest::Approx(cj.at("nia_lo_approx").get<double>()).epsilon(1e-7));
                CHECK(iv.hi.to_double(ctx) ==
                      doctest::Approx(cj.at("nia_hi_approx").get<double>()).epsilon(1e-7));
            }
            if (cj.contains("members")) {
                for (const auto& mem : cj.at("members")) {
                    Scalar p = io::scalar_from_json(mem.at("price"));
                    auto res = pricing::price_membership(m, c, p);
                    std::string got =
                        res.verdict == pricing::Membership::member       ? "member"
                        : res.verdict == pricing::Membership::not_member ? "not-member"
                                                                         : "unknown";
                    CHECK(got == mem.at("verdict").get<std::string>());
                }
            }
            if (cj.contains("super_price")) {
                auto h = hedge::real_hedge(m, c, hedge::Direction::super);
                CHECK(h.price == io::scalar_from_json(cj.at("super_price")));
            }
            if (cj.contains("integer_super_price")) {
                auto h = hedge::integer_hedge(m, c, hedge::Direction::super);
                CHECK(h.price == io::scalar_from_json(cj.at("integer_super_price")));
            }
        }
    }
    CHECK(files == 7);
}

TEST_CASE("check command exit codes and wording") {
    std::string out;
    CHECK(run_cli({"check", data_path("models/empty_pi.json"), "--property", "nia"},
                  &out) == 0);
    CHECK(out.find("NIA holds") != std::string::npos);
    CHECK(out.find("w3") != std::string::npos);

    CHECK(run_cli({"check", data_path("models/empty_pi.json"), "--property", "na"}, &out) ==
          3);
    CHECK(run_cli({"check", data_path("models/gap.json")}, &out) == 0);
    CHECK(run_cli({"check", "no-such-file.json"}, &out) == 2);
}

TEST_CASE("price command membership exit codes") {
    std::string out;
    int rc = run_cli({"price", data_path("models/sqrt2.json"),
                      data_path("claims/sqrt2_ci.json"), "--member",
                      R"({"terms": {"sqrt2": "1"}})"},
                     &out);
    CHECK(rc == 0);
    CHECK(out.find("member") != std::string::npos);

    rc = run_cli({"price", data_path("models/empty_pi.json"),
                  data_path("claims/empty_pi_c.json"), "--member", "0"},
                 &out);
    CHECK(rc == 3);
    CHECK(out.find("proven empty") != std::string::npos);
}

TEST_CASE("price command extension verdicts") {
    std::string out;
    int rc = run_cli({"price", data_path("models/dense.json"),
                      data_path("claims/dense_c.json"), "--extension",
                      data_path("extensions/dense_quarter.json")},
                     &out);
    CHECK(rc == 3);
    rc = run_cli({"price", data_path("models/dense.json"), data_path("claims/dense_c.json"),
                  "--extension", data_path("extensions/dense_sqrt2_quarter.json")},
                 &out);
    CHECK(rc == 4);
    CHECK(out.find("dependency test passed") != std::string::npos);
}

TEST_CASE("hedge command prints prices in all classes") {
    std::string out;
    CHECK(run_cli({"hedge", data_path("models/gap.json"), data_path("claims/gap_c.json")},
                  &out) == 0);
    CHECK(out.find("1/4") != std::string::npos);
    CHECK(run_cli({"hedge", data_path("models/gap.json"), data_path("claims/gap_c.json"),
                   "--class", "integer"},
                  &out) == 0);
    CHECK(out.find("1/2") != std::string::npos);
    CHECK(run_cli({"hedge", data_path("models/sqrt2.json"),
                   data_path("claims/sqrt2_ci.json"), "--class", "rational",
                   "--denom-bound", "10", "--json"},
                  &out) == 0);
    CHECK(out.find("\"denominator\"") == std::string::npos);  // q = 1 is omitted
    CHECK(out.find("epsilon-approximate") != std::string::npos);
    CHECK(run_cli({"hedge", data_path("models/gap.json"), data_path("claims/gap_c.json"),
                   "--copies", "1,2,3"},
                  &out) == 0);
    CHECK(out.find("per-copy") != std::string::npos);
}

TEST_CASE("varhedge command reproduces the benchmark measure flow") {
    std::string out;
    CHECK(run_cli({"varhedge", data_path("models/table1.json"),
                   data_path("claims/table1_c.json"), "--measure",
                   data_path("measures/table1_pstar.json"), "--copies", "1,10"},
                  &out) == 0);
    CHECK(out.find("0.405") != std::string::npos);
    CHECK(out.find("0.901") != std::string::npos);
    // Defaulted measure: the model's stated probabilities are already the
    // pricing measure, so the flow works end to end.
    CHECK(run_cli({"varhedge", data_path("models/table1.json"),
                   data_path("claims/table1_c.json"), "--method", "cvp", "--json"},
                  &out) == 0);
    CHECK(out.find("\"method\": \"cvp\"") != std::string::npos);
}

TEST_CASE("examples subcommand lists and reproduces the benchmark table") {
    std::string out;
    CHECK(run_cli({"examples", "list"}, &out) == 0);
    CHECK(out.find("gap") != std::string::npos);
    CHECK(run_cli({"examples", "table2"}, &out) == 0);
    for (const char* cell : {"0.405", "0.901", "8.352", "1.688", "84.379", "0.410"})
        CHECK(out.find(cell) != std::string::npos);
}

TEST_CASE("lattice debug commands read the plain text format") {
    fs::create_directories("build/tmp");
    {
        std::ofstream mf("build/tmp/basis.txt");
        mf << "1 0\n0.999 0.001\n";
        std::ofstream tf("build/tmp/target.txt");
        tf << "0.4 -0.3\n";
    }
    std::string out;
    CHECK(run_cli({"lattice", "lll", "build/tmp/basis.txt"}, &out) == 0);
    CHECK(out.find("reduced basis") != std::string::npos);
    CHECK(run_cli({"lattice", "cvp", "build/tmp/basis.txt", "build/tmp/target.txt"},
                  &out) == 0);
    CHECK(out.find("coefficients") != std::string::npos);
}

TEST_CASE("json outputs carry the schema tag") {
    std::string out;
    CHECK(run_cli({"check", data_path("models/gap.json"), "--json"}, &out) == 0);
    io::json j = io::json::parse(out);
    CHECK(j.at("schema").get<int>() == 1);
    CHECK(j.at("verdict").get<std::string>() == "holds");
}
