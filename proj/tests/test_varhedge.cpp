#include "doctest.h"

#include "intlot/errors.hpp"
#include "intlot/example_models.hpp"
#include "intlot/lattice.hpp"
#include "intlot/varhedge.hpp"

#include <cmath>

using namespace intlot;
using namespace intlot::varhedge;
namespace ex = intlot::examples;

namespace {

VarHedgeProblem benchmark(long long copies) {
    return VarHedgeProblem{ex::table1_model(), ex::table1_claim(), ex::table1_pstar(),
                           copies};
}

} // namespace

TEST_CASE("classical quadratruns hedge of the benchmark problem") {
    VarHedgeResult r = classical_var_hedge(benchmark(1));
    CHECK(r.rmse == doctest::Approx(0.405).epsilon(2e-3));
    CHECK(r.weighted_exposure == doctest::Approx(1.68757).epsilon(1e-4));
    CHECK(r.initial_value == doctest::Approx(2.06));
    // The optimal real positions themselves.
    CHECK(r.positions[0] == doctest::Approx(-0.49870).epsilon(1e-4));
    CHECK(r.positions[1] == doctest::Approx(-0.51064).epsilon(1e-4));
}

TEST_CASE("classical hedge is homogeneous in the claim count") {
    VarHedgeResult one = classical_var_hedge(benchmark(1));
    VarHedgeResult ten = classical_var_hedge(benchmark(10));
    for (int j = 0; j < 2; ++j)
        CHECK(ten.positions[static_cast<std::size_t>(j)] ==
              doctest::Approx(10.0 * one.positions[static_cast<std::size_t>(j)]).epsilon(1e-12));
    CHECK(ten.rmse == doctest::Approx(one.rmse).epsilon(1e-12));
    CHECK(ten.weighted_exposure == doctest::Approx(16.8757).epsilon(1e-4));
}

TEST_CASE("integer hedge of the benchmark problem at one copy") {
    VarHedgeResult r = integer_var_hedge(benchmark(1));
    CHECK(r.int_positions == std::vector<long long>{-1, -1});
    CHECK(r.rmse == doctest::Approx(0.901).epsilon(1e-3));
    CHECK(r.max_position == doctest::Approx(1.0));
}

TEST_CASE("rounding the classical hedge is poor at one copy") {
    VarHedgeResult r = rounded_var_hedge(benchmark(1));
    CHECK(r.int_positions == std::vector<long long>{0, -1});
    CHECK(r.rmse == doctest::Approx(8.352).epsilon(1e-3));
}

TEST_CASE("twenty copies: the closest point beats the rounded hedge") {
    VarHedgeResult cvp = integer_var_hedge(benchmark(20));
    VarHedgeResult rnd = rounded_var_hedge(benchmark(20));
    CHECK(cvp.int_positions == std::vector<long long>{-11, -11});
    CHECK(rnd.int_positions == std::vector<long long>{-10, -10});
    CHECK(cvp.rmse == doctest::Approx(0.416).epsilon(2e-3));
    CHECK(rnd.rmse == doctest::Approx(0.419).epsilon(2e-3));
    CHECK(cvp.rmse <= rnd.rmse);
}

TEST_CASE("residual ordering across methods at every listed copy count") {
    for (long long n : {1LL, 5LL, 10LL, 20LL, 30LL, 40LL, 50LL}) {
        VarHedgeResult cls = classical_var_hedge(benchmark(n));
        VarHedgeResult cvp = integer_var_hedge(benchmark(n));
        VarHedgeResult rnd = rounded_var_hedge(benchmark(n));
        CHECK(cls.residual <= cvp.residual + 1e-9);
        CHECK(cvp.residual <= rnd.residual + 1e-9);
    }
}

TEST_CASE("classical residual is orthogonal to every gain vector") {
    VarHedgeProblem p = benchmark(3);
    VarHedgeResult r = classical_var_hedge(p);
    NumericContext ctx = p.model.context();
    auto gains = market::discounted_gains(p.model);
    double ec = 0.0;
    for (int s = 0; s < 4; ++s)
        ec += p.pricing_measure[static_cast<std::size_t>(s)].to_double(ctx) *
              p.claim.payoff[static_cast<std::size_t>(s)].to_double(ctx);
    for (int j = 0; j < 2; ++j) {
        double inner = 0.0, scale = 1.0;
        for (int s = 0; s < 4; ++s) {
            double ps = p.pricing_measure[static_cast<std::size_t>(s)].to_double(ctx);
            double centered =
                3.0 * (p.claim.payoff[static_cast<std::size_t>(s)].to_double(ctx) - ec);
            double hedge = 0.0;
            for (int k = 0; k < 2; ++k)
                hedge += r.positions[static_cast<std::size_t>(k)] *
                         gains[static_cast<std::size_t>(k)][0][static_cast<std::size_t>(s)]
                             .to_double(ctx);
            double gj =
                gains[static_cast<std::size_t>(j)][0][static_cast<std::size_t>(s)].to_double(ctx);
            inner += ps * (centered - hedge) * gj;
            scale = std::max(scale, std::fabs(gj));
        }
        CHECK(std::fabs(inner) <= 1e-9 * scale * 10);
    }
}

TEST_CASE("cvp agrees with the exhaustive oracle on the benchmark") {
    for (long long n : {1LL, 10LL, 30LL}) {
        VarHedgeProblem p = benchmark(n);
        VarHedgeResult cvp = integer_var_hedge(p);
        NumericContext ctx = p.model.context();
        auto gains = market::discounted_gains(p.model);
        lattice::LatticeBasis basis;
        basis.generators.assign(2, std::vector<double>(4));
        std::vector<double> target(4);
        double ec = 0.0;
        for (int s = 0; s < 4; ++s)
            ec += p.pricing_measure[static_cast<std::size_t>(s)].to_double(ctx) *
                  p.claim.payoff[static_cast<std::size_t>(s)].to_double(ctx);
        for (int s = 0; s < 4; ++s) {
            double w =
                std::sqrt(p.pricing_measure[static_cast<std::size_t>(s)].to_double(ctx));
            for (int j = 0; j < 2; ++j)
                basis.generators[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] =
                    gains[static_cast<std::size_t>(j)][0][static_cast<std::size_t>(s)]
                        .to_double(ctx) *
                    w;
            target[static_cast<std::size_t>(s)] =
                static_cast<double>(n) *
                (p.claim.payoff[static_cast<std::size_t>(s)].to_double(ctx) - ec) * w;
        }
        long long radius = 2 * static_cast<long long>(cvp.max_position) + 5;
        auto oracle = lattice::cvp_bruteforce(basis, target, static_cast<int>(radius));
        CHECK(cvp.int_positions == oracle.coefficients);
    }
}

TEST_CASE("zero claims flag the degenerate denominator") {
    VarHedgeProblem p = benchmark(1);
    p.claim = market::Claim({Scalar(0), Scalar(0), Scalar(0), Scalar(0)});
    VarHedgeResult r = classical_var_hedge(p);
    CHECK(r.zero_norm);
    CHECK(r.rmse == 0.0);
}

TEST_CASE("replicable claims hedge to zero error with exact integer positions") {
    VarHedgeProblem p = benchmark(1);
    // C = 2 * dS1 - dS2 + 5, a lattice point plus a constant.
    auto gains = market::discounted_gains(p.model);
    NumericContext ctx = p.model.context();
    std::vector<Scalar> payoff;
    for (int s = 0; s < 4; ++s) {
        double v = 2.0 * gains[0][0][static_cast<std::size_t>(s)].to_double(ctx) -
                   gains[1][0][static_cast<std::size_t>(s)].to_double(ctx) + 300.0;
        payoff.push_back(Scalar(BigRat::from_double(v)));
    }
    p.claim = market::Claim(payoff);
    VarHedgeResult cvp = integer_var_hedge(p);
    CHECK(cvp.int_positions == std::vector<long long>{2, -1});
    CHECK(cvp.rmse == doctest::Approx(0.0).epsilon(1e-9));
    VarHedgeResult cls = classical_var_hedge(p);
    CHECK(cls.positions[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(cls.positions[1] == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("pricing measures failing the martingale test are rejected") {
    VarHedgeProblem p = benchmark(1);
    p.pricing_measure = {Scalar(BigRat(1, 4)), Scalar(BigRat(1, 4)), Scalar(BigRat(1, 4)),
                         Scalar(BigRat(1, 4))};
    CHECK_THROWS_AS(p.validate(), NotMartingaleMeasure);
}

TEST_CASE("the report renders every reference cell") {
    VarHedgeReport rep = var_hedge_report(ex::table1_model(), ex::table1_claim(),
                                          ex::table1_pstar(), {1, 5, 10});
    std::string table = render_table(rep);
    CHECK(table.find("0.405") != std::string::npos);
    CHECK(table.find("0.901") != std::string::npos);
    CHECK(table.find("8.352") != std::string::npos);
    CHECK(table.find("1.636") != std::string::npos);
    CHECK(table.find("1.688") != std::string::npos);
    CHECK(table.find("classical: rMSE") != std::string::npos);
}
