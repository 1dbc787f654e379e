#include "doctest.h"

#include "intlot/errors.hpp"
#include "intlot/example_models.hpp"
#include "intlot/lattice.hpp"
#include "intlot/market.hpp"

#include <cmath>
#include <random>

using namespace intlot;
using namespace intlot::lattice;

namespace {

const NumericContext kCtx = NumericContext::exact_default();

LatticeBasis basis2(std::initializer_list<std::initializer_list<double>> rows) {
    LatticeBasis b;
    for (const auto& r : rows) b.generators.emplace_back(r);
    return b;
}

/// Weighted gain generators and claim target of the benchmark problem,
/// scaled to N copies of the claim.
struct WeightedProblem {
    LatticeBasis basis;
    std::vector<double> target;
    double target_norm;
};

WeightedProblem table1_weighted(int copies) {
    auto m = examples::table1_model();
    auto c = examples::table1_claim();
    auto pstar = examples::table1_pstar();
    auto gains = market::discounted_gains(m);
    NumericContext ctx = m.context();

    double ec = 0.0;
    for (int s = 0; s < 4; ++s) ec += pstar[s].to_double(ctx) * c.payoff[s].to_double(ctx);

    WeightedProblem wp;
    wp.basis.generators.assign(2, std::vector<double>(4, 0.0));
    wp.target.assign(4, 0.0);
    double t2 = 0.0;
    for (int s = 0; s < 4; ++s) {
        double w = std::sqrt(pstar[s].to_double(ctx));
        for (int j = 0; j < 2; ++j)
            wp.basis.generators[j][s] = gains[j][0][s].to_double(ctx) * w;
        wp.target[s] = copies * (c.payoff[s].to_double(ctx) - ec) * w;
        t2 += wp.target[s] * wp.target[s];
    }
    wp.target_norm = std::sqrt(t2);
    return wp;
}

long long det2(const std::vector<std::vector<long long>>& u) {
    return u[0][0] * u[1][1] - u[0][1] * u[1][0];
}

} // namespace

TEST_CASE("lll leaves an orthonormal basis untouched") {
    auto res = lll_reduce(basis2({{1, 0}, {0, 1}}));
    CHECK(res.reduced.generators[0] == std::vector<double>{1, 0});
    CHECK(res.reduced.generators[1] == std::vector<double>{0, 1});
    CHECK(det2(res.transform) == 1);
    CHECK(lovasz_check(res.reduced, BigRat(99, 100)));
}

TEST_CASE("lll finds the short difference vector in a skewed basis") {
    auto res = lll_reduce(basis2({{1, 0}, {0.999, 0.001}}));
    CHECK(lovasz_check(res.reduced, BigRat(99, 100)));
    double shortest = 1e300;
    for (const auto& r : res.reduced.generators)
        shortest = std::min(shortest, r[0] * r[0] + r[1] * r[1]);
    CHECK(shortest <= 2.1e-6);
    CHECK(std::llabs(det2(res.transform)) == 1);
}

TEST_CASE("lll reduces the benchmark weighted-gain lattice") {
    auto wp = table1_weighted(1);
    auto res = lll_reduce(wp.basis);
    CHECK(lovasz_check(res.reduced, BigRat(99, 100)));
    CHECK(std::llabs(det2(res.transform)) == 1);
    CHECK_FALSE(lovasz_check(wp.basis, BigRat(99, 100)));  // raw basis is skewed
}

TEST_CASE("cvp on the integer grid rounds into the cell") {
    auto res = cvp_closest(basis2({{1, 0}, {0, 1}}), {0.4, -0.3});
    CHECK(res.coefficients == std::vector<long long>{0, 0});
    CHECK(res.distance2 == doctest::Approx(0.25));
    CHECK(res.status == CVPResult::Status::exact_optimal);
}

TEST_CASE("cvp returns an exact lattice point with zero distance") {
    LatticeBasis b = basis2({{2, 1, 0}, {-1, 3, 1}});
    std::vector<double> t = {2 * 2.0 + 3 * -1.0, 2 * 1.0 + 3 * 3.0, 3 * 1.0};
    auto res = cvp_closest(b, t);
    CHECK(res.coefficients == std::vector<long long>{2, 3});
    CHECK(res.distance2 == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("benchmark lattice: closest point at one claim copy") {
    auto wp = table1_weighted(1);
    auto exact = cvp_closest(wp.basis, wp.target);
    auto oracle = cvp_bruteforce(wp.basis, wp.target, 20);
    CHECK(exact.coefficients == oracle.coefficients);
    CHECK(exact.distance2 == doctest::Approx(oracle.distance2));
    long long maxpos = std::max(std::llabs(exact.coefficients[0]),
                                std::llabs(exact.coefficients[1]));
    CHECK(maxpos == 1);
    CHECK(std::sqrt(exact.distance2) / wp.target_norm == doctest::Approx(0.901).epsilon(0.006));
}

TEST_CASE("benchmark lattice: ten claim copies need positions up to five") {
    auto wp = table1_weighted(10);
    auto oracle = cvp_bruteforce(wp.basis, wp.target, 20);
    long long maxpos = std::max(std::llabs(oracle.coefficients[0]),
                                std::llabs(oracle.coefficients[1]));
    CHECK(maxpos == 5);
    auto exact = cvp_closest(wp.basis, wp.target);
    CHECK(exact.coefficients == oracle.coefficients);
}

TEST_CASE("babai rounding is exact on lattice points and orthogonal bases") {
    LatticeBasis b = basis2({{3, 0}, {0, 5}});
    auto res = babai_round(b, {6.0, -10.0});
    CHECK(res.coefficients == std::vector<long long>{2, -2});
    CHECK(res.distance2 == doctest::Approx(0.0));
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-20, 20);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> t = {u(rng), u(rng)};
        auto cv = cvp_closest(b, t);
        auto ba = babai_round(b, t);
        CHECK(ba.distance2 == doctest::Approx(cv.distance2));
    }
}

TEST_CASE("babai on the benchmark problem is far from optimal") {
    auto wp = table1_weighted(1);
    auto ba = babai_round(wp.basis, wp.target);
    CHECK(std::sqrt(ba.distance2) / wp.target_norm == doctest::Approx(8.352).epsilon(0.001));
    long long maxpos =
        std::max(std::llabs(ba.coefficients[0]), std::llabs(ba.coefficients[1]));
    CHECK(maxpos == 1);
}

TEST_CASE("brute force with zero radius returns the origin") {
    auto res = cvp_bruteforce(basis2({{1, 0}, {0, 1}}), {5.0, 5.0}, 0);
    CHECK(res.coefficients == std::vector<long long>{0, 0});
}

TEST_CASE("cvp never loses to babai") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> entry(-10, 10);
    for (int iter = 0; iter < 100; ++iter) {
        int m = 2 + iter % 3, n = m + iter % 2;
        LatticeBasis b;
        b.generators.assign(static_cast<std::size_t>(m),
                            std::vector<double>(static_cast<std::size_t>(n)));
        for (auto& row : b.generators)
            for (auto& v : row) v = entry(rng);
        std::vector<double> t(static_cast<std::size_t>(n));
        for (auto& v : t) v = entry(rng);
        auto cv = cvp_closest(b, t);
        auto ba = babai_round(b, t);
        CHECK(cv.distance2 <= ba.distance2 + 1e-7);
    }
}

TEST_CASE("cvp equals the exhaustive oracle on random instances") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> entry(-10, 10);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_real_distribution<double> noise(-2, 2);
    int done = 0;
    while (done < 60) {
        int m = 2 + done % 3;  // 2..4
        int n = m + done % 3;
        LatticeBasis b;
        b.generators.assign(static_cast<std::size_t>(m),
                            std::vector<double>(static_cast<std::size_t>(n)));
        for (auto& row : b.generators)
            for (auto& v : row) v = entry(rng);
        // Target: a small-coefficient lattice point plus noise, keeping the
        // optimum well inside the oracle's box.
        std::vector<double> t(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < m; ++i) {
            int c = coeff(rng);
            for (int k = 0; k < n; ++k)
                t[static_cast<std::size_t>(k)] +=
                    c * b.generators[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        }
        for (auto& v : t) v += noise(rng);
        CVPResult oracle;
        try {
            oracle = cvp_bruteforce(b, t, 20);
        } catch (const BudgetExceeded&) {
            continue;
        }
        bool interior = true;
        for (long long c : oracle.coefficients)
            if (std::llabs(c) >= 20) interior = false;
        if (!interior) continue;
        auto exact = cvp_closest(b, t);
        CHECK(exact.distance2 == doctest::Approx(oracle.distance2).epsilon(1e-9));
        CHECK(exact.coefficients == oracle.coefficients);
        ++done;
    }
}

TEST_CASE("lll output always passes the reducedness checker") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> entry(-10, 10);
    for (int iter = 0; iter < 100; ++iter) {
        int m = 2 + iter % 3, n = m + iter % 3;
        LatticeBasis b;
        b.generators.assign(static_cast<std::size_t>(m),
                            std::vector<double>(static_cast<std::size_t>(n)));
        for (auto& row : b.generators)
            for (auto& v : row) v = entry(rng);
        auto res = lll_reduce(b);
        CHECK(lovasz_check(res.reduced, BigRat(99, 100)));
    }
}

TEST_CASE("dependent generators are rejected") {
    CHECK_THROWS_AS(lll_reduce(basis2({{1, 2}, {2, 4}})), DependentGenerators);
    CHECK_THROWS_AS(cvp_closest(basis2({{1, 2}, {2, 4}}), {0.0, 0.0}),
                    DependentGenerators);
    LatticeBasis three_in_two;
    three_in_two.generators = {{1, 0}, {0, 1}, {1, 1}};
    CHECK_THROWS_AS(three_in_two.validate(), DependentGenerators);
}

TEST_CASE("simultaneous approximation of sqrt2 with window ten") {
    auto res = dirichlet_simultaneous({Scalar::constant("sqrt2")}, BigInt(10), kCtx);
    CHECK(res.q.to_int64() == 5);
    CHECK(res.x[0].to_int64() == 7);
    // Independent check with a 50-digit enclosure: q = 1..4 all miss 1/10.
    BigRat s2(BigInt::isqrt(BigInt(2) * BigInt::pow10(100)), BigInt::pow10(50));
    for (long long q = 1; q <= 5; ++q) {
        BigRat v = s2 * BigRat(q);
        BigRat err = (v - BigRat(v.round_half_even())).abs();
        if (q < 5) CHECK(err > BigRat(1, 10));
        else CHECK(err < BigRat(1, 10));
    }
}

TEST_CASE("simultaneous approximation trivial cases") {
    auto ints = dirichlet_simultaneous({Scalar(3), Scalar(-17)}, BigInt(10), kCtx);
    CHECK(ints.q.to_int64() == 1);
    CHECK(ints.x[0].to_int64() == 3);
    CHECK(ints.x[1].to_int64() == -17);

    auto third = dirichlet_simultaneous({Scalar(BigRat(1, 3))}, BigInt(9), kCtx);
    CHECK(third.q.to_int64() == 3);
    CHECK(third.x[0].to_int64() == 1);
}

TEST_CASE("simultaneous approximation satisfies the strict bound exactly") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 30), nsel(2, 40);
    for (int iter = 0; iter < 100; ++iter) {
        int m = 1 + iter % 3;
        std::vector<Scalar> alphas;
        std::vector<BigRat> vals;
        for (int i = 0; i < m; ++i) {
            BigRat v(num(rng), den(rng));
            vals.push_back(v);
            alphas.push_back(Scalar(v));
        }
        BigInt N(nsel(rng));
        auto res = dirichlet_simultaneous(alphas, N, kCtx);
        CHECK(res.q >= BigInt(1));
        CHECK(res.q <= N);
        for (int i = 0; i < m; ++i) {
            // |alpha q - x|^m * N < 1, the strict bound in exact arithmetic.
            BigRat err = (vals[static_cast<std::size_t>(i)] * BigRat(res.q) -
                          BigRat(res.x[static_cast<std::size_t>(i)]))
                             .abs();
            BigRat p(1);
            for (int k = 0; k < m; ++k) p *= err;
            CHECK(p * BigRat(N) < BigRat(1));
        }
    }
}
