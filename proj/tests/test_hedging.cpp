#include "doctest.h"

#include "helpers.hpp"
#include "intlot/errors.hpp"
#include "intlot/example_models.hpp"
#include "intlot/hedging.hpp"
#include "intlot/pricing.hpp"

using namespace intlot;
using namespace intlot::hedge;
using market::Claim;
using market::MarketModel;
namespace ex = intlot::examples;

namespace {
Scalar sqrt2s(const BigRat& c = BigRat(1)) { return Scalar::constant("sqrt2", c); }
}

TEST_CASE("gap model: classical superhedge costs a, at half a share") {
    HedgeResult h = real_hedge(ex::gap_model(), ex::gap_claim(), Direction::super);
    CHECK(h.price.rat() == BigRat(1, 4));
    CHECK(h.strategy.position(0, 1, 0).rat() == BigRat(1, 2));
    CHECK(h.status == HedgeStatus::certified_optimal);
}

TEST_CASE("sqrt2 claim: superhedge price 3*sqrt2 at the irrational position") {
    HedgeResult h = real_hedge(ex::sqrt2_model(), ex::sqrt2_claim_i(), Direction::super);
    CHECK(h.price == sqrt2s(BigRat(3)));
    CHECK(h.strategy.position(0, 1, 0) == sqrt2s());
    HedgeResult sub = real_hedge(ex::sqrt2_model(), ex::sqrt2_claim_i(), Direction::sub);
    CHECK(sub.price == sqrt2s());
}

TEST_CASE("zero claim superhedges for free") {
    Claim zero({Scalar(0), Scalar(0)});
    HedgeResult h = real_hedge(ex::gap_model(), zero, Direction::super);
    CHECK(h.price.rat().is_zero());
}

TEST_CASE("gap model integer superhedge costs twice the classical price") {
    HedgeResult h = integer_hedge(ex::gap_model(), ex::gap_claim(), Direction::super);
    CHECK(h.price.rat() == BigRat(1, 2));
    CHECK(h.status == HedgeStatus::certified_optimal);
    // Ties at phi in {0, 1} break to the lexicographically smallest.
    CHECK(h.strategy.position(0, 1, 0).rat().is_zero());
}

TEST_CASE("sqrt2 claim integer superhedge matches the enumeration oracle") {
    MarketModel m = ex::sqrt2_model();
    Claim c = ex::sqrt2_claim_i();
    NumericContext ctx = m.context();
    // Oracle: exhaustive scan of max(2*sqrt2 + phi, -phi, 4*sqrt2 - phi).
    Scalar best;
    bool first = true;
    for (long long phi = -10; phi <= 10; ++phi) {
        Scalar a = sqrt2s(BigRat(2)) + Scalar(BigRat(phi));
        Scalar b{BigRat(-phi)};
        Scalar d = sqrt2s(BigRat(4)) - Scalar(BigRat(phi));
        Scalar worst = a;
        if (Scalar::compare(b, worst, ctx) > 0) worst = b;
        if (Scalar::compare(d, worst, ctx) > 0) worst = d;
        if (first || Scalar::compare(worst, best, ctx) < 0) best = worst;
        first = false;
    }
    CHECK(best == Scalar::linear(BigRat(-1), {{"sqrt2", BigRat(4)}}));

    HedgeResult h = integer_hedge(m, c, Direction::super);
    CHECK(h.price == best);
    CHECK(h.strategy.position(0, 1, 0).rat() == BigRat(1));
}

TEST_CASE("no cheapest integer superhedge: value falls with the radius, never certified") {
    MarketModel m = ex::no_cheapest_model();
    Claim c = ex::no_cheapest_claim();
    NumericContext ctx = m.context();

    IntegerHedgePolicy p5;
    p5.radius = 5;
    HedgeResult h5 = integer_hedge(m, c, Direction::super, p5);
    CHECK(h5.status == HedgeStatus::optimal_within_radius);
    // Independent oracle at the small radius: full exact enumeration.
    {
        Scalar best;
        bool first = true;
        auto gains = market::discounted_gains(m);
        auto payoff = pricing::discounted_payoff(m, c);
        for (long long p1 = -5; p1 <= 5; ++p1)
            for (long long p2 = -5; p2 <= 5; ++p2) {
                Scalar worst;
                bool w1 = true;
                for (int s = 0; s < 2; ++s) {
                    Scalar v = payoff[static_cast<std::size_t>(s)];
                    v = v.add_scale(BigRat(-p1), gains[0][0][static_cast<std::size_t>(s)]);
                    v = v.add_scale(BigRat(-p2), gains[1][0][static_cast<std::size_t>(s)]);
                    if (w1 || Scalar::compare(v, worst, ctx) > 0) worst = v;
                    w1 = false;
                }
                if (first || Scalar::compare(worst, best, ctx) < 0) best = worst;
                first = false;
            }
        CHECK(h5.price == best);
    }

    IntegerHedgePolicy p50;
    p50.radius = 50;
    HedgeResult h50 = integer_hedge(m, c, Direction::super, p50);
    IntegerHedgePolicy p500;
    p500.radius = 500;
    HedgeResult h500 = integer_hedge(m, c, Direction::super, p500);

    for (const HedgeResult* h : {&h5, &h50, &h500}) {
        CHECK(h->status == HedgeStatus::optimal_within_radius);
        CHECK(Scalar::compare(h->price, Scalar(1), ctx) > 0);  // infimum 1, unattained
    }
    CHECK(Scalar::compare(h50.price, h5.price, ctx) < 0);
    CHECK(Scalar::compare(h500.price, h50.price, ctx) < 0);
    CHECK(h500.price.to_double(ctx) < 1.01);
}

TEST_CASE("integer hedging refuses arbitrage-ridden models") {
    MarketModel m;
    m.states = {"w1", "w2"};
    m.probabilities = {Scalar(BigRat(1, 2)), Scalar(BigRat(1, 2))};
    m.periods = 1;
    m.rate = Scalar(0);
    m.asset_names = {"S1"};
    m.prices = {{{Scalar(1), Scalar(1)}, {Scalar(2), Scalar(2)}}};
    m.filtration = MarketModel::default_filtration(2, 1);
    CHECK_THROWS_AS(real_hedge(m, Claim({Scalar(1), Scalar(1)}), Direction::super),
                    ModelHasIntegerArbitrage);
}

TEST_CASE("enumeration budget guard") {
    MarketModel m = ex::dense_model();
    IntegerHedgePolicy p;
    p.radius = 100;
    p.force_enumeration = true;
    CHECK_THROWS_AS(integer_hedge(m, ex::dense_claim(), Direction::super, p),
                    BudgetExceeded);
}

TEST_CASE("gap bound evaluates exactly on one-asset rational models") {
    CHECK(gap_bound(ex::gap_model()).rat() == BigRat(1, 4));
    // Equality case: integer premium meets the bound.
    HedgeResult real = real_hedge(ex::gap_model(), ex::gap_claim(), Direction::super);
    HedgeResult integer = integer_hedge(ex::gap_model(), ex::gap_claim(), Direction::super);
    CHECK((integer.price - real.price).rat() == BigRat(1, 4));
}

TEST_CASE("gap bound of a still market is zero") {
    MarketModel m = ex::gap_model();
    m.prices[0][1] = {Scalar(1), Scalar(1)};
    CHECK(gap_bound(m).rat().is_zero());
}

TEST_CASE("gap bound of the benchmark model") {
    Scalar b = gap_bound(ex::table1_model());
    CHECK(b.dbl() == doctest::Approx(104.436).epsilon(1e-3));
}

TEST_CASE("gap bound with two assets uses the sqrt2 constant when exact") {
    MarketModel m = ex::no_cheapest_model();
    NumericContext ctx = m.context();
    CHECK(gap_bound(m).to_double(ctx) == doctest::Approx(1.224745).epsilon(1e-6));
}

TEST_CASE("copies of the gap claim: the per-copy premium alternates") {
    auto rows = copies_scaling(ex::gap_model(), ex::gap_claim(), {1, 2, 3, 4, 5, 6});
    for (const auto& row : rows) {
        BigRat expected = BigRat(1, 4) * BigRat(row.copies % 2) / BigRat(row.copies);
        CHECK(row.gap.rat() == expected);
    }
}

TEST_CASE("integer-replicable claims scale with zero premium") {
    MarketModel m = ex::gap_model(BigRat(1, 2));  // moves (0, 2)
    Claim c({Scalar(0), Scalar(2)});
    auto rows = copies_scaling(m, c, {1, 2, 3});
    for (const auto& row : rows) CHECK(row.gap.rat().is_zero());
}

TEST_CASE("integer premium never beats the classical price and obeys the bound") {
    std::mt19937 rng(2718);
    int tested = 0;
    NumericContext ctx = NumericContext::exact_default();
    for (int iter = 0; iter < 250 && tested < 25; ++iter) {
        MarketModel m = testutil::random_rational_model(rng, 4, 2, 1);
        if (!arb::na_check(m).holds) continue;
        std::uniform_int_distribution<int> cv(0, 6);
        std::vector<Scalar> payoff;
        for (int s = 0; s < m.n(); ++s) payoff.emplace_back(BigRat(cv(rng), 2));
        Claim c{payoff};
        HedgeResult real = real_hedge(m, c, Direction::super);
        HedgeResult integer = integer_hedge(m, c, Direction::super);
        Scalar diff = integer.price - real.price;
        CHECK(diff.sign(ctx) >= 0);
        Scalar bound = gap_bound(m);
        if (bound.is_exact())
            CHECK(Scalar::compare(diff, bound, ctx) <= 0);
        else
            CHECK(diff.to_double(ctx) <= bound.to_double(ctx) + 1e-7);
        ++tested;
    }
    CHECK(tested >= 25);
}

TEST_CASE("integer superhedge price is nonincreasing in the radius") {
    MarketModel m = ex::no_cheapest_model();
    Claim c = ex::no_cheapest_claim();
    NumericContext ctx = m.context();
    Scalar prev;
    bool first = true;
    for (long long r : {2, 6, 18, 54}) {
        IntegerHedgePolicy p;
        p.radius = r;
        Scalar v = integer_hedge(m, c, Direction::super, p).price;
        if (!first) CHECK(Scalar::compare(v, prev, ctx) <= 0);
        prev = v;
        first = false;
    }
}

TEST_CASE("denominator-bounded superhedge of the sqrt2 claim at window ten") {
    MarketModel m = ex::sqrt2_model();
    Claim c = ex::sqrt2_claim_i();
    NumericContext ctx = m.context();
    HedgeResult h = rational_denominator_superhedge(m, c, BigInt(10));
    CHECK(h.denominator.to_int64() == 1);
    CHECK(h.strategy.position(0, 1, 0).rat() == BigRat(1));
    CHECK_FALSE(h.buffer_bumped);
    // Cushion 10^(-1/6) * ln 10, up to the deliberate rational rounding.
    double cushion = h.buffer.to_double(ctx);
    CHECK(cushion == doctest::Approx(1.5687).epsilon(1e-3));
    // Price: 3*sqrt2 + cushion + (1 - sqrt2) * 2.
    double expect = 3 * 1.41421356 + cushion + (1 - 1.41421356) * 2;
    CHECK(h.price.to_double(ctx) == doctest::Approx(expect).epsilon(1e-9));
    // Superhedging already verified inside; check the class and bound.
    CHECK(h.cls == market::StrategyClass::rational_cls);
}

TEST_CASE("denominator-bounded superhedge approaches the classical price") {
    MarketModel m = ex::sqrt2_model();
    Claim c = ex::sqrt2_claim_i();
    NumericContext ctx = m.context();
    double base = 3 * 1.4142135623730951;
    double prev = 1e9;
    for (long long n : {1000LL, 1000000LL, 1000000000LL}) {
        HedgeResult h = rational_denominator_superhedge(m, c, BigInt(n));
        double price = h.price.to_double(ctx);
        CHECK(price < prev);
        CHECK(price > base);
        prev = price;
    }
    CHECK(prev - base < 0.7);
}

TEST_CASE("rational eps-hedge certifies a near-optimal rational superhedge") {
    MarketModel m = ex::sqrt2_model();
    Claim c = ex::sqrt2_claim_i();
    NumericContext ctx = m.context();
    HedgeResult h = rational_eps_hedge(m, c, Direction::super, BigRat(1, 100));
    CHECK(h.status == HedgeStatus::epsilon_approximate);
    CHECK(h.strategy.position(0, 1, 0).is_rational());
    Scalar excess = h.price - sqrt2s(BigRat(3));
    CHECK(excess.sign(ctx) > 0);
    CHECK(Scalar::compare(excess, Scalar(BigRat(1, 100)), ctx) <= 0);
    // Rational data short-circuits.
    HedgeResult g = rational_eps_hedge(ex::gap_model(), ex::gap_claim(), Direction::super,
                                       BigRat(1, 10));
    CHECK(g.price.rat() == BigRat(1, 4));
    CHECK(g.buffer.exact_zero());
}
