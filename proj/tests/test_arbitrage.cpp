#include "doctest.h"

#include "helpers.hpp"
#include "intlot/arbitrage.hpp"
#include "intlot/errors.hpp"
#include "intlot/example_models.hpp"

using namespace intlot;
using namespace intlot::arb;
using market::MarketModel;
using market::Strategy;
using market::StrategyClass;
namespace ex = intlot::examples;

namespace {

MarketModel single_state_model() {
    MarketModel m;
    m.states = {"w1"};
    m.probabilities = {Scalar(1)};
    m.periods = 1;
    m.rate = Scalar(0);
    m.asset_names = {"S1"};
    m.prices = {{{Scalar(3)}, {Scalar(3)}}};
    m.filtration = MarketModel::default_filtration(1, 1);
    return m;
}

MarketModel sure_gain_model() {
    MarketModel m;
    m.states = {"w1", "w2"};
    m.probabilities = {Scalar(BigRat(1, 2)), Scalar(BigRat(1, 2))};
    m.periods = 1;
    m.rate = Scalar(0);
    m.asset_names = {"S1"};
    m.prices = {{{Scalar(1), Scalar(1)}, {Scalar(2), Scalar(2)}}};
    m.filtration = MarketModel::default_filtration(2, 1);
    return m;
}

MarketModel extended_empty_pi() {
    MarketModel m = ex::empty_pi_model();
    m.asset_names.push_back("X");
    m.prices.push_back(
        {{Scalar(0), Scalar(0), Scalar(0)}, {Scalar(0), Scalar(0), Scalar(1)}});
    return m;
}

} // namespace

TEST_CASE("three-state single-asset model satisfies classical no-arbitrage") {
    NaReport rep = na_check(ex::sqrt2_model());
    CHECK(rep.holds);
    CHECK(rep.support.excluded.empty());
    CHECK(rep.support.measure_exact);
    // Full-support witness measure with q1 = 1/2.
    CHECK(rep.support.witness_measure[0] == BigRat(1, 2));
    CHECK(rep.support.witness_measure[1].sign() > 0);
    CHECK(rep.support.witness_measure[2].sign() > 0);
}

TEST_CASE("pi-linked model: NA fails with the irrational hedge as witness") {
    MarketModel m = ex::empty_pi_model();
    NaReport rep = na_check(m);
    CHECK_FALSE(rep.holds);
    REQUIRE(rep.support.excluded == std::vector<int>{2});
    // Unique martingale measure (1/3, 2/3, 0), exactly certified.
    REQUIRE(rep.support.measure_exact);
    CHECK(rep.support.witness_measure ==
          std::vector<BigRat>{BigRat(1, 3), BigRat(2, 3), BigRat(0)});
    // Real witness proportional to (-1, pi): zero value off w3, positive there.
    REQUIRE(rep.witness.has_value());
    NumericContext ctx = m.context();
    auto check = market::verify_arbitrage(m, *rep.witness, ctx);
    CHECK(check.is_arbitrage);
    CHECK(check.terminal_values[0].exact_zero());
    CHECK(check.terminal_values[1].exact_zero());
    CHECK(check.terminal_values[2].sign(ctx) > 0);
    Scalar p1 = rep.witness->position(0, 1, 0);
    Scalar p2 = rep.witness->position(1, 1, 0);
    auto ratio = p2.rational_ratio_to(Scalar::mul(p1, Scalar::constant("pi", BigRat(-1))));
    REQUIRE(ratio.has_value());
    CHECK(*ratio == BigRat(1));
}

TEST_CASE("single-state model holds trivially; sure gain fails with empty polytope") {
    CHECK(na_check(single_state_model()).holds);
    NaReport rep = na_check(sure_gain_model());
    CHECK_FALSE(rep.holds);
    CHECK(rep.support.polytope_empty);
}

TEST_CASE("no-integer-free-lunch mirrors the classical verdict") {
    CHECK(nifl_check(ex::sqrt2_model()).holds);
    NaReport rep = nifl_check(ex::empty_pi_model());
    CHECK_FALSE(rep.holds);
    CHECK(rep.note.find("no integer free lunch") != std::string::npos);
}

TEST_CASE("pi-linked model has no integer arbitrage despite failing NA") {
    ArbitrageReport rep = nia_check(ex::empty_pi_model());
    CHECK(rep.verdict == Verdict::holds);
    CHECK(rep.support.excluded == std::vector<int>{2});
    CHECK(rep.note.find("zero-gain") != std::string::npos);
}

TEST_CASE("extending the pi-linked model by the free claim creates integer arbitrage") {
    MarketModel m = extended_empty_pi();
    ArbitrageReport rep = nia_check(m);
    REQUIRE(rep.verdict == Verdict::fails);
    REQUIRE(rep.witness.has_value());
    NumericContext ctx = m.context();
    CHECK(market::verify_arbitrage(m, *rep.witness, ctx).is_arbitrage);
    CHECK(rep.witness->position(0, 1, 0).exact_zero());
    CHECK(rep.witness->position(1, 1, 0).exact_zero());
    CHECK(rep.witness->position(2, 1, 0).rat() == BigRat(1));
}

TEST_CASE("sure gain is integer arbitrage even though the polytope is empty") {
    MarketModel m = sure_gain_model();
    ArbitrageReport rep = nia_check(m);
    REQUIRE(rep.verdict == Verdict::fails);
    REQUIRE(rep.witness.has_value());
    NumericContext ctx = m.context();
    CHECK(market::verify_arbitrage(m, *rep.witness, ctx).is_arbitrage);
    CHECK(rep.witness->position(0, 1, 0).rat().is_integer());
    CHECK(rep.witness->position(0, 1, 0).rat().sign() > 0);
}

TEST_CASE("two-period dense model passes the integer arbitrage check") {
    ArbitrageReport rep = nia_check(ex::dense_model());
    CHECK(rep.verdict == Verdict::holds);
    CHECK(rep.support.excluded == std::vector<int>{3});
}

TEST_CASE("pi-priced pair model with dead third state keeps NIA") {
    ArbitrageReport rep = nia_check(ex::corollary_model());
    CHECK(rep.verdict == Verdict::holds);
}

TEST_CASE("complete sqrt2 model holds classically hence for integers") {
    CHECK(na_check(ex::no_cheapest_model()).holds);
    CHECK(nia_check(ex::no_cheapest_model()).verdict == Verdict::holds);
}

TEST_CASE("rational models: integer and classical verdicts coincide") {
    std::mt19937 rng(404);
    int fails_seen = 0;
    for (int iter = 0; iter < 40; ++iter) {
        MarketModel m = testutil::random_rational_model(rng);
        NaReport na = na_check(m);
        ArbitrageReport nia = nia_check(m);
        CHECK((nia.verdict == Verdict::holds) == na.holds);
        if (nia.verdict == Verdict::fails) {
            ++fails_seen;
            REQUIRE(nia.witness.has_value());
            NumericContext ctx = m.context();
            CHECK(market::verify_arbitrage(m, *nia.witness, ctx).is_arbitrage);
        }
    }
    CHECK(fails_seen > 5);  // the generator must produce both kinds
}

TEST_CASE("single-asset models: NIA equals NA also with irrational prices") {
    // Falling sqrt2-priced asset: NA fails, and the +/-1 normalization
    // must find the integer witness.
    MarketModel m;
    m.states = {"w1", "w2"};
    m.probabilities = {Scalar(BigRat(1, 2)), Scalar(BigRat(1, 2))};
    m.periods = 1;
    m.rate = Scalar(0);
    m.asset_names = {"S1"};
    m.prices = {{{Scalar::constant("sqrt2"), Scalar::constant("sqrt2")},
                 {Scalar::constant("sqrt2", BigRat(1, 2)), Scalar::constant("sqrt2")}}};
    m.filtration = MarketModel::default_filtration(2, 1);
    ArbitrageReport rep = nia_check(m);
    REQUIRE(rep.verdict == Verdict::fails);
    CHECK(rep.witness->position(0, 1, 0).rat() == BigRat(-1));
}

TEST_CASE("zero gain space of the pi-priced pair model") {
    MarketModel m = ex::corollary_model();
    std::vector<Scalar> q = {Scalar(BigRat(1, 2)), Scalar(BigRat(1, 2)), Scalar(0)};
    ZeroGainSpace zg = zero_gain_space(m, q);
    CHECK(zg.status == LatticeStatus::only_trivial_integer);
    REQUIRE(zg.basis.size() == 1);
    // Basis direction (-pi, 1) up to scale.
    Scalar b1 = zg.basis[0].position(0, 1, 0);
    Scalar b2 = zg.basis[0].position(1, 1, 0);
    auto ratio = b1.rational_ratio_to(Scalar::mul(b2, Scalar::constant("pi", BigRat(-1))));
    REQUIRE(ratio.has_value());
    CHECK(*ratio == BigRat(1));
    // Basis vectors have zero value on the support.
    NumericContext ctx = m.context();
    auto vp = market::value_process(m, zg.basis[0]);
    CHECK(vp.value[1][0].sign(ctx) == 0);
    CHECK(vp.value[1][1].sign(ctx) == 0);
}

TEST_CASE("zero gain space under a full-support measure of an NA model is trivial") {
    MarketModel m = ex::gap_model();
    std::vector<Scalar> q = {Scalar(BigRat(1, 2)), Scalar(BigRat(1, 2))};
    ZeroGainSpace zg = zero_gain_space(m, q);
    CHECK(zg.basis.empty());
    CHECK(zg.status == LatticeStatus::only_trivial_integer);
}

TEST_CASE("zero gain space of the dense model ignores value-null directions") {
    MarketModel m = ex::dense_model();
    std::vector<Scalar> q = {Scalar(BigRat(1, 2)), Scalar(BigRat(1, 4)),
                             Scalar(BigRat(1, 4)), Scalar(0)};
    ZeroGainSpace zg = zero_gain_space(m, q);
    // Second-period positions are value-free (prices stand still), so the
    // space is nontrivial as a set but integer-trivial in value.
    CHECK(zg.status == LatticeStatus::only_trivial_integer);
    CHECK_FALSE(zg.basis.empty());
}

TEST_CASE("zero gain space flags a nontrivial integer element of the extension") {
    MarketModel m = extended_empty_pi();
    std::vector<Scalar> q = {Scalar(BigRat(1, 3)), Scalar(BigRat(2, 3)), Scalar(0)};
    ZeroGainSpace zg = zero_gain_space(m, q);
    REQUIRE(zg.status == LatticeStatus::nontrivial_integer_found);
    REQUIRE(zg.integer_witness.has_value());
    CHECK(zg.integer_witness->position(2, 1, 0).rat().abs() == BigRat(1));
}

TEST_CASE("zero gain space rejects non-martingale measures") {
    MarketModel m = ex::gap_model();
    std::vector<Scalar> q = {Scalar(BigRat(3, 4)), Scalar(BigRat(1, 4))};
    CHECK_THROWS_AS(zero_gain_space(m, q), NotMartingaleMeasure);
}

TEST_CASE("maximal-support membership") {
    MarketModel m = ex::empty_pi_model();
    CHECK(qmax_membership(m, {Scalar(BigRat(1, 3)), Scalar(BigRat(2, 3)), Scalar(0)}));
    CHECK_FALSE(qmax_membership(
        m, {Scalar(BigRat(1, 3)), Scalar(BigRat(1, 3)), Scalar(BigRat(1, 3))}));
    // The na_check witness measure is a member by construction.
    NaReport rep = na_check(m);
    std::vector<Scalar> w;
    for (const auto& v : rep.support.witness_measure) w.emplace_back(v);
    CHECK(qmax_membership(m, w));
    // Full-support measures on an NA model: membership iff martingale.
    MarketModel g = ex::gap_model();
    CHECK(qmax_membership(g, {Scalar(BigRat(1, 2)), Scalar(BigRat(1, 2))}));
    CHECK_FALSE(qmax_membership(g, {Scalar(BigRat(1, 4)), Scalar(BigRat(3, 4))}));
}

TEST_CASE("membership candidates vanishing off the maximal support are scrutinized") {
    // Vertices produced by the per-state mass maximization: whenever the
    // zero-gain test accepts them, they charge no excluded state.
    std::mt19937 rng(777);
    for (int iter = 0; iter < 25; ++iter) {
        MarketModel m = testutil::random_rational_model(rng, 4, 2, 1);
        NaReport rep = na_check(m);
        if (rep.support.polytope_empty || !rep.support.measure_exact) continue;
        ZeroGainDecision dec = zero_gain_decision(m, rep.support.witness_measure);
        if (dec.decided && !dec.has_arbitrage) {
            for (int a : rep.support.excluded)
                CHECK(rep.support.witness_measure[static_cast<std::size_t>(a)].is_zero());
        }
    }
}

TEST_CASE("rationalizing a real arbitrage on rational data") {
    MarketModel m = sure_gain_model();
    Strategy real = Strategy::constant_positions(m, {Scalar::real(0.7)}, Scalar::real(0.0),
                                                 StrategyClass::real_cls);
    // The witness shares the strict states and clears to integers.
    MarketModel mf = m;  // rational model, real-valued witness is fine
    Strategy got = rationalize_arbitrage(mf, real);
    NumericContext ctx = m.context();
    CHECK(market::verify_arbitrage(m, got, ctx).is_arbitrage);
    CHECK(got.position(0, 1, 0).rat().is_integer());
}

TEST_CASE("single-asset rationalization normalizes to unit positions") {
    MarketModel m;
    m.states = {"w1", "w2"};
    m.probabilities = {Scalar(BigRat(1, 2)), Scalar(BigRat(1, 2))};
    m.periods = 1;
    m.rate = Scalar(0);
    m.asset_names = {"S1"};
    m.prices = {{{Scalar(1), Scalar(1)}, {Scalar(BigRat(1, 2)), Scalar(BigRat(1, 2))}}};
    m.filtration = MarketModel::default_filtration(2, 1);
    Strategy real = Strategy::constant_positions(m, {Scalar(BigRat(-2, 3))}, Scalar(0),
                                                 StrategyClass::real_cls);
    Strategy got = rationalize_arbitrage(m, real);
    CHECK(got.position(0, 1, 0).rat() == BigRat(-1));
}

TEST_CASE("random rational arbitrage models always rationalize") {
    std::mt19937 rng(99);
    int produced = 0;
    for (int iter = 0; iter < 60 && produced < 12; ++iter) {
        MarketModel m = testutil::random_rational_model(rng, 4, 2, 1);
        NaReport na = na_check(m);
        if (na.holds || !na.witness) continue;
        Strategy got = rationalize_arbitrage(m, *na.witness);
        NumericContext ctx = m.context();
        CHECK(market::verify_arbitrage(m, got, ctx).is_arbitrage);
        ++produced;
    }
    CHECK(produced >= 12);
}
