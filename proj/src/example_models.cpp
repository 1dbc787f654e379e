#include "intlot/example_models.hpp"

namespace intlot::examples {

using market::Claim;
using market::MarketModel;

namespace {

Scalar sqrt2(const BigRat& c = BigRat(1)) { return Scalar::constant("sqrt2", c); }
Scalar pi(const BigRat& c = BigRat(1)) { return Scalar::constant("pi", c); }

MarketModel base(int n, int T) {
    MarketModel m;
    for (int i = 1; i <= n; ++i) m.states.push_back("w" + std::to_string(i));
    for (int i = 0; i < n; ++i) m.probabilities.push_back(Scalar(BigRat(1, n)));
    m.periods = T;
    m.rate = Scalar(0);
    m.filtration = MarketModel::default_filtration(n, T);
    return m;
}

} // namespace

MarketModel gap_model(const BigRat& a) {
    MarketModel m = base(2, 1);
    m.asset_names = {"S1"};
    m.prices = {{{Scalar(1), Scalar(1)},
                 {Scalar(BigRat(1) - a - a), Scalar(BigRat(1) + a + a)}}};
    return m;
}

Claim gap_claim(const BigRat& a) { return Claim({Scalar(0), Scalar(a + a)}); }

MarketModel sqrt2_model() {
    MarketModel m = base(3, 1);
    m.asset_names = {"S1"};
    m.prices = {{{Scalar(2), Scalar(2), Scalar(2)}, {Scalar(1), Scalar(3), Scalar(3)}}};
    return m;
}

Claim sqrt2_claim_i() { return Claim({sqrt2(BigRat(2)), Scalar(0), sqrt2(BigRat(4))}); }
Claim sqrt2_claim_ii() { return Claim({sqrt2(BigRat(2)), Scalar(0), sqrt2(BigRat(2))}); }
Claim sqrt2_claim_iii() { return Claim({Scalar(0), Scalar(0), sqrt2(BigRat(2))}); }
Claim sqrt2_claim_iv() { return Claim({Scalar(0), Scalar(0), Scalar(2)}); }

MarketModel empty_pi_model() {
    MarketModel m = base(3, 1);
    m.asset_names = {"S1", "S2"};
    m.prices = {{{pi(), pi(), pi()}, {pi(BigRat(2)), pi(BigRat(1, 2)), pi()}},
                {{Scalar(1), Scalar(1), Scalar(1)},
                 {Scalar(2), Scalar(BigRat(1, 2)), Scalar(2)}}};
    return m;
}

Claim empty_pi_claim() { return Claim({Scalar(0), Scalar(0), Scalar(1)}); }

MarketModel dense_model() {
    MarketModel m = base(4, 2);
    m.filtration = {{{0, 1, 2, 3}}, {{0}, {1, 2}, {3}}, {{0}, {1}, {2}, {3}}};
    m.asset_names = {"S1", "S2"};
    std::vector<Scalar> s1 = {Scalar(BigRat(3, 2)), Scalar(BigRat(1, 2)),
                              Scalar(BigRat(1, 2)), Scalar(1)};
    std::vector<Scalar> s2 = {pi(BigRat(3, 2)), pi(BigRat(1, 2)), pi(BigRat(1, 2)),
                              Scalar::linear(BigRat(1), {{"pi", BigRat(1)}})};
    m.prices = {{{Scalar(1), Scalar(1), Scalar(1), Scalar(1)}, s1, s1},
                {{pi(), pi(), pi(), pi()}, s2, s2}};
    return m;
}

Claim dense_claim() { return Claim({Scalar(0), Scalar(1), Scalar(0), Scalar(0)}); }

MarketModel no_cheapest_model() {
    MarketModel m = base(2, 1);
    m.asset_names = {"S1", "S2"};
    m.prices = {{{Scalar(2), Scalar(2)}, {Scalar(3), Scalar(1)}},
                {{Scalar(2), Scalar(2)},
                 {Scalar::linear(BigRat(2), {{"sqrt2", BigRat(-1)}}),
                  Scalar::linear(BigRat(2), {{"sqrt2", BigRat(1)}})}}};
    return m;
}

Claim no_cheapest_claim() {
    return Claim({Scalar::linear(BigRat(1), {{"sqrt2", BigRat(-1, 2)}}),
                  Scalar::linear(BigRat(1), {{"sqrt2", BigRat(1, 2)}})});
}

MarketModel table1_model() {
    MarketModel m = base(4, 1);
    m.probabilities = table1_pstar();
    m.asset_names = {"S1", "S2"};
    m.prices = {{{Scalar(10), Scalar(10), Scalar(10), Scalar(10)},
                 {Scalar(1), Scalar(1), Scalar(10), Scalar(109)}},
                {{Scalar(110), Scalar(110), Scalar(110), Scalar(110)},
                 {Scalar(120), Scalar(111), Scalar(114), Scalar(BigRat(2, 5))}}};
    return m;
}

Claim table1_claim() { return Claim({Scalar(0), Scalar(7), Scalar(1), Scalar(8)}); }

std::vector<Scalar> table1_pstar() {
    return {Scalar(BigRat(37, 100)), Scalar(BigRat(18, 100)), Scalar(BigRat(2, 5)),
            Scalar(BigRat(1, 20))};
}

MarketModel corollary_model() {
    MarketModel m = base(3, 1);
    m.asset_names = {"S1", "S2"};
    m.prices = {{{Scalar(1), Scalar(1), Scalar(1)},
                 {Scalar(BigRat(3, 2)), Scalar(BigRat(1, 2)), Scalar(1)}},
                {{pi(), pi(), pi()}, {pi(BigRat(3, 2)), pi(BigRat(1, 2)), Scalar(1)}}};
    return m;
}

} // namespace intlot::examples
