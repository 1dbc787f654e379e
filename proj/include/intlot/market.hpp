#pragma once

#include "intlot/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace intlot::market {

/// Finite market: states, filtration, riskless rate, and d risky assets
/// on T trading periods. The riskless price is (1+r)^t; prices are
/// adapted; every state carries positive probability.
struct MarketModel {
    std::vector<std::string> states;
    std::vector<Scalar> probabilities;
    int periods = 1;  // T
    Scalar rate = Scalar(0);
    std::vector<std::string> asset_names;
    /// prices[asset j][time t in 0..T][state]
    std::vector<std::vector<std::vector<Scalar>>> prices;
    /// filtration[t]: partition of {0..n-1} into blocks of state indices
    std::vector<std::vector<std::vector<int>>> filtration;
    std::map<std::string, std::string> constants;
    double zero_tolerance = 1e-9;

    int n() const { return static_cast<int>(states.size()); }
    int d() const { return static_cast<int>(prices.size()); }
    bool is_exact() const;
    NumericContext context() const;

    /// Index of the filtration[t] block containing the state.
    int block_of(int t, int state) const;
    int num_blocks(int t) const { return static_cast<int>(filtration[static_cast<std::size_t>(t)].size()); }
    /// (1+r)^t
    Scalar discount_factor(int t) const;
    Scalar discounted_price(int asset, int t, int state) const;

    /// Standard filtration for when none is supplied: trivial at 0,
    /// discrete from time 1 on.
    static std::vector<std::vector<std::vector<int>>> default_filtration(int n, int T);
};

enum class StrategyClass { integer_cls, rational_cls, real_cls };

/// Predictable risky positions; the bank leg is always derived from the
/// self-financing identity, never stored.
struct Strategy {
    StrategyClass cls = StrategyClass::real_cls;
    /// positions[asset j][period t-1][block of filtration[t-1]]
    std::vector<std::vector<std::vector<Scalar>>> positions;
    Scalar initial_value = Scalar(0);

    static Strategy zero(const MarketModel& m, StrategyClass cls);
    /// One value per asset, held over every period and block.
    static Strategy constant_positions(const MarketModel& m,
                                       const std::vector<Scalar>& phi,
                                       Scalar initial, StrategyClass cls);
    Scalar position(int asset, int t, int block) const;
    Strategy scaled(const BigRat& c) const;
};

struct Claim {
    std::vector<Scalar> payoff;
    Claim() = default;
    explicit Claim(std::vector<Scalar> p) : payoff(std::move(p)) {}
    Claim scaled(const BigRat& c) const;
};

struct ValueProcess {
    /// value[t][state] and discounted[t][state], t in 0..T
    std::vector<std::vector<Scalar>> value;
    std::vector<std::vector<Scalar>> discounted;
    /// bank[t-1][block of filtration[t-1]]: derived riskless positions
    std::vector<std::vector<Scalar>> bank;
};

struct Violation {
    std::string code;
    std::string message;
    int asset = -1, time = -1, block = -1;
};

std::vector<Violation> validate_model(const MarketModel& m);
void require_valid(const MarketModel& m);

/// Discounted one-period gains: gains[asset][period t-1][state].
std::vector<std::vector<std::vector<Scalar>>> discounted_gains(const MarketModel& m);

ValueProcess value_process(const MarketModel& m, const Strategy& s);

/// Smallest positive integer N with N*positions integral, and the
/// scaled strategy (initial value scales along).
std::pair<BigInt, Strategy> clear_denominators(const Strategy& s);

struct ArbitrageCheck {
    bool is_arbitrage = false;
    Scalar initial_value;
    std::vector<Scalar> terminal_values;
};

ArbitrageCheck verify_arbitrage(const MarketModel& m, const Strategy& s,
                                const NumericContext& ctx);

/// Integer approximation of a real strategy with a common scale q:
/// positions within q^(-1/(nd(T+1))) of q*phi, initial value exactly
/// q*V0, the error bound itself below eps.
struct DirichletStrategy {
    BigInt q;
    Strategy strategy;
};

DirichletStrategy dirichlet_strategy_approx(const MarketModel& m, const Strategy& s,
                                            const BigRat& eps);

/// Decide |value| < q^(-1/m) with certified precision escalation;
/// exact when value is rational.
bool abs_less_inverse_root(const Scalar& value, const BigInt& q, int m,
                           const NumericContext& ctx);

} // namespace intlot::market
