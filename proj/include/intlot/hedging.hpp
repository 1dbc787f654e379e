#pragma once

#include "intlot/market.hpp"

#include <optional>
#include <vector>

namespace intlot::hedge {

enum class Direction { super, sub };

enum class HedgeStatus { certified_optimal, optimal_within_radius, epsilon_approximate };

struct HedgeResult {
    Direction direction = Direction::super;
    market::StrategyClass cls = market::StrategyClass::real_cls;
    Scalar price;
    market::Strategy strategy;
    HedgeStatus status = HedgeStatus::certified_optimal;
    long long radius = 0;        // search box for integer hedges
    BigInt denominator = BigInt(1);
    Scalar buffer = Scalar(0);   // bank cushion of approximate hedges
    bool buffer_bumped = false;  // exact verification had to raise the cushion
    bool float_mode = false;
    bool nia_inconclusive = false;
};

/// Cheapest real superhedge (most expensive subhedge) by linear
/// programming; the price equals the corresponding endpoint of the
/// integer-arbitrage-free envelope.
HedgeResult real_hedge(const market::MarketModel& m, const market::Claim& c,
                       Direction direction);

/// Rational strategy within eps of the real hedge: the LP solution
/// itself when it is rational, else a Dirichlet rounding plus a bank
/// cushion, verified exactly.
HedgeResult rational_eps_hedge(const market::MarketModel& m, const market::Claim& c,
                               Direction direction, const BigRat& eps);

struct IntegerHedgePolicy {
    std::optional<long long> radius;       // default derived from the real hedge
    bool force_enumeration = false;        // skip branch-and-bound on rational data
};

/// Optimal integer-position hedge over a coordinate box: exact
/// branch-and-bound on rational data, exhaustive enumeration with exact
/// sign evaluation otherwise. Non-attainment shows up as a value that
/// keeps falling as the box grows; the status never over-claims.
HedgeResult integer_hedge(const market::MarketModel& m, const market::Claim& c,
                          Direction direction, const IntegerHedgePolicy& policy = {});

/// Claim-independent bound on the integer superhedging premium:
/// half sqrt(d) times the largest state-wise sum of gain norms.
Scalar gap_bound(const market::MarketModel& m);

struct CopiesRow {
    long long copies;
    Scalar per_copy_price;
    Scalar gap;  // per-copy price minus the classical superhedging price
};

/// Integer superhedging of N identical claims, per copy.
std::vector<CopiesRow> copies_scaling(const market::MarketModel& m, const market::Claim& c,
                                      const std::vector<long long>& copies,
                                      const IntegerHedgePolicy& policy = {});

/// Superhedge with rational positions whose denominators stay below N:
/// Dirichlet approximation of the cheapest real superhedge plus a
/// vanishing bank cushion, verified exactly state by state.
HedgeResult rational_denominator_superhedge(const market::MarketModel& m,
                                            const market::Claim& c, const BigInt& N);

} // namespace intlot::hedge
