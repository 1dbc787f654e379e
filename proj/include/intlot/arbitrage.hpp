#pragma once

#include "intlot/market.hpp"

#include <optional>
#include <string>
#include <vector>

namespace intlot::arb {

/// The support structure of the martingale-measure polytope: the states
/// `excluded` carry no mass under any martingale measure; the witness
/// measure has support exactly on the complement.
struct SupportProfile {
    std::vector<int> excluded;             // the set A
    std::vector<BigRat> witness_measure;   // empty when the polytope is empty
    std::vector<Scalar> max_mass;          // per state
    bool polytope_empty = false;
    bool measure_exact = false;   // witness measure verified in exact arithmetic
    bool exact_lp = false;        // the polytope LPs themselves ran exactly
};

struct NaReport {
    bool holds = false;
    SupportProfile support;
    std::optional<market::Strategy> witness;  // real arbitrage when NA fails
    bool witness_exact = false;
    std::string note;
};

/// Classical no-arbitrage: per-state maximal martingale mass; NA holds
/// iff every state is chargeable. Also assembles the witness measure
/// and, on failure, a real arbitrage from certificate multipliers.
NaReport na_check(const market::MarketModel& m);

/// No integer free lunch coincides with NA on finite state spaces;
/// reported through the same computation.
NaReport nifl_check(const market::MarketModel& m);

enum class Verdict { holds, fails, no_witness_within_budget };

struct SearchPolicy {
    long long radius = 50;  // per-period coordinate box for integer witnesses
};

struct ArbitrageReport {
    std::string property;
    Verdict verdict = Verdict::no_witness_within_budget;
    std::optional<market::Strategy> witness;
    long long radius_used = 0;
    SupportProfile support;
    std::string note;
};

/// No-integer-arbitrage. Decision routes, in order: NA holds; rational
/// data (equivalence with NA, witness by strict feasibility and
/// denominator clearing); one risky asset (sign normalization); exact
/// zero-gain analysis against a certified martingale measure; bounded
/// one-period integer search.
ArbitrageReport nia_check(const market::MarketModel& m, const SearchPolicy& policy = {});

/// From a real arbitrage on rational data, produce an integer one
/// sharing a strictly profitable state.
market::Strategy rationalize_arbitrage(const market::MarketModel& m,
                                       const market::Strategy& real_witness);

enum class LatticeStatus { only_trivial_integer, nontrivial_integer_found,
                           unknown_within_budget };

struct ZeroGainSpace {
    /// Basis of the real space of strategies with zero initial value and
    /// Q-a.s. zero terminal value, as position vectors per variable slot.
    std::vector<market::Strategy> basis;
    LatticeStatus status = LatticeStatus::unknown_within_budget;
    std::optional<market::Strategy> integer_witness;
    bool basis_exact = true;
};

/// The zero-initial-value, Q-a.s.-zero-gain strategy space and the
/// integer-triviality decision behind the NIA construction criterion.
ZeroGainSpace zero_gain_space(const market::MarketModel& m, const std::vector<Scalar>& q);

/// True iff q is a martingale measure supported exactly off the set A.
bool qmax_membership(const market::MarketModel& m, const std::vector<Scalar>& q);

// ---- internals shared with the pricing and hedging modules ----------

/// Flat indexing of predictable position slots (asset, period, block).
struct StrategyVars {
    struct Slot {
        int asset, period, block;
    };
    std::vector<Slot> slots;
    static StrategyVars make(const market::MarketModel& m);
    int count() const { return static_cast<int>(slots.size()); }
    market::Strategy to_strategy(const market::MarketModel& m,
                                 const std::vector<Scalar>& values, Scalar initial,
                                 market::StrategyClass cls) const;
};

/// One-step martingale constraint rows, one per (asset, period, block):
/// coefficients over states, with the best rational normalization.
struct MartingaleRow {
    int asset, period, block;
    std::vector<Scalar> coeffs;            // per state
    std::vector<BigRat> rational_coeffs;   // populated when normalizable
    Scalar direction;                      // coeffs = direction * rational_coeffs
    bool normalizable = false;
    bool zero = false;
};

std::vector<MartingaleRow> martingale_rows(const market::MarketModel& m);

/// Decompose an exact scalar over {1} + declared constants.
std::map<std::string, BigRat> scalar_slices(const Scalar& s);

/// Nullspace basis of a rational matrix (rows x nvars).
std::vector<std::vector<BigRat>> rational_nullspace(
    const std::vector<std::vector<BigRat>>& rows, int nvars);

/// Exact NIA decision attempt given a certified martingale measure:
/// verdict plus an optional integer witness. `decided` is false when
/// the qualifying question needs more than a one-dimensional quotient.
struct ZeroGainDecision {
    bool decided = false;
    bool has_arbitrage = false;
    std::optional<market::Strategy> witness;
    int quotient_dim = 0;
    int null_dim = 0;
};

ZeroGainDecision zero_gain_decision(const market::MarketModel& m,
                                    const std::vector<BigRat>& measure);

} // namespace intlot::arb
