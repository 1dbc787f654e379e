#pragma once

#include "intlot/arbitrage.hpp"
#include "intlot/market.hpp"

namespace intlot::pricing {

enum class Openness { open, closed, unknown };

struct PriceInterval {
    Scalar lo, hi;
    Openness lo_open = Openness::unknown;
    Openness hi_open = Openness::unknown;
    bool empty = false;       // set only when emptiness is proven
    bool replicable = false;  // lo == hi
    enum class Provenance { classical, nia_envelope } provenance = Provenance::classical;
    bool exact = false;       // endpoints carried exactly
    bool budget_flag = false; // the integer no-arbitrage check was inconclusive
};

/// Classical price bounds: extrema of the discounted expectation over
/// the closed martingale polytope. Requires classical no-arbitrage;
/// endpoints are open unless the claim is replicable.
PriceInterval classical_price_bounds(const market::MarketModel& m, const market::Claim& c);

/// Envelope of integer-arbitrage-free prices: extrema over martingale
/// measures vanishing on the excluded set. The price set itself is
/// empty or dense in this interval; endpoint membership is resolved
/// separately (one period only).
PriceInterval nia_price_interval(const market::MarketModel& m, const market::Claim& c);

enum class Membership { member, not_member, unknown_within_budget };

struct MembershipResult {
    Membership verdict = Membership::unknown_within_budget;
    std::optional<market::Strategy> witness;  // integer arbitrage on the extension
    std::string note;
};

/// One-period membership of p in the integer-arbitrage-free price set:
/// interior points are members outright; endpoints are decided by the
/// integer-arbitrage analysis of the uniquely determined extension.
MembershipResult price_membership(const market::MarketModel& m, const market::Claim& c,
                                  const Scalar& p, const arb::SearchPolicy& policy = {});

/// Append the candidate price process as an extra asset and run the
/// integer-arbitrage check on the extended market.
arb::ArbitrageReport extension_nia_check(const market::MarketModel& m,
                                         const market::Claim& c,
                                         const std::vector<std::vector<Scalar>>& process,
                                         const arb::SearchPolicy& policy = {});

/// The extended market itself (asset name defaults to "X").
market::MarketModel extend_model(const market::MarketModel& m,
                                 const std::vector<std::vector<Scalar>>& process,
                                 const std::string& name = "X");

/// Discounted payoff as an LP objective.
std::vector<Scalar> discounted_payoff(const market::MarketModel& m,
                                      const market::Claim& c);

} // namespace intlot::pricing
