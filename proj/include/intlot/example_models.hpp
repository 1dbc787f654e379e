#pragma once

#include "intlot/market.hpp"

namespace intlot::examples {

/// Binary one-asset model with a tunable integer-superhedge gap:
/// S1 moves from 1 to 1 -/+ 2a, r = 0, claim (0, 2a).
market::MarketModel gap_model(const BigRat& a = BigRat(1, 4));
market::Claim gap_claim(const BigRat& a = BigRat(1, 4));

/// Three states, one asset, S0 = 2, S1 = (1, 3, 3); the claims with
/// sqrt2 payoffs whose price-interval endpoints behave differently.
market::MarketModel sqrt2_model();
market::Claim sqrt2_claim_i();    // (2*sqrt2, 0, 4*sqrt2)
market::Claim sqrt2_claim_ii();   // (2*sqrt2, 0, 2*sqrt2)
market::Claim sqrt2_claim_iii();  // (0, 0, 2*sqrt2)
market::Claim sqrt2_claim_iv();   // (0, 0, 2)

/// Two pi-linked assets on three states; the unique martingale measure
/// kills the third state and the indicator claim has no integer
/// arbitrage free price at all.
market::MarketModel empty_pi_model();
market::Claim empty_pi_claim();  // 1_{w3}

/// Two-period, four-state model with a pi-linked second asset and a
/// non-discrete intermediate sigma-algebra; prices of 1_{w2} form a
/// dense non-interval set.
market::MarketModel dense_model();
market::Claim dense_claim();  // 1_{w2}

/// Complete two-asset model with sqrt2 moves where no cheapest integer
/// superhedge exists.
market::MarketModel no_cheapest_model();
market::Claim no_cheapest_claim();  // (1 - sqrt2/2, 1 + sqrt2/2)

/// The variance-optimal hedging benchmark: four states, two assets,
/// P* = (0.37, 0.18, 0.4, 0.05), integer claim (0, 7, 1, 8).
market::MarketModel table1_model();
market::Claim table1_claim();
std::vector<Scalar> table1_pstar();

/// Two-asset model with prices (1, pi) scaled by 3/2 or 1/2 on the
/// supported states; zero-gain analysis certifies NIA.
market::MarketModel corollary_model();

} // namespace intlot::examples
