#pragma once

#include "intlot/market.hpp"

#include <string>
#include <vector>

namespace intlot::varhedge {

/// One-period quadratic hedging problem under a fixed pricing measure:
/// minimize the L2(P*) distance between N copies of the centered
/// discounted claim and the span (real case) or integer lattice of the
/// asset gains. Binary64 arithmetic throughout; quadratic forms leave
/// the rational-linear domain.
struct VarHedgeProblem {
    market::MarketModel model;
    market::Claim claim;
    std::vector<Scalar> pricing_measure;  // positive, martingale for the model
    long long copies = 1;

    void validate() const;
};

enum class Method { classical, cvp, rounding };

struct VarHedgeResult {
    Method method = Method::classical;
    std::vector<double> positions;        // real positions (classical)
    std::vector<long long> int_positions; // integer positions (cvp / rounding)
    double initial_value = 0.0;           // E*[N C] / (1+r)
    double residual = 0.0;                // weighted L2 error
    double rmse = 0.0;                    // residual / ||N C~||
    double max_position = 0.0;            // largest |phi_j|
    double weighted_exposure = 0.0;       // largest weighted per-state hedge gain
    bool zero_norm = false;               // degenerate denominator guard
};

VarHedgeResult classical_var_hedge(const VarHedgeProblem& p);
VarHedgeResult integer_var_hedge(const VarHedgeProblem& p);
VarHedgeResult rounded_var_hedge(const VarHedgeProblem& p);

struct VarHedgeRow {
    long long copies;
    VarHedgeResult classical, cvp, rounding;
};

struct VarHedgeReport {
    std::vector<VarHedgeRow> rows;
};

VarHedgeReport var_hedge_report(const market::MarketModel& m, const market::Claim& c,
                                const std::vector<Scalar>& pricing_measure,
                                const std::vector<long long>& copies);

/// Aligned text rendering of the six-line table. The classical line of
/// the position-size row reports the largest weighted per-state hedge
/// gain, which is the quantity the reference table tracks for that
/// method; the integer methods report max |phi_j|.
std::string render_table(const VarHedgeReport& report);

} // namespace intlot::varhedge
