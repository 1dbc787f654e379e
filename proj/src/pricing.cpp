#include "intlot/pricing.hpp"

#include "intlot/errors.hpp"
#include "intlot/linprog.hpp"

#include <algorithm>

namespace intlot::pricing {

using market::Claim;
using market::MarketModel;

std::vector<Scalar> discounted_payoff(const MarketModel& m, const Claim& c) {
    if (static_cast<int>(c.payoff.size()) != m.n())
        throw DimensionMismatch("claim payoff length must equal the state count");
    Scalar df = m.discount_factor(m.periods);
    std::vector<Scalar> out;
    for (const auto& v : c.payoff) out.push_back(Scalar::div(v, df));
    return out;
}

namespace {

void require_nonnegative_claim(const MarketModel& m, const Claim& c) {
    NumericContext ctx = m.context();
    for (const auto& v : c.payoff)
        if (v.sign(ctx) < 0) throw InputError("claims must be nonnegative");
}

struct EnvelopeLP {
    Scalar lo, hi;
    std::vector<BigRat> lo_measure, hi_measure;  // optimizers (exact path)
    bool exact = false;
};

/// Extrema of E_q[discounted claim] over the martingale polytope. Under
/// no-arbitrage the polytope equals the closure of the equivalent
/// measures; in general every member already vanishes on the excluded
/// set, so no extra face constraint is needed.
EnvelopeLP envelope(const MarketModel& m, const Claim& c) {
    NumericContext ctx = m.context();
    auto rows = arb::martingale_rows(m);
    bool exact = m.is_exact();
    for (const auto& r : rows)
        if (!r.zero && !r.normalizable) exact = false;
    for (const auto& v : c.payoff)
        if (!v.is_exact()) exact = false;

    const int n = m.n();
    lp::LinearProgram prog = lp::LinearProgram::with_vars(n);
    for (int s = 0; s < n; ++s) prog.lower[static_cast<std::size_t>(s)] = BigRat(0);
    prog.add_row(std::vector<BigRat>(static_cast<std::size_t>(n), BigRat(1)), lp::Rel::eq,
                 exact ? Scalar(1) : Scalar::real(1.0));
    for (const auto& row : rows) {
        if (row.zero) continue;
        std::vector<BigRat> coeffs;
        if (exact) {
            coeffs = row.rational_coeffs;
        } else {
            for (const auto& v : row.coeffs)
                coeffs.push_back(BigRat::from_double(v.to_double(ctx)));
        }
        prog.add_row(std::move(coeffs), lp::Rel::eq, exact ? Scalar(0) : Scalar::real(0.0));
    }
    auto payoff = discounted_payoff(m, c);
    for (int s = 0; s < n; ++s)
        prog.objective[static_cast<std::size_t>(s)] =
            exact ? payoff[static_cast<std::size_t>(s)]
                  : Scalar::real(payoff[static_cast<std::size_t>(s)].to_double(ctx));

    EnvelopeLP out;
    out.exact = exact;
    prog.sense = lp::Sense::minimize;
    lp::LPResult lo = lp::lp_solve(prog, ctx);
    prog.sense = lp::Sense::maximize;
    lp::LPResult hi = lp::lp_solve(prog, ctx);
    if (lo.status != lp::LPResult::Status::optimal ||
        hi.status != lp::LPResult::Status::optimal)
        throw InvariantViolation("price envelope LP must be solvable");
    out.lo = lo.objective;
    out.hi = hi.objective;
    if (exact) {
        for (const auto& v : lo.x) out.lo_measure.push_back(v.rat());
        for (const auto& v : hi.x) out.hi_measure.push_back(v.rat());
    }
    return out;
}

} // namespace

PriceInterval classical_price_bounds(const MarketModel& m, const Claim& c) {
    market::require_valid(m);
    require_nonnegative_claim(m, c);
    arb::NaReport na = arb::na_check(m);
    if (!na.holds)
        throw ModelHasArbitrage("classical price bounds need a no-arbitrage model");
    NumericContext ctx = m.context();
    EnvelopeLP env = envelope(m, c);
    PriceInterval out;
    out.provenance = PriceInterval::Provenance::classical;
    out.lo = env.lo;
    out.hi = env.hi;
    out.exact = env.exact;
    out.replicable = Scalar::compare(env.lo, env.hi, ctx) == 0;
    out.lo_open = out.replicable ? Openness::closed : Openness::open;
    out.hi_open = out.lo_open;
    out.empty = false;
    return out;
}

market::MarketModel extend_model(const MarketModel& m,
                                 const std::vector<std::vector<Scalar>>& process,
                                 const std::string& name) {
    if (static_cast<int>(process.size()) != m.periods + 1)
        throw DimensionMismatch("extension process must cover times 0..T");
    for (const auto& row : process)
        if (static_cast<int>(row.size()) != m.n())
            throw DimensionMismatch("extension row length must equal the state count");
    MarketModel ext = m;
    ext.asset_names.push_back(name);
    ext.prices.push_back(process);
    return ext;
}

arb::ArbitrageReport extension_nia_check(const MarketModel& m, const Claim& c,
                                         const std::vector<std::vector<Scalar>>& process,
                                         const arb::SearchPolicy& policy) {
    market::require_valid(m);
    require_nonnegative_claim(m, c);
    NumericContext ctx = m.context();
    if (static_cast<int>(process.size()) != m.periods + 1)
        throw DimensionMismatch("extension process must cover times 0..T");

    // Adaptedness, nonnegativity, and the terminal condition.
    for (int t = 0; t <= m.periods; ++t) {
        const auto& row = process[static_cast<std::size_t>(t)];
        if (static_cast<int>(row.size()) != m.n())
            throw DimensionMismatch("extension row length must equal the state count");
        for (const auto& block : m.filtration[static_cast<std::size_t>(t)])
            for (std::size_t k = 1; k < block.size(); ++k)
                if (Scalar::compare(row[static_cast<std::size_t>(block[k])],
                                    row[static_cast<std::size_t>(block[0])], ctx) != 0)
                    throw NotAdapted("extension process is not adapted at time " +
                                     std::to_string(t));
        for (const auto& v : row)
            if (v.sign(ctx) < 0)
                throw InputError("extension process must be nonnegative");
    }
    for (int s = 0; s < m.n(); ++s)
        if (Scalar::compare(process[static_cast<std::size_t>(m.periods)]
                                   [static_cast<std::size_t>(s)],
                            c.payoff[static_cast<std::size_t>(s)], ctx) != 0)
            throw TerminalMismatch("extension terminal value must equal the claim");

    MarketModel ext = extend_model(m, process);
    arb::ArbitrageReport rep = arb::nia_check(ext, policy);
    rep.property = "extension-nia";
    return rep;
}

PriceInterval nia_price_interval(const MarketModel& m, const Claim& c) {
    market::require_valid(m);
    require_nonnegative_claim(m, c);
    arb::ArbitrageReport nia = arb::nia_check(m);
    if (nia.verdict == arb::Verdict::fails)
        throw ModelHasIntegerArbitrage("price envelope needs an NIA model");
    NumericContext ctx = m.context();
    EnvelopeLP env = envelope(m, c);
    PriceInterval out;
    out.provenance = PriceInterval::Provenance::nia_envelope;
    out.budget_flag = nia.verdict == arb::Verdict::no_witness_within_budget;
    out.lo = env.lo;
    out.hi = env.hi;
    out.exact = env.exact;
    out.replicable = Scalar::compare(env.lo, env.hi, ctx) == 0;
    out.lo_open = Openness::unknown;
    out.hi_open = Openness::unknown;
    // A singleton envelope in one period is decidable: the point is a
    // member or the price set is empty.
    if (m.periods == 1 && out.replicable) {
        std::vector<std::vector<Scalar>> process = {
            std::vector<Scalar>(static_cast<std::size_t>(m.n()), out.lo), c.payoff};
        arb::ArbitrageReport rep = extension_nia_check(m, c, process);
        if (rep.verdict == arb::Verdict::fails) {
            out.empty = true;
            out.lo_open = Openness::open;
            out.hi_open = Openness::open;
        } else if (rep.verdict == arb::Verdict::holds) {
            out.lo_open = Openness::closed;
            out.hi_open = Openness::closed;
        }
    }
    return out;
}

MembershipResult price_membership(const MarketModel& m, const Claim& c, const Scalar& p,
                                  const arb::SearchPolicy& policy) {
    if (m.periods != 1)
        throw NotOnePeriod("price membership is decided for one-period models only");
    market::require_valid(m);
    require_nonnegative_claim(m, c);
    NumericContext ctx = m.context();
    if (p.sign(ctx) < 0) throw InputError("candidate prices must be nonnegative");

    PriceInterval env = nia_price_interval(m, c);
    MembershipResult out;
    int cmp_lo = Scalar::compare(p, env.lo, ctx);
    int cmp_hi = Scalar::compare(p, env.hi, ctx);
    if (cmp_lo < 0 || cmp_hi > 0) {
        out.verdict = Membership::not_member;
        out.note = "price lies outside the martingale expectation envelope";
        return out;
    }
    if (cmp_lo > 0 && cmp_hi < 0) {
        out.verdict = Membership::member;
        out.note = "interior prices of the envelope are always attainable";
        return out;
    }
    // Endpoint: in one period the extension is the price itself.
    std::vector<std::vector<Scalar>> process = {
        std::vector<Scalar>(static_cast<std::size_t>(m.n()), p), c.payoff};
    arb::ArbitrageReport rep = extension_nia_check(m, c, process, policy);
    switch (rep.verdict) {
    case arb::Verdict::holds:
        out.verdict = Membership::member;
        out.note = "endpoint certified by the extension's zero-gain analysis";
        break;
    case arb::Verdict::fails:
        out.verdict = Membership::not_member;
        out.witness = rep.witness;
        out.note = "integer arbitrage against the extended market";
        break;
    case arb::Verdict::no_witness_within_budget:
        out.verdict = Membership::unknown_within_budget;
        out.note = rep.note;
        break;
    }
    return out;
}

} // namespace intlot::pricing
