#include "intlot/hedging.hpp"

#include "intlot/arbitrage.hpp"
#include "intlot/errors.hpp"
#include "intlot/lattice.hpp"
#include "intlot/linprog.hpp"
#include "intlot/pricing.hpp"

#include <algorithm>
#include <cmath>

namespace intlot::hedge {

using market::Claim;
using market::MarketModel;
using market::Strategy;
using market::StrategyClass;

namespace {

struct GainTable {
    arb::StrategyVars vars;
    // column[v][state]: discounted gain of one unit of slot v.
    std::vector<std::vector<Scalar>> column;
    std::vector<Scalar> payoff;  // discounted claim
    bool rational_gains = true;
};

GainTable gain_table(const MarketModel& m, const Claim& c) {
    GainTable g;
    g.vars = arb::StrategyVars::make(m);
    auto gains = market::discounted_gains(m);
    g.column.assign(static_cast<std::size_t>(g.vars.count()),
                    std::vector<Scalar>(static_cast<std::size_t>(m.n()), Scalar(0)));
    for (int v = 0; v < g.vars.count(); ++v) {
        const auto& slot = g.vars.slots[static_cast<std::size_t>(v)];
        for (int s = 0; s < m.n(); ++s) {
            if (m.block_of(slot.period - 1, s) != slot.block) continue;
            Scalar val = gains[static_cast<std::size_t>(slot.asset)]
                              [static_cast<std::size_t>(slot.period - 1)]
                              [static_cast<std::size_t>(s)];
            if (!val.is_rational()) g.rational_gains = false;
            g.column[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)] = val;
        }
    }
    g.payoff = pricing::discounted_payoff(m, c);
    return g;
}

void require_nia(const MarketModel& m, HedgeResult& out) {
    arb::ArbitrageReport rep = arb::nia_check(m);
    if (rep.verdict == arb::Verdict::fails)
        throw ModelHasIntegerArbitrage("hedging requires an integer-arbitrage-free model");
    out.nia_inconclusive = rep.verdict == arb::Verdict::no_witness_within_budget;
}

/// LP for the cheapest superhedge (priciest subhedge): variables are the
/// initial value and the position slots, one inequality per state.
lp::LinearProgram hedge_program(const MarketModel& m, const GainTable& g,
                                Direction direction, bool exact,
                                const NumericContext& ctx,
                                std::optional<long long> box = std::nullopt) {
    const int nv = g.vars.count();
    lp::LinearProgram prog = lp::LinearProgram::with_vars(nv + 1);
    prog.sense = direction == Direction::super ? lp::Sense::minimize : lp::Sense::maximize;
    prog.objective[0] = exact ? Scalar(1) : Scalar::real(1.0);
    if (box) {
        for (int v = 0; v < nv; ++v) {
            prog.lower[static_cast<std::size_t>(v + 1)] = BigRat(-*box);
            prog.upper[static_cast<std::size_t>(v + 1)] = BigRat(*box);
        }
    }
    for (int s = 0; s < m.n(); ++s) {
        std::vector<BigRat> row(static_cast<std::size_t>(nv + 1), BigRat(0));
        row[0] = BigRat(1);
        for (int v = 0; v < nv; ++v) {
            const Scalar& val = g.column[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)];
            row[static_cast<std::size_t>(v + 1)] =
                exact ? val.rat() : BigRat::from_double(val.to_double(ctx));
        }
        Scalar rhs = exact ? g.payoff[static_cast<std::size_t>(s)]
                           : Scalar::real(g.payoff[static_cast<std::size_t>(s)].to_double(ctx));
        prog.add_row(std::move(row), direction == Direction::super ? lp::Rel::ge : lp::Rel::le,
                     std::move(rhs));
    }
    return prog;
}

/// Worst-state writedown of integer or rational positions: the initial
/// value that makes the strategy a super-(sub-)hedge.
Scalar minimax_value(const MarketModel& m, const GainTable& g,
                     const std::vector<Scalar>& positions, Direction direction,
                     const NumericContext& ctx) {
    Scalar best;
    bool first = true;
    for (int s = 0; s < m.n(); ++s) {
        Scalar v = g.payoff[static_cast<std::size_t>(s)];
        for (int k = 0; k < g.vars.count(); ++k)
            v = v - Scalar::mul(positions[static_cast<std::size_t>(k)],
                                g.column[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)]);
        if (first) {
            best = v;
            first = false;
            continue;
        }
        int c = Scalar::compare(v, best, ctx);
        if ((direction == Direction::super && c > 0) ||
            (direction == Direction::sub && c < 0))
            best = v;
    }
    return best;
}

Strategy positions_to_strategy(const MarketModel& m, const GainTable& g,
                               const std::vector<Scalar>& positions, Scalar initial,
                               StrategyClass cls) {
    return g.vars.to_strategy(m, positions, std::move(initial), cls);
}

void verify_hedge(const MarketModel& m, const Strategy& s, const Claim& c,
                  Direction direction, const NumericContext& ctx) {
    auto vp = market::value_process(m, s);
    for (int st = 0; st < m.n(); ++st) {
        Scalar diff = vp.value[static_cast<std::size_t>(m.periods)][static_cast<std::size_t>(st)] -
                      c.payoff[static_cast<std::size_t>(st)];
        int sg = diff.sign(ctx);
        if ((direction == Direction::super && sg < 0) ||
            (direction == Direction::sub && sg > 0))
            throw InvariantViolation("hedge verification failed in state " +
                                     m.states[static_cast<std::size_t>(st)]);
    }
}

long long default_radius(const MarketModel& m, const GainTable& g, Direction direction,
                         const NumericContext& ctx) {
    bool exact = g.rational_gains;
    lp::LinearProgram prog = hedge_program(m, g, direction, exact, ctx);
    lp::LPResult res = lp::lp_solve(prog, ctx);
    if (res.status != lp::LPResult::Status::optimal) return 10;
    long long maxpos = 0;
    for (std::size_t k = 1; k < res.x.size(); ++k) {
        const Scalar& v = res.x[k];
        long long mag;
        if (v.is_exact())
            mag = v.abs(ctx).floor_int(ctx).to_int64() + 1;
        else
            mag = static_cast<long long>(std::floor(std::fabs(v.dbl()))) + 1;
        maxpos = std::max(maxpos, mag);
    }
    return 2 * (maxpos + 1);
}

} // namespace

HedgeResult real_hedge(const MarketModel& m, const Claim& c, Direction direction) {
    market::require_valid(m);
    NumericContext ctx = m.context();
    HedgeResult out;
    out.direction = direction;
    out.cls = StrategyClass::real_cls;
    require_nia(m, out);

    GainTable g = gain_table(m, c);
    bool exact = g.rational_gains;
    for (const auto& v : g.payoff)
        if (!v.is_exact()) exact = false;
    out.float_mode = !exact;

    lp::LinearProgram prog = hedge_program(m, g, direction, exact, ctx);
    lp::LPResult res = lp::lp_solve(prog, ctx);
    if (res.status != lp::LPResult::Status::optimal)
        throw InvariantViolation("hedge LP must be solvable under NIA");
    out.price = res.objective;
    std::vector<Scalar> positions(res.x.begin() + 1, res.x.end());
    out.strategy = positions_to_strategy(m, g, positions, res.x[0], StrategyClass::real_cls);
    out.status = HedgeStatus::certified_optimal;

    // The superhedging price must coincide with the matching endpoint of
    // the price envelope (duality).
    pricing::PriceInterval env = pricing::nia_price_interval(m, c);
    const Scalar& endpoint = direction == Direction::super ? env.hi : env.lo;
    if (exact && env.exact) {
        if (!(out.price == endpoint))
            throw InvariantViolation("hedge price disagrees with the envelope endpoint");
    } else {
        double a = out.price.to_double(ctx), b = endpoint.to_double(ctx);
        if (std::fabs(a - b) > 1e-7 * (1.0 + std::fabs(b)))
            throw InvariantViolation("hedge price disagrees with the envelope endpoint");
    }
    if (exact) verify_hedge(m, out.strategy, c, direction, ctx);
    return out;
}

HedgeResult rational_eps_hedge(const MarketModel& m, const Claim& c, Direction direction,
                               const BigRat& eps) {
    if (eps.sign() <= 0) throw InputError("eps must be positive");
    NumericContext ctx = m.context();
    HedgeResult base = real_hedge(m, c, direction);
    GainTable g = gain_table(m, c);

    std::vector<Scalar> pos;
    for (int v = 0; v < g.vars.count(); ++v) {
        const auto& slot = g.vars.slots[static_cast<std::size_t>(v)];
        pos.push_back(base.strategy.position(slot.asset, slot.period, slot.block));
    }
    bool rational = true;
    for (const auto& v : pos)
        if (!v.is_rational()) rational = false;

    HedgeResult out = base;
    out.cls = StrategyClass::rational_cls;
    out.status = HedgeStatus::epsilon_approximate;
    if (rational) {
        out.strategy.cls = StrategyClass::rational_cls;
        out.buffer = Scalar(0);
        return out;
    }
    if (!base.price.is_exact())
        throw InputError("rational approximation needs exact model data");

    // Certified bound on the value perturbation per unit of position error.
    BigRat gain_mass(0);
    for (int v = 0; v < g.vars.count(); ++v)
        for (int s = 0; s < m.n(); ++s) {
            Approx a = g.column[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)]
                           .approximate(50, ctx);
            gain_mass += a.value.abs() + a.error + BigRat(1, 1000000);
        }

    const int men = g.vars.count();
    BigInt window(16);
    for (int attempt = 0; attempt < 60; ++attempt, window = window * BigInt(4)) {
        lattice::DirichletResult dres;
        try {
            dres = lattice::dirichlet_simultaneous(pos, window, ctx);
        } catch (const SearchFailed&) {
            continue;
        }
        // Actual position errors, bounded from above.
        BigRat err_bound(0);
        std::vector<Scalar> rounded;
        for (int v = 0; v < men; ++v) {
            Scalar diff = pos[static_cast<std::size_t>(v)].scale(BigRat(dres.q)) -
                          Scalar(BigRat(dres.x[static_cast<std::size_t>(v)]));
            Approx a = diff.approximate(50, ctx);
            err_bound = std::max(err_bound,
                                 (a.value.abs() + a.error) / BigRat(dres.q));
            rounded.emplace_back(BigRat(dres.x[static_cast<std::size_t>(v)], dres.q));
        }
        if (!(err_bound * gain_mass < eps)) continue;

        Scalar cushion{direction == Direction::super ? eps : -eps};
        Scalar price = base.price + cushion;
        Strategy s = positions_to_strategy(m, g, rounded, price, StrategyClass::rational_cls);
        try {
            verify_hedge(m, s, c, direction, ctx);
        } catch (const InvariantViolation&) {
            continue;  // extremely tight rounding; widen the window
        }
        out.strategy = s;
        out.price = price;
        out.buffer = cushion;
        out.denominator = dres.q;
        return out;
    }
    throw BudgetExceeded("rational_eps_hedge: no Dirichlet window satisfied the bound");
}

namespace {

struct BoxSearchResult {
    std::vector<BigRat> positions;
    Scalar value;
};

/// Exhaustive integer search with a float prescreen: one pass collects
/// the best float value, a second pass evaluates near-optimal candidates
/// exactly and breaks ties lexicographically.
BoxSearchResult box_enumeration(const MarketModel& m, const GainTable& g,
                                Direction direction, long long radius,
                                const NumericContext& ctx) {
    const int nv = g.vars.count();
    double combos = 1.0;
    for (int v = 0; v < nv; ++v) combos *= 2.0 * static_cast<double>(radius) + 1.0;
    if (combos > 2e7)
        throw BudgetExceeded("integer hedge enumeration over " + std::to_string(nv) +
                             " variables at radius " + std::to_string(radius));

    std::vector<std::vector<double>> colf(static_cast<std::size_t>(nv),
                                          std::vector<double>(static_cast<std::size_t>(m.n())));
    std::vector<double> payf(static_cast<std::size_t>(m.n()));
    for (int s = 0; s < m.n(); ++s) {
        payf[static_cast<std::size_t>(s)] = g.payoff[static_cast<std::size_t>(s)].to_double(ctx);
        for (int v = 0; v < nv; ++v)
            colf[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)] =
                g.column[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)].to_double(ctx);
    }
    const double sign = direction == Direction::super ? 1.0 : -1.0;
    auto float_value = [&](const std::vector<long long>& phi) {
        double worst = -1e300;
        for (int s = 0; s < m.n(); ++s) {
            double v = payf[static_cast<std::size_t>(s)];
            for (int k = 0; k < nv; ++k)
                v -= static_cast<double>(phi[static_cast<std::size_t>(k)]) *
                     colf[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)];
            worst = std::max(worst, sign * v);
        }
        return worst;
    };

    std::vector<long long> phi(static_cast<std::size_t>(nv), -radius);
    double best_f = 1e300;
    double scale = 1.0;
    for (double v : payf) scale = std::max(scale, std::fabs(v));
    while (true) {
        best_f = std::min(best_f, float_value(phi));
        int i = nv - 1;
        while (i >= 0 && phi[static_cast<std::size_t>(i)] == radius) {
            phi[static_cast<std::size_t>(i)] = -radius;
            --i;
        }
        if (i < 0) break;
        ++phi[static_cast<std::size_t>(i)];
    }

    const double margin = 1e-6 * (1.0 + std::fabs(best_f)) + 1e-9 * scale;
    BoxSearchResult best;
    bool have = false;
    phi.assign(static_cast<std::size_t>(nv), -radius);
    while (true) {
        if (float_value(phi) <= best_f + margin) {
            std::vector<Scalar> pos;
            for (long long v : phi) pos.emplace_back(BigRat(v));
            Scalar val = minimax_value(m, g, pos, direction, ctx);
            bool better = false;
            if (!have) {
                better = true;
            } else {
                int cmp = Scalar::compare(val, best.value, ctx);
                if ((direction == Direction::super && cmp < 0) ||
                    (direction == Direction::sub && cmp > 0))
                    better = true;
                // Lexicographic tie-break; enumeration order is already
                // lexicographic, so ties keep the first hit.
            }
            if (better) {
                have = true;
                best.value = val;
                best.positions.clear();
                for (long long v : phi) best.positions.emplace_back(v);
            }
        }
        int i = nv - 1;
        while (i >= 0 && phi[static_cast<std::size_t>(i)] == radius) {
            phi[static_cast<std::size_t>(i)] = -radius;
            --i;
        }
        if (i < 0) break;
        ++phi[static_cast<std::size_t>(i)];
    }
    if (!have) throw InvariantViolation("box enumeration found no candidate");
    return best;
}

/// Depth-first branch and bound on the exact LP relaxation.
class BranchAndBound {
public:
    BranchAndBound(const MarketModel& m, const GainTable& g, Direction direction,
                   long long radius, const NumericContext& ctx)
        : m_(m), g_(g), dir_(direction), radius_(radius), ctx_(ctx) {}

    BoxSearchResult run() {
        // Incumbent: the rounded real hedge, clamped to the box.
        lp::LinearProgram relax = hedge_program(m_, g_, dir_, true, ctx_, radius_);
        lp::LPResult root = lp::lp_solve(relax, ctx_);
        if (root.status != lp::LPResult::Status::optimal)
            throw InvariantViolation("hedge relaxation must solve");
        std::vector<BigRat> seed;
        for (std::size_t k = 1; k < root.x.size(); ++k) {
            BigInt r = root.x[k].nearest_int(ctx_);
            if (r > BigInt(radius_)) r = BigInt(radius_);
            if (r < BigInt(-radius_)) r = BigInt(-radius_);
            seed.emplace_back(r);
        }
        incumbent_.positions = seed;
        incumbent_.value = value_of(seed);

        std::vector<std::optional<BigRat>> lo(static_cast<std::size_t>(g_.vars.count()),
                                              BigRat(-radius_));
        std::vector<std::optional<BigRat>> hi(static_cast<std::size_t>(g_.vars.count()),
                                              BigRat(radius_));
        explore(lo, hi);
        return incumbent_;
    }

private:
    const MarketModel& m_;
    const GainTable& g_;
    Direction dir_;
    long long radius_;
    const NumericContext& ctx_;
    BoxSearchResult incumbent_;

    Scalar value_of(const std::vector<BigRat>& phi) {
        std::vector<Scalar> pos;
        for (const auto& v : phi) pos.emplace_back(v);
        return minimax_value(m_, g_, pos, dir_, ctx_);
    }

    bool improves(const Scalar& candidate) {
        int cmp = Scalar::compare(candidate, incumbent_.value, ctx_);
        return dir_ == Direction::super ? cmp < 0 : cmp > 0;
    }

    void explore(std::vector<std::optional<BigRat>> lo,
                 std::vector<std::optional<BigRat>> hi) {
        lp::LinearProgram relax = hedge_program(m_, g_, dir_, true, ctx_);
        for (int v = 0; v < g_.vars.count(); ++v) {
            relax.lower[static_cast<std::size_t>(v + 1)] = lo[static_cast<std::size_t>(v)];
            relax.upper[static_cast<std::size_t>(v + 1)] = hi[static_cast<std::size_t>(v)];
        }
        lp::LPResult res = lp::lp_solve(relax, ctx_);
        if (res.status != lp::LPResult::Status::optimal) return;
        // Bound: relaxations only get worse down the tree.
        int cmp = Scalar::compare(res.objective, incumbent_.value, ctx_);
        if (dir_ == Direction::super ? cmp > 0 : cmp < 0) return;

        int frac = -1;
        for (std::size_t k = 1; k < res.x.size(); ++k) {
            const Scalar& v = res.x[k];
            if (!(v.is_rational() && v.rat().is_integer())) {
                frac = static_cast<int>(k) - 1;
                break;
            }
        }
        if (frac < 0) {
            std::vector<BigRat> phi;
            for (std::size_t k = 1; k < res.x.size(); ++k) phi.push_back(res.x[k].rat());
            Scalar val = value_of(phi);
            if (improves(val) ||
                (Scalar::compare(val, incumbent_.value, ctx_) == 0 &&
                 phi < incumbent_.positions)) {
                incumbent_.positions = phi;
                incumbent_.value = val;
            }
            return;
        }
        // Irrational coordinates split between consecutive integers too.
        BigInt fl = res.x[static_cast<std::size_t>(frac + 1)].floor_int(ctx_);
        auto lo2 = lo;
        auto hi2 = hi;
        hi2[static_cast<std::size_t>(frac)] = BigRat(fl);
        explore(lo, hi2);
        lo2[static_cast<std::size_t>(frac)] = BigRat(fl + BigInt(1));
        explore(lo2, hi);
    }
};

} // namespace

HedgeResult integer_hedge(const MarketModel& m, const Claim& c, Direction direction,
                          const IntegerHedgePolicy& policy) {
    market::require_valid(m);
    NumericContext ctx = m.context();
    HedgeResult out;
    out.direction = direction;
    out.cls = StrategyClass::integer_cls;
    require_nia(m, out);

    GainTable g = gain_table(m, c);
    bool exact = g.rational_gains;
    for (const auto& v : g.payoff)
        if (!v.is_exact()) exact = false;
    out.float_mode = !m.is_exact();

    long long radius = policy.radius ? *policy.radius
                                     : default_radius(m, g, direction, ctx);
    out.radius = radius;

    BoxSearchResult best;
    bool certified;
    if (exact && g.rational_gains && !policy.force_enumeration) {
        best = BranchAndBound(m, g, direction, radius, ctx).run();
        certified = true;
    } else {
        best = box_enumeration(m, g, direction, radius, ctx);
        certified = false;
    }

    std::vector<Scalar> pos;
    for (const auto& v : best.positions) pos.emplace_back(v);
    out.price = best.value;
    out.strategy = positions_to_strategy(m, g, pos, best.value, StrategyClass::integer_cls);
    out.status = certified ? HedgeStatus::certified_optimal
                           : HedgeStatus::optimal_within_radius;
    if (m.is_exact()) verify_hedge(m, out.strategy, c, direction, ctx);
    return out;
}

Scalar gap_bound(const MarketModel& m) {
    market::require_valid(m);
    NumericContext ctx = m.context();
    auto gains = market::discounted_gains(m);

    // Exact route: per-state gain norms inside the scalar tower.
    if (m.is_exact()) {
        bool ok = true;
        Scalar best(0);
        for (int s = 0; s < m.n() && ok; ++s) {
            Scalar state_sum(0);
            for (int t = 1; t <= m.periods && ok; ++t) {
                BigRat sq(0);
                for (int j = 0; j < m.d(); ++j) {
                    const Scalar& v = gains[static_cast<std::size_t>(j)]
                                           [static_cast<std::size_t>(t - 1)]
                                           [static_cast<std::size_t>(s)];
                    if (!v.is_rational()) {
                        ok = false;
                        break;
                    }
                    sq += v.rat() * v.rat();
                }
                if (!ok) break;
                // sqrt of a rational stays exact when it is rational or a
                // rational multiple of sqrt2.
                BigInt n2 = sq.num(), d2 = sq.den();
                BigInt rn = BigInt::isqrt(n2), rd = BigInt::isqrt(d2);
                if (rn * rn == n2 && rd * rd == d2) {
                    state_sum = state_sum + Scalar(BigRat(rn, rd));
                } else {
                    BigRat half = sq / BigRat(2);
                    BigInt hn = BigInt::isqrt(half.num()), hd = BigInt::isqrt(half.den());
                    if (hn * hn == half.num() && hd * hd == half.den())
                        state_sum =
                            state_sum + Scalar::constant("sqrt2", BigRat(hn, hd));
                    else
                        ok = false;
                }
            }
            if (!ok) break;
            if (s == 0 || Scalar::compare(state_sum, best, ctx) > 0) best = state_sum;
        }
        if (ok) {
            BigInt rd = BigInt::isqrt(BigInt(m.d()));
            Scalar root_d = rd * rd == BigInt(m.d())
                                ? Scalar(BigRat(rd))
                                : (m.d() == 2 ? Scalar::constant("sqrt2")
                                              : Scalar());
            if (m.d() == 2 || rd * rd == BigInt(m.d()))
                return Scalar::mul(root_d, best).scale(BigRat(1, 2));
        }
    }

    // Float route.
    double best = 0.0;
    for (int s = 0; s < m.n(); ++s) {
        double state_sum = 0.0;
        for (int t = 1; t <= m.periods; ++t) {
            double sq = 0.0;
            for (int j = 0; j < m.d(); ++j) {
                double v = gains[static_cast<std::size_t>(j)][static_cast<std::size_t>(t - 1)]
                                [static_cast<std::size_t>(s)]
                                    .to_double(ctx);
                sq += v * v;
            }
            state_sum += std::sqrt(sq);
        }
        best = std::max(best, state_sum);
    }
    return Scalar::real(0.5 * std::sqrt(static_cast<double>(m.d())) * best);
}

std::vector<CopiesRow> copies_scaling(const MarketModel& m, const Claim& c,
                                      const std::vector<long long>& copies,
                                      const IntegerHedgePolicy& policy) {
    HedgeResult classical = real_hedge(m, c, Direction::super);
    NumericContext ctx = m.context();
    std::vector<CopiesRow> out;
    for (long long n : copies) {
        if (n <= 0) throw InputError("copy counts must be positive");
        Claim scaled = c.scaled(BigRat(n));
        HedgeResult h = integer_hedge(m, scaled, Direction::super, policy);
        CopiesRow row;
        row.copies = n;
        row.per_copy_price = h.price.scale(BigRat(1, n));
        row.gap = row.per_copy_price - classical.price;
        out.push_back(std::move(row));
    }
    return out;
}

HedgeResult rational_denominator_superhedge(const MarketModel& m, const Claim& c,
                                            const BigInt& N) {
    if (N < BigInt(2)) throw InputError("denominator bound must be at least 2");
    market::require_valid(m);
    NumericContext ctx = m.context();
    arb::NaReport na = arb::na_check(m);
    if (!na.holds)
        throw ModelHasArbitrage("denominator-bounded superhedging assumes no arbitrage");

    HedgeResult base = real_hedge(m, c, Direction::super);
    GainTable g = gain_table(m, c);

    // Padded slot list: the Dirichlet exponent is nd(T+1) regardless of
    // how many distinct position values occur.
    const int exponent = m.n() * m.d() * (m.periods + 1);
    std::vector<Scalar> alphas;
    for (int v = 0; v < g.vars.count(); ++v) {
        const auto& slot = g.vars.slots[static_cast<std::size_t>(v)];
        alphas.push_back(base.strategy.position(slot.asset, slot.period, slot.block));
    }
    while (static_cast<int>(alphas.size()) < exponent) alphas.emplace_back(Scalar(0));

    lattice::DirichletResult dres = lattice::dirichlet_simultaneous(alphas, N, ctx);

    std::vector<Scalar> rounded;
    for (int v = 0; v < g.vars.count(); ++v)
        rounded.emplace_back(BigRat(dres.x[static_cast<std::size_t>(v)], dres.q));

    // Bank cushion: rational upper enclosure of N^(-1/exponent) * ln N.
    double nf = N.to_double();
    double cushion_f = std::pow(nf, -1.0 / exponent) * std::log(nf);
    BigRat cushion = BigRat::from_double(cushion_f * (1.0 + 1e-9) + 1e-12);

    HedgeResult out;
    out.direction = Direction::super;
    out.cls = StrategyClass::rational_cls;
    out.denominator = dres.q;
    out.status = HedgeStatus::epsilon_approximate;
    out.nia_inconclusive = base.nia_inconclusive;

    // Initial value: real-hedge bank leg plus the cushion, with the
    // rounded risky positions priced at time zero.
    Scalar v0 = base.price + Scalar(cushion);
    for (int v = 0; v < g.vars.count(); ++v) {
        const auto& slot = g.vars.slots[static_cast<std::size_t>(v)];
        if (slot.period != 1) continue;
        Scalar s0 = m.prices[static_cast<std::size_t>(slot.asset)][0][0];
        Scalar old_pos = alphas[static_cast<std::size_t>(v)];
        Scalar delta = rounded[static_cast<std::size_t>(v)] - old_pos;
        v0 = v0 + Scalar::mul(delta, s0);
    }

    Strategy s = positions_to_strategy(m, g, rounded, v0, StrategyClass::rational_cls);
    // Exact verification; any shortfall is paid for by raising the cushion.
    auto vp = market::value_process(m, s);
    Scalar shortfall(0);
    bool bumped = false;
    for (int st = 0; st < m.n(); ++st) {
        Scalar diff = c.payoff[static_cast<std::size_t>(st)] -
                      vp.value[static_cast<std::size_t>(m.periods)][static_cast<std::size_t>(st)];
        if (diff.sign(ctx) > 0 && Scalar::compare(diff, shortfall, ctx) > 0) {
            shortfall = diff;
            bumped = true;
        }
    }
    if (bumped) {
        Scalar discounted = Scalar::div(shortfall, m.discount_factor(m.periods));
        v0 = v0 + discounted;
        s = positions_to_strategy(m, g, rounded, v0, StrategyClass::rational_cls);
    }
    verify_hedge(m, s, c, Direction::super, ctx);

    out.strategy = s;
    out.price = v0;
    out.buffer = Scalar(cushion);
    out.buffer_bumped = bumped;
    return out;
}

} // namespace intlot::hedge
