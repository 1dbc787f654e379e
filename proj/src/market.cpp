#include "intlot/market.hpp"

#include "intlot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace intlot::market {

bool MarketModel::is_exact() const {
    auto exact = [](const Scalar& s) { return s.is_exact(); };
    if (!exact(rate)) return false;
    for (const auto& p : probabilities)
        if (!exact(p)) return false;
    for (const auto& asset : prices)
        for (const auto& row : asset)
            for (const auto& s : row)
                if (!exact(s)) return false;
    return true;
}

NumericContext MarketModel::context() const {
    NumericContext ctx;
    ctx.mode = is_exact() ? NumericContext::Mode::exact : NumericContext::Mode::floating;
    ctx.zero_tolerance = zero_tolerance;
    ctx.user_constants = constants;
    if (const char* env = std::getenv("INTLOT_PRECISION")) {
        int digits = std::atoi(env);
        if (digits >= 10 && digits <= 1000) ctx.max_digits = digits;
    }
    return ctx;
}

int MarketModel::block_of(int t, int state) const {
    const auto& part = filtration[static_cast<std::size_t>(t)];
    for (std::size_t b = 0; b < part.size(); ++b)
        for (int s : part[b])
            if (s == state) return static_cast<int>(b);
    throw InvariantViolation("state not covered by filtration");
}

Scalar MarketModel::discount_factor(int t) const {
    if (rate.is_rational()) {
        BigRat base = BigRat(1) + rate.rat();
        BigRat f(1);
        for (int i = 0; i < t; ++i) f *= base;
        return Scalar(f);
    }
    double base = 1.0 + rate.dbl();
    return Scalar::real(std::pow(base, t));
}

Scalar MarketModel::discounted_price(int asset, int t, int state) const {
    const Scalar& s = prices[static_cast<std::size_t>(asset)][static_cast<std::size_t>(t)]
                            [static_cast<std::size_t>(state)];
    Scalar f = discount_factor(t);
    if (f.is_rational()) return s.scale(f.rat().inverse());
    return Scalar::real(s.dbl() / f.dbl());
}

std::vector<std::vector<std::vector<int>>> MarketModel::default_filtration(int n, int T) {
    std::vector<std::vector<std::vector<int>>> f;
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    f.push_back({all});
    std::vector<std::vector<int>> discrete;
    for (int i = 0; i < n; ++i) discrete.push_back({i});
    for (int t = 1; t <= T; ++t) f.push_back(discrete);
    return f;
}

Strategy Strategy::zero(const MarketModel& m, StrategyClass cls) {
    Strategy s;
    s.cls = cls;
    s.positions.assign(static_cast<std::size_t>(m.d()), {});
    for (auto& per_asset : s.positions) {
        per_asset.resize(static_cast<std::size_t>(m.periods));
        for (int t = 1; t <= m.periods; ++t)
            per_asset[static_cast<std::size_t>(t - 1)].assign(
                static_cast<std::size_t>(m.num_blocks(t - 1)), Scalar(0));
    }
    return s;
}

Strategy Strategy::constant_positions(const MarketModel& m, const std::vector<Scalar>& phi,
                                      Scalar initial, StrategyClass cls) {
    if (static_cast<int>(phi.size()) != m.d())
        throw DimensionMismatch("constant_positions: asset count mismatch");
    Strategy s = zero(m, cls);
    for (int j = 0; j < m.d(); ++j)
        for (auto& blockvals : s.positions[static_cast<std::size_t>(j)])
            for (auto& v : blockvals) v = phi[static_cast<std::size_t>(j)];
    s.initial_value = std::move(initial);
    return s;
}

Scalar Strategy::position(int asset, int t, int block) const {
    return positions[static_cast<std::size_t>(asset)][static_cast<std::size_t>(t - 1)]
                    [static_cast<std::size_t>(block)];
}

Strategy Strategy::scaled(const BigRat& c) const {
    Strategy s = *this;
    s.initial_value = s.initial_value.scale(c);
    for (auto& per_asset : s.positions)
        for (auto& per_t : per_asset)
            for (auto& v : per_t) v = v.scale(c);
    return s;
}

Claim Claim::scaled(const BigRat& c) const {
    Claim out;
    for (const auto& v : payoff) out.payoff.push_back(v.scale(c));
    return out;
}

namespace {

bool partitions_states(const std::vector<std::vector<int>>& part, int n) {
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (const auto& block : part) {
        if (block.empty()) return false;
        for (int s : block) {
            if (s < 0 || s >= n) return false;
            if (seen[static_cast<std::size_t>(s)]++) return false;
        }
    }
    for (int c : seen)
        if (c != 1) return false;
    return true;
}

bool refines(const std::vector<std::vector<int>>& coarse,
             const std::vector<std::vector<int>>& fine, int n) {
    // Every fine block must lie inside a coarse block.
    std::vector<int> coarse_of(static_cast<std::size_t>(n), -1);
    for (std::size_t b = 0; b < coarse.size(); ++b)
        for (int s : coarse[b]) coarse_of[static_cast<std::size_t>(s)] = static_cast<int>(b);
    for (const auto& block : fine) {
        int c = coarse_of[static_cast<std::size_t>(block[0])];
        for (int s : block)
            if (coarse_of[static_cast<std::size_t>(s)] != c) return false;
    }
    return true;
}

} // namespace

std::vector<Violation> validate_model(const MarketModel& m) {
    std::vector<Violation> out;
    NumericContext ctx = m.context();
    const int n = m.n(), T = m.periods, d = m.d();

    if (n < 1) out.push_back({"NoStates", "model needs at least one state"});
    if (T < 1) out.push_back({"NoPeriods", "model needs at least one period"});
    if (d < 1) out.push_back({"NoAssets", "model needs at least one risky asset"});
    if (!out.empty()) return out;

    std::set<std::string> names(m.states.begin(), m.states.end());
    if (static_cast<int>(names.size()) != n)
        out.push_back({"DuplicateStateName", "state names must be unique"});

    if (static_cast<int>(m.probabilities.size()) != n) {
        out.push_back({"BadDimensions", "probability vector length mismatch"});
    } else {
        bool uniform_mode = true;
        for (const auto& p : m.probabilities)
            if (p.is_exact() != m.probabilities[0].is_exact()) uniform_mode = false;
        Scalar total(0);
        for (int i = 0; i < n; ++i) {
            const Scalar& p = m.probabilities[static_cast<std::size_t>(i)];
            if (p.sign(ctx) <= 0)
                out.push_back({"ZeroProbabilityState",
                               "state '" + m.states[static_cast<std::size_t>(i)] +
                                   "' has nonpositive probability",
                               -1, -1, i});
            if (uniform_mode) total = i == 0 ? p : total + p;
        }
        Scalar one = m.probabilities[0].is_exact() ? Scalar(1) : Scalar::real(1.0);
        if (uniform_mode && Scalar::compare(total, one, ctx) != 0)
            out.push_back({"ProbabilitySumNotOne", "probabilities sum to " + total.to_string()});
    }

    Scalar one_for_rate = m.rate.is_exact() ? Scalar(1) : Scalar::real(1.0);
    if ((m.rate + one_for_rate).sign(ctx) <= 0)
        out.push_back({"RateOutOfRange", "interest rate must exceed -1"});
    if (m.is_exact() && !m.rate.is_rational())
        out.push_back({"IrrationalRate", "exact mode requires a rational interest rate"});

    if (static_cast<int>(m.prices.size()) != d)
        out.push_back({"BadDimensions", "price array asset count mismatch"});
    for (int j = 0; j < d && j < static_cast<int>(m.prices.size()); ++j) {
        const auto& asset = m.prices[static_cast<std::size_t>(j)];
        if (static_cast<int>(asset.size()) != T + 1) {
            out.push_back({"BadDimensions", "price rows must cover times 0..T", j});
            continue;
        }
        for (int t = 0; t <= T; ++t) {
            if (static_cast<int>(asset[static_cast<std::size_t>(t)].size()) != n) {
                out.push_back({"BadDimensions", "price row length mismatch", j, t});
                continue;
            }
            for (int s = 0; s < n; ++s)
                if (asset[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)].sign(ctx) < 0)
                    out.push_back({"NegativePrice", "negative asset price", j, t, s});
        }
    }

    if (static_cast<int>(m.filtration.size()) != T + 1) {
        out.push_back({"BadDimensions", "filtration must cover times 0..T"});
        return out;
    }
    for (int t = 0; t <= T; ++t)
        if (!partitions_states(m.filtration[static_cast<std::size_t>(t)], n))
            out.push_back({"FiltrationNotPartition", "filtration blocks must partition the states",
                           -1, t});
    if (m.filtration[0].size() != 1)
        out.push_back({"FiltrationNotTrivialAtZero", "time-0 sigma-algebra must be trivial"});
    for (int t = 0; t + 1 <= T; ++t)
        if (!refines(m.filtration[static_cast<std::size_t>(t)],
                     m.filtration[static_cast<std::size_t>(t + 1)], n))
            out.push_back({"FiltrationNotRefining", "filtration must refine over time", -1, t + 1});
    if (static_cast<int>(m.filtration[static_cast<std::size_t>(T)].size()) != n)
        out.push_back({"TerminalPartitionNotDiscrete",
                       "terminal sigma-algebra must separate all states"});

    // Adaptedness: prices constant on the blocks of their time.
    for (int j = 0; j < d && j < static_cast<int>(m.prices.size()); ++j)
        for (int t = 0; t <= T && t < static_cast<int>(m.prices[static_cast<std::size_t>(j)].size()); ++t) {
            const auto& row = m.prices[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
            if (static_cast<int>(row.size()) != n) continue;
            const auto& part = m.filtration[static_cast<std::size_t>(t)];
            for (std::size_t b = 0; b < part.size(); ++b) {
                const auto& block = part[b];
                for (std::size_t k = 1; k < block.size(); ++k)
                    if (Scalar::compare(row[static_cast<std::size_t>(block[k])],
                                        row[static_cast<std::size_t>(block[0])], ctx) != 0) {
                        out.push_back({"AdaptednessViolation",
                                       "price not constant on an information block", j, t,
                                       static_cast<int>(b)});
                        break;
                    }
            }
        }
    return out;
}

void require_valid(const MarketModel& m) {
    auto v = validate_model(m);
    if (!v.empty()) {
        std::string msg = "invalid model:";
        for (const auto& x : v) msg += " [" + x.code + "] " + x.message + ";";
        throw InputError(msg);
    }
}

std::vector<std::vector<std::vector<Scalar>>> discounted_gains(const MarketModel& m) {
    std::vector<std::vector<std::vector<Scalar>>> g(
        static_cast<std::size_t>(m.d()),
        std::vector<std::vector<Scalar>>(static_cast<std::size_t>(m.periods)));
    for (int j = 0; j < m.d(); ++j)
        for (int t = 1; t <= m.periods; ++t) {
            auto& row = g[static_cast<std::size_t>(j)][static_cast<std::size_t>(t - 1)];
            row.reserve(static_cast<std::size_t>(m.n()));
            for (int s = 0; s < m.n(); ++s)
                row.push_back(m.discounted_price(j, t, s) - m.discounted_price(j, t - 1, s));
        }
    return g;
}

ValueProcess value_process(const MarketModel& m, const Strategy& s) {
    if (static_cast<int>(s.positions.size()) != m.d())
        throw DimensionMismatch("strategy asset count mismatch");
    for (int j = 0; j < m.d(); ++j) {
        if (static_cast<int>(s.positions[static_cast<std::size_t>(j)].size()) != m.periods)
            throw DimensionMismatch("strategy period count mismatch");
        for (int t = 1; t <= m.periods; ++t)
            if (static_cast<int>(
                    s.positions[static_cast<std::size_t>(j)][static_cast<std::size_t>(t - 1)]
                        .size()) != m.num_blocks(t - 1))
                throw DimensionMismatch("strategy block count mismatch");
    }
    NumericContext ctx = m.context();
    const int n = m.n(), T = m.periods;
    ValueProcess vp;
    vp.value.assign(static_cast<std::size_t>(T + 1),
                    std::vector<Scalar>(static_cast<std::size_t>(n), Scalar(0)));
    vp.discounted = vp.value;
    vp.bank.resize(static_cast<std::size_t>(T));

    for (int st = 0; st < n; ++st) vp.value[0][static_cast<std::size_t>(st)] = s.initial_value;

    for (int t = 1; t <= T; ++t) {
        vp.bank[static_cast<std::size_t>(t - 1)].assign(
            static_cast<std::size_t>(m.num_blocks(t - 1)), Scalar(0));
        Scalar df_prev = m.discount_factor(t - 1);
        for (int b = 0; b < m.num_blocks(t - 1); ++b) {
            int rep = m.filtration[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(b)][0];
            // phi0_t = (V_{t-1} - sum_j phi_t^j S_{t-1}^j) / (1+r)^(t-1)
            Scalar held = vp.value[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(rep)];
            for (int j = 0; j < m.d(); ++j)
                held = held - Scalar::mul(s.position(j, t, b),
                                          m.prices[static_cast<std::size_t>(j)]
                                                  [static_cast<std::size_t>(t - 1)]
                                                  [static_cast<std::size_t>(rep)]);
            vp.bank[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(b)] =
                Scalar::div(held, df_prev);
        }
        Scalar df_t = m.discount_factor(t);
        for (int st = 0; st < n; ++st) {
            int b = m.block_of(t - 1, st);
            Scalar v = Scalar::mul(
                vp.bank[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(b)], df_t);
            for (int j = 0; j < m.d(); ++j)
                v = v + Scalar::mul(s.position(j, t, b),
                                    m.prices[static_cast<std::size_t>(j)]
                                            [static_cast<std::size_t>(t)]
                                            [static_cast<std::size_t>(st)]);
            vp.value[static_cast<std::size_t>(t)][static_cast<std::size_t>(st)] = v;
            vp.discounted[static_cast<std::size_t>(t)][static_cast<std::size_t>(st)] =
                Scalar::div(v, df_t);
        }
    }
    for (int st = 0; st < n; ++st)
        vp.discounted[0][static_cast<std::size_t>(st)] = s.initial_value;

    // Discounting identity against the gain-sum form.
    auto gains = discounted_gains(m);
    for (int st = 0; st < n; ++st) {
        Scalar acc = s.initial_value;
        for (int t = 1; t <= T; ++t) {
            int b = m.block_of(t - 1, st);
            for (int j = 0; j < m.d(); ++j)
                acc = acc + Scalar::mul(s.position(j, t, b),
                                        gains[static_cast<std::size_t>(j)]
                                             [static_cast<std::size_t>(t - 1)]
                                             [static_cast<std::size_t>(st)]);
            Scalar direct =
                vp.discounted[static_cast<std::size_t>(t)][static_cast<std::size_t>(st)];
            if (Scalar::compare(acc, direct, ctx) != 0)
                throw InvariantViolation("self-financing rollforward disagrees with gain sum");
        }
    }
    return vp;
}

std::pair<BigInt, Strategy> clear_denominators(const Strategy& s) {
    BigInt N(1);
    for (const auto& per_asset : s.positions)
        for (const auto& per_t : per_asset)
            for (const auto& v : per_t) {
                if (!v.is_rational())
                    throw InputError("clear_denominators needs rational positions");
                N = BigInt::lcm(N, v.rat().den());
            }
    Strategy out = s.scaled(BigRat(N));
    out.cls = StrategyClass::integer_cls;
    return {N, out};
}

ArbitrageCheck verify_arbitrage(const MarketModel& m, const Strategy& s,
                                const NumericContext& ctx) {
    ValueProcess vp = value_process(m, s);
    ArbitrageCheck out;
    out.initial_value = s.initial_value;
    out.terminal_values = vp.value[static_cast<std::size_t>(m.periods)];
    if (out.initial_value.sign(ctx) > 0) return out;
    bool some_positive = false;
    for (const auto& v : out.terminal_values) {
        int sg = v.sign(ctx);
        if (sg < 0) return out;
        if (sg > 0) some_positive = true;
    }
    out.is_arbitrage = some_positive;
    return out;
}

bool abs_less_inverse_root(const Scalar& value, const BigInt& q, int m,
                           const NumericContext& ctx) {
    if (m < 1 || q.sign() <= 0) throw InputError("abs_less_inverse_root: bad parameters");
    if (value.kind() == Scalar::Kind::real) {
        return std::fabs(value.dbl()) < std::pow(q.to_double(), -1.0 / m);
    }
    if (value.is_rational()) {
        // |v|^m * q < 1, exactly.
        BigRat v = value.rat().abs();
        BigRat p(1);
        for (int i = 0; i < m; ++i) p *= v;
        return p * BigRat(q) < BigRat(1);
    }
    for (int digits = 50; digits <= ctx.max_digits; digits *= 2) {
        int D = std::min(digits, ctx.max_digits);
        Approx a = value.approximate(D, ctx);
        BigRat lo = a.value - a.error, hi = a.value + a.error;
        BigRat abs_lo = lo.sign() > 0 ? lo : (hi.sign() < 0 ? -hi : BigRat(0));
        BigRat abs_hi = std::max(hi.abs(), lo.abs());
        // Enclose q^(-1/m): scaled root of 10^(D*m)/q.
        BigInt scaled = BigInt::pow10(static_cast<std::size_t>(D) *
                                      static_cast<std::size_t>(m)) / q;
        BigInt root = BigInt::iroot(scaled, static_cast<unsigned>(m));
        BigRat denom(BigInt::pow10(static_cast<std::size_t>(D)));
        BigRat bound_lo = BigRat(root) / denom;
        BigRat bound_hi = BigRat(root + BigInt(2)) / denom;
        if (abs_hi < bound_lo) return true;
        if (abs_lo > bound_hi) return false;
        if (D == ctx.max_digits) break;
    }
    return false;  // marginal comparisons count as misses
}

DirichletStrategy dirichlet_strategy_approx(const MarketModel& m, const Strategy& s,
                                            const BigRat& eps) {
    require_valid(m);
    if (eps.sign() <= 0 || BigRat(1) <= eps)
        throw InputError("dirichlet_strategy_approx: eps must lie in (0,1)");
    NumericContext ctx = m.context();
    const int exponent = m.n() * m.d() * (m.periods + 1);

    // Distinct position values per period (the value sets R_t).
    std::vector<std::vector<Scalar>> distinct(static_cast<std::size_t>(m.periods));
    // value_index[j][t-1][block] -> index into distinct[t-1]
    std::vector<std::vector<std::vector<int>>> value_index(
        static_cast<std::size_t>(m.d()),
        std::vector<std::vector<int>>(static_cast<std::size_t>(m.periods)));
    bool all_rational = true;
    for (int j = 0; j < m.d(); ++j)
        for (int t = 1; t <= m.periods; ++t) {
            auto& idx = value_index[static_cast<std::size_t>(j)][static_cast<std::size_t>(t - 1)];
            for (int b = 0; b < m.num_blocks(t - 1); ++b) {
                Scalar v = s.position(j, t, b);
                if (!v.is_rational()) all_rational = false;
                auto& vals = distinct[static_cast<std::size_t>(t - 1)];
                int found = -1;
                for (std::size_t k = 0; k < vals.size(); ++k)
                    if (vals[k] == v) {
                        found = static_cast<int>(k);
                        break;
                    }
                if (found < 0) {
                    vals.push_back(v);
                    found = static_cast<int>(vals.size()) - 1;
                }
                idx.push_back(found);
            }
        }

    // q must satisfy q^(-1/exponent) < eps, i.e. q > eps^(-exponent).
    BigRat inv_eps = eps.inverse();
    BigRat threshold(1);
    for (int i = 0; i < exponent; ++i) threshold *= inv_eps;
    BigInt q_min = threshold.floor() + BigInt(1);

    auto build = [&](const BigInt& q) -> Strategy {
        Strategy out = Strategy::zero(m, StrategyClass::integer_cls);
        for (int j = 0; j < m.d(); ++j)
            for (int t = 1; t <= m.periods; ++t)
                for (int b = 0; b < m.num_blocks(t - 1); ++b) {
                    Scalar scaled = s.position(j, t, b).scale(BigRat(q));
                    out.positions[static_cast<std::size_t>(j)][static_cast<std::size_t>(t - 1)]
                                 [static_cast<std::size_t>(b)] =
                                     Scalar(BigRat(scaled.nearest_int(ctx)));
                }
        out.initial_value = s.initial_value.scale(BigRat(q));
        return out;
    };

    if (all_rational) {
        BigInt common(1);
        for (const auto& vals : distinct)
            for (const auto& v : vals) common = BigInt::lcm(common, v.rat().den());
        // Smallest multiple of the common denominator above the threshold.
        BigInt k = (q_min + common - BigInt(1)) / common;
        BigInt q = common * k;
        return {q, build(q)};
    }

    const BigInt budget = q_min + BigInt(5000000);
    for (BigInt q = q_min; q <= budget; q = q + BigInt(1)) {
        bool ok = true;
        for (const auto& vals : distinct) {
            for (const auto& v : vals) {
                Scalar scaled = v.scale(BigRat(q));
                Scalar err = scaled - Scalar(BigRat(scaled.nearest_int(ctx)));
                if (!abs_less_inverse_root(err, q, exponent, ctx)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        if (ok) return {q, build(q)};
    }
    throw BudgetExceeded("dirichlet_strategy_approx: no q within scan budget");
}

} // namespace intlot::market
