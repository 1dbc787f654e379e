#include "intlot/arbitrage.hpp"

#include "intlot/errors.hpp"
#include "intlot/linprog.hpp"

#include <algorithm>
#include <cmath>

namespace intlot::arb {

using market::MarketModel;
using market::Strategy;
using market::StrategyClass;

StrategyVars StrategyVars::make(const MarketModel& m) {
    StrategyVars v;
    for (int j = 0; j < m.d(); ++j)
        for (int t = 1; t <= m.periods; ++t)
            for (int b = 0; b < m.num_blocks(t - 1); ++b) v.slots.push_back({j, t, b});
    return v;
}

Strategy StrategyVars::to_strategy(const MarketModel& m, const std::vector<Scalar>& values,
                                   Scalar initial, StrategyClass cls) const {
    if (values.size() != slots.size())
        throw DimensionMismatch("strategy variable count mismatch");
    Strategy s = Strategy::zero(m, cls);
    for (std::size_t k = 0; k < slots.size(); ++k)
        s.positions[static_cast<std::size_t>(slots[k].asset)]
                   [static_cast<std::size_t>(slots[k].period - 1)]
                   [static_cast<std::size_t>(slots[k].block)] = values[k];
    s.initial_value = std::move(initial);
    return s;
}

std::vector<MartingaleRow> martingale_rows(const MarketModel& m) {
    auto gains = market::discounted_gains(m);
    NumericContext ctx = m.context();
    std::vector<MartingaleRow> rows;
    for (int j = 0; j < m.d(); ++j)
        for (int t = 1; t <= m.periods; ++t)
            for (int b = 0; b < m.num_blocks(t - 1); ++b) {
                MartingaleRow row;
                row.asset = j;
                row.period = t;
                row.block = b;
                row.coeffs.assign(static_cast<std::size_t>(m.n()), Scalar(0));
                const auto& block =
                    m.filtration[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(b)];
                for (int s : block)
                    row.coeffs[static_cast<std::size_t>(s)] =
                        gains[static_cast<std::size_t>(j)][static_cast<std::size_t>(t - 1)]
                             [static_cast<std::size_t>(s)];

                row.zero = true;
                for (const auto& c : row.coeffs)
                    if (!c.exact_zero()) row.zero = false;
                if (row.zero) {
                    rows.push_back(std::move(row));
                    continue;
                }
                // Normalize by the first nonzero entry when every entry is a
                // rational multiple of it; irrational rows then become exact.
                if (m.is_exact()) {
                    Scalar dir;
                    for (const auto& c : row.coeffs)
                        if (!c.exact_zero()) {
                            dir = c;
                            break;
                        }
                    if (dir.sign(ctx) < 0) dir = -dir;
                    std::vector<BigRat> ratios;
                    bool ok = true;
                    for (const auto& c : row.coeffs) {
                        auto r = c.rational_ratio_to(dir);
                        if (!r) {
                            ok = false;
                            break;
                        }
                        ratios.push_back(*r);
                    }
                    if (ok) {
                        row.normalizable = true;
                        row.direction = dir;
                        row.rational_coeffs = std::move(ratios);
                    }
                }
                rows.push_back(std::move(row));
            }
    return rows;
}

std::map<std::string, BigRat> scalar_slices(const Scalar& s) {
    if (!s.is_exact()) throw InvariantViolation("scalar_slices needs an exact scalar");
    std::map<std::string, BigRat> out;
    if (!s.rational_part().is_zero()) out[""] = s.rational_part();
    for (const auto& [name, coeff] : s.terms()) out[name] = coeff;
    return out;
}

std::vector<std::vector<BigRat>> rational_nullspace(
    const std::vector<std::vector<BigRat>>& rows, int nvars) {
    std::vector<std::vector<BigRat>> a = rows;
    const int m = static_cast<int>(a.size());
    std::vector<int> pivot_col(static_cast<std::size_t>(m), -1);
    int rank = 0;
    for (int col = 0; col < nvars && rank < m; ++col) {
        int sel = -1;
        for (int r = rank; r < m; ++r)
            if (!a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(a[static_cast<std::size_t>(sel)], a[static_cast<std::size_t>(rank)]);
        BigRat inv = a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)].inverse();
        for (int c = 0; c < nvars; ++c)
            a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)] *= inv;
        for (int r = 0; r < m; ++r) {
            if (r == rank) continue;
            BigRat f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            if (f.is_zero()) continue;
            for (int c = 0; c < nvars; ++c)
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                    f * a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
        }
        pivot_col[static_cast<std::size_t>(rank)] = col;
        ++rank;
    }
    std::vector<bool> is_pivot(static_cast<std::size_t>(nvars), false);
    for (int r = 0; r < rank; ++r) is_pivot[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = true;
    std::vector<std::vector<BigRat>> basis;
    for (int free = 0; free < nvars; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<BigRat> v(static_cast<std::size_t>(nvars), BigRat(0));
        v[static_cast<std::size_t>(free)] = BigRat(1);
        for (int r = 0; r < rank; ++r)
            v[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] =
                BigRat(0) - a[static_cast<std::size_t>(r)][static_cast<std::size_t>(free)];
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

BigRat rationalize_double(double v, long long max_den = 1000000) {
    if (std::fabs(v) < 5e-10) return BigRat(0);
    // Continued fraction expansion with a denominator cap.
    bool neg = v < 0;
    double x = std::fabs(v);
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(x);
        if (fl > 9e17) break;
        long long a = static_cast<long long>(fl);
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || p2 < 0 || q2 < 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double frac = x - fl;
        if (frac < 1e-12) break;
        x = 1.0 / frac;
    }
    if (q1 == 0) return BigRat(0);
    BigRat r(p1, q1);
    return neg ? -r : r;
}

struct PolytopeLP {
    lp::LinearProgram prog;       // without objective
    std::vector<int> active_rows; // indices into the MartingaleRow list
};

/// q >= 0, sum q = 1, one equality per nonzero martingale row.
PolytopeLP polytope_program(const MarketModel& m, const std::vector<MartingaleRow>& rows,
                            bool exact, const NumericContext& ctx) {
    PolytopeLP out;
    const int n = m.n();
    out.prog = lp::LinearProgram::with_vars(n);
    for (int s = 0; s < n; ++s) out.prog.lower[static_cast<std::size_t>(s)] = BigRat(0);
    out.prog.add_row(std::vector<BigRat>(static_cast<std::size_t>(n), BigRat(1)), lp::Rel::eq,
                     exact ? Scalar(1) : Scalar::real(1.0));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.zero) continue;
        std::vector<BigRat> coeffs;
        if (exact) {
            coeffs = row.rational_coeffs;
        } else {
            for (const auto& c : row.coeffs)
                coeffs.push_back(BigRat::from_double(c.to_double(ctx)));
        }
        out.prog.add_row(std::move(coeffs), lp::Rel::eq,
                         exact ? Scalar(0) : Scalar::real(0.0));
        out.active_rows.push_back(static_cast<int>(r));
    }
    return out;
}

/// Certificate system for "state w carries no martingale mass":
/// multipliers y over the active rows with sum_r y_r row_r >= e_w.
lp::LinearProgram certificate_program(const MarketModel& m,
                                      const std::vector<MartingaleRow>& rows,
                                      const std::vector<int>& active, int w, bool exact,
                                      const NumericContext& ctx) {
    const int n = m.n();
    lp::LinearProgram prog = lp::LinearProgram::with_vars(static_cast<int>(active.size()));
    for (int s = 0; s < n; ++s) {
        std::vector<BigRat> row;
        for (int r : active) {
            if (exact)
                row.push_back(rows[static_cast<std::size_t>(r)]
                                  .rational_coeffs[static_cast<std::size_t>(s)]);
            else
                row.push_back(BigRat::from_double(
                    rows[static_cast<std::size_t>(r)].coeffs[static_cast<std::size_t>(s)]
                        .to_double(ctx)));
        }
        Scalar rhs = exact ? Scalar(s == w ? 1 : 0)
                           : Scalar::real(s == w ? 1.0 : 0.0);
        prog.add_row(std::move(row), lp::Rel::ge, std::move(rhs));
    }
    return prog;
}

/// Positions from certificate multipliers. Against normalized rows,
/// y_r units of row r mean y_r / dir_r units of the asset; a single
/// common irrational direction is cleared by scaling the whole
/// strategy. Against raw rows the multipliers are the positions.
std::optional<Strategy> strategy_from_multipliers(const MarketModel& m,
                                                  const std::vector<MartingaleRow>& rows,
                                                  const std::vector<int>& active,
                                                  const std::vector<BigRat>& y,
                                                  bool normalized,
                                                  const NumericContext& ctx) {
    Scalar lambda(1);
    bool have_irrational = false;
    if (normalized) {
        for (std::size_t k = 0; k < active.size(); ++k) {
            const auto& row = rows[static_cast<std::size_t>(active[k])];
            if (row.direction.is_rational()) continue;
            if (!have_irrational) {
                lambda = row.direction;
                have_irrational = true;
            } else if (!row.direction.rational_ratio_to(lambda)) {
                return std::nullopt;  // two incompatible irrational scales
            }
        }
        if (lambda.sign(ctx) < 0) lambda = -lambda;
    }

    Strategy s = Strategy::zero(m, have_irrational ? StrategyClass::real_cls
                                                   : StrategyClass::rational_cls);
    for (std::size_t k = 0; k < active.size(); ++k) {
        const auto& row = rows[static_cast<std::size_t>(active[k])];
        if (y[k].is_zero()) continue;
        Scalar pos = normalized ? Scalar::div(lambda.scale(y[k]), row.direction)
                                : Scalar(y[k]);
        s.positions[static_cast<std::size_t>(row.asset)]
                   [static_cast<std::size_t>(row.period - 1)]
                   [static_cast<std::size_t>(row.block)] = pos;
    }
    s.initial_value = Scalar(0);
    return s;
}

std::vector<bool> support_pattern(const std::vector<BigRat>& measure) {
    std::vector<bool> out;
    for (const auto& v : measure) out.push_back(v.sign() > 0);
    return out;
}

/// Stacked rational analysis of the zero-gain space of a martingale
/// measure with the given support. Exact models only.
struct StackedSpace {
    StrategyVars vars;
    std::vector<std::vector<BigRat>> null_basis;      // rational points of the space
    std::vector<std::vector<BigRat>> value_null;      // subset with value 0 everywhere
    int quotient_dim = 0;
    // Off-support value of a rational point, as an exact scalar.
    std::vector<int> off_states;
    std::vector<std::vector<std::map<std::string, BigRat>>> off_slices;  // [state][var]
};

StackedSpace stacked_space(const MarketModel& m, const std::vector<bool>& support) {
    StackedSpace sp;
    sp.vars = StrategyVars::make(m);
    auto gains = market::discounted_gains(m);
    const int nv = sp.vars.count();

    // Collect the basis-element names in play.
    std::vector<std::string> elements{""};
    for (int j = 0; j < m.d(); ++j)
        for (int t = 1; t <= m.periods; ++t)
            for (int s = 0; s < m.n(); ++s)
                for (const auto& [name, coeff] :
                     scalar_slices(gains[static_cast<std::size_t>(j)]
                                        [static_cast<std::size_t>(t - 1)]
                                        [static_cast<std::size_t>(s)]))
                    if (!name.empty() &&
                        std::find(elements.begin(), elements.end(), name) == elements.end())
                        elements.push_back(name);

    auto coefficient = [&](int s, int v, const std::string& el) -> BigRat {
        const auto& slot = sp.vars.slots[static_cast<std::size_t>(v)];
        if (m.block_of(slot.period - 1, s) != slot.block) return BigRat(0);
        auto sl = scalar_slices(gains[static_cast<std::size_t>(slot.asset)]
                                     [static_cast<std::size_t>(slot.period - 1)]
                                     [static_cast<std::size_t>(s)]);
        auto it = sl.find(el);
        return it == sl.end() ? BigRat(0) : it->second;
    };

    std::vector<std::vector<BigRat>> stacked;
    for (int s = 0; s < m.n(); ++s) {
        if (!support[static_cast<std::size_t>(s)]) continue;
        for (const auto& el : elements) {
            std::vector<BigRat> row;
            for (int v = 0; v < nv; ++v) row.push_back(coefficient(s, v, el));
            stacked.push_back(std::move(row));
        }
    }
    sp.null_basis = rational_nullspace(stacked, nv);

    for (int s = 0; s < m.n(); ++s)
        if (!support[static_cast<std::size_t>(s)]) sp.off_states.push_back(s);

    // Value map on N-coordinates: rows (state, element) x dim(N).
    std::vector<std::vector<BigRat>> value_rows;
    sp.off_slices.assign(sp.off_states.size(),
                         std::vector<std::map<std::string, BigRat>>(
                             static_cast<std::size_t>(sp.null_basis.size())));
    for (std::size_t si = 0; si < sp.off_states.size(); ++si) {
        int s = sp.off_states[si];
        for (const auto& el : elements) {
            std::vector<BigRat> row;
            bool nonzero = false;
            for (std::size_t k = 0; k < sp.null_basis.size(); ++k) {
                BigRat acc(0);
                for (int v = 0; v < nv; ++v)
                    acc += coefficient(s, v, el) * sp.null_basis[k][static_cast<std::size_t>(v)];
                if (!acc.is_zero()) {
                    nonzero = true;
                    sp.off_slices[si][k][el] = acc;
                }
                row.push_back(std::move(acc));
            }
            if (nonzero) value_rows.push_back(std::move(row));
        }
    }
    sp.value_null = rational_nullspace(value_rows, static_cast<int>(sp.null_basis.size()));
    sp.quotient_dim =
        static_cast<int>(sp.null_basis.size()) - static_cast<int>(sp.value_null.size());
    return sp;
}

/// Off-support terminal value of the N-coordinate combination `coords`.
Scalar off_value(const StackedSpace& sp, std::size_t state_index,
                 const std::vector<BigRat>& coords) {
    BigRat q0(0);
    std::map<std::string, BigRat> terms;
    for (std::size_t k = 0; k < coords.size(); ++k) {
        if (coords[k].is_zero()) continue;
        for (const auto& [el, val] : sp.off_slices[state_index][k]) {
            if (el.empty())
                q0 += coords[k] * val;
            else
                terms[el] += coords[k] * val;
        }
    }
    return Scalar::linear(std::move(q0), std::move(terms));
}

std::vector<BigRat> combine_basis(const StackedSpace& sp, const std::vector<BigRat>& coords) {
    std::vector<BigRat> v(static_cast<std::size_t>(sp.vars.count()), BigRat(0));
    for (std::size_t k = 0; k < coords.size(); ++k) {
        if (coords[k].is_zero()) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] += coords[k] * sp.null_basis[k][j];
    }
    return v;
}

Strategy strategy_from_rational(const MarketModel& m, const StrategyVars& vars,
                                const std::vector<BigRat>& values) {
    std::vector<Scalar> scal;
    for (const auto& v : values) scal.emplace_back(v);
    Strategy s = vars.to_strategy(m, scal, Scalar(0), StrategyClass::rational_cls);
    return market::clear_denominators(s).second;
}

} // namespace

namespace {

ZeroGainDecision zero_gain_decision_support(const MarketModel& m,
                                            const std::vector<bool>& support);

} // namespace

ZeroGainDecision zero_gain_decision(const MarketModel& m, const std::vector<BigRat>& measure) {
    return zero_gain_decision_support(m, support_pattern(measure));
}

namespace {

ZeroGainDecision zero_gain_decision_support(const MarketModel& m,
                                            const std::vector<bool>& support) {
    if (!m.is_exact())
        throw InvariantViolation("zero_gain_decision requires an exact model");
    NumericContext ctx = m.context();
    StackedSpace sp = stacked_space(m, support);

    ZeroGainDecision out;
    out.null_dim = static_cast<int>(sp.null_basis.size());
    out.quotient_dim = sp.quotient_dim;
    if (sp.quotient_dim == 0) {
        out.decided = true;
        out.has_arbitrage = false;
        return out;
    }
    if (sp.quotient_dim > 1) return out;  // undecided at this layer

    // One ray of achievable off-support values: any combination with a
    // nonzero image generates the quotient.
    std::vector<BigRat> coords;
    for (std::size_t k = 0; k < sp.null_basis.size() && coords.empty(); ++k) {
        for (std::size_t si = 0; si < sp.off_states.size() && coords.empty(); ++si)
            if (!sp.off_slices[si][k].empty()) {
                coords.assign(sp.null_basis.size(), BigRat(0));
                coords[k] = BigRat(1);
            }
    }
    if (coords.empty()) throw InvariantViolation("quotient generator not found");

    for (int dir = 0; dir < 2; ++dir) {
        bool nonneg = true, positive = false;
        for (std::size_t si = 0; si < sp.off_states.size(); ++si) {
            int sg = off_value(sp, si, coords).sign(ctx);
            if (sg < 0) nonneg = false;
            if (sg > 0) positive = true;
        }
        if (nonneg && positive) {
            out.decided = true;
            out.has_arbitrage = true;
            out.witness = strategy_from_rational(m, sp.vars, combine_basis(sp, coords));
            return out;
        }
        for (auto& c : coords) c = -c;
    }
    out.decided = true;
    out.has_arbitrage = false;
    return out;
}

} // namespace

NaReport na_check(const MarketModel& m) {
    market::require_valid(m);
    NumericContext ctx = m.context();
    auto rows = martingale_rows(m);

    bool exact = m.is_exact();
    for (const auto& r : rows)
        if (!r.zero && !r.normalizable) exact = false;

    NaReport rep;
    rep.support.exact_lp = exact;
    const int n = m.n();

    PolytopeLP poly = polytope_program(m, rows, exact, ctx);
    std::vector<std::vector<Scalar>> maximizers(static_cast<std::size_t>(n));
    rep.support.max_mass.assign(static_cast<std::size_t>(n), Scalar(0));

    for (int w = 0; w < n; ++w) {
        lp::LinearProgram prog = poly.prog;
        prog.sense = lp::Sense::maximize;
        prog.objective[static_cast<std::size_t>(w)] = exact ? Scalar(1) : Scalar::real(1.0);
        lp::LPResult res = lp::lp_solve(prog, ctx);
        if (res.status == lp::LPResult::Status::infeasible) {
            rep.support.polytope_empty = true;
            rep.support.excluded.assign(static_cast<std::size_t>(n), 0);
            for (int s = 0; s < n; ++s) rep.support.excluded[static_cast<std::size_t>(s)] = s;
            break;
        }
        if (res.status != lp::LPResult::Status::optimal)
            throw InvariantViolation("martingale polytope LP must be bounded");
        rep.support.max_mass[static_cast<std::size_t>(w)] = res.objective;
        if (res.objective.sign(ctx) == 0)
            rep.support.excluded.push_back(w);
        else
            maximizers[static_cast<std::size_t>(w)] = res.x;
    }

    // Witness measure: average of the charging maximizers.
    if (!rep.support.polytope_empty) {
        int charged = 0;
        std::vector<BigRat> acc(static_cast<std::size_t>(n), BigRat(0));
        bool rational_ok = true;
        for (int w = 0; w < n; ++w) {
            if (maximizers[static_cast<std::size_t>(w)].empty()) continue;
            ++charged;
            for (int s = 0; s < n; ++s) {
                const Scalar& v = maximizers[static_cast<std::size_t>(w)][static_cast<std::size_t>(s)];
                if (v.is_rational())
                    acc[static_cast<std::size_t>(s)] += v.rat();
                else if (v.is_exact())
                    rational_ok = false;
                else
                    acc[static_cast<std::size_t>(s)] += rationalize_double(v.dbl());
            }
        }
        if (charged > 0 && rational_ok) {
            for (auto& v : acc) v = v / BigRat(charged);
            // Exact verification: probability + martingale + support.
            BigRat total(0);
            bool ok = true;
            for (const auto& v : acc) {
                if (v.sign() < 0) ok = false;
                total += v;
            }
            if (total != BigRat(1)) ok = false;
            if (ok && m.is_exact()) {
                for (const auto& row : rows) {
                    if (row.zero) continue;
                    Scalar sum(0);
                    for (int s = 0; s < n; ++s)
                        sum = sum.add_scale(acc[static_cast<std::size_t>(s)],
                                            row.coeffs[static_cast<std::size_t>(s)]);
                    if (!sum.exact_zero() && sum.sign(ctx) != 0) {
                        ok = false;
                        break;
                    }
                }
                for (int s = 0; s < n; ++s) {
                    bool in_A = std::find(rep.support.excluded.begin(),
                                          rep.support.excluded.end(),
                                          s) != rep.support.excluded.end();
                    if (in_A != acc[static_cast<std::size_t>(s)].is_zero()) ok = false;
                }
                if (ok) {
                    rep.support.witness_measure = acc;
                    rep.support.measure_exact = true;
                }
            } else if (ok) {
                rep.support.witness_measure = acc;
            }
        }
    }

    rep.holds = rep.support.excluded.empty();
    if (rep.holds) return rep;

    // Real arbitrage: combine per-state certificate multipliers.
    std::vector<BigRat> total_y(poly.active_rows.size(), BigRat(0));
    bool have_y = true;
    for (int w : rep.support.excluded) {
        lp::LinearProgram cert = certificate_program(m, rows, poly.active_rows, w, exact, ctx);
        lp::LPResult res = lp::lp_solve(cert, ctx);
        if (res.status != lp::LPResult::Status::optimal) {
            have_y = false;
            break;
        }
        for (std::size_t k = 0; k < total_y.size(); ++k) {
            const Scalar& v = res.x[k];
            total_y[k] += v.is_rational() ? v.rat() : rationalize_double(v.to_double(ctx));
        }
    }
    if (have_y) {
        auto strat = strategy_from_multipliers(m, rows, poly.active_rows, total_y, exact, ctx);
        if (strat) {
            auto check = market::verify_arbitrage(m, *strat, ctx);
            if (check.is_arbitrage) {
                rep.witness = strat;
                rep.witness_exact = m.is_exact();
            }
        }
    }
    if (!rep.witness) rep.note = "certificate multipliers not representable exactly";
    return rep;
}

NaReport nifl_check(const MarketModel& m) {
    NaReport rep = na_check(m);
    rep.note = "no integer free lunch coincides with classical no-arbitrage "
               "on finite state spaces" +
               (rep.note.empty() ? "" : "; " + rep.note);
    return rep;
}

namespace {

bool all_gains_rational(const MarketModel& m) {
    auto gains = market::discounted_gains(m);
    for (const auto& per_asset : gains)
        for (const auto& per_t : per_asset)
            for (const auto& v : per_t)
                if (!v.is_rational()) return false;
    return true;
}

/// One-period strict-feasibility witness on rational data: for some
/// (period, block), rational positions with nonnegative gains on the
/// block and a strict state.
std::optional<Strategy> rational_one_period_witness(const MarketModel& m,
                                                    const std::vector<int>& preferred_states) {
    auto gains = market::discounted_gains(m);
    NumericContext ctx = m.context();
    for (int t = 1; t <= m.periods; ++t)
        for (int b = 0; b < m.num_blocks(t - 1); ++b) {
            const auto& block =
                m.filtration[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(b)];
            lp::LinearProgram sys = lp::LinearProgram::with_vars(m.d());
            for (int s : block) {
                std::vector<BigRat> row;
                for (int j = 0; j < m.d(); ++j)
                    row.push_back(gains[static_cast<std::size_t>(j)]
                                       [static_cast<std::size_t>(t - 1)]
                                       [static_cast<std::size_t>(s)]
                                           .rat());
                sys.add_row(std::move(row), lp::Rel::ge, Scalar(0));
            }
            std::vector<int> candidates;
            for (std::size_t k = 0; k < block.size(); ++k)
                if (std::find(preferred_states.begin(), preferred_states.end(), block[k]) !=
                    preferred_states.end())
                    candidates.push_back(static_cast<int>(k));
            for (std::size_t k = 0; k < block.size(); ++k)
                if (std::find(candidates.begin(), candidates.end(), static_cast<int>(k)) ==
                    candidates.end())
                    candidates.push_back(static_cast<int>(k));
            auto w = lp::lp_feasible_strict(sys, candidates, ctx);
            if (!w.feasible) continue;
            Strategy s = Strategy::zero(m, StrategyClass::rational_cls);
            for (int j = 0; j < m.d(); ++j)
                s.positions[static_cast<std::size_t>(j)][static_cast<std::size_t>(t - 1)]
                           [static_cast<std::size_t>(b)] = w.witness[static_cast<std::size_t>(j)];
            Strategy cleared = market::clear_denominators(s).second;
            if (market::verify_arbitrage(m, cleared, ctx).is_arbitrage) return cleared;
        }
    return std::nullopt;
}

/// Bounded exhaustive one-period integer search with a float prescreen.
std::optional<Strategy> box_one_period_witness(const MarketModel& m, long long radius,
                                               const NumericContext& ctx) {
    auto gains = market::discounted_gains(m);
    const int d = m.d();
    // Float view for screening, materialized once: certified evaluation
    // of irrational scalars is far too slow for the inner loop.
    std::vector<std::vector<std::vector<double>>> gf(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        gf[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(m.periods));
        for (int t = 1; t <= m.periods; ++t)
            for (int s = 0; s < m.n(); ++s)
                gf[static_cast<std::size_t>(j)][static_cast<std::size_t>(t - 1)].push_back(
                    gains[static_cast<std::size_t>(j)][static_cast<std::size_t>(t - 1)]
                         [static_cast<std::size_t>(s)]
                             .to_double(ctx));
    }
    auto dval = [&](int j, int t, int s) {
        return gf[static_cast<std::size_t>(j)][static_cast<std::size_t>(t - 1)]
                 [static_cast<std::size_t>(s)];
    };
    for (int t = 1; t <= m.periods; ++t)
        for (int b = 0; b < m.num_blocks(t - 1); ++b) {
            const auto& block =
                m.filtration[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(b)];
            double scale = 0.0;
            for (int s : block)
                for (int j = 0; j < d; ++j) scale = std::max(scale, std::fabs(dval(j, t, s)));
            double tol = 1e-7 * (1.0 + scale) * static_cast<double>(radius);

            std::vector<long long> phi(static_cast<std::size_t>(d), -radius);
            while (true) {
                bool all_zero = true;
                for (long long v : phi)
                    if (v != 0) all_zero = false;
                if (!all_zero) {
                    bool plausible = true, strictish = false;
                    for (int s : block) {
                        double acc = 0.0;
                        for (int j = 0; j < d; ++j)
                            acc += static_cast<double>(phi[static_cast<std::size_t>(j)]) *
                                   dval(j, t, s);
                        if (acc < -tol) {
                            plausible = false;
                            break;
                        }
                        if (acc > tol) strictish = true;
                    }
                    if (plausible && strictish) {
                        // Exact confirmation.
                        bool nonneg = true, positive = false;
                        for (int s : block) {
                            Scalar acc(0);
                            for (int j = 0; j < d; ++j)
                                acc = acc.add_scale(
                                    BigRat(phi[static_cast<std::size_t>(j)]),
                                    gains[static_cast<std::size_t>(j)]
                                         [static_cast<std::size_t>(t - 1)]
                                         [static_cast<std::size_t>(s)]);
                            int sg = acc.sign(ctx);
                            if (sg < 0) {
                                nonneg = false;
                                break;
                            }
                            if (sg > 0) positive = true;
                        }
                        if (nonneg && positive) {
                            Strategy s = Strategy::zero(m, StrategyClass::integer_cls);
                            for (int j = 0; j < d; ++j)
                                s.positions[static_cast<std::size_t>(j)]
                                           [static_cast<std::size_t>(t - 1)]
                                           [static_cast<std::size_t>(b)] =
                                               Scalar(BigRat(phi[static_cast<std::size_t>(j)]));
                            if (market::verify_arbitrage(m, s, ctx).is_arbitrage) return s;
                        }
                    }
                }
                int i = d - 1;
                while (i >= 0 && phi[static_cast<std::size_t>(i)] == radius) {
                    phi[static_cast<std::size_t>(i)] = -radius;
                    --i;
                }
                if (i < 0) break;
                ++phi[static_cast<std::size_t>(i)];
            }
        }
    return std::nullopt;
}

} // namespace

ArbitrageReport nia_check(const MarketModel& m, const SearchPolicy& policy) {
    NaReport na = na_check(m);
    NumericContext ctx = m.context();

    ArbitrageReport rep;
    rep.property = "nia";
    rep.support = na.support;
    rep.radius_used = policy.radius;

    if (na.holds) {
        rep.verdict = Verdict::holds;
        rep.note = "classical no-arbitrage holds, which implies NIA";
        return rep;
    }

    // Exact zero-gain analysis over the maximal support. A qualifying
    // integer element is an arbitrage no matter how the support was
    // found; the converse (holds) is a proof only under a certified
    // martingale measure.
    if (m.is_exact() && !na.support.polytope_empty) {
        std::vector<bool> support(static_cast<std::size_t>(m.n()), true);
        for (int s : na.support.excluded) support[static_cast<std::size_t>(s)] = false;
        ZeroGainDecision dec = zero_gain_decision_support(m, support);
        if (dec.decided && dec.has_arbitrage) {
            if (!dec.witness ||
                !market::verify_arbitrage(m, *dec.witness, ctx).is_arbitrage)
                throw InvariantViolation("zero-gain witness failed verification");
            rep.verdict = Verdict::fails;
            rep.witness = dec.witness;
            rep.note = "integer witness from the zero-gain lattice over the maximal "
                       "support";
            return rep;
        }
        if (dec.decided && !dec.has_arbitrage) {
            if (na.support.measure_exact) {
                rep.verdict = Verdict::holds;
                rep.note = "certified martingale measure admits no qualifying "
                           "zero-gain integer strategy";
                return rep;
            }
            rep.note = "zero-gain dependency test passed on the numerically "
                       "determined support";
        } else if (!dec.decided) {
            rep.note = "zero-gain quotient dimension " + std::to_string(dec.quotient_dim) +
                       " exceeds the exact decision layer";
        }
    }

    if (m.is_exact() && all_gains_rational(m)) {
        // Rational data: NIA is equivalent to NA, and NA just failed.
        auto witness = rational_one_period_witness(m, na.support.excluded);
        if (!witness)
            throw InvariantViolation("rational model with a real arbitrage must yield "
                                     "an integer witness");
        rep.verdict = Verdict::fails;
        rep.witness = witness;
        rep.note = "rational data: integer arbitrage from strict rational feasibility";
        return rep;
    }

    if (m.d() == 1) {
        // Single risky asset: a one-period sign pattern gives phi = +/-1.
        auto gains = market::discounted_gains(m);
        for (int t = 1; t <= m.periods; ++t)
            for (int b = 0; b < m.num_blocks(t - 1); ++b)
                for (int dir = -1; dir <= 1; dir += 2) {
                    bool nonneg = true, positive = false;
                    for (int s :
                         m.filtration[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(b)]) {
                        Scalar v = gains[0][static_cast<std::size_t>(t - 1)]
                                        [static_cast<std::size_t>(s)]
                                            .scale(BigRat(dir));
                        int sg = v.sign(ctx);
                        if (sg < 0) nonneg = false;
                        if (sg > 0) positive = true;
                    }
                    if (nonneg && positive) {
                        Strategy s = Strategy::zero(m, StrategyClass::integer_cls);
                        s.positions[0][static_cast<std::size_t>(t - 1)]
                                   [static_cast<std::size_t>(b)] = Scalar(BigRat(dir));
                        if (market::verify_arbitrage(m, s, ctx).is_arbitrage) {
                            rep.verdict = Verdict::fails;
                            rep.witness = s;
                            rep.note = "single-asset normalization of a one-period arbitrage";
                            return rep;
                        }
                    }
                }
    }

    if (auto witness = box_one_period_witness(m, policy.radius, ctx)) {
        rep.verdict = Verdict::fails;
        rep.witness = witness;
        rep.note = "one-period integer witness inside the search box";
        return rep;
    }
    rep.verdict = Verdict::no_witness_within_budget;
    rep.note = (rep.note.empty() ? std::string() : rep.note + "; ") +
               "no integer witness with positions up to " + std::to_string(policy.radius);
    return rep;
}

Strategy rationalize_arbitrage(const MarketModel& m, const Strategy& real_witness) {
    if (!all_gains_rational(m))
        throw InputError("rationalize_arbitrage needs rational gain data");
    NumericContext ctx = m.context();
    auto vp = market::value_process(m, real_witness);
    std::vector<int> strict_states;
    for (int s = 0; s < m.n(); ++s)
        if (vp.value[static_cast<std::size_t>(m.periods)][static_cast<std::size_t>(s)]
                .sign(ctx) > 0)
            strict_states.push_back(s);
    if (m.d() == 1) {
        // Unit-size normalization of a one-period pattern.
        auto gains = market::discounted_gains(m);
        for (int t = 1; t <= m.periods; ++t)
            for (int b = 0; b < m.num_blocks(t - 1); ++b)
                for (int dir = -1; dir <= 1; dir += 2) {
                    bool nonneg = true, positive = false;
                    for (int s : m.filtration[static_cast<std::size_t>(t - 1)]
                                             [static_cast<std::size_t>(b)]) {
                        int sg = gains[0][static_cast<std::size_t>(t - 1)]
                                      [static_cast<std::size_t>(s)]
                                          .scale(BigRat(dir))
                                          .sign(ctx);
                        if (sg < 0) nonneg = false;
                        if (sg > 0) positive = true;
                    }
                    if (!nonneg || !positive) continue;
                    Strategy s = Strategy::zero(m, StrategyClass::integer_cls);
                    s.positions[0][static_cast<std::size_t>(t - 1)]
                               [static_cast<std::size_t>(b)] = Scalar(BigRat(dir));
                    if (market::verify_arbitrage(m, s, ctx).is_arbitrage) return s;
                }
    }
    auto witness = rational_one_period_witness(m, strict_states);
    if (!witness)
        throw InvariantViolation("rationalize_arbitrage: strict system unexpectedly"
                                 " infeasible");
    return *witness;
}

ZeroGainSpace zero_gain_space(const MarketModel& m, const std::vector<Scalar>& q) {
    market::require_valid(m);
    if (static_cast<int>(q.size()) != m.n())
        throw DimensionMismatch("measure length must equal the state count");
    NumericContext ctx = m.context();

    // Validate: probability measure, absolutely continuous, martingale.
    Scalar total(0);
    for (const auto& v : q) {
        if (v.sign(ctx) < 0) throw NotMartingaleMeasure("measure has negative mass");
        total = total + v;
    }
    if (Scalar::compare(total, Scalar(1), ctx) != 0)
        throw NotMartingaleMeasure("measure does not sum to one");
    auto rows = martingale_rows(m);
    for (const auto& row : rows) {
        if (row.zero) continue;
        Scalar sum(0);
        for (int s = 0; s < m.n(); ++s) {
            if (q[static_cast<std::size_t>(s)].exact_zero()) continue;
            sum = sum + Scalar::mul(q[static_cast<std::size_t>(s)],
                                    row.coeffs[static_cast<std::size_t>(s)]);
        }
        if (sum.sign(ctx) != 0)
            throw NotMartingaleMeasure("one-step martingale constraint violated");
    }

    ZeroGainSpace out;
    StrategyVars vars = StrategyVars::make(m);
    auto gains = market::discounted_gains(m);
    std::vector<bool> support;
    for (const auto& v : q) support.push_back(v.sign(ctx) > 0);

    // Real basis by elimination with rational pivots where possible.
    const int nv = vars.count();
    std::vector<std::vector<Scalar>> a;
    for (int s = 0; s < m.n(); ++s) {
        if (!support[static_cast<std::size_t>(s)]) continue;
        std::vector<Scalar> row(static_cast<std::size_t>(nv), Scalar(0));
        for (int v = 0; v < nv; ++v) {
            const auto& slot = vars.slots[static_cast<std::size_t>(v)];
            if (m.block_of(slot.period - 1, s) == slot.block)
                row[static_cast<std::size_t>(v)] = gains[static_cast<std::size_t>(slot.asset)]
                                                        [static_cast<std::size_t>(slot.period - 1)]
                                                        [static_cast<std::size_t>(s)];
        }
        a.push_back(std::move(row));
    }
    try {
        const int rows_n = static_cast<int>(a.size());
        std::vector<int> pivot_col(static_cast<std::size_t>(rows_n), -1);
        int rank = 0;
        for (int col = 0; col < nv && rank < rows_n; ++col) {
            int sel = -1;
            for (int r = rank; r < rows_n; ++r)
                if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_rational() &&
                    !a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].exact_zero()) {
                    sel = r;
                    break;
                }
            if (sel < 0)
                for (int r = rank; r < rows_n; ++r)
                    if (!a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].exact_zero()) {
                        sel = r;
                        break;
                    }
            if (sel < 0) continue;
            std::swap(a[static_cast<std::size_t>(sel)], a[static_cast<std::size_t>(rank)]);
            Scalar piv = a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
            for (int c = 0; c < nv; ++c)
                a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)] =
                    Scalar::div(a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)], piv);
            for (int r = 0; r < rows_n; ++r) {
                if (r == rank) continue;
                Scalar f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
                if (f.exact_zero()) continue;
                for (int c = 0; c < nv; ++c)
                    a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -
                        Scalar::mul(f, a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)]);
            }
            pivot_col[static_cast<std::size_t>(rank)] = col;
            ++rank;
        }
        std::vector<bool> is_pivot(static_cast<std::size_t>(nv), false);
        for (int r = 0; r < rank; ++r)
            is_pivot[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = true;
        for (int free = 0; free < nv; ++free) {
            if (is_pivot[static_cast<std::size_t>(free)]) continue;
            std::vector<Scalar> vec(static_cast<std::size_t>(nv), Scalar(0));
            vec[static_cast<std::size_t>(free)] = Scalar(1);
            for (int r = 0; r < rank; ++r)
                vec[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] =
                    -a[static_cast<std::size_t>(r)][static_cast<std::size_t>(free)];
            out.basis.push_back(
                vars.to_strategy(m, vec, Scalar(0), StrategyClass::real_cls));
        }
    } catch (const NonlinearError&) {
        out.basis_exact = false;
    }

    // Integer triviality, modulo strategies with identically zero value.
    if (m.is_exact()) {
        bool all_rational_q = true;
        std::vector<BigRat> qr;
        for (const auto& v : q) {
            if (!v.is_rational()) {
                all_rational_q = false;
                break;
            }
            qr.push_back(v.rat());
        }
        if (all_rational_q) {
            StackedSpace sp = stacked_space(m, support);
            if (sp.quotient_dim == 0) {
                out.status = LatticeStatus::only_trivial_integer;
            } else {
                out.status = LatticeStatus::nontrivial_integer_found;
                for (std::size_t k = 0; k < sp.null_basis.size(); ++k) {
                    bool hits = false;
                    for (std::size_t si = 0; si < sp.off_states.size(); ++si)
                        if (!sp.off_slices[si][k].empty()) hits = true;
                    if (hits) {
                        out.integer_witness =
                            strategy_from_rational(m, sp.vars, sp.null_basis[k]);
                        break;
                    }
                }
            }
            return out;
        }
    }
    out.status = LatticeStatus::unknown_within_budget;
    return out;
}

bool qmax_membership(const MarketModel& m, const std::vector<Scalar>& q) {
    market::require_valid(m);
    if (static_cast<int>(q.size()) != m.n()) return false;
    NumericContext ctx = m.context();
    Scalar total(0);
    for (const auto& v : q) {
        if (v.sign(ctx) < 0) return false;
        total = total + v;
    }
    if (Scalar::compare(total, Scalar(1), ctx) != 0) return false;
    auto rows = martingale_rows(m);
    for (const auto& row : rows) {
        if (row.zero) continue;
        Scalar sum(0);
        for (int s = 0; s < m.n(); ++s) {
            if (q[static_cast<std::size_t>(s)].exact_zero()) continue;
            sum = sum + Scalar::mul(q[static_cast<std::size_t>(s)],
                                    row.coeffs[static_cast<std::size_t>(s)]);
        }
        if (sum.sign(ctx) != 0) return false;
    }
    NaReport na = na_check(m);
    for (int s = 0; s < m.n(); ++s) {
        bool in_A = std::find(na.support.excluded.begin(), na.support.excluded.end(), s) !=
                    na.support.excluded.end();
        bool charged = q[static_cast<std::size_t>(s)].sign(ctx) > 0;
        if (in_A == charged) return false;
    }
    return true;
}

} // namespace intlot::arb
