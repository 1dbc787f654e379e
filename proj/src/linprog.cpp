#include "intlot/linprog.hpp"

#include "intlot/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace intlot::lp {

LinearProgram LinearProgram::with_vars(int nvars) {
    LinearProgram p;
    p.objective.assign(static_cast<std::size_t>(nvars), Scalar(0));
    p.lower.assign(static_cast<std::size_t>(nvars), std::nullopt);
    p.upper.assign(static_cast<std::size_t>(nvars), std::nullopt);
    return p;
}

void LinearProgram::add_row(std::vector<BigRat> coeffs, Rel rel, Scalar b) {
    if (static_cast<int>(coeffs.size()) != num_vars())
        throw DimensionMismatch("LP row width mismatch");
    matrix.push_back(std::move(coeffs));
    relations.push_back(rel);
    rhs.push_back(std::move(b));
}

void LinearProgram::validate() const {
    const auto n = objective.size();
    if (lower.size() != n || upper.size() != n)
        throw DimensionMismatch("LP bounds width mismatch");
    if (matrix.size() != relations.size() || matrix.size() != rhs.size())
        throw DimensionMismatch("LP row count mismatch");
    for (const auto& row : matrix)
        if (row.size() != n) throw DimensionMismatch("LP row width mismatch");
    for (std::size_t j = 0; j < n; ++j)
        if (lower[j] && upper[j] && *upper[j] < *lower[j])
            throw InputError("LP variable bounds are crossed");
}

namespace {

struct ExactPolicy {
    using Coef = BigRat;
    using Val = Scalar;
    static Coef c_zero() { return BigRat(0); }
    static Coef c_one() { return BigRat(1); }
    static Coef c_from_rat(const BigRat& v, const NumericContext&) { return v; }
    static int c_sign(const Coef& v, const NumericContext&) { return v.sign(); }
    static Coef c_div(const Coef& a, const Coef& b) { return a / b; }
    static Coef c_sub_mul(const Coef& a, const Coef& f, const Coef& b) { return a - f * b; }
    static bool pivotable(const Coef& v, const NumericContext&) { return !v.is_zero(); }
    static Val v_zero() { return Scalar(0); }
    static Val v_from_scalar(const Scalar& s, const NumericContext&) { return s; }
    static Val v_from_coef(const Coef& c) { return Scalar(c); }
    static int v_sign(const Val& v, const NumericContext& ctx) { return v.sign(ctx); }
    static Val v_neg(const Val& v) { return -v; }
    static Val v_add(const Val& a, const Val& b) { return a + b; }
    static Val v_scale(const Val& v, const Coef& c) { return v.scale(c); }
    static Val v_sub_scaled(const Val& a, const Coef& f, const Val& b) {
        return a.add_scale(BigRat(0) - f, b);
    }
    static Val v_div(const Val& v, const Coef& c) { return v.scale(c.inverse()); }
    static Scalar v_to_scalar(const Val& v, const NumericContext&) { return v; }
    static bool phase1_feasible_zero(const Val& v, const NumericContext& ctx) {
        return v.sign(ctx) == 0;
    }
};

struct FloatPolicy {
    using Coef = double;
    using Val = double;
    static Coef c_zero() { return 0.0; }
    static Coef c_one() { return 1.0; }
    static Coef c_from_rat(const BigRat& v, const NumericContext&) { return v.to_double(); }
    static int c_sign(const Coef& v, const NumericContext&) {
        if (std::fabs(v) <= 1e-11) return 0;
        return v > 0 ? 1 : -1;
    }
    static Coef c_div(const Coef& a, const Coef& b) { return a / b; }
    static Coef c_sub_mul(const Coef& a, const Coef& f, const Coef& b) { return a - f * b; }
    static bool pivotable(const Coef& v, const NumericContext&) { return std::fabs(v) > 1e-10; }
    static Val v_zero() { return 0.0; }
    static Val v_from_scalar(const Scalar& s, const NumericContext& ctx) {
        return s.to_double(ctx);
    }
    static Val v_from_coef(const Coef& c) { return c; }
    static int v_sign(const Val& v, const NumericContext& ctx) {
        double tol = std::max(ctx.zero_tolerance, 1e-9);
        if (std::fabs(v) <= tol) return 0;
        return v > 0 ? 1 : -1;
    }
    static Val v_neg(const Val& v) { return -v; }
    static Val v_add(const Val& a, const Val& b) { return a + b; }
    static Val v_scale(const Val& v, const Coef& c) { return v * c; }
    static Val v_sub_scaled(const Val& a, const Coef& f, const Val& b) { return a - f * b; }
    static Val v_div(const Val& v, const Coef& c) { return v / c; }
    static Scalar v_to_scalar(const Val& v, const NumericContext&) { return Scalar::real(v); }
    static bool phase1_feasible_zero(const Val& v, const NumericContext&) {
        return std::fabs(v) <= 1e-7;
    }
};

template <typename P>
class Simplex {
    using Coef = typename P::Coef;
    using Val = typename P::Val;

    struct VarMap {
        enum class Kind { shifted, mirrored, split } kind;
        int col1 = -1, col2 = -1;
        Coef base;
    };

public:
    Simplex(const LinearProgram& p, const NumericContext& ctx) : p_(p), ctx_(ctx) {}

    LPResult run() {
        build();
        LPResult res;
        res.float_mode = std::is_same_v<P, FloatPolicy>;

        if (!phase1()) {
            res.status = LPResult::Status::infeasible;
            extract_farkas(res);
            return res;
        }
        int ph2 = phase2();
        if (ph2 < 0) {
            res.status = LPResult::Status::unbounded;
            extract_ray(res, -ph2 - 1);
            return res;
        }
        res.status = LPResult::Status::optimal;
        extract_solution(res);
        return res;
    }

private:
    const LinearProgram& p_;
    const NumericContext& ctx_;

    int m_ = 0;                          // transformed row count
    int ncols_ = 0;                      // structural + slack columns
    int nstruct_ = 0;
    std::vector<std::vector<Coef>> A_;   // m x (ncols + m artificials)
    std::vector<Val> b_;
    std::vector<int> basis_;
    std::vector<bool> flipped_;
    std::vector<bool> dropped_;
    std::vector<VarMap> varmap_;         // per original variable
    std::vector<Coef> cost1_;            // phase-I reduced costs
    std::vector<Val> cost2_;             // phase-II reduced costs
    Val obj_offset_ = P::v_zero();
    bool maximize_ = false;
    int norig_rows_ = 0;

    int art_col(int row) const { return ncols_ + row; }

    void build() {
        maximize_ = p_.sense == Sense::maximize;
        const int nv = p_.num_vars();
        norig_rows_ = p_.num_rows();

        // Column layout for each original variable.
        std::vector<std::pair<int, Coef>> extra_rows;  // (col, upper-lower) bound rows
        varmap_.resize(static_cast<std::size_t>(nv));
        nstruct_ = 0;
        for (int j = 0; j < nv; ++j) {
            const auto& lo = p_.lower[static_cast<std::size_t>(j)];
            const auto& hi = p_.upper[static_cast<std::size_t>(j)];
            auto& vm = varmap_[static_cast<std::size_t>(j)];
            if (lo) {
                vm.kind = VarMap::Kind::shifted;
                vm.base = P::c_from_rat(*lo, ctx_);
                vm.col1 = nstruct_++;
                if (hi) extra_rows.emplace_back(vm.col1, P::c_from_rat(*hi - *lo, ctx_));
            } else if (hi) {
                vm.kind = VarMap::Kind::mirrored;
                vm.base = P::c_from_rat(*hi, ctx_);
                vm.col1 = nstruct_++;
            } else {
                vm.kind = VarMap::Kind::split;
                vm.col1 = nstruct_++;
                vm.col2 = nstruct_++;
                vm.base = P::c_zero();
            }
        }

        m_ = norig_rows_ + static_cast<int>(extra_rows.size());
        int nslack = 0;
        for (auto rel : p_.relations)
            if (rel != Rel::eq) ++nslack;
        nslack += static_cast<int>(extra_rows.size());
        ncols_ = nstruct_ + nslack;

        A_.assign(static_cast<std::size_t>(m_),
                  std::vector<Coef>(static_cast<std::size_t>(ncols_ + m_), P::c_zero()));
        b_.assign(static_cast<std::size_t>(m_), P::v_zero());
        flipped_.assign(static_cast<std::size_t>(m_), false);
        dropped_.assign(static_cast<std::size_t>(m_), false);
        basis_.assign(static_cast<std::size_t>(m_), -1);

        int slack_cursor = nstruct_;
        for (int i = 0; i < norig_rows_; ++i) {
            Val rhs = P::v_from_scalar(p_.rhs[static_cast<std::size_t>(i)], ctx_);
            for (int j = 0; j < nv; ++j) {
                const Coef a = P::c_from_rat(p_.matrix[static_cast<std::size_t>(i)]
                                                      [static_cast<std::size_t>(j)],
                                             ctx_);
                if (P::c_sign(a, ctx_) == 0) continue;
                place_coefficient(i, j, a, rhs);
            }
            Rel rel = p_.relations[static_cast<std::size_t>(i)];
            if (rel == Rel::le)
                A_[static_cast<std::size_t>(i)][static_cast<std::size_t>(slack_cursor++)] =
                    P::c_one();
            else if (rel == Rel::ge)
                A_[static_cast<std::size_t>(i)][static_cast<std::size_t>(slack_cursor++)] =
                    P::c_sub_mul(P::c_zero(), P::c_one(), P::c_one());
            b_[static_cast<std::size_t>(i)] = rhs;
        }
        for (std::size_t k = 0; k < extra_rows.size(); ++k) {
            int i = norig_rows_ + static_cast<int>(k);
            A_[static_cast<std::size_t>(i)][static_cast<std::size_t>(extra_rows[k].first)] =
                P::c_one();
            A_[static_cast<std::size_t>(i)][static_cast<std::size_t>(slack_cursor++)] =
                P::c_one();
            b_[static_cast<std::size_t>(i)] = P::v_from_coef(extra_rows[k].second);
        }

        // Normalize to b >= 0 and install the identity artificial block.
        for (int i = 0; i < m_; ++i) {
            if (P::v_sign(b_[static_cast<std::size_t>(i)], ctx_) < 0) {
                flipped_[static_cast<std::size_t>(i)] = true;
                for (auto& a : A_[static_cast<std::size_t>(i)])
                    a = P::c_sub_mul(P::c_zero(), P::c_one(), a);
                b_[static_cast<std::size_t>(i)] = P::v_neg(b_[static_cast<std::size_t>(i)]);
            }
            A_[static_cast<std::size_t>(i)][static_cast<std::size_t>(art_col(i))] = P::c_one();
            basis_[static_cast<std::size_t>(i)] = art_col(i);
        }

        // Phase-I reduced costs: 1 on artificials minus the basic rows.
        cost1_.assign(static_cast<std::size_t>(ncols_ + m_), P::c_zero());
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < ncols_ + m_; ++j)
                cost1_[static_cast<std::size_t>(j)] = P::c_sub_mul(
                    cost1_[static_cast<std::size_t>(j)], P::c_one(),
                    A_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        for (int i = 0; i < m_; ++i)
            cost1_[static_cast<std::size_t>(art_col(i))] = P::c_zero();

        // Phase-II reduced costs: internal minimization objective.
        cost2_.assign(static_cast<std::size_t>(ncols_ + m_), P::v_zero());
        for (int j = 0; j < nv; ++j) {
            Scalar c = p_.objective[static_cast<std::size_t>(j)];
            if (maximize_) c = -c;
            Val cv = P::v_from_scalar(c, ctx_);
            const auto& vm = varmap_[static_cast<std::size_t>(j)];
            if (vm.kind == VarMap::Kind::shifted) {
                cost2_[static_cast<std::size_t>(vm.col1)] =
                    P::v_add(cost2_[static_cast<std::size_t>(vm.col1)], cv);
                obj_offset_ = P::v_add(obj_offset_, P::v_scale(cv, vm.base));
            } else if (vm.kind == VarMap::Kind::mirrored) {
                cost2_[static_cast<std::size_t>(vm.col1)] =
                    P::v_sub_scaled(cost2_[static_cast<std::size_t>(vm.col1)], P::c_one(), cv);
                obj_offset_ = P::v_add(obj_offset_, P::v_scale(cv, vm.base));
            } else {
                cost2_[static_cast<std::size_t>(vm.col1)] =
                    P::v_add(cost2_[static_cast<std::size_t>(vm.col1)], cv);
                cost2_[static_cast<std::size_t>(vm.col2)] =
                    P::v_sub_scaled(cost2_[static_cast<std::size_t>(vm.col2)], P::c_one(), cv);
            }
        }
    }

    // x_j enters row i with coefficient a; rhs collects shift corrections.
    void place_coefficient(int i, int j, const Coef& a, Val& rhs) {
        const auto& vm = varmap_[static_cast<std::size_t>(j)];
        auto& row = A_[static_cast<std::size_t>(i)];
        if (vm.kind == VarMap::Kind::shifted) {
            row[static_cast<std::size_t>(vm.col1)] = a;
            rhs = P::v_sub_scaled(rhs, a, P::v_from_coef(vm.base));
        } else if (vm.kind == VarMap::Kind::mirrored) {
            row[static_cast<std::size_t>(vm.col1)] = P::c_sub_mul(P::c_zero(), P::c_one(), a);
            rhs = P::v_sub_scaled(rhs, a, P::v_from_coef(vm.base));
        } else {
            row[static_cast<std::size_t>(vm.col1)] = a;
            row[static_cast<std::size_t>(vm.col2)] = P::c_sub_mul(P::c_zero(), P::c_one(), a);
        }
    }

    void pivot(int prow, int pcol) {
        auto& row = A_[static_cast<std::size_t>(prow)];
        const Coef piv = row[static_cast<std::size_t>(pcol)];
        for (auto& a : row) a = P::c_div(a, piv);
        b_[static_cast<std::size_t>(prow)] = P::v_div(b_[static_cast<std::size_t>(prow)], piv);
        row[static_cast<std::size_t>(pcol)] = P::c_one();

        for (int i = 0; i < m_; ++i) {
            if (i == prow || dropped_[static_cast<std::size_t>(i)]) continue;
            Coef f = A_[static_cast<std::size_t>(i)][static_cast<std::size_t>(pcol)];
            if (P::c_sign(f, ctx_) == 0) continue;
            auto& ri = A_[static_cast<std::size_t>(i)];
            for (int j = 0; j < ncols_ + m_; ++j)
                ri[static_cast<std::size_t>(j)] = P::c_sub_mul(
                    ri[static_cast<std::size_t>(j)], f, row[static_cast<std::size_t>(j)]);
            ri[static_cast<std::size_t>(pcol)] = P::c_zero();
            b_[static_cast<std::size_t>(i)] =
                P::v_sub_scaled(b_[static_cast<std::size_t>(i)], f,
                                b_[static_cast<std::size_t>(prow)]);
        }
        // Cost rows.
        {
            Coef f1 = cost1_[static_cast<std::size_t>(pcol)];
            if (P::c_sign(f1, ctx_) != 0)
                for (int j = 0; j < ncols_ + m_; ++j)
                    cost1_[static_cast<std::size_t>(j)] =
                        P::c_sub_mul(cost1_[static_cast<std::size_t>(j)], f1,
                                     row[static_cast<std::size_t>(j)]);
            cost1_[static_cast<std::size_t>(pcol)] = P::c_zero();
            Val f2 = cost2_[static_cast<std::size_t>(pcol)];
            if (P::v_sign(f2, ctx_) != 0) {
                for (int j = 0; j < ncols_ + m_; ++j)
                    cost2_[static_cast<std::size_t>(j)] = P::v_sub_scaled(
                        cost2_[static_cast<std::size_t>(j)],
                        row[static_cast<std::size_t>(j)], f2);
                cost2_[static_cast<std::size_t>(pcol)] = P::v_zero();
            }
        }
        basis_[static_cast<std::size_t>(prow)] = pcol;
    }

    // Bland leaving rule: min ratio, ties by smallest basic variable.
    int choose_leaving(int pcol) {
        int best = -1;
        for (int i = 0; i < m_; ++i) {
            if (dropped_[static_cast<std::size_t>(i)]) continue;
            const Coef& a = A_[static_cast<std::size_t>(i)][static_cast<std::size_t>(pcol)];
            if (P::c_sign(a, ctx_) <= 0 || !P::pivotable(a, ctx_)) continue;
            if (best < 0) {
                best = i;
                continue;
            }
            const Coef& ab = A_[static_cast<std::size_t>(best)][static_cast<std::size_t>(pcol)];
            // b_i/a_i vs b_best/a_best, cross-multiplied (a > 0 both sides).
            Val lhs = P::v_scale(b_[static_cast<std::size_t>(i)], ab);
            Val rhs = P::v_scale(b_[static_cast<std::size_t>(best)], a);
            int c = P::v_sign(P::v_sub_scaled(lhs, P::c_one(), rhs), ctx_);
            if (c < 0 ||
                (c == 0 && basis_[static_cast<std::size_t>(i)] <
                               basis_[static_cast<std::size_t>(best)]))
                best = i;
        }
        return best;
    }

    bool phase1() {
        while (true) {
            int pcol = -1;
            for (int j = 0; j < ncols_; ++j) {  // artificials never re-enter
                if (P::c_sign(cost1_[static_cast<std::size_t>(j)], ctx_) < 0 &&
                    P::pivotable(cost1_[static_cast<std::size_t>(j)], ctx_)) {
                    pcol = j;
                    break;
                }
            }
            if (pcol < 0) break;
            int prow = choose_leaving(pcol);
            if (prow < 0) break;  // cannot improve further
            pivot(prow, pcol);
        }
        Val total = P::v_zero();
        for (int i = 0; i < m_; ++i)
            if (basis_[static_cast<std::size_t>(i)] >= ncols_)
                total = P::v_add(total, b_[static_cast<std::size_t>(i)]);
        if (!P::phase1_feasible_zero(total, ctx_)) return false;

        // Drive out or drop zero-level artificials.
        for (int i = 0; i < m_; ++i) {
            if (dropped_[static_cast<std::size_t>(i)] ||
                basis_[static_cast<std::size_t>(i)] < ncols_)
                continue;
            int pivot_col = -1;
            for (int j = 0; j < ncols_; ++j)
                if (P::pivotable(A_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                 ctx_)) {
                    pivot_col = j;
                    break;
                }
            if (pivot_col >= 0)
                pivot(i, pivot_col);
            else
                dropped_[static_cast<std::size_t>(i)] = true;  // redundant row
        }
        return true;
    }

    // Returns 1 on optimal, -(col+1) when unbounded along col.
    int phase2() {
        while (true) {
            int pcol = -1;
            for (int j = 0; j < ncols_; ++j) {
                if (P::v_sign(cost2_[static_cast<std::size_t>(j)], ctx_) < 0) {
                    pcol = j;
                    break;
                }
            }
            if (pcol < 0) return 1;
            int prow = choose_leaving(pcol);
            if (prow < 0) return -pcol - 1;
            pivot(prow, pcol);
        }
    }

    std::vector<Val> structural_values() const {
        std::vector<Val> u(static_cast<std::size_t>(ncols_), P::v_zero());
        for (int i = 0; i < m_; ++i) {
            if (dropped_[static_cast<std::size_t>(i)]) continue;
            int bcol = basis_[static_cast<std::size_t>(i)];
            if (bcol < ncols_) u[static_cast<std::size_t>(bcol)] = b_[static_cast<std::size_t>(i)];
        }
        return u;
    }

    void extract_solution(LPResult& res) {
        auto u = structural_values();
        res.x.clear();
        for (const auto& vm : varmap_) {
            Val v = P::v_zero();
            if (vm.kind == VarMap::Kind::shifted)
                v = P::v_add(u[static_cast<std::size_t>(vm.col1)], P::v_from_coef(vm.base));
            else if (vm.kind == VarMap::Kind::mirrored)
                v = P::v_sub_scaled(P::v_from_coef(vm.base), P::c_one(),
                                    u[static_cast<std::size_t>(vm.col1)]);
            else
                v = P::v_sub_scaled(u[static_cast<std::size_t>(vm.col1)], P::c_one(),
                                    u[static_cast<std::size_t>(vm.col2)]);
            res.x.push_back(P::v_to_scalar(v, ctx_));
        }
        // Objective from the primal point, in the original sense.
        Scalar obj(0);
        bool first = true;
        for (int j = 0; j < p_.num_vars(); ++j) {
            Scalar term = Scalar::mul(p_.objective[static_cast<std::size_t>(j)],
                                      res.x[static_cast<std::size_t>(j)]);
            obj = first ? term : obj + term;
            first = false;
        }
        res.objective = obj;

        // Row multipliers from the artificial block of the cost row.
        res.dual.clear();
        for (int i = 0; i < norig_rows_; ++i) {
            Val y = P::v_neg(cost2_[static_cast<std::size_t>(art_col(i))]);
            if (flipped_[static_cast<std::size_t>(i)]) y = P::v_neg(y);
            if (maximize_) y = P::v_neg(y);
            res.dual.push_back(P::v_to_scalar(y, ctx_));
        }
    }

    void extract_farkas(LPResult& res) {
        res.farkas.clear();
        for (int i = 0; i < norig_rows_; ++i) {
            // Phase-I reduced cost of artificial i is 1 - y_i.
            Coef d = cost1_[static_cast<std::size_t>(art_col(i))];
            Coef y = P::c_sub_mul(P::c_one(), P::c_one(), d);
            if (flipped_[static_cast<std::size_t>(i)])
                y = P::c_sub_mul(P::c_zero(), P::c_one(), y);
            res.farkas.push_back(P::v_to_scalar(P::v_from_coef(y), ctx_));
        }
    }

    void extract_ray(LPResult& res, int pcol) {
        std::vector<Val> dir(static_cast<std::size_t>(ncols_), P::v_zero());
        dir[static_cast<std::size_t>(pcol)] = P::v_from_coef(P::c_one());
        for (int i = 0; i < m_; ++i) {
            if (dropped_[static_cast<std::size_t>(i)]) continue;
            int bcol = basis_[static_cast<std::size_t>(i)];
            if (bcol < ncols_)
                dir[static_cast<std::size_t>(bcol)] = P::v_sub_scaled(
                    P::v_zero(),
                    A_[static_cast<std::size_t>(i)][static_cast<std::size_t>(pcol)],
                    P::v_from_coef(P::c_one()));
        }
        res.ray.clear();
        for (const auto& vm : varmap_) {
            Val v = P::v_zero();
            if (vm.kind == VarMap::Kind::shifted)
                v = dir[static_cast<std::size_t>(vm.col1)];
            else if (vm.kind == VarMap::Kind::mirrored)
                v = P::v_sub_scaled(P::v_zero(), P::c_one(),
                                    dir[static_cast<std::size_t>(vm.col1)]);
            else
                v = P::v_sub_scaled(dir[static_cast<std::size_t>(vm.col1)], P::c_one(),
                                    dir[static_cast<std::size_t>(vm.col2)]);
            res.ray.push_back(P::v_to_scalar(v, ctx_));
        }
    }
};

bool needs_float(const LinearProgram& p, const NumericContext& ctx) {
    if (ctx.mode == NumericContext::Mode::floating) return true;
    for (const auto& s : p.rhs)
        if (!s.is_exact()) return true;
    for (const auto& s : p.objective)
        if (!s.is_exact()) return true;
    return false;
}

} // namespace

LPResult lp_solve(const LinearProgram& p, const NumericContext& ctx) {
    p.validate();
    if (needs_float(p, ctx)) {
        NumericContext fctx = ctx;
        fctx.mode = NumericContext::Mode::floating;
        return Simplex<FloatPolicy>(p, fctx).run();
    }
    return Simplex<ExactPolicy>(p, ctx).run();
}

StrictWitness lp_feasible_strict(const LinearProgram& system,
                                 const std::vector<int>& candidate_rows,
                                 const NumericContext& ctx) {
    system.validate();
    const int n = system.num_vars();
    for (int r : candidate_rows) {
        if (r < 0 || r >= system.num_rows())
            throw DimensionMismatch("strict row index out of range");
        Rel rel = system.relations[static_cast<std::size_t>(r)];
        if (rel == Rel::eq) continue;  // equalities cannot be strict

        LinearProgram aug = LinearProgram::with_vars(n + 1);
        aug.sense = Sense::maximize;
        aug.objective[static_cast<std::size_t>(n)] = Scalar(1);
        aug.lower = system.lower;
        aug.lower.push_back(BigRat(0));
        aug.upper = system.upper;
        aug.upper.push_back(BigRat(1));
        for (int i = 0; i < system.num_rows(); ++i) {
            std::vector<BigRat> row = system.matrix[static_cast<std::size_t>(i)];
            BigRat s(0);
            if (i == r) s = rel == Rel::ge ? BigRat(-1) : BigRat(1);
            row.push_back(s);
            aug.add_row(std::move(row), system.relations[static_cast<std::size_t>(i)],
                        system.rhs[static_cast<std::size_t>(i)]);
        }
        LPResult res = lp_solve(aug, ctx);
        if (res.status == LPResult::Status::optimal &&
            res.objective.sign(ctx) > 0) {
            StrictWitness w;
            w.feasible = true;
            w.strict_row = r;
            w.witness.assign(res.x.begin(), res.x.end() - 1);
            return w;
        }
    }
    return StrictWitness{};
}

} // namespace intlot::lp
