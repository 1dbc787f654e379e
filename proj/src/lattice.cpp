#include "intlot/lattice.hpp"

#include "intlot/errors.hpp"
#include "intlot/market.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace intlot::lattice {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return dot(a, a); }

struct GramSchmidt {
    std::vector<std::vector<double>> star;  // orthogonal vectors
    std::vector<std::vector<double>> mu;    // mu[i][j], j < i
    std::vector<double> star_norm2;
};

GramSchmidt gram_schmidt(const std::vector<std::vector<double>>& rows) {
    const int m = static_cast<int>(rows.size());
    GramSchmidt gs;
    gs.star.assign(rows.begin(), rows.end());
    gs.mu.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(m), 0.0));
    gs.star_norm2.assign(static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < i; ++j) {
            double denom = gs.star_norm2[static_cast<std::size_t>(j)];
            double m_ij = denom > 0 ? dot(rows[static_cast<std::size_t>(i)],
                                          gs.star[static_cast<std::size_t>(j)]) / denom
                                    : 0.0;
            gs.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m_ij;
            for (std::size_t k = 0; k < gs.star[static_cast<std::size_t>(i)].size(); ++k)
                gs.star[static_cast<std::size_t>(i)][k] -=
                    m_ij * gs.star[static_cast<std::size_t>(j)][k];
        }
        gs.star_norm2[static_cast<std::size_t>(i)] =
            norm2(gs.star[static_cast<std::size_t>(i)]);
    }
    return gs;
}

double max_row_norm2(const std::vector<std::vector<double>>& rows) {
    double best = 0.0;
    for (const auto& r : rows) best = std::max(best, norm2(r));
    return best;
}

void require_independent(const GramSchmidt& gs, double scale) {
    for (double s : gs.star_norm2)
        if (!(s > scale * 1e-20))
            throw DependentGenerators("lattice generators are linearly dependent");
}

/// Least-squares coefficients of target against the rows (projection
/// onto the span), via normal equations with partial pivoting.
std::vector<double> ls_coefficients(const std::vector<std::vector<double>>& rows,
                                    const std::vector<double>& target) {
    const int m = static_cast<int>(rows.size());
    std::vector<std::vector<double>> A(static_cast<std::size_t>(m),
                                       std::vector<double>(static_cast<std::size_t>(m + 1)));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j)
            A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                dot(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(j)]);
        A[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] =
            dot(rows[static_cast<std::size_t>(i)], target);
    }
    double scale = 0.0;
    for (int i = 0; i < m; ++i)
        scale = std::max(scale, std::fabs(A[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]));
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::fabs(A[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
                std::fabs(A[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
                piv = r;
        if (std::fabs(A[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]) <=
            scale * 1e-13)
            throw DependentGenerators("Gram matrix is numerically singular");
        std::swap(A[static_cast<std::size_t>(piv)], A[static_cast<std::size_t>(col)]);
        for (int r = 0; r < m; ++r) {
            if (r == col) continue;
            double f = A[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                       A[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            for (int c = col; c <= m; ++c)
                A[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                    f * A[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        x[static_cast<std::size_t>(i)] = A[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] /
                                         A[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    return x;
}

std::vector<double> combine(const std::vector<std::vector<double>>& rows,
                            const std::vector<long long>& coeffs) {
    std::vector<double> p(rows.empty() ? 0 : rows[0].size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < p.size(); ++k)
            p[k] += static_cast<double>(coeffs[i]) * rows[i][k];
    return p;
}

double dist2_to(const std::vector<std::vector<double>>& rows,
                const std::vector<long long>& coeffs, const std::vector<double>& target) {
    auto p = combine(rows, coeffs);
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        double d = target[k] - p[k];
        s += d * d;
    }
    return s;
}

} // namespace

LatticeBasis LatticeBasis::from_scalar_rows(const std::vector<std::vector<Scalar>>& rows,
                                            const NumericContext& ctx) {
    LatticeBasis b;
    for (const auto& row : rows) {
        std::vector<double> r;
        for (const auto& v : row) r.push_back(v.to_double(ctx));
        b.generators.push_back(std::move(r));
    }
    b.validate();
    return b;
}

void LatticeBasis::validate() const {
    if (generators.empty()) throw InputError("lattice basis needs at least one generator");
    for (const auto& r : generators)
        if (static_cast<int>(r.size()) != ambient())
            throw DimensionMismatch("lattice generators must share one ambient dimension");
    if (count() > ambient())
        throw DependentGenerators("more generators than ambient dimensions");
}

LLLResult lll_reduce(const LatticeBasis& basis, const BigRat& delta) {
    basis.validate();
    if (!(BigRat(1, 4) < delta && delta < BigRat(1)))
        throw InputError("LLL delta must lie in (1/4, 1)");
    const double del = delta.to_double();
    const int m = basis.count();

    std::vector<std::vector<double>> b = basis.generators;
    std::vector<std::vector<long long>> U(
        static_cast<std::size_t>(m), std::vector<long long>(static_cast<std::size_t>(m), 0));
    for (int i = 0; i < m; ++i) U[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;

    const double scale = max_row_norm2(b);
    GramSchmidt gs = gram_schmidt(b);
    require_independent(gs, scale);

    auto size_reduce = [&](int i, int j) {
        double m_ij = gs.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (std::fabs(m_ij) <= 0.5) return;
        long long r = std::llround(m_ij);
        for (std::size_t k = 0; k < b[static_cast<std::size_t>(i)].size(); ++k)
            b[static_cast<std::size_t>(i)][k] -=
                static_cast<double>(r) * b[static_cast<std::size_t>(j)][k];
        for (int k = 0; k < m; ++k)
            U[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] -=
                r * U[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        gs = gram_schmidt(b);
    };

    int k = 1;
    int guard = 10000 * m * m + 1000;
    while (k < m && guard-- > 0) {
        for (int j = k - 1; j >= 0; --j) size_reduce(k, j);
        double lhs = gs.star_norm2[static_cast<std::size_t>(k)];
        double mu = gs.mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(k - 1)];
        double rhs = (del - mu * mu) * gs.star_norm2[static_cast<std::size_t>(k - 1)];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(k - 1)]);
            std::swap(U[static_cast<std::size_t>(k)], U[static_cast<std::size_t>(k - 1)]);
            gs = gram_schmidt(b);
            k = std::max(k - 1, 1);
        }
    }
    if (guard <= 0) throw NumericalBreakdown("LLL failed to converge");

    LLLResult out;
    out.reduced.generators = std::move(b);
    out.transform = std::move(U);
    return out;
}

bool lovasz_check(const LatticeBasis& basis, const BigRat& delta) {
    GramSchmidt gs = gram_schmidt(basis.generators);
    const double del = delta.to_double();
    const int m = basis.count();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < i; ++j)
            if (std::fabs(gs.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) >
                0.5 + 1e-9)
                return false;
    for (int i = 1; i < m; ++i) {
        double mu = gs.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)];
        if (gs.star_norm2[static_cast<std::size_t>(i)] <
            (del - mu * mu) * gs.star_norm2[static_cast<std::size_t>(i - 1)] - 1e-9)
            return false;
    }
    return true;
}

namespace {

/// Depth-first Schnorr-Euchner enumeration over the reduced basis.
/// Coefficients are fixed from the last generator down; per level the
/// integers are visited nearest-first around the continuous optimum, an
/// ordering under which the level's cost term is nondecreasing, so the
/// first candidate outside the pruning ball ends the level.
class Enumerator {
public:
    /// tauhat[j] = <target, r*_j> / |r*_j|^2.
    Enumerator(const GramSchmidt& gs, std::vector<double> tauhat, int m)
        : gs_(gs), tauhat_(std::move(tauhat)), m_(m),
          coeff_(static_cast<std::size_t>(m), 0) {}

    void run() {
        best_ = std::numeric_limits<double>::infinity();
        descend(m_ - 1, 0.0);
    }

    const std::vector<std::vector<long long>>& candidates() const { return cands_; }

private:
    const GramSchmidt& gs_;
    std::vector<double> tauhat_;
    int m_;
    std::vector<long long> coeff_;
    double best_ = 0.0;
    std::vector<std::vector<long long>> cands_;
    static constexpr double kTieTol = 1e-9;

    double bound() const {
        return best_ == std::numeric_limits<double>::infinity()
                   ? best_
                   : best_ + kTieTol * (1.0 + best_);
    }

    void descend(int level, double partial) {
        if (level < 0) {
            if (partial < best_ - kTieTol * (1.0 + best_) ||
                best_ == std::numeric_limits<double>::infinity()) {
                best_ = partial;
                cands_.clear();
                cands_.push_back(coeff_);
            } else if (partial <= bound()) {
                cands_.push_back(coeff_);
            }
            return;
        }
        const double w2 = gs_.star_norm2[static_cast<std::size_t>(level)];
        double y = tauhat_[static_cast<std::size_t>(level)];
        for (int i = level + 1; i < m_; ++i)
            y -= static_cast<double>(coeff_[static_cast<std::size_t>(i)]) *
                 gs_.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(level)];
        const long long c0 = std::llround(y);
        const int dir = (y - static_cast<double>(c0)) >= 0 ? 1 : -1;
        for (int step = 0;; ++step) {
            long long cand = c0;
            if (step % 2 == 1)
                cand = c0 + dir * ((step + 1) / 2);
            else if (step > 0)
                cand = c0 - dir * (step / 2);
            double diff = y - static_cast<double>(cand);
            double d = partial + diff * diff * w2;
            if (d > bound()) break;
            coeff_[static_cast<std::size_t>(level)] = cand;
            descend(level - 1, d);
        }
    }
};

} // namespace

CVPResult cvp_closest(const LatticeBasis& basis, const std::vector<double>& target) {
    basis.validate();
    if (static_cast<int>(target.size()) != basis.ambient())
        throw DimensionMismatch("cvp target dimension mismatch");
    LLLResult red = lll_reduce(basis);
    const auto& rows = red.reduced.generators;
    const int m = static_cast<int>(rows.size());

    GramSchmidt gs = gram_schmidt(rows);
    require_independent(gs, max_row_norm2(rows));

    // Projection of the target: only the in-span coordinates matter for
    // the argmin, the orthogonal residue being a constant offset.
    std::vector<double> tauhat(static_cast<std::size_t>(m), 0.0);
    for (int j = 0; j < m; ++j)
        tauhat[static_cast<std::size_t>(j)] =
            dot(target, gs.star[static_cast<std::size_t>(j)]) /
            gs.star_norm2[static_cast<std::size_t>(j)];

    Enumerator en(gs, tauhat, m);
    en.run();
    if (en.candidates().empty()) throw InvariantViolation("CVP enumeration found nothing");

    // Map reduced coefficients back to the original generators and break
    // ties lexicographically there; distances recomputed exactly against
    // the original data.
    std::vector<long long> best_phi;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& c : en.candidates()) {
        std::vector<long long> phi(static_cast<std::size_t>(m), 0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                phi[static_cast<std::size_t>(j)] +=
                    c[static_cast<std::size_t>(i)] *
                    red.transform[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        double d = dist2_to(basis.generators, phi, target);
        if (best_phi.empty()) {
            best_d = d;
            best_phi = phi;
            continue;
        }
        bool better = d < best_d - 1e-12 * (1.0 + best_d);
        bool tie = !better && d <= best_d + 1e-12 * (1.0 + best_d);
        if (better || (tie && phi < best_phi)) {
            best_d = d;
            best_phi = phi;
        }
    }

    CVPResult res;
    res.coefficients = best_phi;
    res.point = combine(basis.generators, best_phi);
    res.distance2 = best_d;
    res.status = CVPResult::Status::exact_optimal;
    return res;
}

CVPResult babai_round(const LatticeBasis& basis, const std::vector<double>& target) {
    basis.validate();
    if (static_cast<int>(target.size()) != basis.ambient())
        throw DimensionMismatch("babai target dimension mismatch");
    std::vector<double> real = ls_coefficients(basis.generators, target);
    CVPResult res;
    for (double v : real) {
        double r = std::nearbyint(v);  // round half to even
        res.coefficients.push_back(static_cast<long long>(r));
    }
    res.point = combine(basis.generators, res.coefficients);
    res.distance2 = dist2_to(basis.generators, res.coefficients, target);
    res.status = CVPResult::Status::best_within_radius;
    return res;
}

CVPResult cvp_bruteforce(const LatticeBasis& basis, const std::vector<double>& target,
                         int radius) {
    basis.validate();
    if (radius < 0) throw InputError("cvp_bruteforce: radius must be nonnegative");
    const int m = basis.count();
    double count = static_cast<double>(m);
    for (int i = 0; i < m; ++i) count *= 2.0 * radius + 1.0;
    if (count > 1e8) throw BudgetExceeded("cvp_bruteforce: enumeration budget exceeded");

    std::vector<long long> c(static_cast<std::size_t>(m), -radius);
    std::vector<long long> best = c;
    double best_d = dist2_to(basis.generators, c, target);
    while (true) {
        double d = dist2_to(basis.generators, c, target);
        if (d < best_d - 1e-12 * (1.0 + best_d)) {
            best_d = d;
            best = c;
        }
        int i = m - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == radius) {
            c[static_cast<std::size_t>(i)] = -radius;
            --i;
        }
        if (i < 0) break;
        ++c[static_cast<std::size_t>(i)];
    }
    CVPResult res;
    res.coefficients = best;
    res.point = combine(basis.generators, best);
    res.distance2 = best_d;
    res.status = CVPResult::Status::best_within_radius;
    return res;
}

DirichletResult dirichlet_simultaneous(const std::vector<Scalar>& alphas, const BigInt& N,
                                       const NumericContext& ctx) {
    if (N < BigInt(2)) throw InputError("dirichlet_simultaneous: N must exceed 1");
    if (alphas.empty()) throw InputError("dirichlet_simultaneous: empty input");
    const int m = static_cast<int>(alphas.size());
    for (BigInt q(1); q <= N; q = q + BigInt(1)) {
        DirichletResult out;
        out.q = q;
        bool ok = true;
        for (const auto& a : alphas) {
            Scalar aq = a.scale(BigRat(q));
            BigInt x = aq.nearest_int(ctx);
            Scalar err = aq - Scalar(BigRat(x));
            if (!market::abs_less_inverse_root(err, N, m, ctx)) {
                ok = false;
                break;
            }
            out.x.push_back(x);
        }
        if (ok) return out;
    }
    throw SearchFailed("dirichlet_simultaneous: theorem-guaranteed q not found");
}

} // namespace intlot::lattice
