#include "intlot/varhedge.hpp"

#include "intlot/errors.hpp"
#include "intlot/lattice.hpp"

#include <cmath>
#include <sstream>

namespace intlot::varhedge {

using market::MarketModel;

void VarHedgeProblem::validate() const {
    market::require_valid(model);
    if (model.periods != 1)
        throw NotOnePeriod("variance-optimal hedging is built for one period");
    if (static_cast<int>(claim.payoff.size()) != model.n())
        throw DimensionMismatch("claim payoff length must equal the state count");
    if (static_cast<int>(pricing_measure.size()) != model.n())
        throw DimensionMismatch("pricing measure length must equal the state count");
    if (copies <= 0) throw InputError("the copy count must be positive");
    NumericContext ctx = model.context();
    double total = 0.0;
    for (const auto& p : pricing_measure) {
        if (p.sign(ctx) <= 0)
            throw NotMartingaleMeasure("pricing measure must charge every state");
        total += p.to_double(ctx);
    }
    if (std::fabs(total - 1.0) > 1e-9)
        throw NotMartingaleMeasure("pricing measure must sum to one");
    auto gains = market::discounted_gains(model);
    for (int j = 0; j < model.d(); ++j) {
        double drift = 0.0, scale = 1.0;
        for (int s = 0; s < model.n(); ++s) {
            double g = gains[static_cast<std::size_t>(j)][0][static_cast<std::size_t>(s)]
                           .to_double(ctx);
            drift += pricing_measure[static_cast<std::size_t>(s)].to_double(ctx) * g;
            scale = std::max(scale, std::fabs(g));
        }
        if (std::fabs(drift) > 1e-9 * scale)
            throw NotMartingaleMeasure("pricing measure must price the gains to zero");
    }
}

namespace {

struct WeightedData {
    std::vector<std::vector<double>> basis;  // d generators over the states
    std::vector<double> target;              // weighted N * centered claim
    std::vector<double> raw_gain;            // per asset per state, unweighted
    std::vector<double> weights;             // sqrt(P*)
    double target_norm2 = 0.0;
    double expected_claim = 0.0;             // E*[C] for one copy
};

WeightedData weighted_data(const VarHedgeProblem& p) {
    NumericContext ctx = p.model.context();
    const int n = p.model.n(), d = p.model.d();
    auto gains = market::discounted_gains(p.model);

    WeightedData w;
    w.weights.resize(static_cast<std::size_t>(n));
    double ec = 0.0;
    for (int s = 0; s < n; ++s) {
        double ps = p.pricing_measure[static_cast<std::size_t>(s)].to_double(ctx);
        w.weights[static_cast<std::size_t>(s)] = std::sqrt(ps);
        ec += ps * p.claim.payoff[static_cast<std::size_t>(s)].to_double(ctx);
    }
    w.expected_claim = ec;

    double df = p.model.discount_factor(1).to_double(ctx);
    w.basis.assign(static_cast<std::size_t>(d), std::vector<double>(static_cast<std::size_t>(n)));
    w.raw_gain.assign(static_cast<std::size_t>(d * n), 0.0);
    w.target.assign(static_cast<std::size_t>(n), 0.0);
    for (int s = 0; s < n; ++s) {
        double centered = (p.claim.payoff[static_cast<std::size_t>(s)].to_double(ctx) - ec) / df;
        w.target[static_cast<std::size_t>(s)] = static_cast<double>(p.copies) * centered *
                                                w.weights[static_cast<std::size_t>(s)];
        w.target_norm2 += w.target[static_cast<std::size_t>(s)] *
                          w.target[static_cast<std::size_t>(s)];
        for (int j = 0; j < d; ++j) {
            double g = gains[static_cast<std::size_t>(j)][0][static_cast<std::size_t>(s)]
                           .to_double(ctx);
            w.raw_gain[static_cast<std::size_t>(j * n + s)] = g;
            w.basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] =
                g * w.weights[static_cast<std::size_t>(s)];
        }
    }
    return w;
}

/// Residual and summary statistics for the given (real) positions.
void fill_stats(const VarHedgeProblem& p, const WeightedData& w,
                const std::vector<double>& phi, VarHedgeResult& out) {
    NumericContext ctx = p.model.context();
    const int n = p.model.n(), d = p.model.d();
    double res2 = 0.0;
    double exposure = 0.0;
    for (int s = 0; s < n; ++s) {
        double hedge = 0.0;
        for (int j = 0; j < d; ++j)
            hedge += phi[static_cast<std::size_t>(j)] *
                     w.raw_gain[static_cast<std::size_t>(j * n + s)];
        double diff = w.target[static_cast<std::size_t>(s)] -
                      hedge * w.weights[static_cast<std::size_t>(s)];
        res2 += diff * diff;
        exposure = std::max(exposure,
                            std::fabs(hedge) * w.weights[static_cast<std::size_t>(s)]);
    }
    out.residual = std::sqrt(res2);
    out.weighted_exposure = exposure;
    double norm = std::sqrt(w.target_norm2);
    if (norm <= 1e-300) {
        out.zero_norm = true;
        out.rmse = 0.0;
    } else {
        out.rmse = out.residual / norm;
    }
    out.max_position = 0.0;
    for (double v : phi) out.max_position = std::max(out.max_position, std::fabs(v));
    double df = p.model.discount_factor(1).to_double(ctx);
    out.initial_value = static_cast<double>(p.copies) * w.expected_claim / df;
}

/// Symmetric eigen-decomposition by cyclic Jacobi; enough for the tiny
/// Gram matrices that show up here.
void jacobi_eigen(std::vector<std::vector<double>>& a, std::vector<std::vector<double>>& v) {
    const int n = static_cast<int>(a.size());
    v.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                off += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                       a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (off < 1e-26) break;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double aij = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (std::fabs(aij) < 1e-300) continue;
                double theta = (a[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] -
                                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]) /
                               (2.0 * aij);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    double aki = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
                    double akj = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                    a[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = c * aki - s * akj;
                    a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = s * aki + c * akj;
                }
                for (int k = 0; k < n; ++k) {
                    double aik = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                    double ajk = a[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = c * aik - s * ajk;
                    a[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = s * aik + c * ajk;
                    double vik = v[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                    double vjk = v[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                    v[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = c * vik - s * vjk;
                    v[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = s * vik + c * vjk;
                }
            }
    }
}

/// Minimum-norm least-squares coefficients of the target against the
/// basis rows, through the pseudo-inverse of the Gram matrix.
std::vector<double> min_norm_ls(const std::vector<std::vector<double>>& basis,
                                const std::vector<double>& target) {
    const int d = static_cast<int>(basis.size());
    std::vector<std::vector<double>> gram(static_cast<std::size_t>(d),
                                          std::vector<double>(static_cast<std::size_t>(d)));
    std::vector<double> rhs(static_cast<std::size_t>(d), 0.0);
    double scale = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < target.size(); ++k)
                acc += basis[static_cast<std::size_t>(i)][k] * basis[static_cast<std::size_t>(j)][k];
            gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
        }
        scale = std::max(scale, gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);
        double acc = 0.0;
        for (std::size_t k = 0; k < target.size(); ++k)
            acc += basis[static_cast<std::size_t>(i)][k] * target[k];
        rhs[static_cast<std::size_t>(i)] = acc;
    }
    std::vector<std::vector<double>> vecs;
    jacobi_eigen(gram, vecs);  // gram now diagonal in its own frame
    std::vector<double> out(static_cast<std::size_t>(d), 0.0);
    for (int e = 0; e < d; ++e) {
        double lambda = gram[static_cast<std::size_t>(e)][static_cast<std::size_t>(e)];
        if (lambda <= 1e-12 * scale) continue;  // rank deficiency: drop the direction
        double proj = 0.0;
        for (int i = 0; i < d; ++i)
            proj += vecs[static_cast<std::size_t>(e)][static_cast<std::size_t>(i)] *
                    rhs[static_cast<std::size_t>(i)];
        for (int i = 0; i < d; ++i)
            out[static_cast<std::size_t>(i)] += proj / lambda *
                                                vecs[static_cast<std::size_t>(e)]
                                                    [static_cast<std::size_t>(i)];
    }
    return out;
}

} // namespace

VarHedgeResult classical_var_hedge(const VarHedgeProblem& p) {
    p.validate();
    WeightedData w = weighted_data(p);
    // One-copy projection scaled by N keeps homogeneity exact.
    std::vector<double> unit_target = w.target;
    for (auto& v : unit_target) v /= static_cast<double>(p.copies);
    std::vector<double> phi = min_norm_ls(w.basis, unit_target);
    for (auto& v : phi) v *= static_cast<double>(p.copies);
    VarHedgeResult out;
    out.method = Method::classical;
    out.positions = phi;
    fill_stats(p, w, phi, out);
    return out;
}

VarHedgeResult integer_var_hedge(const VarHedgeProblem& p) {
    p.validate();
    WeightedData w = weighted_data(p);
    lattice::LatticeBasis basis;
    basis.generators = w.basis;
    lattice::CVPResult cvp = lattice::cvp_closest(basis, w.target);
    VarHedgeResult out;
    out.method = Method::cvp;
    out.int_positions = cvp.coefficients;
    std::vector<double> phi;
    for (long long v : cvp.coefficients) phi.push_back(static_cast<double>(v));
    fill_stats(p, w, phi, out);
    return out;
}

VarHedgeResult rounded_var_hedge(const VarHedgeProblem& p) {
    VarHedgeResult classical = classical_var_hedge(p);
    WeightedData w = weighted_data(p);
    VarHedgeResult out;
    out.method = Method::rounding;
    std::vector<double> phi;
    for (double v : classical.positions) {
        double r = std::nearbyint(v);  // ties to even
        out.int_positions.push_back(static_cast<long long>(r));
        phi.push_back(r);
    }
    fill_stats(p, w, phi, out);
    return out;
}

VarHedgeReport var_hedge_report(const MarketModel& m, const market::Claim& c,
                                const std::vector<Scalar>& pricing_measure,
                                const std::vector<long long>& copies) {
    VarHedgeReport rep;
    for (long long n : copies) {
        VarHedgeProblem p{m, c, pricing_measure, n};
        VarHedgeRow row;
        row.copies = n;
        row.classical = classical_var_hedge(p);
        row.cvp = integer_var_hedge(p);
        row.rounding = rounded_var_hedge(p);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::string render_table(const VarHedgeReport& report) {
    auto fmt = [](double v, int prec) {
        std::ostringstream os;
        os.setf(std::ios::fixed);
        os.precision(prec);
        os << v;
        return os.str();
    };
    std::vector<std::vector<std::string>> cells(7);
    cells[0].push_back("N");
    cells[1].push_back("classical: rMSE");
    cells[2].push_back("classical: position size");
    cells[3].push_back("CVP: rMSE");
    cells[4].push_back("CVP: position size");
    cells[5].push_back("rounding: rMSE");
    cells[6].push_back("rounding: position size");
    for (const auto& row : report.rows) {
        cells[0].push_back(std::to_string(row.copies));
        cells[1].push_back(fmt(row.classical.rmse, 3));
        cells[2].push_back(fmt(row.classical.weighted_exposure, 3));
        cells[3].push_back(fmt(row.cvp.rmse, 3));
        cells[4].push_back(fmt(row.cvp.max_position, 0));
        cells[5].push_back(fmt(row.rounding.rmse, 3));
        cells[6].push_back(fmt(row.rounding.max_position, 0));
    }
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto& line : cells)
        for (std::size_t i = 0; i < line.size(); ++i)
            width[i] = std::max(width[i], line[i].size());
    std::ostringstream os;
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            os << (i == 0 ? "" : " | ");
            os << std::string(width[i] - line[i].size(), ' ') << line[i];
        }
        os << "\n";
    }
    return os.str();
}

} // namespace intlot::varhedge
