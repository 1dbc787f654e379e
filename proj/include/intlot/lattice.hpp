#pragma once

#include "intlot/scalar.hpp"

#include <vector>

namespace intlot::lattice {

/// Lattice generators as rows in R^n. Coordinates are binary64;
/// exact scalars are converted on construction.
struct LatticeBasis {
    std::vector<std::vector<double>> generators;

    int count() const { return static_cast<int>(generators.size()); }
    int ambient() const {
        return generators.empty() ? 0 : static_cast<int>(generators[0].size());
    }
    static LatticeBasis from_scalar_rows(const std::vector<std::vector<Scalar>>& rows,
                                         const NumericContext& ctx);
    void validate() const;
};

struct CVPResult {
    enum class Status { exact_optimal, best_within_radius };
    std::vector<long long> coefficients;
    std::vector<double> point;
    double distance2 = 0.0;
    Status status = Status::best_within_radius;
};

struct LLLResult {
    LatticeBasis reduced;
    /// reduced_i = sum_j transform[i][j] * generators_j; |det| = 1.
    std::vector<std::vector<long long>> transform;
};

/// Lenstra-Lenstra-Lovasz reduction with parameter delta in (1/4, 1).
LLLResult lll_reduce(const LatticeBasis& basis, const BigRat& delta = BigRat(99, 100));

/// Independent reducedness checker: size reduction plus the Lovasz
/// condition, recomputed from scratch.
bool lovasz_check(const LatticeBasis& basis, const BigRat& delta);

/// Exact closest vector via Schnorr-Euchner enumeration on the
/// LLL-reduced basis; ties break to the lexicographically smallest
/// coefficient vector in the original generators.
CVPResult cvp_closest(const LatticeBasis& basis, const std::vector<double>& target);

/// Round the least-squares coefficients of the projected target
/// (half-to-even); cheap and possibly far from optimal.
CVPResult babai_round(const LatticeBasis& basis, const std::vector<double>& target);

/// Exhaustive search over coefficients in [-radius, radius]^m; the
/// acceptance oracle for cvp_closest.
CVPResult cvp_bruteforce(const LatticeBasis& basis, const std::vector<double>& target,
                         int radius);

/// Smallest q in [1, N] with |alpha_i q - x_i| < N^(-1/m) for all i,
/// x_i the nearest integers; existence is a theorem.
struct DirichletResult {
    BigInt q;
    std::vector<BigInt> x;
};

DirichletResult dirichlet_simultaneous(const std::vector<Scalar>& alphas, const BigInt& N,
                                       const NumericContext& ctx);

} // namespace intlot::lattice
