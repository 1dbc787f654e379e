#pragma once

#include "intlot/scalar.hpp"

#include <optional>
#include <vector>

namespace intlot::lp {

enum class Rel { le, eq, ge };
enum class Sense { minimize, maximize };

/// Linear program with exact rational constraint coefficients.
///
/// The right-hand side and the objective may carry any exact Scalar
/// (including rational-linear combinations over declared constants):
/// simplex pivots divide only by matrix entries, so solutions stay in
/// the scalar tower. Float-mode programs (any Float scalar present,
/// or a floating context) are solved in binary64 with tolerance
/// pivoting instead.
struct LinearProgram {
    Sense sense = Sense::minimize;
    std::vector<Scalar> objective;
    std::vector<std::vector<BigRat>> matrix;
    std::vector<Rel> relations;
    std::vector<Scalar> rhs;
    std::vector<std::optional<BigRat>> lower;  // nullopt = unbounded below
    std::vector<std::optional<BigRat>> upper;  // nullopt = unbounded above

    /// nvars variables, zero objective, no rows; bounds default to free.
    static LinearProgram with_vars(int nvars);
    int num_vars() const { return static_cast<int>(objective.size()); }
    int num_rows() const { return static_cast<int>(matrix.size()); }
    void add_row(std::vector<BigRat> coeffs, Rel rel, Scalar b);
    void validate() const;
};

struct LPResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    std::vector<Scalar> x;            // primal solution (optimal)
    Scalar objective;                 // optimal value
    std::vector<Scalar> dual;         // row multipliers (optimal)
    std::vector<Scalar> farkas;       // infeasibility certificate multipliers
    std::vector<Scalar> ray;          // unbounded direction (unbounded)
    bool float_mode = false;
};

LPResult lp_solve(const LinearProgram& p, const NumericContext& ctx);

/// Search for a point satisfying every row of the system with at least
/// one designated inequality strict, by maximizing an auxiliary slack
/// bounded by 1 on each candidate row in turn. With rational data this
/// also decides real feasibility of the strict system.
struct StrictWitness {
    bool feasible = false;
    std::vector<Scalar> witness;
    int strict_row = -1;
};

StrictWitness lp_feasible_strict(const LinearProgram& system,
                                 const std::vector<int>& candidate_rows,
                                 const NumericContext& ctx);

} // namespace intlot::lp
