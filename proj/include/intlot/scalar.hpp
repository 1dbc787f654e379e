#pragma once

#include "intlot/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace intlot {

/// Evaluation context: numeric mode, float tolerance, and the table of
/// named irrational constants with on-demand decimal expansions.
///
/// The constants "pi" and "sqrt2" are built in and computed to any
/// precision up to max_digits. User constants come as decimal strings
/// (at least 50 significant digits). The rational independence of
/// {1} and the declared constants is asserted by the model author,
/// not verified.
struct NumericContext {
    enum class Mode { exact, floating };
    Mode mode = Mode::exact;
    double zero_tolerance = 1e-9;
    int max_digits = 1000;
    std::map<std::string, std::string> user_constants;

    bool has_constant(const std::string& name) const;
    /// M with |value * 10^digits - M| <= 2.
    BigInt constant_scaled(const std::string& name, int digits) const;

    static NumericContext exact_default();
    static NumericContext float_default(double tol = 1e-9);
};

/// Certified enclosure: |true_value - value| <= error.
struct Approx {
    BigRat value;
    BigRat error;
};

/// One value of the numeric tower: an exact rational, an exact
/// rational-linear combination over declared constants, or a
/// tolerance-carrying binary64.
///
/// Canonical form: no zero coefficients in the term map; a linear
/// combination with no terms *is* a rational. Products of two
/// genuinely irrational values are rejected (NonlinearError) --
/// everything downstream is linear in prices, so rational * value
/// is all that is ever required.
class Scalar {
public:
    enum class Kind { rational, linear, real };

    Scalar() : kind_(Kind::rational) {}
    Scalar(long long v) : kind_(Kind::rational), q0_(v) {}  // NOLINT
    Scalar(BigRat q) : kind_(Kind::rational), q0_(std::move(q)) {}  // NOLINT
    static Scalar rational(BigRat q) { return Scalar(std::move(q)); }
    static Scalar constant(const std::string& name, BigRat coeff = BigRat(1));
    static Scalar linear(BigRat q0, std::map<std::string, BigRat> terms);
    static Scalar real(double v);

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ != Kind::real; }
    bool is_rational() const { return kind_ == Kind::rational; }
    const BigRat& rat() const;           // rational kind only
    double dbl() const;                  // real kind only
    const BigRat& rational_part() const { return q0_; }
    const std::map<std::string, BigRat>& terms() const { return terms_; }

    /// Structural zero: all coefficients vanish (exact kinds) or the
    /// stored double is exactly 0. Tolerance handling lives in sign().
    bool exact_zero() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    bool operator==(const Scalar& o) const;  // exact structural equality
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// this + c * b; c exact rational, valid in both modes.
    Scalar add_scale(const BigRat& c, const Scalar& b) const;
    Scalar scale(const BigRat& c) const;

    /// Product; throws NonlinearError if both factors are irrational.
    static Scalar mul(const Scalar& a, const Scalar& b);
    /// Quotient; divisor must be rational-valued, or a rational multiple
    /// of the dividend's direction.
    static Scalar div(const Scalar& a, const Scalar& b);

    /// If this = q * dir for a rational q (as coefficient vectors), return q.
    std::optional<BigRat> rational_ratio_to(const Scalar& dir) const;

    int sign(const NumericContext& ctx) const;  // -1, 0, +1
    Scalar abs(const NumericContext& ctx) const;
    static int compare(const Scalar& a, const Scalar& b, const NumericContext& ctx);

    /// Certified enclosure at the given decimal precision.
    Approx approximate(int digits, const NumericContext& ctx) const;
    double to_double(const NumericContext& ctx) const;
    BigInt floor_int(const NumericContext& ctx) const;
    BigInt nearest_int(const NumericContext& ctx) const;
    /// Correctly rounded to `digits` significant digits.
    std::string to_decimal(int digits, const NumericContext& ctx) const;

    /// Human-readable exact form, e.g. "3/2 + 2*sqrt2".
    std::string to_string() const;

private:
    Kind kind_;
    BigRat q0_;
    std::map<std::string, BigRat> terms_;
    double dval_ = 0.0;

    void canonicalize();
    static void require_same_mode(const Scalar& a, const Scalar& b);
};

/// Spec-facing names.
inline Scalar scalar_add_scale(const Scalar& a, const BigRat& c, const Scalar& b) {
    return a.add_scale(c, b);
}
inline int scalar_sign(const Scalar& a, const NumericContext& ctx) { return a.sign(ctx); }
inline std::string scalar_to_decimal(const Scalar& a, int digits,
                                     const NumericContext& ctx) {
    return a.to_decimal(digits, ctx);
}

/// Parse the scalar literal grammar shared by model files and the CLI:
/// integer, "p/q", decimal (float mode only), or a {q, terms} object
/// rendered as text; the io module handles the JSON binding.
Scalar parse_scalar_literal(const std::string& text);

} // namespace intlot
