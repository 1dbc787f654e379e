#include "intlot/scalar.hpp"

#include "intlot/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <sstream>

namespace intlot {

namespace {

// ---- built-in constant expansions -------------------------------------

// arctan(1/x) scaled by S, floor-truncated; error below 2*(#terms+1) ulps.
BigInt atan_inv_scaled(std::uint32_t x, const BigInt& scale) {
    BigInt sum(0);
    BigInt power = scale / BigInt(static_cast<long long>(x));
    const std::uint64_t x2 = static_cast<std::uint64_t>(x) * x;
    long long k = 0;
    while (!power.is_zero()) {
        BigInt term = power / BigInt(2 * k + 1);
        if (term.is_zero() && k > 0) break;
        sum = (k % 2 == 0) ? sum + term : sum - term;
        power = power / BigInt(static_cast<long long>(x2));
        ++k;
    }
    return sum;
}

// pi * 10^digits with error at most 2, via Machin's formula.
BigInt pi_scaled_uncached(int digits) {
    const int guard = 12;
    BigInt scale = BigInt::pow10(static_cast<std::size_t>(digits + guard));
    BigInt pi_g = BigInt(16) * atan_inv_scaled(5, scale) -
                  BigInt(4) * atan_inv_scaled(239, scale);
    return pi_g / BigInt::pow10(guard);
}

BigInt sqrt2_scaled_uncached(int digits) {
    BigInt two_sq = BigInt(2) * BigInt::pow10(static_cast<std::size_t>(2 * digits));
    return BigInt::isqrt(two_sq);
}

struct ConstCache {
    std::mutex mu;
    std::map<std::pair<std::string, int>, BigInt> values;
};

ConstCache& cache() {
    static ConstCache c;
    return c;
}

BigInt builtin_scaled(const std::string& name, int digits) {
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    auto key = std::make_pair(name, digits);
    auto it = c.values.find(key);
    if (it != c.values.end()) return it->second;
    BigInt v = name == "pi" ? pi_scaled_uncached(digits) : sqrt2_scaled_uncached(digits);
    c.values.emplace(key, v);
    return v;
}

// Decimal-string constant truncated at `digits` fractional places.
BigInt user_scaled(const std::string& name, const std::string& text, int digits) {
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    auto dot = s.find('.');
    std::string ip = dot == std::string::npos ? s : s.substr(0, dot);
    std::string fp = dot == std::string::npos ? "" : s.substr(dot + 1);
    if (static_cast<int>(fp.size()) < digits)
        throw PrecisionExhausted("constant '" + name + "' provides only " +
                                 std::to_string(fp.size()) + " fractional digits, " +
                                 std::to_string(digits) + " requested");
    fp = fp.substr(0, static_cast<std::size_t>(digits));
    BigInt v = BigInt::from_string(ip.empty() ? "0" : ip) *
                   BigInt::pow10(static_cast<std::size_t>(digits)) +
               BigInt::from_string(fp.empty() ? "0" : fp);
    return neg ? -v : v;
}

} // namespace

bool NumericContext::has_constant(const std::string& name) const {
    return name == "pi" || name == "sqrt2" || user_constants.count(name) > 0;
}

BigInt NumericContext::constant_scaled(const std::string& name, int digits) const {
    auto it = user_constants.find(name);
    if (it != user_constants.end()) return user_scaled(name, it->second, digits);
    if (name == "pi" || name == "sqrt2") return builtin_scaled(name, digits);
    throw UnknownConstant("unknown constant '" + name + "'");
}

NumericContext NumericContext::exact_default() { return NumericContext{}; }

NumericContext NumericContext::float_default(double tol) {
    NumericContext ctx;
    ctx.mode = Mode::floating;
    ctx.zero_tolerance = tol;
    return ctx;
}

// ---- Scalar ------------------------------------------------------------

void Scalar::canonicalize() {
    if (kind_ != Kind::linear) return;
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
    if (terms_.empty()) kind_ = Kind::rational;
}

Scalar Scalar::constant(const std::string& name, BigRat coeff) {
    Scalar s;
    s.kind_ = Kind::linear;
    s.terms_[name] = std::move(coeff);
    s.canonicalize();
    return s;
}

Scalar Scalar::linear(BigRat q0, std::map<std::string, BigRat> terms) {
    Scalar s;
    s.kind_ = Kind::linear;
    s.q0_ = std::move(q0);
    s.terms_ = std::move(terms);
    s.canonicalize();
    return s;
}

Scalar Scalar::real(double v) {
    Scalar s;
    s.kind_ = Kind::real;
    s.dval_ = v;
    return s;
}

const BigRat& Scalar::rat() const {
    if (kind_ != Kind::rational)
        throw InvariantViolation("Scalar::rat on non-rational value " + to_string());
    return q0_;
}

double Scalar::dbl() const {
    if (kind_ != Kind::real) throw InvariantViolation("Scalar::dbl on exact value");
    return dval_;
}

bool Scalar::exact_zero() const {
    if (kind_ == Kind::real) return dval_ == 0.0;
    return q0_.is_zero() && terms_.empty();
}

void Scalar::require_same_mode(const Scalar& a, const Scalar& b) {
    if ((a.kind_ == Kind::real) != (b.kind_ == Kind::real))
        throw MixedModeError("cannot combine float and exact scalars (" +
                             a.to_string() + ", " + b.to_string() + ")");
}

Scalar Scalar::operator-() const { return scale(BigRat(-1)); }

Scalar Scalar::operator+(const Scalar& o) const { return add_scale(BigRat(1), o); }

Scalar Scalar::operator-(const Scalar& o) const { return add_scale(BigRat(-1), o); }

bool Scalar::operator==(const Scalar& o) const {
    if ((kind_ == Kind::real) != (o.kind_ == Kind::real)) return false;
    if (kind_ == Kind::real) return dval_ == o.dval_;
    return (*this - o).exact_zero();
}

Scalar Scalar::add_scale(const BigRat& c, const Scalar& b) const {
    require_same_mode(*this, b);
    if (kind_ == Kind::real)
        return real(dval_ + c.to_double() * b.dval_);
    Scalar r = *this;
    r.q0_ += c * b.q0_;
    for (const auto& [name, coeff] : b.terms_) {
        auto it = r.terms_.find(name);
        if (it == r.terms_.end())
            r.terms_[name] = c * coeff;
        else
            it->second += c * coeff;
    }
    if (!r.terms_.empty()) r.kind_ = Kind::linear;
    r.canonicalize();
    return r;
}

Scalar Scalar::scale(const BigRat& c) const {
    if (kind_ == Kind::real) return real(c.to_double() * dval_);
    Scalar r = *this;
    r.q0_ *= c;
    for (auto& [name, coeff] : r.terms_) coeff *= c;
    r.canonicalize();
    return r;
}

Scalar Scalar::mul(const Scalar& a, const Scalar& b) {
    if (a.kind_ == Kind::real && b.kind_ == Kind::real)
        return real(a.dval_ * b.dval_);
    if (a.kind_ == Kind::rational) return b.scale(a.q0_);
    if (b.kind_ == Kind::rational) return a.scale(b.q0_);
    throw NonlinearError("product of two irrational values: " + a.to_string() +
                         " * " + b.to_string());
}

std::optional<BigRat> Scalar::rational_ratio_to(const Scalar& dir) const {
    if (kind_ == Kind::real || dir.kind_ == Kind::real) return std::nullopt;
    if (dir.exact_zero()) return exact_zero() ? std::optional<BigRat>(BigRat(0)) : std::nullopt;
    // Find the ratio from any nonzero coefficient of dir, then verify.
    BigRat ratio;
    if (!dir.q0_.is_zero()) {
        ratio = q0_ / dir.q0_;
    } else {
        const auto& [name, coeff] = *dir.terms_.begin();
        auto it = terms_.find(name);
        if (it == terms_.end()) return exact_zero() ? std::optional<BigRat>(BigRat(0)) : std::nullopt;
        ratio = it->second / coeff;
    }
    return (*this - dir.scale(ratio)).exact_zero() ? std::optional<BigRat>(ratio)
                                                   : std::nullopt;
}

Scalar Scalar::div(const Scalar& a, const Scalar& b) {
    if (a.kind_ == Kind::real && b.kind_ == Kind::real) {
        if (b.dval_ == 0.0) throw InvariantViolation("Scalar: division by zero");
        return real(a.dval_ / b.dval_);
    }
    if (b.kind_ == Kind::rational) {
        if (b.q0_.is_zero()) throw InvariantViolation("Scalar: division by zero");
        return a.scale(b.q0_.inverse());
    }
    if (auto ratio = a.rational_ratio_to(b)) return Scalar(*ratio);
    throw NonlinearError("quotient leaves the rational-linear domain: " +
                         a.to_string() + " / " + b.to_string());
}

Approx Scalar::approximate(int digits, const NumericContext& ctx) const {
    if (kind_ == Kind::real) return Approx{BigRat::from_double(dval_), BigRat(0)};
    if (kind_ == Kind::rational) return Approx{q0_, BigRat(0)};
    BigRat scale(BigInt(1), BigInt::pow10(static_cast<std::size_t>(digits)));
    BigRat value = q0_;
    BigRat err(0);
    for (const auto& [name, coeff] : terms_) {
        BigInt m = ctx.constant_scaled(name, digits);
        value += coeff * BigRat(m) * scale;
        err += coeff.abs() * BigRat(2) * scale;
    }
    return Approx{value, err};
}

int Scalar::sign(const NumericContext& ctx) const {
    if (kind_ == Kind::real) {
        if (std::fabs(dval_) <= ctx.zero_tolerance) return 0;
        return dval_ > 0 ? 1 : -1;
    }
    if (kind_ == Kind::rational) return q0_.sign();
    // All-zero coefficients were canonicalized away, so the value is
    // nonzero by the independence assertion; escalate until the
    // enclosure excludes zero.
    for (int digits = 50; digits <= ctx.max_digits; digits *= 2) {
        int d = std::min(digits, ctx.max_digits);
        Approx a = approximate(d, ctx);
        if (a.value > a.error) return 1;
        if (a.value < -a.error) return -1;
        if (d == ctx.max_digits) break;
    }
    throw PrecisionExhausted("sign of " + to_string() + " still brackets zero at " +
                             std::to_string(ctx.max_digits) + " digits");
}

Scalar Scalar::abs(const NumericContext& ctx) const {
    return sign(ctx) < 0 ? -*this : *this;
}

int Scalar::compare(const Scalar& a, const Scalar& b, const NumericContext& ctx) {
    return (a - b).sign(ctx);
}

double Scalar::to_double(const NumericContext& ctx) const {
    if (kind_ == Kind::real) return dval_;
    if (kind_ == Kind::rational) return q0_.to_double();
    return approximate(50, ctx).value.to_double();
}

BigInt Scalar::floor_int(const NumericContext& ctx) const {
    if (kind_ == Kind::real) return BigRat::from_double(std::floor(dval_)).floor();
    if (kind_ == Kind::rational) return q0_.floor();
    for (int digits = 50; digits <= ctx.max_digits; digits *= 2) {
        int d = std::min(digits, ctx.max_digits);
        Approx a = approximate(d, ctx);
        BigInt lo = (a.value - a.error).floor();
        BigInt hi = (a.value + a.error).floor();
        if (lo == hi) return lo;
        if (d == ctx.max_digits) break;
    }
    throw PrecisionExhausted("floor of " + to_string() + " is precision-ambiguous");
}

BigInt Scalar::nearest_int(const NumericContext& ctx) const {
    if (kind_ == Kind::real) return BigRat::from_double(dval_).round_half_even();
    if (kind_ == Kind::rational) return q0_.round_half_even();
    Scalar shifted = add_scale(BigRat(1), Scalar(BigRat(1, 2)));
    return shifted.floor_int(ctx);
}

std::string Scalar::to_decimal(int digits, const NumericContext& ctx) const {
    if (digits <= 0 || digits > 1000)
        throw InputError("to_decimal: digits must be in 1..1000");
    // Obtain an enclosure tight enough that rounding is unambiguous.
    BigRat value;
    int work = digits + 10;
    while (true) {
        Approx a = approximate(std::min(work, ctx.max_digits), ctx);
        value = a.value;
        if (a.error.is_zero() || kind_ != Kind::linear) break;
        // Enough when the error is far below the last rendered digit.
        Approx probe = a;
        BigRat mag = probe.value.abs();
        BigRat threshold(BigInt(1), BigInt::pow10(static_cast<std::size_t>(
                                        std::min(work, ctx.max_digits))));
        if (probe.error <= threshold * BigRat(1000000)) break;
        if (work >= ctx.max_digits) break;
        work = std::min(work * 2, ctx.max_digits);
    }

    bool neg = value.sign() < 0;
    BigRat v = value.abs();
    if (v.is_zero()) return "0";

    // Position of the leading significant digit: 10^e <= v < 10^(e+1).
    int e = 0;
    BigRat ten(10);
    BigRat one(1);
    BigRat t = v;
    if (t >= one) {
        while (t >= ten) {
            t /= ten;
            ++e;
        }
    } else {
        while (t < one) {
            t *= ten;
            --e;
        }
    }
    // Round to `digits` significant digits: v ~= m * 10^(e - digits + 1).
    int shift = digits - 1 - e;
    BigRat scaled = shift >= 0
                        ? v * BigRat(BigInt::pow10(static_cast<std::size_t>(shift)))
                        : v / BigRat(BigInt::pow10(static_cast<std::size_t>(-shift)));
    BigInt m = scaled.round_half_even();
    std::string ds = m.to_string();
    if (static_cast<int>(ds.size()) > digits) {
        // Rounding carried into a new leading digit (e.g. 9.99 -> 10.0).
        ++e;
        ds.pop_back();
    }

    std::string out;
    if (e >= digits - 1) {
        out = ds + std::string(static_cast<std::size_t>(e - digits + 1), '0');
    } else if (e >= 0) {
        out = ds.substr(0, static_cast<std::size_t>(e + 1)) + "." +
              ds.substr(static_cast<std::size_t>(e + 1));
    } else {
        out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + ds;
    }
    return neg ? "-" + out : out;
}

std::string Scalar::to_string() const {
    if (kind_ == Kind::real) {
        std::ostringstream os;
        os << dval_;
        return os.str();
    }
    if (kind_ == Kind::rational) return q0_.to_string();
    std::string out;
    if (!q0_.is_zero()) out = q0_.to_string();
    for (const auto& [name, coeff] : terms_) {
        if (!out.empty()) out += coeff.sign() < 0 ? " - " : " + ";
        else if (coeff.sign() < 0) out += "-";
        BigRat c = coeff.abs();
        if (c == BigRat(1))
            out += name;
        else
            out += c.to_string() + "*" + name;
    }
    return out.empty() ? "0" : out;
}

Scalar parse_scalar_literal(const std::string& text) {
    std::string s = text;
    // Trim surrounding whitespace.
    auto l = s.find_first_not_of(" \t");
    auto r = s.find_last_not_of(" \t");
    if (l == std::string::npos) throw InputError("empty scalar literal");
    s = s.substr(l, r - l + 1);
    if (s.find('.') != std::string::npos && s.find('/') == std::string::npos) {
        char* end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (end == nullptr || *end != '\0')
            throw InputError("malformed decimal literal '" + s + "'");
        return Scalar::real(v);
    }
    return Scalar(BigRat::parse(s));
}

} // namespace intlot
