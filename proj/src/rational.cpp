#include "intlot/rational.hpp"

#include "intlot/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace intlot {

BigRat::BigRat(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw InvariantViolation("BigRat: zero denominator");
    normalize();
}

void BigRat::normalize() {
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

BigRat BigRat::operator-() const {
    BigRat r = *this;
    r.num_ = -r.num_;
    return r;
}

BigRat BigRat::operator+(const BigRat& o) const {
    return BigRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

BigRat BigRat::operator-(const BigRat& o) const {
    return BigRat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

BigRat BigRat::operator*(const BigRat& o) const {
    return BigRat(num_ * o.num_, den_ * o.den_);
}

BigRat BigRat::operator/(const BigRat& o) const {
    if (o.is_zero()) throw InvariantViolation("BigRat: division by zero");
    return BigRat(num_ * o.den_, den_ * o.num_);
}

bool BigRat::operator<(const BigRat& o) const {
    return num_ * o.den_ < o.num_ * den_;
}

BigRat BigRat::inverse() const {
    if (is_zero()) throw InvariantViolation("BigRat: inverse of zero");
    return BigRat(den_, num_);
}

BigInt BigRat::floor() const {
    BigInt q, r;
    BigInt::divmod(num_, den_, q, r);
    if (r.is_negative()) q = q - BigInt(1);
    return q;
}

BigInt BigRat::ceil() const {
    BigInt q, r;
    BigInt::divmod(num_, den_, q, r);
    if (r.sign() > 0) q = q + BigInt(1);
    return q;
}

BigInt BigRat::round_half_even() const {
    BigInt f = floor();
    BigRat frac = *this - BigRat(f);          // in [0,1)
    BigRat twice = frac + frac;
    BigInt one(1);
    if (twice < BigRat(1)) return f;
    if (BigRat(1) < twice) return f + one;
    return f.is_even() ? f : f + one;
}

double BigRat::to_double() const {
    if (num_.is_zero()) return 0.0;
    // Scale both parts into double range before dividing.
    std::size_t nb = num_.bit_length(), db = den_.bit_length();
    if (nb < 900 && db < 900) return num_.to_double() / den_.to_double();
    std::size_t shift = std::max(nb, db) - 512;
    BigInt scale = BigInt(1);
    for (std::size_t i = 0; i < shift; ++i) scale = scale * BigInt(2);
    double n = (num_ / scale).to_double();
    double d = (den_ / scale).to_double();
    if (d == 0.0) return num_.is_negative() ? -HUGE_VAL : HUGE_VAL;
    return n / d;
}

std::string BigRat::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

BigRat BigRat::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        return BigRat(BigInt::from_string(s.substr(0, slash)),
                      BigInt::from_string(s.substr(slash + 1)));
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return BigRat(BigInt::from_string(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0 || digits.empty())
        throw InputError("BigRat: malformed decimal '" + s + "'");
    return BigRat(BigInt::from_string(digits), BigInt::pow10(frac_len));
}

BigRat BigRat::from_double(double v) {
    if (!std::isfinite(v)) throw InputError("BigRat: non-finite double");
    if (v == 0.0) return BigRat();
    int exp = 0;
    double m = std::frexp(v, &exp);  // v = m * 2^exp, |m| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    long long mant = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    BigRat r{BigInt(mant)};
    BigInt two(2);
    if (exp > 0) {
        BigInt p(1);
        for (int i = 0; i < exp; ++i) p = p * two;
        return BigRat(r.num() * p, r.den());
    }
    BigInt p(1);
    for (int i = 0; i < -exp; ++i) p = p * two;
    return BigRat(r.num(), p);
}

} // namespace intlot
