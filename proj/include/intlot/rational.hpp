#pragma once

#include "intlot/bigint.hpp"

#include <string>

namespace intlot {

/// Exact rational number, always reduced and with positive denominator.
class BigRat {
public:
    BigRat() : num_(0), den_(1) {}
    BigRat(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
    BigRat(BigInt num, BigInt den);
    BigRat(long long num, long long den) : BigRat(BigInt(num), BigInt(den)) {}
    explicit BigRat(const BigInt& v) : num_(v), den_(1) {}

    /// Accepts "p/q", integers, and plain decimals ("-1.25" -> -5/4).
    static BigRat parse(const std::string& s);
    /// Nearest rational to a double (exact binary expansion).
    static BigRat from_double(double v);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_.is_one(); }
    int sign() const { return num_.sign(); }

    BigRat operator-() const;
    BigRat operator+(const BigRat& o) const;
    BigRat operator-(const BigRat& o) const;
    BigRat operator*(const BigRat& o) const;
    BigRat operator/(const BigRat& o) const;
    BigRat& operator+=(const BigRat& o) { return *this = *this + o; }
    BigRat& operator-=(const BigRat& o) { return *this = *this - o; }
    BigRat& operator*=(const BigRat& o) { return *this = *this * o; }
    BigRat& operator/=(const BigRat& o) { return *this = *this / o; }

    bool operator==(const BigRat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const BigRat& o) const { return !(*this == o); }
    bool operator<(const BigRat& o) const;
    bool operator<=(const BigRat& o) const { return !(o < *this); }
    bool operator>(const BigRat& o) const { return o < *this; }
    bool operator>=(const BigRat& o) const { return !(*this < o); }

    BigRat abs() const { return sign() < 0 ? -*this : *this; }
    BigRat inverse() const;

    BigInt floor() const;
    BigInt ceil() const;
    /// Nearest integer, ties to even.
    BigInt round_half_even() const;

    double to_double() const;
    std::string to_string() const;  // "p/q", or just "p" for integers

private:
    BigInt num_, den_;
    void normalize();
};

} // namespace intlot
