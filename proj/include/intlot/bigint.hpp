#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace intlot {

/// Arbitrary-precision signed integer, sign-magnitude with 32-bit limbs.
///
/// Sized for exact simplex pivoting and 1000-digit constant expansions,
/// not for cryptographic workloads: multiplication is schoolbook and
/// division is Knuth's algorithm D.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);                      // NOLINT: implicit by design
    static BigInt from_string(const std::string& s);
    static BigInt pow10(std::size_t k);

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return negative_; }
    bool is_one() const;
    int sign() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }

    BigInt operator-() const;
    BigInt abs() const;

    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    BigInt operator/(const BigInt& o) const;  // truncated toward zero
    BigInt operator%(const BigInt& o) const;  // sign follows dividend

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    /// Quotient and remainder in one pass; |r| < |o|, q truncated toward zero.
    static void divmod(const BigInt& a, const BigInt& o, BigInt& q, BigInt& r);

    bool operator==(const BigInt& o) const;
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const;
    bool operator<=(const BigInt& o) const { return !(o < *this); }
    bool operator>(const BigInt& o) const { return o < *this; }
    bool operator>=(const BigInt& o) const { return !(*this < o); }

    static BigInt gcd(BigInt a, BigInt b);
    static BigInt lcm(const BigInt& a, const BigInt& b);

    /// Floor of the k-th root of a nonnegative integer (k >= 1).
    static BigInt iroot(const BigInt& a, unsigned k);
    static BigInt isqrt(const BigInt& a) { return iroot(a, 2); }

    std::string to_string() const;
    double to_double() const;
    /// Checked narrowing; throws InvariantViolation when out of range.
    long long to_int64() const;
    bool fits_int64() const;

    std::size_t bit_length() const;
    bool is_even() const;

private:
    // limbs_ little-endian, no trailing zero limbs; empty means zero.
    std::vector<std::uint32_t> limbs_;
    bool negative_ = false;

    void trim();
    static int cmp_mag(const BigInt& a, const BigInt& b);
    static BigInt add_mag(const BigInt& a, const BigInt& b);
    static BigInt sub_mag(const BigInt& a, const BigInt& b); // |a| >= |b|
    static void divmod_mag(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    BigInt shifted_limbs(std::size_t k) const;
    std::uint32_t divmod_small(std::uint32_t d); // in place, returns remainder
    void mul_small_add(std::uint32_t m, std::uint32_t add);
};

} // namespace intlot
