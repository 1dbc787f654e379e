#include "intlot/bigint.hpp"

#include "intlot/errors.hpp"

#include <algorithm>
#include <cmath>

namespace intlot {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
    negative_ = v < 0;
    unsigned long long m = negative_ ? ~static_cast<unsigned long long>(v) + 1ull
                                     : static_cast<unsigned long long>(v);
    while (m != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(m & 0xffffffffull));
        m >>= 32;
    }
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) negative_ = false;
}

bool BigInt::is_one() const {
    return !negative_ && limbs_.size() == 1 && limbs_[0] == 1;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.is_zero()) r.negative_ = !r.negative_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    r.negative_ = false;
    return r;
}

int BigInt::cmp_mag(const BigInt& a, const BigInt& b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
}

BigInt BigInt::add_mag(const BigInt& a, const BigInt& b) {
    BigInt r;
    const auto& x = a.limbs_.size() >= b.limbs_.size() ? a.limbs_ : b.limbs_;
    const auto& y = a.limbs_.size() >= b.limbs_.size() ? b.limbs_ : a.limbs_;
    r.limbs_.resize(x.size() + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::uint64_t s = carry + x[i] + (i < y.size() ? y[i] : 0u);
        r.limbs_[i] = static_cast<std::uint32_t>(s & 0xffffffffull);
        carry = s >> 32;
    }
    r.limbs_[x.size()] = static_cast<std::uint32_t>(carry);
    r.trim();
    return r;
}

BigInt BigInt::sub_mag(const BigInt& a, const BigInt& b) {
    BigInt r;
    r.limbs_.resize(a.limbs_.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        std::int64_t s = static_cast<std::int64_t>(a.limbs_[i]) - borrow -
                         (i < b.limbs_.size() ? static_cast<std::int64_t>(b.limbs_[i]) : 0);
        if (s < 0) {
            s += static_cast<std::int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r.limbs_[i] = static_cast<std::uint32_t>(s);
    }
    r.trim();
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (negative_ == o.negative_) {
        BigInt r = add_mag(*this, o);
        r.negative_ = negative_ && !r.is_zero();
        return r;
    }
    int c = cmp_mag(*this, o);
    if (c == 0) return BigInt();
    BigInt r = c > 0 ? sub_mag(*this, o) : sub_mag(o, *this);
    r.negative_ = (c > 0 ? negative_ : o.negative_) && !r.is_zero();
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    if (is_zero() || o.is_zero()) return BigInt();
    BigInt r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        std::uint64_t ai = limbs_[i];
        for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
            std::uint64_t cur = r.limbs_[i + j] + ai * o.limbs_[j] + carry;
            r.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffull);
            carry = cur >> 32;
        }
        std::size_t k = i + o.limbs_.size();
        while (carry != 0) {
            std::uint64_t cur = r.limbs_[k] + carry;
            r.limbs_[k] = static_cast<std::uint32_t>(cur & 0xffffffffull);
            carry = cur >> 32;
            ++k;
        }
    }
    r.negative_ = negative_ != o.negative_;
    r.trim();
    return r;
}

BigInt BigInt::shifted_limbs(std::size_t k) const {
    if (is_zero()) return BigInt();
    BigInt r;
    r.limbs_.assign(k, 0);
    r.limbs_.insert(r.limbs_.end(), limbs_.begin(), limbs_.end());
    r.negative_ = negative_;
    return r;
}

std::uint32_t BigInt::divmod_small(std::uint32_t d) {
    std::uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(cur / d);
        rem = cur % d;
    }
    trim();
    return static_cast<std::uint32_t>(rem);
}

void BigInt::mul_small_add(std::uint32_t m, std::uint32_t add) {
    std::uint64_t carry = add;
    for (auto& limb : limbs_) {
        std::uint64_t cur = static_cast<std::uint64_t>(limb) * m + carry;
        limb = static_cast<std::uint32_t>(cur & 0xffffffffull);
        carry = cur >> 32;
    }
    while (carry != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(carry & 0xffffffffull));
        carry >>= 32;
    }
    trim();
}

// Knuth algorithm D on magnitudes.
void BigInt::divmod_mag(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw InvariantViolation("BigInt: division by zero");
    if (cmp_mag(a, b) < 0) {
        q = BigInt();
        r = a.abs();
        return;
    }
    if (b.limbs_.size() == 1) {
        q = a.abs();
        std::uint32_t rem = q.divmod_small(b.limbs_[0]);
        r = BigInt(static_cast<long long>(rem));
        return;
    }

    // Normalize so the top divisor limb has its high bit set.
    int shift = 0;
    std::uint32_t top = b.limbs_.back();
    while ((top & 0x80000000u) == 0) {
        top <<= 1;
        ++shift;
    }
    auto shl = [shift](const std::vector<std::uint32_t>& src) {
        std::vector<std::uint32_t> out(src.size() + 1, 0);
        for (std::size_t i = 0; i < src.size(); ++i) {
            out[i] |= shift == 0 ? src[i] : (src[i] << shift);
            if (shift != 0) out[i + 1] = src[i] >> (32 - shift);
        }
        while (!out.empty() && out.back() == 0) out.pop_back();
        return out;
    };
    std::vector<std::uint32_t> u = shl(a.limbs_);
    std::vector<std::uint32_t> v = shl(b.limbs_);
    const std::size_t n = v.size();
    const std::size_t m = u.size() - n;
    u.push_back(0);

    q = BigInt();
    q.limbs_.assign(m + 1, 0);

    for (std::size_t j = m + 1; j-- > 0;) {
        std::uint64_t num = (static_cast<std::uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        std::uint64_t qh = num / v[n - 1];
        std::uint64_t rh = num % v[n - 1];
        if (qh >= kBase) {
            qh = kBase - 1;
            rh = num - qh * v[n - 1];
        }
        while (rh < kBase &&
               qh * v[n - 2] > ((rh << 32) | u[j + n - 2])) {
            --qh;
            rh += v[n - 1];
        }
        // Multiply-subtract qh*v from u[j..j+n].
        std::int64_t borrow = 0;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t p = qh * v[i] + carry;
            carry = p >> 32;
            std::int64_t t = static_cast<std::int64_t>(u[i + j]) -
                             static_cast<std::int64_t>(p & 0xffffffffull) - borrow;
            if (t < 0) {
                t += static_cast<std::int64_t>(kBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            u[i + j] = static_cast<std::uint32_t>(t);
        }
        std::int64_t t = static_cast<std::int64_t>(u[j + n]) -
                         static_cast<std::int64_t>(carry) - borrow;
        if (t < 0) {
            // qh was one too large; add back.
            t += static_cast<std::int64_t>(kBase);
            --qh;
            std::uint64_t c2 = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t s = static_cast<std::uint64_t>(u[i + j]) + v[i] + c2;
                u[i + j] = static_cast<std::uint32_t>(s & 0xffffffffull);
                c2 = s >> 32;
            }
            t += static_cast<std::int64_t>(c2);
        }
        u[j + n] = static_cast<std::uint32_t>(t);
        q.limbs_[j] = static_cast<std::uint32_t>(qh);
    }
    q.trim();

    // Remainder: low n limbs of u, shifted back.
    r = BigInt();
    r.limbs_.assign(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(n));
    if (shift != 0) {
        std::uint32_t prev = 0;
        for (std::size_t i = r.limbs_.size(); i-- > 0;) {
            std::uint32_t cur = r.limbs_[i];
            r.limbs_[i] = (cur >> shift) | (prev << (32 - shift));
            prev = cur;
        }
    }
    r.trim();
}

void BigInt::divmod(const BigInt& a, const BigInt& o, BigInt& q, BigInt& r) {
    divmod_mag(a, o, q, r);
    q.negative_ = (a.negative_ != o.negative_) && !q.is_zero();
    r.negative_ = a.negative_ && !r.is_zero();
}

BigInt BigInt::operator/(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return r;
}

bool BigInt::operator==(const BigInt& o) const {
    return negative_ == o.negative_ && limbs_ == o.limbs_;
}

bool BigInt::operator<(const BigInt& o) const {
    if (negative_ != o.negative_) return negative_;
    int c = cmp_mag(*this, o);
    return negative_ ? c > 0 : c < 0;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.negative_ = false;
    b.negative_ = false;
    while (!b.is_zero()) {
        BigInt q, r;
        divmod_mag(a, b, q, r);
        a = b;
        b = r;
    }
    return a;
}

BigInt BigInt::lcm(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    return (a.abs() / gcd(a, b)) * b.abs();
}

std::size_t BigInt::bit_length() const {
    if (is_zero()) return 0;
    std::size_t bits = (limbs_.size() - 1) * 32;
    std::uint32_t top = limbs_.back();
    while (top != 0) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

bool BigInt::is_even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }

BigInt BigInt::iroot(const BigInt& a, unsigned k) {
    if (a.is_negative()) throw InvariantViolation("BigInt::iroot of negative value");
    if (k == 0) throw InvariantViolation("BigInt::iroot with k=0");
    if (a.is_zero() || a.is_one() || k == 1) return a;
    // Newton iteration x <- ((k-1)x + a/x^(k-1)) / k from an over-estimate.
    std::size_t bits = a.bit_length();
    BigInt x = BigInt(1);
    for (std::size_t i = 0; i < bits / k + 2; ++i) x = x * BigInt(2);
    const BigInt kk(static_cast<long long>(k));
    const BigInt km1(static_cast<long long>(k - 1));
    while (true) {
        BigInt p = x;
        for (unsigned i = 2; i < k; ++i) p = p * x;  // x^(k-1)
        BigInt next = (km1 * x + a / p) / kk;
        if (next >= x) break;
        x = next;
    }
    // x may be off by one; settle exactly.
    auto pow_k = [k](const BigInt& v) {
        BigInt p(1);
        for (unsigned i = 0; i < k; ++i) p = p * v;
        return p;
    };
    while (pow_k(x) > a) x = x - BigInt(1);
    while (pow_k(x + BigInt(1)) <= a) x = x + BigInt(1);
    return x;
}

BigInt BigInt::from_string(const std::string& s) {
    if (s.empty()) throw InputError("BigInt: empty string");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw InputError("BigInt: bare sign");
    BigInt r;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw InputError("BigInt: invalid digit in '" + s + "'");
        r.mul_small_add(10, static_cast<std::uint32_t>(s[i] - '0'));
    }
    r.negative_ = neg && !r.is_zero();
    return r;
}

BigInt BigInt::pow10(std::size_t k) {
    BigInt r(1);
    while (k >= 9) {
        r.mul_small_add(1000000000u, 0);
        k -= 9;
    }
    std::uint32_t m = 1;
    for (std::size_t i = 0; i < k; ++i) m *= 10;
    if (m != 1) r.mul_small_add(m, 0);
    return r;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    BigInt t = abs();
    std::string out;
    while (!t.is_zero()) {
        std::uint32_t chunk = t.divmod_small(1000000000u);
        for (int i = 0; i < 9; ++i) {
            out.push_back(static_cast<char>('0' + chunk % 10));
            chunk /= 10;
        }
    }
    while (out.size() > 1 && out.back() == '0') out.pop_back();
    if (negative_) out.push_back('-');
    std::reverse(out.begin(), out.end());
    return out;
}

double BigInt::to_double() const {
    double r = 0.0;
    for (std::size_t i = limbs_.size(); i-- > 0;) r = r * 4294967296.0 + limbs_[i];
    return negative_ ? -r : r;
}

bool BigInt::fits_int64() const {
    if (limbs_.size() > 2) return false;
    unsigned long long m = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) m = (m << 32) | limbs_[i];
    if (negative_) return m <= 0x8000000000000000ull;
    return m <= 0x7fffffffffffffffull;
}

long long BigInt::to_int64() const {
    if (!fits_int64()) throw InvariantViolation("BigInt: value exceeds int64 range");
    unsigned long long m = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) m = (m << 32) | limbs_[i];
    return negative_ ? -static_cast<long long>(m) : static_cast<long long>(m);
}

} // namespace intlot
