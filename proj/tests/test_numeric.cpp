#include "doctest.h"

#include "intlot/errors.hpp"
#include "intlot/scalar.hpp"

#include <random>

using namespace intlot;

namespace {

BigRat rnd_rat(std::mt19937& rng, int lo = -100, int hi = 100, int maxden = 20) {
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, maxden);
    return BigRat(num(rng), den(rng));
}

} // namespace

TEST_CASE("bigint arithmetic round-trips against int64") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long long> dist(-1000000000LL, 1000000000LL);
    for (int i = 0; i < 2000; ++i) {
        long long a = dist(rng), b = dist(rng);
        CHECK((BigInt(a) + BigInt(b)).to_int64() == a + b);
        CHECK((BigInt(a) - BigInt(b)).to_int64() == a - b);
        __int128 p = static_cast<__int128>(a) * b;
        bool pneg = p < 0;
        unsigned __int128 um = pneg ? -static_cast<unsigned __int128>(p)
                                    : static_cast<unsigned __int128>(p);
        std::string ps;
        if (um == 0) ps = "0";
        while (um != 0) {
            ps.insert(ps.begin(), static_cast<char>('0' + static_cast<int>(um % 10)));
            um /= 10;
        }
        if (pneg) ps.insert(ps.begin(), '-');
        CHECK((BigInt(a) * BigInt(b)).to_string() == ps);
        if (b != 0) {
            CHECK((BigInt(a) / BigInt(b)).to_int64() == a / b);
            CHECK((BigInt(a) % BigInt(b)).to_int64() == a % b);
        }
    }
}

TEST_CASE("bigint divmod identity on large operands") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long long> dist(-1000000000LL, 1000000000LL);
    for (int i = 0; i < 300; ++i) {
        BigInt a = BigInt(dist(rng)) * BigInt(dist(rng)) * BigInt(dist(rng));
        BigInt b = BigInt(dist(rng)) * BigInt(dist(rng));
        if (b.is_zero()) continue;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
    }
}

TEST_CASE("bigint decimal parsing and printing") {
    std::string s = "123456789012345678901234567890123456789";
    CHECK(BigInt::from_string(s).to_string() == s);
    CHECK(BigInt::from_string("-42").to_int64() == -42);
    CHECK(BigInt::pow10(20).to_string() == "100000000000000000000");
    CHECK(BigInt(0).to_string() == "0");
}

TEST_CASE("bigint isqrt and iroot are exact floors") {
    CHECK(BigInt::isqrt(BigInt(2) * BigInt::pow10(20)).to_string() == "14142135623");
    for (long long v : {0LL, 1LL, 2LL, 3LL, 4LL, 99LL, 100LL, 101LL, 999999LL}) {
        BigInt r = BigInt::isqrt(BigInt(v));
        CHECK(r * r <= BigInt(v));
        CHECK((r + BigInt(1)) * (r + BigInt(1)) > BigInt(v));
    }
    BigInt c = BigInt::iroot(BigInt::pow10(30), 3);
    CHECK(c.to_string() == "10000000000");
}

TEST_CASE("rational arithmetic satisfies field axioms on random values") {
    std::mt19937 rng(3);
    for (int i = 0; i < 500; ++i) {
        BigRat a = rnd_rat(rng), b = rnd_rat(rng), c = rnd_rat(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        if (!b.is_zero()) CHECK(a / b * b == a);
    }
}

TEST_CASE("rational parse handles fractions integers and decimals") {
    CHECK(BigRat::parse("7/12") == BigRat(7, 12));
    CHECK(BigRat::parse("-6/8") == BigRat(-3, 4));
    CHECK(BigRat::parse("42") == BigRat(42));
    CHECK(BigRat::parse("-1.25") == BigRat(-5, 4));
    CHECK(BigRat::parse("0.37") == BigRat(37, 100));
}

TEST_CASE("rational rounding modes") {
    CHECK(BigRat(7, 2).round_half_even().to_int64() == 4);
    CHECK(BigRat(5, 2).round_half_even().to_int64() == 2);
    CHECK(BigRat(-5, 2).round_half_even().to_int64() == -2);
    CHECK(BigRat(-7, 2).round_half_even().to_int64() == -4);
    CHECK(BigRat(-1, 3).floor().to_int64() == -1);
    CHECK(BigRat(-1, 3).ceil().to_int64() == 0);
}

TEST_CASE("scalar add_scale cancels symbolic terms exactly") {
    // 2*pi + (-2)*pi collapses to the exact rational zero.
    Scalar a = Scalar::constant("pi", BigRat(2));
    Scalar out = a.add_scale(BigRat(-2), Scalar::constant("pi"));
    CHECK(out.is_rational());
    CHECK(out.exact_zero());

    CHECK(Scalar(BigRat(1, 2)).add_scale(BigRat(1, 3), Scalar(BigRat(1, 4))).rat() ==
          BigRat(7, 12));
}

TEST_CASE("scalar pi plus one evaluates against the 50-digit expansion") {
    NumericContext ctx;
    Scalar v = Scalar::constant("pi").add_scale(BigRat(1), Scalar(1));
    CHECK(v.to_decimal(6, ctx) == "4.14159");
    CHECK(v.to_decimal(11, ctx) == "4.1415926536");
}

TEST_CASE("scalar sign decisions") {
    NumericContext ctx;
    // 7 - 5*sqrt2 is about -0.0711.
    Scalar v = Scalar::linear(BigRat(7), {{"sqrt2", BigRat(-5)}});
    CHECK(v.sign(ctx) == -1);
    CHECK(Scalar(BigRat(0)).sign(ctx) == 0);
    // (2-pi)*1 + 1*pi - 2 cancels symbolically, no decimal evaluation.
    Scalar w = Scalar::linear(BigRat(2), {{"pi", BigRat(-1)}});
    w = w.add_scale(BigRat(1), Scalar::constant("pi"));
    w = w.add_scale(BigRat(-1), Scalar(2));
    CHECK(w.exact_zero());
    CHECK(w.sign(ctx) == 0);
}

TEST_CASE("scalar sign is never zero for nonzero linear combinations") {
    NumericContext ctx;
    std::mt19937 rng(17);
    for (int i = 0; i < 300; ++i) {
        BigRat u = rnd_rat(rng), v = rnd_rat(rng);
        if (u.is_zero() && v.is_zero()) continue;
        Scalar s = Scalar::linear(u, {{"sqrt2", v}});
        CHECK(s.sign(ctx) != 0);
    }
}

TEST_CASE("scalar sign agrees with the 50-digit decimal rendering") {
    NumericContext ctx;
    std::mt19937 rng(19);
    for (int i = 0; i < 200; ++i) {
        BigRat u = rnd_rat(rng), v = rnd_rat(rng);
        Scalar s = Scalar::linear(u, {{"sqrt2", v}});
        if (s.exact_zero()) continue;
        Approx a = s.approximate(50, ctx);
        if (a.value.abs() <= BigRat(BigInt(1), BigInt::pow10(40))) continue;
        CHECK(s.sign(ctx) == a.value.sign());
    }
}

TEST_CASE("scalar decimal rendering reference values") {
    NumericContext ctx;
    CHECK(Scalar::constant("sqrt2").to_decimal(6, ctx) == "1.41421");
    CHECK(Scalar::constant("sqrt2", BigRat(3)).to_decimal(6, ctx) == "4.24264");
    CHECK(Scalar(BigRat(1, 3)).to_decimal(4, ctx) == "0.3333");
    CHECK(Scalar(BigRat(-1, 3)).to_decimal(4, ctx) == "-0.3333");
    CHECK(Scalar(BigRat(999, 100)).to_decimal(2, ctx) == "10");
    CHECK(Scalar::constant("pi").to_decimal(21, ctx) == "3.14159265358979323846");
}

TEST_CASE("scalar field axioms over random rational scalars") {
    std::mt19937 rng(23);
    for (int i = 0; i < 200; ++i) {
        Scalar a{rnd_rat(rng)}, b{rnd_rat(rng)}, c{rnd_rat(rng)};
        CHECK((a + b) + c == a + (b + c));
        BigRat k = rnd_rat(rng);
        CHECK((a + b).scale(k) == a.scale(k) + b.scale(k));
    }
}

TEST_CASE("scalar mode and nonlinearity guards") {
    CHECK_THROWS_AS(Scalar::constant("pi") + Scalar::real(1.0), MixedModeError);
    CHECK_THROWS_AS(Scalar::mul(Scalar::constant("pi"), Scalar::constant("sqrt2")),
                    NonlinearError);
    CHECK(Scalar::mul(Scalar(BigRat(2)), Scalar::constant("pi")) ==
          Scalar::constant("pi", BigRat(2)));
    NumericContext f = NumericContext::float_default();
    CHECK(Scalar::real(1e-12).sign(f) == 0);
    CHECK(Scalar::real(1e-6).sign(f) == 1);
}

TEST_CASE("scalar rational ratio detection") {
    Scalar a = Scalar::linear(BigRat(1), {{"pi", BigRat(2)}});
    Scalar b = Scalar::linear(BigRat(1, 2), {{"pi", BigRat(1)}});
    auto r = a.rational_ratio_to(b);
    REQUIRE(r.has_value());
    CHECK(*r == BigRat(2));
    Scalar c = Scalar::linear(BigRat(1), {{"pi", BigRat(3)}});
    CHECK_FALSE(a.rational_ratio_to(c).has_value());
    CHECK(Scalar::div(a, b).rat() == BigRat(2));
}

TEST_CASE("unknown constants are rejected") {
    NumericContext ctx;
    Scalar s = Scalar::constant("feigenbaum");
    CHECK_THROWS_AS(s.to_decimal(10, ctx), UnknownConstant);
    ctx.user_constants["feigenbaum"] =
        "4.66920160910299067185320382046620161725818557747576863274";
    CHECK(s.to_decimal(6, ctx) == "4.66920");
}
