#pragma once

// Exact scalars: prime fields F_p with a runtime modulus and the rationals
// over arbitrary-precision integers. Field objects (PrimeField,
// RationalField) create elements; elements carry enough state to do their
// own arithmetic so generic code can use ordinary operators.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fanowb/errors.hpp"

namespace fanowb {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

constexpr bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t q = 3; q * q <= n; q += 2)
        if (n % q == 0) return false;
    return true;
}

constexpr std::uint64_t next_prime(std::uint64_t n) {
    std::uint64_t c = n + 1;
    while (!is_prime(c)) ++c;
    return c;
}

/// Element of F_p. The modulus travels with the value; mixing moduli is a
/// logic error caught in debug builds only.
struct Fp {
    std::uint32_t v = 0;
    std::uint32_t p = 0;

    friend Fp operator+(Fp a, Fp b) {
        std::uint32_t s = a.v + b.v;
        if (s >= a.p) s -= a.p;
        return {s, a.p};
    }
    friend Fp operator-(Fp a, Fp b) { return {a.v >= b.v ? a.v - b.v : a.v + a.p - b.v, a.p}; }
    friend Fp operator-(Fp a) { return {a.v == 0 ? 0 : a.p - a.v, a.p}; }
    friend Fp operator*(Fp a, Fp b) {
        return {static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v) * b.v % a.p), a.p};
    }
    friend Fp inverse(Fp a) {
        if (a.v == 0) fail(ErrorKind::InvalidInput, "division by zero in F_" + std::to_string(a.p));
        // extended Euclid on signed 64-bit
        std::int64_t t = 0, nt = 1, r = a.p, nr = a.v;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        if (t < 0) t += a.p;
        return {static_cast<std::uint32_t>(t), a.p};
    }
    friend Fp operator/(Fp a, Fp b) { return a * inverse(b); }
    Fp& operator+=(Fp b) { return *this = *this + b; }
    Fp& operator-=(Fp b) { return *this = *this - b; }
    Fp& operator*=(Fp b) { return *this = *this * b; }
    Fp& operator/=(Fp b) { return *this = *this / b; }
    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend auto operator<=>(Fp a, Fp b) { return a.v <=> b.v; }

    /// Representative in (-p/2, p/2].
    std::int64_t symmetric() const {
        return v > p / 2 ? static_cast<std::int64_t>(v) - p : static_cast<std::int64_t>(v);
    }
};

inline bool is_zero(Fp a) { return a.v == 0; }
inline bool is_zero(const Rational& a) { return a == 0; }
inline Rational inverse(const Rational& a) {
    if (a == 0) fail(ErrorKind::InvalidInput, "division by zero in QQ");
    return 1 / a;
}

class PrimeField {
public:
    using value_type = Fp;
    static constexpr bool is_prime_field = true;

    explicit PrimeField(std::uint64_t p) {
        if (!is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
        if (p <= 2) fail(ErrorKind::NotPrime, "the prime must be odd (got 2)");
        if (p >= (1ull << 31)) fail(ErrorKind::InvalidInput, "prime exceeds 31 bits");
        p_ = static_cast<std::uint32_t>(p);
    }

    std::uint32_t characteristic() const { return p_; }
    std::uint64_t size() const { return p_; }
    Fp zero() const { return {0, p_}; }
    Fp one() const { return {1 % p_, p_}; }
    Fp from_int(std::int64_t x) const {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return {static_cast<std::uint32_t>(r), p_};
    }
    Fp from_big(const BigInt& x) const {
        BigInt r = x % p_;
        if (r < 0) r += p_;
        return {r.convert_to<std::uint32_t>(), p_};
    }
    Fp from_fraction(const BigInt& num, const BigInt& den) const {
        Fp d = from_big(den);
        if (is_zero(d))
            fail(ErrorKind::InvalidInput, "denominator divisible by " + std::to_string(p_));
        return from_big(num) / d;
    }
    /// i-th element in the canonical enumeration 0, 1, ..., p-1.
    Fp element(std::uint64_t i) const { return {static_cast<std::uint32_t>(i), p_}; }
    std::string render(Fp a) const { return std::to_string(a.symmetric()); }
    std::string name() const { return "F_" + std::to_string(p_); }
    bool operator==(const PrimeField&) const = default;

private:
    std::uint32_t p_ = 3;
};

class RationalField {
public:
    using value_type = Rational;
    static constexpr bool is_prime_field = false;

    std::uint32_t characteristic() const { return 0; }
    Rational zero() const { return Rational(0); }
    Rational one() const { return Rational(1); }
    Rational from_int(std::int64_t x) const { return Rational(x); }
    Rational from_big(const BigInt& x) const { return Rational(x); }
    Rational from_fraction(const BigInt& num, const BigInt& den) const {
        if (den == 0) fail(ErrorKind::InvalidInput, "zero denominator");
        return Rational(num, den);
    }
    std::string render(const Rational& a) const { return a.str(); }
    std::string name() const { return "QQ"; }
    bool operator==(const RationalField&) const = default;
};

template <class F>
concept ExactField = requires(const F& f, typename F::value_type a) {
    { f.zero() } -> std::same_as<typename F::value_type>;
    { f.one() } -> std::same_as<typename F::value_type>;
    { f.from_int(std::int64_t{}) } -> std::same_as<typename F::value_type>;
    { f.render(a) } -> std::same_as<std::string>;
    { is_zero(a) } -> std::same_as<bool>;
    { inverse(a) };
};

template <ExactField F>
using Vec = std::vector<typename F::value_type>;

template <ExactField F>
typename F::value_type power(const F& field, typename F::value_type base, std::uint64_t e) {
    auto r = field.one();
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

/// Integer lift of a coefficient: symmetric representative for F_p, the
/// value itself for integral rationals; nullopt for non-integral rationals.
inline std::optional<BigInt> integer_lift(Fp a) { return BigInt(a.symmetric()); }
inline std::optional<BigInt> integer_lift(const Rational& a) {
    if (denominator(a) != 1) return std::nullopt;
    return numerator(a);
}

/// C(n, k) exactly; 0 when k < 0 or k > n (n >= 0).
inline BigInt binomial(const BigInt& n, long k) {
    if (k < 0 || n < 0 || BigInt(k) > n) return 0;
    BigInt kk = k;
    if (BigInt(2) * kk > n) kk = n - kk;
    long m = static_cast<long>(kk);
    BigInt r = 1;
    for (long i = 1; i <= m; ++i) r = r * (n - m + i) / i;
    return r;
}

}  // namespace fanowb
