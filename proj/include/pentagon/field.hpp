#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "pentagon/report.hpp"

namespace pentagon {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, kept in lowest terms with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Ground field of a computation: the rationals or a prime field GF(p).
struct FieldSpec {
    enum class Kind { rational, prime };
    Kind kind = Kind::rational;
    std::uint64_t p = 0;  // modulus, meaningful iff kind == prime

    static FieldSpec rationals() { return {Kind::rational, 0}; }
    static FieldSpec primefield(std::uint64_t p) {
        if (!is_prime(p)) throw UsageError("modulus " + std::to_string(p) + " is not prime");
        return {Kind::prime, p};
    }
    bool operator==(const FieldSpec&) const = default;

    std::string str() const {
        return kind == Kind::rational ? "Q" : "GF(" + std::to_string(p) + ")";
    }
};

/// Element of GF(p) with a runtime modulus. Mixed-modulus arithmetic throws.
class Fp {
public:
    Fp() = default;
    Fp(std::uint64_t value, std::uint64_t modulus) : v_(value % modulus), p_(modulus) {}

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }

    friend Fp operator+(const Fp& a, const Fp& b) {
        check(a, b);
        std::uint64_t s = a.v_ + b.v_;
        return Fp(s >= a.p_ ? s - a.p_ : s, a.p_);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        check(a, b);
        return Fp(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        check(a, b);
        return Fp(static_cast<std::uint64_t>(
                      static_cast<unsigned __int128>(a.v_) * b.v_ % a.p_),
                  a.p_);
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
    Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    Fp inverse() const {
        if (v_ == 0) throw MathError("Singular", "division by zero in GF(" + std::to_string(p_) + ")");
        // Fermat: v^(p-2) mod p
        std::uint64_t r = 1, b = v_, e = p_ - 2;
        while (e) {
            if (e & 1) r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * b % p_);
            b = static_cast<std::uint64_t>(static_cast<unsigned __int128>(b) * b % p_);
            e >>= 1;
        }
        return Fp(r, p_);
    }

    bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }

private:
    static void check(const Fp& a, const Fp& b) {
        if (a.p_ != b.p_ || a.p_ == 0)
            throw UsageError("mixed or unset moduli in GF(p) arithmetic");
    }
    std::uint64_t v_ = 0;
    std::uint64_t p_ = 0;
};

// --- scalar interface shared by Rational and Fp -------------------------------

template <class K>
struct field_ops;

template <>
struct field_ops<Rational> {
    static constexpr FieldSpec::Kind kind = FieldSpec::Kind::rational;
    static Rational zero(const FieldSpec&) { return Rational(0); }
    static Rational one(const FieldSpec&) { return Rational(1); }
    static Rational from_int(long long n, const FieldSpec&) { return Rational(n); }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static Rational inverse(const Rational& x) {
        if (x.is_zero()) throw MathError("Singular", "division by zero");
        return Rational(1) / x;
    }

    /// Strict entry grammar: optional '-' then digits, optionally '/' and
    /// unsigned digits. Sign lives on the numerator only; "3/6" normalizes.
    static Rational parse(std::string_view s, const FieldSpec&) {
        std::size_t i = 0;
        bool neg = false;
        if (i < s.size() && s[i] == '-') { neg = true; ++i; }
        std::size_t num_begin = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == num_begin) throw UsageError("bad rational entry '" + std::string(s) + "'");
        BigInt num(std::string(s.substr(num_begin, i - num_begin)));
        BigInt den(1);
        if (i < s.size()) {
            if (s[i] != '/') throw UsageError("bad rational entry '" + std::string(s) + "'");
            ++i;
            std::size_t den_begin = i;
            while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
            if (i == den_begin || i != s.size())
                throw UsageError("bad rational entry '" + std::string(s) + "'");
            den = BigInt(std::string(s.substr(den_begin)));
            if (den == 0) throw UsageError("zero denominator in '" + std::string(s) + "'");
        }
        if (neg) num = -num;
        return Rational(num, den);
    }

    static std::string format(const Rational& x) {
        std::string n = numerator(x).str();
        if (denominator(x) == 1) return n;
        return n + "/" + denominator(x).str();
    }
};

template <>
struct field_ops<Fp> {
    static constexpr FieldSpec::Kind kind = FieldSpec::Kind::prime;
    static Fp zero(const FieldSpec& f) { return Fp(0, f.p); }
    static Fp one(const FieldSpec& f) { return Fp(1, f.p); }
    static Fp from_int(long long n, const FieldSpec& f) {
        long long r = n % static_cast<long long>(f.p);
        if (r < 0) r += static_cast<long long>(f.p);
        return Fp(static_cast<std::uint64_t>(r), f.p);
    }
    static bool is_zero(const Fp& x) { return x.value() == 0; }
    static Fp inverse(const Fp& x) { return x.inverse(); }

    /// Least nonnegative residues only: digits in [0, p).
    static Fp parse(std::string_view s, const FieldSpec& f) {
        if (s.empty()) throw UsageError("empty prime-field entry");
        std::uint64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9')
                throw UsageError("bad prime-field entry '" + std::string(s) + "'");
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
            if (v >= (std::uint64_t(1) << 62))
                throw UsageError("prime-field entry out of range '" + std::string(s) + "'");
        }
        if (v >= f.p)
            throw UsageError("entry '" + std::string(s) + "' out of range for GF(" +
                             std::to_string(f.p) + ")");
        return Fp(v, f.p);
    }

    static std::string format(const Fp& x) { return std::to_string(x.value()); }
};

template <class K>
K k_zero(const FieldSpec& f) { return field_ops<K>::zero(f); }
template <class K>
K k_one(const FieldSpec& f) { return field_ops<K>::one(f); }
template <class K>
K k_int(long long n, const FieldSpec& f) { return field_ops<K>::from_int(n, f); }
template <class K>
bool k_is_zero(const K& x) { return field_ops<K>::is_zero(x); }

}  // namespace pentagon
