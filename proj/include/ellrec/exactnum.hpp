#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace ellrec {

using Integer = mpz_class;
using Rational = mpq_class;  // gmp keeps it canonical: reduced, den > 0

// Thrown when values from different scalar domains meet.
struct DomainMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& text);  // "a", "a/b", "-a/b"
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

bool is_prime(std::uint64_t n);

// nullopt encodes +infinity (q == 0).
std::optional<long> padic_valuation(const Rational& q, std::uint64_t p);
std::optional<long> padic_valuation(const Integer& z, std::uint64_t p);
bool is_p_integral(const Rational& q, std::uint64_t p);

Rational generalized_binomial(const Rational& a, unsigned long k);
Integer binomial(unsigned long n, unsigned long k);

int legendre_symbol(const Integer& a, std::uint64_t p);

int mobius(unsigned long n);
Integer lcm_upto(unsigned long n);
std::pair<int, Integer> mobius_and_lcm(unsigned long n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

class Fp {
public:
    Fp() = default;
    Fp(std::int64_t v, std::uint64_t p);

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator-() const { return Fp::raw(v_ ? p_ - v_ : 0, p_); }
    Fp& operator+=(const Fp& o);
    Fp& operator-=(const Fp& o);
    Fp& operator*=(const Fp& o);
    Fp& operator/=(const Fp& o) { return *this *= o.inv(); }
    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
    friend bool operator==(const Fp& a, const Fp& b) { return a.p_ == b.p_ && a.v_ == b.v_; }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    Fp inv() const;
    Fp pow(std::uint64_t e) const { return raw(powmod(v_, e, p_), p_); }

    static Fp raw(std::uint64_t v, std::uint64_t p) {
        Fp r;
        r.v_ = v;
        r.p_ = p;
        return r;
    }

private:
    void check(const Fp& o) const;
    std::uint64_t v_ = 0;
    std::uint64_t p_ = 0;
};

std::string to_string(const Fp& a);

// Reduction of a p-integral rational; throws std::domain_error otherwise.
Fp reduce(const Rational& q, std::uint64_t p);
// Smallest non-negative representative mod p^k of a p-integral rational.
Integer reduce_mod_power(const Rational& q, std::uint64_t p, unsigned k);

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);

// a + b*r with r^2 = d, d a fixed element of F_p.  When d is a square mod p
// this is the split algebra F_p x F_p; inv() then throws on zero divisors.
class Fp2 {
public:
    Fp2() = default;
    Fp2(Fp a, Fp b, std::uint64_t d) : a_(a), b_(b), d_(d) {}

    const Fp& re() const { return a_; }
    const Fp& im() const { return b_; }
    std::uint64_t modulus() const { return a_.modulus(); }
    std::uint64_t nonresidue() const { return d_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    Fp2 operator-() const { return {-a_, -b_, d_}; }
    friend Fp2 operator+(const Fp2& x, const Fp2& y) { return {x.a_ + y.a_, x.b_ + y.b_, x.d_}; }
    friend Fp2 operator-(const Fp2& x, const Fp2& y) { return {x.a_ - y.a_, x.b_ - y.b_, x.d_}; }
    friend Fp2 operator*(const Fp2& x, const Fp2& y);
    friend Fp2 operator/(const Fp2& x, const Fp2& y) { return x * y.inv(); }
    Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
    Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
    Fp2& operator*=(const Fp2& o) { return *this = *this * o; }
    friend bool operator==(const Fp2& x, const Fp2& y) {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const Fp2& x, const Fp2& y) { return !(x == y); }

    Fp norm() const { return a_ * a_ - Fp(static_cast<std::int64_t>(d_), modulus()) * b_ * b_; }
    Fp2 inv() const;

private:
    Fp a_, b_;
    std::uint64_t d_ = 0;
};

std::string to_string(const Fp2& a);

// Field descriptors.  Generic code (series, polynomials, linear algebra)
// is written against these; each carries what is needed to build constants.
struct QField {
    using value_type = Rational;
    Rational zero() const { return Rational(0); }
    Rational one() const { return Rational(1); }
    Rational from_int(long v) const { return Rational(v); }
    Rational from_rational(const Rational& q) const { return q; }
    Rational inv(const Rational& a) const;
    bool is_zero(const Rational& a) const { return sgn(a) == 0; }
    std::uint64_t characteristic() const { return 0; }
    std::string name() const { return "Q"; }
    friend bool operator==(const QField&, const QField&) { return true; }
};

struct FpField {
    using value_type = Fp;
    std::uint64_t p = 0;
    FpField() = default;
    explicit FpField(std::uint64_t prime);
    Fp zero() const { return Fp::raw(0, p); }
    Fp one() const { return Fp::raw(1 % p, p); }
    Fp from_int(long v) const { return Fp(v, p); }
    Fp from_rational(const Rational& q) const { return reduce(q, p); }
    Fp inv(const Fp& a) const { return a.inv(); }
    bool is_zero(const Fp& a) const { return a.is_zero(); }
    std::uint64_t characteristic() const { return p; }
    std::string name() const { return "F_" + std::to_string(p); }
    friend bool operator==(const FpField& a, const FpField& b) { return a.p == b.p; }
};

struct Fp2Field {
    using value_type = Fp2;
    std::uint64_t p = 0;
    std::uint64_t d = 0;
    Fp2Field() = default;
    Fp2Field(std::uint64_t prime, std::int64_t nonres);
    Fp2 zero() const { return {Fp::raw(0, p), Fp::raw(0, p), d}; }
    Fp2 one() const { return {Fp::raw(1, p), Fp::raw(0, p), d}; }
    Fp2 from_int(long v) const { return {Fp(v, p), Fp::raw(0, p), d}; }
    Fp2 from_rational(const Rational& q) const { return {reduce(q, p), Fp::raw(0, p), d}; }
    Fp2 embed(const Fp& a) const { return {a, Fp::raw(0, p), d}; }
    Fp2 root() const { return {Fp::raw(0, p), Fp::raw(1, p), d}; }  // r with r^2 = d
    Fp2 inv(const Fp2& a) const { return a.inv(); }
    bool is_zero(const Fp2& a) const { return a.is_zero(); }
    std::uint64_t characteristic() const { return p; }
    std::string name() const { return "F_" + std::to_string(p) + "[sqrt " + std::to_string(d) + "]"; }
    friend bool operator==(const Fp2Field& a, const Fp2Field& b) { return a.p == b.p && a.d == b.d; }
};

template <class F>
void require_same_field(const F& a, const F& b) {
    if (!(a == b)) throw DomainMismatch("scalar domains differ: " + a.name() + " vs " + b.name());
}

}  // namespace ellrec
