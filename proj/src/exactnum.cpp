#include "ellrec/exactnum.hpp"

#include <vector>

namespace ellrec {

Rational make_rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '+') s += ch;
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("bad rational: " + text);
    Integer d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    Rational q{Integer(num), d};
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Miller-Rabin with the first 12 prime bases is deterministic below 3.3e24.
bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static const std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto b : bases) {
        if (n == b) return true;
        if (n % b == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (auto a : bases) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

static void require_prime(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
}

std::optional<long> padic_valuation(const Integer& z, std::uint64_t p) {
    require_prime(p);
    if (z == 0) return std::nullopt;
    Integer t = abs(z);
    Integer pz(static_cast<unsigned long>(p));
    return static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pz.get_mpz_t()));
}

std::optional<long> padic_valuation(const Rational& q, std::uint64_t p) {
    require_prime(p);
    if (sgn(q) == 0) return std::nullopt;
    return *padic_valuation(Integer(q.get_num()), p) - *padic_valuation(Integer(q.get_den()), p);
}

bool is_p_integral(const Rational& q, std::uint64_t p) {
    require_prime(p);
    return mpz_divisible_ui_p(q.get_den_mpz_t(), p) == 0;
}

Rational generalized_binomial(const Rational& a, unsigned long k) {
    Rational r(1);
    for (unsigned long i = 0; i < k; ++i) {
        r *= a - Rational(static_cast<long>(i));
        r /= Rational(static_cast<long>(i + 1));
    }
    return r;
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

int legendre_symbol(const Integer& a, std::uint64_t p) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("legendre symbol needs an odd prime");
    Integer pz(static_cast<unsigned long>(p));
    return mpz_legendre(a.get_mpz_t(), pz.get_mpz_t());
}

int mobius(unsigned long n) {
    if (n == 0) throw std::invalid_argument("mobius(0)");
    int mu = 1;
    for (unsigned long q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        n /= q;
        if (n % q == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

Integer lcm_upto(unsigned long n) {
    Integer r(1);
    for (unsigned long i = 2; i <= n; ++i) mpz_lcm_ui(r.get_mpz_t(), r.get_mpz_t(), i);
    return r;
}

std::pair<int, Integer> mobius_and_lcm(unsigned long n) {
    if (n == 0) throw std::invalid_argument("mobius_and_lcm needs n >= 1");
    return {mobius(n), lcm_upto(n)};
}

// ---- F_p ----

Fp::Fp(std::int64_t v, std::uint64_t p) : p_(p) {
    if (p < 2) throw std::invalid_argument("modulus must be >= 2");
    std::int64_t m = static_cast<std::int64_t>(p);
    std::int64_t r = v % m;
    if (r < 0) r += m;
    v_ = static_cast<std::uint64_t>(r);
}

void Fp::check(const Fp& o) const {
    if (p_ != o.p_)
        throw DomainMismatch("F_p moduli differ: " + std::to_string(p_) + " vs " + std::to_string(o.p_));
}

Fp& Fp::operator+=(const Fp& o) {
    check(o);
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
}

Fp& Fp::operator-=(const Fp& o) {
    check(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
}

Fp& Fp::operator*=(const Fp& o) {
    check(o);
    v_ = mulmod(v_, o.v_, p_);
    return *this;
}

Fp Fp::inv() const {
    if (v_ == 0) throw std::domain_error("inverse of zero in F_" + std::to_string(p_));
    // extended Euclid; also works (and is only used) for prime moduli
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p_), nr = static_cast<std::int64_t>(v_);
    while (nr) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) throw std::domain_error("element not invertible");
    return Fp(t, p_);
}

std::string to_string(const Fp& a) { return std::to_string(a.value()); }

Fp reduce(const Rational& q, std::uint64_t p) {
    if (!is_p_integral(q, p))
        throw std::domain_error(to_string(q) + " is not " + std::to_string(p) + "-integral");
    unsigned long n = mpz_fdiv_ui(q.get_num_mpz_t(), p);
    unsigned long d = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    return Fp(static_cast<std::int64_t>(n), p) / Fp(static_cast<std::int64_t>(d), p);
}

Integer reduce_mod_power(const Rational& q, std::uint64_t p, unsigned k) {
    if (!is_p_integral(q, p))
        throw std::domain_error(to_string(q) + " is not " + std::to_string(p) + "-integral");
    Integer m;
    mpz_ui_pow_ui(m.get_mpz_t(), p, k);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), q.get_den_mpz_t(), m.get_mpz_t());
    Integer r = Integer(q.get_num()) * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Tonelli-Shanks.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0 || p == 2) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
    std::uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

Fp2 operator*(const Fp2& x, const Fp2& y) {
    if (x.d_ != y.d_) throw DomainMismatch("quadratic extensions differ");
    Fp d(static_cast<std::int64_t>(x.d_), x.modulus());
    return {x.a_ * y.a_ + d * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.d_};
}

Fp2 Fp2::inv() const {
    Fp n = norm();
    if (n.is_zero()) throw std::domain_error("element of F_p[r] has zero norm");
    Fp ni = n.inv();
    return {a_ * ni, -b_ * ni, d_};
}

std::string to_string(const Fp2& a) {
    return to_string(a.re()) + "+" + to_string(a.im()) + "r";
}

Rational QField::inv(const Rational& a) const {
    if (sgn(a) == 0) throw std::domain_error("division by zero rational");
    return Rational(1) / a;
}

FpField::FpField(std::uint64_t prime) : p(prime) { require_prime(prime); }

Fp2Field::Fp2Field(std::uint64_t prime, std::int64_t nonres) : p(prime) {
    require_prime(prime);
    d = Fp(nonres, prime).value();
}

}  // namespace ellrec
