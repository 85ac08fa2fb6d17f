#pragma once

#include "ellrec/series.hpp"

#include <string>
#include <vector>

namespace ellrec {

// Dense univariate polynomial, low degree first, no trailing zeros.
template <class F>
class Poly {
public:
    using K = typename F::value_type;

    Poly() = default;
    explicit Poly(F field) : f_(field) {}
    Poly(F field, std::vector<K> c) : f_(field), c_(std::move(c)) { trim(); }

    static Poly constant(F field, const K& a) { return Poly(field, {a}); }
    static Poly monomial(F field, std::size_t k, const K& a) {
        std::vector<K> c(k + 1, field.zero());
        c[k] = a;
        return Poly(field, std::move(c));
    }
    static Poly x(F field) { return monomial(field, 1, field.one()); }
    static Poly from_ints(F field, std::initializer_list<long> v) {
        std::vector<K> c;
        for (long a : v) c.push_back(field.from_int(a));
        return Poly(field, std::move(c));
    }

    const F& field() const { return f_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : f_.zero(); }
    K lead() const { return c_.empty() ? f_.zero() : c_.back(); }

    K operator()(const K& x) const {
        K r = f_.zero();
        for (std::size_t i = c_.size(); i-- > 0;) {
            K t = r * x;
            r = t + c_[i];
        }
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        require_same_field(a.f_, b.f_);
        std::vector<K> c(std::max(a.c_.size(), b.c_.size()), a.f_.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return Poly(a.f_, std::move(c));
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        require_same_field(a.f_, b.f_);
        if (a.is_zero() || b.is_zero()) return Poly(a.f_);
        std::vector<K> c(a.c_.size() + b.c_.size() - 1, a.f_.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.f_.is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                K t = a.c_[i] * b.c_[j];
                c[i + j] += t;
            }
        }
        return Poly(a.f_, std::move(c));
    }
    Poly scaled(const K& a) const {
        Poly r = *this;
        for (auto& v : r.c_) {
            K t = v * a;
            v = t;
        }
        r.trim();
        return r;
    }
    Poly pow(unsigned e) const {
        Poly r = constant(f_, f_.one()), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }
    Poly derivative() const {
        std::vector<K> c;
        for (std::size_t i = 1; i < c_.size(); ++i) {
            K t = f_.from_int(static_cast<long>(i)) * c_[i];
            c.push_back(t);
        }
        return Poly(f_, std::move(c));
    }
    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(f_.inv(lead()));
    }

    // Euclidean division.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        require_same_field(f_, d.f_);
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        Poly r = *this;
        long dq = degree() - d.degree();
        if (dq < 0) return {Poly(f_), r};
        std::vector<K> q(static_cast<std::size_t>(dq) + 1, f_.zero());
        K li = f_.inv(d.lead());
        for (long k = dq; k >= 0; --k) {
            std::size_t top = static_cast<std::size_t>(k + d.degree());
            if (top >= r.c_.size()) continue;
            K coef = r.c_[top] * li;
            q[static_cast<std::size_t>(k)] = coef;
            if (f_.is_zero(coef)) continue;
            for (std::size_t j = 0; j < d.c_.size(); ++j) {
                K t = coef * d.c_[j];
                r.c_[static_cast<std::size_t>(k) + j] -= t;
            }
            r.trim();
        }
        return {Poly(f_, std::move(q)), r};
    }
    friend Poly operator/(const Poly& a, const Poly& b) {
        auto [q, r] = a.divmod(b);
        if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
        return q;
    }
    friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.f_ == b.f_ && a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Series<F> to_series(std::size_t n) const {
        Series<F> s(f_, n);
        for (std::size_t i = 0; i < c_.size() && i < n; ++i) s[i] = c_[i];
        return s;
    }

    template <class G, class Map>
    Poly<G> map(const G& g, Map m) const {
        std::vector<typename G::value_type> c;
        for (const auto& v : c_) c.push_back(m(v));
        return Poly<G>(g, std::move(c));
    }

private:
    void trim() {
        while (!c_.empty() && f_.is_zero(c_.back())) c_.pop_back();
    }
    F f_;
    std::vector<K> c_;
};

template <class F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        Poly<F> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Resultant via the Euclidean remainder sequence.
template <class F>
typename F::value_type resultant(Poly<F> a, Poly<F> b) {
    using K = typename F::value_type;
    const F k = a.field();
    if (a.is_zero() || b.is_zero()) return k.zero();
    K res = k.one();
    while (b.degree() > 0) {
        long da = a.degree(), db = b.degree();
        Poly<F> r = a % b;
        if (r.is_zero()) return k.zero();
        long dr = r.degree();
        // res(a,b) = (-1)^{da db} lc(b)^{da-dr} res(b, r)
        K lb = b.lead();
        for (long i = 0; i < da - dr; ++i) res *= lb;
        if ((da * db) % 2) res = -res;
        a = std::move(b);
        b = std::move(r);
    }
    // b constant
    K lb = b.lead();
    for (long i = 0; i < a.degree(); ++i) res *= lb;
    return res;
}

template <class F>
std::string to_string(const Poly<F>& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        if (p.field().is_zero(p.coeffs()[i])) continue;
        if (!s.empty()) s += " + ";
        s += "(" + to_string(p.coeffs()[i]) + ")";
        if (i == 1) s += "x";
        if (i > 1) s += "x^" + std::to_string(i);
    }
    return s;
}

// Reduced fraction num/den with monic denominator.
template <class F>
class RatFunc {
public:
    using K = typename F::value_type;
    using P = Poly<F>;

    RatFunc() = default;
    explicit RatFunc(F field) : num_(field), den_(P::constant(field, field.one())) {}
    RatFunc(const P& n) : num_(n), den_(P::constant(n.field(), n.field().one())) {}  // NOLINT
    RatFunc(const P& n, const P& d) : num_(n), den_(d) { normalize(); }

    static RatFunc constant(F field, const K& a) { return RatFunc(P::constant(field, a)); }

    const F& field() const { return num_.field(); }
    const P& num() const { return num_; }
    const P& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    RatFunc operator-() const { return RatFunc(-num_, den_); }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    RatFunc inv() const {
        if (is_zero()) throw std::domain_error("inverse of zero rational function");
        return RatFunc(den_, num_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }
    RatFunc scaled(const K& c) const { return RatFunc(num_.scaled(c), den_); }
    RatFunc derivative() const {
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    // Expansion at x = 0.
    Laurent<F> laurent(std::size_t n) const {
        const F& k = field();
        long v = 0;
        P d = den_;
        while (k.is_zero(d.coeff(0))) {
            d = d / P::x(k);
            --v;
        }
        P nn = num_;
        while (!nn.is_zero() && k.is_zero(nn.coeff(0))) {
            nn = nn / P::x(k);
            ++v;
        }
        return {v, nn.to_series(n) * series_inverse(d.to_series(n))};
    }

    template <class G, class Map>
    RatFunc<G> map(const G& g, Map m) const {
        return RatFunc<G>(num_.map(g, m), den_.map(g, m));
    }

private:
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = P::constant(num_.field(), num_.field().one());
            return;
        }
        P g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        K li = num_.field().inv(den_.lead());
        num_ = num_.scaled(li);
        den_ = den_.scaled(li);
    }
    P num_, den_;
};

using QPoly = Poly<QField>;
using QRatFunc = RatFunc<QField>;
using FpPoly = Poly<FpField>;
using FpRatFunc = RatFunc<FpField>;

inline QPoly qpoly(std::initializer_list<long> v) { return QPoly::from_ints(QField{}, v); }

}  // namespace ellrec
