#pragma once

#include "ellrec/exactnum.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace ellrec {

// Power series c_0 + c_1 x + ... + c_{N-1} x^{N-1} + O(x^N).
template <class F>
class Series {
public:
    using K = typename F::value_type;

    Series() = default;
    Series(F field, std::size_t precision) : f_(field), c_(precision, field.zero()) {}
    Series(F field, std::vector<K> coeffs) : f_(field), c_(std::move(coeffs)) {}

    static Series monomial(F field, std::size_t k, const K& a, std::size_t precision) {
        Series s(field, precision);
        if (k < precision) s.c_[k] = a;
        return s;
    }
    static Series constant(F field, const K& a, std::size_t precision) {
        return monomial(field, 0, a, precision);
    }

    const F& field() const { return f_; }
    std::size_t precision() const { return c_.size(); }
    const K& operator[](std::size_t i) const { return c_.at(i); }
    K& operator[](std::size_t i) { return c_.at(i); }
    const std::vector<K>& coeffs() const { return c_; }

    // Smallest i with c_i != 0, or nullopt if zero to this precision.
    std::optional<std::size_t> order() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!f_.is_zero(c_[i])) return i;
        return std::nullopt;
    }
    bool is_zero() const { return !order().has_value(); }

    Series truncate(std::size_t n) const {
        Series r = *this;
        if (n < r.c_.size()) r.c_.resize(n);
        return r;
    }

    Series& operator+=(const Series& o) {
        require_same_field(f_, o.f_);
        c_.resize(std::min(c_.size(), o.c_.size()));
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Series& operator-=(const Series& o) {
        require_same_field(f_, o.f_);
        c_.resize(std::min(c_.size(), o.c_.size()));
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    Series operator-() const {
        Series r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend Series operator*(const Series& a, const Series& b) {
        require_same_field(a.f_, b.f_);
        std::size_t n = std::min(a.precision(), b.precision());
        // order shifts extend the valid precision: O(x^N) * x^k b = O(x^{N+k})
        auto oa = a.order(), ob = b.order();
        if (oa && ob) n = std::min(a.precision() + *ob, b.precision() + *oa);
        else if (oa) n = std::max(n, b.precision() + *oa);
        else if (ob) n = std::max(n, a.precision() + *ob);
        Series r(a.f_, n);
        for (std::size_t i = 0; i < a.precision() && i < n; ++i) {
            if (a.f_.is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.precision() && i + j < n; ++j) {
                if (b.f_.is_zero(b.c_[j])) continue;
                K t = a.c_[i] * b.c_[j];
                r.c_[i + j] += t;
            }
        }
        return r;
    }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    Series scaled(const K& a) const {
        Series r = *this;
        for (auto& v : r.c_) {
            K t = v * a;
            v = t;
        }
        return r;
    }

    // Multiply by x^k (precision grows by k).
    Series shifted(std::size_t k) const {
        std::vector<K> v(k, f_.zero());
        v.insert(v.end(), c_.begin(), c_.end());
        return Series(f_, std::move(v));
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.f_ == b.f_ && a.c_ == b.c_;
    }

private:
    F f_;
    std::vector<K> c_;
};

using QSeries = Series<QField>;
using FpSeries = Series<FpField>;

inline QSeries make_qseries(std::vector<Rational> c) { return QSeries(QField{}, std::move(c)); }

template <class F>
Series<F> series_inverse(const Series<F>& f) {
    using K = typename F::value_type;
    const F& k = f.field();
    std::size_t n = f.precision();
    if (n == 0) return f;
    if (k.is_zero(f[0])) throw std::domain_error("series_inverse: zero constant term");
    K a0 = k.inv(f[0]);
    Series<F> g(k, n);
    g[0] = a0;
    for (std::size_t m = 1; m < n; ++m) {
        K acc = k.zero();
        for (std::size_t i = 1; i <= m; ++i) {
            if (k.is_zero(f[i])) continue;
            K t = f[i] * g[m - i];
            acc += t;
        }
        K t = -acc * a0;
        g[m] = t;
    }
    return g;
}

template <class F>
Series<F> series_sqrt(const Series<F>& f, const typename F::value_type& root0) {
    using K = typename F::value_type;
    const F& k = f.field();
    if (k.characteristic() == 2) throw std::domain_error("series_sqrt: characteristic 2");
    std::size_t n = f.precision();
    if (n == 0) return f;
    if (k.is_zero(root0)) throw std::domain_error("series_sqrt: root0 must be nonzero");
    if (!(root0 * root0 == f[0])) throw std::domain_error("series_sqrt: root0^2 != f(0)");
    K inv2r = k.inv(k.from_int(2) * root0);
    Series<F> g(k, n);
    g[0] = root0;
    for (std::size_t m = 1; m < n; ++m) {
        K acc = f[m];
        for (std::size_t i = 1; i < m; ++i) {
            K t = g[i] * g[m - i];
            acc -= t;
        }
        K t = acc * inv2r;
        g[m] = t;
    }
    return g;
}

template <class F>
Series<F> derivative(const Series<F>& f) {
    using K = typename F::value_type;
    std::size_t n = f.precision();
    Series<F> d(f.field(), n ? n - 1 : 0);
    for (std::size_t i = 1; i < n; ++i) {
        K t = f.field().from_int(static_cast<long>(i)) * f[i];
        d[i - 1] = t;
    }
    return d;
}

template <class F>
Series<F> log_derivative(const Series<F>& f) {
    if (f.precision() == 0 || f.field().is_zero(f[0]))
        throw std::domain_error("log_derivative: zero constant term");
    return derivative(f) * series_inverse(f.truncate(f.precision() - 1));
}

// x f'/f, precision N.
template <class F>
Series<F> x_log_derivative(const Series<F>& f) {
    return log_derivative(f).shifted(1);
}

// sum_k binom(a,k) u^k.  Requires u(0) = 0, so only k < N terms matter.
template <class F>
Series<F> binomial_power(const Series<F>& u, const Rational& a) {
    const F& k = u.field();
    std::size_t n = u.precision();
    if (n > 0 && !k.is_zero(u[0])) throw std::domain_error("binomial_power: u(0) != 0");
    Series<F> acc = Series<F>::constant(k, k.one(), n);
    Series<F> power = acc;
    for (std::size_t j = 1; j < n; ++j) {
        power = (power * u).truncate(n);
        if (power.is_zero()) break;
        acc += power.scaled(k.from_rational(generalized_binomial(a, j)));
    }
    return acc;
}

// Keeps x^n with p | n; and the k-th divided derivative sum binom(n,k) a_n x^{n-k}.
template <class F>
std::pair<Series<F>, Series<F>> phi_and_divided_derivative(const Series<F>& f, std::uint64_t p,
                                                           unsigned long k) {
    using K = typename F::value_type;
    const F& fld = f.field();
    Series<F> phi(fld, f.precision());
    for (std::size_t i = 0; i < f.precision(); i += p) phi[i] = f[i];
    std::size_t n = f.precision() > k ? f.precision() - k : 0;
    Series<F> dd(fld, n);
    for (std::size_t i = k; i < f.precision(); ++i) {
        if (fld.is_zero(f[i])) continue;
        K t = fld.from_rational(Rational(binomial(i, k))) * f[i];
        dd[i - k] = t;
    }
    return {phi, dd};
}

// Laurent series x^val * s.
template <class F>
struct Laurent {
    long val = 0;
    Series<F> s;

    typename F::value_type coeff(long e) const {
        long i = e - val;
        if (i < 0) return s.field().zero();
        if (static_cast<std::size_t>(i) >= s.precision())
            throw std::out_of_range("Laurent coefficient beyond precision");
        return s[static_cast<std::size_t>(i)];
    }
    // Exponent bound: known through x^{val+prec-1}.
    long exclusive_bound() const { return val + static_cast<long>(s.precision()); }
    typename F::value_type residue() const { return coeff(-1); }
    // Strip leading zeros so that val is the true order.
    Laurent normalized() const {
        auto o = s.order();
        if (!o) return *this;
        Laurent r;
        r.val = val + static_cast<long>(*o);
        std::vector<typename F::value_type> v(s.coeffs().begin() + static_cast<long>(*o), s.coeffs().end());
        r.s = Series<F>(s.field(), std::move(v));
        return r;
    }
    std::optional<long> order() const {
        auto o = s.order();
        if (!o) return std::nullopt;
        return val + static_cast<long>(*o);
    }
};

template <class F>
Laurent<F> operator*(const Laurent<F>& a, const Laurent<F>& b) {
    return {a.val + b.val, a.s * b.s};
}

template <class F>
Laurent<F> operator+(const Laurent<F>& a, const Laurent<F>& b) {
    using K = typename F::value_type;
    long v = std::min(a.val, b.val);
    long hi = std::min(a.exclusive_bound(), b.exclusive_bound());
    const F& k = a.s.field();
    Series<F> s(k, hi > v ? static_cast<std::size_t>(hi - v) : 0);
    for (long e = v; e < hi; ++e) {
        K t = a.coeff(e) + b.coeff(e);
        s[static_cast<std::size_t>(e - v)] = t;
    }
    return {v, s};
}

template <class F>
Laurent<F> laurent_inverse(const Laurent<F>& a) {
    Laurent<F> n = a.normalized();
    if (n.s.is_zero()) throw std::domain_error("inverse of zero Laurent series");
    return {-n.val, series_inverse(n.s)};
}

// ---- rational-coefficient toolkit ----

struct DieudonneExponents {
    std::vector<Rational> a;  // a[0] unused; a[m] for 1 <= m <= M
    std::size_t source_precision = 0;
};

// Coefficients c_n of x f'/f, indices 0..M (c_0 = 0).
std::vector<Rational> x_log_derivative_coeffs(const QSeries& f, std::size_t M);

DieudonneExponents dieudonne_exponents(const QSeries& f, std::size_t M);

// prod_{m<=M} (1 - x^m)^{a_m} to precision M+1.
QSeries reconstruct_product(const DieudonneExponents& e);

// f = exp(sum_{n>=1} c_n x^n / n) to precision N (c[0] ignored).
QSeries exp_of_log_sum(const std::vector<Rational>& c, std::size_t N);

struct CongruenceFailure {
    std::size_t k = 0;
    unsigned r = 0;
    std::size_t index = 0;  // k p^{r+1}
};

struct CongruenceReport {
    std::uint64_t p = 0;
    bool integral = true;
    std::optional<std::size_t> nonintegral_index;
    std::size_t checked = 0;
    std::vector<CongruenceFailure> failures;
    bool passed() const { return integral && failures.empty(); }

    // filled by reconstruction
    bool reconstructed = false;
    bool exponents_integral = true;
    std::optional<std::size_t> first_nonintegral_exponent;
    bool witness_integral = true;
    std::optional<std::size_t> first_nonintegral_witness_coeff;
    bool roundtrip_ok = true;
};

// c[n] for n = 0..; scans c_{k p^{r+1}} == c_{k p^r} mod p^{r+1}.
CongruenceReport congruence_scan(const std::vector<Rational>& c, std::uint64_t p, unsigned r_max,
                                 std::size_t n_max, bool reconstruct = false);

}  // namespace ellrec
