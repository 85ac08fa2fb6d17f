#pragma once

#include "ellrec/poly.hpp"
#include "ellrec/recurrence.hpp"
#include "ellrec/report.hpp"
#include "ellrec/series.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellrec {

template <class F>
Poly<F> curve_Q(const F& k) {
    return Poly<F>::from_ints(k, {4, 0, 1, 2, 1});
}

struct CurveModel {
    QPoly Q = curve_Q(QField{});
    Rational A = make_rational(-49, 3);
    Rational B = make_rational(146, 27);
    Rational j = make_rational(117649, 65);
    std::vector<std::uint64_t> bad_primes{2, 5, 13};
};

CurveModel curve_model();
Rational j_invariant(const Rational& A, const Rational& B);
Rational discriminant_Q(const QPoly& Q);  // resultant(Q, Q') up to the usual sign/lead normalization

// P(x + a)
template <class F>
Poly<F> poly_shift(const Poly<F>& P, const typename F::value_type& a) {
    const F& k = P.field();
    Poly<F> xa(k, {a, k.one()});
    Poly<F> r(k);
    for (std::size_t i = P.coeffs().size(); i-- > 0;) r = r * xa + Poly<F>::constant(k, P.coeffs()[i]);
    return r;
}

// u^{deg} P(1/u) for deg >= deg P.
template <class F>
Poly<F> poly_reverse(const Poly<F>& P, std::size_t deg) {
    const F& k = P.field();
    std::vector<typename F::value_type> c(deg + 1, k.zero());
    for (std::size_t i = 0; i < P.coeffs().size(); ++i) c[deg - i] = P.coeffs()[i];
    return Poly<F>(k, std::move(c));
}

class PoleError : public std::domain_error {
public:
    PoleError(const std::string& where, long order)
        : std::domain_error("pole of order " + std::to_string(-order) + " at " + where), order_(order) {}
    long order() const { return order_; }

private:
    long order_;
};

// u + v*y in F(x)[y]/(y^2 - Q).
template <class F>
class CurveFunction {
public:
    using K = typename F::value_type;
    using R = RatFunc<F>;
    using P = Poly<F>;

    CurveFunction() = default;
    CurveFunction(R u, R v, P Q) : u_(std::move(u)), v_(std::move(v)), Q_(std::move(Q)) {}
    explicit CurveFunction(const P& Q) : u_(Q.field()), v_(Q.field()), Q_(Q) {}

    static CurveFunction rational(const R& u, const P& Q) { return {u, R(Q.field()), Q}; }
    static CurveFunction y(const P& Q) {
        return {R(Q.field()), R::constant(Q.field(), Q.field().one()), Q};
    }
    static CurveFunction constant(const K& a, const P& Q) { return rational(R::constant(Q.field(), a), Q); }

    const R& u() const { return u_; }
    const R& v() const { return v_; }
    const P& Q() const { return Q_; }
    const F& field() const { return Q_.field(); }
    bool is_zero() const { return u_.is_zero() && v_.is_zero(); }

    friend CurveFunction operator+(const CurveFunction& a, const CurveFunction& b) {
        a.check(b);
        return {a.u_ + b.u_, a.v_ + b.v_, a.Q_};
    }
    friend CurveFunction operator-(const CurveFunction& a, const CurveFunction& b) {
        a.check(b);
        return {a.u_ - b.u_, a.v_ - b.v_, a.Q_};
    }
    CurveFunction operator-() const { return {-u_, -v_, Q_}; }
    friend CurveFunction operator*(const CurveFunction& a, const CurveFunction& b) {
        a.check(b);
        R q(a.Q_);
        return {a.u_ * b.u_ + a.v_ * b.v_ * q, a.u_ * b.v_ + a.v_ * b.u_, a.Q_};
    }
    CurveFunction conj() const { return {u_, -v_, Q_}; }
    R norm() const { return u_ * u_ - v_ * v_ * R(Q_); }
    CurveFunction inv() const {
        R n = norm();
        if (n.is_zero()) throw std::domain_error("inverse of zero curve function");
        R ni = n.inv();
        return {u_ * ni, -(v_ * ni), Q_};
    }
    friend CurveFunction operator/(const CurveFunction& a, const CurveFunction& b) { return a * b.inv(); }
    CurveFunction scaled(const K& c) const { return {u_.scaled(c), v_.scaled(c), Q_}; }

    // d/dx; uses y' = Q'/(2y) = Q' y/(2Q)
    CurveFunction derivative() const {
        const F& k = field();
        R half_dlogQ(Q_.derivative().scaled(k.inv(k.from_int(2))), Q_);
        return {u_.derivative(), v_.derivative() + v_ * half_dlogQ, Q_};
    }

    friend bool operator==(const CurveFunction& a, const CurveFunction& b) {
        return a.Q_ == b.Q_ && a.u_ == b.u_ && a.v_ == b.v_;
    }
    friend bool operator!=(const CurveFunction& a, const CurveFunction& b) { return !(a == b); }

    template <class G, class Map>
    CurveFunction<G> map(const G& g, Map m) const {
        return {u_.map(g, m), v_.map(g, m), Q_.map(g, m)};
    }

private:
    void check(const CurveFunction& o) const {
        if (!(Q_ == o.Q_)) throw DomainMismatch("curve functions on different curves");
    }
    R u_, v_;
    P Q_;
};

// g * omega, omega = dx/y.
template <class F>
struct CurveForm {
    CurveFunction<F> g;

    friend CurveForm operator+(const CurveForm& a, const CurveForm& b) { return {a.g + b.g}; }
    friend CurveForm operator-(const CurveForm& a, const CurveForm& b) { return {a.g - b.g}; }
    friend CurveForm operator*(const CurveFunction<F>& h, const CurveForm& w) { return {h * w.g}; }
    friend bool operator==(const CurveForm& a, const CurveForm& b) { return a.g == b.g; }
    friend bool operator!=(const CurveForm& a, const CurveForm& b) { return !(a == b); }
};

// dh = h' dx = (h' y) omega
template <class F>
CurveForm<F> differential(const CurveFunction<F>& h) {
    return {h.derivative() * CurveFunction<F>::y(h.Q())};
}

// ---- standard functions and forms ----

template <class F>
CurveFunction<F> cf_x(const F& k) {
    return CurveFunction<F>::rational(RatFunc<F>(Poly<F>::x(k)), curve_Q(k));
}
template <class F>
CurveFunction<F> cf_y(const F& k) {
    return CurveFunction<F>::y(curve_Q(k));
}
template <class F>
CurveFunction<F> cf_poly(const F& k, std::initializer_list<long> c) {
    return CurveFunction<F>::rational(RatFunc<F>(Poly<F>::from_ints(k, c)), curve_Q(k));
}
// t = 1 + 2x
template <class F>
CurveFunction<F> cf_t(const F& k) {
    return cf_poly(k, {1, 2});
}
// s = 2x(2x+1)/y
template <class F>
CurveFunction<F> cf_s(const F& k) {
    auto Q = curve_Q(k);
    return {RatFunc<F>(k), RatFunc<F>(Poly<F>::from_ints(k, {0, 2, 4}), Q), Q};
}
// z = x^2 + x + y
template <class F>
CurveFunction<F> cf_z(const F& k) {
    return cf_poly(k, {0, 1, 1}) + cf_y(k);
}
template <class F>
CurveForm<F> form_omega(const F& k) {
    return {CurveFunction<F>::constant(k.one(), curve_Q(k))};
}
template <class F>
CurveForm<F> form_eta(const F& k) {
    return {cf_poly(k, {0, 1, 1})};
}
template <class F>
CurveForm<F> form_xi(const F& k) {
    return {cf_poly(k, {2, 4})};
}

// ---- expansions at places ----

template <class F>
Laurent<F> laurent_to_bound(const RatFunc<F>& r, long bound) {
    if (r.is_zero()) return {bound, Series<F>(r.field(), 0)};
    Laurent<F> l = r.laurent(1);
    long v = l.val;
    std::size_t n = bound > v ? static_cast<std::size_t>(bound - v) : 0;
    return r.laurent(n);
}

template <class F>
Laurent<F> cut(const Laurent<F>& a, long bound) {
    long hi = std::min(bound, a.exclusive_bound());
    std::size_t n = hi > a.val ? static_cast<std::size_t>(hi - a.val) : 0;
    return {a.val, a.s.truncate(n)};
}

// Expansion in h = x - x0 at the place (x0, y0), y0 != 0; known through h^{bound-1}.
template <class F>
Laurent<F> expand_at_place(const CurveFunction<F>& f, const typename F::value_type& x0,
                           const typename F::value_type& y0, long bound) {
    const F& k = f.field();
    if (k.is_zero(y0)) throw std::domain_error("expand_at_place needs y0 != 0");
    if (f.Q()(x0) != y0 * y0) throw std::domain_error("point is not on the curve");
    auto shift = [&](const RatFunc<F>& r) {
        return RatFunc<F>(poly_shift(r.num(), x0), poly_shift(r.den(), x0));
    };
    RatFunc<F> u = shift(f.u()), v = shift(f.v());
    Laurent<F> U = laurent_to_bound(u, bound);
    if (v.is_zero()) return cut(U, bound);
    Laurent<F> V = laurent_to_bound(v, bound);
    long extra = std::max(0L, -V.val);
    std::size_t n = static_cast<std::size_t>(std::max(1L, bound + extra));
    Series<F> Y = series_sqrt(poly_shift(f.Q(), x0).to_series(n), y0);
    return cut(U + V * Laurent<F>{0, Y}, bound);
}

template <class F>
Laurent<F> expand_form_at_place(const CurveForm<F>& w, const typename F::value_type& x0,
                                const typename F::value_type& y0, long bound) {
    // omega = dh / y
    CurveFunction<F> h = w.g / CurveFunction<F>::y(w.g.Q());
    return expand_at_place(h, x0, y0, bound);
}

// Taylor series at (0, 2) (sign = +1) or (0, -2).
template <class F>
Series<F> expand_at_origin(const CurveFunction<F>& f, std::size_t N, int sign = 1) {
    const F& k = f.field();
    Laurent<F> l = expand_at_place(f, k.zero(), k.from_int(2 * sign), static_cast<long>(N)).normalized();
    if (l.val < 0) throw PoleError(sign > 0 ? "(0,2)" : "(0,-2)", l.val);
    Series<F> s(k, N);
    for (long e = l.val; e < static_cast<long>(N); ++e) s[static_cast<std::size_t>(e)] = l.coeff(e);
    return s;
}

// Expansion in u = 1/x at infinity_{sign}, where y = sign * u^{-2} w(u), w(0) = 1.
template <class F>
Laurent<F> expand_at_infinity(const CurveFunction<F>& f, int sign, long bound) {
    const F& k = f.field();
    const auto& Q = f.Q();
    if (Q.degree() != 4 || Q.lead() != k.one()) throw std::domain_error("infinity expansion needs monic quartic Q");
    auto at_inf = [&](const RatFunc<F>& r, long b) -> Laurent<F> {
        if (r.is_zero()) return {b, Series<F>(k, 0)};
        std::size_t dn = static_cast<std::size_t>(r.num().degree()), dd = static_cast<std::size_t>(r.den().degree());
        RatFunc<F> rr(poly_reverse(r.num(), dn), poly_reverse(r.den(), dd));
        Laurent<F> l = laurent_to_bound(rr, b + static_cast<long>(dn) - static_cast<long>(dd));
        l.val += static_cast<long>(dd) - static_cast<long>(dn);
        return l;
    };
    Laurent<F> U = at_inf(f.u(), bound);
    if (f.v().is_zero()) return cut(U, bound);
    Laurent<F> V = at_inf(f.v(), bound + 2);
    long vy = V.val - 2;
    std::size_t n = static_cast<std::size_t>(std::max(1L, bound - vy + 2));
    Series<F> w = series_sqrt(poly_reverse(Q, 4).to_series(n), k.one());
    Laurent<F> Y{-2, sign > 0 ? w : w.scaled(k.from_int(-1))};
    return cut(U + V * Y, bound);
}

// coefficient of du at infinity_{sign}: omega = -sign du / w
template <class F>
Laurent<F> expand_form_at_infinity(const CurveForm<F>& w, int sign, long bound) {
    const F& k = w.g.field();
    // g * dx / y = g * (-du/u^2) / y
    CurveFunction<F> h = w.g / CurveFunction<F>::y(w.g.Q());
    Laurent<F> e = expand_at_infinity(h, sign, bound + 2);
    Laurent<F> r{e.val - 2, e.s.scaled(k.from_int(-1))};
    return cut(r, bound);
}

template <class F>
std::string to_string(const CurveFunction<F>& f) {
    auto rs = [](const RatFunc<F>& r) {
        if (r.is_polynomial()) return to_string(r.num());
        return "[" + to_string(r.num()) + "]/[" + to_string(r.den()) + "]";
    };
    return rs(f.u()) + " + (" + rs(f.v()) + ")*y";
}

// ---- checks and tables ----

// Residual A(x) S'(x) - B(x) S(x); precision N-1 for an input of precision N.
QSeries verify_ode(const QSeries& S);

std::vector<Check> verify_algebraic_identities();
std::vector<Check> omega_regularity(long order = 10);

struct ClosedFormRow {
    std::size_t n = 0;
    Integer b;
    Integer l;  // l_n = b_{n-1} + 8 b_{n-2}; l_0 = 0
};

Integer closed_form_b(std::size_t n);
std::vector<ClosedFormRow> closed_forms(std::size_t n_max);
// l_n == 2^{2n-2} c_n for 1 <= n <= n_max
Check closed_forms_match(std::size_t n_max);

struct TwoAdicReport {
    std::size_t m_max = 0;
    bool even_ok = true;       // l_{2m} = 0 mod 4, m >= 1
    bool mod8_ok = true;       // l_{2m+1} = (-1)^m binom(2m, m) mod 8
    bool valuation_ok = true;  // v_2(l_{2m+1}) = popcount(m)
    std::optional<std::size_t> first_failure;
    // v_2(l_{2^k+1}) for k = 1..
    std::vector<std::pair<std::size_t, long>> sharpness;
    bool ok() const { return even_ok && mod8_ok && valuation_ok; }
};

TwoAdicReport two_adic_facts(std::size_t m_max, unsigned k_max = 7);

struct QuadratureResult {
    QSeries f;                 // S/s, precision N
    CurveForm<QField> form;    // R~/(2 t^2) omega
    bool on_hyperplane = false;
    // form = (Kc + Kp/t^2) omega on the hyperplane 6C4 + C2 + C1 = 0
    Rational Kc, Kp;
    Rational K1_printed, K2_printed;  // the printed combinations, for comparison
    bool decomposition_ok = false;
    bool derivative_ok = false;  // df matches the expansion of the form
    std::size_t verified_to = 0;
};

QuadratureResult xi_quadrature(const InitialData& init, std::size_t N);

}  // namespace ellrec
