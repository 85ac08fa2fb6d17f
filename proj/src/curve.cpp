#include "ellrec/curve.hpp"

#include <bit>

namespace ellrec {

namespace {

using CF = CurveFunction<QField>;
using Form = CurveForm<QField>;

const QField kQ{};

Rational q(long a, long b = 1) { return make_rational(a, b); }

CF cq(const Rational& a) { return CF::constant(a, curve_Q(kQ)); }

CF rat(const QPoly& n, const QPoly& d) { return CF::rational(QRatFunc(n, d), curve_Q(kQ)); }

Check identity(const std::string& name, bool ok, const std::string& lhs = {}) {
    return make_check(name, ok, ok ? "exact" : "mismatch: " + lhs);
}

}  // namespace

CurveModel curve_model() { return {}; }

Rational j_invariant(const Rational& A, const Rational& B) {
    Rational a3 = Rational(4) * A * A * A;
    Rational den = a3 + Rational(27) * B * B;
    if (sgn(den) == 0) throw std::domain_error("singular Weierstrass model");
    return Rational(1728) * a3 / den;
}

Rational discriminant_Q(const QPoly& Q) {
    // monic quartic: disc = res(Q, Q')
    return resultant(Q, Q.derivative()) / Q.lead();
}

QSeries verify_ode(const QSeries& S) {
    std::size_t N = S.precision();
    if (N < 6) throw std::invalid_argument("verify_ode needs precision >= 6");
    QSeries dS = derivative(S);
    return ode_A().to_series(N - 1) * dS - ode_B().to_series(N - 1) * S.truncate(N - 1);
}

std::vector<Check> verify_algebraic_identities() {
    std::vector<Check> out;
    const QPoly Q = curve_Q(kQ);
    CF x = cf_x(kQ), y = cf_y(kQ), s = cf_s(kQ), z = cf_z(kQ), t = cf_t(kQ);
    CF x2x = cf_poly(kQ, {0, 1, 1});
    Form omega = form_omega(kQ), eta = form_eta(kQ), xi = form_xi(kQ);

    {
        CF lhs = s * s * CF::rational(QRatFunc(Q), Q);
        CF rhs = cf_poly(kQ, {0, 2, 4}) * cf_poly(kQ, {0, 2, 4});
        out.push_back(identity("s^2 Q = 4x^2(2x+1)^2", lhs == rhs, to_string(lhs - rhs)));
    }
    {
        QRatFunc BA(ode_B(), ode_A());
        QRatFunc pf = QRatFunc(qpoly({1}), qpoly({0, 1})) + QRatFunc(qpoly({2}), qpoly({1, 2})) -
                      QRatFunc(qpoly({0, 1, 3, 2}), Q);
        out.push_back(identity("partial fractions of B/A", pf == BA));
        CF dlog = s.derivative() / s;
        out.push_back(identity("s'/s = B/A", dlog == CF::rational(BA, Q), to_string(dlog)));
    }
    {
        QPoly pell = qpoly({0, 1, 1}) * qpoly({0, 1, 1}) - Q;
        bool ok = pell == QPoly::constant(kQ, Rational(-4));
        out.push_back(make_check("(x^2+x)^2 - Q is constant", ok, "constant = " + to_string(pell),
                                 pell.degree() == 0 ? rational_json(pell.coeff(0)) : nlohmann::json(nullptr)));
        CF prod = z * (x2x - y);
        out.push_back(identity("z (x^2+x-y) = -4", prod == cq(-4), to_string(prod)));
    }
    {
        QPoly lhs = qpoly({0, 1}) * Q.derivative();
        QPoly rhs = qpoly({0, 2, 4}) * qpoly({0, 1, 1});
        out.push_back(identity("x Q' = 2x(2x+1)(x^2+x)", lhs == rhs));
        CF a = x * z.derivative(), b = z * s * cq(q(1, 2));
        out.push_back(identity("x dz = (z s / 2) dx", a == b, to_string(a - b)));
    }
    {
        Form s_dx_over_x{s / x * y};
        Form two_dlog_z{cq(2) * differential(z).g / z};
        out.push_back(identity("xi = s dx/x", s_dx_over_x == xi, to_string(s_dx_over_x.g)));
        out.push_back(identity("xi = 2 dz/z", two_dlog_z == xi, to_string(two_dlog_z.g)));
    }
    {
        Form lhs = differential(y / t);
        Form rhs{eta.g * cq(q(1, 2)) + omega.g * cq(q(1, 8)) - cq(q(65, 8)) / (t * t)};
        out.push_back(identity("d(y/t) = eta/2 + omega/8 - 65 omega/(8 t^2)", lhs == rhs, to_string((lhs - rhs).g)));
    }
    {
        CF h = y / (x * x * x) + cq(3) * y / (x * x);
        Form lhs = differential(h);
        Form rhs{rat(qpoly({-12, 0, -2, -2}), qpoly({0, 0, 0, 0, 1})) * t};
        out.push_back(identity("d(y/x^3 + 3y/x^2) = -2(x^3+x^2+6)/x^4 t omega", lhs == rhs, to_string(lhs.g)));
    }
    {
        CF X = cq(2) * z, Y = cq(2) * t * z;
        CF lhs = Y * Y, rhs = X * X * X + X * X - cq(16) * X;
        out.push_back(identity("(2tz)^2 = (2z)^3 + (2z)^2 - 16(2z)", lhs == rhs, to_string(lhs - rhs)));
        CurveModel m = curve_model();
        CF U = X + cq(q(1, 3));
        CF rhs2 = U * U * U + cq(m.A) * U + cq(m.B);
        out.push_back(identity("V^2 = U^3 - (49/3)U + 146/27", lhs == rhs2, to_string(lhs - rhs2)));
        Rational j = j_invariant(m.A, m.B);
        out.push_back(make_check("j = 7^6/65", j == m.j, "j = " + to_string(j), rational_json(j)));
    }
    {
        Rational d = discriminant_Q(Q);
        std::vector<std::uint64_t> bad{2};
        Integer num = abs(d.get_num());
        for (auto p : prime_support(num))
            if (p != 2) bad.push_back(p);
        bool ok = sgn(d) != 0 && bad == curve_model().bad_primes;
        std::string ps;
        for (auto p : bad) ps += (ps.empty() ? "" : ",") + std::to_string(p);
        out.push_back(make_check("disc(Q) != 0, bad primes", ok, "disc = " + to_string(d) + ", bad primes {" + ps + "}",
                                 rational_json(d)));
    }
    return out;
}

std::vector<Check> omega_regularity(long order) {
    std::vector<Check> out;
    Form omega = form_omega(kQ), eta = form_eta(kQ), xi = form_xi(kQ);
    for (int sg : {1, -1}) {
        auto e = expand_form_at_place(omega, Rational(0), Rational(2 * sg), order).order();
        std::string where = sg > 0 ? "(0,2)" : "(0,-2)";
        out.push_back(make_check("omega regular at " + where, e && *e >= 0,
                                 "order " + (e ? std::to_string(*e) : std::string("inf"))));
    }
    Rational r = resultant(curve_Q(kQ), curve_Q(kQ).derivative());
    out.push_back(make_check("omega regular at roots of Q", sgn(r) != 0,
                             "res(Q,Q') = " + to_string(r) + " so y is a local parameter there"));
    for (int sg : {1, -1}) {
        std::string where = sg > 0 ? "infinity+" : "infinity-";
        auto w = expand_form_at_infinity(omega, sg, order);
        auto e = w.order();
        out.push_back(make_check("omega regular at " + where, e && *e >= 0,
                                 "order " + (e ? std::to_string(*e) : std::string("inf"))));
        auto he = expand_form_at_infinity(eta, sg, order);
        bool tail_ok = true;
        // eta = -sg u^{-2}(1 + O(u^4)) du
        for (long k = -1; k < 2 && k < order; ++k) tail_ok = tail_ok && sgn(he.coeff(k)) == 0;
        out.push_back(make_check("eta has no residue at " + where, he.val >= -2 && tail_ok,
                                 "residue " + to_string(he.residue())));
        Rational xr = expand_form_at_infinity(xi, sg, order).residue();
        out.push_back(make_check("residue of xi at " + where, xr == Rational(-4 * sg), "residue " + to_string(xr),
                                 rational_json(xr)));
    }
    return out;
}

Integer closed_form_b(std::size_t n) {
    Integer b(0);
    for (std::size_t r = n % 2; r <= n; r += 2) {
        std::size_t m = n - r;
        if (r > m) break;  // binom(m, r) = 0
        Integer term = binomial(m, m / 2) * binomial(m, r);
        term <<= 2 * r;
        if ((m / 2) % 2) b -= term;
        else b += term;
    }
    return b;
}

std::vector<ClosedFormRow> closed_forms(std::size_t n_max) {
    std::vector<ClosedFormRow> rows;
    for (std::size_t n = 0; n <= n_max; ++n) {
        ClosedFormRow row;
        row.n = n;
        row.b = closed_form_b(n);
        if (n >= 1) row.l = rows[n - 1].b;
        if (n >= 2) row.l += 8 * rows[n - 2].b;
        rows.push_back(row);
    }
    return rows;
}

Check closed_forms_match(std::size_t n_max) {
    auto rows = closed_forms(n_max);
    auto c = extend_rational(special_initial_data(), n_max + 1);
    for (std::size_t n = 1; n <= n_max; ++n) {
        Integer pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), 2, 2 * n - 2);
        Rational v = Rational(pw) * c[n];
        if (v != Rational(rows[n].l))
            return make_check("l_n = 2^{2n-2} c_n", false, "first mismatch at n = " + std::to_string(n),
                              nlohmann::json{{"n", n}});
    }
    return make_check("l_n = 2^{2n-2} c_n", true, "n <= " + std::to_string(n_max));
}

TwoAdicReport two_adic_facts(std::size_t m_max, unsigned k_max) {
    TwoAdicReport rep;
    rep.m_max = m_max;
    std::size_t n_top = std::max<std::size_t>(2 * m_max + 1, (std::size_t{1} << k_max) + 1);
    auto rows = closed_forms(n_top);
    auto fail = [&](std::size_t m) {
        if (!rep.first_failure) rep.first_failure = m;
    };
    for (std::size_t m = 0; m <= m_max; ++m) {
        const Integer& lo = rows[2 * m + 1].l;
        if (m >= 1 && mpz_divisible_ui_p(rows[2 * m].l.get_mpz_t(), 4) == 0) {
            rep.even_ok = false;
            fail(m);
        }
        Integer target = binomial(2 * m, m);
        if (m % 2) target = -target;
        Integer diff = lo - target;
        if (mpz_divisible_ui_p(diff.get_mpz_t(), 8) == 0) {
            rep.mod8_ok = false;
            fail(m);
        }
        auto v = padic_valuation(lo, 2);
        if (!v || *v != std::popcount(m)) {
            rep.valuation_ok = false;
            fail(m);
        }
    }
    for (unsigned k = 1; k <= k_max; ++k) {
        std::size_t n = (std::size_t{1} << k) + 1;
        auto v = padic_valuation(rows[n].l, 2);
        rep.sharpness.push_back({n, v ? *v : -1});
    }
    return rep;
}

QuadratureResult xi_quadrature(const InitialData& init, std::size_t N) {
    if (sgn(init.c[0]) != 0) throw std::invalid_argument("xi_quadrature needs C_0 = 0");
    if (N < 2) throw std::invalid_argument("xi_quadrature needs N >= 2");
    QuadratureResult res;
    auto c = extend_rational(init, N + 1);
    std::vector<Rational> S1(c.begin() + 1, c.end());  // S/x
    QSeries s = expand_at_origin(cf_s(kQ), N + 1);
    std::vector<Rational> s1(s.coeffs().begin() + 1, s.coeffs().end());
    res.f = make_qseries(S1) * series_inverse(make_qseries(s1));

    auto rt = rtilde(kQ, init);
    QPoly Rt(kQ, {rt[0], rt[1], rt[2]});
    QPoly two_t2 = qpoly({2, 8, 8});
    res.form = Form{rat(Rt, two_t2)};

    QSeries df = derivative(res.f);
    Laurent<QField> e = expand_form_at_place(res.form, Rational(0), Rational(2), static_cast<long>(N - 1));
    res.derivative_ok = true;
    for (long k = 0; k < static_cast<long>(N - 1); ++k)
        if (e.coeff(k) != df[static_cast<std::size_t>(k)]) {
            res.derivative_ok = false;
            break;
        }
    if (e.order() && *e.order() < 0) res.derivative_ok = false;
    res.verified_to = N - 1;

    const auto& C = init.c;
    res.on_hyperplane = sgn(init.hyperplane_value()) == 0;
    res.Kc = (Rational(8) * C[3] + C[1]) / Rational(8);
    res.Kp = (Rational(4) * C[2] - Rational(8) * C[1] - (Rational(8) * C[3] + C[1]) / Rational(4)) / Rational(2);
    res.K1_printed = (Rational(-31) * C[1] + Rational(18) * C[2] - Rational(8) * C[3] + Rational(12) * C[4]) / Rational(4);
    res.K2_printed = (Rational(12) * C[4] + Rational(8) * C[3] + Rational(2) * C[2] + Rational(3) * C[1]) / Rational(4);
    if (res.on_hyperplane) {
        CF t = cf_t(kQ);
        Form dec{cq(res.Kc) + cq(res.Kp) / (t * t)};
        res.decomposition_ok = dec == res.form;
    }
    return res;
}

}  // namespace ellrec
