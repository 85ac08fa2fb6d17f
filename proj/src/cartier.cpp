#include "ellrec/cartier.hpp"

#include <random>

namespace ellrec {

namespace {

template <class G>
CurveForm<G> embed_form(const CurveForm<FpField>& w, const G& g) {
    return {w.g.map(g, [&](const Fp& a) { return g.embed(a); })};
}

Laurent<FpField> origin_expansion(const CurveForm<FpField>& w, long bound) {
    const FpField& k = w.g.field();
    return expand_form_at_place(w, k.zero(), k.from_int(2), bound);
}

template <class F>
PlaceOrders orders_at(const std::string& name, const Laurent<F>& e, std::uint64_t p) {
    PlaceOrders po;
    po.place = name;
    po.v_form = e.order();
    po.v_cartier = cartier_laurent(e, p).order();
    if (po.v_form) {
        long need = ceil_div(*po.v_form + 1, static_cast<long>(p)) - 1;
        po.ok = !po.v_cartier || *po.v_cartier >= need;
    }
    return po;
}

}  // namespace

bool is_bad_prime(std::uint64_t p) { return p == 2 || p == 5 || p == 13; }

void require_good_prime(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
    if (is_bad_prime(p)) throw std::invalid_argument("bad reduction at p = " + std::to_string(p));
}

FpSeries cartier_series(const FpSeries& g) {
    std::uint64_t p = g.field().p;
    std::size_t n = g.precision() / p;
    FpSeries r(g.field(), n);
    for (std::size_t m = 0; m < n; ++m) r[m] = g[p * (m + 1) - 1];
    return r;
}

CurveForm<FpField> reduce_form(const CurveForm<QField>& w, std::uint64_t p) {
    FpField k(p);
    return {w.g.map(k, [&](const Rational& a) { return reduce(a, p); })};
}

ExactnessResult exactness_test(const CurveForm<FpField>& w) {
    std::uint64_t p = w.g.field().p;
    require_good_prime(p);
    ExactnessResult res;
    res.pole_bound = pole_degree_bound(w);
    res.bound = res.pole_bound + kExactnessSlack;
    const long P = static_cast<long>(p);
    Laurent<FpField> e = origin_expansion(w, (res.bound + 1) * P);
    for (long m = ceil_div(e.val + 1, P); m <= res.bound; ++m) {
        if (!e.coeff(m * P - 1).is_zero()) {
            res.exact = false;
            res.witness_m = m;
            break;
        }
    }
    return res;
}

bool log_exactness_test(const CurveForm<FpField>& w) {
    std::uint64_t p = w.g.field().p;
    require_good_prime(p);
    const long P = static_cast<long>(p);
    // C(w) - w has at most 2*(pole bound) poles; dx has at most 4 zeros
    long M = 2 * pole_degree_bound(w) + kExactnessSlack;
    Laurent<FpField> e = origin_expansion(w, (M + 2) * P);
    Laurent<FpField> c = cartier_laurent(e, p);
    long lo = std::min(e.val, c.val);
    for (long k = lo; k <= M; ++k)
        if (c.coeff(k) != e.coeff(k)) return false;
    return true;
}

bool log_fixed_series(const FpSeries& w, std::size_t M) {
    FpSeries c = cartier_series(w);
    if (c.precision() < M) throw std::invalid_argument("log_fixed_series: series too short");
    for (std::size_t k = 0; k < M; ++k)
        if (c[k] != w[k]) return false;
    return true;
}

CartierInvariants alphabeta_weierstrass(const FpPoly& f) {
    std::uint64_t p = f.field().p;
    if (p < 5) throw std::invalid_argument("alphabeta_weierstrass needs p >= 5");
    if (f.degree() != 3) throw std::invalid_argument("alphabeta_weierstrass needs a cubic");
    if (resultant(f, f.derivative()).is_zero()) throw std::domain_error("singular reduction");
    FpPoly fm = f.pow(static_cast<unsigned>((p - 1) / 2));
    CartierInvariants ci;
    ci.p = p;
    ci.alpha = fm.coeff(p - 1);
    ci.beta = fm.coeff(p - 2);
    ci.model = CurveModelTag::Weierstrass;
    return ci;
}

CartierInvariants alphabeta_quartic(std::uint64_t p) {
    require_good_prime(p);
    FpField k(p);
    FpPoly Qm = curve_Q(k).pow(static_cast<unsigned>((p - 1) / 2));
    FpPoly eQm = FpPoly::from_ints(k, {0, 1, 1}) * Qm;
    CartierInvariants ci;
    ci.p = p;
    ci.alpha = Qm.coeff(p - 1);
    ci.beta = eQm.coeff(p - 1);
    ci.model = CurveModelTag::Quartic;
    return ci;
}

Fp quartic_sanity_coefficient(std::uint64_t p) {
    FpField k(p);
    FpPoly eQm = FpPoly::from_ints(k, {0, 1, 1}) * curve_Q(k).pow(static_cast<unsigned>((p - 1) / 2));
    return eQm.coeff(2 * p - 1);
}

bool alphabeta_quartic_series_check(std::uint64_t p, std::size_t coeffs) {
    CartierInvariants ci = alphabeta_quartic(p);
    FpField k(p);
    std::size_t N = (coeffs + 1) * p;
    FpSeries w = expand_at_origin(CurveFunction<FpField>::y(curve_Q(k)).inv(), N);
    FpSeries e = expand_at_origin(cf_poly(k, {0, 1, 1}) / cf_y(k), N);
    FpSeries cw = cartier_series(w), ce = cartier_series(e);
    for (std::size_t m = 0; m < coeffs; ++m) {
        if (cw[m] != ci.alpha * w[m]) return false;
        if (ce[m] != ci.beta * w[m]) return false;
    }
    return true;
}

std::vector<FpPoly> legendre_H(std::uint64_t p) {
    FpField k(p);
    std::uint64_t m = (p - 1) / 2;
    // (x-1)^m = sum a_j x^j
    FpPoly xm1 = FpPoly::from_ints(k, {-1, 1}).pow(static_cast<unsigned>(m));
    std::vector<FpPoly> H(p, FpPoly(k));
    for (std::size_t j = 0; j <= m; ++j) {
        for (std::size_t t = 0; t <= m; ++t) {
            // (x - l)^m: coefficient of x^t is binom(m,t) (-l)^{m-t}
            Fp c = xm1.coeff(j) * Fp(static_cast<std::int64_t>(Integer(binomial(m, t) % p).get_ui()), p);
            if ((m - t) % 2) c = -c;
            H[j + t] = H[j + t] + FpPoly::monomial(k, m - t, c);
        }
    }
    return H;
}

LegendreHasseData legendre_hasse(const Fp& lambda0, unsigned random_points) {
    std::uint64_t p = lambda0.modulus();
    if (p < 5) throw std::invalid_argument("legendre_hasse needs p >= 5");
    if (lambda0.is_zero() || lambda0 == Fp(1, p)) throw std::invalid_argument("lambda0 must not be 0 or 1");
    FpField k(p);
    std::uint64_t m = (p - 1) / 2;
    auto H = legendre_H(p);
    auto Hat = [&](long i) { return i < 0 || i >= static_cast<long>(p) ? FpPoly(k) : H[static_cast<std::size_t>(i)]; };
    FpPoly lam = FpPoly::x(k);
    auto K = [&](long i) { return Hat(i - 1) - lam * Hat(i); };
    Fp m1(static_cast<std::int64_t>(m + 1), p);

    LegendreHasseData d;
    d.lambda0 = lambda0;
    d.m = m;
    d.H_m = H[m](lambda0);
    d.H_m1 = H[m - 1](lambda0);
    d.K_m = K(static_cast<long>(m))(lambda0);

    d.derivative_identity = true;
    for (long i = 0; i <= static_cast<long>(p); ++i)
        if (K(i).derivative() + Hat(i).scaled(m1) != FpPoly(k)) d.derivative_identity = false;

    std::mt19937_64 rng(p * 1000003 + lambda0.value());
    d.derivative_pointwise = true;
    for (unsigned r = 0; r < random_points; ++r) {
        Fp l(static_cast<std::int64_t>(rng() % p), p);
        for (long i = 0; i <= static_cast<long>(p); ++i)
            if (K(i).derivative()(l) + m1 * Hat(i)(l) != Fp(0, p)) d.derivative_pointwise = false;
    }

    // F(z) = sum binom(m,j) binom(m+1,j) z^j
    std::vector<Fp> fc;
    for (std::uint64_t j = 0; j <= m; ++j)
        fc.push_back(Fp(static_cast<std::int64_t>(Integer(binomial(m, j) * binomial(m + 1, j) % p).get_ui()), p));
    FpPoly Fz(k, fc);
    // (-1)^{m+1} K_m(l) = l^{m+1} F(1/l): reversal of F shifted by one
    FpPoly Km = K(static_cast<long>(m));
    if ((m + 1) % 2) Km = -Km;
    d.hypergeometric_form = Km == poly_reverse(Fz, m + 1);

    FpPoly z = FpPoly::x(k), one = FpPoly::constant(k, Fp(1, p));
    FpPoly ode = z * (one - z) * Fz.derivative().derivative() +
                 (one + z.scaled(Fp(static_cast<std::int64_t>(2 * m), p))) * Fz.derivative() -
                 Fz.scaled(Fp(static_cast<std::int64_t>(m), p) * m1);
    d.ode_holds = ode.is_zero();

    FpPoly g = poly_gcd(Fz, Fz.derivative());
    while (g.degree() > 0 && g.coeff(0).is_zero()) g = g / z;
    FpPoly zm1 = FpPoly::from_ints(k, {-1, 1});
    while (g.degree() > 0 && g(Fp(1, p)).is_zero()) g = g / zm1;
    d.no_multiple_zeros = g.degree() == 0;
    return d;
}

std::pair<Fp, Fp> residues_at_infinity(const CurveForm<FpField>& w) {
    return {expand_form_at_infinity(w, 1, 1).residue(), expand_form_at_infinity(w, -1, 1).residue()};
}

ResidueReport residue_check(const InitialDataFp& d) {
    std::uint64_t p = d.c[0].modulus();
    require_good_prime(p);
    FpField k(p);
    auto rt = rtilde(k, d);
    FpPoly Rt(k, {rt[0], rt[1], rt[2]});
    CurveForm<FpField> form{CurveFunction<FpField>::rational(FpRatFunc(Rt, FpPoly::from_ints(k, {2, 8, 8})), curve_Q(k))};

    ResidueReport rep;
    Fp2Field k2(p, 65);
    auto form2 = embed_form(form, k2);
    Fp2 x0 = k2.from_rational(make_rational(-1, 2));
    Fp2 quarter = k2.from_rational(make_rational(1, 4));
    Fp2 dR = k2.embed(Rt.derivative()(Fp(-1, p) * Fp(2, p).inv()));
    rep.relation_ok = true;
    rep.residue_zero = true;
    for (int sg : {1, -1}) {
        Fp2 y0 = k2.root() * quarter;
        if (sg < 0) y0 = -y0;
        Fp2 r = expand_form_at_place(form2, x0, y0, 0).residue();
        Fp2 expected = dR * (k2.from_int(8) * y0).inv();
        rep.relation_ok = rep.relation_ok && r == expected;
        rep.residue_zero = rep.residue_zero && r.is_zero();
        rep.entries.push_back({sg > 0 ? "(-1/2, sqrt65/4)" : "(-1/2, -sqrt65/4)", to_string(r), r.is_zero()});
    }
    auto [rp, rm] = residues_at_infinity(form);
    rep.entries.push_back({"infinity+", to_string(rp), rp.is_zero()});
    rep.entries.push_back({"infinity-", to_string(rm), rm.is_zero()});
    rep.hyperplane_zero = d.hyperplane_value().is_zero();
    return rep;
}

PoleBoundReport pole_bound_check(const CurveForm<FpField>& w) {
    std::uint64_t p = w.g.field().p;
    require_good_prime(p);
    const long P = static_cast<long>(p);
    FpField k(p);
    PoleBoundReport rep;
    long pb = pole_degree_bound(w);
    long bound = P * (pb + 8);

    auto record = [&](PlaceOrders po) {
        rep.local_ok = rep.local_ok && po.ok;
        if (po.v_form && *po.v_form < 0) rep.pole_sum += *po.v_form;
        if (po.v_cartier && *po.v_cartier < 0) rep.cartier_pole_sum += *po.v_cartier;
        rep.places.push_back(std::move(po));
    };
    for (int sg : {1, -1})
        record(orders_at(sg > 0 ? "infinity+" : "infinity-", expand_form_at_infinity(w, sg, bound), p));

    FpPoly dens = w.g.u().den() * w.g.v().den();
    FpPoly Q = curve_Q(k);
    for (std::uint64_t a = 0; a < p; ++a) {
        Fp x0(static_cast<std::int64_t>(a), p);
        if (!dens(x0).is_zero()) continue;
        Fp q0 = Q(x0);
        std::string xs = std::to_string(a);
        if (q0.is_zero()) {
            rep.skipped.push_back("branch point x = " + xs);
            continue;
        }
        if (auto r = sqrt_mod(q0.value(), p)) {
            Fp y0(static_cast<std::int64_t>(*r), p);
            for (Fp yy : {y0, -y0})
                record(orders_at("(" + xs + ", " + to_string(yy) + ")", expand_form_at_place(w, x0, yy, bound), p));
        } else {
            Fp2Field k2(p, static_cast<std::int64_t>(q0.value()));
            auto w2 = embed_form(w, k2);
            for (int sg : {1, -1}) {
                Fp2 y0 = sg > 0 ? k2.root() : -k2.root();
                record(orders_at("(" + xs + ", " + (sg > 0 ? "+" : "-") + "sqrt " + to_string(q0) + ")",
                                 expand_form_at_place(w2, k2.embed(x0), y0, bound), p));
            }
        }
    }
    rep.sum_ok = rep.cartier_pole_sum >= rep.pole_sum;
    return rep;
}

CurveForm<QField> shifted_t_form(int i) {
    const QField k;
    QPoly xi = QPoly::monomial(k, static_cast<std::size_t>(i), Rational(1));
    return {CurveFunction<QField>::rational(QRatFunc(qpoly({2, 4}), xi), curve_Q(k))};
}

IntroCongruenceReport intro_congruences(std::uint64_t p, std::size_t n_max) {
    require_good_prime(p);
    IntroCongruenceReport rep;
    rep.p = p;
    rep.n_max = n_max;
    auto c = extend_rational(special_initial_data(), n_max + 1);
    std::vector<Fp> cb;
    for (const auto& v : c) cb.push_back(reduce(v, p));
    Fp six(6, p);
    for (std::size_t k = 0; k * p + 4 <= n_max; ++k) {
        ++rep.checked_a;
        std::size_t b = k * p;
        if (!(six * cb[b + 4] + cb[b + 2] + cb[b + 1]).is_zero()) rep.failures_a.push_back(k);
    }
    for (std::size_t k = 1; k * p <= n_max; ++k) {
        ++rep.checked_b;
        std::size_t b = k * p;
        if (!(cb[b - 2] + cb[b - 3]).is_zero()) rep.failures_b.push_back(k);
    }
    // 2(x^3+x^2+6)/x^4 t omega
    const QField kq;
    CurveForm<QField> wq{CurveFunction<QField>::rational(
        QRatFunc(qpoly({12, 0, 2, 2}) * qpoly({1, 2}), QPoly::monomial(kq, 4, Rational(1))), curve_Q(kq))};
    rep.witness_exact = exactness_test(reduce_form(wq, p)).exact;
    return rep;
}

std::vector<std::pair<int, std::optional<std::size_t>>> non_strengthening(std::uint64_t p, std::size_t k_max) {
    auto c = extend_rational(special_initial_data(), k_max * p + 5);
    std::vector<std::pair<int, std::optional<std::size_t>>> out;
    for (int i : {1, 2, 4}) {
        std::optional<std::size_t> hit;
        Fp ci = reduce(c[static_cast<std::size_t>(i)], p);
        for (std::size_t k = 1; k <= k_max; ++k)
            if (reduce(c[k * p + static_cast<std::size_t>(i)], p) != ci) {
                hit = k;
                break;
            }
        out.push_back({i, hit});
    }
    return out;
}

}  // namespace ellrec
