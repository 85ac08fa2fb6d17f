#include "ellrec/descent.hpp"

#include "ellrec/curve.hpp"
#include "ellrec/linalg.hpp"
#include "ellrec/recurrence.hpp"

namespace ellrec {

namespace {

// F_p(y) as a field descriptor for the generic linear algebra.
struct FpRatField {
    using value_type = FpRatFunc;
    std::uint64_t p = 0;
    FpField base() const { return FpField(p); }
    FpRatFunc zero() const { return FpRatFunc(base()); }
    FpRatFunc one() const { return FpRatFunc::constant(base(), Fp(1, p)); }
    FpRatFunc from_int(long v) const { return FpRatFunc::constant(base(), Fp(v, p)); }
    FpRatFunc inv(const FpRatFunc& a) const { return a.inv(); }
    bool is_zero(const FpRatFunc& a) const { return a.is_zero(); }
    std::uint64_t characteristic() const { return p; }
    std::string name() const { return "F_" + std::to_string(p) + "(y)"; }
    friend bool operator==(const FpRatField& a, const FpRatField& b) { return a.p == b.p; }
};

FpRatFunc poly_rf(const FpPoly& a) { return FpRatFunc(a); }

FpPoly lcm(const FpPoly& a, const FpPoly& b) { return (a * b / poly_gcd(a, b)).monic(); }

// components of a series in y = x^p: sigma_i[n] = s[np + i]
std::vector<FpSeries> series_components(const FpSeries& s, std::uint64_t p) {
    std::vector<FpSeries> out;
    std::size_t N = s.precision();
    for (std::size_t i = 0; i < p; ++i) {
        std::size_t n = N > i ? (N - i + p - 1) / p : 0;
        FpSeries c(s.field(), n);
        for (std::size_t k = 0; k < n; ++k) c[k] = s[k * p + i];
        out.push_back(c);
    }
    return out;
}

// x-series of a(x^p) with a a y-series
FpSeries spread(const FpSeries& a, std::uint64_t p, std::size_t N) {
    FpSeries r(a.field(), N);
    for (std::size_t k = 0; k < a.precision() && k * p < N; ++k) r[k * p] = a[k];
    return r;
}

}  // namespace

FpPoly frobenius_compose(const FpPoly& a) {
    const FpField& k = a.field();
    std::vector<Fp> c(a.is_zero() ? 0 : static_cast<std::size_t>(a.degree()) * k.p + 1, k.zero());
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i * k.p] = a.coeffs()[i];
    return FpPoly(k, std::move(c));
}

FpRatFunc frobenius_compose(const FpRatFunc& a) {
    return FpRatFunc(frobenius_compose(a.num()), frobenius_compose(a.den()));
}

PBasisDecomposition p_decompose(const FpRatFunc& u) {
    const FpField& k = u.field();
    std::uint64_t p = k.p;
    // u = N D^{p-1} / D^p and D^p = D(x^p)
    FpPoly M = u.num() * u.den().pow(static_cast<unsigned>(p - 1));
    PBasisDecomposition d;
    d.p = p;
    for (std::size_t i = 0; i < p; ++i) {
        std::vector<Fp> c;
        for (std::size_t e = i; e < M.coeffs().size(); e += p) c.push_back(M.coeffs()[e]);
        d.u.push_back(FpRatFunc(FpPoly(k, c), u.den()));
    }
    return d;
}

FpRatFunc recombine(const PBasisDecomposition& d) {
    FpField k(d.p);
    FpRatFunc r(k);
    for (std::size_t i = 0; i < d.u.size(); ++i)
        r = r + frobenius_compose(d.u[i]) * poly_rf(FpPoly::monomial(k, i, Fp(1, d.p)));
    return r;
}

FpRatFunc FirstOrderOperator::apply(const FpRatFunc& phi) const {
    return poly_rf(a) * phi.derivative() + poly_rf(b) * phi;
}

FpSeries FirstOrderOperator::apply(const FpSeries& phi) const {
    std::size_t n = phi.precision() ? phi.precision() - 1 : 0;
    return a.to_series(n) * derivative(phi) + b.to_series(n) * phi.truncate(n);
}

FirstOrderOperator curve_operator(std::uint64_t p) {
    FpField k(p);
    auto red = [&](const QPoly& P) { return P.map(k, [&](const Rational& q) { return reduce(q, p); }); };
    return {red(ode_A()), -red(ode_B())};
}

std::size_t polynomial_solution_dimension(std::uint64_t p, std::size_t d) {
    FirstOrderOperator op = curve_operator(p);
    FpField k(p);
    std::size_t rows = d + static_cast<std::size_t>(std::max(op.a.degree(), op.b.degree())) + 1;
    Matrix<FpField> m(rows, std::vector<Fp>(d + 1, k.zero()));
    for (std::size_t i = 0; i <= d; ++i) {
        FpPoly xi = FpPoly::monomial(k, i, k.one());
        FpPoly img = op.a * xi.derivative() + op.b * xi;
        for (std::size_t r = 0; r < img.coeffs().size(); ++r) m[r][i] = img.coeffs()[r];
    }
    return nullspace(k, m, d + 1).size();
}

PolynomialSolution polynomial_solution_search(std::uint64_t p, std::size_t degree_bound) {
    if (p == 2 || p == 5 || p == 13 || !is_prime(p)) throw std::invalid_argument("polynomial_solution_search: bad prime");
    FirstOrderOperator op = curve_operator(p);
    FpField k(p);
    PolynomialSolution res;
    for (std::size_t d = 0; d <= degree_bound; ++d) {
        std::size_t rows = d + 8;
        Matrix<FpField> m(rows, std::vector<Fp>(d + 1, k.zero()));
        for (std::size_t i = 0; i <= d; ++i) {
            FpPoly xi = FpPoly::monomial(k, i, k.one());
            FpPoly img = op.a * xi.derivative() + op.b * xi;
            for (std::size_t r = 0; r < img.coeffs().size(); ++r) m[r][i] = img.coeffs()[r];
        }
        auto ns = nullspace(k, m, d + 1);
        if (ns.empty()) continue;
        res.dimension = ns.size();
        // a solution of exact degree d exists since none of lower degree does
        for (const auto& v : ns) {
            FpPoly P(k, v);
            if (P.degree() == static_cast<long>(d)) {
                res.poly = P.monic();
                break;
            }
        }
        if (!res.poly) res.poly = FpPoly(k, ns.front()).monic();
        return res;
    }
    return res;
}

PSystem p_system(const FirstOrderOperator& op, const FpRatFunc& u) {
    const FpField k = op.a.field();
    std::uint64_t p = k.p;
    PSystem sys;
    sys.p = p;
    sys.M.assign(p, std::vector<FpRatFunc>(p, FpRatFunc(k)));
    auto da = p_decompose(poly_rf(op.a)), db = p_decompose(poly_rf(op.b));
    auto yk = [&](std::size_t e) { return poly_rf(FpPoly::monomial(k, e, Fp(1, p))); };
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            if (i >= 1 && !da.u[j].is_zero()) {
                std::size_t e = i - 1 + j;
                sys.M[e % p][i] += da.u[j].scaled(Fp(static_cast<std::int64_t>(i), p)) * yk(e / p);
            }
            if (!db.u[j].is_zero()) {
                std::size_t e = i + j;
                sys.M[e % p][i] += db.u[j] * yk(e / p);
            }
        }
    }
    auto du = p_decompose(u);
    sys.rhs = du.u;
    return sys;
}

DescentResult descend_series_solution(const FirstOrderOperator& op, const FpRatFunc& u, const FpSeries& series,
                                      std::size_t degree_bound) {
    const FpField k = op.a.field();
    std::uint64_t p = k.p;
    FpRatField K{p};
    PSystem sys = p_system(op, u);
    DescentResult res;

    Matrix<FpRatField> aug = sys.M;
    for (std::size_t r = 0; r < p; ++r) aug[r].push_back(sys.rhs[r]);
    auto piv = rref(K, aug);
    res.consistent = piv.empty() || piv.back() < p;
    res.kernel_dim = p - (res.consistent ? piv.size() : piv.size() - 1);
    if (!res.consistent) return res;

    std::vector<bool> is_piv(p, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<FpRatFunc> part(p, K.zero()), hom(p, K.zero());
    for (std::size_t r = 0; r < piv.size(); ++r) part[piv[r]] = aug[r][p];
    bool have_hom = false;
    for (std::size_t f = 0; f < p && !have_hom; ++f) {
        if (is_piv[f]) continue;
        hom[f] = K.one();
        for (std::size_t r = 0; r < piv.size(); ++r) hom[piv[r]] = -aug[r][f];
        have_hom = true;
    }
    auto assemble = [&](const std::vector<FpRatFunc>& beta) {
        FpRatFunc phi(k);
        for (std::size_t i = 0; i < p; ++i)
            phi = phi + frobenius_compose(beta[i]) * poly_rf(FpPoly::monomial(k, i, Fp(1, p)));
        return phi;
    };
    bool homogeneous_eq = u.is_zero();
    std::vector<FpPoly> hom_poly;
    if (have_hom) {
        FpPoly L = FpPoly::constant(k, Fp(1, p));
        for (auto& b : hom) L = lcm(L, b.den());
        FpPoly g(k);
        for (auto& b : hom) {
            hom_poly.push_back((b * poly_rf(L)).num());
            g = poly_gcd(g, hom_poly.back());
        }
        for (auto& h : hom_poly) h = h / g;
        std::vector<FpRatFunc> hb;
        for (auto& h : hom_poly) hb.push_back(poly_rf(h));
        FpRatFunc phi = assemble(hb);
        res.homogeneous = phi.num().monic();
        // keep the monic scaling in the components too
        Fp s = phi.num().lead().inv();
        for (auto& h : hom_poly) h = h.scaled(s);
    }
    FpRatFunc phi_part = homogeneous_eq ? FpRatFunc(k) : assemble(part);
    res.particular = homogeneous_eq && res.homogeneous ? FpRatFunc(*res.homogeneous) : phi_part;
    if (res.particular->is_polynomial() && res.particular->num().degree() <= static_cast<long>(degree_bound))
        res.polynomial = res.particular->num();

    // match the series: sigma = part + lambda(y) hom
    std::size_t N = series.precision();
    auto sig = series_components(series, p);
    std::vector<Laurent<FpField>> diff;
    for (std::size_t i = 0; i < p; ++i) {
        long n = static_cast<long>(sig[i].precision());
        Laurent<FpField> pe = laurent_to_bound(part[i], n);
        diff.push_back(Laurent<FpField>{0, sig[i]} + Laurent<FpField>{pe.val, pe.s.scaled(Fp(-1, p))});
    }
    res.series_in_span = true;
    res.lambda = FpSeries(k, 0);
    if (N > 0 && !have_hom) {
        for (auto& d : diff)
            for (long e = d.val; e < d.exclusive_bound(); ++e)
                if (!d.coeff(e).is_zero()) res.series_in_span = false;
    } else if (N > 0) {
        std::size_t i0 = p;
        for (std::size_t i = 0; i < p; ++i)
            if (!hom_poly[i].is_zero() && (i0 == p || hom_poly[i].degree() < hom_poly[i0].degree())) i0 = i;
        Laurent<FpField> h0 = FpRatFunc(hom_poly[i0]).laurent(std::max<std::size_t>(sig[i0].precision(), 1));
        Laurent<FpField> lam = diff[i0] * laurent_inverse(h0);
        lam = lam.normalized();
        if (lam.val < 0 && !lam.s.is_zero()) {
            res.series_in_span = false;
        } else {
            std::size_t n = lam.exclusive_bound() > 0 ? static_cast<std::size_t>(lam.exclusive_bound()) : 0;
            res.lambda = FpSeries(k, n);
            for (long e = std::max(0L, lam.val); e < static_cast<long>(n); ++e)
                res.lambda[static_cast<std::size_t>(e)] = lam.coeff(e);
            for (std::size_t i = 0; i < p; ++i) {
                Laurent<FpField> rhs = Laurent<FpField>{0, res.lambda} * FpRatFunc(hom_poly[i]).laurent(sig[i].precision());
                long hi = std::min(diff[i].exclusive_bound(), rhs.exclusive_bound());
                for (long e = std::min(diff[i].val, 0L); e < hi; ++e)
                    if (diff[i].coeff(e) != rhs.coeff(e)) res.series_in_span = false;
            }
        }
    }

    // approximant in F_p(x): part + lambda_trunc(x^p) * hom
    FpSeries approx(k, N);
    if (!homogeneous_eq) {
        Laurent<FpField> pl = laurent_to_bound(phi_part, static_cast<long>(N));
        for (long e = std::max(0L, pl.val); e < static_cast<long>(N); ++e) approx[static_cast<std::size_t>(e)] = pl.coeff(e);
    }
    if (res.homogeneous) {
        FpSeries add = spread(res.lambda, p, N) * res.homogeneous->to_series(N);
        for (std::size_t e = 0; e < add.precision() && e < N; ++e) approx[e] = approx[e] + add[e];
    }
    res.approximant = approx;
    res.agree_to = N;
    for (std::size_t e = 0; e < N; ++e)
        if (approx[e] != series[e]) {
            res.agree_to = e;
            break;
        }
    return res;
}

}  // namespace ellrec
