#include "ellrec/frobenius.hpp"

#include <limits>

namespace ellrec {

namespace {

FpPoly short_cubic(const Rational& A, const Rational& B, std::uint64_t p) {
    FpField k(p);
    return FpPoly(k, {reduce(B, p), reduce(A, p), k.zero(), k.one()});
}

// Euler's criterion: 1, -1 or 0
int chi(const Fp& a) {
    if (a.is_zero()) return 0;
    std::uint64_t p = a.modulus();
    return powmod(a.value(), (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::uint64_t affine_count(const FpPoly& f) {
    std::uint64_t p = f.field().p;
    long n = 0;
    for (std::uint64_t x = 0; x < p; ++x) n += 1 + chi(f(Fp(static_cast<std::int64_t>(x), p)));
    return static_cast<std::uint64_t>(n);
}

// c_{num/den}, zero when the index is not a positive integer
Rational coeff_at(const std::vector<Rational>& c, std::size_t num, std::size_t den) {
    if (num % den) return 0;
    std::size_t i = num / den;
    if (i == 0) return 0;
    if (i >= c.size()) throw std::out_of_range("asd_check: expansion too short");
    return c[i];
}

}  // namespace

bool good_reduction(const Rational& A, const Rational& B, std::uint64_t p) {
    if (p < 5) return false;
    if (!is_p_integral(A, p) || !is_p_integral(B, p)) return false;
    Rational disc = 4 * A * A * A + 27 * B * B;
    return !reduce(disc, p).is_zero();
}

TraceData point_count(const FpPoly& f) {
    std::uint64_t p = f.field().p;
    if (f.degree() != 3) throw std::invalid_argument("point_count needs a cubic");
    if (resultant(f, f.derivative()).is_zero()) throw std::domain_error("singular curve mod " + std::to_string(p));
    TraceData t;
    t.p = p;
    t.count = affine_count(f) + 1;
    t.trace = static_cast<long>(p + 1) - static_cast<long>(t.count);
    t.hasse_ok = static_cast<double>(t.trace) * static_cast<double>(t.trace) <= 4.0 * static_cast<double>(p);
    return t;
}

TraceData point_count(const Rational& A, const Rational& B, std::uint64_t p) {
    if (!good_reduction(A, B, p)) throw std::domain_error("point_count: bad reduction at " + std::to_string(p));
    TraceData t = point_count(short_cubic(A, B, p));
    t.A = A;
    t.B = B;
    return t;
}

long quartic_trace(std::uint64_t p) {
    require_good_prime(p);
    std::uint64_t n = affine_count(curve_Q(FpField(p))) + 2;
    return static_cast<long>(p + 1) - static_cast<long>(n);
}

long quartic_weierstrass_trace(std::uint64_t p) {
    require_good_prime(p);
    return point_count(FpPoly::from_ints(FpField(p), {0, -16, 1, 1})).trace;
}

OriginExpansion origin_expansion(const Rational& A, const Rational& B, std::size_t N) {
    if (N < 4) throw std::invalid_argument("origin_expansion needs N >= 4");
    // w = -1/y = t^3 W with W = 1 + A t^4 W^2 + B t^6 W^3; x = t^{-2}/W
    std::vector<Rational> W(N, Rational(0)), W2(N, Rational(0)), W3(N, Rational(0));
    for (std::size_t n = 0; n < N; ++n) {
        Rational v = n == 0 ? Rational(1) : Rational(0);
        if (n >= 4) v += A * W2[n - 4];
        if (n >= 6) v += B * W3[n - 6];
        W[n] = v;
        Rational s2 = 0, s3 = 0;
        for (std::size_t i = 0; i <= n; ++i) s2 += W[i] * W[n - i];
        W2[n] = s2;
        for (std::size_t i = 0; i <= n; ++i) s3 += W2[i] * W[n - i];
        W3[n] = s3;
    }
    QSeries Ws = make_qseries(W);
    QSeries inv = series_inverse(Ws);
    OriginExpansion e;
    e.A = A;
    e.B = B;
    e.N = N;
    e.x = inv.coeffs();
    for (const auto& v : inv.coeffs()) e.y.push_back(-v);
    // omega/dt = 1 + t W'/(2W)
    QSeries dW = derivative(Ws).shifted(1);
    QSeries om = dW * inv;
    e.c.assign(N + 1, Rational(0));
    for (std::size_t n = 1; n <= N; ++n) {
        Rational v = n - 1 < om.precision() ? om[n - 1] / 2 : Rational(0);
        if (n == 1) v += 1;
        e.c[n] = v;
    }
    return e;
}

AsdReport asd_check(const OriginExpansion& e, std::uint64_t p, unsigned r_max, std::size_t n_max) {
    if (!good_reduction(e.A, e.B, p)) throw std::domain_error("asd_check: bad reduction at " + std::to_string(p));
    AsdReport rep;
    rep.A = e.A;
    rep.B = e.B;
    rep.p = p;
    rep.trace = point_count(e.A, e.B, p).trace;
    Integer P(static_cast<unsigned long>(p));
    for (unsigned r = 1; r <= r_max; ++r) {
        Integer pr, pr1;
        mpz_pow_ui(pr.get_mpz_t(), P.get_mpz_t(), r);
        mpz_pow_ui(pr1.get_mpz_t(), P.get_mpz_t(), r - 1);
        for (std::size_t n = 1; n <= n_max; ++n) {
            std::size_t top = n * pr.get_ui();
            if (top >= e.c.size()) throw std::out_of_range("asd_check: expansion too short");
            Rational a = e.c[top];
            Rational b = coeff_at(e.c, n * pr1.get_ui(), 1);
            Rational c = coeff_at(e.c, n * pr1.get_ui(), p);
            Rational v = a - Rational(rep.trace) * b + Rational(P) * c;
            ++rep.checked;
            auto val = padic_valuation(v, p);
            if (val && *val < static_cast<long>(r)) rep.failures.push_back({n, r, v});
        }
    }
    return rep;
}

AsdReport asd_check(const Rational& A, const Rational& B, std::uint64_t p, unsigned r_max, std::size_t n_max) {
    std::size_t top = n_max;
    for (unsigned r = 0; r < r_max; ++r) top *= p;
    return asd_check(origin_expansion(A, B, top + 1), p, r_max, n_max);
}

SupersingularReport supersingular_scan(const Rational& A, const Rational& B, std::uint64_t p_max,
                                       std::uint64_t valuation_pmax) {
    if (p_max < 5) throw std::invalid_argument("supersingular_scan needs p_max >= 5");
    SupersingularReport rep;
    rep.A = A;
    rep.B = B;
    rep.p_max = p_max;
    bool cm = A == 0 && B == 1;
    if (cm) rep.cm_pattern = true;
    std::vector<std::uint64_t> need_val;
    for (std::uint64_t p = 5; p <= p_max; ++p) {
        if (!is_prime(p) || !good_reduction(A, B, p)) continue;
        ++rep.good_primes;
        CartierInvariants ci = alphabeta_weierstrass(short_cubic(A, B, p));
        if (ci.both_zero()) rep.never_both_zero_failures.push_back(p);
        if (cm) {
            bool pattern = ci.alpha.is_zero() == (p % 3 == 2) && (ci.alpha * ci.beta).is_zero();
            if (!pattern) rep.cm_pattern = false;
        }
        if (!ci.alpha.is_zero()) continue;
        if (ci.beta.is_zero()) rep.beta_nonzero = false;
        rep.supersingular.push_back({p, ci.alpha, ci.beta, std::nullopt});
        if (p <= valuation_pmax) need_val.push_back(p);
    }
    if (!need_val.empty()) {
        std::uint64_t pm = need_val.back();
        OriginExpansion e = origin_expansion(A, B, static_cast<std::size_t>(pm * pm + 1));
        for (auto& s : rep.supersingular) {
            if (s.p > valuation_pmax) continue;
            auto v = padic_valuation(e.c[s.p * s.p], s.p);
            s.v_c_p2 = v ? *v : std::numeric_limits<long>::max();  // c_{p^2} = 0
            if (*s.v_c_p2 != 1) rep.valuation_ok = false;
        }
    }
    return rep;
}

}  // namespace ellrec
