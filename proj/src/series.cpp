#include "ellrec/series.hpp"

namespace ellrec {

std::vector<Rational> x_log_derivative_coeffs(const QSeries& f, std::size_t M) {
    if (f.precision() <= M) throw std::invalid_argument("series precision too small");
    QSeries g = x_log_derivative(f.truncate(M + 1));
    std::vector<Rational> c(M + 1);
    for (std::size_t n = 0; n <= M; ++n) c[n] = g[n];
    return c;
}

DieudonneExponents dieudonne_exponents(const QSeries& f, std::size_t M) {
    if (f.precision() == 0 || f[0] != 1) throw std::domain_error("dieudonne_exponents: f(0) != 1");
    if (M >= f.precision()) throw std::invalid_argument("dieudonne_exponents: M must be below precision");
    std::vector<Rational> c = x_log_derivative_coeffs(f, M);
    DieudonneExponents e;
    e.source_precision = M;
    e.a.assign(M + 1, Rational(0));
    for (std::size_t n = 1; n <= M; ++n) {
        Rational s(0);
        for (std::size_t m = 1; m <= n; ++m) {
            if (n % m) continue;
            int mu = mobius(m);
            if (mu == 1) s += c[n / m];
            else if (mu == -1) s -= c[n / m];
        }
        e.a[n] = -s / Rational(static_cast<long>(n));
    }
    return e;
}

QSeries reconstruct_product(const DieudonneExponents& e) {
    std::size_t N = e.source_precision + 1;
    std::vector<Rational> acc(N, Rational(0));
    acc[0] = 1;
    for (std::size_t m = 1; m < N && m < e.a.size(); ++m) {
        const Rational& a = e.a[m];
        if (sgn(a) == 0) continue;
        // (1 - x^m)^a = sum_k binom(a,k) (-1)^k x^{mk}
        std::vector<Rational> factor;
        Rational b(1);
        for (std::size_t k = 0; k * m < N; ++k) {
            if (k > 0) {
                b *= a - Rational(static_cast<long>(k - 1));
                b /= Rational(-static_cast<long>(k));
            }
            factor.push_back(b);
        }
        std::vector<Rational> next(N, Rational(0));
        for (std::size_t i = 0; i < N; ++i) {
            if (sgn(acc[i]) == 0) continue;
            for (std::size_t k = 0; k < factor.size() && i + k * m < N; ++k) {
                if (sgn(factor[k]) == 0) continue;
                Rational t = acc[i] * factor[k];
                next[i + k * m] += t;
            }
        }
        acc.swap(next);
    }
    return make_qseries(std::move(acc));
}

QSeries exp_of_log_sum(const std::vector<Rational>& c, std::size_t N) {
    std::vector<Rational> f(N, Rational(0));
    if (N == 0) return make_qseries(f);
    f[0] = 1;
    for (std::size_t n = 1; n < N; ++n) {
        Rational s(0);
        for (std::size_t k = 1; k <= n && k < c.size(); ++k) {
            if (sgn(c[k]) == 0) continue;
            Rational t = c[k] * f[n - k];
            s += t;
        }
        f[n] = s / Rational(static_cast<long>(n));
    }
    return make_qseries(std::move(f));
}

CongruenceReport congruence_scan(const std::vector<Rational>& c, std::uint64_t p, unsigned r_max,
                                 std::size_t n_max, bool reconstruct) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("congruence_scan needs an odd prime");
    if (n_max >= c.size()) throw std::invalid_argument("congruence_scan: sequence shorter than n_max");
    CongruenceReport rep;
    rep.p = p;
    for (std::size_t n = 1; n <= n_max; ++n) {
        if (!is_p_integral(c[n], p)) {
            rep.integral = false;
            rep.nonintegral_index = n;
            return rep;
        }
    }
    Integer pr(1);  // p^r
    for (unsigned r = 0; r <= r_max; ++r) {
        Integer pr1 = pr * static_cast<unsigned long>(p);
        if (pr1 > n_max) break;
        std::size_t step_hi = pr1.get_ui(), step_lo = pr.get_ui();
        for (std::size_t k = 1; k * step_hi <= n_max; ++k) {
            ++rep.checked;
            Rational d = c[k * step_hi] - c[k * step_lo];
            auto v = padic_valuation(d, p);
            if (v && *v < static_cast<long>(r + 1)) rep.failures.push_back({k, r, k * step_hi});
        }
        pr = pr1;
    }
    if (!reconstruct || !rep.failures.empty()) return rep;

    rep.reconstructed = true;
    std::vector<Rational> a(n_max + 1, Rational(0));
    for (std::size_t n = 1; n <= n_max; ++n) {
        Rational s(0);
        for (std::size_t m = 1; m <= n; ++m) {
            if (n % m) continue;
            int mu = mobius(m);
            if (mu == 1) s += c[n / m];
            else if (mu == -1) s -= c[n / m];
        }
        a[n] = -s / Rational(static_cast<long>(n));
        if (rep.exponents_integral && !is_p_integral(a[n], p)) {
            rep.exponents_integral = false;
            rep.first_nonintegral_exponent = n;
        }
    }
    for (std::size_t n = 1; n <= n_max && rep.roundtrip_ok; ++n) {
        Rational s(0);
        for (std::size_t m = 1; m <= n; ++m)
            if (n % m == 0) s += Rational(static_cast<long>(m)) * a[m];
        if (-s != c[n]) rep.roundtrip_ok = false;
    }
    QSeries f = exp_of_log_sum(c, n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        if (!is_p_integral(f[n], p)) {
            rep.witness_integral = false;
            rep.first_nonintegral_witness_coeff = n;
            break;
        }
    }
    return rep;
}

}  // namespace ellrec
