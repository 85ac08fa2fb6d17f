#pragma once

#include "ellrec/curve.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ellrec {

// p in {2, 5, 13}: the quartic curve has bad reduction there
bool is_bad_prime(std::uint64_t p);
void require_good_prime(std::uint64_t p);

// C(sum a_n x^n dx) = sum a_{p(m+1)-1} x^m dx over F_p, where the p-th root is the identity.
FpSeries cartier_series(const FpSeries& g);

inline long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
inline long ceil_div(long a, long b) { return -floor_div(-a, b); }

// Coefficient extraction on a Laurent expansion in a local parameter. Over F_p this is the
// Cartier operator; over larger fields it omits the p-th root, which leaves orders unchanged.
template <class F>
Laurent<F> cartier_laurent(const Laurent<F>& g, std::uint64_t p) {
    const long P = static_cast<long>(p);
    long k0 = ceil_div(g.val + 1, P) - 1;
    // need p(k+1)-1 < exclusive bound
    long k1 = floor_div(g.exclusive_bound(), P) - 1;  // last usable k
    std::size_t n = k1 >= k0 ? static_cast<std::size_t>(k1 - k0 + 1) : 0;
    Series<F> s(g.s.field(), n);
    for (long k = k0; k <= k1; ++k) s[static_cast<std::size_t>(k - k0)] = g.coeff(P * (k + 1) - 1);
    return {k0, s};
}

CurveForm<FpField> reduce_form(const CurveForm<QField>& w, std::uint64_t p);

// Upper bound for -sum_{v_Q < 0} v_Q(g omega), from the degrees of the components.
template <class F>
long pole_degree_bound(const CurveForm<F>& w) {
    auto part = [](const RatFunc<F>& r, long extra) -> long {
        if (r.is_zero()) return 0;
        long dn = r.num().degree(), dd = r.den().degree();
        return 2 * dd + 2 * std::max(0L, dn - dd + extra);
    };
    return part(w.g.u(), 0) + part(w.g.v(), 2);
}

// 2g - 1 + deg x + N_x for this curve: g = 1, deg x = 2, two poles of x
inline constexpr long kExactnessSlack = 5;

struct ExactnessResult {
    bool exact = true;
    std::optional<long> witness_m;  // first m with a nonzero x^{mp-1} coefficient
    long bound = 0;                 // m range checked: up to bound
    long pole_bound = 0;
};

// Decides exactness in the function field over F_p from the (0,2)-expansion.
ExactnessResult exactness_test(const CurveForm<FpField>& w);
bool log_exactness_test(const CurveForm<FpField>& w);
// C(w dx) == w dx on the first M coefficients
bool log_fixed_series(const FpSeries& w, std::size_t M);

enum class CurveModelTag { Weierstrass, Quartic };

struct CartierInvariants {
    std::uint64_t p = 0;
    Fp alpha, beta;
    CurveModelTag model = CurveModelTag::Weierstrass;
    bool both_zero() const { return alpha.is_zero() && beta.is_zero(); }
};

CartierInvariants alphabeta_weierstrass(const FpPoly& f);
CartierInvariants alphabeta_quartic(std::uint64_t p);
// [x^{2p-1}] (x^2+x) Q^{(p-1)/2}, which must vanish
Fp quartic_sanity_coefficient(std::uint64_t p);
// C applied to the (0,2)-expansions of omega and eta reproduces alpha' omega and beta' omega
bool alphabeta_quartic_series_check(std::uint64_t p, std::size_t coeffs = 60);

struct LegendreHasseData {
    Fp lambda0;
    std::uint64_t m = 0;
    Fp H_m, H_m1, K_m;
    bool derivative_identity = false;  // K_i' = -(m+1) H_i, all i, as polynomials
    bool derivative_pointwise = false; // same identity at random points
    bool hypergeometric_form = false;  // (-1)^{m+1} K_m(l)/l^{m+1} = F(1/l)
    bool ode_holds = false;            // z(1-z)F'' + (1+2mz)F' - m(m+1)F = 0
    bool no_multiple_zeros = false;    // off {0, 1}
    bool nonvanishing() const { return !(H_m.is_zero() && H_m1.is_zero()); }
};

// H_i(lambda) for (x-1)^m (x-lambda)^m, i = 0..p-1
std::vector<FpPoly> legendre_H(std::uint64_t p);
LegendreHasseData legendre_hasse(const Fp& lambda0, unsigned random_points = 20);

struct ResidueEntry {
    std::string place;
    std::string value;
    bool zero = false;
};

struct ResidueReport {
    std::vector<ResidueEntry> entries;
    bool relation_ok = false;    // residue over x = -1/2 equals R~'(-1/2)/(8 y0)
    bool residue_zero = false;   // at both places over x = -1/2
    bool hyperplane_zero = false;
    bool consistent() const { return relation_ok && residue_zero == hyperplane_zero; }
};

// Residues of R~/(2t^2) omega at the places over x = -1/2 (in F_p(sqrt 65)) and at infinity.
ResidueReport residue_check(const InitialDataFp& d);
// Residues at infinity+ and infinity- of a form over F_p
std::pair<Fp, Fp> residues_at_infinity(const CurveForm<FpField>& w);

struct PlaceOrders {
    std::string place;
    std::optional<long> v_form;     // nullopt: zero to the working precision
    std::optional<long> v_cartier;
    bool ok = true;                 // v(C) >= ceil((v+1)/p - 1)
};

struct PoleBoundReport {
    std::vector<PlaceOrders> places;
    long pole_sum = 0;          // sum over v(form) < 0
    long cartier_pole_sum = 0;  // sum over v(C form) < 0
    bool local_ok = true;
    bool sum_ok = true;
    std::vector<std::string> skipped;  // branch points not examined
    bool ok() const { return local_ok && sum_ok; }
};

PoleBoundReport pole_bound_check(const CurveForm<FpField>& w);

struct IntroCongruenceReport {
    std::uint64_t p = 0;
    std::size_t n_max = 0;
    std::size_t checked_a = 0, checked_b = 0;
    std::vector<std::size_t> failures_a;  // k with 6c_{kp+4} + c_{kp+2} + c_{kp+1} != 0
    std::vector<std::size_t> failures_b;  // k with c_{kp-2} + c_{kp-3} != 0
    bool witness_exact = false;           // d(y/x^3 + 3y/x^2) form has C = 0
};

IntroCongruenceReport intro_congruences(std::uint64_t p, std::size_t n_max);

// smallest k <= k_max with c_{kp+i} != c_i mod p, for i = 1, 2, 4
std::vector<std::pair<int, std::optional<std::size_t>>> non_strengthening(std::uint64_t p, std::size_t k_max);

// the form whose Cartier image is the generating series of c_{pn+i}: 2 x^{-i} t omega
CurveForm<QField> shifted_t_form(int i);

}  // namespace ellrec
