#pragma once

#include "ellrec/cartier.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ellrec {

struct TraceData {
    std::uint64_t p = 0;
    Rational A, B;
    std::uint64_t count = 0;  // projective points
    long trace = 0;           // p + 1 - count
    bool hasse_ok = false;    // trace^2 <= 4p
};

// y^2 = f(x) with f a separable cubic over F_p
TraceData point_count(const FpPoly& f);
// y^2 = x^3 + A x + B
TraceData point_count(const Rational& A, const Rational& B, std::uint64_t p);
bool good_reduction(const Rational& A, const Rational& B, std::uint64_t p);

// The quartic y^2 = Q(x): affine points plus the two points at infinity,
// and the trace of its Weierstrass model Y^2 = X^3 + X^2 - 16X.
long quartic_trace(std::uint64_t p);
long quartic_weierstrass_trace(std::uint64_t p);

// t = -x/y at the origin; omega = dx/2y
struct OriginExpansion {
    Rational A, B;
    std::size_t N = 0;
    std::vector<Rational> x;  // x t^2 = sum x[i] t^i
    std::vector<Rational> y;  // y t^3 = sum y[i] t^i
    std::vector<Rational> c;  // omega = sum_{n>=1} c[n] t^{n-1} dt; c[0] = 0
    std::string normalization = "dx/2y";
};

OriginExpansion origin_expansion(const Rational& A, const Rational& B, std::size_t N);

struct AsdFailure {
    std::size_t n = 0;
    unsigned r = 0;
    Rational value;  // c_{np^r} - f c_{np^{r-1}} + p c_{np^{r-2}}
};

struct AsdReport {
    Rational A, B;
    std::uint64_t p = 0;
    long trace = 0;
    std::size_t checked = 0;
    std::vector<AsdFailure> failures;
    bool ok() const { return failures.empty(); }
};

// c_{np^r} - f_p c_{np^{r-1}} + p c_{np^{r-2}} = 0 mod p^r, with c at non-integral indices 0
AsdReport asd_check(const OriginExpansion& e, std::uint64_t p, unsigned r_max, std::size_t n_max);
AsdReport asd_check(const Rational& A, const Rational& B, std::uint64_t p, unsigned r_max, std::size_t n_max);

struct SupersingularEntry {
    std::uint64_t p = 0;
    Fp alpha, beta;
    std::optional<long> v_c_p2;  // v_p(c_{p^2}), when computed
};

struct SupersingularReport {
    Rational A, B;
    std::uint64_t p_max = 0;
    std::vector<SupersingularEntry> supersingular;  // alpha_p = 0
    std::size_t good_primes = 0;
    bool beta_nonzero = true;
    bool valuation_ok = true;         // v_p(c_{p^2}) == 1 where computed
    std::optional<bool> cm_pattern;   // (0, 1) only: alpha_p = 0 iff p = 2 mod 3, and alpha beta = 0
    std::vector<std::uint64_t> never_both_zero_failures;
    bool ok() const {
        return beta_nonzero && valuation_ok && cm_pattern.value_or(true) && never_both_zero_failures.empty();
    }
};

// valuations of c_{p^2} are computed for supersingular p <= valuation_pmax
SupersingularReport supersingular_scan(const Rational& A, const Rational& B, std::uint64_t p_max,
                                       std::uint64_t valuation_pmax = 23);

}  // namespace ellrec
