#pragma once

#include "ellrec/poly.hpp"
#include "ellrec/series.hpp"

#include <optional>
#include <vector>

namespace ellrec {

// u = sum_i u_i^p x^i over F_p(x); over F_p, u_i^p = u_i(x^p).
struct PBasisDecomposition {
    std::uint64_t p = 0;
    std::vector<FpRatFunc> u;
};

FpPoly frobenius_compose(const FpPoly& a);  // a(x^p)
FpRatFunc frobenius_compose(const FpRatFunc& a);
PBasisDecomposition p_decompose(const FpRatFunc& u);
FpRatFunc recombine(const PBasisDecomposition& d);

// Gamma(phi) = a phi' + b phi
struct FirstOrderOperator {
    FpPoly a, b;
    FpRatFunc apply(const FpRatFunc& phi) const;
    FpSeries apply(const FpSeries& phi) const;
};

// A(x) phi' - B(x) phi reduced mod p
FirstOrderOperator curve_operator(std::uint64_t p);

struct PolynomialSolution {
    std::optional<FpPoly> poly;     // minimal degree, monic
    std::size_t dimension = 0;      // dim of solutions of degree <= deg(poly)
};

PolynomialSolution polynomial_solution_search(std::uint64_t p, std::size_t degree_bound);
// dim over F_p of polynomial solutions of degree <= d
std::size_t polynomial_solution_dimension(std::uint64_t p, std::size_t d);

// The p x p system over F_p(y), y = x^p, for Gamma(sum beta_i(y) x^i) = u.
struct PSystem {
    std::uint64_t p = 0;
    std::vector<std::vector<FpRatFunc>> M;
    std::vector<FpRatFunc> rhs;
};
PSystem p_system(const FirstOrderOperator& op, const FpRatFunc& u);

struct DescentResult {
    bool consistent = false;
    std::size_t kernel_dim = 0;                 // over F_p(x^p)
    std::optional<FpRatFunc> particular;        // solution in F_p(x) (kernel basis element if u = 0)
    std::optional<FpPoly> polynomial;           // particular, when a polynomial of degree <= bound
    std::optional<FpPoly> homogeneous;          // kernel element made polynomial and monic
    bool series_in_span = false;                // series = particular + lambda(x^p) homogeneous
    FpSeries lambda;                            // in y = x^p
    FpSeries approximant;                       // particular + lambda_trunc(x^p) homogeneous, in x
    std::size_t agree_to = 0;                   // approximant matches the series below x^agree_to
};

DescentResult descend_series_solution(const FirstOrderOperator& op, const FpRatFunc& u, const FpSeries& series,
                                      std::size_t degree_bound);

}  // namespace ellrec
