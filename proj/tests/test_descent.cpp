#include <doctest.h>

#include "ellrec/descent.hpp"
#include "ellrec/recurrence.hpp"
#include "gen.hpp"

using namespace ellrec;

namespace {
FpPoly fpoly(std::uint64_t p, std::vector<long> v) {
    std::vector<Fp> c;
    for (long a : v) c.push_back(Fp(a, p));
    return FpPoly(FpField(p), c);
}

FpPoly random_poly(std::uint64_t p, int deg) {
    std::vector<Fp> c;
    for (int i = 0; i <= deg; ++i) c.push_back(Fp(testgen::int_in(0, static_cast<long>(p) - 1), p));
    return FpPoly(FpField(p), c);
}

FpSeries special_series_modp(std::uint64_t p, std::size_t N) {
    auto c = extend_rational(special_initial_data(), N);
    std::vector<Fp> v;
    for (auto& a : c) v.push_back(reduce(a, p));
    return FpSeries(FpField(p), v);
}

// x(2x+1) Q^{(p-1)/2}, made monic
FpPoly expected_solution(std::uint64_t p) {
    FpPoly Q = fpoly(p, {4, 0, 1, 2, 1});
    return (fpoly(p, {0, 1, 2}) * Q.pow(static_cast<unsigned>((p - 1) / 2))).monic();
}
}  // namespace

TEST_CASE("p-basis decomposition") {
    FpField k3(3);
    auto d = p_decompose(FpRatFunc(fpoly(3, {0, 0, 0, 0, 0, 1})));  // x^5 = (x)^3 x^2
    CHECK(d.u[0].is_zero());
    CHECK(d.u[1].is_zero());
    CHECK(d.u[2] == FpRatFunc(fpoly(3, {0, 1})));

    FpRatFunc geo(fpoly(5, {1}), fpoly(5, {1, -1}));
    CHECK(recombine(p_decompose(geo)) == geo);

    for (std::uint64_t p : {3, 5, 7}) {
        for (int trial = 0; trial < 200; ++trial) {
            FpPoly n = random_poly(p, static_cast<int>(testgen::int_in(0, 9)));
            FpPoly dd = random_poly(p, static_cast<int>(testgen::int_in(0, 5)));
            if (dd.is_zero()) continue;
            FpRatFunc u(n, dd);
            auto dec = p_decompose(u);
            REQUIRE(dec.u.size() == p);
            CHECK(recombine(dec) == u);
        }
    }
    CHECK(frobenius_compose(fpoly(3, {1, 2})) == fpoly(3, {1, 0, 0, 2}));
}

TEST_CASE("first order descent on simple equations") {
    // phi' = 2x at p = 5 gives x^2 up to constants (x^5 multiples)
    FirstOrderOperator d{fpoly(5, {1}), FpPoly(FpField(5))};
    auto r = descend_series_solution(d, FpRatFunc(fpoly(5, {0, 2})), FpSeries(FpField(5), 0), 20);
    CHECK(r.consistent);
    CHECK(r.kernel_dim == 1);
    REQUIRE(r.polynomial);
    CHECK(d.apply(FpRatFunc(*r.polynomial)) == FpRatFunc(fpoly(5, {0, 2})));
    REQUIRE(r.homogeneous);
    CHECK(r.homogeneous->degree() == 0);

    // x^{p-1} is not a derivative
    for (std::uint64_t p : {3, 5, 7}) {
        FirstOrderOperator dp{fpoly(p, {1}), FpPoly(FpField(p))};
        FpRatFunc u(FpPoly::monomial(FpField(p), p - 1, Fp(1, p)));
        CHECK_FALSE(descend_series_solution(dp, u, FpSeries(FpField(p), 0), 20).consistent);
    }
}

TEST_CASE("random operators: particular solutions solve the equation") {
    for (std::uint64_t p : {3, 5, 7}) {
        FpField k(p);
        for (int trial = 0; trial < 15; ++trial) {
            FpPoly a = random_poly(p, 2), b = random_poly(p, 2);
            if (a.is_zero()) continue;
            FirstOrderOperator op{a, b};
            FpPoly phi = random_poly(p, static_cast<int>(testgen::int_in(1, 6)));
            FpRatFunc u = op.apply(FpRatFunc(phi));
            auto r = descend_series_solution(op, u, FpSeries(k, 0), 40);
            CHECK(r.consistent);
            CHECK(r.kernel_dim <= 1);
            REQUIRE(r.particular);
            CHECK(op.apply(*r.particular) == u);
            if (r.homogeneous) CHECK(op.apply(FpRatFunc(*r.homogeneous)).is_zero());
        }
    }
}

TEST_CASE("curve operator: s mod p descends to the polynomial solution") {
    for (std::uint64_t p : {3, 7, 11}) {
        auto op = curve_operator(p);
        std::size_t N = 12 * p;
        FpSeries s = special_series_modp(p, N);
        // s is annihilated by the operator as a series
        CHECK(op.apply(s).is_zero());
        auto r = descend_series_solution(op, FpRatFunc(FpField(p)), s, 4 * p);
        CHECK(r.consistent);
        CHECK(r.kernel_dim == 1);
        REQUIRE(r.homogeneous);
        CHECK(*r.homogeneous == expected_solution(p));
        CHECK(r.homogeneous->degree() == static_cast<long>(2 * p));
        CHECK(r.series_in_span);
        CHECK(r.agree_to == N);
        // x^p phi solves as well
        FpPoly shifted = FpPoly::monomial(FpField(p), p, Fp(1, p)) * *r.homogeneous;
        CHECK(op.apply(FpRatFunc(shifted)).is_zero());
    }
}

TEST_CASE("minimal polynomial solution") {
    for (std::uint64_t p : {3, 7, 11, 17, 19}) {
        auto sol = polynomial_solution_search(p, 4 * p);
        REQUIRE(sol.poly);
        CHECK(*sol.poly == expected_solution(p));
        CHECK(sol.poly->degree() == static_cast<long>(2 * p));
        CHECK(sol.dimension == 1);
        CHECK(polynomial_solution_dimension(p, 2 * p - 1) == 0);
        CHECK(polynomial_solution_dimension(p, 2 * p) == 1);
        CHECK(polynomial_solution_dimension(p, 3 * p) == 2);
    }
    CHECK_THROWS(polynomial_solution_search(13, 40));
}
