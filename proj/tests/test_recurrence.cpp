#include <doctest.h>

#include "ellrec/linalg.hpp"
#include "ellrec/recurrence.hpp"
#include "gen.hpp"

using namespace ellrec;

namespace {
Rational q(long a, long b = 1) { return make_rational(a, b); }

InitialData data(Rational c0, Rational c1, Rational c2, Rational c3, Rational c4) {
    return {{c0, c1, c2, c3, c4}};
}

InitialData random_init(long h = 9) {
    return data(Rational(0), testgen::rational(h), testgen::rational(h), testgen::rational(h),
                testgen::rational(h));
}
}  // namespace

TEST_CASE("rational extension of the curve recurrence") {
    auto c = extend_rational(special_initial_data(), 12);
    CHECK(c[5] == q(-77, 128));
    // oracle: the recurrence at n = 1 by hand, 20 c_6 = -(24 c_5 + 4 c_4 + 11 c_3 + 9 c_2 + 2 c_1)
    Rational c6 = -(Rational(24) * c[5] + Rational(4) * c[4] + Rational(11) * c[3] + Rational(9) * c[2] +
                    Rational(2) * c[1]) /
                  Rational(20);
    CHECK(c[6] == c6);
    CHECK(c[6] == q(-7, 64));
    CHECK(c[7] == q(331, 1024));

    // every window satisfies the recurrence; reruns agree
    auto spec = curve_recurrence();
    auto c2 = extend_rational(special_initial_data(), 60);
    for (std::size_t n = 0; n + 5 < c2.size(); ++n) CHECK(recurrence_residual(spec, QField{}, c2, n) == 0);
    CHECK(extend_rational(special_initial_data(), 60) == c2);
}

TEST_CASE("exp(x/(1-x)) fixture") {
    auto e = extend_rational(exp_fixture_recurrence(), {q(1), q(1)}, 25);
    // oracle: exp(u) with u = x/(1-x), via f' = u' f, u' = 1/(1-x)^2
    std::size_t N = 25;
    std::vector<Rational> up(N, Rational(0)), f(N, Rational(0));
    for (std::size_t k = 0; k < N; ++k) up[k] = Rational(static_cast<long>(k + 1));
    f[0] = 1;
    for (std::size_t n = 1; n < N; ++n) {
        Rational s(0);
        for (std::size_t k = 0; k < n; ++k) s += up[k] * f[n - 1 - k];
        f[n] = s / Rational(static_cast<long>(n));
    }
    for (std::size_t n = 0; n < N; ++n) CHECK(e[n] == f[n]);
    CHECK(e[2] == q(3, 2));
    CHECK(e[3] == q(13, 6));

    // factorial-type denominators outgrow any 4^n-type bound
    auto e60 = extend_rational(exp_fixture_recurrence(), {q(1), q(1)}, 61);
    Integer L(1);
    bool exceeded = false;
    Integer four_n(1);
    for (std::size_t n = 1; n <= 60; ++n) {
        four_n *= 4;
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), e60[n].get_den_mpz_t());
        if (L > four_n * 1000) exceeded = true;
    }
    CHECK(exceeded);
}

TEST_CASE("mod p extension") {
    auto c = extend_rational(special_initial_data(), 30);
    auto sol = extend_modp(reduce(special_initial_data(), 7), 30,
                           {ChoicePolicy::FromReduction, &c, 0});
    CHECK(sol.consistent);
    REQUIRE(sol.values.size() == 30);
    for (std::size_t n = 0; n < 30; ++n) CHECK(sol.values[n] == reduce(c[n], 7));
    for (auto& [m, v] : sol.choices) CHECK(m % 7 == 1);

    InitialDataFp e4{{Fp(0, 7), Fp(0, 7), Fp(0, 7), Fp(0, 7), Fp(1, 7)}};
    // oracle: exhaustive search over the free choice at m = 8 (and later ones below 30)
    auto ex = extend_modp(e4, 30, {ChoicePolicy::Exhaustive, nullptr, 30});
    CHECK_FALSE(ex.consistent);
    REQUIRE(ex.violated_at.has_value());
    CHECK(*ex.violated_at % 7 == 1);
    CHECK(*ex.violated_at >= 8);
    auto z = extend_modp(e4, 30);
    CHECK_FALSE(z.consistent);
    CHECK(z.values.size() == *z.violated_at);

    InitialDataFp zero{{Fp(0, 5), Fp(0, 5), Fp(0, 5), Fp(0, 5), Fp(0, 5)}};
    auto zs = extend_modp(zero, 40);
    CHECK(zs.consistent);
    for (auto& v : zs.values) CHECK(v.is_zero());

    CHECK_THROWS(extend_modp(curve_recurrence(), std::vector<Fp>(5, Fp(0, 2)), 2, 10));
}

TEST_CASE("consistency window coefficients") {
    // at m = 1 mod p the recurrence at n = m - 5 reduces to
    // 16 C_{m-1} + C_{m-2} + 9 C_{m-3} + 16 C_{m-4} + 8 C_{m-5} = 0 (up to sign)
    auto spec = curve_recurrence();
    for (std::uint64_t p : {7, 11, 13}) {
        long n = static_cast<long>(p) + 1 - 5;
        auto m = [&](std::size_t j) { return Fp(spec.eval(j, n), p); };
        CHECK(m(5).is_zero());
        CHECK(m(4) == Fp(-16, p));
        CHECK(m(3) == Fp(-1, p));
        CHECK(m(2) == Fp(-9, p));
        CHECK(m(1) == Fp(-16, p));
        CHECK(m(0) == Fp(-8, p));
    }
}

TEST_CASE("reduction commutes with extension") {
    for (std::uint64_t p : {3, 7, 11}) {
        for (int trial = 0; trial < 10; ++trial) {
            InitialData d = data(Rational(testgen::int_in(-5, 5)), Rational(testgen::int_in(-5, 5)),
                                 Rational(testgen::int_in(-5, 5)), Rational(testgen::int_in(-5, 5)),
                                 Rational(testgen::int_in(-5, 5)));
            std::size_t N = 5 * p;
            auto c = extend_rational(d, N);
            bool integral = true;
            for (auto& v : c) integral = integral && is_p_integral(v, p);
            if (!integral) continue;
            auto s = extend_modp(reduce(d, p), N, {ChoicePolicy::FromReduction, &c, 0});
            REQUIRE(s.consistent);
            for (std::size_t n = 0; n < N; ++n) CHECK(s.values[n] == reduce(c[n], p));
        }
    }
}

TEST_CASE("tails of the reduced sequence satisfy the recurrence") {
    auto c = extend_rational(special_initial_data(), 80);
    auto spec = curve_recurrence();
    for (std::uint64_t p : {7, 11}) {
        FpField k(p);
        for (std::size_t m = 0; m <= 3; ++m) {
            std::vector<Fp> tail;
            for (std::size_t n = m * p; n < c.size(); ++n) tail.push_back(reduce(c[n], p));
            for (std::size_t n = 0; n + 5 < tail.size(); ++n)
                CHECK(recurrence_residual(spec, k, tail, n).is_zero());
        }
    }
}

TEST_CASE("right-hand side forms") {
    auto f = rhs_forms(special_initial_data());
    for (auto& r : f.R) CHECK(r == 0);
    CHECK(is_multiple_of_B(f.R));

    auto g = rhs_forms(data(q(0), q(0), q(0), q(0), q(1)));
    CHECK(g.Rtilde == std::vector<Rational>{q(0), q(0), q(12)});
    CHECK_FALSE(is_multiple_of_B(g.R));

    CHECK(rank(QField{}, rhs_form_matrix()) == 4u);
    CHECK(f.A == qpoly({0, 4, 8, 1, 4, 5, 2}));
    CHECK(f.B == qpoly({4, 16, 0, 1, 1}));

    // R is a multiple of B exactly when S = C_0 + C_1 s
    for (int trial = 0; trial < 50; ++trial) {
        Rational c0 = testgen::rational(5), c1 = testgen::rational(5);
        InitialData sp = data(c0, c1, Rational(2) * c1, -c1 / 8, -c1 / 2);
        CHECK(is_multiple_of_B(rhs_forms(sp).R));
        InitialData r = random_init();
        r.c[0] = c0;
        CHECK(is_multiple_of_B(rhs_forms(r).R) == r.is_special());
    }

    // the ODE itself: A S' - B S = R with S the series of the data, to precision 40
    for (int trial = 0; trial < 5; ++trial) {
        InitialData d = random_init();
        d.c[0] = testgen::rational(5);
        auto c = extend_rational(d, 40);
        QSeries S = make_qseries(c);
        auto rf = rhs_forms(d);
        QSeries lhs = rf.A.to_series(39) * derivative(S) - rf.B.to_series(39) * S.truncate(39);
        for (std::size_t n = 0; n < 39; ++n) CHECK(lhs[n] == (n < 5 ? rf.R[n] : Rational(0)));
    }
}

TEST_CASE("special detector") {
    auto s = special_detector(special_initial_data());
    CHECK(s.is_special);
    CHECK(s.hyperplane_value == 0);
    auto t = special_detector(data(q(0), q(2), q(4), q(-1, 4), q(-1)));
    CHECK(t.is_special);
    CHECK(t.hyperplane_value == 0);
    auto u = special_detector(data(q(0), q(0), q(0), q(0), q(1)));
    CHECK_FALSE(u.is_special);
    CHECK(u.hyperplane_value == 6);
    auto fp = reduce(special_initial_data(), 7);
    CHECK(fp.is_special());
    CHECK(fp.hyperplane_value().is_zero());
}

TEST_CASE("denominator profile") {
    auto c = extend_rational(special_initial_data(), 501);
    auto prof = denominator_profile(c, Integer(1));
    CHECK(prof.bound_holds);
    for (std::size_t n = 2; n <= 500; ++n) {
        Integer pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), 2, 2 * n - 3);
        CHECK(Rational(Rational(pw) * c[n]).get_den() == 1);
    }
    for (const auto& row : prof.rows)
        for (auto p : row.primes) CHECK(p == 2u);

    auto c2 = extend_rational(data(q(0), q(1), q(0), q(0), q(0)), 201);
    auto prof2 = denominator_profile(c2, Integer(1));
    CHECK(prof2.bound_holds);
    bool odd_prime_seen = false;
    for (const auto& row : prof2.rows)
        for (auto p : row.primes) odd_prime_seen = odd_prime_seen || p != 2;
    CHECK(odd_prime_seen);

    std::vector<Rational> zeros(50, Rational(0));
    CHECK(denominator_profile(zeros, Integer(1)).bound_holds);

    // a sequence violating the bound: 1/p^2 at index 3
    std::vector<Rational> bad(10, Rational(0));
    bad[3] = q(1, 9);
    auto pb = denominator_profile(bad, Integer(1));
    CHECK_FALSE(pb.bound_holds);
    CHECK(pb.fail_m == 3u);
    CHECK(pb.fail_p == 3u);
}
