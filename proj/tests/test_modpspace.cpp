#include <doctest.h>

#include "ellrec/modpspace.hpp"
#include "gen.hpp"

using namespace ellrec;

namespace {
Vec4 v4(std::uint64_t p, long a, long b, long c, long d) { return {Fp(a, p), Fp(b, p), Fp(c, p), Fp(d, p)}; }

Vec4 random_vec(std::uint64_t p) {
    long hi = static_cast<long>(p) - 1;
    return v4(p, testgen::int_in(0, hi), testgen::int_in(0, hi), testgen::int_in(0, hi), testgen::int_in(0, hi));
}

const std::vector<std::uint64_t> kVpPrimes{7, 11, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
                                           71, 73, 79, 83, 89, 97, 101};
}  // namespace

TEST_CASE("sigma blocks") {
    auto sb = sigma_blocks(7, 5);
    REQUIRE(sb.sigma.size() == 6);
    // reductions of 1, 2, -1/8, -1/2, -77/128, -7/64 and c_7 = 1
    std::vector<long> expect{1, 2, 6, 3, 0, 0, 1};
    for (std::size_t j = 0; j < 7; ++j) CHECK(sb.sigma[0].coeff(j) == Fp(expect[j], 7));
    CHECK(sb.tails_satisfy_recurrence);
    CHECK(sb.independent01);
    CHECK(sigma_blocks(11, 3).independent01);
    for (std::uint64_t p : {17, 19, 23, 29, 31}) {
        auto s = sigma_blocks(p, 4);
        CHECK(s.tails_satisfy_recurrence);
        CHECK(s.independent01);
    }
    CHECK_THROWS(sigma_blocks(13, 2));
}

TEST_CASE("extendability examples") {
    auto r = extendability_test(init_from_vec(v4(7, 1, 2, 6, 3)));
    CHECK(r.extendable());
    CHECK(r.agree());
    auto bad = init_from_vec(v4(7, 0, 0, 0, 1));
    CHECK(hyperplane_form(7)(vec_from_init(bad)) == Fp(6, 7));
    CHECK_FALSE(extendability_test(bad).extendable());
    CHECK(extendability_test(bad).agree());
    auto c = special_sequence_modp(11, 16);
    CHECK(extendability_test(init_from_vec({c[12], c[13], c[14], c[15]})).extendable());
    CHECK_THROWS(extendability_test(init_from_vec(v4(13, 1, 2, 3, 4))));
    CHECK_THROWS(extendability_test(init_from_vec(v4(3, 1, 2, 0, 1))));
}

TEST_CASE("closed form and series route agree") {
    for (std::uint64_t p : {7, 11}) {
        std::size_t ext = 0;
        for (std::uint64_t a = 0; a < p * p * p * p; ++a) {
            std::uint64_t t = a;
            Vec4 v;
            for (int i = 0; i < 4; ++i) {
                v[i] = Fp(static_cast<std::int64_t>(t % p), p);
                t /= p;
            }
            auto r = extendability_test(init_from_vec(v));
            CHECK(r.agree());
            if (r.extendable()) ++ext;
        }
        CHECK(ext == p * p);
    }
    for (std::uint64_t p : kVpPrimes) {
        for (int i = 0; i < 40; ++i) CHECK(extendability_test(init_from_vec(random_vec(p))).agree());
    }
}

TEST_CASE("V_p has dimension 2 and the stated basis") {
    for (std::uint64_t p : kVpPrimes) {
        auto vp = compute_vp(p, 11);
        CHECK(vp.dimension == 2);
        CHECK(vp.basis_members);
        CHECK(vp.basis_spans);
        CHECK(vp.oracle_agrees);
        if (p <= 31) {
            REQUIRE(vp.oracle_dimension);
            CHECK(*vp.oracle_dimension == 2);
        }
    }
    auto vp7 = compute_vp(7);
    CHECK(vp7.oracle == "exhaustive");
    CHECK(vp_exhaustive(7, oracle_length(7)).size() == 49);
    CHECK_THROWS(compute_vp(13));
    CHECK_THROWS(compute_vp(3));
    CHECK_THROWS(compute_vp(5));
    // p = 3 is outside the theorem; the propagation oracle finds a 3-dimensional space
    CHECK(vp_linear_dimension(3, oracle_length(3)) == 3);
}

TEST_CASE("both oracles agree where both run") {
    for (std::uint64_t p : {7, 11}) {
        auto members = vp_exhaustive(p, oracle_length(p));
        CHECK(members.size() == p * p);
        CHECK(vp_linear_dimension(p, oracle_length(p)) == 2);
    }
}

TEST_CASE("defining vectors are independent") {
    for (std::uint64_t p : kVpPrimes) CHECK(form_vector_rank(p) == 3);
    CHECK(form_vector_rank(13) == 3);
    CHECK(form_vector_rank(2) < 3);
    CHECK(form_vector_rank(3) < 3);
    CHECK(form_vector_rank(5) == 3);
}

TEST_CASE("union check") {
    for (std::uint64_t p : {7, 11, 17}) {
        auto u = union_check(p);
        CHECK(u.exhaustive);
        CHECK(u.checked == p * p);
        CHECK(u.ok());
        // exactly the multiples of the special vector
        CHECK(u.equal_count == p);
    }
    auto u = union_check(101, 300);
    CHECK_FALSE(u.exhaustive);
    CHECK(u.ok());

    // non-proportional basis vector at p = 7
    auto c = special_sequence_modp(7, 12);
    auto ext = extend_modp(init_from_vec({c[8], c[9], c[10], c[11]}), 8);
    CHECK(ext.values[7] != ext.values[1]);
    auto zero = extend_modp(init_from_vec(v4(7, 0, 0, 0, 0)), 8);
    CHECK(zero.values[7] == zero.values[1]);
}

TEST_CASE("W_p witnesses") {
    for (std::uint64_t p : {2, 3, 7, 11}) {
        auto w = wp_witnesses(p, 4);
        CHECK(w.recurrence_ok);
        CHECK(w.independent);
    }
    auto w = wp_witnesses(7, 1);
    auto c = special_sequence_modp(7, w.sequences[0].size());
    CHECK(w.sequences[0] == c);
}

TEST_CASE("off the hyperplane some C_n has p in the denominator") {
    int found = 0;
    for (int trial = 0; trial < 3; ++trial) {
        InitialData d;
        d.c[0] = 0;
        for (int i = 1; i < 5; ++i) d.c[i] = testgen::int_in(-9, 9);
        if (d.hyperplane_value() == 0) continue;
        for (std::uint64_t p : {7, 11, 17, 19, 23, 29, 31}) {
            CHECK(first_nonintegral(d, p, 8 * p).has_value());
            ++found;
        }
    }
    CHECK(found > 0);
    // the special data stays integral away from 2
    CHECK_FALSE(first_nonintegral(special_initial_data(), 7, 200).has_value());
}
