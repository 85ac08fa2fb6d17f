#pragma once

#include "ellrec/poly.hpp"

#include <array>
#include <optional>
#include <vector>

namespace ellrec {

// sum_j P_j(n) g_{n+j} = 0 for n >= 0; P_j has integer coefficients, low degree first.
struct RecurrenceSpec {
    std::vector<std::vector<long>> shifts;  // shifts[j] = P_j

    std::size_t order() const { return shifts.empty() ? 0 : shifts.size() - 1; }
    long eval(std::size_t j, long n) const {
        long r = 0;
        const auto& c = shifts.at(j);
        for (std::size_t i = c.size(); i-- > 0;) r = r * n + c[i];
        return r;
    }
    void validate() const;
};

// 4(n+4)g_{n+5} + 8(n+2)g_{n+4} + (n+3)g_{n+3} + (4n+7)g_{n+2} + (5n+4)g_{n+1} + 2n g_n = 0
RecurrenceSpec curve_recurrence();
// (n+2)c_{n+2} - (2n+3)c_{n+1} + n c_n = 0, generating function exp(x/(1-x))
RecurrenceSpec exp_fixture_recurrence();

template <class K>
struct InitialDataT {
    std::array<K, 5> c;  // C_0..C_4; C_0 is immaterial for the curve recurrence

    K hyperplane_value() const { return c[4] + c[4] + c[4] + c[4] + c[4] + c[4] + c[2] + c[1]; }
    // (C1..C4) proportional to (1, 2, -1/8, -1/2), i.e. 8 C3 = -C1, 2 C4 = -C1, C2 = 2 C1.
    bool is_special() const {
        K c1 = c[1];
        K two_c1 = c1 + c1;
        K eight_c3 = c[3] + c[3] + c[3] + c[3] + c[3] + c[3] + c[3] + c[3];
        K two_c4 = c[4] + c[4];
        K s1 = c[2] - two_c1;
        K s2 = eight_c3 + c1;
        K s3 = two_c4 + c1;
        K z = c1 - c1;
        return s1 == z && s2 == z && s3 == z;
    }
    std::vector<K> values() const { return {c.begin(), c.end()}; }
};

using InitialData = InitialDataT<Rational>;
using InitialDataFp = InitialDataT<Fp>;

InitialData special_initial_data();  // (0, 1, 2, -1/8, -1/2)
InitialDataFp reduce(const InitialData& d, std::uint64_t p);

struct SpecialDetection {
    bool is_special = false;
    Rational hyperplane_value;
};
SpecialDetection special_detector(const InitialData& d);

// Terms 0..N-1.  Throws if the leading polynomial vanishes at a needed n.
std::vector<Rational> extend_rational(const RecurrenceSpec& spec, const std::vector<Rational>& init,
                                      std::size_t N);
std::vector<Rational> extend_rational(const InitialData& d, std::size_t N);

enum class ChoicePolicy { Zero, FromReduction, Exhaustive };

struct ModPSolution {
    std::uint64_t p = 0;
    std::vector<Fp> values;
    std::vector<std::pair<std::size_t, Fp>> choices;  // free index, chosen value
    bool consistent = true;
    std::optional<std::size_t> violated_at;
};

struct ModPOptions {
    ChoicePolicy policy = ChoicePolicy::Zero;
    const std::vector<Rational>* reference = nullptr;  // for FromReduction
    std::size_t exhaustive_limit = 0;  // branch over free indices below this bound
};

ModPSolution extend_modp(const RecurrenceSpec& spec, const std::vector<Fp>& init, std::uint64_t p,
                         std::size_t N, const ModPOptions& opt = {});
ModPSolution extend_modp(const InitialDataFp& d, std::size_t N, const ModPOptions& opt = {});

// Residual sum_j P_j(n) g_{n+j} at a given n (over any field).
template <class F>
typename F::value_type recurrence_residual(const RecurrenceSpec& spec, const F& k,
                                           const std::vector<typename F::value_type>& g, std::size_t n) {
    using K = typename F::value_type;
    K acc = k.zero();
    for (std::size_t j = 0; j <= spec.order(); ++j) {
        K t = k.from_int(spec.eval(j, static_cast<long>(n))) * g.at(n + j);
        acc += t;
    }
    return acc;
}

// A(x) S' - B(x) S = R(x) for S = sum C_n x^n solving the curve recurrence.
struct RhsForms {
    std::vector<Rational> R;       // 5 coefficients
    std::vector<Rational> Rtilde;  // 3 coefficients, C_0 normalized to 0
    QPoly A, B;
};

QPoly ode_A();  // x(1+2x)Q(x)
QPoly ode_B();  // 4 + 16x + x^3 + x^4
RhsForms rhs_forms(const InitialData& d);
// Rows: coefficients of R in terms of (C0..C4).
std::vector<std::vector<Rational>> rhs_form_matrix();
bool is_multiple_of_B(const std::vector<Rational>& R);

template <class F>
std::array<typename F::value_type, 3> rtilde(const F& k, const InitialDataT<typename F::value_type>& d) {
    using K = typename F::value_type;
    auto i = [&](long v) { return k.from_int(v); };
    const auto& c = d.c;
    K r0 = i(4) * c[2] - i(8) * c[1];
    K r1 = i(8) * c[3] + c[1];
    K r2 = i(12) * c[4] + i(8) * c[3] + i(2) * c[2] + i(3) * c[1];
    return {r0, r1, r2};
}

struct DenominatorRow {
    std::size_t n = 0;
    Integer denominator;
    std::vector<std::uint64_t> primes;  // prime support (trial division)
    Integer cofactor;                   // unfactored remainder, 1 if complete
};

struct DenominatorProfile {
    std::vector<DenominatorRow> rows;
    bool bound_holds = true;
    std::optional<std::size_t> fail_n, fail_m;
    std::optional<std::uint64_t> fail_p;
};

// lcm of the denominators of R(x) and of C1..C4
Integer denominator_constant(const InitialData& d);

// Checks d 4^{2m} C_m lcm(1..n-1) integral for 1 <= m <= n < seq.size().
DenominatorProfile denominator_profile(const std::vector<Rational>& seq, const Integer& d);

std::vector<std::uint64_t> prime_support(Integer n, Integer* cofactor = nullptr, std::uint64_t limit = 100000);

}  // namespace ellrec
