#include "ellrec/recurrence.hpp"

#include "ellrec/linalg.hpp"

#include <functional>

namespace ellrec {

void RecurrenceSpec::validate() const {
    if (shifts.size() < 2) throw std::invalid_argument("recurrence needs order >= 1");
    bool nonzero = false;
    for (long v : shifts.back()) nonzero = nonzero || v != 0;
    if (!nonzero) throw std::invalid_argument("leading recurrence polynomial is zero");
}

RecurrenceSpec curve_recurrence() {
    return {{{0, 2}, {4, 5}, {7, 4}, {3, 1}, {16, 8}, {16, 4}}};
}

RecurrenceSpec exp_fixture_recurrence() { return {{{0, 1}, {-3, -2}, {2, 1}}}; }

InitialData special_initial_data() {
    return {{Rational(0), Rational(1), Rational(2), make_rational(-1, 8), make_rational(-1, 2)}};
}

InitialDataFp reduce(const InitialData& d, std::uint64_t p) {
    InitialDataFp r;
    for (std::size_t i = 0; i < 5; ++i) r.c[i] = reduce(d.c[i], p);
    return r;
}

SpecialDetection special_detector(const InitialData& d) { return {d.is_special(), d.hyperplane_value()}; }

std::vector<Rational> extend_rational(const RecurrenceSpec& spec, const std::vector<Rational>& init,
                                      std::size_t N) {
    spec.validate();
    std::size_t ord = spec.order();
    if (init.size() < ord) throw std::invalid_argument("not enough initial values");
    std::vector<Rational> g(init.begin(), init.begin() + static_cast<long>(std::min(init.size(), N)));
    for (std::size_t n = 0; g.size() < N; ++n) {
        if (n + ord < g.size()) continue;  // more initial values than the order
        long lead = spec.eval(ord, static_cast<long>(n));
        if (lead == 0)
            throw std::domain_error("leading coefficient vanishes at n = " + std::to_string(n));
        Rational acc(0);
        for (std::size_t j = 0; j < ord; ++j) {
            long pj = spec.eval(j, static_cast<long>(n));
            if (pj) acc += Rational(pj) * g[n + j];
        }
        g.push_back(-acc / Rational(lead));
    }
    return g;
}

std::vector<Rational> extend_rational(const InitialData& d, std::size_t N) {
    return extend_rational(curve_recurrence(), d.values(), N);
}

ModPSolution extend_modp(const RecurrenceSpec& spec, const std::vector<Fp>& init, std::uint64_t p,
                         std::size_t N, const ModPOptions& opt) {
    spec.validate();
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("extend_modp needs a prime p >= 3");
    std::size_t ord = spec.order();
    if (init.size() < ord) throw std::invalid_argument("not enough initial values");
    for (const auto& v : init)
        if (v.modulus() != p) throw DomainMismatch("initial data not over F_" + std::to_string(p));
    if (opt.policy == ChoicePolicy::FromReduction && !opt.reference)
        throw std::invalid_argument("FromReduction policy needs reference values");
    FpField k(p);

    // Depth-first over free choices; with the Zero / FromReduction policies
    // each free index has exactly one candidate.
    ModPSolution best;
    best.p = p;
    best.consistent = false;
    std::function<bool(ModPSolution&)> run = [&](ModPSolution& s) -> bool {
        for (std::size_t n = s.values.size() - ord; s.values.size() < N; ++n) {
            Fp lead = k.from_int(spec.eval(ord, static_cast<long>(n)));
            Fp acc = k.zero();
            for (std::size_t j = 0; j < ord; ++j) acc += k.from_int(spec.eval(j, static_cast<long>(n))) * s.values[n + j];
            if (!lead.is_zero()) {
                s.values.push_back(-acc / lead);
                continue;
            }
            std::size_t m = n + ord;
            if (!acc.is_zero()) {
                s.consistent = false;
                s.violated_at = m;
                if (!best.violated_at || *best.violated_at < m) best = s;
                return false;
            }
            if (opt.policy == ChoicePolicy::Exhaustive && m < opt.exhaustive_limit) {
                for (std::uint64_t v = 0; v < p; ++v) {
                    ModPSolution branch = s;
                    branch.values.push_back(k.from_int(static_cast<long>(v)));
                    branch.choices.emplace_back(m, branch.values.back());
                    if (run(branch)) {
                        s = std::move(branch);
                        return true;
                    }
                }
                return false;
            }
            Fp choice = k.zero();
            if (opt.policy == ChoicePolicy::FromReduction) choice = reduce(opt.reference->at(m), p);
            s.values.push_back(choice);
            s.choices.emplace_back(m, choice);
        }
        s.consistent = true;
        s.violated_at.reset();
        return true;
    };
    ModPSolution s;
    s.p = p;
    s.values.assign(init.begin(), init.begin() + static_cast<long>(std::min(init.size(), N)));
    if (s.values.size() >= N) return s;
    if (run(s)) return s;
    return best;
}

ModPSolution extend_modp(const InitialDataFp& d, std::size_t N, const ModPOptions& opt) {
    return extend_modp(curve_recurrence(), d.values(), d.c[0].modulus(), N, opt);
}

QPoly ode_A() {
    QPoly Q = qpoly({4, 0, 1, 2, 1});
    return qpoly({0, 1, 2}) * Q;
}

QPoly ode_B() { return qpoly({4, 16, 0, 1, 1}); }

std::vector<std::vector<Rational>> rhs_form_matrix() {
    auto r = [](long v) { return Rational(v); };
    return {{r(-4), r(0), r(0), r(0), r(0)},
            {r(-16), r(0), r(0), r(0), r(0)},
            {r(0), r(-8), r(4), r(0), r(0)},
            {r(-1), r(1), r(0), r(8), r(0)},
            {r(-1), r(3), r(2), r(8), r(12)}};
}

RhsForms rhs_forms(const InitialData& d) {
    RhsForms f;
    for (const auto& row : rhs_form_matrix()) {
        Rational acc(0);
        for (std::size_t j = 0; j < 5; ++j) acc += row[j] * d.c[j];
        f.R.push_back(acc);
    }
    auto rt = rtilde(QField{}, d);
    f.Rtilde.assign(rt.begin(), rt.end());
    f.A = ode_A();
    f.B = ode_B();
    return f;
}

bool is_multiple_of_B(const std::vector<Rational>& R) {
    QPoly r(QField{}, R);
    if (r.is_zero()) return true;
    return (r % ode_B()).is_zero();
}

std::vector<std::uint64_t> prime_support(Integer n, Integer* cofactor, std::uint64_t limit) {
    std::vector<std::uint64_t> ps;
    n = abs(n);
    for (std::uint64_t q = 2; q <= limit && n > 1; ++q) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), q) == 0) continue;
        ps.push_back(q);
        while (mpz_divisible_ui_p(n.get_mpz_t(), q)) n /= static_cast<unsigned long>(q);
    }
    if (cofactor) *cofactor = n;
    return ps;
}

Integer denominator_constant(const InitialData& d) {
    Integer l = 1;
    auto take = [&](const Rational& q) { mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t()); };
    for (const auto& r : rhs_forms(d).R) take(r);
    for (std::size_t i = 1; i < 5; ++i) take(d.c[i]);
    return l;
}

DenominatorProfile denominator_profile(const std::vector<Rational>& seq, const Integer& d) {
    if (d == 0) throw std::invalid_argument("denominator_profile needs d != 0");
    DenominatorProfile prof;
    Integer D(1);     // lcm of den(d 16^m C_m), m <= n
    Integer L(1);     // lcm(1..n-1)
    Integer sixteen_m(1);
    for (std::size_t n = 1; n < seq.size(); ++n) {
        if (n >= 2) mpz_lcm_ui(L.get_mpz_t(), L.get_mpz_t(), n - 1);
        sixteen_m *= 16;
        DenominatorRow row;
        row.n = n;
        row.denominator = seq[n].get_den();
        row.primes = prime_support(row.denominator, &row.cofactor, std::max<std::uint64_t>(n, 1000));
        prof.rows.push_back(row);

        Rational scaled = Rational(d) * Rational(sixteen_m) * seq[n];
        Integer den = scaled.get_den();
        mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), den.get_mpz_t());
        if (prof.bound_holds && !mpz_divisible_p(L.get_mpz_t(), D.get_mpz_t())) {
            prof.bound_holds = false;
            prof.fail_n = n;
            // locate (m, p)
            Integer s16(1);
            for (std::size_t m = 1; m <= n && !prof.fail_m; ++m) {
                s16 *= 16;
                Integer dm = Rational(Rational(d) * Rational(s16) * seq[m]).get_den();
                Integer g;
                mpz_gcd(g.get_mpz_t(), dm.get_mpz_t(), L.get_mpz_t());
                Integer bad = dm / g;
                if (bad > 1) {
                    prof.fail_m = m;
                    auto ps = prime_support(bad);
                    if (!ps.empty()) prof.fail_p = ps.front();
                }
            }
        }
    }
    return prof;
}

}  // namespace ellrec
