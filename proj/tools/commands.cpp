#include "commands.hpp"

#include "ellrec/frobenius.hpp"
#include "ellrec/modpspace.hpp"

#include <iomanip>
#include <random>
#include <sstream>

namespace ellrec::cli {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

Rational parse_value(const std::string& s, const std::string& flag) {
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw UsageError(flag + ": cannot parse '" + s + "' as a rational");
    }
}

InitialData parse_init(const std::optional<std::string>& text) {
    if (!text) return special_initial_data();
    auto parts = split(*text, ',');
    if (parts.size() != 4 && parts.size() != 5) throw UsageError("--init needs 4 or 5 comma-separated rationals");
    InitialData d;
    d.c[0] = 0;
    std::size_t off = parts.size() == 4 ? 1 : 0;
    for (std::size_t i = 0; i < parts.size(); ++i) d.c[i + off] = parse_value(parts[i], "--init");
    return d;
}

std::pair<Rational, Rational> parse_curve(const std::optional<std::string>& text) {
    if (!text) return {0, 1};
    auto parts = split(*text, ',');
    if (parts.size() != 2) throw UsageError("--curve needs A,B");
    return {parse_value(parts[0], "--curve"), parse_value(parts[1], "--curve")};
}

json init_json(const InitialData& d) {
    json a = json::array();
    for (const auto& c : d.c) a.push_back(rational_json(c));
    return a;
}

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = lo; p <= hi; ++p)
        if (is_prime(p)) ps.push_back(p);
    return ps;
}

// --p selects one prime, otherwise every prime in [lo, --pmax]
std::vector<std::uint64_t> prime_list(const Options& o, std::uint64_t lo, std::uint64_t pmax_default) {
    if (o.p) {
        if (!is_prime(*o.p)) throw UsageError("--p must be prime");
        return {*o.p};
    }
    return primes_between(lo, o.pmax.value_or(pmax_default));
}

std::string ps(std::uint64_t p) { return "p=" + std::to_string(p); }

Outcome cmd_seq(const Options& o) {
    Outcome out;
    Report& r = out.report;
    InitialData d = parse_init(o.init);
    std::size_t n = o.n.value_or(o.nmax.value_or(10));
    r.params = {{"init", init_json(d)}, {"n", n}};
    auto c = extend_rational(d, n);
    json terms = json::array();
    for (std::size_t i = 0; i < c.size(); ++i) {
        out.text.push_back("c_" + std::to_string(i) + " = " + to_string(c[i]));
        terms.push_back(rational_json(c[i]));
    }
    RecurrenceSpec rec = curve_recurrence();
    std::optional<std::size_t> bad;
    for (std::size_t i = 0; i + rec.order() < c.size() && !bad; ++i)
        if (recurrence_residual(rec, QField{}, c, i) != 0) bad = i;
    r.add(make_check("recurrence residuals vanish", !bad, std::to_string(c.size()) + " terms",
                     bad ? json{{"n", *bad}} : json(terms)));
    auto sd = special_detector(d);
    r.add(make_check("special detection", true,
                     std::string(sd.is_special ? "special" : "not special") + ", 6C4+C2+C1 = " +
                         to_string(sd.hyperplane_value)));
    if (sd.is_special && d.c[1] == 1 && c.size() > 5) {
        bool ok = c[5] == make_rational(-77, 128);
        r.add(make_check("c_5 = -77/128", ok, "c_5 = " + to_string(c[5]), ok ? json(nullptr) : rational_json(c[5])));
    }
    return out;
}

Outcome cmd_congruence(const Options& o) {
    Outcome out;
    Report& r = out.report;
    InitialData d = parse_init(o.init);
    std::uint64_t p = o.p.value_or(5);
    if (!is_prime(p) || p == 2) throw UsageError("--p must be an odd prime");
    unsigned rmax = o.rmax.value_or(1);
    std::size_t nmax = o.nmax.value_or(o.n.value_or(125));
    r.params = {{"init", init_json(d)}, {"p", p}, {"rmax", rmax}, {"nmax", nmax}};
    auto c = extend_rational(d, nmax + 1);
    auto s = congruence_scan(c, p, rmax, nmax, true);
    r.add(make_check(ps(p) + " terms p-integral", s.integral, "n <= " + std::to_string(nmax),
                     s.nonintegral_index ? json{{"n", *s.nonintegral_index}} : json(nullptr)));
    json w = nullptr;
    if (!s.failures.empty()) {
        const auto& f = s.failures.front();
        w = {{"k", f.k}, {"r", f.r}, {"index", f.index}};
    }
    r.add(make_check(ps(p) + " c_{kp^{r+1}} = c_{kp^r} mod p^{r+1}", s.failures.empty(),
                     std::to_string(s.checked) + " congruences, " + std::to_string(s.failures.size()) + " failures", w));
    r.add(make_check(ps(p) + " Dieudonne exponents p-integral", s.exponents_integral, "",
                     s.first_nonintegral_exponent ? json{{"m", *s.first_nonintegral_exponent}} : json(nullptr)));
    r.add(make_check(ps(p) + " exp(sum c_n x^n/n) p-integral", s.witness_integral, "",
                     s.first_nonintegral_witness_coeff ? json{{"n", *s.first_nonintegral_witness_coeff}}
                                                       : json(nullptr)));
    r.add(make_check(ps(p) + " product reconstruction round-trip", s.roundtrip_ok));
    return out;
}

Outcome cmd_denom(const Options& o) {
    Outcome out;
    Report& r = out.report;
    InitialData d = parse_init(o.init);
    std::size_t nmax = o.nmax.value_or(o.n.value_or(o.quick ? 80 : 200));
    Integer D = denominator_constant(d);
    r.params = {{"init", init_json(d)}, {"nmax", nmax}};
    auto c = extend_rational(d, nmax + 1);
    auto prof = denominator_profile(c, D);
    json w = nullptr;
    if (!prof.bound_holds) w = {{"n", *prof.fail_n}, {"m", *prof.fail_m}, {"p", prof.fail_p.value_or(0)}};
    r.add(make_check("d 4^{2m} C_m lcm(1..n-1) integral", prof.bound_holds,
                     "d = " + to_string(D) + ", m <= n <= " + std::to_string(nmax), w));
    const auto& last = prof.rows.back();
    std::string support;
    for (auto q : last.primes) support += (support.empty() ? "" : ",") + std::to_string(q);
    out.text.push_back("denominator of C_" + std::to_string(last.n) + ": primes {" + support + "}");

    Rational h = d.hyperplane_value();
    if (h != 0 && is_p_integral(h, 7)) {
        std::vector<std::uint64_t> missing;
        for (std::uint64_t p : primes_between(7, o.pmax.value_or(31))) {
            if (is_bad_prime(p)) continue;
            bool integral_data = true;
            for (const auto& ci : d.c) integral_data = integral_data && is_p_integral(ci, p);
            if (!integral_data) continue;
            if (!first_nonintegral(d, p, 8 * p)) missing.push_back(p);
        }
        json mw = nullptr;
        if (!missing.empty()) mw = {{"primes", missing}};
        r.add(make_check("off the hyperplane: v_p(C_n) < 0 for some n <= 8p", missing.empty(),
                         "6C4+C2+C1 = " + to_string(h), mw));
    } else {
        r.add({"off the hyperplane: v_p(C_n) < 0 for some n <= 8p", CheckStatus::Skip,
               "initial data on the hyperplane", nullptr});
    }
    return out;
}

Outcome cmd_identities(const Options& o) {
    Outcome out;
    Report& r = out.report;
    std::size_t n = o.n.value_or(o.nmax.value_or(o.quick ? 60 : 200));
    r.params = {{"n", n}};
    r.add_all(verify_algebraic_identities());
    r.add_all(omega_regularity());
    auto s = make_qseries(extend_rational(special_initial_data(), n));
    QSeries res = verify_ode(s);
    r.add(make_check("A s' - B s = 0", res.is_zero(), "precision " + std::to_string(res.precision()),
                     res.is_zero() ? json(nullptr) : json{{"first_nonzero", *res.order()}}));
    InitialData d = parse_init(o.init);
    if (o.init && d.c[0] == 0) {
        auto q = xi_quadrature(d, std::min<std::size_t>(n, 100));
        r.add(make_check("d(S/s) = R~/(2t^2) omega", q.derivative_ok,
                         "verified to " + std::to_string(q.verified_to)));
        if (q.on_hyperplane)
            r.add(make_check("R~/(2t^2) = Kc + Kp/t^2", q.decomposition_ok,
                             "Kc = " + to_string(q.Kc) + ", Kp = " + to_string(q.Kp)));
    }
    return out;
}

Outcome cmd_closed_forms(const Options& o) {
    Outcome out;
    Report& r = out.report;
    std::size_t nmax = o.nmax.value_or(o.n.value_or(30));
    std::size_t kmax = o.kmax.value_or(7);
    r.params = {{"nmax", nmax}, {"kmax", kmax}};
    auto rows = closed_forms(nmax);
    for (const auto& row : rows)
        out.text.push_back("n=" + std::to_string(row.n) + "  b=" + to_string(row.b) + "  l=" + to_string(row.l));
    r.add(closed_forms_match(nmax));
    if (rows.size() > 5) {
        const long b_golden[] = {1, 0, -2, -16, -26};
        const long l_golden[] = {0, 1, 8, -2, -32, -154};
        bool ok = true;
        for (int i = 0; i < 5; ++i) ok = ok && rows[i].b == b_golden[i];
        for (int i = 0; i < 6; ++i) ok = ok && rows[i].l == l_golden[i];
        r.add(make_check("b_0..b_4 = 1,0,-2,-16,-26 and l_0..l_5 = 0,1,8,-2,-32,-154", ok));
    }
    auto t = two_adic_facts(nmax / 2, static_cast<unsigned>(kmax));
    json w = nullptr;
    if (t.first_failure) w = {{"n", *t.first_failure}};
    r.add(make_check("l_{2m} = 0 mod 4", t.even_ok, "", w));
    r.add(make_check("l_{2m+1} = (-1)^m binom(2m,m) mod 8", t.mod8_ok, "", w));
    r.add(make_check("v_2(l_{2m+1}) = popcount(m)", t.valuation_ok, "", w));
    std::string sharp;
    bool sharp_ok = true;
    for (auto [n, v] : t.sharpness) {
        sharp += " v(" + std::to_string(n) + ")=" + std::to_string(v);
        sharp_ok = sharp_ok && v == 1;
    }
    r.add(make_check("v_2(2^{2n-2} c_n) = 1 at n = 2^k+1", sharp_ok, sharp));
    return out;
}

Outcome cmd_modp_space(const Options& o) {
    Outcome out;
    Report& r = out.report;
    auto primes = prime_list(o, 7, o.quick ? 31 : 101);
    r.params = {{"primes", primes}, {"seed", o.seed}, {"quick", o.quick}};
    std::mt19937_64 rng(o.seed);
    for (auto p : primes) {
        if (p == 3) {
            std::size_t dim = vp_linear_dimension(3, oracle_length(3));
            r.add({"p=3 extendable subspace", CheckStatus::Skip,
                   "outside the theorem; empirical dimension " + std::to_string(dim), json{{"dimension", dim}}});
            continue;
        }
        if (p == 2 || is_bad_prime(p)) {
            r.add({ps(p) + " V_p", CheckStatus::Skip, "excluded prime", nullptr});
            continue;
        }
        auto vp = compute_vp(p, o.quick ? 11 : 31);
        std::string basis;
        for (const auto& b : vp.basis) basis += " " + to_string(b);
        out.text.push_back(ps(p) + "  dim V_p = " + std::to_string(vp.dimension) + "  basis" + basis);
        r.add(make_check(ps(p) + " dim V_p = 2", vp.dimension == 2, "", json{{"dimension", vp.dimension}}));
        r.add(make_check(ps(p) + " basis vectors in V_p", vp.basis_members && vp.basis_spans, basis));
        if (vp.oracle_dimension)
            r.add(make_check(ps(p) + " " + vp.oracle + " oracle agrees", vp.oracle_agrees,
                             "oracle dimension " + std::to_string(*vp.oracle_dimension)));
        std::uniform_int_distribution<std::uint64_t> u(0, p - 1);
        std::size_t disagreements = 0;
        for (int i = 0; i < (o.quick ? 20 : 100); ++i) {
            Vec4 v;
            for (auto& x : v) x = Fp(static_cast<std::int64_t>(u(rng)), p);
            if (!extendability_test(init_from_vec(v)).agree()) ++disagreements;
        }
        r.add(make_check(ps(p) + " closed form and series exactness agree", disagreements == 0,
                         std::to_string(disagreements) + " disagreements"));
        auto un = union_check(p, 500, o.seed);
        json uw = nullptr;
        if (!un.ok()) uw = {{"vector", to_string(un.mismatches.front())}};
        r.add(make_check(ps(p) + " C_p = C_1 iff proportional to the special vector", un.ok(),
                         std::to_string(un.checked) + (un.exhaustive ? " elements (all)" : " samples"), uw));
        auto sb = sigma_blocks(p, 3);
        r.add(make_check(ps(p) + " sigma_0, sigma_1 independent; tails satisfy the recurrence",
                         sb.independent01 && sb.tails_satisfy_recurrence));
        r.add(make_check(ps(p) + " defining vectors independent", form_vector_rank(p) == 3));
    }
    return out;
}

Outcome cmd_cartier(const Options& o) {
    Outcome out;
    Report& r = out.report;
    auto primes = prime_list(o, 3, o.quick ? 30 : 100);
    std::size_t nmax = o.nmax.value_or(o.quick ? 200 : 1000);
    std::size_t kmax = o.kmax.value_or(10);
    r.params = {{"primes", primes}, {"nmax", nmax}, {"kmax", kmax}};
    for (auto p : primes) {
        if (p == 2 || is_bad_prime(p)) {
            r.add({ps(p) + " Cartier invariants", CheckStatus::Skip, "bad reduction", nullptr});
            continue;
        }
        auto ci = alphabeta_quartic(p);
        out.text.push_back(ps(p) + "  alpha' = " + std::to_string(ci.alpha.value()) +
                           "  beta' = " + std::to_string(ci.beta.value()));
        r.add(make_check(ps(p) + " (alpha', beta') != (0, 0)", !ci.both_zero(), "",
                         json{{"alpha", fp_json(ci.alpha)}, {"beta", fp_json(ci.beta)}}));
        r.add(make_check(ps(p) + " [x^{2p-1}] (x^2+x) Q^{(p-1)/2} = 0", quartic_sanity_coefficient(p).is_zero()));
        r.add(make_check(ps(p) + " C(omega), C(eta) on expansions", alphabeta_quartic_series_check(p, 20)));
        long tr = quartic_trace(p);
        r.add(make_check(ps(p) + " alpha' = trace of Frobenius", ci.alpha == Fp(tr, p), "trace " + std::to_string(tr),
                         json{{"trace", tr}}));
        bool log_exact = log_exactness_test(reduce_form(form_omega(QField{}), p));
        r.add(make_check(ps(p) + " omega log-exact iff alpha' = 1", log_exact == (ci.alpha == Fp(1, p))));
        auto res = residue_check(reduce(special_initial_data(), p));
        r.add(make_check(ps(p) + " residues of the special form", res.consistent() && res.residue_zero));
        if (p >= 7) {
            auto ic = intro_congruences(p, nmax);
            json wa = nullptr, wb = nullptr;
            if (!ic.failures_a.empty()) wa = {{"k", ic.failures_a.front()}};
            if (!ic.failures_b.empty()) wb = {{"k", ic.failures_b.front()}};
            r.add(make_check(ps(p) + " 6c_{kp+4}+c_{kp+2}+c_{kp+1} = 0 mod p", ic.failures_a.empty() && ic.witness_exact,
                             std::to_string(ic.checked_a) + " values of k", wa));
            r.add(make_check(ps(p) + " c_{kp-2}+c_{kp-3} = 0 mod p", ic.failures_b.empty(),
                             std::to_string(ic.failures_b.size()) + " of " + std::to_string(ic.checked_b) + " fail",
                             wb));
            auto ns = non_strengthening(p, kmax);
            bool all_found = true;
            json nw = json::object();
            for (auto& [i, k] : ns) {
                all_found = all_found && k.has_value();
                nw[std::to_string(i)] = k ? json(*k) : json(nullptr);
            }
            r.add(make_check(ps(p) + " c_{kp+i} != c_i for some k <= " + std::to_string(kmax), all_found, "i = 1, 2, 4",
                             nw));
        }
        if (p >= 7 && p <= 13) {
            auto lh = legendre_hasse(Fp(3, p));
            r.add(make_check(ps(p) + " Legendre-Hasse identities",
                             lh.derivative_identity && lh.hypergeometric_form && lh.ode_holds && lh.nonvanishing()));
        }
    }
    return out;
}

Outcome cmd_frobenius(const Options& o) {
    Outcome out;
    Report& r = out.report;
    auto [A, B] = parse_curve(o.curve);
    auto primes = prime_list(o, 5, o.quick ? 100 : 500);
    r.params = {{"curve", {rational_json(A), rational_json(B)}}, {"primes", primes}};
    std::vector<std::uint64_t> hasse_fail, trace_fail, both_zero;
    std::size_t good = 0;
    for (auto p : primes) {
        if (!good_reduction(A, B, p)) continue;
        ++good;
        auto t = point_count(A, B, p);
        if (!t.hasse_ok) hasse_fail.push_back(p);
        FpField k(p);
        auto ci = alphabeta_weierstrass(FpPoly(k, {reduce(B, p), reduce(A, p), k.zero(), k.one()}));
        if (ci.alpha != Fp(t.trace, p)) trace_fail.push_back(p);
        if (ci.both_zero()) both_zero.push_back(p);
    }
    auto w = [](const std::vector<std::uint64_t>& v) { return v.empty() ? json(nullptr) : json{{"primes", v}}; };
    r.add(make_check("Hasse bound", hasse_fail.empty(), std::to_string(good) + " good primes", w(hasse_fail)));
    r.add(make_check("alpha_p = trace mod p", trace_fail.empty(), "", w(trace_fail)));
    r.add(make_check("(alpha_p, beta_p) != (0, 0)", both_zero.empty(), "", w(both_zero)));
    std::uint64_t top = primes.empty() ? 5 : std::max<std::uint64_t>(primes.back(), 5);
    auto s = supersingular_scan(A, B, top, o.quick ? 11 : 23);
    std::string list;
    for (const auto& e : s.supersingular) list += (list.empty() ? "" : ",") + std::to_string(e.p);
    out.text.push_back("alpha_p = 0 for p in {" + list + "}");
    r.add(make_check("beta_p != 0 where alpha_p = 0", s.beta_nonzero, "{" + list + "}"));
    r.add(make_check("v_p(c_{p^2}) = 1 where alpha_p = 0", s.valuation_ok));
    if (s.cm_pattern)
        r.add(make_check("alpha_p = 0 iff p = 2 mod 3, alpha_p beta_p = 0", *s.cm_pattern));
    return out;
}

Outcome cmd_asd(const Options& o) {
    Outcome out;
    Report& r = out.report;
    auto [A, B] = parse_curve(o.curve);
    std::vector<std::uint64_t> primes = o.p ? std::vector<std::uint64_t>{*o.p} : std::vector<std::uint64_t>{5, 7, 11, 13};
    unsigned rmax = o.rmax.value_or(2);
    std::size_t nmax = o.nmax.value_or(o.n.value_or(5));
    r.params = {{"curve", {rational_json(A), rational_json(B)}}, {"primes", primes}, {"rmax", rmax}, {"nmax", nmax}};
    std::size_t top = 0;
    for (auto p : primes) {
        if (!good_reduction(A, B, p)) throw UsageError("curve has bad reduction at " + std::to_string(p));
        std::size_t t = nmax;
        for (unsigned i = 0; i < rmax; ++i) t *= p;
        top = std::max(top, t);
    }
    auto e = origin_expansion(A, B, top + 1);
    for (auto p : primes) {
        auto rep = asd_check(e, p, rmax, nmax);
        json w = nullptr;
        if (!rep.ok()) w = {{"n", rep.failures.front().n}, {"r", rep.failures.front().r},
                            {"value", rational_json(rep.failures.front().value)}};
        r.add(make_check(ps(p) + " c_{np^r} - f c_{np^{r-1}} + p c_{np^{r-2}} = 0 mod p^r", rep.ok(),
                         "f_p = " + std::to_string(rep.trace) + ", " + std::to_string(rep.checked) + " cases", w));
    }
    return out;
}

Outcome dispatch(const Options& o) {
    const std::string& c = o.command;
    if (c == "seq") return cmd_seq(o);
    if (c == "congruence") return cmd_congruence(o);
    if (c == "denom") return cmd_denom(o);
    if (c == "identities") return cmd_identities(o);
    if (c == "closed-forms") return cmd_closed_forms(o);
    if (c == "modp-space") return cmd_modp_space(o);
    if (c == "cartier") return cmd_cartier(o);
    if (c == "frobenius") return cmd_frobenius(o);
    if (c == "asd") return cmd_asd(o);
    throw UsageError("unknown command " + c);
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"seq",        "congruence", "denom",     "identities", "closed-forms",
                                                "modp-space", "cartier",    "frobenius", "asd",        "all"};
    return names;
}

Outcome run(const Options& opt) {
    Outcome out;
    if (opt.command != "all") {
        try {
            out = dispatch(opt);
        } catch (const UsageError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        } catch (const std::domain_error& e) {
            throw UsageError(e.what());
        }
        out.report.command = opt.command;
    } else {
        out.report.command = "all";
        out.report.params = {{"quick", opt.quick}, {"seed", opt.seed}};
        for (const auto& name : command_names()) {
            if (name == "all") continue;
            Options sub;
            sub.command = name;
            sub.quick = opt.quick;
            sub.seed = opt.seed;
            if (name == "congruence") sub.rmax = 2;
            Outcome part = dispatch(sub);
            for (auto& ch : part.report.checks) {
                ch.name = name + ": " + ch.name;
                out.report.add(ch);
            }
            out.report.params[name] = part.report.params;
        }
    }
    // every failure carries a witness
    for (auto& ch : out.report.checks)
        if (ch.status == CheckStatus::Fail && ch.witness.is_null()) ch.witness = {{"details", ch.details}};
    return out;
}

std::string render(const Outcome& out) {
    std::ostringstream os;
    for (const auto& line : out.text) os << line << "\n";
    if (!out.text.empty()) os << "\n";
    std::size_t passed = 0, failed = 0, skipped = 0;
    for (const auto& c : out.report.checks) {
        std::string tag = c.status == CheckStatus::Pass ? "PASS" : c.status == CheckStatus::Fail ? "FAIL" : "SKIP";
        (c.status == CheckStatus::Pass ? passed : c.status == CheckStatus::Fail ? failed : skipped)++;
        os << tag << "  " << c.name;
        if (!c.details.empty()) os << "  [" << c.details << "]";
        if (c.status == CheckStatus::Fail) os << "  witness " << c.witness.dump();
        os << "\n";
    }
    os << out.report.command << ": " << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
    return os.str();
}

}  // namespace ellrec::cli
