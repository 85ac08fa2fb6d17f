#include "ellrec/modpspace.hpp"

#include "ellrec/linalg.hpp"

#include <random>

namespace ellrec {

namespace {

void require_vp_prime(std::uint64_t p) {
    require_good_prime(p);
    if (p == 3) throw std::invalid_argument("p = 3 is excluded here; use the empirical oracle");
}

Fp q(long a, long b, std::uint64_t p) { return reduce(make_rational(a, b), p); }

std::size_t rank_of(std::uint64_t p, Matrix<FpField> m) { return m.empty() ? 0 : rank(FpField(p), std::move(m)); }

bool proportional(const Vec4& a, const Vec4& b) {
    std::uint64_t p = a[0].modulus();
    Matrix<FpField> m{std::vector<Fp>(a.begin(), a.end()), std::vector<Fp>(b.begin(), b.end())};
    return rank_of(p, m) <= 1;
}

Vec4 combo(const Vec4& a, const Vec4& b, const Fp& s, const Fp& t) {
    Vec4 r;
    for (int i = 0; i < 4; ++i) r[i] = s * a[i] + t * b[i];
    return r;
}

}  // namespace

std::vector<Fp> special_sequence_modp(std::uint64_t p, std::size_t N) {
    std::vector<Fp> out;
    for (const auto& c : extend_rational(special_initial_data(), N)) out.push_back(reduce(c, p));
    return out;
}

InitialDataFp init_from_vec(const Vec4& v) {
    std::uint64_t p = v[0].modulus();
    return {{Fp(0, p), v[0], v[1], v[2], v[3]}};
}

Vec4 vec_from_init(const InitialDataFp& d) { return {d.c[1], d.c[2], d.c[3], d.c[4]}; }

CurveForm<FpField> xi_family_form(const InitialDataFp& d) {
    std::uint64_t p = d.c[1].modulus();
    FpField k(p);
    auto rt = rtilde(k, d);
    FpPoly Rt(k, {rt[0], rt[1], rt[2]});
    return {CurveFunction<FpField>::rational(FpRatFunc(Rt, FpPoly::from_ints(k, {2, 8, 8})), curve_Q(k))};
}

Fp LinearForm::operator()(const Vec4& v) const {
    Fp acc = coeffs[0] * v[0];
    for (int i = 1; i < 4; ++i) acc += coeffs[i] * v[i];
    return acc;
}

LinearForm hyperplane_form(std::uint64_t p) {
    return {"6C4 + C2 + C1", {Fp(1, p), Fp(1, p), Fp(0, p), Fp(6, p)}};
}

LinearForm cartier_form(std::uint64_t p) {
    CartierInvariants ci = alphabeta_quartic(p);
    // Kc = C1/8 + C3, Kp = -33/8 C1 + 2 C2 - C3 on the hyperplane
    Vec4 kc{q(1, 8, p), Fp(0, p), Fp(1, p), Fp(0, p)};
    Vec4 kp{q(-33, 8, p), Fp(2, p), Fp(-1, p), Fp(0, p)};
    Fp a = Fp(65, p) * ci.alpha, b = ci.alpha + Fp(4, p) * ci.beta;
    return {"65 a' Kc + (a' + 4 b') Kp", combo(kc, kp, a, b)};
}

SigmaBlocks sigma_blocks(std::uint64_t p, std::size_t M) {
    require_good_prime(p);
    SigmaBlocks sb;
    sb.p = p;
    std::size_t N = p * (M + 3) + 6;
    auto c = special_sequence_modp(p, N);
    FpField k(p);
    for (std::size_t m = 0; m <= M; ++m)
        sb.sigma.push_back(FpPoly(k, std::vector<Fp>(c.begin() + static_cast<long>(p * m + 1),
                                                     c.begin() + static_cast<long>(p * m + 1 + p))));
    RecurrenceSpec rec = curve_recurrence();
    sb.tails_satisfy_recurrence = true;
    for (std::size_t m = 0; m <= M && sb.tails_satisfy_recurrence; ++m) {
        std::vector<Fp> tail(c.begin() + static_cast<long>(m * p), c.end());
        for (std::size_t n = 0; n + rec.order() < tail.size() && n < 2 * p; ++n)
            if (!recurrence_residual(rec, k, tail, n).is_zero()) {
                sb.tails_satisfy_recurrence = false;
                sb.tail_failure = m;
                break;
            }
    }
    if (sb.sigma.size() >= 2) {
        Matrix<FpField> m{std::vector<Fp>(p, k.zero()), std::vector<Fp>(p, k.zero())};
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t j = 0; j < p; ++j) m[r][j] = sb.sigma[r].coeff(j);
        sb.independent01 = rank_of(p, m) == 2;
    }
    return sb;
}

ExtendabilityResult extendability_test(const InitialDataFp& d) {
    std::uint64_t p = d.c[1].modulus();
    require_vp_prime(p);
    Vec4 v = vec_from_init(d);
    ExtendabilityResult r;
    r.hyperplane = hyperplane_form(p)(v).is_zero();
    r.cartier = cartier_form(p)(v).is_zero();
    r.closed_form = r.hyperplane && r.cartier;
    r.series = exactness_test(xi_family_form(d)).exact;
    return r;
}

bool VpSpace::contains(const Vec4& v) const {
    for (const auto& f : forms)
        if (!f(v).is_zero()) return false;
    return true;
}

std::size_t oracle_length(std::uint64_t p) {
    // one block past the exactness bound of the xi family
    return static_cast<std::size_t>(kExactnessSlack + 6) * p + 6;
}

std::vector<Vec4> vp_exhaustive(std::uint64_t p, std::size_t N) {
    std::vector<Vec4> out;
    ModPOptions opt;
    opt.policy = ChoicePolicy::Exhaustive;
    opt.exhaustive_limit = p + 2;
    for (std::uint64_t a = 0; a < p * p * p * p; ++a) {
        std::uint64_t t = a;
        Vec4 v;
        for (int i = 0; i < 4; ++i) {
            v[i] = Fp(static_cast<std::int64_t>(t % p), p);
            t /= p;
        }
        if (extend_modp(init_from_vec(v), N, opt).consistent) out.push_back(v);
    }
    return out;
}

std::size_t vp_linear_dimension(std::uint64_t p, std::size_t N) {
    RecurrenceSpec rec = curve_recurrence();
    FpField k(p);
    std::size_t ord = rec.order();
    std::size_t cols = 4 + N / p + 2;
    auto unit = [&](std::size_t i) {
        std::vector<Fp> e(cols, k.zero());
        e[i] = k.one();
        return e;
    };
    std::vector<std::vector<Fp>> g{std::vector<Fp>(cols, k.zero())};
    for (std::size_t i = 0; i < 4; ++i) g.push_back(unit(i));
    Matrix<FpField> constraints;
    std::size_t next_free = 4;
    for (std::size_t n = 0; g.size() < N; ++n) {
        Fp lead = k.from_int(rec.eval(ord, static_cast<long>(n)));
        std::vector<Fp> acc(cols, k.zero());
        for (std::size_t j = 0; j < ord; ++j) {
            Fp c = k.from_int(rec.eval(j, static_cast<long>(n)));
            for (std::size_t i = 0; i < cols; ++i) acc[i] += c * g[n + j][i];
        }
        if (!lead.is_zero()) {
            Fp s = -lead.inv();
            for (auto& v : acc) v *= s;
            g.push_back(acc);
        } else {
            constraints.push_back(acc);
            if (next_free >= cols) throw std::logic_error("vp_linear_dimension: too many free indices");
            g.push_back(unit(next_free++));
        }
    }
    auto sols = nullspace(k, constraints, cols);
    Matrix<FpField> proj;
    for (const auto& s : sols) proj.push_back(std::vector<Fp>(s.begin(), s.begin() + 4));
    return rank_of(p, proj);
}

VpSpace compute_vp(std::uint64_t p, std::uint64_t exhaustive_limit) {
    require_vp_prime(p);
    VpSpace vp;
    vp.p = p;
    vp.forms = {hyperplane_form(p), cartier_form(p)};
    FpField k(p);
    Matrix<FpField> fm;
    for (const auto& f : vp.forms) fm.push_back(std::vector<Fp>(f.coeffs.begin(), f.coeffs.end()));
    for (const auto& b : nullspace(k, fm, 4)) vp.kernel.push_back({b[0], b[1], b[2], b[3]});
    vp.dimension = vp.kernel.size();

    auto c = special_sequence_modp(p, p + 5);
    vp.basis.push_back({Fp(1, p), Fp(2, p), q(-1, 8, p), q(-1, 2, p)});
    vp.basis.push_back({c[p + 1], c[p + 2], c[p + 3], c[p + 4]});
    vp.basis_members = vp.contains(vp.basis[0]) && vp.contains(vp.basis[1]);
    Matrix<FpField> bm;
    for (const auto& b : vp.basis) bm.push_back(std::vector<Fp>(b.begin(), b.end()));
    vp.basis_spans = vp.basis_members && rank_of(p, bm) == vp.dimension;

    std::size_t N = oracle_length(p);
    if (p <= exhaustive_limit) {
        auto members = vp_exhaustive(p, N);
        std::size_t expected = 1;
        for (std::size_t i = 0; i < vp.dimension; ++i) expected *= p;
        vp.oracle = "exhaustive";
        vp.oracle_agrees = members.size() == expected;
        for (const auto& v : members) vp.oracle_agrees = vp.oracle_agrees && vp.contains(v);
        Matrix<FpField> mm;
        for (const auto& v : members) mm.push_back(std::vector<Fp>(v.begin(), v.end()));
        vp.oracle_dimension = rank_of(p, mm);
    } else if (p <= 31) {
        vp.oracle = "linear";
        vp.oracle_dimension = vp_linear_dimension(p, N);
        // the kernel must extend as well
        ModPOptions opt;
        opt.policy = ChoicePolicy::Zero;
        bool ok = *vp.oracle_dimension == vp.dimension;
        for (const auto& b : vp.kernel) ok = ok && extend_modp(init_from_vec(b), N, opt).consistent;
        vp.oracle_agrees = ok;
    }
    return vp;
}

UnionReport union_check(std::uint64_t p, std::size_t samples, std::uint64_t seed) {
    VpSpace vp = compute_vp(p, 0);
    UnionReport rep;
    rep.p = p;
    rep.exhaustive = p <= 31;
    const Vec4& special = vp.basis[0];
    const Vec4& b1 = vp.kernel.at(0);
    const Vec4& b2 = vp.kernel.at(1);
    auto visit = [&](const Fp& s, const Fp& t) {
        Vec4 v = combo(b1, b2, s, t);
        auto ext = extend_modp(init_from_vec(v), p + 1);
        bool equal = ext.values.at(p) == ext.values.at(1);
        if (equal) ++rep.equal_count;
        if (equal != proportional(v, special)) rep.mismatches.push_back(v);
        ++rep.checked;
    };
    if (rep.exhaustive) {
        for (std::uint64_t s = 0; s < p; ++s)
            for (std::uint64_t t = 0; t < p; ++t)
                visit(Fp(static_cast<std::int64_t>(s), p), Fp(static_cast<std::int64_t>(t), p));
    } else {
        std::mt19937_64 rng(seed ^ p);
        std::uniform_int_distribution<std::uint64_t> d(0, p - 1);
        for (std::size_t i = 0; i < samples; ++i)
            visit(Fp(static_cast<std::int64_t>(d(rng)), p), Fp(static_cast<std::int64_t>(d(rng)), p));
    }
    return rep;
}

WpWitnesses wp_witnesses(std::uint64_t p, std::size_t k, std::size_t length) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("wp_witnesses needs a prime");
    if (length == 0) length = (k + 4) * p + 6;
    WpWitnesses w;
    w.p = p;
    FpField k_(p);
    std::vector<Fp> base;
    if (p == 2) {
        base.assign(length, Fp(0, 2));
        base[0] = base[1] = Fp(1, 2);
    } else {
        base = special_sequence_modp(p, length);
    }
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<Fp> s(length, k_.zero());
        for (std::size_t n = j * p; n < length; ++n) s[n] = base[n - j * p];
        w.sequences.push_back(s);
    }
    RecurrenceSpec rec = curve_recurrence();
    w.recurrence_ok = true;
    for (const auto& s : w.sequences)
        for (std::size_t n = 0; n + rec.order() < length; ++n)
            if (!recurrence_residual(rec, k_, s, n).is_zero()) w.recurrence_ok = false;
    w.independent = rank_of(p, w.sequences) == k;
    return w;
}

std::size_t form_vector_rank(std::uint64_t p) {
    FpField k(p);
    Matrix<FpField> m{{k.from_int(1), k.from_int(1), k.from_int(0), k.from_int(6)},
                      {k.from_int(-31), k.from_int(18), k.from_int(-8), k.from_int(12)},
                      {k.from_int(3), k.from_int(2), k.from_int(8), k.from_int(12)}};
    return rank_of(p, m);
}

std::optional<std::size_t> first_nonintegral(const InitialData& d, std::uint64_t p, std::size_t n_max) {
    auto c = extend_rational(d, n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n)
        if (!is_p_integral(c[n], p)) return n;
    return std::nullopt;
}

std::string to_string(const Vec4& v) {
    std::string s = "(";
    for (int i = 0; i < 4; ++i) s += (i ? ", " : "") + std::to_string(v[i].value());
    return s + ")";
}

}  // namespace ellrec
