#pragma once

#include "ellrec/cartier.hpp"
#include "ellrec/recurrence.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ellrec {

using Vec4 = std::array<Fp, 4>;  // (C1, C2, C3, C4)

// c mod p for the special initial data, terms 0..N-1
std::vector<Fp> special_sequence_modp(std::uint64_t p, std::size_t N);
InitialDataFp init_from_vec(const Vec4& v);
Vec4 vec_from_init(const InitialDataFp& d);

// R~/(2t^2) omega over F_p
CurveForm<FpField> xi_family_form(const InitialDataFp& d);

struct LinearForm {
    std::string name;
    Vec4 coeffs;
    Fp operator()(const Vec4& v) const;
};

LinearForm hyperplane_form(std::uint64_t p);
// 65 a' Kc + (a' + 4 b') Kp in terms of C1..C4
LinearForm cartier_form(std::uint64_t p);

struct SigmaBlocks {
    std::uint64_t p = 0;
    std::vector<FpPoly> sigma;  // sigma_m = sum_{j<p} c_{pm+1+j} x^j
    bool tails_satisfy_recurrence = false;
    std::optional<std::size_t> tail_failure;  // m
    bool independent01 = false;
};

SigmaBlocks sigma_blocks(std::uint64_t p, std::size_t M);

struct ExtendabilityResult {
    bool hyperplane = false;
    bool cartier = false;
    bool closed_form = false;  // hyperplane && cartier
    bool series = false;       // exactness of the xi-family form
    bool agree() const { return closed_form == series; }
    bool extendable() const { return closed_form; }
};

ExtendabilityResult extendability_test(const InitialDataFp& d);

struct VpSpace {
    std::uint64_t p = 0;
    std::vector<Vec4> basis;   // special reduction, (c_{p+1}, .., c_{p+4})
    std::vector<Vec4> kernel;  // nullspace of the forms
    std::size_t dimension = 0;
    std::vector<LinearForm> forms;
    bool basis_members = false;
    bool basis_spans = false;
    std::optional<std::size_t> oracle_dimension;  // exhaustive or linear propagation
    bool oracle_agrees = true;
    std::string oracle;
    bool contains(const Vec4& v) const;
};

// exhaustive_limit: primes up to this bound get the exhaustive extend_modp oracle,
// larger ones up to 31 the linear propagation oracle.
VpSpace compute_vp(std::uint64_t p, std::uint64_t exhaustive_limit = 31);

// Terms needed for the oracles to see every obstruction.
std::size_t oracle_length(std::uint64_t p);
// Extendable vectors by running extend_modp on all of F_p^4, branching at the first free index.
std::vector<Vec4> vp_exhaustive(std::uint64_t p, std::size_t N);
// Dimension of the extendable subspace, propagating the recurrence with symbolic free values.
std::size_t vp_linear_dimension(std::uint64_t p, std::size_t N);

struct UnionReport {
    std::uint64_t p = 0;
    std::size_t checked = 0;
    bool exhaustive = false;
    std::size_t equal_count = 0;  // elements with C_p = C_1
    std::vector<Vec4> mismatches;  // equivalence failures
    bool ok() const { return mismatches.empty(); }
};

UnionReport union_check(std::uint64_t p, std::size_t samples = 2000, std::uint64_t seed = 1);

struct WpWitnesses {
    std::uint64_t p = 0;
    std::vector<std::vector<Fp>> sequences;
    bool recurrence_ok = false;
    bool independent = false;
};

WpWitnesses wp_witnesses(std::uint64_t p, std::size_t k, std::size_t length = 0);

// rank of (1,1,0,6), (-31,18,-8,12), (3,2,8,12) over F_p
std::size_t form_vector_rank(std::uint64_t p);

// smallest n <= n_max with v_p(C_n) < 0
std::optional<std::size_t> first_nonintegral(const InitialData& d, std::uint64_t p, std::size_t n_max);

std::string to_string(const Vec4& v);

}  // namespace ellrec
