#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

using namespace ellrec;

int main(int argc, char** argv) {
    CLI::App app{"ellrec: checks for a P-recursive sequence attached to an elliptic curve"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    cli::Options opt;
    std::uint64_t p = 0, pmax = 0;
    std::size_t n = 0, nmax = 0, kmax = 0;
    unsigned rmax = 0;
    std::string init, curve, json_path;
    auto* o_p = app.add_option("--p", p, "prime");
    auto* o_pmax = app.add_option("--pmax", pmax, "largest prime scanned");
    auto* o_n = app.add_option("--n", n, "number of terms");
    auto* o_nmax = app.add_option("--nmax", nmax, "index bound");
    auto* o_rmax = app.add_option("--rmax", rmax, "largest exponent r");
    auto* o_kmax = app.add_option("--kmax", kmax, "bound on k");
    auto* o_init = app.add_option("--init", init, "initial data C0,C1,C2,C3,C4 (or C1..C4), rationals");
    auto* o_curve = app.add_option("--curve", curve, "Weierstrass curve y^2 = x^3 + Ax + B as A,B");
    app.add_option("--json", json_path, "write the report as JSON to this path");
    app.add_option("--seed", opt.seed, "seed for sampled checks");
    app.add_flag("--quick", opt.quick, "smaller ranges");

    const std::map<std::string, std::string> about{
        {"seq", "print c_0..c_{n-1} for the given initial data"},
        {"congruence", "c_{kp^{r+1}} = c_{kp^r} mod p^{r+1}"},
        {"denom", "denominator profile and the d 2^{2n} lcm(1..n) bound"},
        {"identities", "algebraic identities on the curve, ODE, quadrature"},
        {"closed-forms", "binomial closed forms for b_n and l_n"},
        {"modp-space", "the space V_p of extendable initial data mod p"},
        {"cartier", "Cartier invariants and the exactness congruences"},
        {"frobenius", "point counts and alpha_p = trace mod p"},
        {"asd", "Atkin-Swinnerton-Dyer congruences for a Weierstrass curve"},
        {"all", "every command above"},
    };
    for (const auto& name : cli::command_names()) {
        auto* sub = app.add_subcommand(name, about.at(name));
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    opt.command = app.get_subcommands().front()->get_name();
    if (*o_p) opt.p = p;
    if (*o_pmax) opt.pmax = pmax;
    if (*o_n) opt.n = n;
    if (*o_nmax) opt.nmax = nmax;
    if (*o_rmax) opt.rmax = rmax;
    if (*o_kmax) opt.kmax = kmax;
    if (*o_init) opt.init = init;
    if (*o_curve) opt.curve = curve;

    cli::Outcome out;
    try {
        out = cli::run(opt);
    } catch (const cli::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }
    std::cout << cli::render(out);
    if (!json_path.empty()) {
        std::ofstream f(json_path);
        if (!f) {
            std::cerr << "error: cannot write " << json_path << "\n";
            return 2;
        }
        f << to_json(out.report).dump(2) << "\n";
    }
    return out.report.passed() ? 0 : 1;
}
