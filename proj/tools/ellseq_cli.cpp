// Command-line front end: order/scan/verify queries over the group-order
// sequences N_n = (alpha^n - 1)(conj(alpha)^n - 1), their primitive
// divisors, counting functions, and the explicit inequality checkers.
//
// Exit codes: 0 success, 1 violated assertion, 2 usage error, 3 budget
// exhausted (partial output produced).

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ellseq/arith.hpp"
#include "ellseq/bounds.hpp"
#include "ellseq/errors.hpp"
#include "ellseq/primitive.hpp"
#include "ellseq/scan.hpp"
#include "ellseq/sequence.hpp"
#include "ellseq/sunit.hpp"
#include "ellseq/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

// --budget-ms is translated to deterministic work units at a fixed rate
// so identical invocations produce identical output on any machine.
constexpr uint64_t kRhoItersPerMs = 20'000;

struct GlobalOptions {
    bool json = false;
    uint64_t budget_ms = 0;  // 0: library default
    unsigned precision_bits = 128;
    uint64_t seed = 0xe115eedULL;
    unsigned threads = 0;
};

ellseq::Budget make_budget(const GlobalOptions& g) {
    ellseq::Budget b;
    if (g.budget_ms > 0) b.rho_iterations = g.budget_ms * kRhoItersPerMs;
    return b;
}

unsigned env_threads() {
    if (const char* s = std::getenv("ELLSEQ_THREADS")) {
        return static_cast<unsigned>(std::strtoul(s, nullptr, 10));
    }
    return 0;
}

uint64_t env_budget_ms() {
    if (const char* s = std::getenv("ELLSEQ_BUDGET_MS")) {
        return std::strtoull(s, nullptr, 10);
    }
    return 0;
}

int cmd_order(const GlobalOptions& g, int64_t q, int64_t a, uint32_t n) {
    ellseq::FrobeniusParams params = ellseq::FrobeniusParams::create(q, a);
    ellseq::Budget budget = make_budget(g);

    ellseq::OrderValue ov = ellseq::order_value(params, n);
    mpz_class psi = ellseq::cyclo_norm(params, n);
    ellseq::PrimitiveScan scan = ellseq::primitive_primes(params, n, budget);
    ellseq::GammaClass gamma = ellseq::gamma_class(params);

    if (g.json) {
        nlohmann::json j;
        j["q"] = q;
        j["a"] = a;
        j["n"] = n;
        j["t_n"] = ov.t.get_str();
        j["N_n"] = ov.N.get_str();
        j["w_n"] = ov.w.get_str();
        j["psi_n"] = psi.get_str();
        j["gamma_degenerate"] = gamma.order_of_unity != 0;
        nlohmann::json factors = nlohmann::json::array();
        for (const auto& [p, e] : scan.order_factored.factors) {
            factors.push_back({{"p", p.get_str()}, {"e", e}});
        }
        j["factors"] = factors;
        j["cofactor"] = scan.order_factored.cofactor.get_str();
        j["complete"] = scan.complete;
        nlohmann::json prim = nlohmann::json::array();
        for (const auto& rec : scan.primitive) {
            nlohmann::json e;
            e["p"] = rec.p.get_str();
            e["kind"] = ellseq::to_string(rec.kind);
            if (rec.gamma_rank) e["gamma_rank"] = *rec.gamma_rank;
            prim.push_back(e);
        }
        j["primitive"] = prim;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "q = " << q << ", a = " << a << ", n = " << n << "\n";
        if (gamma.order_of_unity != 0)
            std::cout << "warning: gamma = conj(alpha)/alpha is a root of unity (order "
                      << gamma.order_of_unity << "); gamma-based operations are disabled\n";
        std::cout << "t_n   = " << ov.t.get_str() << "\n";
        std::cout << "N_n   = " << ov.N.get_str() << "\n";
        std::cout << "Psi_n = " << psi.get_str() << "\n";
        std::cout << "N_n   = ";
        for (size_t i = 0; i < scan.order_factored.factors.size(); ++i) {
            const auto& [p, e] = scan.order_factored.factors[i];
            if (i) std::cout << " * ";
            std::cout << p.get_str();
            if (e > 1) std::cout << "^" << e;
        }
        if (scan.order_factored.cofactor != 1)
            std::cout << " * [" << scan.order_factored.cofactor.get_str() << " "
                      << (scan.order_factored.cofactor_status ==
                                  ellseq::CofactorStatus::probable_prime
                              ? "probable prime"
                              : "composite, unfactored")
                      << "]";
        if (scan.order_factored.factors.empty() && scan.order_factored.cofactor == 1)
            std::cout << "1";
        std::cout << "\n";
        if (!scan.primitive.empty()) {
            std::cout << "primitive primes:";
            for (const auto& rec : scan.primitive) {
                std::cout << " " << rec.p.get_str() << "(" << ellseq::to_string(rec.kind);
                if (rec.gamma_rank) std::cout << ",g=" << *rec.gamma_rank;
                std::cout << ")";
            }
            std::cout << "\n";
        }
    }
    return scan.complete ? kExitOk : kExitBudget;
}

int cmd_verify(const GlobalOptions& g, const std::string& suite, uint32_t n_max_arith,
               int64_t q_max, uint32_t n_max_grid) {
    ellseq::VerifyOptions opts;
    opts.budget = make_budget(g);
    opts.precision_bits = g.precision_bits < 128 ? 128 : g.precision_bits;
    opts.seed = g.seed;
    opts.threads = g.threads;
    opts.arith_n_max = n_max_arith;
    opts.grid_q_max = q_max;
    opts.grid_n_max = n_max_grid;

    auto results = ellseq::run_verify_suite(suite, opts);
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        if (g.json) {
            nlohmann::json j;
            j["id"] = r.id;
            j["name"] = r.name;
            j["pass"] = r.pass;
            j["checks"] = r.checks;
            j["detail"] = r.detail;
            j["seconds"] = r.seconds;
            std::cout << j.dump() << "\n";
        } else {
            std::printf("[%s] %d. %s  (%llu checks, %.1fs)\n", r.pass ? "PASS" : "FAIL", r.id,
                        r.name.c_str(), static_cast<unsigned long long>(r.checks), r.seconds);
            std::printf("       %s\n", r.detail.c_str());
        }
    }
    return all_pass ? kExitOk : kExitAssertion;
}

int cmd_sunit_theta(const GlobalOptions& g, double x, const std::vector<uint64_t>& primes) {
    ellseq::SUnitInstance inst{x, primes};
    std::sort(inst.primes.begin(), inst.primes.end());
    uint64_t exact = ellseq::theta_exact(inst);

    auto bound_or_skip = [&](ellseq::ThetaVariant v) -> std::optional<double> {
        try {
            return ellseq::theta_bound(inst, v);
        } catch (const ellseq::PreconditionViolation&) {
            return std::nullopt;
        }
    };
    auto triv = bound_or_skip(ellseq::ThetaVariant::trivial);
    auto large = bound_or_skip(ellseq::ThetaVariant::large_primes);
    auto gen = bound_or_skip(ellseq::ThetaVariant::general);

    if (g.json) {
        nlohmann::json j;
        j["x"] = x;
        j["k"] = inst.k();
        j["theta"] = exact;
        if (triv) j["bound_trivial"] = *triv;
        if (large) j["bound_large_primes"] = *large;
        if (gen) j["bound_general"] = *gen;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "Theta(" << x << ", S) = " << exact << " with |S| = " << inst.k() << "\n";
        if (triv) std::cout << "  trivial bound       = " << *triv << "\n";
        if (large) std::cout << "  large-primes bound  = " << *large << "\n";
        if (gen) std::cout << "  general bound       = " << *gen << "\n";
    }
    bool dominated = (!triv || exact <= *triv) && (!large || exact <= *large) &&
                     (!gen || exact <= *gen);
    return dominated ? kExitOk : kExitAssertion;
}

int cmd_crt_class(const GlobalOptions& g, uint32_t n, uint32_t d, const std::string& branch) {
    std::optional<ellseq::ParityBranch> pb;
    if (branch == "odd") pb = ellseq::ParityBranch::odd_modulus;
    if (branch == "p3mod4") pb = ellseq::ParityBranch::p3mod4;
    if (branch == "p1mod4") pb = ellseq::ParityBranch::p1mod4;
    ellseq::CrtClass cls = ellseq::crt_class(n, d, pb);
    if (g.json) {
        nlohmann::json j;
        j["n"] = cls.n;
        j["d"] = cls.d;
        j["modulus"] = cls.modulus;
        j["residue"] = cls.residue.get_str();
        j["branch"] = ellseq::to_string(cls.branch);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "residue " << cls.residue.get_str() << " mod " << cls.modulus
                  << "  (n = " << cls.n << ", d = " << cls.d << ", branch "
                  << ellseq::to_string(cls.branch) << ")\n";
    }
    return kExitOk;
}

int cmd_bound_report(const GlobalOptions& g, int64_t q, int64_t a, uint32_t n) {
    ellseq::FrobeniusParams params = ellseq::FrobeniusParams::create(q, a);
    ellseq::Budget budget = make_budget(g);

    std::vector<ellseq::BoundReport> reports;
    reports.push_back(ellseq::cyclo_height_check(params, n, g.precision_bits));
    {
        ellseq::ArithProfile pr = ellseq::profile(mpz_class(n), budget);
        for (auto& r : ellseq::arith_inequality_reports(pr, g.precision_bits))
            reports.push_back(std::move(r));
    }
    try {
        reports.push_back(ellseq::case_split_report(params, n, budget));
    } catch (const ellseq::IncompleteFactorization&) {
    }
    if (n >= 16 && !ellseq::gamma_is_degenerate(params)) {
        try {
            reports.push_back(ellseq::inert_prime_count_report(params, n, budget));
        } catch (const ellseq::IncompleteFactorization&) {
        }
    }
    if (!ellseq::gamma_is_degenerate(params)) {
        for (auto& r : ellseq::gamma_valuation_vs_bound(params, n, budget))
            reports.push_back(std::move(r));
    }

    ellseq::Thresholds th = ellseq::thresholds(params, budget);

    if (g.json) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& r : reports) {
            nlohmann::json j;
            j["name"] = r.name;
            j["lhs"] = r.lhs;
            j["rhs"] = r.rhs;
            j["observed"] = ellseq::to_string(r.observed);
            j["holds"] = ellseq::to_string(r.holds);
            j["in_proven_range"] = r.in_proven_range;
            j["slack"] = r.slack;
            for (const auto& [k, v] : r.details) j["details"][k] = v;
            out.push_back(j);
        }
        nlohmann::json j;
        j["reports"] = out;
        j["n0"] = ellseq::to_string(th.n0);
        j["p0_quadratic"] = ellseq::to_string(th.p0_quad);
        j["p0_rational"] = ellseq::to_string(th.p0_rat);
        j["fundamental_disc"] = th.fundamental_disc.get_str();
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("%-24s %14s %14s %-8s %-14s range\n", "inequality", "lhs", "rhs", "obs",
                    "holds");
        for (const auto& r : reports) {
            std::printf("%-24s %14.6g %14.6g %-8s %-14s %s\n", r.name.c_str(), r.lhs, r.rhs,
                        ellseq::to_string(r.observed), ellseq::to_string(r.holds),
                        r.in_proven_range ? "proven" : "observational");
        }
        std::cout << "thresholds: n0 = " << ellseq::to_string(th.n0)
                  << ", p0(quadratic) = " << ellseq::to_string(th.p0_quad)
                  << ", p0(rational, d=2) = " << ellseq::to_string(th.p0_rat)
                  << ", D_K = " << th.fundamental_disc.get_str() << "\n";
    }

    for (const auto& r : reports) {
        if (r.in_proven_range && r.holds == ellseq::Verdict::fail) return kExitAssertion;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"group-order sequences over finite-field extensions: exact computation, "
                 "primitive-divisor analysis, and inequality verification"};
    app.set_config("--config", "", "flat key=value config file; flags override file values");

    GlobalOptions g;
    g.threads = env_threads();
    g.budget_ms = env_budget_ms();
    app.add_flag("--json", g.json, "machine-readable output");
    app.add_option("--budget-ms", g.budget_ms,
                   "factoring budget, milliseconds (converted to deterministic work units)");
    app.add_option("--precision-bits", g.precision_bits, "working precision for bound checks")
        ->check(CLI::Range(64u, 4096u));
    app.add_option("--seed", g.seed, "seed for randomized verification suites");
    app.add_option("--threads", g.threads, "worker threads (0 = hardware)");

    // order
    auto* order = app.add_subcommand("order", "t_n, N_n, Psi_n and the factorization of N_n");
    int64_t q = 2, a = 1;
    uint32_t n = 1;
    order->add_option("--q", q, "field size, q >= 2")->required();
    order->add_option("--a", a, "trace parameter, a^2 < 4q")->required();
    order->add_option("--n", n, "extension degree, n >= 1")->required();

    // scan
    auto* scan = app.add_subcommand("scan", "grid scan emitting one row per (q, a, n)");
    ellseq::ScanConfig sc;
    std::string fmt = "csv";
    scan->add_option("--q-min", sc.q_min, "smallest q");
    scan->add_option("--q-max", sc.q_max, "largest q");
    std::string a_spec = "all";
    scan->add_option("--a", a_spec, "\"all\" or a comma-separated list of traces");
    scan->add_option("--n-min", sc.n_min, "smallest n");
    scan->add_option("--n-max", sc.n_max, "largest n");
    scan->add_option("--format", fmt, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    scan->add_option("--out", sc.out_path, "output path (stdout if omitted)");
    scan->add_option("--checkpoint", sc.checkpoint_path, "checkpoint file path");
    scan->add_flag("--resume", sc.resume, "resume from the checkpoint file");
    scan->add_option("--max-rows", sc.max_rows_this_run,
                     "stop after this many rows (testing aid; 0 = run to completion)");

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all";
    uint32_t n_max_arith = 1'000'000;
    int64_t vq_max = 25;
    uint32_t vn_max = 40;
    verify->add_option("suite", suite, "pprim | sunits | bounds | all")
        ->check(CLI::IsMember({"pprim", "sunits", "bounds", "all"}));
    verify->add_option("--n-max", n_max_arith, "sweep limit for the arithmetic inequalities");
    verify->add_option("--grid-q-max", vq_max, "largest q of the (q, a) grid");
    verify->add_option("--grid-n-max", vn_max, "largest index of the (q, a) grid");

    // sunit-theta
    auto* sunit = app.add_subcommand("sunit-theta", "exact smooth-number count and its bounds");
    double x = 10;
    std::vector<uint64_t> sprimes;
    sunit->add_option("--x", x, "count S-units up to x")->required();
    sunit->add_option("--primes", sprimes, "the set S")->delimiter(',');

    // crt-class
    auto* crt = app.add_subcommand("crt-class", "residue class of the +-1 congruence system");
    uint32_t cn = 15, cd = 3;
    std::string branch = "auto";
    crt->add_option("--n", cn, "index n")->required();
    crt->add_option("--d", cd, "unitary divisor of the modulus")->required();
    crt->add_option("--branch", branch, "auto | odd | p3mod4 | p1mod4")
        ->check(CLI::IsMember({"auto", "odd", "p3mod4", "p1mod4"}));

    // bound-report
    auto* bound = app.add_subcommand("bound-report", "inequality report table for one (q, a, n)");
    int64_t bq = 2, ba = 1;
    uint32_t bn = 12;
    bound->add_option("--q", bq)->required();
    bound->add_option("--a", ba)->required();
    bound->add_option("--n", bn)->required();

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*order) return cmd_order(g, q, a, n);
        if (*scan) {
            if (a_spec != "all") {
                sc.a_all = false;
                std::stringstream ss(a_spec);
                std::string item;
                while (std::getline(ss, item, ',')) sc.a_list.push_back(std::stoll(item));
            }
            sc.format = fmt == "json" ? ellseq::ScanFormat::json : ellseq::ScanFormat::csv;
            sc.budget = make_budget(g);
            sc.precision_bits = g.precision_bits;
            sc.seed = g.seed;
            sc.threads = g.threads;
            ellseq::ScanOutcome outcome = ellseq::run_scan(sc);
            std::cerr << "scan: wrote " << outcome.rows_written << " rows ("
                      << outcome.rows_total << " total)\n";
            return kExitOk;
        }
        if (*verify) return cmd_verify(g, suite, n_max_arith, vq_max, vn_max);
        if (*sunit) return cmd_sunit_theta(g, x, sprimes);
        if (*crt) return cmd_crt_class(g, cn, cd, branch == "auto" ? "" : branch);
        if (*bound) return cmd_bound_report(g, bq, ba, bn);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ellseq::FactorizationExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ellseq::IncompleteFactorization& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAssertion;
    }
    return kExitUsage;
}
