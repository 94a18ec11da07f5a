// Acceptance suite: runs every verification criterion at its reference
// grid and tolerance and prints one line per criterion. Exit code 0 only
// when every criterion passes.
//
//   1. order-sequence consistency        exact, 2 <= q <= 25, n <= 40
//   2. primitive-divisor congruences     exact, fully factored rows
//   3. non-primitive valuation bound     exact, 8 <= n <= 40
//   4. cyclotomic height deviation       |dev| <= 5, interval-certified
//   5. smooth-count dominance + oracles  500 seeded instances per variant
//   6. arithmetic-function inequalities  exhaustive to 1e6 + primorials
//   7. gamma-valuation identity          inert p < 1e4, field-order oracle
//   8. residue-class machinery           n <= 1000 vs brute force
//   9. scan companion table              q <= 5, n <= 30, >= 95% factored

#include <cstdio>

#include "ellseq/verify.hpp"

int main() {
    ellseq::VerifyOptions opts;  // reference grids

    using Fn = ellseq::CriterionResult (*)(const ellseq::VerifyOptions&);
    const Fn criteria[] = {
        ellseq::verify_order_consistency,    ellseq::verify_primitive_congruences,
        ellseq::verify_nonprimitive_valuations, ellseq::verify_height_deviation,
        ellseq::verify_sunit_counting,       ellseq::verify_arith_inequalities,
        ellseq::verify_gamma_valuations,     ellseq::verify_crt_classes,
        ellseq::verify_scan_table,
    };

    bool all_pass = true;
    double total = 0;
    for (Fn fn : criteria) {
        ellseq::CriterionResult r = fn(opts);
        all_pass = all_pass && r.pass;
        total += r.seconds;
        std::printf("criterion %d [%s] %-34s %8llu checks  %6.1fs  %s\n", r.id,
                    r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    static_cast<unsigned long long>(r.checks), r.seconds, r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%s (%.1fs total)\n", all_pass ? "all criteria passed" : "FAILURES PRESENT",
                total);
    return all_pass ? 0 : 1;
}
