#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ellseq/factor.hpp"

namespace ellseq {

/// Knobs for the verification suites. Defaults reproduce the reference
/// grids: (q, a) with 2 <= q <= 25, a^2 < 4q, indices n <= 40; exhaustive
/// arithmetic-function sweeps to 1e6; 500 randomized counting instances.
struct VerifyOptions {
    unsigned threads = 0;  // 0: hardware concurrency
    Budget budget;
    unsigned precision_bits = 128;
    uint64_t seed = 0xe115eedULL;
    int64_t grid_q_max = 25;
    uint32_t grid_n_max = 40;
    uint32_t arith_n_max = 1'000'000;
    uint32_t crt_n_max = 1000;
    uint32_t sunit_instances = 500;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    uint64_t checks = 0;  // individual assertions evaluated
    std::string detail;   // coverage summary, or the first failing witnesses
    double seconds = 0.0;
};

CriterionResult verify_order_consistency(const VerifyOptions& opts);      // 1
CriterionResult verify_primitive_congruences(const VerifyOptions& opts);  // 2
CriterionResult verify_nonprimitive_valuations(const VerifyOptions& opts);// 3
CriterionResult verify_height_deviation(const VerifyOptions& opts);       // 4
CriterionResult verify_sunit_counting(const VerifyOptions& opts);         // 5
CriterionResult verify_arith_inequalities(const VerifyOptions& opts);     // 6
CriterionResult verify_gamma_valuations(const VerifyOptions& opts);       // 7
CriterionResult verify_crt_classes(const VerifyOptions& opts);            // 8
CriterionResult verify_scan_table(const VerifyOptions& opts);             // 9

/// suite: "pprim" (2,3,7,8) | "sunits" (5) | "bounds" (4,6) | "all" (1-9).
/// Throws std::invalid_argument for an unknown suite name.
std::vector<CriterionResult> run_verify_suite(const std::string& suite,
                                              const VerifyOptions& opts);

}  // namespace ellseq
