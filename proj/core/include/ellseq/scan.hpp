#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellseq/factor.hpp"
#include "ellseq/quad.hpp"

namespace ellseq {

enum class ScanFormat { csv, json };

/// One scan job: the (q, a, n) grid, work limits, and output shape.
/// Output is deterministic given the config (including the seed), and a
/// checkpointed run resumed after interruption is byte-identical to an
/// uninterrupted one.
struct ScanConfig {
    int64_t q_min = 2;
    int64_t q_max = 5;
    bool a_all = true;               // every a with a^2 < 4q
    std::vector<int64_t> a_list;     // used when a_all is false
    uint32_t n_min = 1;
    uint32_t n_max = 30;
    Budget budget;
    ScanFormat format = ScanFormat::csv;
    std::string out_path;            // empty: write to stdout, no checkpointing
    unsigned precision_bits = 128;
    uint64_t seed = 0;
    unsigned threads = 0;            // 0: hardware concurrency
    uint32_t bit_cap = 4096;         // reject configs where q^n exceeds this many bits
    std::string checkpoint_path;     // empty: no checkpoint file
    bool resume = false;
    uint64_t max_rows_this_run = 0;  // 0: unlimited (nonzero simulates interruption)
};

struct ScanPrimitiveEntry {
    std::string p;
    std::string kind;                    // split | inert | ramified
    uint32_t rank = 0;
    std::optional<uint32_t> gamma_rank;  // inert, odd p, nondegenerate gamma
    bool k_primitive = false;
};

struct ScanRow {
    int64_t q = 0;
    int64_t a = 0;
    uint32_t n = 0;
    std::string t_n;
    std::string N_n;                  // decimal; can run to thousands of digits
    std::string factor_summary;       // "p^e p^e ..."
    std::string cofactor;             // empty when the factorization is complete
    std::string cofactor_status;      // unit | probable_prime | composite_unknown
    bool complete = false;
    std::string P;                    // largest known prime factor
    double P_over_n = 0.0;
    std::optional<double> log_bound;  // log-space divisor bound, defined for n >= 16
    std::vector<ScanPrimitiveEntry> primitive;   // records with rank = n
    std::optional<double> split_logsum;          // case-split sums, n >= 10 and complete
    std::optional<double> inert_logsum;
};

/// FNV-1a over the canonical config serialization; stable across runs.
uint64_t config_hash(const ScanConfig& config);

/// All (q, a) pairs the config admits, sorted by (q, a).
std::vector<std::pair<int64_t, int64_t>> admissible_pairs(const ScanConfig& config);

ScanRow compute_scan_row(const FrobeniusParams& params, uint32_t n, const Budget& budget);

std::string csv_header();
std::string encode_csv_row(const ScanRow& row);
std::string encode_json_row(const ScanRow& row);
ScanRow decode_csv_row(const std::string& line);
ScanRow decode_json_row(const std::string& line);

struct ScanOutcome {
    uint64_t rows_written = 0;   // in this run
    uint64_t rows_total = 0;     // including rows restored via checkpoint
    bool finished = false;       // false when max_rows_this_run stopped the run
};

/// Runs the scan. Throws std::invalid_argument for malformed configs
/// (caller maps that to the usage exit code).
ScanOutcome run_scan(const ScanConfig& config);

/// The in-memory row set for a config (used by verification drivers).
std::vector<ScanRow> compute_scan_rows(const ScanConfig& config);

}  // namespace ellseq
