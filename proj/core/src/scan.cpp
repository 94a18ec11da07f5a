#include "ellseq/scan.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ellseq/bounds.hpp"
#include "ellseq/errors.hpp"
#include "ellseq/primitive.hpp"
#include "ellseq/sequence.hpp"

namespace ellseq {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string canonical_config(const ScanConfig& c) {
    std::ostringstream os;
    os << "q:" << c.q_min << ":" << c.q_max << ";a:";
    if (c.a_all) {
        os << "all";
    } else {
        for (auto a : c.a_list) os << a << ",";
    }
    os << ";n:" << c.n_min << ":" << c.n_max;
    os << ";trial:" << c.budget.trial_bound << ";rho:" << c.budget.rho_iterations;
    os << ";fmt:" << (c.format == ScanFormat::csv ? "csv" : "json");
    os << ";prec:" << c.precision_bits << ";seed:" << c.seed << ";bits:" << c.bit_cap;
    return os.str();
}

std::string csv_quote(const std::string& field) {
    bool needs = field.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += "\"\"";
        out += ch;
    }
    out += "\"";
    return out;
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string encode_primitive_list(const std::vector<ScanPrimitiveEntry>& entries) {
    std::string out;
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i) out += ";";
        const auto& e = entries[i];
        out += e.p + ":" + e.kind + ":z" + std::to_string(e.rank);
        if (e.gamma_rank) out += ":g" + std::to_string(*e.gamma_rank);
        if (e.k_primitive) out += ":K";
    }
    return out;
}

std::vector<ScanPrimitiveEntry> decode_primitive_list(const std::string& s) {
    std::vector<ScanPrimitiveEntry> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        ScanPrimitiveEntry e;
        std::stringstream fs(item);
        std::string part;
        int idx = 0;
        while (std::getline(fs, part, ':')) {
            if (idx == 0) {
                e.p = part;
            } else if (idx == 1) {
                e.kind = part;
            } else if (part.size() > 1 && part[0] == 'z') {
                e.rank = static_cast<uint32_t>(std::stoul(part.substr(1)));
            } else if (part.size() > 1 && part[0] == 'g') {
                e.gamma_rank = static_cast<uint32_t>(std::stoul(part.substr(1)));
            } else if (part == "K") {
                e.k_primitive = true;
            }
            ++idx;
        }
        out.push_back(std::move(e));
    }
    return out;
}

void validate_config(const ScanConfig& c) {
    if (c.q_min < 2) throw std::invalid_argument("scan: q must be >= 2");
    if (c.q_max < c.q_min) throw std::invalid_argument("scan: empty q range");
    if (c.n_max >= c.n_min && c.n_min < 1)
        throw std::invalid_argument("scan: n must be >= 1");
    double bits = c.n_max * std::log2(static_cast<double>(c.q_max));
    if (bits > c.bit_cap)
        throw std::invalid_argument("scan: q^n exceeds the configured bit cap");
}

ScanRow build_row(PsiFactorCache& cache, uint32_t n) {
    const FrobeniusParams& params = cache.params();
    ScanRow row;
    row.q = params.q.get_si();
    row.a = params.a.get_si();
    row.n = n;

    OrderValue ov = order_value(params, n);
    row.t_n = ov.t.get_str();
    row.N_n = ov.N.get_str();

    PrimitiveScan scan = primitive_primes(cache, n);
    row.complete = scan.complete;

    std::string fs;
    for (size_t k = 0; k < scan.order_factored.factors.size(); ++k) {
        const auto& [p, e] = scan.order_factored.factors[k];
        if (k) fs += " ";
        fs += p.get_str();
        if (e > 1) fs += "^" + std::to_string(e);
    }
    row.factor_summary = fs;
    if (scan.order_factored.cofactor != 1)
        row.cofactor = scan.order_factored.cofactor.get_str();
    switch (scan.order_factored.cofactor_status) {
        case CofactorStatus::unit: row.cofactor_status = "unit"; break;
        case CofactorStatus::probable_prime: row.cofactor_status = "probable_prime"; break;
        case CofactorStatus::composite_unknown:
            row.cofactor_status = "composite_unknown";
            break;
    }

    auto [P, complete_p] = largest_known_prime_factor(scan.order_factored);
    row.P = P.get_str();
    row.P_over_n = mpz_get_d(P.get_mpz_t()) / static_cast<double>(n);
    if (n >= 16) row.log_bound = prime_divisor_log_bound(n);

    for (const auto& rec : scan.primitive) {
        ScanPrimitiveEntry e;
        e.p = rec.p.get_str();
        e.kind = to_string(rec.kind);
        e.rank = rec.rank.value_or(0);
        e.gamma_rank = rec.gamma_rank;
        e.k_primitive = rec.k_primitive;
        row.primitive.push_back(std::move(e));
    }

    if (scan.complete) {
        double A = 0, B = 0;
        auto tally = [&](const ValuationRecord& rec) {
            if (!rec.k_primitive || rec.nu_Psi_n == 0) return;
            double lp = std::log(mpz_get_d(rec.p.get_mpz_t()));
            if (rec.kind == PrimeKind::split) A += rec.nu_Psi_n * lp;
            if (rec.kind == PrimeKind::inert) B += rec.nu_Psi_n * lp;
        };
        for (const auto& rec : scan.primitive) tally(rec);
        for (const auto& rec : scan.nonprimitive) tally(rec);
        row.split_logsum = A;
        row.inert_logsum = B;
    }
    return row;
}

}  // namespace

uint64_t config_hash(const ScanConfig& config) {
    std::string s = canonical_config(config);
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) h = (h ^ ch) * 0x100000001b3ull;
    return h;
}

std::vector<std::pair<int64_t, int64_t>> admissible_pairs(const ScanConfig& config) {
    std::vector<std::pair<int64_t, int64_t>> pairs;
    for (int64_t q = config.q_min; q <= config.q_max; ++q) {
        if (config.a_all) {
            for (int64_t a = -q; a <= q; ++a) {
                if (a * a < 4 * q) pairs.emplace_back(q, a);
            }
        } else {
            for (int64_t a : config.a_list) {
                if (a * a < 4 * q) pairs.emplace_back(q, a);
            }
        }
    }
    return pairs;
}

ScanRow compute_scan_row(const FrobeniusParams& params, uint32_t n, const Budget& budget) {
    PsiFactorCache cache(params, budget);
    return build_row(cache, n);
}

std::string csv_header() {
    return "q,a,n,t_n,N_n,factors,cofactor,cofactor_status,complete,P,P_over_n,log_bound,"
           "primitive_primes,split_logsum,inert_logsum";
}

std::string encode_csv_row(const ScanRow& row) {
    std::ostringstream os;
    os << row.q << "," << row.a << "," << row.n << ",";
    os << csv_quote(row.t_n) << "," << csv_quote(row.N_n) << ",";
    os << csv_quote(row.factor_summary) << "," << csv_quote(row.cofactor) << ","
       << row.cofactor_status << ",";
    os << (row.complete ? "1" : "0") << "," << csv_quote(row.P) << ","
       << format_double(row.P_over_n) << ",";
    os << (row.log_bound ? format_double(*row.log_bound) : "") << ",";
    os << csv_quote(encode_primitive_list(row.primitive)) << ",";
    os << (row.split_logsum ? format_double(*row.split_logsum) : "") << ",";
    os << (row.inert_logsum ? format_double(*row.inert_logsum) : "");
    return os.str();
}

std::string encode_json_row(const ScanRow& row) {
    nlohmann::json j;
    j["q"] = row.q;
    j["a"] = row.a;
    j["n"] = row.n;
    j["t_n"] = row.t_n;
    j["N_n"] = row.N_n;
    j["factors"] = row.factor_summary;
    j["cofactor"] = row.cofactor;
    j["cofactor_status"] = row.cofactor_status;
    j["complete"] = row.complete;
    j["P"] = row.P;
    j["P_over_n"] = format_double(row.P_over_n);
    j["log_bound"] = row.log_bound ? format_double(*row.log_bound) : "";
    j["primitive_primes"] = encode_primitive_list(row.primitive);
    j["split_logsum"] = row.split_logsum ? format_double(*row.split_logsum) : "";
    j["inert_logsum"] = row.inert_logsum ? format_double(*row.inert_logsum) : "";
    return j.dump();
}

ScanRow decode_csv_row(const std::string& line) {
    auto f = csv_split(line);
    if (f.size() != 15) throw std::invalid_argument("decode_csv_row: wrong field count");
    ScanRow row;
    row.q = std::stoll(f[0]);
    row.a = std::stoll(f[1]);
    row.n = static_cast<uint32_t>(std::stoul(f[2]));
    row.t_n = f[3];
    row.N_n = f[4];
    row.factor_summary = f[5];
    row.cofactor = f[6];
    row.cofactor_status = f[7];
    row.complete = f[8] == "1";
    row.P = f[9];
    row.P_over_n = std::stod(f[10]);
    if (!f[11].empty()) row.log_bound = std::stod(f[11]);
    row.primitive = decode_primitive_list(f[12]);
    if (!f[13].empty()) row.split_logsum = std::stod(f[13]);
    if (!f[14].empty()) row.inert_logsum = std::stod(f[14]);
    return row;
}

ScanRow decode_json_row(const std::string& line) {
    nlohmann::json j = nlohmann::json::parse(line);
    ScanRow row;
    row.q = j.at("q").get<int64_t>();
    row.a = j.at("a").get<int64_t>();
    row.n = j.at("n").get<uint32_t>();
    row.t_n = j.at("t_n").get<std::string>();
    row.N_n = j.at("N_n").get<std::string>();
    row.factor_summary = j.at("factors").get<std::string>();
    row.cofactor = j.at("cofactor").get<std::string>();
    row.cofactor_status = j.at("cofactor_status").get<std::string>();
    row.complete = j.at("complete").get<bool>();
    row.P = j.at("P").get<std::string>();
    row.P_over_n = std::stod(j.at("P_over_n").get<std::string>());
    std::string lb = j.at("log_bound").get<std::string>();
    if (!lb.empty()) row.log_bound = std::stod(lb);
    row.primitive = decode_primitive_list(j.at("primitive_primes").get<std::string>());
    std::string sl = j.at("split_logsum").get<std::string>();
    if (!sl.empty()) row.split_logsum = std::stod(sl);
    std::string il = j.at("inert_logsum").get<std::string>();
    if (!il.empty()) row.inert_logsum = std::stod(il);
    return row;
}

std::vector<ScanRow> compute_scan_rows(const ScanConfig& config) {
    validate_config(config);
    auto pairs = admissible_pairs(config);
    const uint32_t per_pair = config.n_max >= config.n_min
                                  ? (config.n_max - config.n_min + 1)
                                  : 0;
    std::vector<ScanRow> rows(pairs.size() * per_pair);
    if (rows.empty()) return rows;

    unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    threads = std::min<unsigned>(threads, pairs.size());

    std::atomic<size_t> next{0};
    auto worker = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= pairs.size()) break;
            FrobeniusParams params = FrobeniusParams::create(pairs[i].first, pairs[i].second);
            PsiFactorCache cache(params, config.budget);
            for (uint32_t n = config.n_min; n <= config.n_max; ++n) {
                rows[i * per_pair + (n - config.n_min)] = build_row(cache, n);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return rows;
}

ScanOutcome run_scan(const ScanConfig& config) {
    validate_config(config);
    const uint64_t hash = config_hash(config);
    const std::string hash_hex = [&] {
        char buf[24];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
        return std::string(buf);
    }();

    uint64_t already = 0;
    if (config.resume) {
        if (config.checkpoint_path.empty() || config.out_path.empty())
            throw std::invalid_argument("scan: resume requires checkpoint and output paths");
        std::ifstream ck(config.checkpoint_path);
        if (ck) {
            nlohmann::json j;
            ck >> j;
            if (j.at("config_hash").get<std::string>() != hash_hex)
                throw std::invalid_argument("scan: checkpoint belongs to a different config");
            already = j.at("rows_written").get<uint64_t>();
        }
    }

    auto pairs = admissible_pairs(config);
    const uint32_t per_pair = config.n_max >= config.n_min
                                  ? (config.n_max - config.n_min + 1)
                                  : 0;
    const uint64_t total_rows = static_cast<uint64_t>(pairs.size()) * per_pair;

    std::ofstream file;
    std::ostream* out = nullptr;
    if (!config.out_path.empty()) {
        file.open(config.out_path, already > 0 ? std::ios::app : std::ios::trunc);
        if (!file) throw std::invalid_argument("scan: cannot open output path");
        out = &file;
    }

    auto emit = [&](const std::string& line) {
        if (out) {
            (*out) << line << "\n";
        } else {
            std::fputs(line.c_str(), stdout);
            std::fputc('\n', stdout);
        }
    };

    if (already == 0 && config.format == ScanFormat::csv) emit(csv_header());

    const uint64_t limit =
        config.max_rows_this_run == 0 ? UINT64_MAX : config.max_rows_this_run;

    // work items are whole (q, a) groups, computed by a pool and merged
    // back in sorted order, so the output never depends on scheduling
    const size_t first_group = per_pair == 0 ? pairs.size() : already / per_pair;
    std::vector<std::vector<ScanRow>> groups(pairs.size());
    if (per_pair > 0 && first_group < pairs.size()) {
        unsigned threads =
            config.threads ? config.threads : std::thread::hardware_concurrency();
        if (threads == 0) threads = 1;
        uint64_t wanted = limit == UINT64_MAX ? total_rows - already
                                              : std::min<uint64_t>(limit, total_rows - already);
        size_t last_group =
            std::min(pairs.size(), first_group + (already % per_pair != 0 ? 1 : 0) +
                                       (wanted + per_pair - 1) / per_pair + 1);
        std::atomic<size_t> next{first_group};
        auto worker = [&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= last_group) break;
                FrobeniusParams params =
                    FrobeniusParams::create(pairs[i].first, pairs[i].second);
                PsiFactorCache cache(params, config.budget);
                groups[i].reserve(per_pair);
                for (uint32_t n = config.n_min; n <= config.n_max; ++n) {
                    groups[i].push_back(build_row(cache, n));
                }
            }
        };
        std::vector<std::thread> pool;
        unsigned nthreads = std::min<unsigned>(threads, last_group > first_group
                                                            ? last_group - first_group
                                                            : 1);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    uint64_t written = 0;
    uint64_t index = 0;
    ScanRow last_row;
    bool have_last = false, stopped = false;
    for (size_t gi = 0; gi < pairs.size() && !stopped; ++gi) {
        if (index + per_pair <= already) {
            index += per_pair;
            continue;
        }
        for (const ScanRow& row : groups[gi]) {
            if (index < already) {
                ++index;
                continue;
            }
            emit(config.format == ScanFormat::csv ? encode_csv_row(row)
                                                  : encode_json_row(row));
            ++index;
            ++written;
            last_row = row;
            have_last = true;
            if (written >= limit) {
                stopped = true;
                break;
            }
        }
    }
    if (out) file.flush();

    if (!config.checkpoint_path.empty() && !config.out_path.empty()) {
        nlohmann::json j;
        j["config_hash"] = hash_hex;
        j["rows_written"] = already + written;
        j["rows_total"] = total_rows;
        if (have_last) {
            j["last"] = {{"q", last_row.q}, {"a", last_row.a}, {"n", last_row.n}};
        }
        std::ofstream ck(config.checkpoint_path, std::ios::trunc);
        ck << j.dump() << "\n";
    }

    ScanOutcome outcome;
    outcome.rows_written = written;
    outcome.rows_total = already + written;
    outcome.finished = (already + written) == total_rows;
    return outcome;
}

}  // namespace ellseq
