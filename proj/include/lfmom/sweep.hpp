#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lfmom/cache.hpp"
#include "lfmom/report.hpp"

namespace lfmom {

/// Parses "2" or "3/2" into a lowest-terms order; rejects k < 1.
inline RationalOrder parse_rational(const std::string& text) {
    const auto parse_int = [](const std::string& t) {
        if (t.empty()) throw std::invalid_argument("empty integer in rational order");
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(t, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed rational order: '" + t + "'");
        }
        if (pos != t.size()) throw std::invalid_argument("malformed rational order: '" + t + "'");
        return v;
    };
    const auto slash = text.find('/');
    const long long r = parse_int(slash == std::string::npos ? text : text.substr(0, slash));
    const long long s = slash == std::string::npos ? 1 : parse_int(text.substr(slash + 1));
    if (s <= 0 || r <= 0 || r < s)
        throw std::invalid_argument("moment order '" + text + "' rejected: k >= 1 required");
    return RationalOrder(r, s);
}

enum class MethodChoice { oracle, truncated, both };
enum class ReportFormat { csv, jsonl, both };

struct SweepConfig {
    std::vector<std::uint64_t> q_list;     // explicit moduli (validated prime)
    std::uint64_t q_min = 0, q_max = 0;    // optional prime range, used when q_max > 0
    std::vector<RationalOrder> k_list;
    MethodChoice method = MethodChoice::oracle;
    std::uint64_t X_override = 0;          // 0 = policy ceil(q ln^4 q)
    unsigned threads = 1;
    bool deterministic = false;            // ordered output, timings zeroed
    std::string cache_dir;                 // empty = no cache
    std::string out_path = "sweep.csv";
    ReportFormat format = ReportFormat::csv;
    std::uint64_t max_q = PrimeContext::kDefaultMaxQ;
    std::uint64_t max_X = kDefaultMaxTruncation;
    double time_budget_s = 0.0;            // 0 = unlimited
    HurwitzOptions hurwitz{};
};

struct SweepResult {
    std::vector<RowRecord> records;
    std::size_t cache_hits = 0;
    std::size_t cache_writes = 0;
    std::vector<std::string> outputs; // files written
    bool all_ok() const {
        return std::all_of(records.begin(), records.end(),
                           [](const RowRecord& r) { return r.ok(); });
    }
};

namespace detail {

inline std::vector<std::uint64_t> expand_moduli(const SweepConfig& cfg) {
    std::vector<std::uint64_t> qs = cfg.q_list;
    for (std::uint64_t q : qs)
        if (!is_prime(q))
            throw std::invalid_argument("configured modulus " + std::to_string(q) +
                                        " is not prime");
    if (cfg.q_max > 0) {
        if (cfg.q_min > cfg.q_max)
            throw std::invalid_argument("empty modulus range");
        for (std::uint64_t q = std::max<std::uint64_t>(cfg.q_min, 3); q <= cfg.q_max; ++q)
            if (is_prime(q)) qs.push_back(q);
    }
    return qs;
}

inline void validate(const SweepConfig& cfg) {
    if (cfg.k_list.empty()) throw std::invalid_argument("at least one moment order required");
    if (cfg.q_list.empty() && cfg.q_max == 0)
        throw std::invalid_argument("no moduli configured");
    if (cfg.max_q == 0 || cfg.max_X == 0 || cfg.time_budget_s < 0.0)
        throw std::invalid_argument("budgets must be positive");
    expand_moduli(cfg); // primality and range checks
}

// All rows sharing one modulus; L-values are computed (or loaded) once per
// method and reused across the k list.
struct QJob {
    std::uint64_t q;
    std::vector<RowRecord> records;
    std::size_t cache_hits = 0;
    std::size_t cache_writes = 0;
};

inline LValueSet obtain_lvalues(const CharGroup& grp, const SweepConfig& cfg, LMethod method,
                                std::uint64_t X, QJob& job, double& seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    cache::Key key{grp.q(), method, 0, 0, 0};
    if (method == LMethod::oracle) {
        key.em_shift = static_cast<std::uint32_t>(cfg.hurwitz.shift);
        key.em_bernoulli = static_cast<std::uint32_t>(cfg.hurwitz.bernoulli_terms);
    } else {
        key.X = X;
    }
    const bool use_cache = !cfg.cache_dir.empty();
    const auto path = use_cache ? cache::file_path(cfg.cache_dir, key) : std::filesystem::path{};
    if (use_cache) {
        if (auto hit = cache::load(path, key)) {
            ++job.cache_hits;
            seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return std::move(*hit);
        }
    }
    LValueSet set = method == LMethod::oracle ? l_oracle(grp, cfg.hurwitz)
                                              : l_truncated(grp, X, cfg.max_X);
    if (use_cache) {
        cache::store(path, key, set);
        ++job.cache_writes;
    }
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return set;
}

inline void run_q_job(const SweepConfig& cfg, QJob& job) {
    std::vector<LMethod> methods;
    if (cfg.method == MethodChoice::oracle || cfg.method == MethodChoice::both)
        methods.push_back(LMethod::oracle);
    if (cfg.method == MethodChoice::truncated || cfg.method == MethodChoice::both)
        methods.push_back(LMethod::truncated);

    const auto skip_all = [&](const std::string& reason) {
        for (LMethod m : methods)
            for (const RationalOrder& k : cfg.k_list) {
                RowRecord rec;
                rec.row.q = job.q;
                rec.row.k = k;
                rec.row.method = to_string(m);
                rec.status = "skip: " + reason;
                job.records.push_back(std::move(rec));
            }
    };

    if (job.q > cfg.max_q) {
        skip_all("modulus exceeds max_q budget");
        return;
    }

    PrimeContext ctx(job.q, cfg.max_q);
    CharGroup grp(ctx);
    for (LMethod m : methods) {
        const std::uint64_t X = m == LMethod::truncated
                                    ? (cfg.X_override ? cfg.X_override : default_truncation(job.q))
                                    : 0;
        if (m == LMethod::truncated && X > cfg.max_X) {
            for (const RationalOrder& k : cfg.k_list) {
                RowRecord rec;
                rec.row.q = job.q;
                rec.row.k = k;
                rec.row.X = X;
                rec.row.method = to_string(m);
                rec.status = "skip: truncation length exceeds max_X budget";
                job.records.push_back(std::move(rec));
            }
            continue;
        }
        double t_lv = 0.0;
        LValueSet lvals = obtain_lvalues(grp, cfg, m, X, job, t_lv);
        for (const RationalOrder& k : cfg.k_list) {
            RowRecord rec;
            try {
                const ResonatorSpec spec = build_spec(ctx, k);
                rec.row = assemble_row(grp, k, lvals, spec);
                rec.row.t_lvalues = t_lv;
            } catch (const std::exception& e) {
                rec.row.q = job.q;
                rec.row.k = k;
                rec.row.X = X;
                rec.row.method = to_string(m);
                rec.status = std::string("skip: ") + e.what();
            }
            job.records.push_back(std::move(rec));
        }
    }
}

} // namespace detail

/// Runs the configured sweep: one record per (q, k, method), streamed to the
/// output files in configuration order, plus a machine-readable residual
/// summary in <out>.summary.json.
inline SweepResult run_sweep(const SweepConfig& cfg) {
    detail::validate(cfg);
    const auto t_start = std::chrono::steady_clock::now();
    const std::vector<std::uint64_t> moduli = detail::expand_moduli(cfg);

    std::vector<detail::QJob> jobs;
    jobs.reserve(moduli.size());
    for (std::uint64_t q : moduli) jobs.push_back(detail::QJob{q, {}, 0, 0});

    const auto budget_left = [&]() {
        if (cfg.time_budget_s <= 0.0) return true;
        const double used =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        return used < cfg.time_budget_s;
    };
    const auto work_one = [&](detail::QJob& job) {
        if (!budget_left()) {
            std::vector<LMethod> methods;
            if (cfg.method == MethodChoice::oracle || cfg.method == MethodChoice::both)
                methods.push_back(LMethod::oracle);
            if (cfg.method == MethodChoice::truncated || cfg.method == MethodChoice::both)
                methods.push_back(LMethod::truncated);
            for (LMethod m : methods)
                for (const RationalOrder& k : cfg.k_list) {
                    RowRecord rec;
                    rec.row.q = job.q;
                    rec.row.k = k;
                    rec.row.method = to_string(m);
                    rec.status = "skip: time budget exceeded";
                    job.records.push_back(std::move(rec));
                }
            return;
        }
        detail::run_q_job(cfg, job);
    };

    if (cfg.threads <= 1 || jobs.size() <= 1) {
        for (auto& job : jobs) work_one(job);
    } else {
        std::atomic<std::size_t> next{0};
        const unsigned n_workers = std::min<std::size_t>(cfg.threads, jobs.size());
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w)
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= jobs.size()) break;
                    work_one(jobs[i]);
                }
            });
        for (auto& th : pool) th.join();
    }

    SweepResult result;
    for (auto& job : jobs) {
        result.cache_hits += job.cache_hits;
        result.cache_writes += job.cache_writes;
        for (auto& rec : job.records) {
            if (cfg.deterministic) {
                rec.row.t_lvalues = 0.0;
                rec.row.t_resonator = 0.0;
                rec.row.t_row = 0.0;
            }
            result.records.push_back(std::move(rec));
        }
    }

    // residual summary over the computed rows
    double max_resid_s2 = 0.0, max_resid_s1_imag = 0.0;
    std::size_t n_ok = 0, n_skip = 0;
    for (const auto& rec : result.records) {
        if (!rec.ok()) {
            ++n_skip;
            continue;
        }
        ++n_ok;
        max_resid_s2 = std::max(max_resid_s2, rec.row.resid_s2);
        max_resid_s1_imag = std::max(max_resid_s1_imag, rec.row.resid_s1_imag);
    }

    if (!cfg.out_path.empty()) {
        const std::filesystem::path out(cfg.out_path);
        if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
        if (cfg.format == ReportFormat::csv || cfg.format == ReportFormat::both) {
            std::ofstream f(out);
            f << report::csv_header() << "\n";
            for (const auto& rec : result.records) f << report::csv_line(rec) << "\n";
            result.outputs.push_back(out.string());
        }
        if (cfg.format == ReportFormat::jsonl || cfg.format == ReportFormat::both) {
            std::filesystem::path jl = out;
            jl.replace_extension(".jsonl");
            std::ofstream f(jl);
            for (const auto& rec : result.records) f << report::json_row(rec).dump() << "\n";
            result.outputs.push_back(jl.string());
        }
        // cache hit counts stay out of the summary: they differ between cold
        // and warm runs, and deterministic reports must be bit-identical
        nlohmann::json summary;
        summary["rows_ok"] = n_ok;
        summary["rows_skipped"] = n_skip;
        summary["max_resid_s2"] = max_resid_s2;
        summary["max_resid_s1_imag"] = max_resid_s1_imag;
        summary["deterministic"] = cfg.deterministic;
        std::filesystem::path sp = out;
        sp += ".summary.json";
        std::ofstream sf(sp);
        sf << summary.dump(2) << "\n";
        result.outputs.push_back(sp.string());
    }
    return result;
}

} // namespace lfmom
