// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "arith.hpp"
#include "bounds.hpp"
#include "counterexample.hpp"
#include "dls.hpp"
#include "expsum.hpp"
#include "farey.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "version.hpp"

namespace sievelab {

/// A report cell. monostate renders as an empty CSV field and JSON null.
using Cell = std::variant<std::monostate, std::string, i64, double, bool>;

/// Shortest round-trip decimal form, so identical values give identical bytes.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string cell_text(const Cell& c) {
    struct {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(i64 v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    } visit;
    return std::visit(visit, c);
}

inline Cell opt_cell(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    [[nodiscard]] std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw domain_error("Table: no column '" + name + "'");
    }

    [[nodiscard]] std::string csv() const {
        auto quote = [](const std::string& s) {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string out = "\"";
            for (char ch : s) {
                if (ch == '"') out += '"';
                out += ch;
            }
            return out + "\"";
        };
        std::string out;
        for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + quote(header[i]);
        out += '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + quote(cell_text(row[i]));
            out += '\n';
        }
        return out;
    }

    [[nodiscard]] nlohmann::ordered_json json() const {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            nlohmann::ordered_json obj;
            for (std::size_t i = 0; i < row.size(); ++i) {
                const auto& c = row[i];
                auto& slot = obj[header[i]];
                if (std::holds_alternative<std::monostate>(c)) slot = nullptr;
                else if (auto* s = std::get_if<std::string>(&c)) slot = *s;
                else if (auto* n = std::get_if<i64>(&c)) slot = *n;
                else if (auto* b = std::get_if<bool>(&c)) slot = *b;
                else {
                    double d = std::get<double>(c);
                    if (std::isfinite(d)) slot = d;
                    else slot = format_double(d);
                }
            }
            arr.push_back(std::move(obj));
        }
        return arr;
    }
};

inline std::string distribution_name(SeqDistribution d) {
    switch (d) {
        case SeqDistribution::unit: return "unit";
        case SeqDistribution::gaussian: return "gaussian";
        case SeqDistribution::sparse: return "sparse";
    }
    return "unknown";
}

inline SeqDistribution parse_distribution(const std::string& s) {
    if (s == "unit") return SeqDistribution::unit;
    if (s == "gaussian") return SeqDistribution::gaussian;
    if (s == "sparse") return SeqDistribution::sparse;
    throw domain_error("unknown sequence distribution '" + s + "'");
}

// ---------------------------------------------------------------------------
// Linear-amplitude large sieve over Farey points

struct ClassicalConfig {
    int instances = 200;
    i64 max_Q = 32;
    i64 max_N = 256;
    i64 max_abs_M = 1000;
    /// empty means cycle through unit, gaussian and sparse
    std::optional<SeqDistribution> dist;
    double density = 0.1;
    std::uint64_t seed = 1;
    /// multiplies both right-hand sides; anything below 1 probes the harness
    double rhs_scale = 1.0;
    unsigned threads = 1;
};

struct SweepResult {
    Table table;
    bool all_hold = true;
};

/// sum_{x in F(Q)} |sum a_n e(x n)|^2 against the sharp bound with the exact
/// Farey gap and against (Q^2 + N) Z, both with relative slack 1e-9.
inline SweepResult verify_classical(const ClassicalConfig& cfg) {
    if (cfg.instances < 1 || cfg.max_Q < 2 || cfg.max_N < 1 || cfg.max_abs_M < 0)
        throw domain_error("verify_classical: need instances >= 1, max_Q >= 2, max_N >= 1");
    constexpr double slack = 1e-9;
    SweepResult out;
    out.table.header = {"instance", "seed", "Q", "M", "N", "dist", "Z", "lhs", "delta_inv_exact",
                        "rhs_sharp", "rhs_classical", "rhs_additive", "ratio_sharp", "ratio_additive",
                        "holds_sharp", "holds_additive", "formula_variant", "tool_version", "rng"};
    std::vector<std::vector<Cell>> rows(static_cast<std::size_t>(cfg.instances));
    std::vector<char> holds(rows.size(), 0);
    parallel_for(rows.size(), cfg.threads, [&](std::size_t i) {
        Rng rng(derive_seed(cfg.seed, 0x11, i));
        i64 Q = rng.integer(2, cfg.max_Q);
        i64 N = rng.integer(1, cfg.max_N);
        i64 M = rng.integer(-cfg.max_abs_M, cfg.max_abs_M);
        auto dist = cfg.dist.value_or(static_cast<SeqDistribution>(i % 3));
        auto seq = random_sequence(M, N, dist, derive_seed(cfg.seed, 0x12, i), cfg.density);
        auto farey = farey_sequence(Q);
        double Z = seq.power();
        double lhs = ls_lhs(seq, QuadraticAmplitude::linear(), farey);
        double delta = min_gap_mod1(farey).to_double();
        double sharp = sharp_rhs(delta, N, Z) * cfg.rhs_scale;
        double classical = classical_rhs(delta, N, Z) * cfg.rhs_scale;
        double additive = additive_rhs(Q, N, Z) * cfg.rhs_scale;
        bool hs = lhs <= sharp * (1 + slack);
        bool ha = lhs <= additive * (1 + slack) && lhs <= classical * (1 + slack);
        holds[i] = hs && ha;
        rows[i] = {i64(i), i64(cfg.seed), Q, M, N, distribution_name(dist), Z, lhs, i64(Q * (Q - 1)), sharp,
                   classical, additive, opt_cell(safe_ratio(lhs, sharp)), opt_cell(safe_ratio(lhs, additive)), hs,
                   ha, std::string("f(n)=n;delta=1/(Q(Q-1))"), std::string(tool_version), std::string(rng_algorithm)};
    });
    out.table.rows = std::move(rows);
    for (char h : holds) out.all_hold = out.all_hold && h;
    return out;
}

// ---------------------------------------------------------------------------
// Quadratic-amplitude sweep with ratio columns

/// beta/alpha as given on the command line: exact "a/b" or "real:<decimal>",
/// the latter replaced by a rational approximation with denominator <= 4N.
struct RatioSpec {
    std::string text;
    std::optional<Rational> exact;
    double real = 0;
};

inline RatioSpec parse_ratio(const std::string& s) {
    RatioSpec r;
    r.text = s;
    if (s.rfind("real:", 0) == 0) {
        try {
            std::size_t used = 0;
            std::string body = s.substr(5);
            r.real = std::stod(body, &used);
            if (used != body.size() || !std::isfinite(r.real)) throw domain_error("");
        } catch (const std::exception&) {
            throw domain_error("cannot parse ratio '" + s + "'");
        }
    } else {
        r.exact = parse_rational(s);
        r.real = r.exact->to_double();
    }
    return r;
}

struct Theorem2Config {
    std::vector<i64> Qs{4, 8, 16, 32};
    std::vector<i64> Ns{16, 64, 256};
    std::vector<i64> Ms{0};
    std::vector<Rational> alphas{Rational(1, 3), Rational(1, 2), Rational(1)};
    std::vector<RatioSpec> ratios{parse_ratio("0/1"), parse_ratio("1/2")};
    std::vector<double> eps{0.05, 0.1, 0.25, 0.5};
    SeqDistribution dist = SeqDistribution::unit;
    double density = 0.1;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    bool with_dls = true;
    bool timing = false;
};

inline std::vector<std::string> theorem2_header(bool timing) {
    std::vector<std::string> h = {
        "Q", "M", "N", "alpha", "ratio", "a", "b", "ratio_source", "eps", "seed", "dist", "Z", "lhs",
        "delta_inv_exact", "delta_inv_stated", "rhs_classical", "rhs_additive", "rhs_trivial", "rhs_theorem2",
        "rhs_conjecture", "pi", "ratio_classical", "ratio_additive", "ratio_trivial", "ratio_theorem2",
        "ratio_conjecture", "rhs_dls", "ratio_dls", "dls_holds", "dls_status", "Y_exact", "Y_stated",
        "phase_risk", "status", "formula_variant", "tool_version", "rng"};
    if (timing) h.push_back("runtime_ms");
    return h;
}

/// One row per (Q, M, N, alpha, ratio, eps) in nested grid order. Only the
/// double-large-sieve bound is a certified inequality; the other columns are
/// constant-1 shapes for ratio studies.
inline SweepResult theorem2_sweep(const Theorem2Config& cfg) {
    for (double e : cfg.eps)
        if (!(e > 0)) throw domain_error("theorem2_sweep: eps must be > 0");
    for (i64 q : cfg.Qs)
        if (q < 1) throw domain_error("theorem2_sweep: Q must be >= 1");
    for (i64 n : cfg.Ns)
        if (n < 1) throw domain_error("theorem2_sweep: N must be >= 1");
    for (const auto& a : cfg.alphas)
        if (a <= Rational(0)) throw domain_error("theorem2_sweep: alpha must be > 0");

    struct Job {
        i64 Q, M, N;
        Rational alpha;
        RatioSpec ratio;
    };
    std::vector<Job> jobs;
    for (i64 Q : cfg.Qs)
        for (i64 M : cfg.Ms)
            for (i64 N : cfg.Ns)
                for (const auto& al : cfg.alphas)
                    for (const auto& r : cfg.ratios) jobs.push_back({Q, M, N, al, r});

    SweepResult out;
    out.table.header = theorem2_header(cfg.timing);
    std::vector<std::vector<std::vector<Cell>>> blocks(jobs.size());
    std::vector<char> dls_ok(jobs.size(), 1);

    parallel_for(jobs.size(), cfg.threads, [&](std::size_t j) {
        const auto& job = jobs[j];
        auto t0 = std::chrono::steady_clock::now();
        const double alpha = job.alpha.to_double();
        Rational ab = job.ratio.exact ? *job.ratio.exact : dirichlet_approx(job.ratio.real, 4 * job.N);
        const i64 a = ab.num(), b = ab.den();
        std::optional<QuadraticAmplitude> f;
        if (job.ratio.exact) f.emplace(job.alpha, job.alpha * ab, Rational(0));
        else f.emplace(alpha, alpha * job.ratio.real, 0.0, ab);

        // the sequence depends only on the window, so rows differing in Q or
        // alpha see the same coefficients
        auto seq = random_sequence(job.M, job.N, cfg.dist, derive_seed(cfg.seed, 0x21, job.M, job.N), cfg.density);
        auto farey = farey_sequence(job.Q);
        const double Z = seq.power();
        const double lhs = ls_lhs(seq, *f, farey);
        const i64 delta_inv = job.Q >= 2 ? job.Q * (job.Q - 1) : 2;
        const double delta = 1.0 / static_cast<double>(delta_inv);
        const bool risk = phase_precision_risk(seq, *f, 1.0);

        const double rc = classical_rhs(delta, job.N, Z);
        const double ra = additive_rhs(job.Q, job.N, Z);
        const double rt = trivial_rhs(delta, alpha, job.M, job.N, Z);

        Cell rhs_dls, ratio_dls, dls_holds;
        std::string dls_status = "skipped";
        Cell y_exact_cell, y_stated_cell;
        if (cfg.with_dls && job.ratio.exact) {
            auto d = quadratic_dls_bound(seq, alpha, a, b, farey);
            rhs_dls = d.bound;
            ratio_dls = opt_cell(safe_ratio(lhs, d.bound));
            bool h = !d.anomaly && lhs * lhs <= d.rhs_sq * (1 + dls_slack);
            dls_holds = h;
            dls_ok[j] = h;
            dls_status = d.anomaly ? "anomaly" : "ok";
            y_exact_cell = d.Y;
            y_stated_cell = d.Y_stated;
        } else if (!job.ratio.exact) {
            dls_status = "skipped_real_ratio";
        }

        std::string variant = std::string("theorem2=statement-radicand;trivial=gallagher;delta=exact-farey-gap;") +
                              (job.ratio.exact ? "ratio=exact" : "ratio=dirichlet(4N)");
        for (double eps : cfg.eps) {
            Cell rhs2, ratio2, pi_cell;
            std::string status = "ok";
            try {
                double r2 = theorem2_rhs(job.Q, alpha, a, b, job.M, job.N, eps, Z);
                rhs2 = r2;
                ratio2 = opt_cell(safe_ratio(lhs, r2));
                pi_cell = pi_factor(alpha, a, b, job.M, job.N, eps);
            } catch (const domain_error&) {
                status = "domain_error";
            }
            const double rj = conjecture_rhs(job.Q, job.N, Z);
            std::vector<Cell> row = {job.Q, job.M, job.N, job.alpha.str(), job.ratio.text, a, b,
                                     std::string(job.ratio.exact ? "exact" : "approx"), eps, i64(cfg.seed),
                                     distribution_name(cfg.dist), Z, lhs, delta_inv, job.Q * job.Q, rc, ra, rt, rhs2,
                                     rj, pi_cell, opt_cell(safe_ratio(lhs, rc)), opt_cell(safe_ratio(lhs, ra)),
                                     opt_cell(safe_ratio(lhs, rt)), ratio2, opt_cell(safe_ratio(lhs, rj)), rhs_dls,
                                     ratio_dls, dls_holds, dls_status, y_exact_cell, y_stated_cell, risk, status,
                                     variant, std::string(tool_version), std::string(rng_algorithm)};
            if (cfg.timing) {
                auto t1 = std::chrono::steady_clock::now();
                row.emplace_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
            }
            blocks[j].push_back(std::move(row));
        }
    });
    for (auto& b : blocks)
        for (auto& r : b) out.table.rows.push_back(std::move(r));
    for (char ok : dls_ok) out.all_hold = out.all_hold && ok;
    return out;
}

// ---------------------------------------------------------------------------
// Double large sieve on random instances

struct DLSConfig {
    int instances = 500;
    std::size_t max_size = 50;
    double min_scale = 0.25;
    double max_scale = 100.0;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

inline DLSInstance random_dls_instance(std::uint64_t seed, std::size_t max_size, double lo, double hi) {
    Rng rng(seed);
    DLSInstance inst;
    auto m = static_cast<std::size_t>(rng.integer(1, static_cast<i64>(max_size)));
    auto n = static_cast<std::size_t>(rng.integer(1, static_cast<i64>(max_size)));
    // log-uniform so both ends of [lo, hi] are exercised
    inst.X = std::exp(rng.uniform(std::log(lo), std::log(hi)));
    inst.Y = std::exp(rng.uniform(std::log(lo), std::log(hi)));
    for (std::size_t i = 0; i < m; ++i) {
        inst.xs.push_back(rng.uniform(-inst.X / 2, inst.X / 2));
        inst.aw.push_back(rng.complex_gaussian());
    }
    for (std::size_t i = 0; i < n; ++i) {
        inst.ys.push_back(rng.uniform(-inst.Y / 2, inst.Y / 2));
        inst.bw.push_back(rng.complex_gaussian());
    }
    return inst;
}

inline SweepResult dls_sweep(const DLSConfig& cfg) {
    if (cfg.instances < 1 || cfg.max_size < 1 || !(cfg.min_scale > 0) || cfg.max_scale < cfg.min_scale)
        throw domain_error("dls_sweep: invalid configuration");
    SweepResult out;
    out.table.header = {"instance", "seed", "size_x", "size_y", "X", "Y", "lhs", "A", "B_re", "B_im",
                        "rhs", "ratio", "holds", "anomaly", "formula_variant", "tool_version", "rng"};
    std::vector<std::vector<Cell>> rows(static_cast<std::size_t>(cfg.instances));
    std::vector<char> holds(rows.size(), 0);
    parallel_for(rows.size(), cfg.threads, [&](std::size_t i) {
        auto inst = random_dls_instance(derive_seed(cfg.seed, 0x31, i), cfg.max_size, cfg.min_scale, cfg.max_scale);
        auto c = dls_check(inst);
        holds[i] = c.holds;
        rows[i] = {i64(i), i64(cfg.seed), i64(inst.xs.size()), i64(inst.ys.size()), inst.X, inst.Y, c.lhs, c.A,
                   c.B.real(), c.B.imag(), c.rhs, opt_cell(safe_ratio(c.lhs, c.rhs)), c.holds, c.anomaly,
                   std::string("(pi/2)^4*A(X/(XY+1))*B(1/X)*(XY+1)"), std::string(tool_version),
                   std::string(rng_algorithm)};
    });
    out.table.rows = std::move(rows);
    for (char h : holds) out.all_hold = out.all_hold && h;
    return out;
}

// ---------------------------------------------------------------------------
// Pair counts T for every (m, n) in S^2

struct Lemma4Config {
    i64 M = 0;
    i64 N = 30;
    Rational alpha{1};
    i64 a = 0;
    i64 b = 1;
    double eps = 0.1;
    std::optional<std::pair<i64, i64>> only;  ///< restrict to one (m, n)
    i64 cap = lemma4_default_cap;
    unsigned threads = 1;
};

inline SweepResult lemma4_table(const Lemma4Config& cfg) {
    if (cfg.N > cfg.cap)
        throw domain_error("lemma4: N = " + std::to_string(cfg.N) + " exceeds the cap of " + std::to_string(cfg.cap));
    std::vector<std::pair<i64, i64>> pairs;
    if (cfg.only) pairs.push_back(*cfg.only);
    else
        for (i64 m = cfg.M + 1; m <= cfg.M + cfg.N; ++m)
            for (i64 n = cfg.M + 1; n <= cfg.M + cfg.N; ++n) pairs.emplace_back(m, n);

    const double alpha = cfg.alpha.to_double();
    const double bound_a = lemma4_bound(alpha, cfg.a, cfg.b, cfg.M, cfg.N, cfg.eps);
    const double bound_b = lemma4_bound_proof_form(alpha, cfg.a, cfg.b, cfg.M, cfg.N, cfg.eps);
    SweepResult out;
    out.table.header = {"M", "N", "alpha", "a", "b", "m", "n", "g", "T_bruteforce", "T_divisor", "agree",
                        "bound_statement", "bound_proof", "ratio_statement", "eps", "formula_variant", "tool_version"};
    std::vector<std::vector<Cell>> rows(pairs.size());
    std::vector<char> agree(pairs.size(), 0);
    parallel_for(pairs.size(), cfg.threads, [&](std::size_t i) {
        Lemma4Instance inst{cfg.M, cfg.N, cfg.alpha, cfg.a, cfg.b, pairs[i].first, pairs[i].second};
        i64 tb = lemma4_count_bruteforce(inst, cfg.cap);
        i64 td = lemma4_count_divisor(inst, cfg.cap);
        agree[i] = tb == td;
        rows[i] = {cfg.M, cfg.N, cfg.alpha.str(), cfg.a, cfg.b, inst.m, inst.n,
                   g_eval(inst.m, inst.n, cfg.a, cfg.b).str(), tb, td, tb == td, bound_a, bound_b,
                   opt_cell(safe_ratio(static_cast<double>(tb), bound_a)), cfg.eps,
                   std::string("closed |g-g'|<=1/(2alpha);v=bm'+bn'+a"), std::string(tool_version)};
    });
    out.table.rows = std::move(rows);
    for (char a : agree) out.all_hold = out.all_hold && a;
    return out;
}

// ---------------------------------------------------------------------------

inline Table farey_table(i64 Q) {
    auto set = farey_sequence(Q);
    Table t;
    t.header = {"index", "p", "q", "value", "gap_next"};
    auto pts = set.points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Rational next = i + 1 < pts.size() ? pts[i + 1] : Rational(1);
        t.rows.push_back({i64(i), pts[i].num(), pts[i].den(), pts[i].to_double(), (next - pts[i]).str()});
    }
    return t;
}

inline Table failure_table(const FailureReport& r) {
    Table t;
    t.header = {"p", "Q", "N", "Z", "full_lhs", "modulus_term_Q", "closed_form", "naive_rhs", "naive_size",
                "lower_bound_exceeds_naive", "tool_version"};
    t.rows.push_back({r.p, r.Q, r.N, r.Z, r.full_lhs, r.modulus_term_Q, r.closed_form, r.naive_rhs, r.naive_size,
                      r.lower_bound_exceeds_naive, std::string(tool_version)});
    return t;
}

}  // namespace sievelab
