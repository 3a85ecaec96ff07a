// SPDX-License-Identifier: Apache-2.0
//
// sievelab: command-line front end for the large sieve toolkit.
// Exit codes: 0 success / all checks hold, 1 a checked inequality or
// equality failed, 2 usage or domain error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sievelab/sievelab.hpp"

namespace {

using namespace sievelab;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct Output {
    std::string path;
    std::string format = "csv";
};

void add_output(CLI::App* cmd, Output& out) {
    cmd->add_option("--out", out.path, "Write the report here instead of stdout");
    cmd->add_option("--format", out.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
}

void emit(const Table& t, const Output& out) {
    std::string text = out.format == "json" ? t.json().dump(2) + "\n" : t.csv();
    if (out.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw domain_error("cannot open '" + out.path + "' for writing");
    f << text;
}

template <class T, class Parse>
std::vector<T> parse_list(const std::string& text, Parse parse) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse(item));
    if (out.empty()) throw domain_error("empty list '" + text + "'");
    return out;
}

i64 parse_int(const std::string& s) {
    std::size_t used = 0;
    i64 v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw domain_error("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw domain_error("not an integer: '" + s + "'");
    return v;
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw domain_error("not a number: '" + s + "'");
    }
    if (used != s.size()) throw domain_error("not a number: '" + s + "'");
    return v;
}

unsigned threads_option(int requested) { return thread_cap(requested > 0 ? static_cast<unsigned>(requested) : 0); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Large sieve inequalities with quadratic amplitudes: checks, sweeps and counterexamples"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version));

    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (capped by SIEVELAB_THREADS)");

    // farey
    Output farey_out;
    i64 farey_order = 0;
    auto* farey = app.add_subcommand("farey", "List F(Q) with the gap to the next point");
    farey->add_option("--order,--Q", farey_order, "Order Q")->required();
    add_output(farey, farey_out);

    // verify-classical
    Output vc_out;
    ClassicalConfig vc;
    std::string vc_dist = "mixed";
    auto* verify = app.add_subcommand("verify-classical", "Check the linear large sieve on random instances");
    verify->add_option("--instances", vc.instances, "Number of random instances");
    verify->add_option("--Q", vc.max_Q, "Largest Farey order drawn");
    verify->add_option("--N", vc.max_N, "Largest window length drawn");
    verify->add_option("--M", vc.max_abs_M, "Largest |M| drawn");
    verify->add_option("--dist", vc_dist, "unit | gaussian | sparse | mixed");
    verify->add_option("--density", vc.density, "Density for sparse sequences");
    verify->add_option("--seed", vc.seed, "RNG seed");
    verify->add_option("--rhs-scale", vc.rhs_scale, "Scale applied to the bounds (self-test of the harness)");
    add_output(verify, vc_out);

    // theorem2-sweep
    Output t2_out;
    Theorem2Config t2;
    std::string t2_Q = "4,8,16,32", t2_N = "16,64,256", t2_M = "0", t2_alpha = "1/3,1/2,1",
                t2_ratio = "0/1,1/2", t2_eps = "0.05,0.1,0.25,0.5", t2_dist = "unit";
    bool t2_no_dls = false;
    auto* sweep = app.add_subcommand("theorem2-sweep", "Ratio report for the quadratic-amplitude bound");
    sweep->add_option("--Q", t2_Q, "Comma-separated Farey orders");
    sweep->add_option("--N", t2_N, "Comma-separated window lengths");
    sweep->add_option("--M", t2_M, "Comma-separated window offsets");
    sweep->add_option("--alpha", t2_alpha, "Comma-separated rationals, e.g. 1/3,1/2");
    sweep->add_option("--ratio", t2_ratio, "Comma-separated beta/alpha: a/b exact or real:<x> approximated");
    sweep->add_option("--eps", t2_eps, "Comma-separated epsilon values");
    sweep->add_option("--dist", t2_dist, "unit | gaussian | sparse");
    sweep->add_option("--density", t2.density, "Density for sparse sequences");
    sweep->add_option("--seed", t2.seed, "RNG seed");
    sweep->add_flag("--no-dls", t2_no_dls, "Skip the double large sieve column");
    sweep->add_flag("--timing", t2.timing, "Add a runtime_ms column (breaks byte-identical output)");
    add_output(sweep, t2_out);

    // counterexample
    Output ce_out;
    i64 ce_p = 3, ce_N = 810;
    auto* counter = app.add_subcommand("counterexample", "Evaluate the p-sparse instance against (Q^2 + N) Z");
    counter->add_option("--p", ce_p, "Prime p (Q = p^2)");
    counter->add_option("--N", ce_N, "Window length, a multiple of p");
    add_output(counter, ce_out);
    ce_out.format = "json";

    // dls-check
    Output dls_out;
    DLSConfig dc;
    auto* dls = app.add_subcommand("dls-check", "Check the double large sieve on random instances");
    dls->add_option("--instances", dc.instances, "Number of random instances");
    dls->add_option("--max-size", dc.max_size, "Largest point count per family");
    dls->add_option("--seed", dc.seed, "RNG seed");
    add_output(dls, dls_out);

    // lemma4
    Output l4_out;
    Lemma4Config lc;
    std::string l4_alpha = "1", l4_ratio = "0/1";
    std::vector<i64> l4_pair;
    auto* lemma4 = app.add_subcommand("lemma4", "Count pairs with nearby g-values two ways");
    lemma4->add_option("--M", lc.M, "Window offset");
    lemma4->add_option("--N", lc.N, "Window length");
    lemma4->add_option("--alpha", l4_alpha, "Rational alpha, e.g. 1/12");
    lemma4->add_option("--ratio", l4_ratio, "a/b");
    lemma4->add_option("--eps", lc.eps, "Exponent for the bound columns");
    lemma4->add_option("--pair", l4_pair, "Only this (m, n)")->expected(2);
    lemma4->add_option("--cap", lc.cap, "Largest N accepted");
    add_output(lemma4, l4_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        const unsigned nthreads = threads_option(threads);

        if (*farey) {
            emit(farey_table(farey_order), farey_out);
            return exit_ok;
        }

        if (*verify) {
            if (vc_dist != "mixed") vc.dist = parse_distribution(vc_dist);
            vc.threads = nthreads;
            auto res = verify_classical(vc);
            emit(res.table, vc_out);
            if (!res.all_hold) std::cerr << "verify-classical: a bound was violated\n";
            return res.all_hold ? exit_ok : exit_failed;
        }

        if (*sweep) {
            t2.Qs = parse_list<i64>(t2_Q, parse_int);
            t2.Ns = parse_list<i64>(t2_N, parse_int);
            t2.Ms = parse_list<i64>(t2_M, parse_int);
            t2.alphas = parse_list<Rational>(t2_alpha, parse_rational);
            t2.ratios = parse_list<RatioSpec>(t2_ratio, parse_ratio);
            t2.eps = parse_list<double>(t2_eps, parse_real);
            t2.dist = parse_distribution(t2_dist);
            t2.with_dls = !t2_no_dls;
            t2.threads = nthreads;
            auto res = theorem2_sweep(t2);
            emit(res.table, t2_out);
            if (!res.all_hold) {
                std::cerr << "theorem2-sweep: the double large sieve bound failed on some row\n";
                return exit_failed;
            }
            return exit_ok;
        }

        if (*counter) {
            auto inst = build_counterexample(ce_p, ce_N);
            auto r = demonstrate_failure(inst, nthreads);
            char line[256];
            if (r.lower_bound_exceeds_naive)
                std::snprintf(line, sizeof line, "failure demonstrated: %.0f > %.0f", r.modulus_term_Q, r.naive_rhs);
            else
                std::snprintf(line, sizeof line, "naive bound not violated at this size: %.0f <= %.0f",
                              r.modulus_term_Q, r.naive_rhs);
            std::cout << line << "\n";
            emit(failure_table(r), ce_out);
            return exit_ok;
        }

        if (*dls) {
            dc.threads = nthreads;
            auto res = dls_sweep(dc);
            emit(res.table, dls_out);
            if (!res.all_hold) std::cerr << "dls-check: the inequality failed on some instance\n";
            return res.all_hold ? exit_ok : exit_failed;
        }

        if (*lemma4) {
            lc.alpha = parse_rational(l4_alpha);
            Rational ab = parse_rational(l4_ratio);
            lc.a = ab.num();
            lc.b = ab.den();
            if (l4_pair.size() == 2) lc.only = std::make_pair(l4_pair[0], l4_pair[1]);
            lc.threads = nthreads;
            auto res = lemma4_table(lc);
            emit(res.table, l4_out);
            if (!res.all_hold) std::cerr << "lemma4: the two counters disagree\n";
            return res.all_hold ? exit_ok : exit_failed;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
