#include "rksynth/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "rksynth/csv.hpp"
#include "rksynth/errors.hpp"

namespace rksynth {

std::vector<named_tableau> builtin_methods() {
    return {{"kepler", to_double(kepler_tableau())},
            {"heun", to_double(heun_tableau())},
            {"midpoint", to_double(midpoint_tableau())},
            {"ralston", to_double(ralston_tableau())}};
}

std::vector<long long> default_step_ladder() {
    return {1000000, 2000000, 4000000, 8000000, 16000000, 32000000};
}

namespace {

bench_record run_cell(const named_tableau &m, double t_end, long long n) {
    bench_record r;
    r.method = m.name;
    r.n_steps = n;
    r.function_evaluations = 2 * n;
    try {
        integ_result ir = integrate_max_error(m.tab, {1.0, 0.0, 0.0, 1.0}, 0.0, t_end, n);
        r.max_abs_error = ir.max_err;
        r.accuracy_digits = -std::log10(ir.max_err);
    } catch (const singular_state_error &) {
        r.failed = true;
        r.max_abs_error = std::numeric_limits<double>::quiet_NaN();
        r.accuracy_digits = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

void check_bench_args(double t_end, const std::vector<long long> &steps) {
    if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    for (long long n : steps)
        if (n < 1) throw std::invalid_argument("step counts must be >= 1");
}

void sort_records(std::vector<bench_record> &recs) {
    std::stable_sort(recs.begin(), recs.end(), [](const bench_record &a, const bench_record &b) {
        if (a.method != b.method) return a.method < b.method;
        return a.n_steps < b.n_steps;
    });
}

} // namespace

std::vector<bench_record> run_benchmark(const std::vector<named_tableau> &methods, double t_end,
                                        const std::vector<long long> &step_counts) {
    check_bench_args(t_end, step_counts);
    long long total = (long long)(methods.size() * step_counts.size());
    std::vector<bench_record> recs(static_cast<size_t>(total));
#pragma omp parallel for schedule(dynamic, 1)
    for (long long idx = 0; idx < total; ++idx)
        recs[size_t(idx)] = run_cell(methods[size_t(idx) / step_counts.size()], t_end,
                                     step_counts[size_t(idx) % step_counts.size()]);
    sort_records(recs);
    return recs;
}

std::vector<bench_record> run_benchmark_serial(const std::vector<named_tableau> &methods,
                                               double t_end,
                                               const std::vector<long long> &step_counts) {
    check_bench_args(t_end, step_counts);
    std::vector<bench_record> recs;
    recs.reserve(methods.size() * step_counts.size());
    for (const auto &m : methods)
        for (long long n : step_counts) recs.push_back(run_cell(m, t_end, n));
    sort_records(recs);
    return recs;
}

void write_bench_csv(const std::vector<bench_record> &recs, const std::string &path) {
    FILE *f = std::fopen(path.c_str(), "w");
    if (!f) throw io_error("cannot open " + path + " for writing");
    std::fprintf(f, "method,N,fe,max_abs_err,digits\n");
    for (const auto &r : recs)
        std::fprintf(f, "%s,%lld,%lld,%s,%s\n", r.method.c_str(), r.n_steps,
                     r.function_evaluations, fmt17(r.max_abs_error).c_str(),
                     fmt17(r.accuracy_digits).c_str());
    std::fclose(f);
}

void write_bench_plot(const std::vector<bench_record> &recs, const std::string &path) {
    FILE *f = std::fopen(path.c_str(), "w");
    if (!f) throw io_error("cannot open " + path + " for writing");
    std::string cur;
    bool first = true;
    for (const auto &r : recs) {
        if (r.method != cur) {
            if (!first) std::fprintf(f, "\n\n");
            std::fprintf(f, "# %s\n", r.method.c_str());
            cur = r.method;
            first = false;
        }
        std::fprintf(f, "%lld %s\n", r.function_evaluations, fmt17(r.accuracy_digits).c_str());
    }
    std::fclose(f);
}

} // namespace rksynth
