#pragma once

#include <string>
#include <vector>

#include "rksynth/rk2.hpp"

namespace rksynth {

struct named_tableau {
    std::string name;
    tableau2<double> tab;
};

struct bench_record {
    std::string method;
    long long n_steps = 0;
    long long function_evaluations = 0; // 2 * n_steps for a two-stage method
    double max_abs_error = 0.0;
    double accuracy_digits = 0.0; // -log10(max_abs_error)
    bool failed = false;          // integration hit a singular state
};

// kepler, heun, midpoint, ralston
std::vector<named_tableau> builtin_methods();

// {1e6, 2e6, 4e6, 8e6, 16e6, 32e6}: a doubling ladder inside the regime where
// second-order asymptotics hold on [0, 1000]
std::vector<long long> default_step_ladder();

// Integrates every (method, N) cell from (1, 0, 0, 1) at t = 0 and records the
// max absolute error against the analytic orbit. Cells run independently;
// records come back sorted by (method, N).
std::vector<bench_record> run_benchmark(const std::vector<named_tableau> &methods, double t_end,
                                        const std::vector<long long> &step_counts);
std::vector<bench_record> run_benchmark_serial(const std::vector<named_tableau> &methods,
                                               double t_end,
                                               const std::vector<long long> &step_counts);

// header: method,N,fe,max_abs_err,digits
void write_bench_csv(const std::vector<bench_record> &recs, const std::string &path);

// gnuplot-style blocks of "fe digits" pairs, one block per method
void write_bench_plot(const std::vector<bench_record> &recs, const std::string &path);

} // namespace rksynth
