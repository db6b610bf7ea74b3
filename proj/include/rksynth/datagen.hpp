#pragma once

#include <string>
#include <vector>

#include "rksynth/twobody.hpp"

namespace rksynth {

struct grid_spec {
    double t_start, t_end, h;
};

// N = (t_end - t_start)/h rounded to the nearest integer; throws
// non_integer_step_error if it is off by more than 1e-9.
long long step_count(const grid_spec &g);

// Training data: row n of inputs is the analytic state at t_n = t_start + n*h
// (exported with the constant columns h and 1), row n of targets is the
// analytic state at t_{n+1}. Every row restarts from the analytic value.
struct dataset {
    double h = 0.0;
    std::vector<state4> inputs;
    std::vector<state4> targets;
    long long rows() const { return (long long)inputs.size(); }
};

dataset generate(const grid_spec &g);
dataset generate_serial(const grid_spec &g);

// dir/inputs.csv with header x,y,vx,vy,h,one and dir/targets.csv with header
// x,y,vx,vy; 17-significant-digit floats
void write_dataset_csv(const dataset &ds, const std::string &dir);
dataset read_dataset_csv(const std::string &dir);

} // namespace rksynth
