#pragma once

#include <array>
#include <span>
#include <vector>

#include "rksynth/datagen.hpp"
#include "rksynth/rk2.hpp"

namespace rksynth {

// The three trainable coefficients. c2 is never stored; it equals a21 by the
// consistency condition whenever a tableau is built from a param_vector.
struct param_vector {
    double a21, b1, b2;
};

// Cached intermediates of the forward pass, one entry per dataset row:
// stage-1 derivative k1, the shifted stage-2 position (X, Y) and its radius R,
// stage-2 derivative k2, and the output row. The scalars h*a21, b1, b2 are the
// only trainable edges of the graph.
struct forward_trace {
    double h = 0.0, h_a21 = 0.0, b1 = 0.0, b2 = 0.0;
    std::vector<deriv4> k1, k2;
    std::vector<double> X, Y, R;
    std::vector<std::array<double, 4>> out;
    long long rows() const { return (long long)out.size(); }
};

// Evaluates one RK step per row, every row starting from its input state.
// Row n of the result equals rk_step on that row exactly.
forward_trace forward(const param_vector &p, const dataset &ds);
forward_trace forward_serial(const param_vector &p, const dataset &ds);

struct loss_detail {
    double value;       // data term + both penalties
    double data_term;   // max over all N*4 entries of |out - target|
    double p1, p2;      // signed penalty residuals b1+b2-1 and a21*b2-1/2
    long long argmax_flat; // row*4 + component of the data-term argmax
    double argmax_diff;    // signed out - target at the argmax
};

// ||out - targets||_inf over the flattened matrix plus |b1+b2-1| + |a21*b2-1/2|.
// The argmax scan is sequential; ties go to the lowest flat index.
loss_detail loss_parts(const param_vector &p, std::span<const std::array<double, 4>> out,
                       std::span<const state4> targets);
loss_detail loss_parts(const param_vector &p, const forward_trace &tr, const dataset &ds);
double loss(const param_vector &p, std::span<const std::array<double, 4>> out,
            std::span<const state4> targets);

struct gradient_vector {
    double d_a21, d_b1, d_b2;
};

inline double sign(double v) { return double(v > 0.0) - double(v < 0.0); }

// Subgradient of the loss at p. The infinity norm contributes through the
// single argmax entry; sign(0) = 0 for the data term and both penalties.
gradient_vector grad(const param_vector &p, const dataset &ds, const forward_trace &tr);

} // namespace rksynth
