#include "rksynth/traingraph.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rksynth {

namespace {

void fill_row(forward_trace &tr, const param_vector &p, const dataset &ds, long long i) {
    step_detail d = rk_step_detail(p.a21, p.b1, p.b2, ds.inputs[size_t(i)], ds.h);
    tr.k1[size_t(i)] = d.k1;
    tr.k2[size_t(i)] = d.k2;
    tr.X[size_t(i)] = d.s2.x;
    tr.Y[size_t(i)] = d.s2.y;
    tr.R[size_t(i)] = radius(d.s2.x, d.s2.y);
    tr.out[size_t(i)] = {d.out.x, d.out.y, d.out.vx, d.out.vy};
}

forward_trace make_trace(const param_vector &p, const dataset &ds) {
    if (ds.rows() < 1) throw std::invalid_argument("dataset is empty");
    forward_trace tr;
    tr.h = ds.h;
    tr.h_a21 = ds.h * p.a21;
    tr.b1 = p.b1;
    tr.b2 = p.b2;
    size_t n = size_t(ds.rows());
    tr.k1.resize(n);
    tr.k2.resize(n);
    tr.X.resize(n);
    tr.Y.resize(n);
    tr.R.resize(n);
    tr.out.resize(n);
    return tr;
}

} // namespace

forward_trace forward(const param_vector &p, const dataset &ds) {
    forward_trace tr = make_trace(p, ds);
    long long n = ds.rows();
    std::vector<unsigned char> ok(size_t(n), 1);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        try {
            fill_row(tr, p, ds, i);
        } catch (const singular_state_error &) {
            ok[size_t(i)] = 0;
        }
    }
    for (long long i = 0; i < n; ++i)
        if (!ok[size_t(i)]) throw singular_state_error(i);
    return tr;
}

forward_trace forward_serial(const param_vector &p, const dataset &ds) {
    forward_trace tr = make_trace(p, ds);
    long long n = ds.rows();
    for (long long i = 0; i < n; ++i) {
        try {
            fill_row(tr, p, ds, i);
        } catch (const singular_state_error &) {
            throw singular_state_error(i);
        }
    }
    return tr;
}

loss_detail loss_parts(const param_vector &p, std::span<const std::array<double, 4>> out,
                       std::span<const state4> targets) {
    if (out.size() != targets.size() || out.empty())
        throw std::invalid_argument("output/target shape mismatch");
    double best = -1.0;
    long long bestj = 0;
    double bestdiff = 0.0;
    bool finite = true;
    for (size_t i = 0; i < out.size(); ++i) {
        for (int c = 0; c < 4; ++c) {
            double diff = out[i][size_t(c)] - comp(targets[i], c);
            if (!std::isfinite(diff)) finite = false;
            double ad = std::fabs(diff);
            if (ad > best) {
                best = ad;
                bestj = (long long)(i * 4 + size_t(c));
                bestdiff = diff;
            }
        }
    }
    loss_detail ld;
    ld.data_term = finite ? best : std::numeric_limits<double>::quiet_NaN();
    ld.argmax_flat = bestj;
    ld.argmax_diff = bestdiff;
    ld.p1 = p.b1 + p.b2 - 1.0;
    ld.p2 = p.a21 * p.b2 - 0.5;
    ld.value = ld.data_term + std::fabs(ld.p1) + std::fabs(ld.p2);
    return ld;
}

loss_detail loss_parts(const param_vector &p, const forward_trace &tr, const dataset &ds) {
    return loss_parts(p, std::span<const std::array<double, 4>>(tr.out),
                      std::span<const state4>(ds.targets));
}

double loss(const param_vector &p, std::span<const std::array<double, 4>> out,
            std::span<const state4> targets) {
    return loss_parts(p, out, targets).value;
}

gradient_vector grad(const param_vector &p, const dataset &ds, const forward_trace &tr) {
    loss_detail ld = loss_parts(p, tr, ds);
    size_t row = size_t(ld.argmax_flat / 4);
    int c = int(ld.argmax_flat % 4);
    double sig = sign(ld.argmax_diff);
    const deriv4 &k1 = tr.k1[row];
    const deriv4 &k2 = tr.k2[row];
    double h = tr.h;
    double dk2;
    if (c == 0) {
        dk2 = h * k1.ax;
    } else if (c == 1) {
        dk2 = h * k1.ay;
    } else {
        auto J = accel_jacobian(tr.X[row], tr.Y[row]);
        double ux = h * k1.dx;
        double uy = h * k1.dy;
        dk2 = (c == 2) ? J[0][0] * ux + J[0][1] * uy : J[1][0] * ux + J[1][1] * uy;
    }
    double s1 = sign(ld.p1);
    double s2 = sign(ld.p2);
    return {sig * h * p.b2 * dk2 + s2 * p.b2, sig * h * comp(k1, c) + s1,
            sig * h * comp(k2, c) + s1 + s2 * p.a21};
}

} // namespace rksynth
