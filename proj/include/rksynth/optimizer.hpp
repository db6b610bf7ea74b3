#pragma once

#include <string>
#include <vector>

#include "rksynth/traingraph.hpp"

namespace rksynth {

struct train_config {
    double learning_rate_init = 0.01;
    double momentum = 0.9;
    double lr_increase = 1.05;
    double lr_decrease = 0.7;
    double max_loss_ratio = 1.04;
    long long max_epochs = 50000;
    double goal_epsilon = 1e-6;
    unsigned long long rng_seed = 0;
    double init_lo = -1.0;
    double init_hi = 1.0;
};

// throws config_error naming the offending field
void validate(const train_config &cfg);

enum class stop_reason { goal_reached, max_epochs };

struct epoch_record {
    long long epoch;
    double loss;
    double lr;
    param_vector p;
    bool accepted;
};

struct train_trace {
    std::vector<epoch_record> epochs;
    param_vector final_p{0.0, 0.0, 0.0};
    double final_loss = 0.0;
    stop_reason reason = stop_reason::max_epochs;
};

// Gradient descent with momentum and adaptive learning rate. Each epoch forms
// the candidate p' = p + (momentum*v - lr*g); it is accepted when
// loss(p') <= max_loss_ratio * loss(p), the rate grows by lr_increase on
// strict improvement, and a rejection shrinks the rate by lr_decrease and
// clears the velocity. Record 0 is the random initial point; training stops
// when the loss drops below goal_epsilon or after max_epochs updates.
//
// Initialization draws a21, b1, b2 in that order from mt19937_64(rng_seed),
// mapped to [init_lo, init_hi) with a fixed 53-bit scheme, so traces are
// reproducible across platforms.
train_trace train(const train_config &cfg, const dataset &ds);

// header: epoch,loss,lr,a21,b1,b2,accepted
void write_trace_csv(const train_trace &tr, const std::string &path);

// flat key=value file, '#' comments; unknown keys are config_errors
train_config parse_config_file(const std::string &path);
void apply_config_entry(train_config &cfg, const std::string &key, const std::string &value);

const char *stop_reason_name(stop_reason r);

} // namespace rksynth
