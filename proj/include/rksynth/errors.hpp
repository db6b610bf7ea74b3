#pragma once

#include <stdexcept>
#include <string>

namespace rksynth {

struct singular_state_error : std::runtime_error {
    long long index;
    explicit singular_state_error(long long idx = -1)
        : std::runtime_error(idx < 0 ? "state radius below singular threshold"
                                     : "state radius below singular threshold at step " +
                                           std::to_string(idx)),
          index(idx) {}
};

struct non_integer_step_error : std::runtime_error {
    explicit non_integer_step_error(const std::string &msg) : std::runtime_error(msg) {}
};

struct non_finite_loss_error : std::runtime_error {
    long long epoch;
    explicit non_finite_loss_error(long long ep)
        : std::runtime_error("non-finite loss at epoch " + std::to_string(ep)), epoch(ep) {}
};

struct zero_abscissa_error : std::runtime_error {
    zero_abscissa_error() : std::runtime_error("abscissa must be nonzero") {}
};

struct rational_overflow_error : std::runtime_error {
    explicit rational_overflow_error(const std::string &msg) : std::runtime_error(msg) {}
};

struct config_error : std::runtime_error {
    explicit config_error(const std::string &msg) : std::runtime_error(msg) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace rksynth
