#include "rksynth/optimizer.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <stdexcept>

#include "rksynth/csv.hpp"
#include "rksynth/errors.hpp"

namespace rksynth {

void validate(const train_config &cfg) {
    if (!(cfg.learning_rate_init > 0.0))
        throw config_error("learning_rate_init must be positive");
    if (!(cfg.momentum >= 0.0 && cfg.momentum < 1.0))
        throw config_error("momentum must be in [0, 1)");
    if (!(cfg.lr_increase > 1.0)) throw config_error("lr_increase must exceed 1");
    if (!(cfg.lr_decrease > 0.0 && cfg.lr_decrease < 1.0))
        throw config_error("lr_decrease must be in (0, 1)");
    if (!(cfg.max_loss_ratio > 1.0)) throw config_error("max_loss_ratio must exceed 1");
    if (cfg.max_epochs < 0) throw config_error("max_epochs must be nonnegative");
    if (!(cfg.goal_epsilon > 0.0)) throw config_error("goal_epsilon must be positive");
    if (!(cfg.init_hi > cfg.init_lo)) throw config_error("init_hi must exceed init_lo");
}

train_trace train(const train_config &cfg, const dataset &ds) {
    validate(cfg);
    std::mt19937_64 gen(cfg.rng_seed);
    auto uniform = [&]() { return double(gen() >> 11) * 0x1.0p-53; }; // [0, 1)
    auto draw = [&]() { return cfg.init_lo + (cfg.init_hi - cfg.init_lo) * uniform(); };
    param_vector p{draw(), draw(), draw()};
    param_vector v{0.0, 0.0, 0.0};
    double lr = cfg.learning_rate_init;

    forward_trace ft = forward(p, ds);
    double L = loss_parts(p, ft, ds).value;
    if (!std::isfinite(L)) throw non_finite_loss_error(0);

    train_trace tr;
    tr.epochs.reserve(size_t(cfg.max_epochs) + 1);
    tr.epochs.push_back({0, L, lr, p, true});

    for (long long epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        if (L < cfg.goal_epsilon) break;
        gradient_vector g = grad(p, ds, ft);
        param_vector vc{cfg.momentum * v.a21 - lr * g.d_a21, cfg.momentum * v.b1 - lr * g.d_b1,
                        cfg.momentum * v.b2 - lr * g.d_b2};
        param_vector pc{p.a21 + vc.a21, p.b1 + vc.b1, p.b2 + vc.b2};
        forward_trace ftc = forward(pc, ds);
        double Lc = loss_parts(pc, ftc, ds).value;
        if (!std::isfinite(Lc)) throw non_finite_loss_error(epoch);
        bool accepted = Lc <= cfg.max_loss_ratio * L;
        if (accepted) {
            if (Lc < L) lr *= cfg.lr_increase;
            p = pc;
            v = vc;
            L = Lc;
            ft = std::move(ftc);
        } else {
            lr *= cfg.lr_decrease;
            v = {0.0, 0.0, 0.0};
        }
        tr.epochs.push_back({epoch, L, lr, p, accepted});
    }
    tr.final_p = p;
    tr.final_loss = L;
    tr.reason = L < cfg.goal_epsilon ? stop_reason::goal_reached : stop_reason::max_epochs;
    return tr;
}

void write_trace_csv(const train_trace &tr, const std::string &path) {
    FILE *f = std::fopen(path.c_str(), "w");
    if (!f) throw io_error("cannot open " + path + " for writing");
    std::fprintf(f, "epoch,loss,lr,a21,b1,b2,accepted\n");
    for (const auto &e : tr.epochs)
        std::fprintf(f, "%lld,%s,%s,%s,%s,%s,%d\n", e.epoch, fmt17(e.loss).c_str(),
                     fmt17(e.lr).c_str(), fmt17(e.p.a21).c_str(), fmt17(e.p.b1).c_str(),
                     fmt17(e.p.b2).c_str(), int(e.accepted));
    std::fclose(f);
}

namespace {

double config_double(const std::string &key, const std::string &value) {
    char *end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size())
        throw config_error("invalid value for " + key + ": '" + value + "'");
    return v;
}

long long config_ll(const std::string &key, const std::string &value) {
    char *end = nullptr;
    long long v = std::strtoll(value.c_str(), &end, 10);
    if (value.empty() || end != value.c_str() + value.size())
        throw config_error("invalid value for " + key + ": '" + value + "'");
    return v;
}

unsigned long long config_ull(const std::string &key, const std::string &value) {
    char *end = nullptr;
    unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (value.empty() || end != value.c_str() + value.size())
        throw config_error("invalid value for " + key + ": '" + value + "'");
    return v;
}

std::string trim(const std::string &s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

} // namespace

void apply_config_entry(train_config &cfg, const std::string &key, const std::string &value) {
    if (key == "learning_rate_init") cfg.learning_rate_init = config_double(key, value);
    else if (key == "momentum") cfg.momentum = config_double(key, value);
    else if (key == "lr_increase") cfg.lr_increase = config_double(key, value);
    else if (key == "lr_decrease") cfg.lr_decrease = config_double(key, value);
    else if (key == "max_loss_ratio") cfg.max_loss_ratio = config_double(key, value);
    else if (key == "max_epochs") cfg.max_epochs = config_ll(key, value);
    else if (key == "goal_epsilon") cfg.goal_epsilon = config_double(key, value);
    else if (key == "rng_seed") cfg.rng_seed = config_ull(key, value);
    else if (key == "init_lo") cfg.init_lo = config_double(key, value);
    else if (key == "init_hi") cfg.init_hi = config_double(key, value);
    else throw config_error("unknown config key: " + key);
}

train_config parse_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file " + path);
    train_config cfg;
    std::string line;
    long long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(path + " line " + std::to_string(lineno) +
                               ": expected key=value");
        apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

const char *stop_reason_name(stop_reason r) {
    return r == stop_reason::goal_reached ? "goal_reached" : "max_epochs";
}

} // namespace rksynth
