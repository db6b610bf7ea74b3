#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rksynth/bench.hpp"
#include "rksynth/csv.hpp"
#include "rksynth/datagen.hpp"
#include "rksynth/errors.hpp"
#include "rksynth/optimizer.hpp"
#include "rksynth/rationalize.hpp"

using namespace rksynth;
namespace fs = std::filesystem;

namespace {

// relative output paths land under $RKSYNTH_OUT_DIR when it is set
std::string resolve_out(const std::string &p) {
    const char *base = std::getenv("RKSYNTH_OUT_DIR");
    if (!base || !*base) return p;
    fs::path fp(p);
    if (fp.is_absolute()) return p;
    return (fs::path(base) / fp).string();
}

std::vector<long long> parse_steps(const std::string &s) {
    std::vector<long long> out;
    for (const auto &f : split(s, ',')) {
        char *end = nullptr;
        long long v = std::strtoll(f.c_str(), &end, 10);
        if (f.empty() || end != f.c_str() + f.size() || v < 1)
            throw std::invalid_argument("invalid step count '" + f + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("step list is empty");
    return out;
}

std::vector<named_tableau> parse_methods(const std::string &s) {
    auto all = builtin_methods();
    std::vector<named_tableau> out;
    for (const auto &name : split(s, ',')) {
        bool found = false;
        for (const auto &m : all)
            if (m.name == name) {
                out.push_back(m);
                found = true;
                break;
            }
        if (!found) throw std::invalid_argument("unknown method '" + name + "'");
    }
    if (out.empty()) throw std::invalid_argument("method list is empty");
    return out;
}

std::string plot_path(const std::string &csv_path) {
    fs::path p(csv_path);
    fs::path dir = p.parent_path();
    return (dir / (p.stem().string() + "_plot.dat")).string();
}

long long emit_dataset(double t_start, double t_end, double h, const std::string &dir) {
    dataset ds = generate({t_start, t_end, h});
    write_dataset_csv(ds, dir);
    std::printf("wrote %lld rows to %s\n", ds.rows(), dir.c_str());
    return ds.rows();
}

train_trace emit_train(const train_config &cfg, const dataset &ds, const std::string &trace_path) {
    train_trace tt = train(cfg, ds);
    write_trace_csv(tt, trace_path);
    double r1 = tt.final_p.b1 + tt.final_p.b2 - 1.0;
    double r2 = tt.final_p.a21 * tt.final_p.b2 - 0.5;
    std::printf("final a21=%s b1=%s b2=%s loss=%s\n", fmt17(tt.final_p.a21).c_str(),
                fmt17(tt.final_p.b1).c_str(), fmt17(tt.final_p.b2).c_str(),
                fmt17(tt.final_loss).c_str());
    std::printf("residuals r1=%s r2=%s\n", fmt17(r1).c_str(), fmt17(r2).c_str());
    std::printf("stop reason: %s after %lld epochs\n", stop_reason_name(tt.reason),
                tt.epochs.back().epoch);
    std::printf("trace: %s\n", trace_path.c_str());
    return tt;
}

rational rationalize_text(const std::string &text, long long max_den) {
    if (max_den < 1 || max_den > 1000000)
        throw std::invalid_argument("max_denominator must be in [1, 1000000]");
    bool exact = true;
    rational r;
    try {
        r = parse_rational(text);
    } catch (const rational_overflow_error &) {
        exact = false;
    } catch (const std::invalid_argument &) {
        exact = false;
    }
    // a fraction already within the bound is kept untouched
    if (exact && r.den() <= max_den) return r;
    double x;
    if (exact) {
        x = r.to_double();
    } else {
        char *end = nullptr;
        x = std::strtod(text.c_str(), &end);
        if (text.empty() || end != text.c_str() + text.size())
            throw std::invalid_argument("cannot parse coefficient '" + text + "'");
    }
    return best_rational(x, max_den);
}

tableau2<rational> emit_rationalize(const std::string &text, long long max_den) {
    rational a21 = rationalize_text(text, max_den);
    tableau2<rational> t = complete_tableau(a21);
    std::printf("a21 = %s\n", t.a21.str().c_str());
    std::printf("c2 = %s\n", t.c2.str().c_str());
    std::printf("b1 = %s\n", t.b1.str().c_str());
    std::printf("b2 = %s\n", t.b2.str().c_str());
    return t;
}

void emit_verify(const tableau2<rational> &t) {
    auto [r1, r2] = order_residuals(t);
    char buf[128];
    std::snprintf(buf, sizeof buf, "order 2: residuals (%g, %g); %s", r1.to_double(),
                  r2.to_double(), t.c2 == t.a21 ? "consistent" : "inconsistent");
    std::printf("%s\n", buf);
}

int emit_bench(const std::vector<named_tableau> &methods, double t_end,
               const std::vector<long long> &steps, const std::string &out_csv) {
    auto recs = run_benchmark(methods, t_end, steps);
    std::string out_plot = plot_path(out_csv);
    write_bench_csv(recs, out_csv);
    write_bench_plot(recs, out_plot);
    std::printf("wrote %zu records to %s and %s\n", recs.size(), out_csv.c_str(),
                out_plot.c_str());
    long long failed = 0;
    for (const auto &r : recs) failed += r.failed;
    if (failed > 0) {
        std::fprintf(stderr, "%lld cells failed: singular trajectory\n", failed);
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"two-stage Runge-Kutta synthesis on the two-body problem"};
    // --h is a real option below, so help must not claim -h
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);
    int rc = 0;

    // gen-data
    auto *gen = app.add_subcommand("gen-data", "write training inputs.csv/targets.csv");
    double g_t_start = 0.0, g_t_end = 0.0, g_h = 0.0;
    std::string g_out = ".";
    gen->add_option("--t-start", g_t_start, "interval start")->capture_default_str();
    gen->add_option("--t-end", g_t_end, "interval end")->required();
    gen->add_option("--h", g_h, "steplength")->required();
    gen->add_option("--out", g_out, "output directory")->capture_default_str();
    gen->callback([&]() { emit_dataset(g_t_start, g_t_end, g_h, resolve_out(g_out)); });

    // train
    auto *tr = app.add_subcommand("train", "fit a21,b1,b2 by gradient descent");
    std::string t_data, t_config, t_trace = "trace.csv";
    train_config t_cfg;
    unsigned long long t_seed = 0;
    double t_lr = 0, t_mom = 0, t_inc = 0, t_dec = 0, t_ratio = 0, t_goal = 0, t_lo = 0, t_hi = 0;
    long long t_epochs = 0;
    tr->add_option("--data", t_data, "dataset directory (inputs.csv/targets.csv)")->required();
    tr->add_option("--config", t_config, "key=value config file");
    tr->add_option("--trace-out", t_trace, "trace CSV path")->capture_default_str();
    tr->add_option("--seed", t_seed, "RNG seed for the initial point");
    tr->add_option("--lr-init", t_lr, "initial learning rate");
    tr->add_option("--momentum", t_mom, "momentum coefficient");
    tr->add_option("--lr-increase", t_inc, "rate growth on improvement");
    tr->add_option("--lr-decrease", t_dec, "rate decay on rejection");
    tr->add_option("--max-loss-ratio", t_ratio, "acceptance threshold");
    tr->add_option("--max-epochs", t_epochs, "epoch budget");
    tr->add_option("--goal-epsilon", t_goal, "stop when the loss drops below this");
    tr->add_option("--init-lo", t_lo, "initial draw lower bound");
    tr->add_option("--init-hi", t_hi, "initial draw upper bound");
    tr->callback([&]() {
        train_config cfg = t_config.empty() ? train_config{} : parse_config_file(t_config);
        if (tr->count("--seed")) cfg.rng_seed = t_seed;
        if (tr->count("--lr-init")) cfg.learning_rate_init = t_lr;
        if (tr->count("--momentum")) cfg.momentum = t_mom;
        if (tr->count("--lr-increase")) cfg.lr_increase = t_inc;
        if (tr->count("--lr-decrease")) cfg.lr_decrease = t_dec;
        if (tr->count("--max-loss-ratio")) cfg.max_loss_ratio = t_ratio;
        if (tr->count("--max-epochs")) cfg.max_epochs = t_epochs;
        if (tr->count("--goal-epsilon")) cfg.goal_epsilon = t_goal;
        if (tr->count("--init-lo")) cfg.init_lo = t_lo;
        if (tr->count("--init-hi")) cfg.init_hi = t_hi;
        dataset ds = read_dataset_csv(t_data);
        emit_train(cfg, ds, resolve_out(t_trace));
    });

    // rationalize
    auto *ra = app.add_subcommand("rationalize", "snap a21 to a fraction, complete the tableau");
    std::string r_a21;
    long long r_maxden = 100;
    ra->add_option("--a21", r_a21, "abscissa, decimal or fraction")->required();
    ra->add_option("--max-den", r_maxden, "largest allowed denominator")->capture_default_str();
    ra->callback([&]() { emit_rationalize(r_a21, r_maxden); });

    // verify
    auto *ve = app.add_subcommand("verify", "check order conditions of a tableau exactly");
    std::string v_tab;
    ve->add_option("--tableau", v_tab, "c2,a21,b1,b2 as fractions or decimals")->required();
    ve->callback([&]() {
        auto fields = split(v_tab, ',');
        if (fields.size() != 4)
            throw std::invalid_argument("--tableau expects c2,a21,b1,b2");
        rational c2 = parse_rational(fields[0]);
        rational a21 = parse_rational(fields[1]);
        rational b1 = parse_rational(fields[2]);
        rational b2 = parse_rational(fields[3]);
        tableau2<rational> t(a21, b1, b2);
        t.c2 = c2;
        emit_verify(t);
    });

    // bench
    auto *be = app.add_subcommand("bench", "work-precision benchmark on the circular orbit");
    double b_t_end = 1000.0;
    std::string b_steps, b_methods = "kepler,heun,midpoint,ralston", b_out = "bench.csv";
    be->add_option("--t-end", b_t_end, "integration end time")->capture_default_str();
    be->add_option("--steps", b_steps, "comma-separated step counts (default doubling ladder)");
    be->add_option("--methods", b_methods, "comma-separated method names")->capture_default_str();
    be->add_option("--out", b_out, "output CSV path")->capture_default_str();
    be->callback([&]() {
        std::vector<long long> steps =
            b_steps.empty() ? default_step_ladder() : parse_steps(b_steps);
        rc = emit_bench(parse_methods(b_methods), b_t_end, steps, resolve_out(b_out));
    });

    // pipeline
    auto *pi = app.add_subcommand("pipeline", "gen-data, train, rationalize, verify, bench");
    double pi_t_start = 0.0, pi_t_end = 2.0 * std::acos(-1.0), pi_h = std::acos(-1.0) / 128.0;
    std::string pi_dir = ".", pi_config, pi_steps;
    unsigned long long pi_seed = 1;
    long long pi_epochs = -1, pi_maxden = 100;
    double pi_goal = -1.0, pi_bench_t_end = 1000.0;
    pi->add_option("--t-start", pi_t_start, "dataset interval start")->capture_default_str();
    pi->add_option("--t-end", pi_t_end, "dataset interval end")->capture_default_str();
    pi->add_option("--h", pi_h, "dataset steplength")->capture_default_str();
    pi->add_option("--out-dir", pi_dir, "directory for all outputs")->capture_default_str();
    pi->add_option("--config", pi_config, "key=value config file");
    pi->add_option("--seed", pi_seed, "RNG seed")->capture_default_str();
    pi->add_option("--max-epochs", pi_epochs, "epoch budget override");
    pi->add_option("--goal-epsilon", pi_goal, "stop threshold override");
    pi->add_option("--max-den", pi_maxden, "rationalization denominator bound")
        ->capture_default_str();
    pi->add_option("--bench-t-end", pi_bench_t_end, "benchmark end time")->capture_default_str();
    pi->add_option("--bench-steps", pi_steps, "benchmark step counts");
    pi->callback([&]() {
        std::string dir = resolve_out(pi_dir);
        std::printf("[gen-data] ");
        dataset ds = generate({pi_t_start, pi_t_end, pi_h});
        write_dataset_csv(ds, dir);
        std::printf("wrote %lld rows to %s\n", ds.rows(), dir.c_str());

        train_config cfg = pi_config.empty() ? train_config{} : parse_config_file(pi_config);
        cfg.rng_seed = pi_seed;
        if (pi->count("--max-epochs")) cfg.max_epochs = pi_epochs;
        if (pi->count("--goal-epsilon")) cfg.goal_epsilon = pi_goal;
        std::printf("[train] ");
        train_trace tt = emit_train(cfg, ds, (fs::path(dir) / "trace.csv").string());

        std::printf("[rationalize] ");
        tableau2<rational> t = emit_rationalize(fmt17(tt.final_p.a21), pi_maxden);

        std::printf("[verify] ");
        emit_verify(t);

        std::vector<named_tableau> methods = builtin_methods();
        methods.insert(methods.begin(), {"trained", to_double(t)});
        std::vector<long long> steps =
            pi_steps.empty() ? default_step_ladder() : parse_steps(pi_steps);
        std::printf("[bench] ");
        rc = emit_bench(methods, pi_bench_t_end, steps,
                        (fs::path(dir) / "bench.csv").string());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const config_error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return rc;
}
