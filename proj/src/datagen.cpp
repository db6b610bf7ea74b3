#include "rksynth/datagen.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "rksynth/csv.hpp"
#include "rksynth/errors.hpp"

namespace rksynth {

long long step_count(const grid_spec &g) {
    if (!(g.h > 0.0)) throw std::invalid_argument("steplength h must be positive");
    if (!(g.t_end > g.t_start)) throw std::invalid_argument("t_end must exceed t_start");
    double ratio = (g.t_end - g.t_start) / g.h;
    double rounded = std::round(ratio);
    if (rounded < 0.5 || std::fabs(ratio - rounded) > 1e-9)
        throw non_integer_step_error("(t_end - t_start)/h = " + fmt17(ratio) +
                                     " is not an integer step count");
    return (long long)rounded;
}

dataset generate(const grid_spec &g) {
    long long n = step_count(g);
    dataset ds;
    ds.h = g.h;
    ds.inputs.resize(size_t(n));
    ds.targets.resize(size_t(n));
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        ds.inputs[size_t(i)] = analytic_state(g.t_start + double(i) * g.h);
        ds.targets[size_t(i)] = analytic_state(g.t_start + double(i + 1) * g.h);
    }
    return ds;
}

dataset generate_serial(const grid_spec &g) {
    long long n = step_count(g);
    dataset ds;
    ds.h = g.h;
    ds.inputs.resize(size_t(n));
    ds.targets.resize(size_t(n));
    for (long long i = 0; i < n; ++i) {
        ds.inputs[size_t(i)] = analytic_state(g.t_start + double(i) * g.h);
        ds.targets[size_t(i)] = analytic_state(g.t_start + double(i + 1) * g.h);
    }
    return ds;
}

void write_dataset_csv(const dataset &ds, const std::string &dir) {
    std::filesystem::create_directories(dir);
    std::string ipath = dir + "/inputs.csv";
    std::string tpath = dir + "/targets.csv";
    FILE *fi = std::fopen(ipath.c_str(), "w");
    if (!fi) throw io_error("cannot open " + ipath + " for writing");
    std::string hs = fmt17(ds.h);
    std::fprintf(fi, "x,y,vx,vy,h,one\n");
    for (const auto &s : ds.inputs)
        std::fprintf(fi, "%s,%s,%s,%s,%s,1\n", fmt17(s.x).c_str(), fmt17(s.y).c_str(),
                     fmt17(s.vx).c_str(), fmt17(s.vy).c_str(), hs.c_str());
    std::fclose(fi);
    FILE *ft = std::fopen(tpath.c_str(), "w");
    if (!ft) throw io_error("cannot open " + tpath + " for writing");
    std::fprintf(ft, "x,y,vx,vy\n");
    for (const auto &s : ds.targets)
        std::fprintf(ft, "%s,%s,%s,%s\n", fmt17(s.x).c_str(), fmt17(s.y).c_str(),
                     fmt17(s.vx).c_str(), fmt17(s.vy).c_str());
    std::fclose(ft);
}

namespace {

std::vector<std::vector<double>> read_table(const std::string &path, const std::string &header,
                                            size_t ncols) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw io_error(path + " is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) throw io_error(path + ": expected header '" + header + "', got '" + line + "'");
    std::vector<std::vector<double>> rows;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != ncols)
            throw io_error(path + " line " + std::to_string(lineno) + ": expected " +
                           std::to_string(ncols) + " fields");
        std::vector<double> row(ncols);
        for (size_t c = 0; c < ncols; ++c)
            row[c] = parse_double_field(fields[c], path + " line " + std::to_string(lineno));
        rows.push_back(row);
    }
    if (rows.empty()) throw io_error(path + " has no data rows");
    return rows;
}

} // namespace

dataset read_dataset_csv(const std::string &dir) {
    auto irows = read_table(dir + "/inputs.csv", "x,y,vx,vy,h,one", 6);
    auto trows = read_table(dir + "/targets.csv", "x,y,vx,vy", 4);
    if (irows.size() != trows.size())
        throw io_error(dir + ": inputs.csv and targets.csv row counts differ");
    dataset ds;
    ds.h = irows[0][4];
    ds.inputs.reserve(irows.size());
    ds.targets.reserve(trows.size());
    for (size_t i = 0; i < irows.size(); ++i) {
        if (irows[i][4] != ds.h)
            throw io_error(dir + "/inputs.csv: steplength column is not constant");
        if (irows[i][5] != 1.0)
            throw io_error(dir + "/inputs.csv: dummy column must be 1");
        ds.inputs.push_back({irows[i][0], irows[i][1], irows[i][2], irows[i][3]});
        ds.targets.push_back({trows[i][0], trows[i][1], trows[i][2], trows[i][3]});
    }
    if (!(ds.h > 0.0)) throw io_error(dir + "/inputs.csv: steplength must be positive");
    return ds;
}

} // namespace rksynth
