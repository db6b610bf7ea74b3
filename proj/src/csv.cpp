#include "rksynth/csv.hpp"

#include <cstdio>
#include <cstdlib>

#include "rksynth/errors.hpp"

namespace rksynth {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string &line, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

double parse_double_field(const std::string &field, const std::string &context) {
    if (field.empty()) throw io_error("empty numeric field in " + context);
    char *end = nullptr;
    double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size())
        throw io_error("bad numeric field '" + field + "' in " + context);
    return v;
}

} // namespace rksynth
