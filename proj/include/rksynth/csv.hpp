#pragma once

#include <string>
#include <vector>

namespace rksynth {

// 17 significant digits: doubles round-trip exactly through this
std::string fmt17(double v);

std::vector<std::string> split(const std::string &line, char sep);

// strict double parse, whole field must be consumed
double parse_double_field(const std::string &field, const std::string &context);

} // namespace rksynth
