#pragma once

#include <string>

namespace artfeat {

// Shortest text that parses back to the same double.
std::string format_full(double value);

// printf "%.<digits>g".
std::string format_sig(double value, int digits = 4);

}  // namespace artfeat
