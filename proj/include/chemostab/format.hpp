#pragma once

#include <string>

namespace chemostab {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

}  // namespace chemostab
