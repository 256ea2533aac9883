#pragma once

#include <string>

namespace allee {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double x);

}  // namespace allee
