#pragma once

#include <stdexcept>
#include <string>

namespace allee {

/// Bad user input: non-positive parameters, malformed config, bad ranges.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not produce a result for valid input.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace allee
