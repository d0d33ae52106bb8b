#pragma once

#include <stdexcept>
#include <string>

namespace hillpt {

/// Bad couplings or solver settings (a <= 0, s below the growth bound, N too small...).
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to produce a trustworthy result.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hillpt
