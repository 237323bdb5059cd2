// errors.hpp -- exception taxonomy; maps onto CLI exit codes
#pragma once
#include <stdexcept>
#include <string>

namespace gencop {

// bad inputs: missing files/columns, malformed rows, invalid config (exit 2)
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// numerical breakdown: failed inversion, no bracket, non-convergence (exit 3)
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// requested dependence level outside a family's reachable range
struct tau_out_of_range : numeric_error {
    using numeric_error::numeric_error;
};

} // namespace gencop
