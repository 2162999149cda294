#ifndef ZKLAB_ERRORS_HPP
#define ZKLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zklab {

// Bad values fed into an operation (NaNs, out-of-range parameters).
struct invalid_input : std::invalid_argument {
    explicit invalid_input(const std::string& msg) : std::invalid_argument(msg) {}
};

// Derivative order above the supported cap.
struct unsupported_order : std::invalid_argument {
    explicit unsupported_order(const std::string& msg) : std::invalid_argument(msg) {}
};

// Inconsistent run configuration (grid/background mismatch, bad schema, ...).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A probe was asked to test a regime outside its hypotheses.
struct probe_misconfiguration : std::runtime_error {
    explicit probe_misconfiguration(const std::string& msg) : std::runtime_error(msg) {}
};

// Space-time field support violates the norm's frequency localization.
struct invalid_support : std::runtime_error {
    explicit invalid_support(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested discrete support region contains no lattice points.
struct empty_support : std::runtime_error {
    explicit empty_support(const std::string& msg) : std::runtime_error(msg) {}
};

// Time-differencing asked for at a record without both neighbors.
struct insufficient_stencil : std::runtime_error {
    explicit insufficient_stencil(const std::string& msg) : std::runtime_error(msg) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace zklab

#endif
