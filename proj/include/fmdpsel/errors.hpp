#pragma once

#include <stdexcept>
#include <string>

namespace fmdpsel {

/// Malformed or out-of-domain input (bad parameters, dimension mismatch,
/// unparseable files). CLI maps this to exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A configured enumeration/size cap was exceeded. CLI maps this to exit
/// code 3.
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure that should not occur on valid inputs (singular
/// systems, degenerate LPs).
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fmdpsel
