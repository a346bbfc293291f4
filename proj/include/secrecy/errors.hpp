#pragma once

#include <stdexcept>
#include <string>

namespace secrecy {

// bad user-supplied data (spec files, configs, invalid distributions)
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// valid inputs that hit a computational bound (unbounded region,
// infeasible histogram, candidate-space explosion)
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace secrecy
