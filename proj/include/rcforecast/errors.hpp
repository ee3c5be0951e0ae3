#pragma once

#include <stdexcept>
#include <string>

namespace rcf {

/// Numerical failure (non-convergence, singular systems, blow-up). The CLI
/// maps this to exit code 2; std::invalid_argument (usage errors) maps to 1.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Integration blow-up, carries the index of the failing output sample.
class integration_error : public numerical_error {
public:
    integration_error(const std::string& msg, long failing_step)
        : numerical_error(msg + " (at output step " + std::to_string(failing_step) + ")"),
          step(failing_step) {}
    long step;
};

}  // namespace rcf
