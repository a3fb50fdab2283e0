#pragma once
#include <stdexcept>
#include <string>

namespace ellq {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// raised when a denominator theta value falls under the pole guard
struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StripError : std::domain_error {
    StripError() : std::domain_error("argument outside reduced strip") {}
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ellq
