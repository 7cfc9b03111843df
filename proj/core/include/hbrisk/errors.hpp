#pragma once

#include <stdexcept>
#include <string>

namespace hbrisk {

struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct DegenerateInput : std::runtime_error {
    explicit DegenerateInput(const std::string& msg) : std::runtime_error(msg) {}
};

struct LengthMismatch : std::invalid_argument {
    explicit LengthMismatch(const std::string& msg) : std::invalid_argument(msg) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConvergenceFailure : std::runtime_error {
    explicit ConvergenceFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct BracketFailure : std::runtime_error {
    explicit BracketFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvariantViolation : std::logic_error {
    explicit InvariantViolation(const std::string& msg) : std::logic_error(msg) {}
};

struct OrthonormalityError : std::invalid_argument {
    explicit OrthonormalityError(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace hbrisk
