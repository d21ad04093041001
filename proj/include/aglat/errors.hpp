#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aglat {

// Linearly dependent (or zero) basis row detected during orthogonalization.
class DegenerateBasisError : public std::runtime_error {
public:
    DegenerateBasisError(std::size_t row, const std::string& what)
        : std::runtime_error(what), row_(row) {}
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

// A tractability guard refused the operation (oracle asked to do too much work).
class GuardError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Parameters make the requested computation meaningless (e.g. threshold < 2).
class ParamsTooSmallError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Exhaustive search completed without finding a solution.
class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Noise exceeded the budget needed for exact extraction.
class NoiseBudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace aglat
