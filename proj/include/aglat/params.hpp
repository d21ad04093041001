#pragma once

#include <string>

namespace aglat {

// Security-parameter bundle for the integer scheme and the attack.
// Defaults derive everything from lambda; any field can then be overridden.
struct Params {
    long lambda = 0;      // security parameter
    long rho = 0;         // noise bit-length
    long eta = 0;         // secret-key bit-length
    long gamma = 0;       // public-integer bit-length
    long tau = 0;         // number of public integers x_1..x_tau (x_0 extra)
    long subset_size = 0; // attack subset cardinality t

    // rho = lambda, eta = 4*lambda^2, gamma = lambda^5, tau = gamma + lambda,
    // subset_size = lambda^3
    static Params from_lambda(long lambda);

    bool valid() const;
    void validate() const; // throws std::domain_error with the failed condition
    std::string describe() const;
};

long ceil_log2(long v); // smallest k with 2^k >= v, v >= 1

} // namespace aglat
