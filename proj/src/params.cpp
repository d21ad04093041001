#include "aglat/params.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace aglat {

long ceil_log2(long v) {
    if (v < 1) throw std::domain_error("ceil_log2 requires v >= 1");
    long k = 0;
    long pow = 1;
    while (pow < v) {
        if (pow > std::numeric_limits<long>::max() / 2)
            throw std::domain_error("ceil_log2 overflow");
        pow *= 2;
        ++k;
    }
    return k;
}

Params Params::from_lambda(long lambda) {
    if (lambda < 1) throw std::domain_error("lambda must be >= 1");
    if (lambda > 6000) throw std::domain_error("lambda too large for 64-bit derived sizes");
    Params p;
    p.lambda = lambda;
    p.rho = lambda;
    p.eta = 4 * lambda * lambda;
    p.gamma = lambda * lambda * lambda * lambda * lambda;
    p.tau = p.gamma + lambda;
    p.subset_size = lambda * lambda * lambda;
    return p;
}

bool Params::valid() const {
    if (lambda < 1 || rho < 1 || tau < 1) return false;
    if (eta <= rho + 3 + ceil_log2(tau)) return false;
    if (gamma <= eta) return false;
    if (subset_size < 1 || subset_size > tau) return false;
    return true;
}

void Params::validate() const {
    if (lambda < 1) throw std::domain_error("params: lambda must be >= 1");
    if (rho < 1) throw std::domain_error("params: rho must be >= 1");
    if (tau < 1) throw std::domain_error("params: tau must be >= 1");
    if (eta <= rho + 3 + ceil_log2(tau))
        throw std::domain_error("params: eta must exceed rho + 3 + ceil(log2 tau) (decryption margin)");
    if (gamma <= eta) throw std::domain_error("params: gamma must exceed eta");
    if (subset_size < 1) throw std::domain_error("params: subset_size must be >= 1");
    if (subset_size > tau) throw std::domain_error("params: subset_size must not exceed tau");
}

std::string Params::describe() const {
    std::ostringstream os;
    os << "lambda=" << lambda << " rho=" << rho << " eta=" << eta
       << " gamma=" << gamma << " tau=" << tau << " t=" << subset_size;
    return os.str();
}

} // namespace aglat
