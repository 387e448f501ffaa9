#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qvol {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

inline constexpr double PI = 3.141592653589793238462643383279502884;
inline constexpr long double PI_L = 3.141592653589793238462643383279502884L;

// Domain violations: branch cuts, pole proximity, excluded surgery
// coefficients, out-of-range indices.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested floating format cannot absorb the cancellation of a sum.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Iteration failed to converge (Newton continuation, quadrature tails).
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

// standard: IEEE binary64. extended: x87 80-bit long double (64-bit mantissa).
// Anything wider is out of scope and rejected where a mantissa request appears.
enum class Precision { standard, extended };

inline int mantissaDigits10(Precision p) {
    return p == Precision::standard ? 15 : 18;
}

}
