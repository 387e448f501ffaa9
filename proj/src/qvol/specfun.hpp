#pragma once

// Complex special functions: principal logarithm, dilogarithm, Lobachevsky
// function, and the level-r quantum dilogarithm phi_r with its derivative.

#include <vector>

#include "common.hpp"

namespace qvol {

// Principal branch, arg in (-pi, pi). Errors on the cut (-inf, 0].
cplx principal_log(cplx z);

// Li_2 on the principal branch; cut along (1, inf).
cplx dilog(cplx z);

// Lobachevsky function: odd, pi-periodic primitive of -log|2 sin t|.
double lobachevsky(double theta);

// phi_r(z): contour integral of e^{(2z-pi)x} / (4x sinh(pi x) sinh(2pi x/r))
// over Omega = (-inf,-1/2] + upper semicircle of radius 1/2 + [1/2,inf),
// scaled by 4 pi i / r. Direct quadrature inside the analyticity strip
// -pi/r < Re z < pi + pi/r; outside, the finite-product shift identity
//   prod_{k=1}^n (1 - e^{2i(z-(2k-1)pi/r)})
//     = exp((r/4 pi i)(phi_r(z - 2n pi/r) - phi_r(z)))
// with principal logs of the factors. The principal-log choice can offset
// phi_r by integer multiples of 2 pi i * (4 pi / r); every consumer compares
// exp((r/4 pi i) phi_r), where that offset cancels.
// Poles: z = (a+1) pi + b pi/r and z = -a pi - b pi/r, a >= 0, b > 0 odd.
cplx quantum_dilog(int r, cplx z);

// d/dz phi_r(z), same contour and extension rules.
cplx quantum_dilog_prime(int r, cplx z);

// Distance from z to the pole set of phi_r (used by the pole guard and by
// callers that want to pre-validate lattice arguments).
double quantum_dilog_pole_distance(int r, cplx z);

// Gauss-Legendre nodes and weights on [-1,1], cached per order.
struct GaussLegendre {
    std::vector<double> x, w;
};
const GaussLegendre& gauss_legendre(int order);

}
