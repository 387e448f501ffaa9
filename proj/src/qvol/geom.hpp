// Hyperbolic side: the potentials V^+/- on the regions D, D', D'', their
// critical points, and the cone-manifold data (volume, Chern-Simons,
// Hessian, holonomies) read off from the critical values.
#pragma once

#include <array>
#include <vector>

#include "qvol/cfrac.hpp"
#include "qvol/common.hpp"

namespace qvol {

enum class Region { D, Dprime, Dsecond };

// Open square with margin delta in the rotated coordinates (y+x, y-x):
//   D   : (delta, pi/2 - delta) x (delta, pi/2 - delta)
//   D'  : (delta, pi/2 - delta) x (pi + delta, 3pi/2 - delta)
//   D'' : (pi + delta, 3pi/2 - delta) x (delta, pi/2 - delta)
// Membership of complex (x, y) depends only on the real parts.
struct RegionSpec {
    Region which = Region::D;
    double delta = 0.0;  // 0 <= delta < pi/4
};

bool region_contains(const RegionSpec& spec, cplx x, cplx y);

enum class PotentialSign { plus, minus };

using Mat2 = std::array<std::array<cplx, 2>, 2>;

// V^sign(x,y) = (-p x^2 +- theta x)/q - 2pi x + 4xy - Li2(e^{-2i(y+x)})
//             + Li2(e^{2i(y-x)}) - (p'/q + a0) theta^2/4.
// Holomorphic on each of the three (complexified) regions; throws
// domain_error when (x, y) is outside the requested one.
cplx potential_V(PotentialSign sign, const SurgeryPresentation& pres,
                 double theta, cplx x, cplx y, const RegionSpec& region = {});

// (dV/dx, dV/dy) in closed form. Valid on the same regions as potential_V;
// the caller is responsible for staying inside one.
std::array<cplx, 2> grad_V(PotentialSign sign, const SurgeryPresentation& pres,
                           double theta, cplx x, cplx y);

// Hessian of V at (x, y), identical for both signs: with A = e^{2i(y+x)} and
// B = e^{2i(y-x)},
//   V_xx = -2p/q - 4 - 4A/(1-A) - 4B/(1-B)
//   V_xy =          - 4A/(1-A) + 4B/(1-B)
//   V_yy =      - 4 - 4A/(1-A) - 4B/(1-B).
Mat2 hess_V(const SurgeryPresentation& pres, cplx x, cplx y);

// Residuals of the two hyperbolic gluing equations for the two-tetrahedron
// triangulation of the figure-eight complement, with A'' = 1 - 1/A etc.:
//   edge:    log A + 2 log A'' + log B + 2 log B'' - 2 pi i
//   filling: p (log B' - log A'') + q (2 pi i - 2 log A - 4 log A'') - theta i.
std::array<cplx, 2> gluing_equations(cplx A, cplx B, long long p, long long q,
                                     double theta);

struct Holonomies {
    cplx Hm, Hl, Hgamma;
    double coreLength = 0;  // |Re H(gamma)|
};

// Solved hyperbolic cone structure for the p/q filling at cone angle theta.
struct ConeGeometry {
    long long p = 0;
    long long q = 1;
    long long a0 = 0;
    double theta = 0;
    cplx x0c, y0c;     // critical point of V^+ in the complexified D
    cplx A, B;         // shape parameters, Im A > 0 and Im B > 0
    double vol = 0;    // Im V^+(x0, y0)
    double cs = 0;     // -Re V^+(x0, y0) reduced to [0, pi^2)
    double csRaw = 0;  // -Re V^+(x0, y0) unreduced, used by the prediction
    Mat2 hess{};
    cplx hessDet;
    cplx Hm, Hl, Hgamma;
    double coreLength = 0;
    double gluingResidual = 0;  // max residual over the two equations
};

// Newton continuation in theta from the cusp seed (0, pi/6): theta stepped
// geometrically from 1e-3 to the target, Newton with the closed-form Hessian
// at each step, step halving on divergence down to 1e-8. Region membership
// in D is asserted at every iterate. Throws convergence_error (with the last
// good theta) on failure and domain_error if the solution leaves the
// geometric branch (Im A <= 0 or Im B <= 0).
ConeGeometry solve_critical(const SurgeryPresentation& pres, double theta);

// Continuation along an increasing grid in (0, 2pi); entry i is continued
// from entry i-1, so the whole family sits on one solution branch.
std::vector<ConeGeometry> cone_family(const SurgeryPresentation& pres,
                                      const std::vector<double>& thetaGrid);

// Logarithmic holonomies of the solved structure:
//   H(m) = 2 x0 i,  H(l) = (theta i - p H(m))/q,
//   H(gamma) = -q' H(m) + p' H(l) + a0 theta i.
Holonomies holonomies(const ConeGeometry& g);

// dH(l)/dH(m) as a function of L = H(m) on the deformation variety of the
// figure-eight complement:
//   2 (1 - 2e^L - 2e^{-L}) / sqrt(e^{2L} + e^{-2L} - 2e^L - 2e^{-L} - 1).
// branch = +1 takes the principal square root, -1 its negative; the caller
// fixes the branch against the solved family.
cplx nz_longitude_derivative(cplx Hm, int branch);

}
