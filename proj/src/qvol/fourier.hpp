// Poisson-summation side of the invariant: bump function, the r-deformed
// potentials V_r of the lattice sum, numerical Fourier coefficients of the
// bump-cut summand, the leading-term prediction, and the end-to-end
// asymptotic sweep RT_r ~ predicted.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "qvol/cfrac.hpp"
#include "qvol/common.hpp"
#include "qvol/geom.hpp"
#include "qvol/qinv.hpp"

namespace qvol {

// Thrown by verify_volume_conjecture when the requested cone angle fails the
// growth hypothesis vol(theta) > 6 Lambda(pi/3) / 2.
struct hypothesis_error : domain_error {
    using domain_error::domain_error;
};

// Smooth cutoff used to extend the finite lattice sum over all of Z^{k+1}.
// psi = 1 on [-pi+2pi/r, pi-2pi/r]^{k-1} x closure(D_{delta/2}),
// psi = 0 outside (-pi,pi)^{k-1} x D, and moves smoothly in between:
// an e^{-1/t} mollifier smoothstep on each collar, collar width delta/2 in
// the rotated coordinates y +- x and 2pi/r in each box coordinate x_i.
struct BumpSpec {
    double delta = 0.15;  // 0 < delta < pi/8
    int r = 5;
};

// point = (x_1, .., x_{k-1}, x_k, y); k is inferred from point.size() - 1.
// The last two coordinates carry the three-square collar, the first k-1 the
// box collars. C-infinity by construction, value in [0, 1].
double bump_psi(const BumpSpec& spec, const std::vector<double>& point);

// Two-variable r-deformed potential on the requested region, with
// x0 = theta/2:
//   V_r^+-(x,y) = (-p x^2 +- (-1)^k 2 x0 x)/q - 2pi x + 4xy
//                 - phi_r(arg-) + phi_r(arg+) - (p'/q + a0) x0^2,
// where (arg-, arg+) is (pi-y-x-pi/r, y-x+pi/r) on D, the + argument moves
// to y-x-pi+pi/r on D', and the - argument to 2pi-y-x-pi/r on D''.
// Satisfies V_r = V - (2 pi i/r)(log(1-e^{-2i(y+x)}) + log(1-e^{2i(y-x)}))
// + O(1/r^2), where V is potential_V with the matching sign for even k and
// the opposite one for odd k (the two-variable reduction swaps the labels
// once per square completion).
cplx Vr_potential(PotentialSign sign, const SurgeryPresentation& pres,
                  double theta, int r, cplx x, cplx y,
                  const RegionSpec& region = {});

// One summand g^+-(x_1..x_k, y) of the defining half-integer lattice sum,
// evaluated at the real point with coordinates x_i = 2 pi m_i / r and
// y = 2 pi m / r:
//   eps * e^{-i x_k} * exp((r/4 pi i) * U_r^+-),
//   U_r^+- = +-2 x0 x_1 - a0 x0^2 - sum a_i x_i^2 - 2 sum x_i x_{i+1}
//            - 2pi x_k + 4 x_k y - phi_r(arg-) + phi_r(arg+),
// with eps and the phi_r arguments chosen by the coarse cases
//   0 <= y+-x_k < pi           -> eps = 2
//   y+x_k < pi < y-x_k < 2pi   -> eps = 1, arg+ shifted by -pi
//   y-x_k < pi < y+x_k < 2pi   -> eps = 1, arg- reflected at 2pi
// and zero outside all three. The y = +-x_k edges belong to the cases: the
// factorial ratio behind the closed form degenerates there to (q)_0 = 1
// resp. (q)_{r-1} = r but keeps the same expression. Here x0 = theta/2, so
// the plus sign matches Vr_potential's minus label when k is odd.
cplx lattice_summand(PotentialSign sign, const SurgeryPresentation& pres,
                     double theta, int r, const std::vector<double>& xs,
                     double y);

// Adaptive tensor Gauss-Legendre quadrature: panels split dyadically until
// the per-panel variation of the exponent satisfies (r/4pi)|delta V| <
// maxPhase, then order x order nodes per panel. Panel evaluation runs on the
// deterministic chunked tree, so QVOL_THREADS never changes bits.
struct QuadratureSpec {
    int order = 12;
    double maxPhase = PI / 2;
    std::size_t maxPanels = std::size_t(1) << 22;
    double delta = 0.15;  // region shrink margin is delta/2; 0 < delta < pi/8
};

// Reduced Fourier coefficient with shift indices (k0, k1, k2):
//   (i^{-(k-1)/2} r^{(k+3)/2} / (4 pi^2 sqrt q)) *
//   integral over D_{delta/2} of eps(x,y) e^{-xi} e^{(r/4 pi i) W}
// with W = V_r^{sign} - 4 k0 pi x / q - 4 k1 pi x - 4 k2 pi y, summed over
// the three squares. At (0,0,0) this is the two-variable reduction of the
// leading coefficient of the Poisson-summed invariant; nonzero indices give
// the comparison integrals that dominate the other coefficients. The real
// constant folded into W by the k-variable square completion is a global
// phase and is dropped; magnitudes are unaffected.
// Scope: r <= 51 odd, k <= 2. Throws convergence_error when the panel
// budget is exhausted.
cplx fourier_coefficient(const SurgeryPresentation& pres, double theta, int r,
                         const std::array<long long, 3>& indices,
                         PotentialSign sign, const QuadratureSpec& quad = {});

// Same value restricted to a single square; fourier_coefficient is the sum
// of the three. Exposed so the D' / D'' tails can be measured alone.
cplx fourier_coefficient_region(const SurgeryPresentation& pres, double theta,
                                int r, const std::array<long long, 3>& indices,
                                PotentialSign sign, Region which,
                                const QuadratureSpec& quad = {});

// Two-sided Poisson check at k = 1: lhs sums psi * (g^+ + g^-) over the
// half-integer lattice, rhs sums the exact transform
//   fhat^+-(n1, n) = (-1)^{n1+n} (r/2pi)^2 *
//     integral over D of psi eps e^{-xi} e^{(r/4pi i)(U_r^+- -4pi n1 x -4pi n y)}
// over all |n1|, |n| <= maxIndex. gap = |lhs - rhs| / |lhs|. indicatorBump
// replaces psi by the indicator of D on both sides, which destroys the decay
// of the coefficients; kept for the degradation measurement.
struct PoissonCheck {
    cplx lhs;
    cplx rhs;
    double gap = 0;
};
PoissonCheck poisson_check(const SurgeryPresentation& pres, double theta,
                           int r, long long maxIndex,
                           const QuadratureSpec& quad = {},
                           bool indicatorBump = false);

// Leading-term prediction for RT_r at the solved geometry g:
//   4 pi i * prefactor * (-2 i^{-(k-3)/2} r^{(k+1)/2} /
//       (pi sqrt(q) sqrt(-det Hess V^+))) * e^{(r/4 pi i) V^+(x0, y0)}
// where prefactor is symmetrized_prefactor(r, pres) and the exponent is the
// unreduced critical value, e^{(r/4pi)(vol + i csRaw)}. The square root is
// principal; sqrtSign = -1 selects the other sheet (the asymptotic sweep
// fixes it once at its smallest r and records the choice).
cplx predict_leading(const SurgeryPresentation& pres, int r,
                     const ConeGeometry& g, int sqrtSign = +1);

struct AsymptoticRow {
    int r = 0;
    int m0 = 0;
    cplx rt;
    cplx predicted;
    double ratioError = 0;  // |rt / predicted - 1|
    double logGrowth = 0;   // (4 pi / r) log |rt|
    double thetaRow = 0;    // realized cone angle 2|x0(m0)|
    double volRow = 0;      // geometric volume at thetaRow
};

struct AsymptoticReport {
    std::vector<AsymptoticRow> rows;  // sorted by r
    double volFit = 0;      // slope of log|rt| - log|predicted| + (r/4pi) volRow
                            // against r/4pi; equals vol when the prediction holds
    double prefactorExponentFit = 0;  // slope of the same residual against log r
                                      // with the exponential part removed; the
                                      // model value is (k+1)/2
    double volTarget = 0;   // solved volume at the requested theta
    double csTarget = 0;    // Chern-Simons at the requested theta, in [0, pi^2)
    int sqrtSign = +1;
    bool branchFlipped = false;
};

// Full sweep: for each r, the color tracking theta on the chosen branch,
// RT_r (symmetrized mode), the solved geometry at the realized angle, and
// the prediction. Throws hypothesis_error unless vol(theta) exceeds half the
// cusped volume 6 Lambda(pi/3); rList must be odd and strictly increasing.
AsymptoticReport verify_volume_conjecture(const SurgeryPresentation& pres,
                                          double theta,
                                          const std::vector<int>& rList,
                                          ColorBranch branch = ColorBranch::minus,
                                          Precision prec = Precision::standard);

// CSV with header r,m0,rt_re,rt_im,pred_re,pred_im,ratio_err,log_growth and
// one %.17g row per sweep entry. Byte-deterministic.
std::string report_csv(const AsymptoticReport& report);

// JSON object with the same row fields plus a "fit" block (volFit, volGap,
// prefactorExponentFit, volTarget, csTarget, sqrtSign, branchFlipped), where
// volGap = |volFit - volTarget|.
std::string report_json(const AsymptoticReport& report);

}
