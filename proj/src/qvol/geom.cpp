#include "qvol/geom.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include "qvol/specfun.hpp"

namespace qvol {

namespace {

constexpr cplx I{0.0, 1.0};

// Rotated-coordinate bounds of the three regions. Each region is the open
// square (lo1, hi1) x (lo2, hi2) in (u, v) = (Re y + Re x, Re y - Re x).
struct Bounds {
    double uLo, uHi, vLo, vHi;
};

Bounds region_bounds(const RegionSpec& spec) {
    if (!(spec.delta >= 0.0) || !(spec.delta < PI / 4.0))
        throw domain_error("region margin must satisfy 0 <= delta < pi/4");
    double d = spec.delta;
    switch (spec.which) {
        case Region::D:
            return {d, PI / 2.0 - d, d, PI / 2.0 - d};
        case Region::Dprime:
            return {d, PI / 2.0 - d, PI + d, 3.0 * PI / 2.0 - d};
        case Region::Dsecond:
            return {PI + d, 3.0 * PI / 2.0 - d, d, PI / 2.0 - d};
    }
    throw domain_error("unknown region");
}

bool in_D(cplx x, cplx y) {
    double u = y.real() + x.real();
    double v = y.real() - x.real();
    return u > 0.0 && u < PI / 2.0 && v > 0.0 && v < PI / 2.0;
}

double sign_of(PotentialSign s) { return s == PotentialSign::plus ? 1.0 : -1.0; }

// One Newton pass for grad V^+ = 0 at fixed theta. Returns false when the
// iteration leaves D, the Hessian degenerates, or 50 steps do not reach
// |dV/dx| + |dV/dy| < 1e-13.
bool newton_plus(const SurgeryPresentation& pres, double theta, cplx& x,
                 cplx& y) {
    cplx cx = x, cy = y;
    for (int it = 0; it < 50; ++it) {
        if (!in_D(cx, cy)) return false;
        auto g = grad_V(PotentialSign::plus, pres, theta, cx, cy);
        if (std::abs(g[0]) + std::abs(g[1]) < 1e-13) {
            x = cx;
            y = cy;
            return true;
        }
        auto h = hess_V(pres, cx, cy);
        cplx det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        if (std::abs(det) < 1e-250) return false;
        cx -= (h[1][1] * g[0] - h[0][1] * g[1]) / det;
        cy -= (h[0][0] * g[1] - h[1][0] * g[0]) / det;
    }
    return false;
}

// Continue the solved point from angle `from` (solution in x, y) to `to`,
// halving the step on Newton failure. Steps grow geometrically, so long
// continuations stay cheap.
void continue_to(const SurgeryPresentation& pres, double from, double to,
                 cplx& x, cplx& y) {
    double cur = from;
    double step = std::max(1e-3, cur * 0.35);
    while (cur < to) {
        double next = std::min(to, cur + step);
        cplx xt = x, yt = y;
        if (newton_plus(pres, next, xt, yt)) {
            x = xt;
            y = yt;
            cur = next;
            step = std::max(step, cur * 0.35);
        } else {
            step *= 0.5;
            if (step < 1e-8) {
                char buf[96];
                std::snprintf(buf, sizeof buf,
                              "cone continuation stalled at theta=%.12g", cur);
                throw convergence_error(buf);
            }
        }
    }
}

ConeGeometry assemble(const SurgeryPresentation& pres, double theta, cplx x,
                      cplx y) {
    ConeGeometry g;
    g.p = pres.p;
    g.q = pres.q;
    g.a0 = pres.a0;
    g.theta = theta;
    g.x0c = x;
    g.y0c = y;
    g.A = std::exp(2.0 * I * (y + x));
    g.B = std::exp(2.0 * I * (y - x));
    if (!(g.A.imag() > 0.0) || !(g.B.imag() > 0.0))
        throw domain_error("critical point left the geometric branch");

    cplx v = potential_V(PotentialSign::plus, pres, theta, x, y);
    g.vol = v.imag();
    g.csRaw = -v.real();
    double p2 = PI * PI;
    g.cs = std::fmod(g.csRaw, p2);
    if (g.cs < 0.0) g.cs += p2;

    g.hess = hess_V(pres, x, y);
    g.hessDet = g.hess[0][0] * g.hess[1][1] - g.hess[0][1] * g.hess[1][0];

    auto res = gluing_equations(g.A, g.B, pres.p, pres.q, theta);
    g.gluingResidual = std::max(std::abs(res[0]), std::abs(res[1]));

    Holonomies h = holonomies(g);
    g.Hm = h.Hm;
    g.Hl = h.Hl;
    g.Hgamma = h.Hgamma;
    g.coreLength = h.coreLength;
    return g;
}

}  // namespace

bool region_contains(const RegionSpec& spec, cplx x, cplx y) {
    Bounds b = region_bounds(spec);
    double u = y.real() + x.real();
    double v = y.real() - x.real();
    return u > b.uLo && u < b.uHi && v > b.vLo && v < b.vHi;
}

cplx potential_V(PotentialSign sign, const SurgeryPresentation& pres,
                 double theta, cplx x, cplx y, const RegionSpec& region) {
    if (!region_contains(region, x, y))
        throw domain_error("potential_V: point outside the requested region");
    double p = static_cast<double>(pres.p);
    double q = static_cast<double>(pres.q);
    double s = sign_of(sign);
    cplx quad = (-p * x * x + s * theta * x) / q - 2.0 * PI * x + 4.0 * x * y;
    cplx li = -dilog(std::exp(-2.0 * I * (y + x))) +
              dilog(std::exp(2.0 * I * (y - x)));
    double framing =
        (static_cast<double>(pres.pPrime) / q + static_cast<double>(pres.a0)) *
        theta * theta / 4.0;
    return quad + li - framing;
}

std::array<cplx, 2> grad_V(PotentialSign sign, const SurgeryPresentation& pres,
                           double theta, cplx x, cplx y) {
    double p = static_cast<double>(pres.p);
    double q = static_cast<double>(pres.q);
    double s = sign_of(sign);
    cplx l1 = principal_log(1.0 - std::exp(-2.0 * I * (y + x)));
    cplx l2 = principal_log(1.0 - std::exp(2.0 * I * (y - x)));
    cplx vx = (-2.0 * p * x + s * theta) / q + 4.0 * y - 2.0 * PI -
              2.0 * I * l1 + 2.0 * I * l2;
    cplx vy = 4.0 * x - 2.0 * I * l1 - 2.0 * I * l2;
    return {vx, vy};
}

Mat2 hess_V(const SurgeryPresentation& pres, cplx x, cplx y) {
    double p = static_cast<double>(pres.p);
    double q = static_cast<double>(pres.q);
    cplx A = std::exp(2.0 * I * (y + x));
    cplx B = std::exp(2.0 * I * (y - x));
    cplx fA = 4.0 * A / (1.0 - A);
    cplx fB = 4.0 * B / (1.0 - B);
    Mat2 h;
    h[0][0] = -2.0 * p / q - 4.0 - fA - fB;
    h[0][1] = -fA + fB;
    h[1][0] = h[0][1];
    h[1][1] = -4.0 - fA - fB;
    return h;
}

std::array<cplx, 2> gluing_equations(cplx A, cplx B, long long p, long long q,
                                     double theta) {
    cplx logA = principal_log(A);
    cplx logB = principal_log(B);
    cplx logApp = principal_log(1.0 - 1.0 / A);
    cplx logBpp = principal_log(1.0 - 1.0 / B);
    cplx logBp = -principal_log(1.0 - B);
    cplx edge = logA + 2.0 * logApp + logB + 2.0 * logBpp - 2.0 * PI * I;
    cplx Hm = logBp - logApp;
    cplx Hl = 2.0 * PI * I - 2.0 * logA - 4.0 * logApp;
    cplx fill = static_cast<double>(p) * Hm + static_cast<double>(q) * Hl -
                theta * I;
    return {edge, fill};
}

ConeGeometry solve_critical(const SurgeryPresentation& pres, double theta) {
    if (!(theta > 0.0) || !(theta < 2.0 * PI))
        throw domain_error("cone angle must lie in (0, 2pi)");
    double start = std::min(theta, 1e-3);
    cplx x = 0.0, y = PI / 6.0;
    if (!newton_plus(pres, start, x, y))
        throw convergence_error("cone continuation failed at the cusp seed");
    if (theta > start) continue_to(pres, start, theta, x, y);
    return assemble(pres, theta, x, y);
}

std::vector<ConeGeometry> cone_family(const SurgeryPresentation& pres,
                                      const std::vector<double>& thetaGrid) {
    std::vector<ConeGeometry> out;
    out.reserve(thetaGrid.size());
    double prev = 0.0;
    cplx x = 0.0, y = PI / 6.0;
    for (double theta : thetaGrid) {
        if (!(theta > prev))
            throw domain_error("cone angle grid must be strictly increasing");
        if (!(theta < 2.0 * PI))
            throw domain_error("cone angle must lie in (0, 2pi)");
        if (out.empty()) {
            double start = std::min(theta, 1e-3);
            if (!newton_plus(pres, start, x, y))
                throw convergence_error(
                    "cone continuation failed at the cusp seed");
            if (theta > start) continue_to(pres, start, theta, x, y);
        } else {
            continue_to(pres, prev, theta, x, y);
        }
        out.push_back(assemble(pres, theta, x, y));
        prev = theta;
    }
    return out;
}

Holonomies holonomies(const ConeGeometry& g) {
    Holonomies h;
    h.Hm = 2.0 * I * g.x0c;
    h.Hl = (g.theta * I - static_cast<double>(g.p) * h.Hm) /
           static_cast<double>(g.q);
    // gamma = -q' m + p' l + a0 (p m + q l) in homology; the bracket is the
    // filling curve, whose holonomy is theta i by the filling equation.
    SurgeryPresentation pres = make_presentation(g.p, g.q, g.a0);
    h.Hgamma = -static_cast<double>(pres.qPrime) * h.Hm +
               static_cast<double>(pres.pPrime) * h.Hl +
               static_cast<double>(g.a0) * g.theta * I;
    h.coreLength = std::abs(h.Hgamma.real());
    return h;
}

cplx nz_longitude_derivative(cplx Hm, int branch) {
    cplx eL = std::exp(Hm);
    cplx emL = std::exp(-Hm);
    // Radicand from cosh(Hl/2) = 1 + cosh(Hm) - cosh(2 Hm), the exponential
    // form of the gluing variety: (2 cosh Hm + 1)(2 cosh Hm - 3). At the cusp
    // it is -3, giving the cusp shape 2 sqrt(-3) of the figure-eight knot.
    cplx rad = eL * eL + emL * emL - 2.0 * eL - 2.0 * emL - 1.0;
    cplx root = std::sqrt(rad);
    if (branch < 0) root = -root;
    if (std::abs(root) == 0.0)
        throw domain_error("longitude derivative: branch point");
    return 2.0 * (1.0 - 2.0 * eL - 2.0 * emL) / root;
}

}  // namespace qvol
