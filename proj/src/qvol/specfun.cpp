#include "specfun.hpp"

#include <cfloat>
#include <cmath>
#include <map>
#include <mutex>

namespace qvol {

namespace {

const cplx I{0.0, 1.0};

// ---------------------------------------------------------------- log / Li2

bool on_negative_real_axis(cplx z) { return z.imag() == 0.0 && z.real() <= 0.0; }

// Li2 power series, valid |z| <= 0.8.
cplx dilog_series(cplx z) {
    cplx term = z, sum = z;
    for (int n = 2; n < 220; ++n) {
        term *= z;
        cplx add = term / double(n * n);
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

// Li2(z) = sum_k B_k u^{k+1}/(k+1)!, u = -log(1-z); converges for |u| < 2 pi.
// Used on the middle annulus away from z = 1, where |u| <= ~3.3.
cplx dilog_bernoulli(cplx z) {
    static const double coef[][2] = {
        {0, 1.0000000000000000000},
        {1, -0.25000000000000000000},
        {2, 0.027777777777777777778},
        {4, -0.00027777777777777777778},
        {6, 4.7241118669690098262e-6},
        {8, -9.1857730746619635509e-8},
        {10, 1.8978869988970999072e-9},
        {12, -4.0647616451442255268e-11},
        {14, 8.9216910204564525552e-13},
        {16, -1.9939295860721075687e-14},
        {18, 4.5189800296199181917e-16},
        {20, -1.0356517612181247014e-17},
        {22, 2.3952186210261867457e-19},
        {24, -5.5817858743250093363e-21},
        {26, 1.3091507554183212858e-22},
        {28, -3.0874198024267402932e-24},
        {30, 7.3159756527022034204e-26},
        {32, -1.7408456572340007410e-27},
        {34, 4.1576356446138997196e-29},
        {36, -9.9621484882846221032e-31},
        {38, 2.3940344248961653005e-32},
        {40, -5.7683473553673900843e-34},
        {42, 1.3931794796470079778e-35},
        {44, -3.3721219654850894705e-37},
        {46, 8.1782087775621026218e-39},
        {48, -1.9870108311523859256e-40},
        {50, 4.8357785180405508963e-42},
    };
    cplx u = -std::log(1.0 - z);
    cplx sum{0, 0};
    cplx upow = u; // u^{k+1}, starting at k=0
    int idx = 0;
    for (int k = 0; k <= 50; ++k) {
        if (coef[idx][0] == double(k)) {
            sum += coef[idx][1] * upow;
            ++idx;
        }
        upow *= u;
    }
    return sum;
}

cplx dilog_impl(cplx z, int depth) {
    if (z == cplx(0.0, 0.0)) return {0, 0};
    if (z.imag() == 0.0 && z.real() == 1.0) return {PI * PI / 6.0, 0};
    if (depth > 4) return dilog_bernoulli(z); // unreachable; belt and braces
    double az = std::abs(z);
    if (az <= 0.8) return dilog_series(z);
    if (az >= 1.25) {
        // inversion: Li2(z) = -Li2(1/z) - pi^2/6 - log(-z)^2 / 2
        cplx lz = std::log(-z);
        return -dilog_impl(1.0 / z, depth + 1) - PI * PI / 6.0 - 0.5 * lz * lz;
    }
    if (std::abs(1.0 - z) <= 0.5) {
        // reflection: Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
        return PI * PI / 6.0 - std::log(z) * std::log(1.0 - z) -
               dilog_impl(1.0 - z, depth + 1);
    }
    return dilog_bernoulli(z);
}

// ---------------------------------------------------------------- phi_r core

// Integrand pair f(x) + f(-x) on the positive real tail, in the overflow-safe
// form [e^{(w-s)x} - e^{(-w-s)x}] / (x (1-e^{-2 pi x})(1-e^{-4 pi x/r})) with
// w = 2z - pi and s = pi + 2 pi/r. Both exponents decay inside the strip.
cplx tail_pair(int r, cplx w, double x) {
    double s = PI + 2.0 * PI / r;
    cplx e1 = std::exp((w - s) * x);
    cplx e2 = std::exp((-w - s) * x);
    double d1 = -std::expm1(-2.0 * PI * x);
    double d2 = -std::expm1(-4.0 * PI * x / r);
    return (e1 - e2) / (x * d1 * d2);
}

// Same for the derivative: f'(x) + f'(-x) = 2 [e^{(w-s)x} + e^{(-w-s)x}] / ((1-..)(1-..)).
cplx tail_pair_prime(int r, cplx w, double x) {
    double s = PI + 2.0 * PI / r;
    cplx e1 = std::exp((w - s) * x);
    cplx e2 = std::exp((-w - s) * x);
    double d1 = -std::expm1(-2.0 * PI * x);
    double d2 = -std::expm1(-4.0 * PI * x / r);
    return 2.0 * (e1 + e2) / (d1 * d2);
}

// Raw integrand on the semicircle (|x| = 1/2, no overflow risk).
cplx semicircle_f(int r, cplx w, cplx x) {
    return std::exp(w * x) /
           (4.0 * x * std::sinh(PI * x) * std::sinh(2.0 * PI * x / double(r)));
}

cplx semicircle_f_prime(int r, cplx w, cplx x) {
    return 2.0 * x * semicircle_f(r, w, x);
}

// Contour quadrature of phi_r (derivative = true differentiates the
// integrand). Valid strictly inside the strip -pi/r < Re z < pi + pi/r.
cplx phi_strip(int r, cplx z, bool derivative) {
    const double eps = 0.5;
    cplx w = 2.0 * z - PI;
    double c = PI + 2.0 * PI / r - std::abs(w.real());
    if (c <= 0)
        throw convergence_error("quantum_dilog: argument outside the quadrature strip");
    const GaussLegendre& gl = gauss_legendre(32);

    // Upper semicircle x = eps e^{i phi}, phi from pi to 0:
    // contribution = -i eps int_0^pi f(eps e^{i phi}) e^{i phi} dphi.
    cplx semi{0, 0};
    const int semiPanels = 4;
    for (int p = 0; p < semiPanels; ++p) {
        double a = PI * p / semiPanels, b = PI * (p + 1) / semiPanels;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (size_t i = 0; i < gl.x.size(); ++i) {
            double phi = mid + half * gl.x[i];
            cplx x = eps * std::exp(I * phi);
            cplx f = derivative ? semicircle_f_prime(r, w, x) : semicircle_f(r, w, x);
            semi += half * gl.w[i] * f * std::exp(I * phi);
        }
    }
    semi *= -I * eps;

    // Real tails, folded: int_eps^T (f(x) + f(-x)) dx in the stable form.
    double T = eps + std::max(6.0, 40.0 / c);
    int panels = int(std::ceil(T - eps));
    cplx tails{0, 0};
    for (int p = 0; p < panels; ++p) {
        double a = eps + p, b = std::min(eps + p + 1.0, T);
        if (a >= T) break;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (size_t i = 0; i < gl.x.size(); ++i) {
            double x = mid + half * gl.x[i];
            cplx f = derivative ? tail_pair_prime(r, w, x) : tail_pair(r, w, x);
            tails += half * gl.w[i] * f;
        }
    }

    return (4.0 * PI * I / double(r)) * (semi + tails);
}

// Number of 2 pi/r shift steps that recenters Re z near pi/2, where the
// quadrature decay rate is best.
long shift_steps(int r, cplx z) {
    return std::lround((z.real() - PI / 2.0) * r / (2.0 * PI));
}

cplx phi_extended(int r, cplx z, bool derivative) {
    long n = shift_steps(r, z);
    cplx zin = z - 2.0 * PI * double(n) / double(r);
    cplx base = phi_strip(r, zin, derivative);
    if (n == 0) return base;
    cplx corr{0, 0};
    if (n > 0) {
        for (long k = 1; k <= n; ++k) {
            cplx wk = z - (2.0 * k - 1.0) * PI / double(r);
            cplx e = std::exp(2.0 * I * wk);
            if (derivative)
                corr += e / (1.0 - e);
            else
                corr += std::log(1.0 - e);
        }
        return derivative ? base - (8.0 * PI / r) * corr
                          : base - (4.0 * PI * I / double(r)) * corr;
    }
    for (long k = 1; k <= -n; ++k) {
        cplx wk = z + (2.0 * k - 1.0) * PI / double(r);
        cplx e = std::exp(2.0 * I * wk);
        if (derivative)
            corr += e / (1.0 - e);
        else
            corr += std::log(1.0 - e);
    }
    return derivative ? base + (8.0 * PI / r) * corr
                      : base + (4.0 * PI * I / double(r)) * corr;
}

} // namespace

cplx principal_log(cplx z) {
    if (on_negative_real_axis(z))
        throw domain_error("principal_log: argument on the cut (-inf, 0]");
    return std::log(z);
}

cplx dilog(cplx z) {
    if (z.imag() == 0.0 && z.real() > 1.0)
        throw domain_error("dilog: argument on the cut (1, inf)");
    return dilog_impl(z, 0);
}

double lobachevsky(double theta) {
    // Reduce to |t| <= pi/2 using period pi and oddness.
    double t = theta - PI * std::round(theta / PI);
    if (t == 0.0) return 0.0;
    double sign = t > 0 ? 1.0 : -1.0;
    t = std::abs(t);

    // Lambda(t) = -t (log(2t) - 1) - int_0^t log(sin s / s) ds; the remaining
    // integrand is analytic on |s| < pi, so fixed-order panels are exact to
    // machine precision.
    auto logsinc = [](double s) {
        if (s < 1e-4) {
            double s2 = s * s;
            return -s2 / 6.0 - s2 * s2 / 180.0;
        }
        return std::log(std::sin(s) / s);
    };
    const GaussLegendre& gl = gauss_legendre(32);
    double integral = 0.0;
    const int panels = 2;
    for (int p = 0; p < panels; ++p) {
        double a = t * p / panels, b = t * (p + 1) / panels;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (size_t i = 0; i < gl.x.size(); ++i)
            integral += half * gl.w[i] * logsinc(mid + half * gl.x[i]);
    }
    double val = -t * (std::log(2.0 * t) - 1.0) - integral;
    return sign * val;
}

double quantum_dilog_pole_distance(int r, cplx z) {
    double xi = z.real(), eta = z.imag();
    double best = HUGE_VAL;
    auto consider = [&](double p) {
        double d = std::hypot(xi - p, eta);
        if (d < best) best = d;
    };
    // Positive family (a+1) pi + b pi / r, a >= 0, b >= 1 odd.
    long aLo = std::max(0L, std::lround((xi - PI) / PI) - 2);
    for (long a = aLo; a <= aLo + 4; ++a) {
        if (a < 0) continue;
        double bReal = (xi - (a + 1) * PI) * r / PI;
        long b = std::lround((bReal - 1.0) / 2.0) * 2 + 1;
        for (long bb = b - 2; bb <= b + 2; bb += 2)
            if (bb >= 1) consider((a + 1) * PI + bb * PI / r);
    }
    // Negative family -a pi - b pi / r, a >= 0, b >= 1 odd.
    long aLo2 = std::max(0L, std::lround(-xi / PI) - 2);
    for (long a = aLo2; a <= aLo2 + 4; ++a) {
        if (a < 0) continue;
        double bReal = (-xi - a * PI) * r / PI;
        long b = std::lround((bReal - 1.0) / 2.0) * 2 + 1;
        for (long bb = b - 2; bb <= b + 2; bb += 2)
            if (bb >= 1) consider(-a * PI - bb * PI / r);
    }
    return best;
}

cplx quantum_dilog(int r, cplx z) {
    if (r < 3 || r % 2 == 0)
        throw domain_error("quantum_dilog: r must be an odd integer >= 3");
    double guard = 10.0 * std::sqrt(DBL_EPSILON);
    if (quantum_dilog_pole_distance(r, z) < guard)
        throw domain_error("quantum_dilog: argument within guard radius of a pole");
    return phi_extended(r, z, false);
}

cplx quantum_dilog_prime(int r, cplx z) {
    if (r < 3 || r % 2 == 0)
        throw domain_error("quantum_dilog_prime: r must be an odd integer >= 3");
    double guard = 10.0 * std::sqrt(DBL_EPSILON);
    if (quantum_dilog_pole_distance(r, z) < guard)
        throw domain_error("quantum_dilog_prime: argument within guard radius of a pole");
    return phi_extended(r, z, true);
}

const GaussLegendre& gauss_legendre(int order) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    GaussLegendre gl;
    gl.x.resize(order);
    gl.w.resize(order);
    for (int i = 0; i < order; ++i) {
        // Newton on P_n from the Chebyshev-like initial guess.
        long double x = std::cos(PI_L * (i + 0.75L) / (order + 0.5L));
        long double dp = 0;
        for (int it2 = 0; it2 < 100; ++it2) {
            long double p0 = 1, p1 = x;
            for (int n = 2; n <= order; ++n) {
                long double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1);
            long double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        gl.x[i] = double(x);
        gl.w[i] = double(2.0L / ((1 - x * x) * dp * dp));
    }
    return cache.emplace(order, std::move(gl)).first->second;
}

}
