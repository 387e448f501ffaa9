#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "geom_oracle.hpp"
#include "qvol/cfrac.hpp"
#include "qvol/geom.hpp"
#include "qvol/specfun.hpp"

using namespace qvol;

namespace {

constexpr cplx I{0.0, 1.0};

// Corner of the test: volume of the figure-eight complement.
const double VOL_CUSP = 6.0 * lobachevsky(PI / 3.0);

// Random complex point of the complexified D with real margin and bounded
// imaginary part, drawn in the rotated coordinates.
cplx rand_in(std::mt19937& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}

void random_D_point(std::mt19937& rng, cplx& x, cplx& y, double imScale) {
    std::uniform_real_distribution<double> band(0.08, PI / 2.0 - 0.08);
    std::uniform_real_distribution<double> im(-imScale, imScale);
    double u = band(rng), v = band(rng);
    x = cplx((u - v) / 2.0, im(rng));
    y = cplx((u + v) / 2.0, im(rng));
}

// Symmetric single-dilogarithm form of the potential. Equal to V^+(x, y) and
// to V^-(-x, y) on the complexified D.
cplx v_symmetric(const SurgeryPresentation& pres, double theta, cplx x,
                 cplx y) {
    double p = double(pres.p), q = double(pres.q);
    return (-p / q - 2.0) * x * x + (theta / q) * x - 2.0 * y * y +
           2.0 * PI * y - PI * PI / 3.0 + dilog(std::exp(2.0 * I * (y + x))) +
           dilog(std::exp(2.0 * I * (y - x))) -
           (double(pres.pPrime) / q + double(pres.a0)) * theta * theta / 4.0;
}

}

TEST_SUITE("geom") {

TEST_CASE("region membership and margin validation") {
    RegionSpec d{Region::D, 0.0};
    CHECK(region_contains(d, cplx(0.3), cplx(0.4)));
    CHECK(region_contains(d, cplx(0.3, 5.0), cplx(0.4, -7.0)));
    CHECK_FALSE(region_contains(d, cplx(2.0), cplx(0.1)));
    CHECK_FALSE(region_contains(d, cplx(0.0), cplx(0.0)));

    // (y+x, y-x) = (0.5, 3.3) lies in D', its mirror in D''.
    RegionSpec dp{Region::Dprime, 0.0};
    RegionSpec ds{Region::Dsecond, 0.0};
    CHECK(region_contains(dp, cplx(-1.4), cplx(1.9)));
    CHECK_FALSE(region_contains(d, cplx(-1.4), cplx(1.9)));
    CHECK(region_contains(ds, cplx(1.4), cplx(1.9)));
    CHECK_FALSE(region_contains(dp, cplx(1.4), cplx(1.9)));

    auto pres = make_presentation(5, 1, 0);
    CHECK_THROWS_AS(
        potential_V(PotentialSign::plus, pres, 1.0, cplx(2.0), cplx(0.1), d),
        domain_error);
    CHECK_NOTHROW(potential_V(PotentialSign::plus, pres, 1.0, cplx(-1.4),
                              cplx(1.9), dp));
    CHECK_NOTHROW(potential_V(PotentialSign::plus, pres, 1.0, cplx(1.4),
                              cplx(1.9), ds));
    CHECK_THROWS_AS(region_contains(RegionSpec{Region::D, -0.1}, 0.0, 0.0),
                    domain_error);
    CHECK_THROWS_AS(region_contains(RegionSpec{Region::D, PI / 4.0}, 0.0, 0.0),
                    domain_error);
}

TEST_CASE("symmetric form equals V^+ (x,y) and V^- (-x,y)") {
    std::mt19937 rng(421);
    auto pres52 = make_presentation(5, 2, 1);
    auto pres73 = make_presentation(7, 3, -1);
    for (int i = 0; i < 100; ++i) {
        const auto& pres = (i % 2 == 0) ? pres52 : pres73;
        double theta = rand_in(rng, 0.3, 5.9).real();
        cplx x, y;
        random_D_point(rng, x, y, 0.25);
        cplx sym = v_symmetric(pres, theta, x, y);
        cplx plus = potential_V(PotentialSign::plus, pres, theta, x, y);
        cplx minus = potential_V(PotentialSign::minus, pres, theta, -x, y);
        CHECK(std::abs(sym - plus) < 1e-12);
        CHECK(std::abs(sym - minus) < 1e-12);
    }
}

TEST_CASE("cusp value of the dilogarithm part") {
    // With x = 0 the quadratic terms vanish and theta = 0 kills the framing
    // constant, leaving -Li2(e^{-2iy}) + Li2(e^{2iy}) at y = pi/6.
    auto pres = make_presentation(5, 1, 0);
    cplx u = potential_V(PotentialSign::plus, pres, 0.0, cplx(0.0),
                         cplx(PI / 6.0));
    CHECK(std::abs(u.real()) < 1e-15);
    CHECK(std::abs(u.imag() - 4.0 * lobachevsky(PI / 6.0)) < 1e-14);
    CHECK(std::abs(u.imag() - VOL_CUSP) < 1e-14);
}

TEST_CASE("gradient matches finite differences") {
    std::mt19937 rng(77);
    auto pres = make_presentation(5, 2, 0);
    double h = 1e-5;
    RegionSpec d;
    for (int i = 0; i < 20; ++i) {
        double theta = rand_in(rng, 0.5, 5.5).real();
        cplx x, y;
        random_D_point(rng, x, y, 0.15);
        auto sign = (i % 2 == 0) ? PotentialSign::plus : PotentialSign::minus;
        auto g = grad_V(sign, pres, theta, x, y);
        cplx fdx = (potential_V(sign, pres, theta, x + h, y, d) -
                    potential_V(sign, pres, theta, x - h, y, d)) /
                   (2.0 * h);
        cplx fdy = (potential_V(sign, pres, theta, x, y + h, d) -
                    potential_V(sign, pres, theta, x, y - h, d)) /
                   (2.0 * h);
        CHECK(std::abs(g[0] - fdx) / std::abs(g[0]) < 1e-7);
        CHECK(std::abs(g[1] - fdy) / std::abs(g[1]) < 1e-7);
    }
}

TEST_CASE("hessian matches finite differences of the gradient") {
    std::mt19937 rng(78);
    auto pres = make_presentation(7, 3, 0);
    double h = 1e-5;
    for (int i = 0; i < 20; ++i) {
        double theta = rand_in(rng, 0.5, 5.5).real();
        cplx x, y;
        random_D_point(rng, x, y, 0.15);
        auto sign = (i % 2 == 0) ? PotentialSign::plus : PotentialSign::minus;
        auto hm = hess_V(pres, x, y);
        auto gxp = grad_V(sign, pres, theta, x + h, y);
        auto gxm = grad_V(sign, pres, theta, x - h, y);
        auto gyp = grad_V(sign, pres, theta, x, y + h);
        auto gym = grad_V(sign, pres, theta, x, y - h);
        cplx fdxx = (gxp[0] - gxm[0]) / (2.0 * h);
        cplx fdxy = (gyp[0] - gym[0]) / (2.0 * h);
        cplx fdyx = (gxp[1] - gxm[1]) / (2.0 * h);
        cplx fdyy = (gyp[1] - gym[1]) / (2.0 * h);
        CHECK(std::abs(hm[0][0] - fdxx) < 1e-6 * std::abs(hm[0][0]));
        CHECK(std::abs(hm[0][1] - fdxy) < 1e-6);
        CHECK(std::abs(hm[1][0] - fdyx) < 1e-6);
        CHECK(std::abs(hm[1][1] - fdyy) < 1e-6 * std::abs(hm[1][1]));
    }
}

TEST_CASE("hessian determinant is even in x") {
    // Sending x to -x swaps the roles of A and B and preserves the
    // determinant; at a critical point this is det Hess V^+(x0, y0) =
    // det Hess V^-(-x0, y0) because the two Hessians coincide pointwise.
    std::mt19937 rng(79);
    auto pres = make_presentation(5, 2, 0);
    for (int i = 0; i < 10; ++i) {
        cplx x, y;
        random_D_point(rng, x, y, 0.2);
        auto h1 = hess_V(pres, x, y);
        auto h2 = hess_V(pres, -x, y);
        cplx d1 = h1[0][0] * h1[1][1] - h1[0][1] * h1[1][0];
        cplx d2 = h2[0][0] * h2[1][1] - h2[0][1] * h2[1][0];
        CHECK(std::abs(d1 - d2) < 1e-12 * std::abs(d1));
    }
}

TEST_CASE("imaginary part is concave on real D, convex imaginarily") {
    auto pres = make_presentation(5, 1, 0);
    // Im V as a function of (Re x, Re y) has Hessian Im(Hess V): trace < 0
    // and positive determinant on a real grid means negative definite.
    for (int iu = 1; iu <= 8; ++iu) {
        for (int iv = 1; iv <= 8; ++iv) {
            double u = iu * (PI / 2.0) / 9.0;
            double v = iv * (PI / 2.0) / 9.0;
            cplx x((u - v) / 2.0, 0.0), y((u + v) / 2.0, 0.0);
            auto hm = hess_V(pres, x, y);
            double sxx = hm[0][0].imag();
            double sxy = hm[0][1].imag();
            double syy = hm[1][1].imag();
            CHECK(sxx + syy < 0.0);
            CHECK(sxx * syy - sxy * sxy > 0.0);
        }
    }

    // Harmonicity: second differences along the imaginary directions equal
    // the negated real-direction curvature, so Im V is convex there.
    RegionSpec d;
    double h = 1e-4;
    double theta = 1.7;
    auto imv = [&](cplx x, cplx y) {
        return potential_V(PotentialSign::plus, pres, theta, x, y, d).imag();
    };
    std::mt19937 rng(80);
    for (int i = 0; i < 5; ++i) {
        cplx x, y;
        random_D_point(rng, x, y, 0.0);
        auto hm = hess_V(pres, x, y);
        double fdxx =
            (imv(x + I * h, y) - 2.0 * imv(x, y) + imv(x - I * h, y)) /
            (h * h);
        double fdyy =
            (imv(x, y + I * h) - 2.0 * imv(x, y) + imv(x, y - I * h)) /
            (h * h);
        CHECK(std::abs(fdxx + hm[0][0].imag()) < 1e-5);
        CHECK(std::abs(fdyy + hm[1][1].imag()) < 1e-5);
        CHECK(fdxx > -1e-8);
        CHECK(fdyy > -1e-8);
    }
}

TEST_CASE("cusp limit of the critical point") {
    auto pres = make_presentation(5, 1, 0);
    auto g = solve_critical(pres, 1e-3);
    CHECK(std::abs(g.x0c) < 5e-3);
    CHECK(std::abs(g.y0c - PI / 6.0) < 5e-3);
    CHECK(std::abs(g.vol - VOL_CUSP) < 1e-4);
    CHECK(g.vol < VOL_CUSP);
    CHECK(std::abs(g.Hm) < 1e-2);
    // cs lives on a circle of circumference pi^2; near the cusp it sits at
    // a tiny distance from 0, possibly wrapped to just below pi^2.
    double csDist = std::min(g.cs, PI * PI - g.cs);
    CHECK(csDist < 1e-4);
    CHECK(std::abs(g.csRaw) < 1e-4);
}

TEST_CASE("solved structures satisfy the gluing equations") {
    std::vector<SurgeryPresentation> pp = {
        make_presentation(5, 1, 0), make_presentation(5, 2, 0),
        make_presentation(7, 3, 1), make_presentation(-2, 3, 0)};
    for (const auto& pres : pp) {
        for (double theta : {PI / 2.0, PI, 3.0 * PI / 2.0, 2.8}) {
            auto g = solve_critical(pres, theta);
            CHECK(g.gluingResidual < 1e-10);
            CHECK(g.A.imag() > 0.0);
            CHECK(g.B.imag() > 0.0);
            CHECK(std::abs(g.hessDet) > 1e-3);
            CHECK(g.vol > 0.0);

            // Recompute the holonomies from the shape logarithms and check
            // both the stored fields and the filling identity.
            cplx HmL = -std::log(1.0 - g.B) - std::log(1.0 - 1.0 / g.A);
            cplx HlL = 2.0 * PI * I - 2.0 * std::log(g.A) -
                       4.0 * std::log(1.0 - 1.0 / g.A);
            CHECK(std::abs(HmL - g.Hm) < 1e-10);
            CHECK(std::abs(HlL - g.Hl) < 1e-10);
            CHECK(std::abs(double(pres.p) * HmL + double(pres.q) * HlL -
                           theta * I) < 1e-10);
        }
    }
}

TEST_CASE("imaginary part of x0 stays away from zero") {
    auto pres = make_presentation(5, 1, 0);
    for (double theta : {PI / 2.0, PI, 3.0 * PI / 2.0}) {
        auto g = solve_critical(pres, theta);
        CHECK(std::abs(g.x0c.imag()) > 1e-4);
    }
}

TEST_CASE("framing change shifts only the Chern-Simons value") {
    auto p0 = make_presentation(5, 1, 0);
    auto p1 = make_presentation(5, 1, 1);
    double theta = 1.3;
    cplx x(0.2, 0.05), y(0.5, -0.02);
    cplx v0 = potential_V(PotentialSign::plus, p0, theta, x, y);
    cplx v1 = potential_V(PotentialSign::plus, p1, theta, x, y);
    CHECK(std::abs(v1 - v0 + theta * theta / 4.0) < 1e-13);

    auto g0 = solve_critical(p0, theta);
    auto g1 = solve_critical(p1, theta);
    CHECK(std::abs(g1.x0c - g0.x0c) < 1e-12);
    CHECK(std::abs(g1.vol - g0.vol) < 1e-12);
    CHECK(std::abs((g1.csRaw - g0.csRaw) - theta * theta / 4.0) < 1e-12);
}

TEST_CASE("minus potential has its critical point at (-x0, y0)") {
    auto pres = make_presentation(5, 2, 0);
    auto g = solve_critical(pres, 2.1);
    cplx x = -g.x0c + cplx(1e-3, -1e-3);
    cplx y = g.y0c + cplx(1e-3, 1e-3);
    for (int it = 0; it < 50; ++it) {
        auto gr = grad_V(PotentialSign::minus, pres, 2.1, x, y);
        if (std::abs(gr[0]) + std::abs(gr[1]) < 1e-13) break;
        auto h = hess_V(pres, x, y);
        cplx det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        x -= (h[1][1] * gr[0] - h[0][1] * gr[1]) / det;
        y -= (h[0][0] * gr[1] - h[1][0] * gr[0]) / det;
    }
    CHECK(std::abs(x - (-g.x0c)) < 1e-10);
    CHECK(std::abs(y - g.y0c) < 1e-10);

    // Same critical value up to the sign convention: V^-(-x0, y0) = V^+(x0, y0).
    cplx vm = potential_V(PotentialSign::minus, pres, 2.1, x, y);
    cplx vp = potential_V(PotentialSign::plus, pres, 2.1, g.x0c, g.y0c);
    CHECK(std::abs(vm - vp) < 1e-11);
}

TEST_CASE("volume agrees with the Bloch-Wigner sum over the two tetrahedra") {
    auto pres = make_presentation(5, 2, 0);
    for (double theta : {0.8, 1.7, 2.9, 4.2, 5.5}) {
        auto g = solve_critical(pres, theta);
        double bw = qvol_test::bloch_wigner(g.A) + qvol_test::bloch_wigner(g.B);
        CHECK(std::abs(g.vol - bw) < 1e-10);
    }
}

TEST_CASE("near-smooth filling agrees with the shape-parameter solve") {
    double theta = 2.0 * PI - 1e-6;
    auto pres = make_presentation(5, 1, 0);
    auto g = solve_critical(pres, theta);

    auto ab = qvol_test::solve_ab(5.0, 1.0, theta);
    REQUIRE(ab.residual < 1e-12);
    cplx xo = (std::log(ab.A) - std::log(ab.B)) / (4.0 * I);
    cplx yo = (std::log(ab.A) + std::log(ab.B)) / (4.0 * I);
    CHECK(std::abs(g.x0c - xo) < 1e-8);
    CHECK(std::abs(g.y0c - yo) < 1e-8);

    double volOracle =
        qvol_test::bloch_wigner(ab.A) + qvol_test::bloch_wigner(ab.B);
    CHECK(std::abs(g.vol - volOracle) < 1e-8);
    CHECK(g.vol > 0.9);
    CHECK(g.vol < 1.1);

    // Mapped-back oracle point is critical for V^+ to full accuracy.
    auto gr = grad_V(PotentialSign::plus, pres, theta, xo, yo);
    CHECK(std::abs(gr[0]) + std::abs(gr[1]) < 1e-10);

    // Core geodesic: for q = 1 the core is isotopic to the meridian curve,
    // so the length is |Re H(m)| on both sides.
    cplx HmO = -std::log(1.0 - ab.B) - std::log(1.0 - 1.0 / ab.A);
    CHECK(g.coreLength > 0.0);
    CHECK(std::abs(g.coreLength - std::abs(HmO.real())) < 1e-8);
}

TEST_CASE("volume decreases and is concave along the cone family") {
    auto pres = make_presentation(5, 1, 0);
    std::vector<double> grid;
    int n = 64;
    double lo = 0.05, hi = 2.0 * PI - 0.05;
    for (int i = 0; i < n; ++i)
        grid.push_back(lo + (hi - lo) * i / (n - 1));
    auto fam = cone_family(pres, grid);
    REQUIRE(fam.size() == grid.size());
    for (int i = 1; i < n; ++i) CHECK(fam[i].vol < fam[i - 1].vol);
    for (int i = 1; i + 1 < n; ++i)
        CHECK(fam[i + 1].vol - 2.0 * fam[i].vol + fam[i - 1].vol <= 1e-9);

    // Entries of the family match independent single solves.
    for (int i : {7, 31, 55}) {
        auto g = solve_critical(pres, grid[std::size_t(i)]);
        CHECK(std::abs(g.x0c - fam[std::size_t(i)].x0c) < 1e-12);
        CHECK(std::abs(g.vol - fam[std::size_t(i)].vol) < 1e-12);
    }
}

TEST_CASE("volume stays above half the cusp volume when q >= 2") {
    auto pres = make_presentation(7, 2, 0);
    std::vector<double> grid;
    for (int i = 1; i <= 16; ++i) grid.push_back(i * (2.0 * PI - 0.01) / 16.0);
    auto fam = cone_family(pres, grid);
    for (const auto& g : fam) CHECK(g.vol > VOL_CUSP / 2.0);
}

TEST_CASE("longitude derivative formula follows the solved family") {
    auto pres = make_presentation(5, 1, 0);
    std::vector<double> grid;
    int n = 33;
    for (int i = 0; i < n; ++i)
        grid.push_back(0.5 + (2.0 * PI - 0.8) * i / (n - 1));
    auto fam = cone_family(pres, grid);

    // Exponential form of the gluing variety ties the two holonomies:
    // cosh(Hl/2) = 1 + cosh(Hm) - cosh(2 Hm), exactly on the whole family.
    for (const auto& g : fam) {
        cplx lhs = std::cosh(g.Hl / 2.0);
        cplx rhs = 1.0 + std::cosh(g.Hm) - std::cosh(2.0 * g.Hm);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }

    // Fix the square-root branch against the first finite-difference slope,
    // then hold it for the rest of the family.
    auto fd_pair = [&](int i, cplx& mid, cplx& slope) {
        mid = 0.5 * (fam[std::size_t(i)].Hm + fam[std::size_t(i) + 1].Hm);
        slope = (fam[std::size_t(i) + 1].Hl - fam[std::size_t(i)].Hl) /
                (fam[std::size_t(i) + 1].Hm - fam[std::size_t(i)].Hm);
    };
    cplx mid, slope;
    fd_pair(0, mid, slope);
    int branch = (std::abs(nz_longitude_derivative(mid, +1) - slope) <
                  std::abs(nz_longitude_derivative(mid, -1) - slope))
                     ? +1
                     : -1;
    for (int i = 0; i + 1 < n; ++i) {
        fd_pair(i, mid, slope);
        cplx pred = nz_longitude_derivative(mid, branch);
        CHECK(std::abs(pred - slope) / std::abs(pred) < 5e-4);
        CHECK(pred.imag() > 0.0);
    }
}

TEST_CASE("angle validation") {
    auto pres = make_presentation(5, 1, 0);
    CHECK_THROWS_AS(solve_critical(pres, 0.0), domain_error);
    CHECK_THROWS_AS(solve_critical(pres, 2.0 * PI), domain_error);
    CHECK_THROWS_AS(solve_critical(pres, -1.0), domain_error);
    CHECK_THROWS_AS(cone_family(pres, {1.0, 1.0}), domain_error);
    CHECK_THROWS_AS(cone_family(pres, {1.0, 0.5}), domain_error);
}

}
