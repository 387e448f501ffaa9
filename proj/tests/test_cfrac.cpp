#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "qvol/cfrac.hpp"
#include "qvol/common.hpp"

using namespace qvol;

namespace {

// Fold a_k - 1/(a_{k-1} - 1/(... - 1/a_1)) back to a fraction.
Frac fold_back(const std::vector<long long>& a) {
    Frac v{a[0], 1};
    for (std::size_t i = 1; i < a.size(); ++i)
        v = make_frac(a[i] * v.num - v.den, v.num);
    return v;
}

// Closed-form x_i^sign for n = 0, used as an independent check of the
// backward-substitution solver.
double closed_form(const SurgeryPresentation& pres, int sign, int i, double x,
                   double x0) {
    int k = pres.k();
    double tail = 0;
    for (int j = i; j <= k - 1; ++j)
        tail += x0 / (double(pres.c[j - 1]) * double(pres.c[j]));
    double sk = (k % 2 == 0) ? 1.0 : -1.0;
    double ski = ((k - i) % 2 == 0) ? 1.0 : -1.0;
    return ski * double(pres.c[i - 1]) * (x / double(pres.q) + sign * sk * tail);
}

} // namespace

TEST_SUITE("cfrac") {

TEST_CASE("continued fraction digits") {
    CHECK(hj_expand(5, 1) == std::vector<long long>{5});
    CHECK(hj_expand(5, 2) == std::vector<long long>{2, 3});
    CHECK(hj_expand(7, 3) == std::vector<long long>{2, 2, 3});
    CHECK_THROWS_AS(hj_expand(1, 0), domain_error);
    CHECK_THROWS_AS(hj_expand(-1, 0), domain_error);
    CHECK_THROWS_AS(hj_expand(6, 4), domain_error);
}

TEST_CASE("expansion reconstructs p/q with the digit constraints") {
    for (long long p = -50; p <= 50; ++p) {
        for (long long q = 1; q <= 50; ++q) {
            if (std::gcd(p < 0 ? -p : p, q) != 1) continue;
            auto a = hj_expand(p, q);
            for (std::size_t i = 0; i + 1 < a.size(); ++i) CHECK(a[i] >= 2);
            CHECK(fold_back(a) == make_frac(p, q));
        }
    }
}

TEST_CASE("inverse pair") {
    CHECK(inverse_pair(5, 1) == std::pair<long long, long long>{0, 1});
    CHECK(inverse_pair(5, 2) == std::pair<long long, long long>{-1, 3});
    CHECK(inverse_pair(1, 1) == std::pair<long long, long long>{0, 1});
}

TEST_CASE("presentation invariants and the partial-fraction identity") {
    // p = 0 is excluded: the chain linking matrix has determinant p, so the
    // 0-filling is the one degenerate case and make_presentation rejects it.
    CHECK_THROWS_AS(make_presentation(0, 1, 0), domain_error);
    for (long long p = -50; p <= 50; ++p) {
        for (long long q = 1; q <= 50; ++q) {
            if (p == 0 || std::gcd(p < 0 ? -p : p, q) != 1) continue;
            auto pres = make_presentation(p, q, 0);
            int k = pres.k();
            CHECK(pres.c[0] == 1);
            CHECK(pres.c[k - 1] == q);
            CHECK(pres.c[k] == p);
            CHECK(pres.b[k - 1] == make_frac(p, q));
            for (int i = 2; i <= k - 1; ++i) {
                CHECK(pres.c[i] > pres.c[i - 1]);
                CHECK(pres.c[i - 1] >= 2);
                CHECK(pres.b[i - 1].num > pres.b[i - 1].den); // b_i > 1
            }
            CHECK(pres.p * pres.pPrime + pres.q * pres.qPrime == 1);
            CHECK(pres.pPrime <= 0);
            CHECK(pres.pPrime > -q);
            // sum_{j=1}^{k-1} 1/(c_{j-1} c_j) = -p'/q, exactly.
            Frac sum{0, 1};
            for (int j = 1; j <= k - 1; ++j) {
                Frac t = make_frac(1, pres.c[j - 1] * pres.c[j]);
                sum = make_frac(sum.num * t.den + t.num * sum.den, sum.den * t.den);
            }
            CHECK(sum == make_frac(-pres.pPrime, q));
        }
    }
}

TEST_CASE("chain signature") {
    CHECK(linking_signature({5}) == 1);
    CHECK(linking_signature({2, 3}) == 2);
    CHECK(linking_signature({-2}) == -1);
    CHECK(linking_signature({2, 2, 3}) == 3);
    CHECK(linking_signature({-2, -2}) == -2);
    CHECK(linking_signature({0, 2}) == 0);         // minors 1, 0, -1
    CHECK_THROWS_AS(linking_signature({0}), domain_error);
    CHECK_THROWS_AS(linking_signature({1, 1}), domain_error); // minors 1, 1, 0
}

TEST_CASE("lattice shift index k0") {
    auto p52 = make_presentation(5, 2, 0);
    CHECK(k0_of(p52, {0}) == 0);
    CHECK(k0_of(p52, {1}) == -1);
    auto p73 = make_presentation(7, 3, 0);
    CHECK(k0_of(p73, {0, 0}) == 0);
    CHECK(k0_of(p73, {1, 1}) == -1);
}

TEST_CASE("critical point map, unshifted") {
    auto p51 = make_presentation(5, 1, 0);
    CHECK(!lattice_point(p51, +1, 1, 0.3, 0.2).has_value());

    // x_1^+(x) = (-x + p' x0)/q for k = 2, here p' = -1, q = 2.
    auto p52 = make_presentation(5, 2, 0);
    for (double x : {-2.0, -0.5, 0.0, 1.1, 2.9}) {
        double x0 = 0.77;
        auto v = lattice_point(p52, +1, 1, x, x0);
        REQUIRE(v.has_value());
        CHECK(*v == doctest::Approx((-x + double(p52.pPrime) * x0) / 2).epsilon(1e-14));
    }

    // Backward substitution agrees with the closed form for every index.
    std::mt19937 rng(4520);
    std::uniform_real_distribution<double> ux(-PI, PI), u0(-PI, PI);
    for (auto [p, q] : std::vector<std::pair<long long, long long>>{
             {5, 2}, {7, 3}, {17, 5}, {-13, 9}, {31, 12}}) {
        auto pres = make_presentation(p, q, 0);
        for (int trial = 0; trial < 20; ++trial) {
            double x = ux(rng), x0 = u0(rng);
            for (int sign : {+1, -1}) {
                for (int i = 1; i <= pres.k(); ++i) {
                    auto v = lattice_point(pres, sign, i, x, x0);
                    REQUIRE(v.has_value());
                    CHECK(*v == doctest::Approx(closed_form(pres, sign, i, x, x0))
                                    .epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("interior variables stay interior") {
    // If |x| < pi - q pi/r then |x_i^sign| < pi - 2 pi/r for i = 1..k-1.
    auto pres = make_presentation(7, 3, 0);
    int r = 31;
    double x0 = 0.9 * PI;
    double lim = PI - double(pres.q) * PI / r;
    for (int g = 0; g < 1000; ++g) {
        double x = -lim + 2 * lim * (g + 0.5) / 1000;
        for (int sign : {+1, -1}) {
            for (int i = 1; i <= pres.k() - 1; ++i) {
                double v = *lattice_point(pres, sign, i, x, x0);
                CHECK(std::abs(v) < PI - 2 * PI / r);
            }
        }
    }
}

TEST_CASE("shifted maps escape the fundamental domain") {
    auto pres = make_presentation(7, 3, 0);

    // |k0| >= q forces the last interior variable out of (-pi, pi).
    std::vector<long long> big{3, 0};
    CHECK(k0_of(pres, big) == 3);
    for (int g = 0; g < 200; ++g) {
        double x = -PI + 2 * PI * (g + 0.5) / 200;
        for (double x0 : {0.3, 2.5}) {
            for (int sign : {+1, -1})
                CHECK(std::abs(*lattice_point(pres, sign, pres.k() - 1, x, x0, big)) >= PI);
        }
    }

    // Nonzero shift with k0 = 0: some interior variable escapes for every x.
    std::vector<long long> null{2, 1};
    CHECK(k0_of(pres, null) == 0);
    for (int g = 0; g < 200; ++g) {
        double x = -PI + 2 * PI * (g + 0.5) / 200;
        for (double x0 : {0.3, 2.5}) {
            for (int sign : {+1, -1}) {
                double worst = 0;
                for (int i = 1; i <= pres.k() - 1; ++i)
                    worst = std::max(worst,
                                     std::abs(*lattice_point(pres, sign, i, x, x0, null)));
                CHECK(worst >= PI);
            }
        }
    }
}

} // TEST_SUITE
