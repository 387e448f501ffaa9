// Surgery-presentation combinatorics: continued fractions of p/q, the b/c
// sequences, the (p', q') inverse pair, chain-link signature, and the
// critical-point maps x_i^+/-.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qvol/common.hpp"

namespace qvol {

// Exact rational, den > 0, always reduced.
struct Frac {
    long long num = 0, den = 1;
    friend bool operator==(const Frac&, const Frac&) = default;
};

Frac make_frac(long long num, long long den);

// Presentation of the p/q filling as surgery on a chain of k unknots with
// framings a_1..a_k, plus the knot component with framing a0.
struct SurgeryPresentation {
    long long p = 0;
    long long q = 1;
    long long a0 = 0;
    std::vector<long long> a;  // a_1..a_k, a_i >= 2 for i < k
    std::vector<Frac> b;       // b_1..b_k, b_i = c_i / c_{i-1}, b_k = p/q
    std::vector<long long> c;  // c_0..c_k, c_0 = 1, c_{k-1} = q, c_k = p
    long long pPrime = 0;      // p p' + q q' = 1 with -q < p' <= 0
    long long qPrime = 0;
    int sigma = 0;             // signature of the chain linking matrix

    int k() const { return int(a.size()); }
};

// Expansion p/q = a_k - 1/(a_{k-1} - 1/(... - 1/a_1)) with a_i >= 2 for
// i < k. Rejects (p,q) = (+-1, 0) and non-coprime input.
std::vector<long long> hj_expand(long long p, long long q);

// The unique (p', q') with p p' + q q' = 1 and -q < p' <= 0.
std::pair<long long, long long> inverse_pair(long long p, long long q);

// Signature of the symmetric tridiagonal matrix with diagonal a and
// off-diagonal 1, by exact integer Sturm counts on the principal minors.
// Throws domain_error if the matrix is singular.
int linking_signature(const std::vector<long long>& a);

SurgeryPresentation make_presentation(long long p, long long q, long long a0);

// k0 = sum_{j=1}^{k-1} (-1)^{k-j} n_j c_{j-1} for a lattice shift vector
// n = (n_1..n_{k-1}).
long long k0_of(const SurgeryPresentation& pres, const std::vector<long long>& n);

// The critical-point map x_i^sign(x): the interior lattice variables solved
// in terms of x = x_k from the shifted critical equations
//   x_j + x_{j+1}/b_j + (2pi/c_j) sum_{l<=j} (-1)^{j-l} n_l c_{l-1}
//       - sign (-1)^j x0/c_j = 0,
// whose n = 0 specialization is
//   x_i^sign(x) = (-1)^{k-i} c_{i-1} (x/q + sign (-1)^k sum_{j>=i} x0/(c_{j-1}c_j)).
// sign is +1 or -1; i in 1..k (i = k returns x). Empty n means all-zero.
// Returns nullopt when k = 1 (no interior variables).
std::optional<double> lattice_point(const SurgeryPresentation& pres, int sign,
                                    int i, double x, double x0,
                                    const std::vector<long long>& n = {});

}
