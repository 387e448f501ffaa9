#include "qvol/cfrac.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace qvol {

Frac make_frac(long long num, long long den) {
    if (den == 0) throw domain_error("make_frac: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

std::vector<long long> hj_expand(long long p, long long q) {
    if (q == 0)
        throw domain_error("hj_expand: (p,q) = (+-1, 0) has no chain presentation");
    if (q < 0) throw domain_error("hj_expand: q must be positive");
    if (std::gcd(p < 0 ? -p : p, q) != 1)
        throw domain_error("hj_expand: p and q must be coprime");

    // Ceiling division digits, outermost first; every digit after the first
    // is automatically >= 2 because the remainders satisfy 0 < q' < p'.
    std::vector<long long> outer;
    while (q > 0) {
        long long a = p / q;
        if (p % q != 0 && p > 0) ++a;
        outer.push_back(a);
        long long next = a * q - p;
        p = q;
        q = next;
    }
    return {outer.rbegin(), outer.rend()};
}

std::pair<long long, long long> inverse_pair(long long p, long long q) {
    if (q < 1) throw domain_error("inverse_pair: q must be >= 1");
    if (std::gcd(p < 0 ? -p : p, q) != 1)
        throw domain_error("inverse_pair: p and q must be coprime");
    // p p' == 1 (mod q) with p' in (-q, 0].
    long long pp = 0;
    for (long long t = 0; t < q; ++t) {
        if (((p % q) * t % q + q) % q == 1 % q) {
            pp = t == 0 ? 0 : t - q;
            break;
        }
    }
    long long qq = (1 - p * pp) / q;
    return {pp, qq};
}

int linking_signature(const std::vector<long long>& a) {
    if (a.empty()) throw domain_error("linking_signature: empty sequence");
    // Principal minors d_i = a_i d_{i-1} - d_{i-2} of the tridiagonal matrix.
    // Sign changes in (1, d_1, ..., d_k) count negative eigenvalues; a zero
    // interior minor takes the opposite sign of its predecessor (consecutive
    // minors cannot both vanish when the off-diagonal is 1).
    long long dPrev = 0, dCur = 1;
    int changes = 0, signPrev = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        long long dNext = a[i] * dCur - dPrev;
        dPrev = dCur;
        dCur = dNext;
        int s = dCur > 0 ? 1 : (dCur < 0 ? -1 : -signPrev);
        if (dCur == 0 && i + 1 == a.size())
            throw domain_error("linking_signature: singular linking matrix");
        if (s != signPrev) ++changes;
        signPrev = s;
    }
    return int(a.size()) - 2 * changes;
}

SurgeryPresentation make_presentation(long long p, long long q, long long a0) {
    SurgeryPresentation pres;
    pres.p = p;
    pres.q = q;
    pres.a0 = a0;
    pres.a = hj_expand(p, q);
    int k = pres.k();

    pres.c.assign(k + 1, 1);
    long long cPrev = 0;
    for (int i = 1; i <= k; ++i) {
        pres.c[i] = pres.a[i - 1] * pres.c[i - 1] - cPrev;
        cPrev = pres.c[i - 1];
    }
    for (int i = 1; i <= k; ++i) pres.b.push_back(make_frac(pres.c[i], pres.c[i - 1]));

    if (pres.c[k - 1] != q || pres.c[k] != p)
        throw domain_error("make_presentation: continued fraction reconstruction failed");

    auto [pp, qq] = inverse_pair(p, q);
    pres.pPrime = pp;
    pres.qPrime = qq;
    pres.sigma = linking_signature(pres.a);
    return pres;
}

long long k0_of(const SurgeryPresentation& pres, const std::vector<long long>& n) {
    int k = pres.k();
    if (int(n.size()) != k - 1)
        throw domain_error("k0_of: shift vector must have length k-1");
    long long k0 = 0;
    for (int j = 1; j <= k - 1; ++j) {
        long long s = ((k - j) % 2 == 0) ? 1 : -1;
        k0 += s * n[j - 1] * pres.c[j - 1];
    }
    return k0;
}

std::optional<double> lattice_point(const SurgeryPresentation& pres, int sign,
                                    int i, double x, double x0,
                                    const std::vector<long long>& n) {
    int k = pres.k();
    if (k == 1) return std::nullopt;
    if (sign != 1 && sign != -1) throw domain_error("lattice_point: sign must be +-1");
    if (i < 1 || i > k) throw domain_error("lattice_point: index out of range");
    if (!n.empty() && int(n.size()) != k - 1)
        throw domain_error("lattice_point: shift vector must have length k-1");
    if (i == k) return x;

    // Backward substitution x_j = -x_{j+1} c_{j-1}/c_j - S_j + sign (-1)^j x0/c_j.
    double xj = x;
    for (int j = k - 1; j >= i; --j) {
        double cj = double(pres.c[j]);
        double shift = 0;
        if (!n.empty()) {
            for (int l = 1; l <= j; ++l) {
                double s = ((j - l) % 2 == 0) ? 1.0 : -1.0;
                shift += s * double(n[l - 1]) * double(pres.c[l - 1]);
            }
            shift *= 2.0 * PI / cj;
        }
        double par = (j % 2 == 0) ? 1.0 : -1.0;
        xj = -xj * double(pres.c[j - 1]) / cj - shift + sign * par * x0 / cj;
    }
    return xj;
}

}
