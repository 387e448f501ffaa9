#include "qvol/qinv.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qvol/summation.hpp"

namespace qvol {

namespace {

template <class T>
inline constexpr T pi_v = T(PI_L);

void check_r(int r) {
    if (r < 3 || r % 2 == 0) throw domain_error("r must be an odd integer >= 3");
}

// e^{i pi j / (4r)} with j reduced mod 8r. All normalization phases are
// integer multiples of pi/(4r); reducing the integer first keeps the angle
// in [0, 2pi) so large parameters cost no accuracy.
template <class T>
std::complex<T> phase_8r(int r, long long j) {
    const long long L = 8LL * r;
    j %= L;
    if (j < 0) j += L;
    T ang = T(2) * pi_v<T> * T(j) / T(L);
    return {std::cos(ang), std::sin(ang)};
}

// phase[j] = e^{i pi j / r} = q^{j/2}, j in [0, 2r).
template <class T>
std::vector<std::complex<T>> half_power_table(int r) {
    std::vector<std::complex<T>> t(std::size_t(2) * r);
    for (int j = 0; j < 2 * r; ++j) {
        T ang = pi_v<T> * T(j) / T(r);
        t[std::size_t(j)] = {std::cos(ang), std::sin(ang)};
    }
    return t;
}

// F[j] = 1 - q^{2j}, j in [0, r). Every factorial ratio is a product of
// consecutive F entries, never a quotient of large products.
template <class T>
std::vector<std::complex<T>> pochhammer_factors(int r) {
    std::vector<std::complex<T>> t(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) {
        T ang = T(4) * pi_v<T> * T(j) / T(r);
        t[std::size_t(j)] = {T(1) - std::cos(ang), -std::sin(ang)};
    }
    return t;
}

std::vector<long long> framings_with_a0(const SurgeryPresentation& pres) {
    std::vector<long long> aAll(std::size_t(pres.k()) + 1);
    aAll[0] = pres.a0;
    for (int i = 1; i <= pres.k(); ++i) aAll[std::size_t(i)] = pres.a[std::size_t(i - 1)];
    return aAll;
}

// Raw double sum: for each color vector (m_1..m_k) in [0, r-2]^k and
// 0 <= m <= min(m_k, r-2-m_k) the summand is
//   sin(2 pi (m0+1)(m_1+1)/r) * e^{i pi s / r} * prod_{j=m_k-m+1}^{m_k+1+m} F[j]
// with the integer phase
//   s = sum_i a_i m_i (m_i+2) + 2 sum_{i=1}^{k-1} (m_i+1)(m_{i+1}+1)
//       - 2 (m_k+1)(2m+1) + r * (sum_i a_i m_i mod 2)   (mod 2r),
// all sums over i = 0..k with m_0 fixed. The factor 2i from folding
// q^X - q^{-X} into the sine lives in the prefactor.
template <class T>
ChunkResult<T> raw_sum(int r, const SurgeryPresentation& pres, int m0) {
    const int k = pres.k();
    const int cols = r - 1;
    const std::size_t colsPerChunk = 64;
    const std::size_t chunkCount = (std::size_t(cols) + colsPerChunk - 1) / colsPerChunk;

    const auto phase = half_power_table<T>(r);
    const auto F = pochhammer_factors<T>(r);
    std::vector<T> sinT(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) sinT[std::size_t(j)] = std::sin(T(2) * pi_v<T> * T(j) / T(r));
    const auto aAll = framings_with_a0(pres);
    const long long L = 2LL * r;

    auto body = [&](std::size_t chunk) {
        ChunkResult<T> res;
        NeumaierSum<T> acc;
        T maxNorm = 0;
        const int c0 = int(chunk * colsPerChunk);
        const int c1 = std::min(cols, c0 + int(colsPerChunk));
        std::vector<int> mv(std::size_t(k), 0);
        for (int m1 = c0; m1 < c1; ++m1) {
            std::fill(mv.begin(), mv.end(), 0);
            mv[0] = m1;
            const T sinFac = sinT[std::size_t((1LL * (m0 + 1) * (m1 + 1)) % r)];
            for (;;) {
                const int mk = mv[std::size_t(k - 1)];
                long long twoE = aAll[0] * m0 * (m0 + 2);
                long long par = aAll[0] * m0;
                for (int i = 1; i <= k; ++i) {
                    const long long mi = mv[std::size_t(i - 1)];
                    twoE += aAll[std::size_t(i)] * mi * (mi + 2);
                    par += aAll[std::size_t(i)] * mi;
                }
                for (int i = 1; i < k; ++i)
                    twoE += 2LL * (mv[std::size_t(i - 1)] + 1) * (mv[std::size_t(i)] + 1);
                par = ((par % 2) + 2) % 2;

                const int mMax = std::min(mk, r - 2 - mk);
                std::complex<T> R = F[std::size_t(mk + 1)];
                for (int m = 0; m <= mMax; ++m) {
                    long long s = twoE - 2LL * (mk + 1) * (2 * m + 1) + r * par;
                    s %= L;
                    if (s < 0) s += L;
                    const std::complex<T> term = sinFac * phase[std::size_t(s)] * R;
                    acc.add(term);
                    ++res.terms;
                    const T nrm = std::norm(term);
                    if (nrm > maxNorm) maxNorm = nrm;
                    if (m < mMax) R *= F[std::size_t(mk + m + 2)] * F[std::size_t(mk - m)];
                }

                int pos = k - 1;
                while (pos >= 1) {
                    if (++mv[std::size_t(pos)] <= r - 2) break;
                    mv[std::size_t(pos)] = 0;
                    --pos;
                }
                if (pos < 1) break;
            }
        }
        res.sum = acc.value();
        res.maxMag = std::sqrt(maxNorm);
        return res;
    };
    return chunked_sum<T>(chunkCount, body);
}

// Symmetrized sum over doubled half-integer colors t_i = 2 m_i' (odd, in
// [-(r-2), r-2]) and t = 2m' (odd, max(-t_k, t_k) <= t <= r-2):
//   2 cos(pi t_0 t_1 / (2r)) * e^{i pi s / (4r)} * prod_{j=u+1}^{v} F[j],
//   s = sum_{i=0..k} a_i t_i^2 + 2 sum_{i=1}^{k-1} t_i t_{i+1}
//       - 4 t_k t - 4 t_k + 2 r t_k          (mod 8r),
//   u = (t - t_k)/2,  v = r - 1 - (t + t_k)/2,
// with t_0 = r-2-2m0 fixed. The t loop runs downward so the F product grows
// one factor on each side per step; terms are buffered and re-accumulated in
// ascending t so the stored order matches the raw mode's lexicographic one.
template <class T>
ChunkResult<T> symmetrized_sum(int r, const SurgeryPresentation& pres, int m0) {
    const int k = pres.k();
    const int cols = r - 1;
    const std::size_t colsPerChunk = 64;
    const std::size_t chunkCount = (std::size_t(cols) + colsPerChunk - 1) / colsPerChunk;

    const auto F = pochhammer_factors<T>(r);
    std::vector<std::complex<T>> phase8(std::size_t(8) * r);
    for (int j = 0; j < 8 * r; ++j) phase8[std::size_t(j)] = phase_8r<T>(r, j);
    std::vector<T> cosT(std::size_t(4) * r);
    for (int j = 0; j < 4 * r; ++j)
        cosT[std::size_t(j)] = T(2) * std::cos(pi_v<T> * T(j) / T(2 * r));
    const auto aAll = framings_with_a0(pres);
    const long long t0 = r - 2 - 2LL * m0;
    const long long L8 = 8LL * r, L4 = 4LL * r;

    auto body = [&](std::size_t chunk) {
        ChunkResult<T> res;
        NeumaierSum<T> acc;
        T maxNorm = 0;
        const int c0 = int(chunk * colsPerChunk);
        const int c1 = std::min(cols, c0 + int(colsPerChunk));
        std::vector<long long> tv(std::size_t(k), 0);
        std::vector<std::complex<T>> buf;
        buf.reserve(std::size_t(r) / 2 + 1);
        for (int j1 = c0; j1 < c1; ++j1) {
            for (int i = 0; i < k; ++i) tv[std::size_t(i)] = -(r - 2);
            tv[0] = -(r - 2) + 2LL * j1;
            long long cIdx = (t0 * tv[0]) % L4;
            if (cIdx < 0) cIdx += L4;
            const T cosFac = cosT[std::size_t(cIdx)];
            for (;;) {
                const long long tk = tv[std::size_t(k - 1)];
                long long sFixed = aAll[0] * t0 * t0 - 4 * tk + 2LL * r * tk;
                for (int i = 1; i <= k; ++i)
                    sFixed += aAll[std::size_t(i)] * tv[std::size_t(i - 1)] * tv[std::size_t(i - 1)];
                for (int i = 1; i < k; ++i)
                    sFixed += 2LL * tv[std::size_t(i - 1)] * tv[std::size_t(i)];

                const long long tLo = tk < 0 ? -tk : tk;
                buf.clear();
                long long t = r - 2;
                long long u = (t - tk) / 2, v = r - 1 - (t + tk) / 2;
                std::complex<T> R = F[std::size_t(v)]; // v == u+1 at the top
                for (;;) {
                    long long s = (sFixed - 4 * tk * t) % L8;
                    if (s < 0) s += L8;
                    buf.push_back(cosFac * phase8[std::size_t(s)] * R);
                    if (t - 2 < tLo) break;
                    R *= F[std::size_t(u)] * F[std::size_t(v + 1)];
                    t -= 2;
                    --u;
                    ++v;
                }
                for (auto it = buf.rbegin(); it != buf.rend(); ++it) {
                    acc.add(*it);
                    ++res.terms;
                    const T nrm = std::norm(*it);
                    if (nrm > maxNorm) maxNorm = nrm;
                }

                int pos = k - 1;
                while (pos >= 1) {
                    tv[std::size_t(pos)] += 2;
                    if (tv[std::size_t(pos)] <= r - 2) break;
                    tv[std::size_t(pos)] = -(r - 2);
                    --pos;
                }
                if (pos < 1) break;
            }
        }
        res.sum = acc.value();
        res.maxMag = std::sqrt(maxNorm);
        return res;
    };
    return chunked_sum<T>(chunkCount, body);
}

// Prefactor of the raw mode, with the 2i of each folded sine included:
//   (-1)^{m0+1} 2^{k-1} kappa'_r / {1}^{k+1} * 2i
//     = 2^k (2r)^{-(k+1)/2} e^{i pi J / (4r)},
//   J = 4r(m0+1) + 2r - 2r(k+1) + sigma (12 + r(r+1)).
template <class T>
std::complex<T> raw_prefactor(int r, const SurgeryPresentation& pres, int m0) {
    const int k = pres.k();
    const long long J = 4LL * r * (m0 + 1) + 2LL * r - 2LL * r * (k + 1)
                      + pres.sigma * (12LL + 1LL * r * (r + 1));
    const T mag = std::pow(T(2), k) * std::pow(T(2) * r, -T(k + 1) / 2);
    return mag * phase_8r<T>(r, J);
}

//   2^{k-1} i^{-(k+1)} (2r)^{-(k+1)/2} e^{-sigma(-3/r-(r+1)/4) pi i}
//     * i^{r(k+1)} (-1)^{k-1} e^{-i pi (r-2)^2 (sum_i a_i) / (4r)}.
template <class T>
std::complex<T> symmetrized_prefactor_t(int r, const SurgeryPresentation& pres) {
    const int k = pres.k();
    long long sumA = pres.a0;
    for (long long ai : pres.a) sumA += ai;
    const long long J = -2LL * r * (k + 1) + pres.sigma * (12LL + 1LL * r * (r + 1))
                      + 2LL * r * r * (k + 1) + 4LL * r * (k - 1)
                      - 1LL * (r - 2) * (r - 2) * sumA;
    const T mag = std::pow(T(2), k - 1) * std::pow(T(2) * r, -T(k + 1) / 2);
    return mag * phase_8r<T>(r, J);
}

template <class T>
InvariantValue rt_eval(int r, const SurgeryPresentation& pres, int m0, RtMode mode,
                       Precision prec) {
    const ChunkResult<T> total = mode == RtMode::raw ? raw_sum<T>(r, pres, m0)
                                                     : symmetrized_sum<T>(r, pres, m0);
    const std::complex<T> pref = mode == RtMode::raw
                                     ? raw_prefactor<T>(r, pres, m0)
                                     : symmetrized_prefactor_t<T>(r, pres);
    const std::complex<T> v = pref * total.sum;

    InvariantValue out;
    out.value = cplx(double(v.real()), double(v.imag()));
    out.r = r;
    out.precision = prec;
    out.termCount = total.terms;
    out.maxTermMagnitude = double(total.maxMag);
    out.cancellationEstimate =
        double(std::log10(total.maxMag * std::abs(pref)) - std::log10(std::abs(v)));

    const double headroom = mantissaDigits10(prec) - 6;
    const double load = out.cancellationEstimate + 0.5 * std::log10(double(total.terms));
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()) ||
        !std::isfinite(out.cancellationEstimate) || load > headroom) {
        throw precision_error(
            "rt_invariant: cancellation exceeds mantissa headroom (estimate " +
            std::to_string(out.cancellationEstimate) + " digits over " +
            std::to_string(total.terms) + " terms); retry with extended precision");
    }
    return out;
}

}

double quantum_integer(int r, long long n) {
    check_r(r);
    long long nr = n % r;
    if (nr < 0) nr += r;
    if (nr == 0) return 0.0;
    return std::sin(2.0 * PI * double(nr) / r) / std::sin(2.0 * PI / r);
}

cplx q_pochhammer(int r, int n) {
    check_r(r);
    if (n < 0 || n > r - 1) throw domain_error("q_pochhammer: need 0 <= n <= r-1");
    const auto F = pochhammer_factors<double>(r);
    cplx v = 1.0;
    for (int j = 1; j <= n; ++j) v *= F[std::size_t(j)];
    return v;
}

cplx quantum_factorial(int r, int n) {
    check_r(r);
    if (n < 0 || n > r - 1) throw domain_error("quantum_factorial: need 0 <= n <= r-1");
    const auto phase = half_power_table<double>(r);
    long long s = (-1LL * n * (n + 1)) % (2LL * r);
    if (s < 0) s += 2LL * r;
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    return sign * phase[std::size_t(s)] * q_pochhammer(r, n);
}

cplx habiro_bracket(int r, int n) {
    check_r(r);
    if (n < 0 || n > r - 2) throw domain_error("habiro_bracket: need 0 <= n <= r-2");
    const auto phase = half_power_table<double>(r);
    const auto F = pochhammer_factors<double>(r);
    const long long L = 2LL * r;
    const int mMax = std::min(n, r - 2 - n);
    NeumaierSum<double> acc;
    cplx R = F[std::size_t(n + 1)];
    for (int m = 0; m <= mMax; ++m) {
        long long s = (-2LL * (n + 1) * (2 * m + 1)) % L;
        if (s < 0) s += L;
        acc.add(phase[std::size_t(s)] * R);
        if (m < mMax) R *= F[std::size_t(n + m + 2)] * F[std::size_t(n - m)];
    }
    const double sign = n % 2 == 0 ? -1.0 : 1.0; // (-1)^{n+1}
    const cplx brace1(0.0, 2.0 * std::sin(2.0 * PI / r));
    return sign * acc.value() / brace1;
}

cplx kappa(int r, const SurgeryPresentation& pres) {
    check_r(r);
    const int k = pres.k();
    long long sumA = pres.a0;
    for (long long ai : pres.a) sumA += ai;
    const long long sig = pres.sigma;
    // exponent collected as an integer multiple of i pi / (4r):
    //   (3 sum a + sigma + 2k - 2) r pi i / 4
    // + (-(sum a)(1 + 1/r) + 3 sigma / r + sigma / 4) pi i
    const long long J = (3 * sumA + sig + 2 * k - 2) * r * r
                      + (-4 * sumA * (r + 1) + 12 * sig + sig * r);
    const double mag = std::pow(2.0, k - 3) * std::pow(double(r), -0.5 * (k + 1)) *
                       std::pow(std::sin(2.0 * PI / r), k - 1);
    return mag * phase_8r<double>(r, J);
}

cplx symmetrized_prefactor(int r, const SurgeryPresentation& pres) {
    check_r(r);
    return symmetrized_prefactor_t<double>(r, pres);
}

int epsilon_region(double x, double y) {
    const double u = y + x, v = y - x;
    const auto low = [](double w) { return w > 0 && w < PI / 2; };
    const auto high = [](double w) { return w > PI && w < 1.5 * PI; };
    if (low(u) && low(v)) return 2;
    if ((low(u) && high(v)) || (high(u) && low(v))) return 1;
    return 0;
}

double ColorParameters::theta() const { return std::abs(2.0 * x0()); }

ColorParameters make_color(int r, int m0) {
    check_r(r);
    if (m0 < 0 || m0 > r - 2) throw domain_error("color m0 out of [0, r-2]");
    return ColorParameters{r, m0};
}

int choose_color(int r, double theta, ColorBranch branch) {
    check_r(r);
    if (!(theta > 0.0 && theta < 2.0 * PI))
        throw domain_error("choose_color: theta must lie in (0, 2 pi)");
    const double center = 0.5 * (r - 2);
    const double v = center + (branch == ColorBranch::plus ? 1.0 : -1.0) * theta * r / (4.0 * PI);
    const double fl = std::floor(v);
    long long m;
    if (std::abs(v - fl - 0.5) < 1e-12) {
        // exact half: keep the candidate nearer the lattice center
        m = std::abs(fl - center) <= std::abs(fl + 1 - center) ? (long long)fl
                                                               : (long long)fl + 1;
    } else {
        m = std::llround(v);
    }
    if (m < 0) m = 0;
    if (m > r - 2) m = r - 2;
    return int(m);
}

InvariantValue rt_invariant(int r, const SurgeryPresentation& pres, int m0, RtMode mode,
                            Precision prec) {
    check_r(r);
    if (m0 < 0 || m0 > r - 2) throw domain_error("rt_invariant: m0 out of [0, r-2]");
    return prec == Precision::standard ? rt_eval<double>(r, pres, m0, mode, prec)
                                       : rt_eval<long double>(r, pres, m0, mode, prec);
}

}
