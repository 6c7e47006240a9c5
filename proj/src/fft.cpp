#include "blc/fft.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace blc {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;

// Iterative radix-2 Cooley-Tukey, forward direction, un-normalized.
// n must be a power of two.
void fft_pow2(std::vector<cplx>& a) {
    const std::size_t n = a.size();
    if (n < 2) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * kPi / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Bluestein chirp-z transform for arbitrary n, forward, un-normalized.
// The quadratic phase index is reduced mod 2n to keep the angle argument
// small regardless of n.
void fft_bluestein(std::vector<cplx>& a) {
    const std::size_t n = a.size();
    if (n < 2) return;

    std::vector<cplx> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t sq = (static_cast<std::uint64_t>(k) * k) % (2 * n);
        const double ang = -kPi * static_cast<double>(sq) / static_cast<double>(n);
        chirp[k] = cplx(std::cos(ang), std::sin(ang));
    }

    const std::size_t m = std::bit_ceil(2 * n - 1);
    std::vector<cplx> fa(m, cplx(0.0, 0.0));
    std::vector<cplx> fb(m, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) fa[k] = a[k] * chirp[k];
    fb[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) fb[k] = fb[m - k] = std::conj(chirp[k]);

    fft_pow2(fa);
    fft_pow2(fb);
    for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];

    // Inverse power-of-two transform via conjugation.
    for (auto& v : fa) v = std::conj(v);
    fft_pow2(fa);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k)
        a[k] = std::conj(fa[k]) * inv_m * chirp[k];
}

void dft_1d_forward(std::vector<cplx>& a) {
    if (std::has_single_bit(a.size()))
        fft_pow2(a);
    else
        fft_bluestein(a);
}

// inverse = conj(forward(conj(x))); the 1/n factor is applied by the 2-D
// driver as a single 1/(W*H).
void dft_1d_inverse_unscaled(std::vector<cplx>& a) {
    for (auto& v : a) v = std::conj(v);
    dft_1d_forward(a);
    for (auto& v : a) v = std::conj(v);
}

template <typename RowFn>
void transform_2d(Spectrum& s, RowFn&& transform_row) {
    std::vector<cplx> buf(static_cast<std::size_t>(s.width));
    for (int r = 0; r < s.height; ++r) {
        for (int c = 0; c < s.width; ++c) {
            const std::size_t i = s.index(r, c);
            buf[static_cast<std::size_t>(c)] = cplx(s.re[i], s.im[i]);
        }
        transform_row(buf);
        for (int c = 0; c < s.width; ++c) {
            const std::size_t i = s.index(r, c);
            s.re[i] = buf[static_cast<std::size_t>(c)].real();
            s.im[i] = buf[static_cast<std::size_t>(c)].imag();
        }
    }
    buf.assign(static_cast<std::size_t>(s.height), cplx(0.0, 0.0));
    for (int c = 0; c < s.width; ++c) {
        for (int r = 0; r < s.height; ++r) {
            const std::size_t i = s.index(r, c);
            buf[static_cast<std::size_t>(r)] = cplx(s.re[i], s.im[i]);
        }
        transform_row(buf);
        for (int r = 0; r < s.height; ++r) {
            const std::size_t i = s.index(r, c);
            s.re[i] = buf[static_cast<std::size_t>(r)].real();
            s.im[i] = buf[static_cast<std::size_t>(r)].imag();
        }
    }
}

}  // namespace

Spectrum forward_dft(const GrayImage& img) {
    Spectrum s(img.width, img.height);
    s.re = img.data;
    transform_2d(s, [](std::vector<cplx>& row) { dft_1d_forward(row); });
    return s;
}

Spectrum inverse_dft(const Spectrum& spec) {
    Spectrum s = spec;
    transform_2d(s, [](std::vector<cplx>& row) { dft_1d_inverse_unscaled(row); });
    const double norm = 1.0 / (static_cast<double>(spec.width) * spec.height);
    for (auto& v : s.re) v *= norm;
    for (auto& v : s.im) v *= norm;
    return s;
}

}  // namespace blc
