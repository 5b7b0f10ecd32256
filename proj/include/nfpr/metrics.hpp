#pragma once

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "nfpr/image.hpp"

namespace nfpr {

/// Mean squared error on unclamped values.
[[nodiscard]] double mse(const Image& a, const Image& b);

/// Row-major complex spectrum with the image's dimensions.
struct Spectrum {
    int width = 0;
    int height = 0;
    std::vector<std::complex<double>> bins;

    [[nodiscard]] std::complex<double> at(int kx, int ky) const {
        return bins[static_cast<std::size_t>(ky) * width + kx];
    }
};

/// Unnormalized forward 2D DFT, X(k) = sum_n x(n) exp(-2 pi i k.n / N).
/// Radix-2 FFT along power-of-two axes, direct DFT otherwise.
[[nodiscard]] Spectrum dft2(const Image& img);

struct FrcRing {
    int ring = 0;
    double freq_lo = 0.0;     // exclusive, cycles/pixel
    double freq_hi = 0.0;     // inclusive
    double freq_center = 0.0;
    double correlation = 0.0;
    std::size_t n_bins = 0;
    bool degenerate = false;  // empty ring or zero energy in either image
};

struct FrcCurve {
    int levels = 0;
    std::vector<FrcRing> rings;
};

/// Fourier ring correlation of two equal-size square images. Ring l holds
/// the bins with l*step < |k|/size <= (l+1)*step, step = 0.5/levels; the DC
/// bin and the corners beyond Nyquist belong to no ring.
[[nodiscard]] FrcCurve frc(const Image& a, const Image& b, int levels = 64);

/// CSV with a '#' comment line documenting the binning, then the columns
/// ring_index,freq_center,correlation,n_bins.
void write_frc_csv(const FrcCurve& curve, std::ostream& out);
void write_frc_csv(const FrcCurve& curve, const std::filesystem::path& path);

/// Mean correlation over the non-degenerate rings in [first, last).
[[nodiscard]] double mean_correlation(const FrcCurve& curve, int first, int last);

}  // namespace nfpr
