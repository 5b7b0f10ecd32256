#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nfpr/image.hpp"

namespace nfpr {

/// Seeded normal-variate stream. mt19937_64 is fully specified by the
/// standard and the Box–Muller transform is done here rather than through
/// std::normal_distribution, so a seed yields the same noise field on every
/// platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in the open interval (0, 1), 53 bits of resolution.
    double uniform_open();

    /// Standard normal variate.
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Adds i.i.d. N(0, sigma_noise^2) to every pixel. The result is not clamped.
[[nodiscard]] Image add_awgn(const Image& img, double sigma_noise, Rng& rng);

/// Separable Gaussian blur with a renormalized kernel truncated at
/// ceil(3*sigma_g) and whole-sample mirrored borders. sigma_g == 0 is the
/// identity.
[[nodiscard]] Image gaussian_smooth(const Image& img, double sigma_g);

/// The normalized 1D kernel used by gaussian_smooth (index 0 is offset -radius).
[[nodiscard]] std::vector<double> gaussian_kernel(double sigma_g);

}  // namespace nfpr
