#include "nfpr/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nfpr {

double Rng::uniform_open() {
    // (k + 0.5) / 2^53 never hits 0 or 1.
    const std::uint64_t k = engine_() >> 11;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

Image add_awgn(const Image& img, double sigma_noise, Rng& rng) {
    if (!(sigma_noise >= 0.0) || !std::isfinite(sigma_noise))
        throw std::invalid_argument("sigma_noise must be finite and >= 0");
    Image out = img;
    if (sigma_noise == 0.0) return out;
    for (double& v : out.pixels()) v += sigma_noise * rng.normal();
    return out;
}

std::vector<double> gaussian_kernel(double sigma_g) {
    if (!(sigma_g >= 0.0) || !std::isfinite(sigma_g))
        throw std::invalid_argument("sigma_g must be finite and >= 0");
    if (sigma_g == 0.0) return {1.0};
    const int radius = static_cast<int>(std::ceil(3.0 * sigma_g));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int t = -radius; t <= radius; ++t) {
        k[t + radius] = std::exp(-0.5 * t * t / (sigma_g * sigma_g));
        sum += k[t + radius];
    }
    for (double& w : k) w /= sum;
    return k;
}

Image gaussian_smooth(const Image& img, double sigma_g) {
    const auto kernel = gaussian_kernel(sigma_g);
    if (kernel.size() == 1) return img;
    const int radius = static_cast<int>(kernel.size() / 2);
    const int w = img.width();
    const int h = img.height();

    Image tmp(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int t = -radius; t <= radius; ++t) acc += kernel[t + radius] * img.at(mirror_index(x + t, w), y);
            tmp.at(x, y) = acc;
        }

    Image out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int t = -radius; t <= radius; ++t) acc += kernel[t + radius] * tmp.at(x, mirror_index(y + t, h));
            out.at(x, y) = acc;
        }
    return out;
}

}  // namespace nfpr
