#pragma once

// Brute-force reference implementations used only by the tests. They follow
// the defining formulas directly and share no code with the library beyond
// the Image container.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "nfpr/image.hpp"

namespace oracle {

inline int reflect(int i, int n) {
    // Half-sample symmetric, one reflection at a time.
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

struct Entry {
    int index;
    double distance;
    double scaled;
};

struct Sets {
    std::vector<std::vector<Entry>> forward;
    std::vector<std::vector<Entry>> reverse;  // index = owner
};

inline std::vector<std::pair<int, int>> disc(int radius) {
    std::vector<std::pair<int, int>> out;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (dx * dx + dy * dy <= radius * radius) out.emplace_back(dx, dy);
    return out;
}

inline double patch_distance(const nfpr::Image& g, int xi, int yi, int xj, int yj, int rho_sim) {
    double sum = 0.0;
    for (auto [dx, dy] : disc(rho_sim)) {
        const double a = g.at(reflect(xi + dx, g.width()), reflect(yi + dy, g.height()));
        const double b = g.at(reflect(xj + dx, g.width()), reflect(yj + dy, g.height()));
        sum += (a - b) * (a - b);
    }
    return std::sqrt(sum);
}

inline Sets build_sets(const nfpr::Image& g, int rho_search, int rho_sim, int n) {
    const int w = g.width(), h = g.height();
    Sets s;
    s.forward.resize(w * h);
    s.reverse.resize(w * h);
    for (int yi = 0; yi < h; ++yi)
        for (int xi = 0; xi < w; ++xi) {
            std::vector<Entry> cands;
            for (int yj = 0; yj < h; ++yj)
                for (int xj = 0; xj < w; ++xj) {
                    const int dx = xj - xi, dy = yj - yi;
                    if (dx * dx + dy * dy > rho_search * rho_search) continue;
                    cands.push_back({yj * w + xj, patch_distance(g, xi, yi, xj, yj, rho_sim), 0.0});
                }
            std::sort(cands.begin(), cands.end(), [](const Entry& a, const Entry& b) {
                return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
            });
            if (static_cast<int>(cands.size()) > n) cands.resize(n);
            double lo = cands.front().distance, hi = lo;
            for (const auto& c : cands) lo = std::min(lo, c.distance), hi = std::max(hi, c.distance);
            for (auto& c : cands) c.scaled = hi > lo ? 255.0 * (c.distance - lo) / (hi - lo) : 0.0;
            s.forward[yi * w + xi] = cands;
        }
    // Transpose by scanning every owner for every pixel.
    for (int i = 0; i < w * h; ++i)
        for (int owner = 0; owner < w * h; ++owner)
            for (const auto& e : s.forward[owner])
                if (e.index == i) s.reverse[i].push_back({owner, e.distance, e.scaled});
    return s;
}

inline double g_fn(double s, double lambda) {
    if (s == 0.0) return 1.0;
    return 1.0 - std::exp(-3.31488 / std::pow(s / lambda, 8));
}

inline double h_fn(double s, double sigma) { return std::exp(-s * s / (2 * sigma * sigma)); }

inline std::vector<double> presmooth(const std::vector<double>& u, const Sets& s, double sigma) {
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        double num = 0.0, b_inv = 0.0;
        for (const auto& e : s.forward[i]) num += h_fn(e.scaled, sigma) * u[e.index], b_inv += h_fn(e.scaled, sigma);
        for (const auto& e : s.reverse[i]) num += h_fn(e.scaled, sigma) * u[e.index], b_inv += h_fn(e.scaled, sigma);
        out[i] = num / b_inv;
    }
    return out;
}

// literal = true uses a_i = b_i / M_i, otherwise a_i = 1 / M_i.
inline std::vector<double> evolve(const std::vector<double>& u, const std::vector<double>& us, const Sets& s,
                                  double sigma, double lambda, double tau, bool literal = false) {
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        double flux = 0.0, b_inv = 0.0;
        for (const auto* set : {&s.forward[i], &s.reverse[i]})
            for (const auto& e : *set) {
                flux += g_fn(us[e.index] - us[i], lambda) * h_fn(e.scaled, sigma) * (u[e.index] - u[i]);
                b_inv += h_fn(e.scaled, sigma);
            }
        const double m = static_cast<double>(s.forward[i].size() + s.reverse[i].size());
        const double a = literal ? 1.0 / (b_inv * m) : 1.0 / m;
        out[i] = u[i] + tau * a * flux;
    }
    return out;
}

// O(N^2) per output bin.
inline std::vector<std::complex<double>> dft2(const nfpr::Image& img) {
    const int w = img.width(), h = img.height();
    std::vector<std::complex<double>> out(w * h);
    for (int ky = 0; ky < h; ++ky)
        for (int kx = 0; kx < w; ++kx) {
            std::complex<double> acc = 0.0;
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const double phase = -2.0 * std::numbers::pi * (double(kx) * x / w + double(ky) * y / h);
                    acc += img.at(x, y) * std::complex<double>(std::cos(phase), std::sin(phase));
                }
            out[ky * w + kx] = acc;
        }
    return out;
}

inline nfpr::Image random_image(int w, int h, std::uint64_t seed, bool integral = false) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(0.0, 255.0);
    nfpr::Image img(w, h);
    for (double& v : img.pixels()) v = integral ? std::floor(dist(gen)) : dist(gen);
    return img;
}

}  // namespace oracle
