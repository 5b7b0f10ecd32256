#pragma once

#include <cmath>

#include "nfpr/image.hpp"

namespace scenes {

/// Piecewise-smooth test scene: flat regions, a shaded disc, a roof-like
/// ramp, thin bars and a fine stripe texture. Values stay within [20, 235].
inline nfpr::Image building(int size) {
    nfpr::Image img(size, size);
    const double s = size;
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            const double u = x / s, v = y / s;
            double val = 70.0 + 60.0 * v;  // sky gradient
            if (v > 0.45) val = 150.0;     // wall
            if (v > 0.25 && v <= 0.45 && std::abs(u - 0.5) < (v - 0.25) * 1.6) val = 110.0 - 80.0 * (v - 0.25);
            if (v > 0.55 && v < 0.75 && u > 0.15 && u < 0.35) val = 40.0;  // window
            if (v > 0.55 && v < 0.75 && u > 0.65 && u < 0.85) val = 225.0;
            if (v > 0.6 && u > 0.42 && u < 0.58) val = 60.0 + 40.0 * ((x / 2) % 2);  // door stripes
            const double dx = u - 0.8, dy = v - 0.15;
            if (dx * dx + dy * dy < 0.006) val = 235.0 - 400.0 * (dx * dx + dy * dy) * 10.0;  // sun
            if (v > 0.9) val = 20.0 + 10.0 * std::sin(0.9 * x);  // ground texture
            img.at(x, y) = val;
        }
    return img;
}

}  // namespace scenes
