#include "nfpr/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nfpr {

Image::Image(int width, int height, double fill) : width_(width), height_(height) {
    if (width < 1 || height < 1)
        throw ShapeError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                         std::to_string(height));
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Image::Image(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width < 1 || height < 1)
        throw ShapeError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                         std::to_string(height));
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw ShapeError("pixel count " + std::to_string(data_.size()) + " does not match " +
                         std::to_string(width) + "x" + std::to_string(height));
    if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); }))
        throw ShapeError("image contains non-finite values");
}

double Image::min() const {
    if (data_.empty()) throw ShapeError("min of empty image");
    return *std::min_element(data_.begin(), data_.end());
}

double Image::max() const {
    if (data_.empty()) throw ShapeError("max of empty image");
    return *std::max_element(data_.begin(), data_.end());
}

}  // namespace nfpr
