#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace nfpr {

/// Grayscale raster of real intensities, stored row-major.
///
/// Values carry the nominal 8-bit range [0,255] but are not clamped: noisy
/// inputs and intermediate iterates may leave that range.
class Image {
public:
    Image() = default;
    Image(int width, int height, double fill = 0.0);
    Image(int width, int height, std::vector<double> data);

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    [[nodiscard]] double& operator[](std::size_t i) noexcept { return data_[i]; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return data_[i]; }
    [[nodiscard]] double& at(int x, int y) noexcept { return data_[index(x, y)]; }
    [[nodiscard]] double at(int x, int y) const noexcept { return data_[index(x, y)]; }

    [[nodiscard]] std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    [[nodiscard]] std::span<double> pixels() noexcept { return data_; }
    [[nodiscard]] std::span<const double> pixels() const noexcept { return data_; }

    [[nodiscard]] double min() const;
    [[nodiscard]] double max() const;
    [[nodiscard]] bool same_shape(const Image& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const Image&, const Image&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Half-sample symmetric reflection of `i` into [0, n): -1 -> 0, n -> n-1.
/// The extension is periodic with period 2n, so offsets larger than the
/// extent keep reflecting.
[[nodiscard]] constexpr int mirror_index(int i, int n) noexcept {
    const int period = 2 * n;
    int r = i % period;
    if (r < 0) r += period;
    return r < n ? r : period - 1 - r;
}

/// Thrown when image dimensions disagree or an image is structurally invalid.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace nfpr
