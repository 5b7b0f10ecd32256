#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nfpr/image.hpp"

namespace nfpr {

struct Offset {
    int dx = 0;
    int dy = 0;
    friend bool operator==(const Offset&, const Offset&) = default;
};

/// Integer lattice points inside a closed disc, in row-major order
/// (dy ascending, then dx ascending).
class DiscStencil {
public:
    explicit DiscStencil(int radius);

    [[nodiscard]] int radius() const noexcept { return radius_; }
    [[nodiscard]] std::span<const Offset> offsets() const noexcept { return offsets_; }
    [[nodiscard]] std::size_t size() const noexcept { return offsets_.size(); }

    /// Half-width of the horizontal span at row dy, for |dy| <= radius.
    [[nodiscard]] int half_width(int dy) const noexcept { return half_width_[dy + radius_]; }

private:
    int radius_;
    std::vector<Offset> offsets_;
    std::vector<int> half_width_;
};

/// One member of a reordered set. In a forward set `index` is the
/// neighbour j; in a reverse set it is the owner whose forward set holds
/// this pixel.
struct Neighbor {
    std::int32_t index = 0;
    double distance = 0.0;  // raw patch distance d_ij
    double scaled = 0.0;    // distance rescaled to [0,255] within the owner's set

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Forward sets P_i (the most patch-similar pixels of each pixel, sorted by
/// ascending distance then row-major index) and their transpose, the
/// reverse sets P_i^add. Both are stored in compressed row form.
class ReorderedSets {
public:
    ReorderedSets() = default;

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }
    /// Requested set size N.
    [[nodiscard]] int set_size() const noexcept { return n_; }

    [[nodiscard]] std::span<const Neighbor> forward(std::size_t i) const noexcept {
        return {forward_.data() + forward_start_[i], forward_.data() + forward_start_[i + 1]};
    }
    [[nodiscard]] std::span<const Neighbor> reverse(std::size_t i) const noexcept {
        return {reverse_.data() + reverse_start_[i], reverse_.data() + reverse_start_[i + 1]};
    }

    /// Assembles sets from per-pixel forward lists (already sorted and
    /// rescaled) and derives the reverse sets by transposition.
    static ReorderedSets from_forward(int width, int height, int n, std::vector<std::size_t> forward_start,
                                      std::vector<Neighbor> forward);

    friend bool operator==(const ReorderedSets&, const ReorderedSets&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    int n_ = 0;
    std::vector<std::size_t> forward_start_;
    std::vector<Neighbor> forward_;
    std::vector<std::size_t> reverse_start_;
    std::vector<Neighbor> reverse_;
};

/// L2 distance between the disc patches centred on pixels i and j (row-major
/// indices). Samples outside the image are mirrored.
[[nodiscard]] double patch_distance(const Image& img, std::size_t i, std::size_t j, const DiscStencil& sim);

/// Affine map of a set of distances onto [0,255]; a set with no spread maps
/// to all zeros.
[[nodiscard]] std::vector<double> rescale_distances(std::span<const double> distances);

/// For every pixel, ranks the candidates inside the search disc (clipped to
/// the image) by patch distance on `guide` and keeps the n best.
///
/// Distances are evaluated per displacement vector: one squared-difference
/// field, row prefix sums, then a sum of disc row spans per pixel. Border
/// pixels whose clipped search region holds fewer than n candidates keep
/// all of them.
[[nodiscard]] ReorderedSets build_sets(const Image& guide, const DiscStencil& search, const DiscStencil& sim,
                                       int n, unsigned threads = 1);

}  // namespace nfpr
