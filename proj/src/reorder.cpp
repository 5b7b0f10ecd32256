#include "nfpr/reorder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "nfpr/parallel.hpp"

namespace nfpr {

DiscStencil::DiscStencil(int radius) : radius_(radius) {
    if (radius < 0) throw std::invalid_argument("stencil radius must be >= 0");
    half_width_.resize(2 * radius + 1);
    const long r2 = static_cast<long>(radius) * radius;
    for (int dy = -radius; dy <= radius; ++dy) {
        int hw = 0;
        while (static_cast<long>(hw + 1) * (hw + 1) + static_cast<long>(dy) * dy <= r2) ++hw;
        half_width_[dy + radius] = hw;
        for (int dx = -hw; dx <= hw; ++dx) offsets_.push_back({dx, dy});
    }
}

double patch_distance(const Image& img, std::size_t i, std::size_t j, const DiscStencil& sim) {
    const int w = img.width();
    const int h = img.height();
    const int xi = static_cast<int>(i % w), yi = static_cast<int>(i / w);
    const int xj = static_cast<int>(j % w), yj = static_cast<int>(j / w);
    double sum = 0.0;
    for (const Offset& o : sim.offsets()) {
        const double a = img.at(mirror_index(xi + o.dx, w), mirror_index(yi + o.dy, h));
        const double b = img.at(mirror_index(xj + o.dx, w), mirror_index(yj + o.dy, h));
        sum += (a - b) * (a - b);
    }
    return std::sqrt(sum);
}

std::vector<double> rescale_distances(std::span<const double> distances) {
    if (distances.empty()) throw std::invalid_argument("rescale_distances: empty set");
    const auto [lo, hi] = std::minmax_element(distances.begin(), distances.end());
    const double d_min = *lo;
    const double spread = *hi - d_min;
    std::vector<double> out(distances.size(), 0.0);
    if (spread > 0.0)
        for (std::size_t k = 0; k < distances.size(); ++k) out[k] = 255.0 * ((distances[k] - d_min) / spread);
    return out;
}

ReorderedSets ReorderedSets::from_forward(int width, int height, int n, std::vector<std::size_t> forward_start,
                                          std::vector<Neighbor> forward) {
    ReorderedSets s;
    s.width_ = width;
    s.height_ = height;
    s.n_ = n;
    const std::size_t count = s.pixel_count();
    if (forward_start.size() != count + 1 || forward_start.back() != forward.size())
        throw std::invalid_argument("ReorderedSets: inconsistent forward layout");

    // Two-pass counting transpose; filling in owner order keeps each
    // reverse list sorted by owner index.
    std::vector<std::size_t> reverse_start(count + 1, 0);
    for (const Neighbor& nb : forward) ++reverse_start[static_cast<std::size_t>(nb.index) + 1];
    for (std::size_t i = 0; i < count; ++i) reverse_start[i + 1] += reverse_start[i];
    std::vector<Neighbor> reverse(forward.size());
    std::vector<std::size_t> cursor(reverse_start.begin(), reverse_start.end() - 1);
    for (std::size_t owner = 0; owner < count; ++owner)
        for (std::size_t k = forward_start[owner]; k < forward_start[owner + 1]; ++k) {
            const Neighbor& nb = forward[k];
            reverse[cursor[nb.index]++] = {static_cast<std::int32_t>(owner), nb.distance, nb.scaled};
        }

    s.forward_start_ = std::move(forward_start);
    s.forward_ = std::move(forward);
    s.reverse_start_ = std::move(reverse_start);
    s.reverse_ = std::move(reverse);
    return s;
}

namespace {

struct Candidate {
    double d2;
    std::int32_t index;
};

constexpr bool worse_first(const Candidate& a, const Candidate& b) noexcept {
    return a.d2 < b.d2 || (a.d2 == b.d2 && a.index < b.index);
}

// Processes pixel rows [y0, y1): fills `slots` (n per pixel) and `filled`.
void rank_band(const Image& guide, const DiscStencil& search, const DiscStencil& sim, int n, int y0, int y1,
               std::vector<Candidate>& slots, std::vector<int>& filled) {
    const int w = guide.width();
    const int h = guide.height();
    const int r = sim.radius();
    std::vector<double> prefix;
    std::vector<int> col_a, col_b;

    for (const Offset& d : search.offsets()) {
        const int xa = std::max(0, -d.dx), xb = std::min(w, w - d.dx);
        const int ya = std::max(y0, -d.dy), yb = std::min(y1, h - d.dy);
        if (xa >= xb || ya >= yb) continue;

        const int cols = (xb - xa) + 2 * r;
        const int rows = (yb - ya) + 2 * r;
        const int stride = cols + 1;
        col_a.resize(cols);
        col_b.resize(cols);
        for (int c = 0; c < cols; ++c) {
            const int qx = xa - r + c;
            col_a[c] = mirror_index(qx, w);
            col_b[c] = mirror_index(qx + d.dx, w);
        }

        // Row prefix sums of the squared difference between the guide and
        // its displaced copy.
        prefix.resize(static_cast<std::size_t>(rows) * stride);
        for (int row = 0; row < rows; ++row) {
            const int qy = ya - r + row;
            const double* line_a = guide.pixels().data() + guide.index(0, mirror_index(qy, h));
            const double* line_b = guide.pixels().data() + guide.index(0, mirror_index(qy + d.dy, h));
            double* p = &prefix[static_cast<std::size_t>(row) * stride];
            p[0] = 0.0;
            for (int c = 0; c < cols; ++c) {
                const double diff = line_a[col_a[c]] - line_b[col_b[c]];
                p[c + 1] = p[c] + diff * diff;
            }
        }

        for (int y = ya; y < yb; ++y) {
            for (int x = xa; x < xb; ++x) {
                const int cx = x - xa + r;
                double d2 = 0.0;
                for (int t = -r; t <= r; ++t) {
                    const int hw = sim.half_width(t);
                    const double* p = &prefix[static_cast<std::size_t>(y - ya + r + t) * stride];
                    d2 += p[cx + hw + 1] - p[cx - hw];
                }
                if (d2 < 0.0) d2 = 0.0;

                const std::size_t local = static_cast<std::size_t>(y - y0) * w + x;
                const Candidate cand{d2, static_cast<std::int32_t>(guide.index(x + d.dx, y + d.dy))};
                Candidate* heap = &slots[local * n];
                int& count = filled[local];
                if (count < n) {
                    heap[count++] = cand;
                    std::push_heap(heap, heap + count, worse_first);
                } else if (worse_first(cand, heap[0])) {
                    std::pop_heap(heap, heap + n, worse_first);
                    heap[n - 1] = cand;
                    std::push_heap(heap, heap + n, worse_first);
                }
            }
        }
    }
}

}  // namespace

ReorderedSets build_sets(const Image& guide, const DiscStencil& search, const DiscStencil& sim, int n,
                         unsigned threads) {
    if (guide.empty()) throw ShapeError("build_sets: empty guide image");
    if (n < 1) throw std::invalid_argument("build_sets: set size must be >= 1");
    const int w = guide.width();
    const int h = guide.height();
    const std::size_t count = guide.size();

    std::vector<Neighbor> staged(count * n);
    std::vector<int> sizes(count, 0);

    parallel_for(0, h, threads, [&](int y0, int y1) {
        const std::size_t band = static_cast<std::size_t>(y1 - y0) * w;
        std::vector<Candidate> slots(band * n);
        std::vector<int> filled(band, 0);
        rank_band(guide, search, sim, n, y0, y1, slots, filled);

        std::vector<double> raw;
        for (std::size_t local = 0; local < band; ++local) {
            Candidate* heap = &slots[local * n];
            const int k = filled[local];
            std::sort_heap(heap, heap + k, worse_first);
            raw.resize(k);
            for (int m = 0; m < k; ++m) raw[m] = std::sqrt(heap[m].d2);
            const auto scaled = rescale_distances(raw);
            const std::size_t i = static_cast<std::size_t>(y0) * w + local;
            for (int m = 0; m < k; ++m) staged[i * n + m] = {heap[m].index, raw[m], scaled[m]};
            sizes[i] = k;
        }
    });

    std::vector<std::size_t> start(count + 1, 0);
    for (std::size_t i = 0; i < count; ++i) start[i + 1] = start[i] + sizes[i];
    std::vector<Neighbor> forward(start.back());
    for (std::size_t i = 0; i < count; ++i)
        std::copy_n(staged.begin() + static_cast<std::ptrdiff_t>(i * n), sizes[i],
                    forward.begin() + static_cast<std::ptrdiff_t>(start[i]));
    return ReorderedSets::from_forward(w, h, n, std::move(start), std::move(forward));
}

}  // namespace nfpr
