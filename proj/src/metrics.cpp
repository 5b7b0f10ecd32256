#include "nfpr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "nfpr/io.hpp"

namespace nfpr {

double mse(const Image& a, const Image& b) {
    if (!a.same_shape(b))
        throw ShapeError("mse: size mismatch " + std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                         " vs " + std::to_string(b.width()) + "x" + std::to_string(b.height()));
    if (a.empty()) throw ShapeError("mse: empty images");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
    return sum / static_cast<double>(a.size());
}

namespace {

using cplx = std::complex<double>;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place 1D transform of `n` values spaced `stride` apart.
class Transform1d {
public:
    explicit Transform1d(int n) : n_(n), twiddle_(n), buf_(n) {
        for (int k = 0; k < n; ++k) twiddle_[k] = std::polar(1.0, -2.0 * std::numbers::pi * k / n);
    }

    void operator()(cplx* data, std::size_t stride) {
        for (int k = 0; k < n_; ++k) buf_[k] = data[k * stride];
        if (is_pow2(n_)) {
            fft(buf_);
        } else {
            direct(buf_);
        }
        for (int k = 0; k < n_; ++k) data[k * stride] = buf_[k];
    }

private:
    void fft(std::vector<cplx>& a) const {
        for (int i = 1, j = 0; i < n_; ++i) {
            int bit = n_ >> 1;
            for (; j & bit; bit >>= 1) j ^= bit;
            j ^= bit;
            if (i < j) std::swap(a[i], a[j]);
        }
        for (int len = 2; len <= n_; len <<= 1) {
            const int step = n_ / len;
            for (int i = 0; i < n_; i += len)
                for (int k = 0; k < len / 2; ++k) {
                    const cplx t = twiddle_[k * step] * a[i + k + len / 2];
                    a[i + k + len / 2] = a[i + k] - t;
                    a[i + k] += t;
                }
        }
    }

    void direct(std::vector<cplx>& a) const {
        std::vector<cplx> out(n_);
        for (int k = 0; k < n_; ++k) {
            cplx acc = 0.0;
            for (int m = 0; m < n_; ++m) acc += a[m] * twiddle_[(static_cast<long long>(k) * m) % n_];
            out[k] = acc;
        }
        a = std::move(out);
    }

    int n_;
    std::vector<cplx> twiddle_;
    std::vector<cplx> buf_;
};

int signed_frequency(int k, int n) { return k <= n / 2 ? k : k - n; }

}  // namespace

Spectrum dft2(const Image& img) {
    if (img.empty()) throw ShapeError("dft2: empty image");
    Spectrum s{img.width(), img.height(), std::vector<cplx>(img.size())};
    for (std::size_t i = 0; i < img.size(); ++i) s.bins[i] = img[i];
    Transform1d rows(s.width);
    for (int y = 0; y < s.height; ++y) rows(&s.bins[static_cast<std::size_t>(y) * s.width], 1);
    Transform1d cols(s.height);
    for (int x = 0; x < s.width; ++x) cols(&s.bins[x], static_cast<std::size_t>(s.width));
    return s;
}

FrcCurve frc(const Image& a, const Image& b, int levels) {
    if (!a.same_shape(b)) throw ShapeError("frc: size mismatch");
    if (a.width() != a.height()) throw ShapeError("frc: images must be square");
    if (levels < 1) throw std::invalid_argument("frc: levels must be >= 1");

    const int n = a.width();
    const Spectrum fa = dft2(a);
    const Spectrum fb = dft2(b);
    const double step = 0.5 / levels;

    std::vector<double> cross(levels, 0.0), energy_a(levels, 0.0), energy_b(levels, 0.0);
    std::vector<std::size_t> bins(levels, 0);
    // Ring membership in exact integer arithmetic: bin k with |k|^2 = k2
    // falls in ring l iff (l*n)^2 < k2*(2*levels)^2 <= ((l+1)*n)^2.
    const std::int64_t scale = 4LL * levels * levels;
    const std::int64_t nn = n;
    for (int ky = 0; ky < n; ++ky)
        for (int kx = 0; kx < n; ++kx) {
            const std::int64_t fx = signed_frequency(kx, n), fy = signed_frequency(ky, n);
            const std::int64_t k2 = fx * fx + fy * fy;
            if (k2 == 0 || 4 * k2 > nn * nn) continue;
            const std::int64_t target = k2 * scale;
            auto ring = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(target)) / n)) - 1;
            while (ring > 0 && (ring * nn) * (ring * nn) >= target) --ring;
            while (((ring + 1) * nn) * ((ring + 1) * nn) < target) ++ring;
            const cplx va = fa.at(kx, ky), vb = fb.at(kx, ky);
            cross[ring] += (va * std::conj(vb)).real();
            energy_a[ring] += std::norm(va);
            energy_b[ring] += std::norm(vb);
            ++bins[ring];
        }

    FrcCurve curve{levels, {}};
    curve.rings.reserve(levels);
    for (int l = 0; l < levels; ++l) {
        FrcRing r;
        r.ring = l;
        r.freq_lo = l * step;
        r.freq_hi = (l + 1) * step;
        r.freq_center = (l + 0.5) * step;
        r.n_bins = bins[l];
        const double denom = std::sqrt(energy_a[l] * energy_b[l]);
        if (bins[l] == 0 || !(denom > 0.0)) {
            r.degenerate = true;
        } else {
            r.correlation = cross[l] / denom;
        }
        curve.rings.push_back(r);
    }
    return curve;
}

void write_frc_csv(const FrcCurve& curve, std::ostream& out) {
    out << "# nfpr-frc levels=" << curve.levels << " ring l collects bins with l*" << 0.5 / curve.levels
        << " < |k|/size <= (l+1)*" << 0.5 / curve.levels
        << " cycles/pixel; DC excluded; degenerate rings report correlation 0 and n_bins as counted\n";
    out << "ring_index,freq_center,correlation,n_bins\n";
    out << std::setprecision(17);
    for (const FrcRing& r : curve.rings)
        out << r.ring << ',' << r.freq_center << ',' << r.correlation << ',' << r.n_bins << '\n';
}

void write_frc_csv(const FrcCurve& curve, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError(IoError::Kind::WriteFailed, "cannot open " + path.string() + " for writing");
    write_frc_csv(curve, out);
    if (!out) throw IoError(IoError::Kind::WriteFailed, "write failed: " + path.string());
}

double mean_correlation(const FrcCurve& curve, int first, int last) {
    double sum = 0.0;
    int used = 0;
    for (int l = std::max(first, 0); l < std::min(last, curve.levels); ++l) {
        if (curve.rings[l].degenerate) continue;
        sum += curve.rings[l].correlation;
        ++used;
    }
    if (used == 0) throw std::invalid_argument("mean_correlation: no usable rings in range");
    return sum / used;
}

}  // namespace nfpr
