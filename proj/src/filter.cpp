#include "nfpr/filter.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "nfpr/noise.hpp"
#include "nfpr/parallel.hpp"

namespace nfpr {

void NfprParams::validate() const {
    auto fail = [](const std::string& msg) { throw InvalidParams(msg); };
    if (!(std::isfinite(sigma) && sigma > 0.0)) fail("sigma must be > 0");
    if (!(std::isfinite(lambda) && lambda > 0.0)) fail("lambda must be > 0");
    if (k_max < 1) fail("k_max must be >= 1");
    if (rho_search < 0) fail("rho_search must be >= 0");
    if (rho_sim < 0) fail("rho_sim must be >= 0");
    if (!(std::isfinite(sigma_g) && sigma_g >= 0.0)) fail("sigma_g must be >= 0");
    if (!(std::isfinite(tau) && tau > 0.0 && tau <= 1.0)) fail("tau must lie in (0, 1]");
    if (n_set < 1) fail("n_set must be >= 1");
    if (reorder_iters < 1) fail("reorder_iters must be >= 1");
}

double g_weight(double s, double lambda) noexcept {
    if (std::abs(s) < 1e-12 * lambda) return 1.0;
    const double t = s / lambda;
    const double t2 = t * t;
    const double t4 = t2 * t2;
    return 1.0 - std::exp(-3.31488 / (t4 * t4));
}

double h_weight(double s, double sigma) noexcept { return std::exp(-(s * s) / (2.0 * sigma * sigma)); }

namespace {

// P_i followed by P_i^add for every pixel, flattened, with h precomputed.
struct Neighborhood {
    std::vector<std::size_t> start;
    std::vector<std::int32_t> index;
    std::vector<double> h;

    Neighborhood(const ReorderedSets& sets, double sigma) {
        const std::size_t count = sets.pixel_count();
        start.resize(count + 1, 0);
        for (std::size_t i = 0; i < count; ++i)
            start[i + 1] = start[i] + sets.forward(i).size() + sets.reverse(i).size();
        index.resize(start.back());
        h.resize(start.back());
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t k = start[i];
            for (const Neighbor& nb : sets.forward(i)) {
                index[k] = nb.index;
                h[k++] = h_weight(nb.scaled, sigma);
            }
            for (const Neighbor& nb : sets.reverse(i)) {
                index[k] = nb.index;
                h[k++] = h_weight(nb.scaled, sigma);
            }
        }
    }
};

double step_factor(StepScale scale, double h_sum, double members) {
    return scale == StepScale::members ? 1.0 / members : 1.0 / (h_sum * members);
}

void check_geometry(const Image& u, const ReorderedSets& sets) {
    if (u.width() != sets.width() || u.height() != sets.height())
        throw ShapeError("reordered sets were built for a different image size");
}

Image presmooth_impl(const Image& u, const Neighborhood& nb, unsigned threads) {
    Image out(u.width(), u.height());
    parallel_for(0, static_cast<int>(u.size()), threads, [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            double num = 0.0, den = 0.0;
            for (std::size_t k = nb.start[i]; k < nb.start[i + 1]; ++k) {
                num += nb.h[k] * u[nb.index[k]];
                den += nb.h[k];
            }
            out[i] = num / den;
        }
    });
    return out;
}

Image evolve_impl(const Image& u, const Image& u_sigma, const Neighborhood& nb, const NfprParams& p) {
    Image out(u.width(), u.height());
    parallel_for(0, static_cast<int>(u.size()), p.threads, [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            const double ui = u[i];
            const double si = u_sigma[i];
            double flux = 0.0, h_sum = 0.0, gh_sum = 0.0;
            for (std::size_t k = nb.start[i]; k < nb.start[i + 1]; ++k) {
                const auto j = nb.index[k];
                const double gh = g_weight(u_sigma[j] - si, p.lambda) * nb.h[k];
                flux += gh * (u[j] - ui);
                gh_sum += gh;
                h_sum += nb.h[k];
            }
            const double members = static_cast<double>(nb.start[i + 1] - nb.start[i]);
            const double a = step_factor(p.step_scale, h_sum, members);
            // Convex-combination bound behind the max-min principle.
            assert(p.tau * a * gh_sum <= 1.0 + 1e-12);
            (void)gh_sum;
            out[i] = ui + p.tau * a * flux;
        }
    });
    return out;
}

}  // namespace

Image presmooth(const Image& u, const ReorderedSets& sets, const NfprParams& params) {
    check_geometry(u, sets);
    return presmooth_impl(u, Neighborhood(sets, params.sigma), params.threads);
}

Image evolve_step(const Image& u, const Image& u_sigma, const ReorderedSets& sets, const NfprParams& params) {
    check_geometry(u, sets);
    if (!u.same_shape(u_sigma)) throw ShapeError("evolve_step: u and u_sigma differ in size");
    return evolve_impl(u, u_sigma, Neighborhood(sets, params.sigma), params);
}

double max_step_coefficient(const Image& u_sigma, const ReorderedSets& sets, const NfprParams& params) {
    check_geometry(u_sigma, sets);
    const Neighborhood nb(sets, params.sigma);
    double worst = 0.0;
    for (std::size_t i = 0; i < u_sigma.size(); ++i) {
        double gh = 0.0, h_sum = 0.0;
        for (std::size_t k = nb.start[i]; k < nb.start[i + 1]; ++k) {
            gh += g_weight(u_sigma[nb.index[k]] - u_sigma[i], params.lambda) * nb.h[k];
            h_sum += nb.h[k];
        }
        const double members = static_cast<double>(nb.start[i + 1] - nb.start[i]);
        worst = std::max(worst, params.tau * step_factor(params.step_scale, h_sum, members) * gh);
    }
    return worst;
}

Image denoise(const Image& f, const NfprParams& params, const IterationObserver& observer) {
    params.validate();
    if (f.empty()) throw ShapeError("denoise: empty image");
    const DiscStencil search(params.rho_search);
    const DiscStencil sim(params.rho_sim);

    auto sets = build_sets(gaussian_smooth(f, params.sigma_g), search, sim, params.n_set, params.threads);
    auto nb = std::make_unique<Neighborhood>(sets, params.sigma);

    Image u = f;
    for (int k = 0; k < params.k_max; ++k) {
        if (k >= 1 && k < params.reorder_iters) {
            sets = build_sets(u, search, sim, params.n_set, params.threads);
            nb = std::make_unique<Neighborhood>(sets, params.sigma);
        }
        const Image u_sigma = presmooth_impl(u, *nb, params.threads);
        Image next = evolve_impl(u, u_sigma, *nb, params);
        if (observer) observer(k, u, next);
        u = std::move(next);
    }
    return u;
}

}  // namespace nfpr
