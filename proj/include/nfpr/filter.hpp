#pragma once

#include <functional>
#include <stdexcept>

#include "nfpr/image.hpp"
#include "nfpr/reorder.hpp"

namespace nfpr {

/// Normalisation a_i of the explicit step.
enum class StepScale {
    /// a_i = 1 / M_i, M_i = |P_i| + |P_i^add|. Total step weight is at most tau.
    members,
    /// a_i = b_i / M_i with b_i the presmoothing normaliser 1 / sum(h).
    /// Much slower diffusion: the total step weight is at most tau / M_i.
    kernel_and_members,
};

/// Knobs of the denoiser. `sigma`, `lambda` and `k_max` are tuned per image
/// and noise level; the remaining defaults are the fixed experimental setup.
struct NfprParams {
    double sigma = 175.0;     // scale of h, in rescaled-distance units [0,255]
    double lambda = 20.0;     // tonal contrast of g, intensity units
    int k_max = 16;           // smoothing iterations
    int rho_search = 10;      // search disc radius
    int rho_sim = 10;         // patch disc radius
    double sigma_g = 2.5;     // Gaussian pre-blur of the first reordering guide
    double tau = 0.95;        // time step, 0 < tau <= 1
    int n_set = 35;           // reordered set size N
    int reorder_iters = 2;    // iterations that (re)build the reordering
    StepScale step_scale = StepScale::members;
    unsigned threads = 1;     // worker cap, 0 = all cores; never changes results

    /// Throws InvalidParams on the first violated constraint.
    void validate() const;
};

class InvalidParams : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Tonal diffusivity g(s) = 1 - exp(-3.31488 / (s/lambda)^8), with g(0) = 1.
[[nodiscard]] double g_weight(double s, double lambda) noexcept;

/// Patch kernel h(s) = exp(-s^2 / (2 sigma^2)).
[[nodiscard]] double h_weight(double s, double sigma) noexcept;

/// Collaborative non-local means over P_i and P_i^add, weights h of the
/// rescaled distances.
[[nodiscard]] Image presmooth(const Image& u, const ReorderedSets& sets, const NfprParams& params);

/// One explicit step of the non-linear smoothing. `u_sigma` must be
/// presmooth(u, sets, params).
[[nodiscard]] Image evolve_step(const Image& u, const Image& u_sigma, const ReorderedSets& sets,
                                const NfprParams& params);

/// Largest per-pixel total coefficient tau * a_i * sum(g*h) of one step.
/// The step is a convex combination (and cannot leave the value range of
/// `u`) as long as this stays <= 1.
[[nodiscard]] double max_step_coefficient(const Image& u_sigma, const ReorderedSets& sets, const NfprParams& params);

/// Called after every iteration with (k, u^k, u^{k+1}).
using IterationObserver = std::function<void(int, const Image&, const Image&)>;

/// Full pipeline: reorder on the Gaussian-blurred input, then k_max
/// smoothing iterations, rebuilding the reordering on the evolving image
/// while k < reorder_iters. The result is not clamped.
[[nodiscard]] Image denoise(const Image& f, const NfprParams& params, const IterationObserver& observer = {});

}  // namespace nfpr
