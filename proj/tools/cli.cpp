#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>

#include "nfpr/filter.hpp"
#include "nfpr/io.hpp"
#include "nfpr/metrics.hpp"
#include "nfpr/noise.hpp"
#include "nfpr/reorder.hpp"

namespace nfpr::cli {
namespace {

struct CorruptArgs {
    std::string in, out, sidecar;
    double sigma_noise = 0.0;
    std::uint64_t seed = 0;
};

struct DenoiseArgs {
    std::string in, out, sidecar, clean, dump_sets;
    NfprParams params;
};

struct PairArgs {
    std::string a, b, out;
    int levels = 64;
};

void dump_sets_csv(const ReorderedSets& sets, const std::string& path) {
    std::ofstream csv(path);
    if (!csv) throw IoError(IoError::Kind::WriteFailed, "cannot open " + path + " for writing");
    csv << "pixel,rank,neighbor,raw_distance,rescaled_distance\n" << std::setprecision(17);
    for (std::size_t i = 0; i < sets.pixel_count(); ++i) {
        int rank = 0;
        for (const Neighbor& nb : sets.forward(i))
            csv << i << ',' << rank++ << ',' << nb.index << ',' << nb.distance << ',' << nb.scaled << '\n';
    }
}

int cmd_corrupt(const CorruptArgs& a, std::ostream& out) {
    const Image clean = load_image(a.in);
    Rng rng(a.seed);
    const Image noisy = add_awgn(clean, a.sigma_noise, rng);
    const std::string sidecar = a.sidecar.empty() ? default_sidecar_path(a.out) : a.sidecar;
    save_pgm(noisy, a.out);
    save_sidecar(noisy, sidecar);
    out << "wrote " << a.out << " and " << sidecar << '\n';
    out << "mse_vs_input: " << std::setprecision(10) << mse(noisy, clean) << '\n';
    return kExitOk;
}

int cmd_denoise(const DenoiseArgs& a, std::ostream& out) {
    a.params.validate();
    const Image f = load_image(a.in);
    if (!a.dump_sets.empty()) {
        const auto sets = build_sets(gaussian_smooth(f, a.params.sigma_g), DiscStencil(a.params.rho_search),
                                     DiscStencil(a.params.rho_sim), a.params.n_set, a.params.threads);
        dump_sets_csv(sets, a.dump_sets);
    }
    const auto t0 = std::chrono::steady_clock::now();
    const Image u = denoise(f, a.params);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string sidecar = a.sidecar.empty() ? default_sidecar_path(a.out) : a.sidecar;
    save_pgm(u, a.out);
    save_sidecar(u, sidecar);
    out << "wrote " << a.out << " and " << sidecar << '\n';
    out << "time_s: " << std::fixed << std::setprecision(3) << seconds << '\n' << std::defaultfloat;
    if (!a.clean.empty()) {
        const Image ref = load_image(a.clean);
        out << "mse (unclamped): " << std::setprecision(10) << mse(u, ref) << '\n';
    }
    return kExitOk;
}

int cmd_mse(const PairArgs& a, std::ostream& out) {
    const bool unclamped = is_sidecar(a.a) && is_sidecar(a.b);
    const double value = mse(load_image(a.a), load_image(a.b));
    out << "mse (" << (unclamped ? "unclamped" : "pgm") << "): " << std::setprecision(10) << value << '\n';
    return kExitOk;
}

int cmd_frc(const PairArgs& a, std::ostream& out) {
    const FrcCurve curve = frc(load_image(a.a), load_image(a.b), a.levels);
    if (a.out.empty()) {
        write_frc_csv(curve, out);
    } else {
        write_frc_csv(curve, std::filesystem::path(a.out));
        out << "wrote " << a.out << '\n';
    }
    return kExitOk;
}

void add_param_flags(CLI::App* cmd, NfprParams& p) {
    cmd->add_option("--sigma", p.sigma, "Scale of the patch kernel h, in rescaled-distance units")->required();
    cmd->add_option("--lambda", p.lambda, "Tonal contrast parameter of g")->required();
    cmd->add_option("--kmax", p.k_max, "Number of smoothing iterations")->required();
    cmd->add_option("--rho-search", p.rho_search, "Search disc radius")->capture_default_str();
    cmd->add_option("--rho-sim", p.rho_sim, "Patch disc radius")->capture_default_str();
    cmd->add_option("--sigma-g", p.sigma_g, "Gaussian pre-blur of the first reordering guide")->capture_default_str();
    cmd->add_option("--tau", p.tau, "Time step, in (0, 1]")->capture_default_str();
    cmd->add_option("--nset", p.n_set, "Size of each reordered set")->capture_default_str();
    cmd->add_option("--reorder-iters", p.reorder_iters, "Iterations that rebuild the reordering")
        ->capture_default_str();
    const std::map<std::string, StepScale> scales{{"members", StepScale::members},
                                                  {"literal", StepScale::kernel_and_members}};
    cmd->add_option("--step-scale", p.step_scale,
                    "Step normaliser: 'members' (a_i = 1/M_i) or 'literal' (a_i = b_i/M_i)")
        ->transform(CLI::CheckedTransformer(scales, CLI::ignore_case))
        ->default_str("members");
    cmd->add_option("--threads", p.threads, "Worker threads, 0 = all cores")->capture_default_str();
}

}  // namespace

std::string default_sidecar_path(const std::string& out_path) {
    return std::filesystem::path(out_path).replace_extension(".nfprf").string();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Non-linear filtering on fast patch reorderings: corrupt, denoise and score grayscale images"};
    app.name(args.empty() ? "nfpr" : args[0]);
    app.require_subcommand(1);

    CorruptArgs corrupt;
    auto* c = app.add_subcommand("corrupt", "Add white Gaussian noise to an image");
    c->add_option("input", corrupt.in, "Clean image (PGM or .nfprf sidecar)")->required();
    c->add_option("output", corrupt.out, "Noisy PGM preview (clamped)")->required();
    c->add_option("--sidecar", corrupt.sidecar, "Unclamped float output (default: OUTPUT with .nfprf)");
    c->add_option("--sigma-noise", corrupt.sigma_noise, "Noise standard deviation")->required();
    c->add_option("--seed", corrupt.seed, "RNG seed")->capture_default_str();

    DenoiseArgs den;
    auto* d = app.add_subcommand("denoise", "Denoise an image");
    d->add_option("input", den.in, "Noisy image (PGM or .nfprf sidecar)")->required();
    d->add_option("output", den.out, "Denoised PGM (clamped)")->required();
    d->add_option("--sidecar", den.sidecar, "Unclamped float output (default: OUTPUT with .nfprf)");
    d->add_option("--clean", den.clean, "Clean reference; prints the MSE of the result");
    d->add_option("--dump-sets", den.dump_sets, "Write the initial reordered sets as CSV");
    add_param_flags(d, den.params);

    PairArgs mse_args;
    auto* m = app.add_subcommand("mse", "Mean squared error between two images");
    m->add_option("a", mse_args.a)->required();
    m->add_option("b", mse_args.b)->required();

    PairArgs frc_args;
    auto* fr = app.add_subcommand("frc", "Fourier ring correlation between two images");
    fr->add_option("a", frc_args.a)->required();
    fr->add_option("b", frc_args.b)->required();
    fr->add_option("output", frc_args.out, "CSV path (default: stdout)");
    fr->add_option("--levels", frc_args.levels, "Number of frequency rings")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << app.get_name() << ": " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (c->parsed()) return cmd_corrupt(corrupt, out);
        if (d->parsed()) return cmd_denoise(den, out);
        if (m->parsed()) return cmd_mse(mse_args, out);
        if (fr->parsed()) {
            if (frc_args.levels < 1) throw std::invalid_argument("--levels must be >= 1");
            return cmd_frc(frc_args, out);
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::invalid_argument& e) {
        // InvalidParams, ShapeError and flag range errors.
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace nfpr::cli
