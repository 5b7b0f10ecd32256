#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "nfpr/filter.hpp"
#include "nfpr/io.hpp"
#include "nfpr/metrics.hpp"
#include "nfpr/noise.hpp"
#include "nfpr/reorder.hpp"

namespace py = pybind11;
using namespace nfpr;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Image to_image(const Array& arr) {
    if (arr.ndim() != 2) throw py::value_error("expected a 2D array (height, width)");
    const auto h = static_cast<int>(arr.shape(0));
    const auto w = static_cast<int>(arr.shape(1));
    return Image(w, h, std::vector<double>(arr.data(), arr.data() + arr.size()));
}

Array to_array(const Image& img) {
    Array out({img.height(), img.width()});
    std::copy(img.pixels().begin(), img.pixels().end(), out.mutable_data());
    return out;
}

py::list neighbors(std::span<const Neighbor> span) {
    py::list out;
    for (const Neighbor& nb : span) out.append(py::make_tuple(nb.index, nb.distance, nb.scaled));
    return out;
}

}  // namespace

PYBIND11_MODULE(_nfpr, m) {
    m.doc() = "Patch-reordering non-linear denoiser (C++ core)";

    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<InvalidParams>(m, "InvalidParams", PyExc_ValueError);

    py::enum_<StepScale>(m, "StepScale")
        .value("members", StepScale::members)
        .value("kernel_and_members", StepScale::kernel_and_members);

    py::class_<NfprParams>(m, "NfprParams")
        .def(py::init<>())
        .def_readwrite("sigma", &NfprParams::sigma)
        .def_readwrite("lambda_", &NfprParams::lambda)
        .def_readwrite("k_max", &NfprParams::k_max)
        .def_readwrite("rho_search", &NfprParams::rho_search)
        .def_readwrite("rho_sim", &NfprParams::rho_sim)
        .def_readwrite("sigma_g", &NfprParams::sigma_g)
        .def_readwrite("tau", &NfprParams::tau)
        .def_readwrite("n_set", &NfprParams::n_set)
        .def_readwrite("reorder_iters", &NfprParams::reorder_iters)
        .def_readwrite("step_scale", &NfprParams::step_scale)
        .def_readwrite("threads", &NfprParams::threads)
        .def("validate", &NfprParams::validate)
        .def("__repr__", [](const NfprParams& p) {
            return "NfprParams(sigma=" + std::to_string(p.sigma) + ", lambda_=" + std::to_string(p.lambda) +
                   ", k_max=" + std::to_string(p.k_max) + ", rho_search=" + std::to_string(p.rho_search) +
                   ", rho_sim=" + std::to_string(p.rho_sim) + ", n_set=" + std::to_string(p.n_set) + ")";
        });

    py::class_<ReorderedSets>(m, "ReorderedSets")
        .def_property_readonly("width", &ReorderedSets::width)
        .def_property_readonly("height", &ReorderedSets::height)
        .def_property_readonly("set_size", &ReorderedSets::set_size)
        .def("forward", [](const ReorderedSets& s, std::size_t i) {
            if (i >= s.pixel_count()) throw py::index_error();
            return neighbors(s.forward(i));
        }, "List of (neighbor, raw distance, rescaled distance) for pixel i")
        .def("reverse", [](const ReorderedSets& s, std::size_t i) {
            if (i >= s.pixel_count()) throw py::index_error();
            return neighbors(s.reverse(i));
        }, "List of (owner, raw distance, rescaled distance) for pixel i");

    m.def("load_pgm", [](const std::filesystem::path& p) { return to_array(load_pgm(p)); });
    m.def("save_pgm", [](const Array& a, const std::filesystem::path& p) { save_pgm(to_image(a), p); });
    m.def("load_sidecar", [](const std::filesystem::path& p) { return to_array(load_sidecar(p)); });
    m.def("save_sidecar", [](const Array& a, const std::filesystem::path& p) { save_sidecar(to_image(a), p); });
    m.def("load_image", [](const std::filesystem::path& p) { return to_array(load_image(p)); });

    m.def("add_awgn", [](const Array& a, double sigma_noise, std::uint64_t seed) {
        Rng rng(seed);
        return to_array(add_awgn(to_image(a), sigma_noise, rng));
    }, py::arg("image"), py::arg("sigma_noise"), py::arg("seed"));
    m.def("gaussian_smooth", [](const Array& a, double sigma_g) { return to_array(gaussian_smooth(to_image(a), sigma_g)); },
          py::arg("image"), py::arg("sigma_g"));

    m.def("g_weight", &g_weight, py::arg("s"), py::arg("lambda_"));
    m.def("h_weight", &h_weight, py::arg("s"), py::arg("sigma"));
    m.def("rescale_distances", [](const std::vector<double>& d) { return rescale_distances(d); });

    m.def("build_sets", [](const Array& guide, int rho_search, int rho_sim, int n, unsigned threads) {
        const Image g = to_image(guide);
        py::gil_scoped_release release;
        return build_sets(g, DiscStencil(rho_search), DiscStencil(rho_sim), n, threads);
    }, py::arg("guide"), py::arg("rho_search"), py::arg("rho_sim"), py::arg("n"), py::arg("threads") = 1);
    m.def("presmooth", [](const Array& u, const ReorderedSets& sets, const NfprParams& p) {
        return to_array(presmooth(to_image(u), sets, p));
    });
    m.def("evolve_step", [](const Array& u, const Array& u_sigma, const ReorderedSets& sets, const NfprParams& p) {
        return to_array(evolve_step(to_image(u), to_image(u_sigma), sets, p));
    });
    m.def("denoise", [](const Array& f, const NfprParams& p) {
        const Image img = to_image(f);
        Image out;
        {
            py::gil_scoped_release release;
            out = denoise(img, p);
        }
        return to_array(out);
    }, py::arg("image"), py::arg("params"));

    m.def("mse", [](const Array& a, const Array& b) { return mse(to_image(a), to_image(b)); });
    m.def("dft2", [](const Array& a) {
        const Spectrum s = dft2(to_image(a));
        py::array_t<std::complex<double>> out({s.height, s.width});
        std::copy(s.bins.begin(), s.bins.end(), out.mutable_data());
        return out;
    });
    m.def("frc", [](const Array& a, const Array& b, int levels) {
        const FrcCurve c = frc(to_image(a), to_image(b), levels);
        std::vector<double> freq, corr;
        std::vector<std::size_t> bins;
        std::vector<bool> degenerate;
        for (const FrcRing& r : c.rings) {
            freq.push_back(r.freq_center);
            corr.push_back(r.correlation);
            bins.push_back(r.n_bins);
            degenerate.push_back(r.degenerate);
        }
        py::dict out;
        out["freq_center"] = py::array(py::cast(freq));
        out["correlation"] = py::array(py::cast(corr));
        out["n_bins"] = py::array(py::cast(bins));
        out["degenerate"] = py::array(py::cast(degenerate));
        return out;
    }, py::arg("a"), py::arg("b"), py::arg("levels") = 64);
}
