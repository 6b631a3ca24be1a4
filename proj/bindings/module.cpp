#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pbridge/circle.hpp"
#include "pbridge/equilibrium.hpp"
#include "pbridge/model_line.hpp"
#include "pbridge/multitime.hpp"
#include "pbridge/orthopoly.hpp"
#include "pbridge/rmt_reference.hpp"
#include "pbridge/sampler.hpp"
#include "pbridge/stats.hpp"

namespace py = pybind11;
using namespace pbridge;

PYBIND11_MODULE(_pbridge, m) {
    m.doc() = "non-intersecting Poisson bridge ensembles: determinants, samplers, RMT statistics";

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](int N, int n, int x, double T) {
                 ModelParams p{N, n, x, T};
                 p.validate();
                 return p;
             }),
             py::arg("N"), py::arg("n"), py::arg("x"), py::arg("T") = 1.0)
        .def_readonly("N", &ModelParams::N)
        .def_readonly("n", &ModelParams::n)
        .def_readonly("x", &ModelParams::x)
        .def_readonly("T", &ModelParams::T);

    m.def(
        "km_full_bridge",
        [](const ModelParams& p) { return log_km_full_bridge(p).to_double(); },
        py::arg("params"), "Probability that the conditioned bridge configuration occurs.");
    m.def(
        "arrival_density",
        [](const ModelParams& p, const std::vector<double>& t) {
            return arrival_density(p, ArrivalTimes{t});
        },
        py::arg("params"), py::arg("times"));
    m.def(
        "position_pmf",
        [](const ModelParams& p, double t, const std::vector<int>& positions) {
            return position_pmf(p, t, PositionConfig{positions});
        },
        py::arg("params"), py::arg("t"), py::arg("positions"));

    py::class_<JacobiBasis>(m, "JacobiBasis")
        .def_static("from_params", &JacobiBasis::from_params)
        .def("phi", &JacobiBasis::phi)
        .def("cd_kernel", &JacobiBasis::cd_kernel)
        .def("gap_probability", &JacobiBasis::gap_probability);

    py::class_<EquilibriumData>(m, "EquilibriumData")
        .def_readonly("nu", &EquilibriumData::nu)
        .def_readonly("eta", &EquilibriumData::eta)
        .def_readonly("a", &EquilibriumData::a)
        .def_readonly("b", &EquilibriumData::b);
    m.def("solve_endpoints", &solve_endpoints, py::arg("nu"), py::arg("eta"));
    m.def("density_psi", &density_psi);
    m.def("psi_cdf", &psi_cdf);

    m.def(
        "sample_arrivals",
        [](const ModelParams& p, std::uint64_t seed, std::uint64_t replicate,
           std::size_t grid_size) {
            auto rng = make_rng({seed, replicate});
            return sample_jacobi_arrivals(p, rng, grid_size).times;
        },
        py::arg("params"), py::arg("seed"), py::arg("replicate") = 0, py::arg("grid_size") = 4096,
        "Exact seeded draw of the n arrival times at site x.");
    m.def(
        "sample_positions",
        [](const ModelParams& p, double t, std::uint64_t seed, std::uint64_t replicate) {
            auto rng = make_rng({seed, replicate});
            return sample_krawtchouk_dpp(p, t, rng).positions;
        },
        py::arg("params"), py::arg("t"), py::arg("seed"), py::arg("replicate") = 0);
    m.def(
        "sample_bridge",
        [](const ModelParams& p, std::uint64_t seed, std::uint64_t replicate,
           std::uint64_t max_attempts) {
            auto rng = make_rng({seed, replicate});
            return sample_bridge_rejection(p, rng, max_attempts).trajectories.jumps;
        },
        py::arg("params"), py::arg("seed"), py::arg("replicate") = 0,
        py::arg("max_attempts") = 1000000,
        "Rejection draw of the full trajectory set (per-bus jump times).");

    m.def("fredholm_det_sine", &fredholm_det_sine, py::arg("s"), py::arg("m") = 60);
    m.def("gaudin_density", &gaudin_density, py::arg("s"), py::arg("m") = 60);
    m.def("gaudin_cdf", &gaudin_cdf, py::arg("s"), py::arg("m") = 60);
    m.def("wigner_surmise", &wigner_surmise);
    m.def("wigner_surmise_cdf", &wigner_surmise_cdf);
    m.def("gue_number_variance", &gue_number_variance, py::arg("s"), py::arg("m") = 120);
    m.def("gue_number_variance_asymptote", &gue_number_variance_asymptote);

    m.def(
        "unfold",
        [](const std::vector<double>& pts, const std::string& mode, const ModelParams& p) {
            const JacobiBasis basis = JacobiBasis::from_params(p);
            const EquilibriumData eq =
                solve_endpoints(double(p.n) / p.N, double(p.x - 1) / p.N);
            if (mode == "exact") return unfold(pts, UnfoldMode::ExactFiniteN, basis, eq);
            if (mode == "equilibrium") return unfold(pts, UnfoldMode::Equilibrium, basis, eq);
            throw std::invalid_argument("unfold: mode must be 'exact' or 'equilibrium'");
        },
        py::arg("points"), py::arg("mode"), py::arg("params"));

    m.def(
        "ks_distance",
        [](std::vector<double> samples, const std::vector<double>& x,
           const std::vector<double>& cdf) { return ks_distance(std::move(samples), x, cdf); },
        py::arg("samples"), py::arg("ref_x"), py::arg("ref_cdf"));

    py::class_<CircleParams>(m, "CircleParams")
        .def_static("consecutive", &CircleParams::consecutive, py::arg("M"), py::arg("k"),
                    py::arg("T"))
        .def_readonly("M", &CircleParams::M)
        .def_readonly("k", &CircleParams::k)
        .def_readonly("T", &CircleParams::T);
    m.def("wrapped_poisson", &wrapped_poisson);
    m.def(
        "circle_km",
        [](const CircleParams& p, const std::vector<int>& target, double t) {
            return circle_km(p, CyclicConfig{target}, t);
        },
        py::arg("params"), py::arg("target"), py::arg("t"));
    m.def(
        "circle_qt",
        [](const CircleParams& p, const std::vector<int>& mid, double t) {
            return circle_conditioned_qt(p, CyclicConfig{mid}, t, p.T);
        },
        py::arg("params"), py::arg("intermediate"), py::arg("t"));

    m.def(
        "extended_kernel",
        [](const ModelParams& p, double p_i, double p_j, int x, int y) {
            return extended_kernel(p, p_i, p_j, x, y).value;
        },
        py::arg("params"), py::arg("p_i"), py::arg("p_j"), py::arg("x"), py::arg("y"),
        "Two-time correlation kernel in the shifted coordinates 0..N+n-1.");
}
