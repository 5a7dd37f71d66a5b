#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fsosec/atmosphere.hpp"
#include "fsosec/error.hpp"
#include "fsosec/fading.hpp"
#include "fsosec/mc_oracle.hpp"
#include "fsosec/secrecy.hpp"
#include "fsosec/specfun.hpp"
#include "fsosec/turbulence.hpp"
#include "fsosec/version.hpp"

namespace py = pybind11;
using namespace fsosec;

namespace {

// Applies fn(params, x) element-wise over any array-like x, preserving shape.
template <class P>
auto elementwise(double (*fn)(const P&, double))
{
    return [fn](const P& params, py::array_t<double, py::array::c_style | py::array::forcecast> x) {
        py::array_t<double> out(x.request().shape);
        const double* in = x.data();
        double* dst = out.mutable_data();
        for (py::ssize_t i = 0; i < x.size(); ++i)
            dst[i] = fn(params, in[i]);
        return out;
    };
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Satellite FSO secrecy metrics under Fisher-Snedecor F turbulence";
    m.attr("__version__") = fsosec::version;

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<PoleCollision>(m, "PoleCollision", base.ptr());
    py::register_exception<NonConvergent>(m, "NonConvergent", base.ptr());

    // specfun
    py::class_<specfun::MeijerGResult>(m, "MeijerGResult")
        .def_readonly("value", &specfun::MeijerGResult::value)
        .def_readonly("abs_error", &specfun::MeijerGResult::abs_error)
        .def_readonly("log_abs_value", &specfun::MeijerGResult::log_abs_value);
    m.def(
        "meijer_g",
        [](int mm, int n, std::vector<double> a, std::vector<double> b, double z, double rel_tol) {
            return specfun::meijer_g({mm, n, std::move(a), std::move(b), z}, {rel_tol});
        },
        py::arg("m"), py::arg("n"), py::arg("a"), py::arg("b"), py::arg("z"), py::arg("rel_tol") = 1e-12,
        "Real Meijer G^{m,n}_{p,q}(z) by Mellin-Barnes contour integration.");
    m.def("log_gamma", py::overload_cast<double>(&specfun::log_gamma));
    m.def("regularized_incomplete_beta", &specfun::regularized_incomplete_beta, py::arg("x"), py::arg("a"),
          py::arg("b"));

    // fading
    py::class_<fading::FFadingParams>(m, "FFadingParams")
        .def(py::init<double, double>(), py::arg("a"), py::arg("b"))
        .def_readwrite("a", &fading::FFadingParams::a)
        .def_readwrite("b", &fading::FFadingParams::b)
        .def("__repr__", [](const fading::FFadingParams& p) {
            return "FFadingParams(a=" + py::repr(py::float_(p.a)).cast<std::string>()
                   + ", b=" + py::repr(py::float_(p.b)).cast<std::string>() + ")";
        });
    py::class_<fading::SnrChannel>(m, "SnrChannel")
        .def(py::init<fading::FFadingParams, double>(), py::arg("fading"), py::arg("mean_snr"))
        .def_readwrite("fading", &fading::SnrChannel::fading)
        .def_readwrite("mean_snr", &fading::SnrChannel::mean_snr);
    m.def("pdf_ht", elementwise(&fading::pdf_ht), py::arg("params"), py::arg("h"));
    m.def("cdf_ht", elementwise(&fading::cdf_ht), py::arg("params"), py::arg("h"));
    m.def("ccdf_ht", elementwise(&fading::ccdf_ht), py::arg("params"), py::arg("h"));
    m.def("quantile_ht", &fading::quantile_ht, py::arg("params"), py::arg("p"));
    m.def("snr_pdf", elementwise(&fading::snr_pdf), py::arg("channel"), py::arg("snr"));
    m.def("snr_cdf", elementwise(&fading::snr_cdf), py::arg("channel"), py::arg("snr"));

    // turbulence
    py::class_<turbulence::TurbulenceProfile>(m, "TurbulenceProfile")
        .def(py::init([](double cn2_ground, double wind_speed) {
                 return turbulence::TurbulenceProfile{cn2_ground, wind_speed};
             }),
             py::arg("cn2_ground") = 1.7e-14, py::arg("wind_speed") = 21.0)
        .def_readwrite("cn2_ground", &turbulence::TurbulenceProfile::cn2_ground)
        .def_readwrite("wind_speed", &turbulence::TurbulenceProfile::wind_speed);
    m.def("cn2_profile", &turbulence::cn2_profile, py::arg("profile"), py::arg("altitude_m"));
    m.def(
        "rytov_variance",
        [](const turbulence::TurbulenceProfile& p, const atmosphere::LinkGeometry& g) {
            return turbulence::rytov_variance(p, g).sigma_r2;
        },
        py::arg("profile"), py::arg("geometry"));
    m.def("f_params_from_rytov", &turbulence::f_params_from_rytov, py::arg("sigma_r2"));
    m.def(
        "classify", [](double s) { return std::string(turbulence::to_string(turbulence::classify(s))); },
        py::arg("sigma_r2"));

    // atmosphere
    using atmosphere::LinkGeometry;
    py::class_<LinkGeometry>(m, "LinkGeometry")
        .def(py::init<>())
        .def_readwrite("satellite_altitude_m", &LinkGeometry::satellite_altitude_m)
        .def_readwrite("ground_altitude_m", &LinkGeometry::ground_altitude_m)
        .def_readwrite("zenith_rad", &LinkGeometry::zenith_rad)
        .def_readwrite("wavelength_m", &LinkGeometry::wavelength_m)
        .def_readwrite("divergence_rad", &LinkGeometry::divergence_rad)
        .def_readwrite("aperture_diameter_m", &LinkGeometry::aperture_diameter_m)
        .def_readwrite("bob_offset_m", &LinkGeometry::bob_offset_m)
        .def_readwrite("eve_separation_m", &LinkGeometry::eve_separation_m)
        .def_readwrite("beam_quality", &LinkGeometry::beam_quality);
    using atmosphere::AtmosphereConfig;
    py::class_<AtmosphereConfig>(m, "AtmosphereConfig")
        .def(py::init<>())
        .def_readwrite("troposphere_per_km", &AtmosphereConfig::troposphere_per_km)
        .def_readwrite("stratosphere_per_km", &AtmosphereConfig::stratosphere_per_km)
        .def_readwrite("stratosphere_extent_m", &AtmosphereConfig::stratosphere_extent_m)
        .def_readwrite("cloud_lwc_mg_m3", &AtmosphereConfig::cloud_lwc_mg_m3)
        .def_readwrite("droplet_concentration_cm3", &AtmosphereConfig::droplet_concentration_cm3)
        .def_readwrite("cloud_path_m", &AtmosphereConfig::cloud_path_m);
    using atmosphere::DeterministicGains;
    py::class_<DeterministicGains>(m, "DeterministicGains")
        .def_readonly("path_length_m", &DeterministicGains::path_length_m)
        .def_readonly("h_a", &DeterministicGains::h_a)
        .def_readonly("h_s_bob", &DeterministicGains::h_s_bob)
        .def_readonly("h_s_eve", &DeterministicGains::h_s_eve)
        .def_readonly("h_c", &DeterministicGains::h_c)
        .def_property_readonly("bob", &DeterministicGains::bob)
        .def_property_readonly("eve", &DeterministicGains::eve);
    m.def("path_length", &atmosphere::path_length, py::arg("geometry"));
    m.def("beam_radius", &atmosphere::beam_radius, py::arg("geometry"));
    m.def("composite_deterministic_gain", &atmosphere::composite_deterministic_gain, py::arg("geometry"),
          py::arg("atmosphere"));

    // secrecy
    using secrecy::WiretapScenario;
    py::class_<WiretapScenario>(m, "WiretapScenario")
        .def(py::init<fading::SnrChannel, fading::SnrChannel, double>(), py::arg("bob"), py::arg("eve"),
             py::arg("target_rate") = 0.5)
        .def_readwrite("bob", &WiretapScenario::bob)
        .def_readwrite("eve", &WiretapScenario::eve)
        .def_readwrite("target_rate", &WiretapScenario::target_rate);
    py::class_<secrecy::MetricValue>(m, "MetricValue")
        .def_readonly("value", &secrecy::MetricValue::value)
        .def_readonly("error", &secrecy::MetricValue::error)
        .def_property_readonly("method", [](const secrecy::MetricValue& v) { return std::string(to_string(v.method)); })
        .def("__float__", [](const secrecy::MetricValue& v) { return v.value; });
    m.def("instantaneous_secrecy_capacity", &secrecy::instantaneous_secrecy_capacity, py::arg("snr_bob"),
          py::arg("snr_eve"));
    m.def(
        "asc", [](const WiretapScenario& s) { return secrecy::asc_quadrature(s).asc; }, py::arg("scenario"),
        "Average secrecy capacity in bit/s/Hz.");
    m.def("asc_a3_closed_form", &secrecy::asc_a3_closed_form, py::arg("scenario"));
    m.def("asc_a3_quadrature", &secrecy::asc_a3_quadrature, py::arg("scenario"));
    m.def("sop_exact", &secrecy::sop_exact, py::arg("scenario"));
    m.def("sop_lower_bound", &secrecy::sop_lower_bound, py::arg("scenario"));
    m.def("spsc", &secrecy::spsc, py::arg("scenario"));

    // Monte Carlo
    py::class_<mc::McEstimate>(m, "McEstimate")
        .def_readonly("mean", &mc::McEstimate::mean)
        .def_readonly("std_error", &mc::McEstimate::std_error)
        .def_readonly("n", &mc::McEstimate::n);
    py::class_<mc::McSecrecy>(m, "McSecrecy")
        .def_readonly("asc", &mc::McSecrecy::asc)
        .def_readonly("sop", &mc::McSecrecy::sop)
        .def_readonly("sop0", &mc::McSecrecy::sop0)
        .def_readonly("spsc", &mc::McSecrecy::spsc);
    m.def(
        "mc_secrecy",
        [](const WiretapScenario& s, std::uint64_t n_samples, std::uint64_t seed, unsigned workers) {
            mc::McConfig cfg;
            cfg.n_samples = n_samples;
            cfg.seed = seed;
            cfg.workers = workers;
            py::gil_scoped_release release;
            return mc::mc_secrecy(s, cfg);
        },
        py::arg("scenario"), py::arg("n_samples") = 1'000'000, py::arg("seed") = 1, py::arg("workers") = 1);
}
