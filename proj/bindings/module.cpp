#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "toroton/bpm.hpp"
#include "toroton/experiments.hpp"
#include "toroton/medium.hpp"
#include "toroton/radial.hpp"
#include "toroton/torus.hpp"

namespace py = pybind11;
using namespace toroton;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> a({static_cast<py::ssize_t>(v.size())},
                          {static_cast<py::ssize_t>(sizeof(double))});
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

py::array_t<std::complex<double>> field_array(const ScalarField& f) {
    py::array_t<std::complex<double>> a({static_cast<py::ssize_t>(f.ny),
                                         static_cast<py::ssize_t>(f.nx)});
    std::copy(f.amp.begin(), f.amp.end(), a.mutable_data());
    return a;
}

}  // namespace

PYBIND11_MODULE(_toroton, m) {
    m.doc() = "toroidal electromagnetic soliton workbench";

    py::class_<MediumParams>(m, "MediumParams")
        .def(py::init([](double eps_lin, double d_eps, double i_sat, double mu1,
                         double u_sat) {
                 MediumParams p{eps_lin, d_eps, i_sat, mu1, u_sat};
                 p.validate();
                 return p;
             }),
             py::arg("eps_lin") = 1.0, py::arg("d_eps") = 1.0, py::arg("i_sat") = 1.0,
             py::arg("mu1") = 0.0, py::arg("u_sat") = 1.0)
        .def_readwrite("eps_lin", &MediumParams::eps_lin)
        .def_readwrite("d_eps", &MediumParams::d_eps)
        .def_readwrite("i_sat", &MediumParams::i_sat)
        .def_readwrite("mu1", &MediumParams::mu1)
        .def_readwrite("u_sat", &MediumParams::u_sat);

    py::class_<WaveParams>(m, "WaveParams")
        .def_static("from_k0", &WaveParams::from_k0, py::arg("k0"), py::arg("medium"))
        .def_readonly("k0", &WaveParams::k0)
        .def_readonly("omega", &WaveParams::omega)
        .def_readonly("lambda_med", &WaveParams::lambda_med);

    m.def("epsilon_of_intensity", &epsilon_of_intensity, py::arg("intensity"),
          py::arg("medium"));
    m.def("delta_mu", &delta_mu, py::arg("curl_sq"), py::arg("medium"));
    m.def(
        "index",
        [](double i, double u, const MediumParams& p) { return toroton::index(i, u, p); },
        py::arg("intensity"), py::arg("curl_sq"), py::arg("medium"));

    py::class_<RadialProfile>(m, "RadialProfile")
        .def_property_readonly("r_grid",
                               [](const RadialProfile& p) { return to_array(p.r_grid); })
        .def_property_readonly("e_t", [](const RadialProfile& p) { return to_array(p.e_t); })
        .def_readonly("beta", &RadialProfile::beta)
        .def_readonly("power", &RadialProfile::power)
        .def_readonly("kappa", &RadialProfile::kappa)
        .def("value_at", &RadialProfile::value_at);

    m.def(
        "solve_profile",
        [](double e0, const MediumParams& p, const WaveParams& w) {
            return solve_profile(e0, p, w);
        },
        py::arg("e0"), py::arg("medium"), py::arg("wave"));
    m.def("power_of", &power_of);
    m.def(
        "critical_power",
        [](const MediumParams& p, const WaveParams& w, const std::vector<double>& amps) {
            const PowerCurve c = critical_power(p, w, amps);
            return py::make_tuple(to_array(c.peak_amplitudes), to_array(c.powers),
                                  c.critical_power);
        },
        py::arg("medium"), py::arg("wave"), py::arg("amplitudes"));

    py::class_<ScalarField>(m, "ScalarField")
        .def(py::init<std::size_t, std::size_t, double, double>(), py::arg("nx"),
             py::arg("ny"), py::arg("dx"), py::arg("dy"))
        .def_readonly("nx", &ScalarField::nx)
        .def_readonly("ny", &ScalarField::ny)
        .def_readonly("dx", &ScalarField::dx)
        .def_readonly("dy", &ScalarField::dy)
        .def_readonly("z", &ScalarField::z)
        .def_property(
            "amp", [](const ScalarField& f) { return field_array(f); },
            [](ScalarField& f, py::array_t<std::complex<double>> a) {
                if (static_cast<std::size_t>(a.size()) != f.amp.size())
                    throw std::invalid_argument("amp: size mismatch");
                auto r = a.unchecked<2>();
                for (std::size_t iy = 0; iy < f.ny; ++iy)
                    for (std::size_t ix = 0; ix < f.nx; ++ix)
                        f.at(ix, iy) = r(static_cast<py::ssize_t>(iy),
                                         static_cast<py::ssize_t>(ix));
            });

    m.def("make_gaussian", &make_gaussian, py::arg("nx"), py::arg("ny"), py::arg("dx"),
          py::arg("dy"), py::arg("waist"), py::arg("amplitude"), py::arg("x0") = 0.0,
          py::arg("y0") = 0.0);
    m.def("embed_profile", &embed_profile, py::arg("profile"), py::arg("nx"), py::arg("ny"),
          py::arg("dx"), py::arg("dy"), py::arg("x0") = 0.0, py::arg("y0") = 0.0);
    m.def("step", &step, py::arg("field"), py::arg("dz"), py::arg("medium"), py::arg("wave"));
    m.def(
        "propagate",
        [](ScalarField& f, double z_end, double dz, const MediumParams& p,
           const WaveParams& w, std::size_t trace_every, bool absorber) {
            PropagateOptions opt;
            opt.z_end = z_end;
            opt.dz = dz;
            opt.trace_every = trace_every;
            opt.absorber = absorber;
            const PropagationTrace t = propagate(f, opt, p, w);
            std::vector<double> z, pw, wd;
            for (const auto& r : t.records) {
                z.push_back(r.z);
                pw.push_back(r.power);
                wd.push_back(r.width);
            }
            return py::make_tuple(to_array(z), to_array(pw), to_array(wd));
        },
        py::arg("field"), py::arg("z_end"), py::arg("dz"), py::arg("medium"),
        py::arg("wave"), py::arg("trace_every") = 1, py::arg("absorber") = false);
    m.def("power", &power);
    m.def("centroid", &centroid);
    m.def("width", &width);

    m.def("curl_sq_straight", &curl_sq_straight, py::arg("profile"), py::arg("wave"),
          py::arg("r"), py::arg("theta"));
    m.def(
        "curl_sq_curved",
        [](const RadialProfile& prof, const WaveParams& w, double curvature, double r,
           double theta) {
            return curl_sq_curved(prof, w, TorusGeometry::from_curvature(curvature), r,
                                  theta);
        },
        py::arg("profile"), py::arg("wave"), py::arg("curvature"), py::arg("r"),
        py::arg("theta"));
    m.def(
        "gamma_of_c",
        [](const RadialProfile& prof, const MediumParams& p, const WaveParams& w,
           double c) { return gamma_of_c(prof, p, w, c); },
        py::arg("profile"), py::arg("medium"), py::arg("wave"), py::arg("curvature"));
    m.def(
        "find_fixed_point",
        [](const RadialProfile& prof, const MediumParams& p, const WaveParams& w,
           double c_min, double c_max, std::size_t n) {
            const CurvatureScan s = find_fixed_point(prof, p, w, c_min, c_max, n);
            py::object c0 = s.c0 ? py::cast(*s.c0) : py::none();
            return py::make_tuple(to_array(s.c_values), to_array(s.gamma_values), c0,
                                  s.stable);
        },
        py::arg("profile"), py::arg("medium"), py::arg("wave"), py::arg("c_min"),
        py::arg("c_max"), py::arg("n_scan") = 64);

    py::class_<TorusSolution>(m, "TorusSolution")
        .def_readonly("r0", &TorusSolution::r0)
        .def_readonly("m", &TorusSolution::m)
        .def_readonly("lambda_adj", &TorusSolution::lambda_adj)
        .def_readonly("energy", &TorusSolution::energy)
        .def_readonly("freq_shift", &TorusSolution::freq_shift);

    m.def(
        "quantize",
        [](double r0, const WaveParams& w, const std::string& policy, double delta) {
            return quantize(r0, w,
                            policy == "nearest" ? MPolicy::Nearest : MPolicy::AllWithin,
                            delta);
        },
        py::arg("r0"), py::arg("wave"), py::arg("policy") = "nearest",
        py::arg("delta") = 0.1);
    m.def("torus_energy", &torus_energy, py::arg("critical_power"), py::arg("solution"),
          py::arg("medium"));
}
