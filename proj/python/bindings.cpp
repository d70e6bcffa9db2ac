#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "melcert/commands.hpp"
#include "melcert/linalg.hpp"
#include "melcert/numfmt.hpp"

namespace py = pybind11;
using namespace melcert;

namespace {

using Pair = std::pair<double, double>;

Interval to_interval(const Pair& p)
{
    if (!(p.first <= p.second)) throw py::value_error("interval with lo > hi");
    return Interval(p.first, p.second);
}

IntervalBox to_box(const std::vector<Pair>& v)
{
    IntervalBox b(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) b[i] = to_interval(v[i]);
    return b;
}

IntervalMatrix to_matrix(const std::vector<std::vector<Pair>>& rows, std::size_t cols = 0)
{
    if (!rows.empty()) cols = rows[0].size();
    IntervalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw py::value_error("ragged interval matrix");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = to_interval(rows[i][j]);
    }
    return m;
}

std::vector<Pair> from_box(const IntervalBox& b)
{
    std::vector<Pair> out;
    for (const auto& x : b) out.emplace_back(x.lo(), x.hi());
    return out;
}

Side to_side(const std::string& s)
{
    if (s == "unstable") return Side::unstable;
    if (s == "stable") return Side::stable;
    throw py::value_error("side must be 'unstable' or 'stable'");
}

py::dict certify_root(const std::vector<std::string>& equations, const std::vector<std::string>& variables,
                      const std::vector<Pair>& Y, const std::vector<std::string>& parameters,
                      const std::vector<Pair>& X, std::optional<std::vector<double>> y0, int maxRefine)
{
    std::vector<std::string> names = parameters;
    names.insert(names.end(), variables.begin(), variables.end());
    std::vector<Polynomial> eqs;
    for (const auto& e : equations) eqs.push_back(parse_polynomial(e, names));
    if (eqs.size() != variables.size() || Y.size() != variables.size() || X.size() != parameters.size())
        throw py::value_error("dimension mismatch");
    NewtonCertificate c;
    {
        py::gil_scoped_release nogil;
        c = newton_verify(polynomial_system_oracle(eqs, parameters.size()), to_box(X), to_box(Y), y0, maxRefine);
    }
    py::dict d;
    d["verified"] = c.verified;
    d["enclosure"] = from_box(c.refined);
    d["iterations"] = c.iterations;
    d["diagnostic"] = c.diagnostic;
    return d;
}

py::dict practical(std::size_t k1, std::size_t k2, double R, double epsMax, const std::vector<std::vector<Pair>>& A11,
                   const std::vector<std::vector<Pair>>& Delta1, double epsDeriv1,
                   const std::vector<std::vector<Pair>>& A22, const std::vector<std::vector<Pair>>& Delta2,
                   double epsDeriv2)
{
    auto c = verify_practical(certificate_from_blocks(k1, k2, R, epsMax, to_matrix(A11, k1), to_matrix(Delta1, k1 + k2),
                                                      epsDeriv1, to_matrix(A22, k2), to_matrix(Delta2, k1 + k2),
                                                      epsDeriv2));
    py::dict d;
    d["verdict"] = to_string(c.verdict);
    d["margins"] = c.margins;
    d["sigmaMinA11"] = c.mA11;
    d["sigmaMinA22"] = c.mA22;
    d["normDelta1"] = c.normDelta1;
    d["normDelta2"] = c.normDelta2;
    return d;
}

std::string lu_verify(const std::string& configJson)
{
    LUConfig cfg = parse_lu_config(configJson);
    MelnikovCertificate c;
    {
        py::gil_scoped_release nogil;
        c = run_theorem_proof(cfg);
    }
    return certificate_json(c, tool_version());
}

std::vector<std::vector<double>> samples(const std::string& side, double eps, std::size_t count, double rho,
                                         double time, const std::string& configJson)
{
    return manifold_samples(parse_lu_config(configJson), to_side(side), eps, count, rho, time);
}

std::pair<Pair, Pair> integrals(const std::vector<double>& x, const std::string& configJson)
{
    if (x.size() != 4) throw py::value_error("need 4 coordinates");
    IntervalBox b(4);
    for (int i = 0; i < 4; ++i) b[i] = Interval(x[i]);
    auto [h, k] = integrals_HK(parse_lu_config(configJson), b);
    return {{h.lo(), h.hi()}, {k.lo(), k.hi()}};
}

} // namespace

PYBIND11_MODULE(_melcert, m)
{
    m.doc() = "Rigorous enclosures and certificates for perturbed manifold intersections";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<CertificateError>(m, "CertificateError", PyExc_RuntimeError);

    m.def("tool_version", &tool_version);
    m.def("format_double", &format_double, "shortest round-trip decimal form");
    m.def("sigma_min_lb", [](const std::vector<std::vector<Pair>>& a) { return sigma_min_lb(to_matrix(a)); },
          py::arg("matrix"));
    m.def("spectral_norm_ub", [](const std::vector<std::vector<Pair>>& a) { return spectral_norm_ub(to_matrix(a)); },
          py::arg("matrix"));
    m.def("ivec_norm_ub", [](const std::vector<Pair>& v) { return ivec_norm_ub(to_box(v)); }, py::arg("vector"));
    m.def("certify_root", &certify_root, py::arg("equations"), py::arg("variables"), py::arg("Y"),
          py::arg("parameters") = std::vector<std::string>{}, py::arg("X") = std::vector<Pair>{},
          py::arg("y0") = py::none(), py::arg("max_refine") = 30);
    m.def("verify_practical", &practical, py::arg("k1"), py::arg("k2"), py::arg("R"), py::arg("eps_max"),
          py::arg("A11"), py::arg("Delta1"), py::arg("eps_deriv1"), py::arg("A22"), py::arg("Delta2"),
          py::arg("eps_deriv2"));
    m.def("lu_verify", &lu_verify, py::arg("config_json") = "{}",
          "runs the full pipeline and returns the certificate JSON");
    m.def("manifold_samples", &samples, py::arg("side"), py::arg("eps") = 0.0, py::arg("count") = 64,
          py::arg("rho") = 1e-4, py::arg("time") = 0.0, py::arg("config_json") = "{}");
    m.def("integrals", &integrals, py::arg("x"), py::arg("config_json") = "{}");
}
