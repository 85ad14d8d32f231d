// _qrd.cpp -- pybind11 bindings for the quantum Renyi divergence library.
//
// Conventions at the boundary: states and operators are numpy complex
// matrices; channels are lists of output matrices plus a list of input
// weights; orders are floats, with math.inf selecting the order-infinity
// formulas; variants are the strings "petz", "sandwiched", "flat".
// Structured results come back as plain dicts.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qrd/channel_io.hpp"
#include "qrd/config.hpp"
#include "qrd/cq_channel.hpp"
#include "qrd/divergences.hpp"
#include "qrd/errors.hpp"
#include "qrd/exponents.hpp"
#include "qrd/operator_core.hpp"
#include "qrd/schur_weyl.hpp"
#include "qrd/verify.hpp"

namespace py = pybind11;

namespace {

using namespace qrd;

AlphaPoint to_alpha(double a) {
  return std::isinf(a) && a > 0 ? AlphaPoint::inf() : AlphaPoint(a);
}

double from_alpha(const AlphaPoint& a) {
  return a.infinite ? std::numeric_limits<double>::infinity() : a.alpha;
}

CqChannel make_channel(const std::vector<Matrix>& outputs) {
  std::vector<DensityOperator> outs;
  outs.reserve(outputs.size());
  for (const Matrix& m : outputs) outs.emplace_back(m);
  return CqChannel(std::move(outs));
}

KrausChannel make_kraus(std::vector<Matrix> ops) { return KrausChannel(std::move(ops)); }

py::dict chi_dict(const ChiResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["sigma_star"] = Matrix(r.sigma_star.mat());
  d["gap"] = r.gap;
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  return d;
}

}  // namespace

PYBIND11_MODULE(_qrd, m) {
  m.doc() =
      "Quantum Renyi divergences (petz, sandwiched, flat), classical-quantum "
      "channel capacities, and strong converse exponents.";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<InvalidAlphaRange>(m, "InvalidAlphaRange", PyExc_ValueError);
  py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_RuntimeError);

  // ---- divergences ---------------------------------------------------

  m.def(
      "q_alpha",
      [](const Matrix& rho, const Matrix& sigma, double alpha, const std::string& variant) {
        return q_alpha(HermitianOperator(rho), HermitianOperator(sigma), alpha,
                       variant_from_name(variant))
            .value();
      },
      py::arg("rho"), py::arg("sigma"), py::arg("alpha"), py::arg("variant"),
      "Order-alpha Q quantity of one family (finite alpha).");

  m.def(
      "d_alpha",
      [](const Matrix& rho, const Matrix& sigma, double alpha, const std::string& variant) {
        return d_alpha(HermitianOperator(rho), HermitianOperator(sigma), to_alpha(alpha),
                       variant_from_name(variant))
            .value();
      },
      py::arg("rho"), py::arg("sigma"), py::arg("alpha"), py::arg("variant"),
      "Order-alpha divergence in nats; math.inf selects the max-divergence order.");

  m.def(
      "relative_entropy",
      [](const Matrix& rho, const Matrix& sigma) {
        return relative_entropy(HermitianOperator(rho), HermitianOperator(sigma)).value();
      },
      py::arg("rho"), py::arg("sigma"));

  m.def(
      "hellinger_arc",
      [](const Matrix& rho, const Matrix& sigma, double alpha) {
        return Matrix(hellinger_arc(HermitianOperator(rho), HermitianOperator(sigma), alpha).mat());
      },
      py::arg("rho"), py::arg("sigma"), py::arg("alpha"),
      "The geometric-mean interpolation state minimizing the two-divergence objective.");

  m.def(
      "pinched_divergence",
      [](const Matrix& rho, const Matrix& sigma, double alpha, int n) {
        return pinched_divergence(DensityOperator(rho), DensityOperator(sigma), alpha, n).value();
      },
      py::arg("rho"), py::arg("sigma"), py::arg("alpha"), py::arg("n"),
      "(1/n) petz divergence of the n-fold pinched pair.");

  // ---- channels -------------------------------------------------------

  m.def(
      "holevo_quantity",
      [](const std::vector<Matrix>& outputs, const std::vector<double>& weights) {
        return holevo_quantity(make_channel(outputs), InputDistribution(weights));
      },
      py::arg("outputs"), py::arg("weights"));

  m.def(
      "chi_alpha",
      [](const std::vector<Matrix>& outputs, const std::vector<double>& weights, double alpha,
         const std::string& variant, int form) {
        return chi_dict(chi_alpha(make_channel(outputs), InputDistribution(weights),
                                  to_alpha(alpha), variant_from_name(variant), form));
      },
      py::arg("outputs"), py::arg("weights"), py::arg("alpha"), py::arg("variant"),
      py::arg("form") = 1,
      "Order-alpha mutual-information-like quantity, minimized over the reference state.");

  m.def(
      "sibson_minimizer",
      [](const std::vector<Matrix>& outputs, const std::vector<double>& weights, double alpha) {
        return Matrix(
            sibson_minimizer(make_channel(outputs), InputDistribution(weights), alpha).mat());
      },
      py::arg("outputs"), py::arg("weights"), py::arg("alpha"),
      "Closed-form minimizer of the petz form-1 objective.");

  m.def(
      "renyi_capacity",
      [](const std::vector<Matrix>& outputs, double alpha, const std::string& variant) {
        CapacityResult r =
            renyi_capacity(make_channel(outputs), to_alpha(alpha), variant_from_name(variant));
        py::dict d;
        d["value"] = r.value;
        d["p_star"] = r.p_star.weights();
        d["sigma_star"] = Matrix(r.inner.sigma_star.mat());
        d["converged"] = r.converged;
        return d;
      },
      py::arg("outputs"), py::arg("alpha"), py::arg("variant"),
      "Channel capacity sup over input weights of chi_alpha form 1.");

  m.def(
      "divergence_radius",
      [](const std::vector<Matrix>& outputs, double alpha, const std::string& variant) {
        RadiusResult r =
            divergence_radius(make_channel(outputs), to_alpha(alpha), variant_from_name(variant));
        py::dict d;
        d["value"] = r.value;
        d["lower"] = r.lower;
        d["gap"] = r.gap;
        d["p_star"] = r.p_star.weights();
        d["sigma_star"] = Matrix(r.sigma_star.mat());
        return d;
      },
      py::arg("outputs"), py::arg("alpha"), py::arg("variant"),
      "min over sigma of the worst-case output divergence; value is an upper certificate.");

  // ---- exponents -----------------------------------------------------

  m.def(
      "sc_exponent",
      [](const std::vector<Matrix>& outputs, double rate) {
        ScResult r = sc_exponent(make_channel(outputs), rate);
        py::dict d;
        d["value"] = r.value;
        d["alpha_star"] = from_alpha(r.alpha_star);
        d["certificate"] = r.certificate;
        return d;
      },
      py::arg("outputs"), py::arg("rate"),
      "Strong converse exponent at the given rate (sandwiched capacity form).");

  m.def(
      "sc_exponent_curve",
      [](const std::vector<Matrix>& outputs, const std::vector<double>& rates) {
        ExponentCurve curve = sc_exponent_curve(make_channel(outputs), rates);
        py::list out;
        for (const ExponentSample& s : curve.samples) {
          py::dict d;
          d["rate"] = s.rate;
          d["value"] = s.value;
          d["alpha_star"] = from_alpha(s.alpha_star);
          out.append(d);
        }
        return out;
      },
      py::arg("outputs"), py::arg("rates"));

  m.def(
      "hoeffding_capacity",
      [](const std::vector<Matrix>& outputs, double rate, const std::string& variant) {
        HoeffdingResult r =
            hoeffding_capacity(make_channel(outputs), rate, variant_from_name(variant));
        py::dict d;
        d["value"] = r.value;
        d["alpha_star"] = from_alpha(r.alpha_star);
        return d;
      },
      py::arg("outputs"), py::arg("rate"), py::arg("variant"));

  m.def(
      "hoeffding_fixed_input",
      [](const std::vector<Matrix>& outputs, const std::vector<double>& weights, double rate,
         const std::string& variant, int form) {
        HoeffdingResult r = hoeffding_fixed_input(make_channel(outputs),
                                                  InputDistribution(weights), rate,
                                                  variant_from_name(variant), form);
        py::dict d;
        d["value"] = r.value;
        d["alpha_star"] = from_alpha(r.alpha_star);
        return d;
      },
      py::arg("outputs"), py::arg("weights"), py::arg("rate"), py::arg("variant"),
      py::arg("form") = 2);

  m.def(
      "dueck_korner",
      [](const std::vector<Matrix>& outputs, const std::vector<double>& weights, double rate) {
        DkResult r = dueck_korner_F(make_channel(outputs), InputDistribution(weights), rate);
        py::dict d;
        d["value"] = r.value;
        d["probe"] = r.probe;
        d["converged"] = r.converged;
        std::vector<Matrix> v_star;
        for (int x = 0; x < r.v_star.size(); ++x) v_star.push_back(r.v_star.output(x).mat());
        d["v_star"] = v_star;
        return d;
      },
      py::arg("outputs"), py::arg("weights"), py::arg("rate"),
      "Conversion exponent min over dummy channels of divergence plus rate hinge.");

  m.def(
      "min_output_alpha_entropy",
      [](const std::vector<Matrix>& kraus, double alpha) {
        return min_output_alpha_entropy(make_kraus(kraus), to_alpha(alpha));
      },
      py::arg("kraus"), py::arg("alpha"),
      "Minimum output Renyi entropy of a Kraus channel over pure inputs (alpha > 1).");

  m.def(
      "kw_exponent",
      [](const std::vector<Matrix>& kraus, double rate, const std::vector<double>& alpha_grid,
         bool kw_class) {
        KwResult r = kw_exponent(make_kraus(kraus), rate, alpha_grid, kw_class);
        py::dict d;
        d["lower"] = r.lower;
        d["upper"] = r.upper;
        d["alpha_star"] = from_alpha(r.alpha_star);
        d["sc"] = r.sc ? py::cast(*r.sc) : py::none();
        return d;
      },
      py::arg("kraus"), py::arg("rate"), py::arg("alpha_grid"), py::arg("kw_class") = false,
      "Exponent bounds from the minimum-output-entropy formula; sc is set only "
      "when the caller asserts the covariant channel class.");

  m.def(
      "induced_cq_channel",
      [](const std::vector<Matrix>& kraus, const std::vector<CVector>& inputs) {
        CqChannel W = induced_cq_channel(make_kraus(kraus), inputs);
        std::vector<Matrix> outs;
        for (int x = 0; x < W.size(); ++x) outs.push_back(W.output(x).mat());
        return outs;
      },
      py::arg("kraus"), py::arg("inputs"),
      "Output states of a Kraus channel on the given pure input vectors.");

  // ---- symmetric subspace ---------------------------------------------

  m.def(
      "isotypic_projections",
      [](int n, int d) {
        IsotypicDecomposition dec = isotypic_projections(n, d);
        py::list out;
        for (const IsotypicComponent& c : dec.components) {
          py::dict e;
          e["partition"] = c.lambda;
          e["dim_sym"] = c.dim_sym;
          e["dim_gl"] = c.dim_gl;
          e["projector"] = c.projector;
          out.append(e);
        }
        return out;
      },
      py::arg("n"), py::arg("d"));

  m.def(
      "universal_symmetric_state",
      [](int n, int d) { return Matrix(universal_symmetric_state(n, d).mat()); }, py::arg("n"),
      py::arg("d"));

  m.def("v_factor", &v_factor, py::arg("n"), py::arg("d"),
        "Polynomial domination factor of the universal symmetric state.");

  m.def(
      "distinct_eigenvalue_count",
      [](const Matrix& a) { return distinct_eigenvalue_count(HermitianOperator(a)); },
      py::arg("a"));

  // ---- io, config, verification ---------------------------------------

  m.def(
      "parse_state_json",
      [](const std::string& text) { return Matrix(parse_state_json(text).mat()); },
      py::arg("text"));

  m.def(
      "state_to_json", [](const Matrix& rho) { return state_to_json(DensityOperator(rho)); },
      py::arg("rho"));

  m.def("apply_config_json", &apply_config_json, py::arg("text"),
        "Override numeric tolerances from a flat JSON object; unknown keys are rejected.");

  m.def(
      "verify_report_json",
      [](std::uint64_t seed, const std::vector<std::string>& groups) {
        return report_to_json(run_verify_suite(seed, groups));
      },
      py::arg("seed") = 7, py::arg("groups") = std::vector<std::string>{"all"},
      "Run the seeded identity-verification suite; returns the JSON report.");

  m.def("verify_group_names", &verify_group_names);
}
