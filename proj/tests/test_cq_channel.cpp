#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "qrd/cq_channel.hpp"
#include "qrd/divergences.hpp"
#include "qrd/errors.hpp"
#include "qrd/operator_core.hpp"
#include "qrd/random.hpp"
#include "qrd/schur_weyl.hpp"

using namespace qrd;

namespace {

DensityOperator diag_qubit(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return DensityOperator(HermitianOperator(std::move(m)));
}

CqChannel noiseless_binary() {
  return CqChannel({diag_qubit(1.0, 0.0), diag_qubit(0.0, 1.0)});
}

// binary symmetric channel with flip probability p, embedded as commuting
// qubit outputs
CqChannel bsc_embedded(double p) {
  return CqChannel({diag_qubit(1.0 - p, p), diag_qubit(p, 1.0 - p)});
}

CqChannel random_qubit_channel(Rng& rng, int k) {
  std::vector<DensityOperator> outs;
  for (int x = 0; x < k; ++x) outs.push_back(random_full_rank_state(rng, 2));
  return CqChannel(std::move(outs));
}

}  // namespace

TEST_CASE("output_state reproduces point masses and uniform mixtures") {
  CqChannel W = noiseless_binary();
  DensityOperator at0 = output_state(W, InputDistribution::point_mass(2, 0));
  CHECK((at0.mat() - W.output(0).mat()).norm() < 1e-15);
  DensityOperator avg = output_state(W, InputDistribution::uniform(2));
  CHECK((avg.mat() - Matrix::Identity(2, 2) / 2.0).norm() < 1e-15);
}

TEST_CASE("lifted state is block diagonal with the right marginals") {
  Rng rng(21);
  CqChannel W = random_qubit_channel(rng, 3);
  InputDistribution P({0.5, 0.2, 0.3});
  LiftedState lift = lifted_state(W, P);
  CHECK(lift.classical_dim == 3);
  CHECK(lift.output_dim == 2);
  CHECK(lift.joint.dim() == 6);

  // tracing out the quantum side leaves diag(P); tracing out the classical
  // side leaves the average output
  HermitianOperator classical = partial_trace(lift.joint.op(), {3, 2}, {0});
  for (int x = 0; x < 3; ++x) {
    CHECK(std::abs(classical.mat()(x, x).real() - P[x]) < 1e-12);
  }
  CHECK(classical.mat().norm() == doctest::Approx(std::sqrt(0.25 + 0.04 + 0.09)).epsilon(1e-10));
  HermitianOperator quantum = partial_trace(lift.joint.op(), {3, 2}, {1});
  CHECK((quantum.mat() - output_state(W, P).mat()).norm() < 1e-12);
}

TEST_CASE("holevo quantity on distinguishable, constant, and BSC channels") {
  CHECK(holevo_quantity(noiseless_binary(), InputDistribution::uniform(2)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  DensityOperator same = diag_qubit(0.6, 0.4);
  CqChannel constant({same, same});
  CHECK(std::abs(holevo_quantity(constant, InputDistribution::uniform(2))) < 1e-12);

  // frozen from tools/oracles/classical_bsc.py (log 2 - h(0.1) in nats)
  CHECK(holevo_quantity(bsc_embedded(0.1), InputDistribution::uniform(2)) ==
        doctest::Approx(0.36806420716849707).epsilon(1e-12));
}

TEST_CASE("chi vanishes on point-supported inputs for both forms") {
  Rng rng(22);
  CqChannel W = random_qubit_channel(rng, 2);
  InputDistribution P({1.0, 0.0});
  for (Variant v : {Variant::petz, Variant::sandwiched, Variant::flat}) {
    for (int form : {1, 2}) {
      ChiResult r = chi_alpha(W, P, 1.7, v, form);
      CHECK(std::abs(r.value) < 1e-7);
    }
  }
}

TEST_CASE("petz form-1 chi matches the Sibson closed form") {
  Rng rng(23);
  CqChannel W = random_qubit_channel(rng, 3);
  InputDistribution P({0.2, 0.5, 0.3});
  for (double alpha : {0.7, 2.0}) {
    // closed-form value (alpha/(alpha-1)) log Tr (sum_x P(x) W(x)^alpha)^(1/alpha)
    Matrix A = Matrix::Zero(2, 2);
    for (int x = 0; x < 3; ++x) {
      A += P[x] * power_on_support(W.output(x).op(), alpha).mat();
    }
    const double closed =
        alpha / (alpha - 1.0) *
        std::log(power_on_support(HermitianOperator(A), 1.0 / alpha).trace());
    ChiResult r = chi_alpha(W, P, alpha, Variant::petz, 1);
    CHECK(r.value == doctest::Approx(closed).epsilon(1e-6));

    // and the closed-form minimizer attains the optimized value
    DensityOperator star = sibson_minimizer(W, P, alpha);
    const double at_star =
        chi_objective(W, P, alpha, Variant::petz, 1, star).value();
    CHECK(at_star == doctest::Approx(r.value).epsilon(1e-6));
  }
}

TEST_CASE("commuting binary channel reproduces the classical Renyi mutual information") {
  CqChannel W = bsc_embedded(0.1);
  InputDistribution P({0.3, 0.7});
  // frozen from tools/oracles/classical_bsc.py (classical Sibson MI)
  const double chi2 = 0.45424476017604283;
  const double chi15 = 0.40166632842522564;
  for (Variant v : {Variant::petz, Variant::sandwiched, Variant::flat}) {
    CHECK(chi_alpha(W, P, 2.0, v, 1).value == doctest::Approx(chi2).epsilon(1e-6));
    CHECK(chi_alpha(W, P, 1.5, v, 1).value == doctest::Approx(chi15).epsilon(1e-6));
  }
}

TEST_CASE("sibson minimizer reduces to the classical distribution on commuting outputs") {
  CqChannel W = bsc_embedded(0.1);
  InputDistribution P({0.3, 0.7});
  const double alpha = 2.0;
  DensityOperator star = sibson_minimizer(W, P, alpha);
  // classical formula: sigma*_y proportional to (sum_x P(x) W(y|x)^alpha)^(1/alpha)
  const double a0 = std::pow(0.3 * std::pow(0.9, alpha) + 0.7 * std::pow(0.1, alpha), 1.0 / alpha);
  const double a1 = std::pow(0.3 * std::pow(0.1, alpha) + 0.7 * std::pow(0.9, alpha), 1.0 / alpha);
  CHECK(star.mat()(0, 0).real() == doctest::Approx(a0 / (a0 + a1)).epsilon(1e-12));
  CHECK(star.mat()(1, 1).real() == doctest::Approx(a1 / (a0 + a1)).epsilon(1e-12));
  CHECK(std::abs(star.mat()(0, 1)) < 1e-12);
}

TEST_CASE("sibson minimizer beats random competitors") {
  Rng rng(24);
  CqChannel W = random_qubit_channel(rng, 2);
  InputDistribution P({0.4, 0.6});
  DensityOperator star = sibson_minimizer(W, P, 2.0);
  const double at_star = chi_objective(W, P, 2.0, Variant::petz, 1, star).value();
  for (int trial = 0; trial < 200; ++trial) {
    DensityOperator probe = random_state(rng, 2);
    CHECK(at_star <= chi_objective(W, P, 2.0, Variant::petz, 1, probe).value() + 1e-9);
  }
}

TEST_CASE("sibson minimizer of a constant channel is the shared output") {
  Rng rng(25);
  DensityOperator rho = random_full_rank_state(rng, 2);
  CqChannel W({rho, rho});
  DensityOperator star = sibson_minimizer(W, InputDistribution::uniform(2), 2.0);
  CHECK((star.mat() - rho.mat()).norm() < 1e-10);
}

TEST_CASE("block identity: lifted Q equals the weighted per-letter sum") {
  Rng rng(26);
  CqChannel W = random_qubit_channel(rng, 3);
  InputDistribution P({0.5, 0.2, 0.3});
  LiftedState lift = lifted_state(W, P);
  for (int trial = 0; trial < 5; ++trial) {
    DensityOperator sigma = random_full_rank_state(rng, 2);
    Matrix pdiag = Matrix::Zero(3, 3);
    for (int x = 0; x < 3; ++x) pdiag(x, x) = P[x];
    HermitianOperator p_tensor_sigma(kron(pdiag, sigma.mat()));
    for (Variant v : {Variant::petz, Variant::sandwiched, Variant::flat}) {
      for (double alpha : {0.8, 2.0}) {
        const double lifted_q = q_alpha(lift.joint.op(), p_tensor_sigma, alpha, v).value();
        double sum = 0.0;
        for (int x = 0; x < 3; ++x) {
          sum += P[x] * q_alpha(W.output(x).op(), sigma.op(), alpha, v).value();
        }
        CHECK(lifted_q == doctest::Approx(sum).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("divergence radius of trivial and symmetric channels") {
  Rng rng(27);
  CqChannel single({random_state(rng, 2)});
  RadiusResult rr = divergence_radius(single, 2.0, Variant::sandwiched);
  CHECK(rr.value == doctest::Approx(0.0).epsilon(1e-12));

  // two orthogonal pure outputs: the midpoint state is the center, so the
  // radius is log 2 at every order (diagonal two-point oracle)
  for (Variant v : {Variant::petz, Variant::sandwiched, Variant::flat}) {
    RadiusResult r2 = divergence_radius(noiseless_binary(), 2.0, v);
    CHECK(r2.value == doctest::Approx(std::log(2.0)).epsilon(1e-6));
    CHECK(r2.gap <= 1e-4);
  }
}

TEST_CASE("radius at alpha 1 equals the Holevo capacity") {
  Rng rng(28);
  CqChannel W = random_qubit_channel(rng, 2);
  RadiusResult rr = divergence_radius(W, 1.0, Variant::sandwiched);
  CapacityResult cap = renyi_capacity(W, 1.0, Variant::sandwiched);
  CHECK(rr.value == doctest::Approx(cap.value).epsilon(2e-4));
}

TEST_CASE("renyi capacity of noiseless and constant channels") {
  CqChannel W = noiseless_binary();
  CHECK(renyi_capacity(W, 2.0, Variant::petz).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK(renyi_capacity(W, 0.6, Variant::petz).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK(renyi_capacity(W, 3.0, Variant::sandwiched).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK(renyi_capacity(W, 2.0, Variant::flat).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-6));

  Rng rng(29);
  DensityOperator rho = random_full_rank_state(rng, 2);
  CqChannel constant({rho, rho});
  CHECK(std::abs(renyi_capacity(constant, 2.0, Variant::sandwiched).value) < 1e-8);
}

TEST_CASE("capacity equals divergence radius for sandwiched alpha 2") {
  Rng rng(30);
  for (int trial = 0; trial < 3; ++trial) {
    CqChannel W = random_qubit_channel(rng, 2);
    CapacityResult cap = renyi_capacity(W, 2.0, Variant::sandwiched);
    RadiusResult rad = divergence_radius(W, 2.0, Variant::sandwiched);
    CHECK(cap.value == doctest::Approx(rad.value).epsilon(2e-4));
  }
}

TEST_CASE("order-infinity chi and radius on the noiseless binary channel") {
  CqChannel W = noiseless_binary();
  RadiusResult rr = divergence_radius(W, AlphaPoint::inf(), Variant::sandwiched);
  CHECK(rr.value == doctest::Approx(std::log(2.0)).epsilon(1e-9));

  ChiResult form1 = chi_alpha(W, InputDistribution::uniform(2), AlphaPoint::inf(),
                              Variant::sandwiched, 1);
  CHECK(form1.value == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  ChiResult form2 = chi_alpha(W, InputDistribution::uniform(2), AlphaPoint::inf(),
                              Variant::sandwiched, 2);
  CHECK(form2.value == doctest::Approx(std::log(2.0)).epsilon(1e-4));

  RadiusResult flat_inf = divergence_radius(W, AlphaPoint::inf(), Variant::flat);
  CHECK(flat_inf.value == doctest::Approx(std::log(2.0)).epsilon(1e-4));
}

TEST_CASE("chi additivity under tensor powers for petz and sandwiched") {
  Rng rng(31);
  CqChannel W = random_qubit_channel(rng, 2);
  InputDistribution P({0.35, 0.65});
  CqChannel W2 = tensor_power_channel(W, 2);
  InputDistribution P2 = product_distribution(P, 2);
  for (Variant v : {Variant::petz, Variant::sandwiched}) {
    ChiResult one = chi_alpha(W, P, 1.8, v, 1);
    ChiResult two = chi_alpha(W2, P2, 1.8, v, 1);
    CHECK(two.value ==
          doctest::Approx(2.0 * one.value).epsilon(2e-6 + 2.0 * (one.gap + two.gap)));
  }
}

TEST_CASE("symmetrizing the optimizer over copies does not increase the objective") {
  Rng rng(32);
  CqChannel W = random_qubit_channel(rng, 2);
  InputDistribution P({0.5, 0.5});
  CqChannel W2 = tensor_power_channel(W, 2);
  InputDistribution P2 = product_distribution(P, 2);
  ChiResult r = chi_alpha(W2, P2, 2.0, Variant::sandwiched, 1);
  const Matrix swap = permutation_operator({1, 0}, 2);
  Matrix sym = 0.5 * (r.sigma_star.mat() + swap * r.sigma_star.mat() * swap.adjoint());
  DensityOperator sigma_sym{HermitianOperator(std::move(sym))};
  const double at_sym = chi_objective(W2, P2, 2.0, Variant::sandwiched, 1, sigma_sym).value();
  CHECK(at_sym <= r.value + 1e-7);
}

TEST_CASE("chi is monotone in alpha on a grid") {
  Rng rng(33);
  CqChannel W = random_qubit_channel(rng, 2);
  InputDistribution P({0.4, 0.6});
  const std::vector<double> petz_grid = {0.6, 0.9, 1.0, 1.3, 1.7, 2.0};
  const std::vector<double> wide_grid = {0.6, 0.9, 1.0, 1.3, 2.0, 4.0, 8.0};
  for (Variant v : {Variant::petz, Variant::sandwiched, Variant::flat}) {
    const auto& grid = (v == Variant::petz) ? petz_grid : wide_grid;
    double prev = -1e300;
    for (double a : grid) {
      if (v == Variant::sandwiched && a < 0.5) continue;
      const double cur = chi_alpha(W, P, a, v, 1).value;
      CHECK(cur >= prev - 1e-7);
      prev = cur;
    }
  }
}

TEST_CASE("chi approaches the Holevo quantity as alpha approaches 1") {
  Rng rng(34);
  CqChannel W = random_qubit_channel(rng, 3);
  InputDistribution P({0.2, 0.3, 0.5});
  const double holevo = holevo_quantity(W, P);
  for (Variant v : {Variant::petz, Variant::sandwiched, Variant::flat}) {
    for (int form : {1, 2}) {
      CHECK(chi_alpha(W, P, 1.0 + 1e-4, v, form).value ==
            doctest::Approx(holevo).epsilon(1e-3));
    }
  }
}

TEST_CASE("pinched product channel at n = 1 is the channel itself") {
  Rng rng(35);
  CqChannel W = random_qubit_channel(rng, 2);
  CqChannel W1 = pinched_product_channel(W, 1);
  for (int x = 0; x < 2; ++x) {
    CHECK((W1.output(x).mat() - W.output(x).mat()).norm() < 1e-12);
  }
}

TEST_CASE("pinching a commuting-output product channel keeps block traces") {
  CqChannel W = bsc_embedded(0.1);
  CqChannel W2 = tensor_power_channel(W, 2);
  CqChannel E2W2 = pinched_product_channel(W, 2);
  PinchingMap map = universal_pinching(2, 2);
  for (int x = 0; x < W2.size(); ++x) {
    for (const Matrix& block : map.blocks) {
      const double before = (block * W2.output(x).mat() * block).trace().real();
      const double after = (block * E2W2.output(x).mat() * block).trace().real();
      CHECK(before == doctest::Approx(after).epsilon(1e-12));
    }
  }
}

TEST_CASE("pinched flat chi is bracketed by the sandwiched chi chain") {
  Rng rng(36);
  CqChannel W = random_qubit_channel(rng, 2);
  InputDistribution P({0.5, 0.5});
  CqChannel W2 = tensor_power_channel(W, 2);
  CqChannel E2W2 = pinched_product_channel(W, 2);
  InputDistribution P2 = product_distribution(P, 2);
  const double correction = 3.0 * std::log(static_cast<double>(v_factor(2, 2)));
  for (double alpha : {1.5, 2.0}) {
    const double chi_star = chi_alpha(W2, P2, alpha, Variant::sandwiched, 1).value;
    const double chi_flat = chi_alpha(E2W2, P2, alpha, Variant::flat, 1).value;
    CHECK(chi_flat <= chi_star + 1e-6);
    CHECK(chi_flat >= chi_star - correction - 1e-6);
  }
}

TEST_CASE("tensor power channel and product distribution bookkeeping") {
  CqChannel W = noiseless_binary();
  CqChannel W2 = tensor_power_channel(W, 2);
  CHECK(W2.size() == 4);
  CHECK(W2.dim() == 4);
  CHECK(W2.labels()[1] == "x0.x1");
  CHECK(W2.index_of("x1.x0") == 2);
  CHECK((W2.output(2).mat() - kron(W.output(1).mat(), W.output(0).mat())).norm() < 1e-15);

  InputDistribution P({0.25, 0.75});
  InputDistribution P2 = product_distribution(P, 2);
  CHECK(P2[0] == doctest::Approx(0.0625));
  CHECK(P2[1] == doctest::Approx(0.1875));
  CHECK(P2[2] == doctest::Approx(0.1875));
  CHECK(P2[3] == doctest::Approx(0.5625));
}

TEST_CASE("alpha range and input validation") {
  CqChannel W = noiseless_binary();
  InputDistribution P = InputDistribution::uniform(2);
  CHECK_THROWS_AS(chi_alpha(W, P, 2.5, Variant::petz, 1), InvalidAlphaRange);
  CHECK_THROWS_AS(chi_alpha(W, P, 0.3, Variant::sandwiched, 1), InvalidAlphaRange);
  CHECK_THROWS_AS(chi_alpha(W, P, AlphaPoint::inf(), Variant::petz, 2), InvalidAlphaRange);
  CHECK_THROWS_AS(chi_alpha(W, P, 2.0, Variant::petz, 3), InputError);
  CHECK_THROWS_AS(renyi_capacity(W, 0.0, Variant::flat), InvalidAlphaRange);
  CHECK_THROWS_AS(chi_alpha(W, InputDistribution::uniform(3), 2.0, Variant::petz, 1),
                  DimensionMismatch);
  CHECK_THROWS_AS(W.index_of("zebra"), UnknownLabel);
  CHECK_THROWS_AS(InputDistribution({0.4, 0.4}), InputError);
  CHECK_THROWS_AS(InputDistribution({1.5, -0.5}), InputError);
  CHECK_THROWS_AS(CqChannel({std::string("a"), std::string("a")},
                            {diag_qubit(1, 0), diag_qubit(0, 1)}),
                  InputError);
}
