#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qrd/divergences.hpp"
#include "qrd/random.hpp"

using namespace qrd;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// The maximally coherent qubit state 1/2 [[1,1],[1,1]].
Matrix coherent_plus() {
  Matrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return m;
}

const std::vector<Variant> ALL = {Variant::petz, Variant::sandwiched, Variant::flat};

}  // namespace

TEST_CASE("the three families give their distinct closed forms on the coherent pair") {
  // rho = |+><+|, sigma = diag(a, b): the Q values reduce to
  //   flat (ab)^((1-a)/2), sandwiched ((a^((1-a)/a)+b^((1-a)/a))/2)^a,
  //   petz (a^(1-a)+b^(1-a))/2, all distinct at alpha = 2.
  HermitianOperator rho(coherent_plus());
  HermitianOperator sigma(diag2(0.25, 0.75));
  const double a = 0.25, b = 0.75, alpha = 2.0;

  const double flat_expect = std::pow(a * b, (1.0 - alpha) / 2.0);       // 4/sqrt(3)
  const double petz_expect = (std::pow(a, 1.0 - alpha) + std::pow(b, 1.0 - alpha)) / 2.0;  // 8/3
  const double sand_expect =
      std::pow((std::pow(a, (1.0 - alpha) / alpha) + std::pow(b, (1.0 - alpha) / alpha)) / 2.0,
               alpha);

  CHECK(q_alpha(rho, sigma, alpha, Variant::flat).value() ==
        doctest::Approx(flat_expect).epsilon(1e-12));
  CHECK(q_alpha(rho, sigma, alpha, Variant::petz).value() ==
        doctest::Approx(petz_expect).epsilon(1e-12));
  CHECK(q_alpha(rho, sigma, alpha, Variant::sandwiched).value() ==
        doctest::Approx(sand_expect).epsilon(1e-12));
  CHECK(flat_expect == doctest::Approx(4.0 / std::sqrt(3.0)));
  CHECK(petz_expect == doctest::Approx(8.0 / 3.0));
}

TEST_CASE("Q at equal arguments is the trace, for every family") {
  Rng rng(21);
  DensityOperator rho = random_state(rng, 3);
  for (Variant v : ALL) {
    for (double alpha : {0.3, 0.5, 2.0, 5.0}) {
      CHECK(q_alpha(rho.op(), rho.op(), alpha, v).value() == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  HermitianOperator unnorm(Matrix(3.0 * rho.mat()));
  CHECK(q_alpha(unnorm, unnorm, 2.0, Variant::petz).value() == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("disjoint supports at alpha > 1 give infinite Q and D") {
  HermitianOperator rho(diag2(1, 0));
  HermitianOperator sigma(diag2(0, 1));
  for (Variant v : ALL) {
    CHECK(q_alpha(rho, sigma, 2.0, v).is_infinite());
    CHECK(d_alpha(rho, sigma, 2.0, v).is_infinite());
    // Below alpha = 1 the Q vanish instead, and D is again infinite.
    CHECK(q_alpha(rho, sigma, 0.5, v).value() == 0.0);
    CHECK(d_alpha(rho, sigma, 0.5, v).is_infinite());
  }
}

TEST_CASE("divergence vanishes at equal states for every alpha and family") {
  Rng rng(22);
  DensityOperator rho = random_state(rng, 2);
  for (Variant v : ALL) {
    for (double alpha : {0.5, 0.999999, 1.0, 2.0, 10.0}) {
      CHECK(std::abs(d_alpha(rho.op(), rho.op(), alpha, v).value()) < 1e-9);
    }
    CHECK(std::abs(d_alpha(rho.op(), rho.op(), AlphaPoint::inf(), v).value()) < 1e-9);
  }
}

TEST_CASE("alpha = 1 reduces to the classical KL value on a commuting pair") {
  // Frozen from tools/oracles/hellinger_commuting.py: KL(p||q) = 0.5 log(4/3).
  HermitianOperator rho(diag2(0.5, 0.5));
  HermitianOperator sigma(diag2(0.25, 0.75));
  for (Variant v : ALL) {
    CHECK(d_alpha(rho, sigma, 1.0, v).value() ==
          doctest::Approx(0.14384103622589046).epsilon(1e-13));
  }
}

TEST_CASE("alpha = 2 on the commuting pair matches the scalar oracle") {
  // Frozen from tools/oracles/hellinger_commuting.py.
  HermitianOperator rho(diag2(0.5, 0.5));
  HermitianOperator sigma(diag2(0.25, 0.75));
  for (Variant v : ALL) {
    CHECK(q_alpha(rho, sigma, 2.0, v).value() ==
          doctest::Approx(1.3333333333333333).epsilon(1e-12));
    CHECK(d_alpha(rho, sigma, 2.0, v).value() ==
          doctest::Approx(0.28768207245178093).epsilon(1e-12));
  }
}

TEST_CASE("alpha = 0 closed forms for the petz and flat families") {
  HermitianOperator rho(diag2(1, 0));
  HermitianOperator sigma(diag2(0.25, 0.75));
  // log Tr rho - log Tr rho^0 sigma = -log(1/4).
  CHECK(d_alpha(rho, sigma, 0.0, Variant::petz).value() ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(d_alpha(rho, sigma, 0.0, Variant::flat).value() ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK_THROWS_AS(d_alpha(rho, sigma, 0.0, Variant::sandwiched), UnsupportedAlphaVariant);
  CHECK_THROWS_AS(d_alpha(rho, sigma, -0.5, Variant::petz), InvalidAlphaRange);
}

TEST_CASE("alpha = infinity closed forms") {
  HermitianOperator rho(diag2(0.5, 0.5));
  HermitianOperator sigma(diag2(0.25, 0.75));
  // Commuting pair: all families see the max likelihood ratio 2.
  for (Variant v : ALL) {
    CHECK(d_alpha(rho, sigma, AlphaPoint::inf(), v).value() ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  CHECK(d_alpha(HermitianOperator(diag2(1, 0)), HermitianOperator(diag2(0, 1)), AlphaPoint::inf(),
                Variant::sandwiched)
            .is_infinite());
}

TEST_CASE("relative entropy basics and the Klein lower bound") {
  Rng rng(23);
  DensityOperator rho = random_state(rng, 3);
  CHECK(std::abs(relative_entropy(rho.op(), rho.op()).value()) < 1e-10);
  CHECK(von_neumann_entropy(HermitianOperator(Matrix(0.5 * Matrix::Identity(2, 2)))) ==
        doctest::Approx(std::log(2.0)));

  for (int trial = 0; trial < 25; ++trial) {
    HermitianOperator A = random_psd(rng, 3);
    HermitianOperator B(Matrix(random_psd(rng, 3).mat() + 1e-3 * Matrix::Identity(3, 3)));
    const double d = relative_entropy(A, B).value();
    const double tr_gap = A.trace() - B.trace();
    Eigen::SelfAdjointEigenSolver<Matrix> ea(A.mat(), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Matrix> eb(B.mat(), Eigen::EigenvaluesOnly);
    const double peak = std::max(ea.eigenvalues().maxCoeff(), eb.eigenvalues().maxCoeff());
    const double gap2 = ((A.mat() - B.mat()) * (A.mat() - B.mat())).trace().real();
    CHECK(d - tr_gap >= gap2 / (2.0 * peak) - 1e-9);
  }
}

TEST_CASE("max-relative entropy") {
  HermitianOperator rho(diag2(0.5, 0.5));
  HermitianOperator sigma(diag2(0.25, 0.75));
  CHECK(std::abs(d_max(rho, rho).value()) < 1e-10);
  CHECK(d_max(rho, sigma).value() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(d_max(HermitianOperator(diag2(1, 0)), HermitianOperator(diag2(0, 1))).is_infinite());
}

TEST_CASE("hellinger arc endpoints and the commuting geometric mixture") {
  Rng rng(24);
  DensityOperator rho = random_state(rng, 2);
  DensityOperator same = hellinger_arc(rho.op(), rho.op(), 0.37);
  CHECK((same.mat() - rho.mat()).cwiseAbs().maxCoeff() < 1e-10);

  // Frozen from tools/oracles/hellinger_commuting.py (alpha = 1/2 weights).
  DensityOperator arc =
      hellinger_arc(HermitianOperator(diag2(0.5, 0.5)), HermitianOperator(diag2(0.25, 0.75)), 0.5);
  CHECK(arc.mat()(0, 0).real() == doctest::Approx(0.36602540378443865).epsilon(1e-13));
  CHECK(arc.mat()(1, 1).real() == doctest::Approx(0.63397459621556135).epsilon(1e-13));

  CHECK_THROWS_AS(
      hellinger_arc(HermitianOperator(diag2(1, 0)), HermitianOperator(diag2(0, 1)), 0.5),
      EmptySupportMeet);
}

TEST_CASE("the arc state minimizes the weighted divergence sum") {
  Rng rng(25);
  DensityOperator rho = random_full_rank_state(rng, 2);
  DensityOperator sigma = random_full_rank_state(rng, 2);
  const double alpha = 0.6;
  DensityOperator arc = hellinger_arc(rho.op(), sigma.op(), alpha);
  const double at_arc = variational_objective(arc, rho.op(), sigma.op(), alpha).value();
  const double psi = psi_alpha(rho.op(), sigma.op(), alpha, Variant::flat).value();
  CHECK(at_arc == doctest::Approx(-psi).epsilon(1e-10));
  for (int trial = 0; trial < 200; ++trial) {
    DensityOperator tau = random_state(rng, 2);
    CHECK(variational_objective(tau, rho.op(), sigma.op(), alpha).value() >= at_arc - 1e-8);
  }
}

TEST_CASE("objective at tau = rho collapses to the scaled relative entropy") {
  Rng rng(26);
  DensityOperator rho = random_full_rank_state(rng, 3);
  DensityOperator sigma = random_full_rank_state(rng, 3);
  for (double alpha : {0.25, 0.8, 1.7}) {
    const double lhs = variational_objective(rho, rho.op(), sigma.op(), alpha).value();
    const double rhs = (1.0 - alpha) * relative_entropy(rho.op(), sigma.op()).value();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("variational decomposition balances on random states") {
  // objective = D(tau||tau_alpha) - psi_flat, checked on both sides.
  Rng rng(27);
  for (int trial = 0; trial < 40; ++trial) {
    DensityOperator rho = random_full_rank_state(rng, 2);
    DensityOperator sigma = random_full_rank_state(rng, 2);
    DensityOperator tau = random_full_rank_state(rng, 2);
    const double alpha = rng.uniform(0.05, 0.95);
    VariationalDecomposition dec = variational_decomposition(tau, rho.op(), sigma.op(), alpha);
    CHECK(dec.objective.value() ==
          doctest::Approx(dec.d_tau_arc.value() - dec.psi_flat).epsilon(1e-8));
    CHECK(dec.objective.value() >= -dec.psi_flat - 1e-8);
  }
}

TEST_CASE("trace functional variational maximum") {
  Rng rng(28);
  HermitianOperator A = random_psd(rng, 3);
  TroppResult r = tropp_value(A, 500, 91);
  CHECK(r.value == doctest::Approx(A.trace()).epsilon(1e-10));
  CHECK(r.gap >= -1e-9);
  CHECK(r.gap < 1e-9);

  TroppResult id2 = tropp_value(HermitianOperator(Matrix::Identity(2, 2)), 50, 91);
  CHECK(id2.value == doctest::Approx(2.0));
}

TEST_CASE("pinched divergence is exact on commuting pairs") {
  DensityOperator rho(diag2(0.5, 0.5));
  DensityOperator sigma(diag2(0.25, 0.75));
  for (int n = 1; n <= 3; ++n) {
    CHECK(pinched_divergence(rho, sigma, 2.0, n).value() ==
          doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-10));
  }
}

TEST_CASE("pinched divergence is dominated by the sandwiched divergence") {
  DensityOperator rho(coherent_plus());
  DensityOperator sigma(diag2(0.25, 0.75));
  const double sand = d_alpha(rho.op(), sigma.op(), 2.0, Variant::sandwiched).value();
  CHECK(pinched_divergence(rho, sigma, 2.0, 1).value() <= sand + 1e-10);
}

TEST_CASE("pinched divergences increase towards the sandwiched value") {
  Rng rng(29);
  DensityOperator rho = random_full_rank_state(rng, 2);
  DensityOperator sigma = random_full_rank_state(rng, 2);
  const double alpha = 2.0;
  const double sand = d_alpha(rho.op(), sigma.op(), alpha, Variant::sandwiched).value();
  double prev = -1e300;
  for (int n = 1; n <= 3; ++n) {
    const double pn = pinched_divergence(rho, sigma, alpha, n).value();
    CHECK(pn <= sand + 1e-10);
    // v(sigma^n) = n+1 distinct eigenvalues for a generic qubit sigma.
    const double correction = (alpha / (alpha - 1.0)) * std::log(n + 1.0) / n;
    CHECK(sand <= pn + correction + 1e-10);
    CHECK(pn >= prev - 1e-12);
    prev = pn;
  }
}

TEST_CASE("divergences are monotone in alpha") {
  Rng rng(30);
  DensityOperator rho = random_full_rank_state(rng, 2);
  DensityOperator sigma = random_full_rank_state(rng, 2);
  for (Variant v : ALL) {
    double prev = -1e300;
    for (double alpha : {0.2, 0.5, 0.9, 1.0, 1.3, 2.0, 4.0, 16.0}) {
      const double d = d_alpha(rho.op(), sigma.op(), alpha, v).value();
      CHECK(d >= prev - 1e-9);
      prev = d;
    }
    CHECK(d_alpha(rho.op(), sigma.op(), AlphaPoint::inf(), v).value() >= prev - 1e-9);
  }
}

TEST_CASE("the families are ordered, with the order flipping at alpha = 1") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    DensityOperator rho = random_state(rng, 2);
    DensityOperator sigma = random_full_rank_state(rng, 2);
    for (double alpha : {1.5, 2.0, 4.0}) {  // flat <= sandwiched <= petz
      const double f = d_alpha(rho.op(), sigma.op(), alpha, Variant::flat).value();
      const double s = d_alpha(rho.op(), sigma.op(), alpha, Variant::sandwiched).value();
      const double p = d_alpha(rho.op(), sigma.op(), alpha, Variant::petz).value();
      CHECK(f <= s + 1e-9);
      CHECK(s <= p + 1e-9);
    }
    for (double alpha : {0.3, 0.7}) {  // sandwiched <= petz <= flat
      const double f = d_alpha(rho.op(), sigma.op(), alpha, Variant::flat).value();
      const double s = d_alpha(rho.op(), sigma.op(), alpha, Variant::sandwiched).value();
      const double p = d_alpha(rho.op(), sigma.op(), alpha, Variant::petz).value();
      CHECK(s <= p + 1e-9);
      CHECK(p <= f + 1e-9);
    }
  }
}

TEST_CASE("continuity across alpha = 1") {
  Rng rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    DensityOperator rho = random_full_rank_state(rng, 2);
    DensityOperator sigma = random_full_rank_state(rng, 2);
    for (Variant v : ALL) {
      const double at_one = d_alpha(rho.op(), sigma.op(), 1.0, v).value();
      CHECK(std::abs(d_alpha(rho.op(), sigma.op(), 1.0 + 1e-4, v).value() - at_one) <= 1e-3);
      CHECK(std::abs(d_alpha(rho.op(), sigma.op(), 1.0 - 1e-4, v).value() - at_one) <= 1e-3);
    }
  }
}

TEST_CASE("scaling the arguments shifts the divergence by the log factors") {
  Rng rng(33);
  DensityOperator rho = random_full_rank_state(rng, 2);
  DensityOperator sigma = random_full_rank_state(rng, 2);
  const double lam = 2.5, alpha = 1.7;
  for (Variant v : ALL) {
    const double base = d_alpha(rho.op(), sigma.op(), alpha, v).value();
    HermitianOperator lam_rho(Matrix(lam * rho.mat()));
    HermitianOperator lam_sigma(Matrix(lam * sigma.mat()));
    CHECK(d_alpha(lam_rho, sigma.op(), alpha, v).value() ==
          doctest::Approx(base + std::log(lam)).epsilon(1e-10));
    CHECK(d_alpha(rho.op(), lam_sigma, alpha, v).value() ==
          doctest::Approx(base - std::log(lam)).epsilon(1e-10));
  }
}

TEST_CASE("psi is additive and D invariant over tensor products") {
  Rng rng(34);
  DensityOperator r1 = random_full_rank_state(rng, 2);
  DensityOperator s1 = random_full_rank_state(rng, 2);
  const double alpha = 2.3;
  for (Variant v : ALL) {
    const double single = psi_alpha(r1.op(), s1.op(), alpha, v).value();
    const double pair =
        psi_alpha(tensor_power(r1.op(), 2), tensor_power(s1.op(), 2), alpha, v).value();
    CHECK(pair == doctest::Approx(2.0 * single).epsilon(1e-9));
    CHECK(d_alpha(tensor_power(r1.op(), 2), tensor_power(s1.op(), 2), alpha, v).value() ==
          doctest::Approx(2.0 * d_alpha(r1.op(), s1.op(), alpha, v).value()).epsilon(1e-9));
  }
}

TEST_CASE("psi survives extreme alpha in the log domain") {
  Rng rng(35);
  DensityOperator rho = random_full_rank_state(rng, 2);
  DensityOperator sigma = random_full_rank_state(rng, 2);
  for (Variant v : ALL) {
    const double d = d_alpha(rho.op(), sigma.op(), 1000.0, v).value();
    CHECK(std::isfinite(d));
    // Large alpha approaches the alpha = infinity value from below.
    const double inf_val = d_alpha(rho.op(), sigma.op(), AlphaPoint::inf(), v).value();
    CHECK(d <= inf_val + 1e-6);
    CHECK(inf_val - d < 0.05);
  }
}

TEST_CASE("flat family can increase under the sigma pinching") {
  // rho = |+><+| against sigma = diag(1/17, 16/17) at alpha = 2: the flat Q
  // of the pinched pair exceeds the unpinched flat Q, so monotonicity fails.
  HermitianOperator rho(coherent_plus());
  HermitianOperator sigma(diag2(1.0 / 17.0, 16.0 / 17.0));
  PinchingMap map = pinching_from(sigma);
  HermitianOperator pinched = pinch(map, rho);
  const double before = q_alpha(rho, sigma, 2.0, Variant::flat).value();
  const double after = q_alpha(pinched, sigma, 2.0, Variant::flat).value();
  CHECK(after - before > 1e-3);
  // Closed forms: before = 1/sqrt(ab), after = (1/a + 1/b)/4.
  const double a = 1.0 / 17.0, b = 16.0 / 17.0;
  CHECK(before == doctest::Approx(1.0 / std::sqrt(a * b)).epsilon(1e-12));
  CHECK(after == doctest::Approx((1.0 / a + 1.0 / b) / 4.0).epsilon(1e-12));
}
