#include "qrd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <json.hpp>

#include "qrd/cq_channel.hpp"
#include "qrd/divergences.hpp"
#include "qrd/exponents.hpp"
#include "qrd/operator_core.hpp"
#include "qrd/optim.hpp"
#include "qrd/random.hpp"
#include "qrd/schur_weyl.hpp"

namespace qrd {

namespace {

// Deterministic per-group generator: mix the user seed with the group name
// so each group draws the same instances no matter the selection.
Rng group_rng(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  return Rng(seed ^ h);
}

VerifyCheck make_check(std::string name, double observed, double tolerance, std::string note) {
  return {std::move(name), observed, tolerance, observed <= tolerance, std::move(note)};
}

CqChannel random_channel(Rng& rng, int k, int dim) {
  std::vector<DensityOperator> outs;
  for (int x = 0; x < k; ++x) outs.push_back(random_full_rank_state(rng, dim));
  return CqChannel(std::move(outs));
}

VerifyGroup group_ordering(std::uint64_t seed) {
  Rng rng = group_rng(seed, "ordering");
  double worst_chain = -std::numeric_limits<double>::infinity();
  double worst_reversed = worst_chain;
  for (int i = 0; i < 100; ++i) {
    DensityOperator rho = random_full_rank_state(rng, 2);
    DensityOperator sigma = random_full_rank_state(rng, 2);
    for (double a : {1.5, 2.0, 4.0}) {
      double flat = d_alpha(rho.op(), sigma.op(), AlphaPoint(a), Variant::flat).value();
      double sand = d_alpha(rho.op(), sigma.op(), AlphaPoint(a), Variant::sandwiched).value();
      // the petz family caps at order 2; its slot in the chain is checked
      // where defined
      if (a <= 2.0) {
        double petz = d_alpha(rho.op(), sigma.op(), AlphaPoint(a), Variant::petz).value();
        worst_chain = std::max(worst_chain, sand - petz);
      }
      worst_chain = std::max(worst_chain, flat - sand);
    }
    for (double a : {0.3, 0.7}) {
      double flat = d_alpha(rho.op(), sigma.op(), AlphaPoint(a), Variant::flat).value();
      double sand = d_alpha(rho.op(), sigma.op(), AlphaPoint(a), Variant::sandwiched).value();
      double petz = d_alpha(rho.op(), sigma.op(), AlphaPoint(a), Variant::petz).value();
      worst_reversed = std::max({worst_reversed, sand - petz, petz - flat});
    }
  }
  VerifyGroup g{"ordering", {}};
  g.checks.push_back(make_check("flat <= sandwiched <= petz for alpha > 1", worst_chain, 1e-9,
                                "100 random qubit pairs, alpha in {1.5, 2, 4}"));
  g.checks.push_back(make_check("chain reversed for alpha < 1", worst_reversed, 1e-9,
                                "sandwiched <= petz <= flat on 100 random qubit pairs"));
  return g;
}

VerifyGroup group_variational(std::uint64_t seed) {
  Rng rng = group_rng(seed, "variational");
  double worst_opt = -std::numeric_limits<double>::infinity();
  double worst_identity = worst_opt;
  for (int i = 0; i < 50; ++i) {
    DensityOperator rho = random_full_rank_state(rng, 2);
    DensityOperator sigma = random_full_rank_state(rng, 2);
    double a = rng.uniform(0.3, 3.0);
    DensityOperator arc = hellinger_arc(rho.op(), sigma.op(), a);
    double psi = psi_alpha(rho.op(), sigma.op(), a, Variant::flat).value();
    // the arc attains the minimum -psi of the two-divergence objective
    worst_opt = std::max(
        worst_opt, std::abs(variational_objective(arc, rho.op(), sigma.op(), a).value() + psi));
    DensityOperator tau = random_full_rank_state(rng, 2);
    VariationalDecomposition dec = variational_decomposition(tau, rho.op(), sigma.op(), a);
    worst_identity = std::max(worst_identity, std::abs(dec.objective.value() -
                                                       (dec.d_tau_arc.value() - dec.psi_flat)));
  }
  VerifyGroup g{"variational", {}};
  g.checks.push_back(make_check("hellinger arc attains -psi_flat", worst_opt, 1e-8,
                                "50 random qubit pairs, alpha in (0.3, 3)"));
  g.checks.push_back(make_check("objective decomposition identity", worst_identity, 1e-8,
                                "50 random taus against random pairs"));
  return g;
}

VerifyGroup group_limits(std::uint64_t seed) {
  Rng rng = group_rng(seed, "limits");
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) {
    DensityOperator rho = random_full_rank_state(rng, 2);
    DensityOperator sigma = random_full_rank_state(rng, 2);
    double d1 = relative_entropy(rho.op(), sigma.op()).value();
    for (Variant v : {Variant::petz, Variant::sandwiched, Variant::flat}) {
      for (double a : {1.0 - 1e-4, 1.0 + 1e-4}) {
        double d = d_alpha(rho.op(), sigma.op(), AlphaPoint(a), v).value();
        worst = std::max(worst, std::abs(d - d1));
      }
    }
  }
  VerifyGroup g{"limits", {}};
  g.checks.push_back(make_check("order 1 +/- 1e-4 close to relative entropy", worst, 1e-3,
                                "20 full-rank qubit pairs, all three variants"));
  return g;
}

VerifyGroup group_schur(std::uint64_t seed) {
  Rng rng = group_rng(seed, "schur");
  double worst_complete = -std::numeric_limits<double>::infinity();
  double worst_rank = 0.0;
  double worst_dominate = -std::numeric_limits<double>::infinity();
  double worst_count = 0.0;
  for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {4, 2}}) {
    IsotypicDecomposition dec = isotypic_projections(n, d);
    const int full_dim = static_cast<int>(dec.components.front().projector.rows());
    Matrix sum = Matrix::Zero(full_dim, full_dim);
    for (const IsotypicComponent& c : dec.components) {
      sum += c.projector;
      long long rank = std::llround(c.projector.trace().real());
      worst_rank = std::max(worst_rank,
                            static_cast<double>(std::llabs(rank - c.dim_sym * c.dim_gl)));
      for (const IsotypicComponent& o : dec.components) {
        if (&o == &c) continue;
        worst_complete = std::max(worst_complete, (c.projector * o.projector).norm());
      }
    }
    worst_complete =
        std::max(worst_complete, (sum - Matrix::Identity(full_dim, full_dim)).norm());

    DensityOperator universal = universal_symmetric_state(n, d);
    double v = static_cast<double>(v_factor(n, d));
    worst_count = std::max(worst_count,
                           static_cast<double>(distinct_eigenvalue_count(universal.op()) -
                                               v_factor(n, d)));
    for (int i = 0; i < 20; ++i) {
      DensityOperator raw = random_full_rank_state(rng, full_dim);
      DensityOperator omega = DensityOperator::normalized(
          symmetrize_over_permutations(raw.op(), n, d));
      // omega <= v * universal: the bottom eigenvalue of the gap, negated
      Eigen::SelfAdjointEigenSolver<Matrix> es(v * universal.mat() - omega.mat(),
                                               Eigen::EigenvaluesOnly);
      worst_dominate = std::max(worst_dominate, -es.eigenvalues().minCoeff());
    }
  }
  VerifyGroup g{"schur", {}};
  g.checks.push_back(make_check("isotypic projectors complete and orthogonal", worst_complete,
                                1e-9, "(n, d) up to (4, 2)"));
  g.checks.push_back(make_check("projector ranks match irrep dimensions", worst_rank, 0.0,
                                "exact integer identity"));
  g.checks.push_back(make_check("universal state dominates symmetric states", worst_dominate,
                                1e-9, "20 random symmetrized states per (n, d)"));
  g.checks.push_back(make_check("distinct eigenvalue count within v(n, d)", worst_count, 0.0,
                                "count minus bound"));
  return g;
}

VerifyGroup group_sibson(std::uint64_t seed) {
  Rng rng = group_rng(seed, "sibson");
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 5; ++i) {
    CqChannel W = random_channel(rng, 2, 2);
    InputDistribution P({0.35, 0.65});
    for (double a : {1.5, 2.0}) {
      double solver = chi_alpha(W, P, AlphaPoint(a), Variant::petz, 1).value;
      double closed =
          chi_objective(W, P, AlphaPoint(a), Variant::petz, 1, sibson_minimizer(W, P, a)).value();
      worst = std::max(worst, std::abs(solver - closed));
    }
  }
  VerifyGroup g{"sibson", {}};
  g.checks.push_back(make_check("petz chi optimizer matches the closed form", worst, 1e-6,
                                "5 random 2-input qubit channels, alpha in {1.5, 2}"));
  return g;
}

VerifyGroup group_blocks(std::uint64_t seed) {
  Rng rng = group_rng(seed, "blocks");
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 5; ++i) {
    CqChannel W = random_channel(rng, 3, 2);
    InputDistribution P({0.2, 0.5, 0.3});
    DensityOperator sigma = random_full_rank_state(rng, 2);
    LiftedState lift = lifted_state(W, P);
    Matrix diag_p = Matrix::Zero(3, 3);
    for (int x = 0; x < 3; ++x) diag_p(x, x) = P[x];
    HermitianOperator ref = tensor(HermitianOperator(diag_p), sigma.op());
    for (Variant v : {Variant::petz, Variant::sandwiched, Variant::flat}) {
      for (double a : {0.8, 2.0}) {
        double joint = q_alpha(lift.joint.op(), ref, a, v).value();
        double split = 0.0;
        for (int x = 0; x < 3; ++x)
          split += P[x] * q_alpha(W.output(x).op(), sigma.op(), a, v).value();
        worst = std::max(worst, std::abs(joint - split));
      }
    }
  }
  VerifyGroup g{"blocks", {}};
  g.checks.push_back(make_check("lifted-state Q splits into weighted blocks", worst, 1e-10,
                                "5 random channels x 3 variants x 2 orders"));
  return g;
}

VerifyGroup group_capacity(std::uint64_t seed) {
  Rng rng = group_rng(seed, "capacity");
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2; ++i) {
    CqChannel W = random_channel(rng, 2, 2);
    AlphaPoint a(2.0);
    double cap1 = renyi_capacity(W, a, Variant::sandwiched).value;
    // sup over P of the form-2 quantity, by scan plus golden refinement on
    // the two-letter simplex
    auto chi2 = [&](double p) {
      return chi_alpha(W, InputDistribution({p, 1.0 - p}), a, Variant::sandwiched, 2).value;
    };
    double best_p = 0.5, best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 40; ++k) {
      double p = 0.01 + 0.98 * k / 40.0;
      double v = chi2(p);
      if (v > best) {
        best = v;
        best_p = p;
      }
    }
    auto [p_star, neg] = golden_section_min([&](double p) { return -chi2(p); },
                                            std::max(0.01, best_p - 0.025),
                                            std::min(0.99, best_p + 0.025), 1e-7, 80);
    (void)p_star;
    double cap2 = std::max(best, -neg);
    double radius = divergence_radius(W, a, Variant::sandwiched).value;
    worst = std::max({worst, std::abs(cap1 - cap2), std::abs(cap1 - radius)});
  }
  VerifyGroup g{"capacity", {}};
  g.checks.push_back(make_check("radius = sup chi_1 = sup chi_2", worst, 2e-4,
                                "sandwiched order 2, 2 random 2-input qubit channels"));
  return g;
}

VerifyGroup group_conversion(std::uint64_t seed) {
  Rng rng = group_rng(seed, "conversion");
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 5; ++i) {
    CqChannel W = random_channel(rng, 2, 2);
    InputDistribution P = InputDistribution::uniform(2);
    double R = holevo_quantity(W, P) + 0.2;
    double f = dueck_korner_F(W, P, R).value;
    double h = hoeffding_fixed_input(W, P, R, Variant::flat, 2).value;
    worst = std::max(worst, std::abs(f - h));
  }
  VerifyGroup g{"conversion", {}};
  g.checks.push_back(make_check("F matches the flat exponent expression", worst, 5e-4,
                                "5 random channels at R = holevo + 0.2"));
  return g;
}

VerifyGroup group_monotones(std::uint64_t seed) {
  Rng rng = group_rng(seed, "monotones");
  CqChannel W = random_channel(rng, 2, 2);
  InputDistribution P({0.45, 0.55});
  double worst = -std::numeric_limits<double>::infinity();
  for (Variant v : {Variant::petz, Variant::sandwiched, Variant::flat}) {
    std::vector<double> grid =
        v == Variant::petz ? std::vector<double>{0.6, 1.0, 1.5, 2.0}
                           : std::vector<double>{0.6, 1.0, 1.5, 3.0};
    double prev = -std::numeric_limits<double>::infinity();
    for (double a : grid) {
      double chi = chi_alpha(W, P, AlphaPoint(a), v, 1).value;
      worst = std::max(worst, prev - chi);
      prev = chi;
    }
  }
  VerifyGroup g{"monotones", {}};
  g.checks.push_back(make_check("chi nondecreasing in the order", worst, 1e-6,
                                "one random channel, three variants"));
  return g;
}

using GroupFn = std::function<VerifyGroup(std::uint64_t)>;

const std::vector<std::pair<std::string, GroupFn>>& group_table() {
  static const std::vector<std::pair<std::string, GroupFn>> table = {
      {"ordering", group_ordering},   {"variational", group_variational},
      {"limits", group_limits},       {"schur", group_schur},
      {"sibson", group_sibson},       {"blocks", group_blocks},
      {"capacity", group_capacity},   {"conversion", group_conversion},
      {"monotones", group_monotones},
  };
  return table;
}

}  // namespace

bool VerifyGroup::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerifyCheck& c) { return c.passed; });
}

bool VerifyReport::all_passed() const {
  return std::all_of(groups.begin(), groups.end(),
                     [](const VerifyGroup& g) { return g.passed(); });
}

std::vector<std::string> verify_group_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : group_table()) names.push_back(name);
  return names;
}

VerifyReport run_verify_suite(std::uint64_t seed, const std::vector<std::string>& selection) {
  bool all = selection.empty() ||
             std::find(selection.begin(), selection.end(), "all") != selection.end();
  for (const std::string& s : selection) {
    if (s == "all") continue;
    bool known = std::any_of(group_table().begin(), group_table().end(),
                             [&](const auto& g) { return g.first == s; });
    if (!known) throw InputError("verify: unknown group \"" + s + "\"");
  }
  VerifyReport report{seed, {}};
  for (const auto& [name, fn] : group_table()) {
    if (!all && std::find(selection.begin(), selection.end(), name) == selection.end()) continue;
    try {
      report.groups.push_back(fn(seed));
    } catch (const Error& e) {
      // Failures are report entries, never exceptions: a solver that gives up
      // mid-group fails the group instead of aborting the remaining ones.
      VerifyGroup g{name, {}};
      g.checks.push_back(VerifyCheck{"group aborted by a solver error",
                                     std::numeric_limits<double>::infinity(), 0.0, false,
                                     e.what()});
      report.groups.push_back(std::move(g));
    }
  }
  return report;
}

std::string report_to_json(const VerifyReport& report) {
  nlohmann::json j;
  j["seed"] = report.seed;
  j["all_passed"] = report.all_passed();
  nlohmann::json groups = nlohmann::json::array();
  for (const VerifyGroup& g : report.groups) {
    nlohmann::json jg;
    jg["name"] = g.name;
    jg["passed"] = g.passed();
    nlohmann::json checks = nlohmann::json::array();
    for (const VerifyCheck& c : g.checks) {
      nlohmann::json jc;
      jc["name"] = c.name;
      jc["observed"] = c.observed;
      jc["tolerance"] = c.tolerance;
      jc["passed"] = c.passed;
      jc["note"] = c.note;
      checks.push_back(std::move(jc));
    }
    jg["checks"] = std::move(checks);
    groups.push_back(std::move(jg));
  }
  j["groups"] = std::move(groups);
  return j.dump(2) + "\n";
}

}  // namespace qrd
