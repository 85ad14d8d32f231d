// qrd -- command-line front end for the quantum Renyi divergence library.
//
// Subcommands: divergence, capacity, radius, exponent, dueck-korner, pinch,
// schur, verify, sweep.  Machine output (CSV, or a JSON report for verify)
// goes to stdout; a one-line human summary with the wall time goes to
// stderr, so identical commands produce byte-identical stdout.
//
// Exit codes: 0 success, 1 input error, 2 optimizer non-convergence,
// 3 failed verification.
//
// If the environment variable QRD_CONFIG names a file, its JSON object
// overrides the numeric tolerances and caps before any computation runs.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qrd/channel_io.hpp"
#include "qrd/cq_channel.hpp"
#include "qrd/divergences.hpp"
#include "qrd/errors.hpp"
#include "qrd/exponents.hpp"
#include "qrd/schur_weyl.hpp"
#include "qrd/verify.hpp"

namespace {

using namespace qrd;

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Decimal with 17 significant digits: enough to round-trip any double.
std::string fm(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// One result row.  Wall time is deliberately not a column; it goes to the
// stderr summary instead so that stdout is reproducible byte for byte.
void result_row(const std::string& command, const std::string& alpha,
                const std::string& rate, const std::string& variant,
                const std::string& form, double value, double gap) {
  std::printf("command,alpha,R,variant,form,value,gap\n");
  std::printf("%s,%s,%s,%s,%s,%s,%s\n", command.c_str(), alpha.c_str(), rate.c_str(),
              variant.c_str(), form.c_str(), fm(value).c_str(), fm(gap).c_str());
}

double to_double(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    double x = std::stod(s, &pos);
    if (pos != s.size()) throw InputError(std::string("trailing characters in ") + what + ": " + s);
    return x;
  } catch (const std::invalid_argument&) {
    throw InputError(std::string("cannot parse ") + what + ": " + s);
  } catch (const std::out_of_range&) {
    throw InputError(std::string("out of range ") + what + ": " + s);
  }
}

AlphaPoint parse_alpha(const std::string& s) {
  if (s == "inf" || s == "infinity") return AlphaPoint::inf();
  return AlphaPoint(to_double(s, "alpha"));
}

std::string alpha_text(const AlphaPoint& a) { return a.infinite ? "inf" : fm(a.alpha); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

// "lo:hi:step" with step > 0 and lo <= hi, inclusive of hi up to a relative
// step tolerance so that binary rounding cannot drop the endpoint.
std::vector<double> parse_grid(const std::string& s, const char* what) {
  std::vector<std::string> parts = split(s, ':');
  if (parts.size() != 3)
    throw InputError(std::string(what) + " must be lo:hi:step, got: " + s);
  double lo = to_double(parts[0], what);
  double hi = to_double(parts[1], what);
  double step = to_double(parts[2], what);
  if (!(step > 0.0) || hi < lo)
    throw InputError(std::string(what) + " requires lo <= hi and step > 0: " + s);
  std::vector<double> grid;
  for (int k = 0; k <= 1000000; ++k) {
    double x = lo + k * step;
    if (x > hi + 1e-9 * step) return grid;
    grid.push_back(x);
  }
  throw InputError(std::string(what) + " has more than 1e6 points: " + s);
}

InputDistribution parse_input_weights(const std::string& s) {
  std::vector<double> w;
  for (const std::string& part : split(s, ',')) w.push_back(to_double(part, "--input weight"));
  return InputDistribution(std::move(w));
}

// Priority: an explicit --input list, then the prior stored in the channel
// file, then uniform.
InputDistribution pick_input(const ChannelSpec& spec, const std::string& input_flag) {
  if (!input_flag.empty()) return parse_input_weights(input_flag);
  if (spec.prior) return *spec.prior;
  return InputDistribution::uniform(spec.channel.size());
}

std::string partition_text(const Partition& lambda) {
  std::string out;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (i) out += '+';
    out += std::to_string(lambda[i]);
  }
  return out;
}

int run_verify(const std::string& suite, std::uint64_t seed) {
  Timer timer;
  VerifyReport report = run_verify_suite(seed, split(suite, ','));
  std::printf("%s\n", report_to_json(report).c_str());
  int failed = 0;
  for (const VerifyGroup& g : report.groups) {
    if (g.passed()) {
      std::fprintf(stderr, "[PASS] %s (%zu checks)\n", g.name.c_str(), g.checks.size());
      continue;
    }
    ++failed;
    std::fprintf(stderr, "[FAIL] %s\n", g.name.c_str());
    for (const VerifyCheck& c : g.checks)
      if (!c.passed)
        std::fprintf(stderr, "       %s: observed %s > tolerance %s (%s)\n", c.name.c_str(),
                     fm(c.observed).c_str(), fm(c.tolerance).c_str(), c.note.c_str());
  }
  std::fprintf(stderr, "verify: %zu group(s), %d failed, seed %llu (%.1f ms)\n",
               report.groups.size(), failed, static_cast<unsigned long long>(seed), timer.ms());
  return report.all_passed() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qrd: quantum Renyi divergences, channel capacities, and error exponents.\n"
      "States and channels are JSON files; see the channel_io header for the\n"
      "schema.  Machine-readable output goes to stdout, summaries to stderr.\n"
      "Set QRD_CONFIG to a JSON file of tolerance overrides.\n"
      "Exit codes: 0 ok, 1 input error, 2 non-convergence, 3 failed verify."};
  app.require_subcommand(1);

  std::string div_rho, div_sigma, div_alpha = "2", div_variant = "sandwiched";
  CLI::App* div = app.add_subcommand(
      "divergence", "Order-alpha divergence D(rho || sigma) for one variant");
  div->add_option("--rho", div_rho, "state JSON file")->required()->check(CLI::ExistingFile);
  div->add_option("--sigma", div_sigma, "state JSON file")->required()->check(CLI::ExistingFile);
  div->add_option("--alpha", div_alpha, "order (a number, or inf)")->capture_default_str();
  div->add_option("--variant", div_variant, "petz | sandwiched | flat")->capture_default_str();

  std::string pin_rho, pin_sigma;
  double pin_alpha = 2.0;
  int pin_n = 1;
  CLI::App* pin = app.add_subcommand(
      "pinch", "Pinched divergence (1/n) D_alpha of the n-fold pinched pair; "
               "the form column of the output echoes n");
  pin->add_option("--rho", pin_rho, "state JSON file")->required()->check(CLI::ExistingFile);
  pin->add_option("--sigma", pin_sigma, "state JSON file")->required()->check(CLI::ExistingFile);
  pin->add_option("--alpha", pin_alpha, "finite order")->capture_default_str();
  pin->add_option("--n", pin_n, "pinching level, >= 1")->capture_default_str()
      ->check(CLI::PositiveNumber);

  std::string cap_channel, cap_alpha = "2", cap_variant = "sandwiched";
  CLI::App* cap = app.add_subcommand(
      "capacity", "Order-alpha channel capacity sup_P chi_alpha(W, P)");
  cap->add_option("--channel", cap_channel, "channel JSON file")->required()
      ->check(CLI::ExistingFile);
  cap->add_option("--alpha", cap_alpha, "order (a number, or inf)")->capture_default_str();
  cap->add_option("--variant", cap_variant, "petz | sandwiched | flat")->capture_default_str();

  std::string rad_channel, rad_alpha = "2", rad_variant = "sandwiched";
  CLI::App* rad = app.add_subcommand(
      "radius", "Divergence radius min_sigma max_x D_alpha(W(x) || sigma)");
  rad->add_option("--channel", rad_channel, "channel JSON file")->required()
      ->check(CLI::ExistingFile);
  rad->add_option("--alpha", rad_alpha, "order (a number, or inf)")->capture_default_str();
  rad->add_option("--variant", rad_variant, "petz | sandwiched | flat")->capture_default_str();

  std::string exp_channel, exp_input, exp_variant = "sandwiched";
  double exp_rate = 0.0;
  int exp_form = 2;
  CLI::App* exp = app.add_subcommand(
      "exponent", "Strong converse exponent at rate R.  Without --input this is "
                  "the capacity form sup_{a>1} (a-1)/a (R - C_a(W)); with --input "
                  "the fixed-input form over chi_a(W, P)");
  exp->add_option("--channel", exp_channel, "channel JSON file")->required()
      ->check(CLI::ExistingFile);
  exp->add_option("--rate", exp_rate, "rate R in nats, >= 0")->required();
  exp->add_option("--input", exp_input, "fixed input weights, comma separated");
  exp->add_option("--variant", exp_variant, "sandwiched | flat")->capture_default_str();
  exp->add_option("--form", exp_form, "chi form for --input runs: 1 | 2")
      ->capture_default_str()->check(CLI::IsMember({1, 2}));

  std::string dk_channel, dk_input;
  double dk_rate = 0.0;
  CLI::App* dk = app.add_subcommand(
      "dueck-korner", "Conversion exponent F(P, R, W) = min_V sum_x P(x) "
                      "D(V(x) || W(x)) + max(0, R - chi(V, P))");
  dk->add_option("--channel", dk_channel, "channel JSON file")->required()
      ->check(CLI::ExistingFile);
  dk->add_option("--rate", dk_rate, "rate R in nats, >= 0")->required();
  dk->add_option("--input", dk_input, "input weights, comma separated");

  int schur_n = 2, schur_d = 2;
  CLI::App* schur = app.add_subcommand(
      "schur", "Isotypic decomposition of the n-fold d-dimensional space: one "
               "CSV row per Young diagram");
  schur->add_option("--n", schur_n, "number of tensor factors")->required()
      ->check(CLI::PositiveNumber);
  schur->add_option("--d", schur_d, "local dimension")->required()->check(CLI::PositiveNumber);

  std::string ver_suite = "all";
  std::uint64_t ver_seed = 7;
  std::string group_help = "comma-separated group names, or all; groups:";
  for (const std::string& g : verify_group_names()) group_help += " " + g;
  CLI::App* ver = app.add_subcommand(
      "verify", "Re-check the library's structural identities on seeded random "
                "instances; JSON report on stdout, pass/fail lines on stderr");
  ver->add_option("--suite", ver_suite, group_help)->capture_default_str();
  ver->add_option("--seed", ver_seed, "generator seed")->capture_default_str();

  CLI::App* sweep = app.add_subcommand("sweep", "Grid sweeps written as CSV");
  sweep->require_subcommand(1);

  std::string swe_channel, swe_rates = "0:1:0.1";
  CLI::App* swe = sweep->add_subcommand(
      "exponent", "Strong converse exponent over a rate grid; header R,value,alpha_star");
  swe->add_option("--channel", swe_channel, "channel JSON file")->required()
      ->check(CLI::ExistingFile);
  swe->add_option("--rates", swe_rates, "rate grid lo:hi:step")->capture_default_str();

  std::string swc_channel, swc_alphas = "1.1:3:0.1", swc_variant = "sandwiched";
  CLI::App* swc = sweep->add_subcommand(
      "capacity", "Channel capacity over an alpha grid; header alpha,value");
  swc->add_option("--channel", swc_channel, "channel JSON file")->required()
      ->check(CLI::ExistingFile);
  swc->add_option("--alphas", swc_alphas, "alpha grid lo:hi:step")->capture_default_str();
  swc->add_option("--variant", swc_variant, "petz | sandwiched | flat")->capture_default_str();

  std::string swd_rho, swd_sigma, swd_alphas = "0.5:3:0.1", swd_variant = "sandwiched";
  CLI::App* swd = sweep->add_subcommand(
      "divergence", "Divergence over an alpha grid; header alpha,value");
  swd->add_option("--rho", swd_rho, "state JSON file")->required()->check(CLI::ExistingFile);
  swd->add_option("--sigma", swd_sigma, "state JSON file")->required()->check(CLI::ExistingFile);
  swd->add_option("--alphas", swd_alphas, "alpha grid lo:hi:step")->capture_default_str();
  swd->add_option("--variant", swd_variant, "petz | sandwiched | flat")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help and version are successes; parse errors are input errors
  }

  try {
    if (const char* config_path = std::getenv("QRD_CONFIG")) apply_config_file(config_path);

    if (app.got_subcommand(div)) {
      Timer timer;
      DensityOperator rho = read_state_file(div_rho);
      DensityOperator sigma = read_state_file(div_sigma);
      AlphaPoint a = parse_alpha(div_alpha);
      Variant v = variant_from_name(div_variant);
      ExtendedReal d = d_alpha(rho.op(), sigma.op(), a, v);
      result_row("divergence", alpha_text(a), "", div_variant, "", d.value(), 0.0);
      std::fprintf(stderr, "divergence: %s nats [%s, alpha = %s] (%.1f ms)\n",
                   fm(d.value()).c_str(), div_variant.c_str(), alpha_text(a).c_str(), timer.ms());
    } else if (app.got_subcommand(pin)) {
      Timer timer;
      DensityOperator rho = read_state_file(pin_rho);
      DensityOperator sigma = read_state_file(pin_sigma);
      ExtendedReal d = pinched_divergence(rho, sigma, pin_alpha, pin_n);
      result_row("pinch", fm(pin_alpha), "", "", std::to_string(pin_n), d.value(), 0.0);
      std::fprintf(stderr, "pinch: %s nats [alpha = %s, n = %d] (%.1f ms)\n",
                   fm(d.value()).c_str(), fm(pin_alpha).c_str(), pin_n, timer.ms());
    } else if (app.got_subcommand(cap)) {
      Timer timer;
      ChannelSpec spec = read_channel_file(cap_channel);
      AlphaPoint a = parse_alpha(cap_alpha);
      Variant v = variant_from_name(cap_variant);
      CapacityResult r = renyi_capacity(spec.channel, a, v);
      result_row("capacity", alpha_text(a), "", cap_variant, "", r.value, r.inner.gap);
      std::string p_text;
      for (int x = 0; x < r.p_star.size(); ++x)
        p_text += (x ? " " : "") + std::string(spec.channel.labels()[x]) + "=" + fm(r.p_star[x]);
      std::fprintf(stderr, "capacity: %s nats [%s, alpha = %s], p* {%s} (%.1f ms)\n",
                   fm(r.value).c_str(), cap_variant.c_str(), alpha_text(a).c_str(), p_text.c_str(),
                   timer.ms());
    } else if (app.got_subcommand(rad)) {
      Timer timer;
      ChannelSpec spec = read_channel_file(rad_channel);
      AlphaPoint a = parse_alpha(rad_alpha);
      Variant v = variant_from_name(rad_variant);
      RadiusResult r = divergence_radius(spec.channel, a, v);
      result_row("radius", alpha_text(a), "", rad_variant, "", r.value, r.gap);
      std::fprintf(stderr,
                   "radius: %s nats [%s, alpha = %s], lower bound %s, %d iterations (%.1f ms)\n",
                   fm(r.value).c_str(), rad_variant.c_str(), alpha_text(a).c_str(),
                   fm(r.lower).c_str(), r.iterations, timer.ms());
    } else if (app.got_subcommand(exp)) {
      Timer timer;
      ChannelSpec spec = read_channel_file(exp_channel);
      Variant v = variant_from_name(exp_variant);
      if (exp_input.empty() && v == Variant::sandwiched) {
        ScResult r = sc_exponent(spec.channel, exp_rate);
        result_row("exponent", "", fm(exp_rate), exp_variant, "", r.value,
                   std::abs(r.certificate - r.value));
        std::fprintf(stderr, "exponent: %s nats at R = %s, alpha* = %s (%.1f ms)\n",
                     fm(r.value).c_str(), fm(exp_rate).c_str(), alpha_text(r.alpha_star).c_str(),
                     timer.ms());
      } else if (exp_input.empty()) {
        HoeffdingResult r = hoeffding_capacity(spec.channel, exp_rate, v);
        result_row("exponent", "", fm(exp_rate), exp_variant, "", r.value, 0.0);
        std::fprintf(stderr, "exponent: %s nats at R = %s [%s], alpha* = %s (%.1f ms)\n",
                     fm(r.value).c_str(), fm(exp_rate).c_str(), exp_variant.c_str(),
                     alpha_text(r.alpha_star).c_str(), timer.ms());
      } else {
        InputDistribution P = parse_input_weights(exp_input);
        HoeffdingResult r = hoeffding_fixed_input(spec.channel, P, exp_rate, v, exp_form);
        result_row("exponent", "", fm(exp_rate), exp_variant, std::to_string(exp_form), r.value,
                   0.0);
        std::fprintf(stderr,
                     "exponent: %s nats at R = %s [%s, form %d, fixed input], alpha* = %s "
                     "(%.1f ms)\n",
                     fm(r.value).c_str(), fm(exp_rate).c_str(), exp_variant.c_str(), exp_form,
                     alpha_text(r.alpha_star).c_str(), timer.ms());
      }
    } else if (app.got_subcommand(dk)) {
      Timer timer;
      ChannelSpec spec = read_channel_file(dk_channel);
      InputDistribution P = pick_input(spec, dk_input);
      DkResult r = dueck_korner_F(spec.channel, P, dk_rate);
      result_row("dueck-korner", "", fm(dk_rate), "", "", r.value, 0.0);
      std::fprintf(stderr, "dueck-korner: %s nats at R = %s, probe %s (%.1f ms)\n",
                   fm(r.value).c_str(), fm(dk_rate).c_str(), fm(r.probe).c_str(), timer.ms());
    } else if (app.got_subcommand(schur)) {
      Timer timer;
      IsotypicDecomposition dec = isotypic_projections(schur_n, schur_d);
      std::printf("lambda,dim_sym,dim_gl,rank\n");
      for (const IsotypicComponent& c : dec.components)
        std::printf("%s,%lld,%lld,%lld\n", partition_text(c.lambda).c_str(), c.dim_sym, c.dim_gl,
                    std::llround(c.projector.trace().real()));
      int distinct = distinct_eigenvalue_count(universal_symmetric_state(schur_n, schur_d).op());
      std::fprintf(stderr,
                   "schur: %zu components at (n, d) = (%d, %d), v = %lld, universal state has %d "
                   "distinct eigenvalues (%.1f ms)\n",
                   dec.components.size(), schur_n, schur_d, v_factor(schur_n, schur_d), distinct,
                   timer.ms());
    } else if (app.got_subcommand(ver)) {
      return run_verify(ver_suite, ver_seed);
    } else if (app.got_subcommand(sweep)) {
      Timer timer;
      if (sweep->got_subcommand(swe)) {
        ChannelSpec spec = read_channel_file(swe_channel);
        ExponentCurve curve =
            sc_exponent_curve(spec.channel, parse_grid(swe_rates, "--rates"));
        std::printf("R,value,alpha_star\n");
        for (const ExponentSample& s : curve.samples)
          std::printf("%s,%s,%s\n", fm(s.rate).c_str(), fm(s.value).c_str(),
                      alpha_text(s.alpha_star).c_str());
        std::fprintf(stderr, "sweep exponent: %zu rates (%.1f ms)\n", curve.samples.size(),
                     timer.ms());
      } else if (sweep->got_subcommand(swc)) {
        ChannelSpec spec = read_channel_file(swc_channel);
        Variant v = variant_from_name(swc_variant);
        std::vector<double> alphas = parse_grid(swc_alphas, "--alphas");
        std::printf("alpha,value\n");
        for (double a : alphas) {
          CapacityResult r = renyi_capacity(spec.channel, AlphaPoint(a), v);
          std::printf("%s,%s\n", fm(a).c_str(), fm(r.value).c_str());
        }
        std::fprintf(stderr, "sweep capacity: %zu orders [%s] (%.1f ms)\n", alphas.size(),
                     swc_variant.c_str(), timer.ms());
      } else {
        DensityOperator rho = read_state_file(swd_rho);
        DensityOperator sigma = read_state_file(swd_sigma);
        Variant v = variant_from_name(swd_variant);
        std::vector<double> alphas = parse_grid(swd_alphas, "--alphas");
        std::printf("alpha,value\n");
        for (double a : alphas) {
          ExtendedReal d = d_alpha(rho.op(), sigma.op(), AlphaPoint(a), v);
          std::printf("%s,%s\n", fm(a).c_str(), fm(d.value()).c_str());
        }
        std::fprintf(stderr, "sweep divergence: %zu orders [%s] (%.1f ms)\n", alphas.size(),
                     swd_variant.c_str(), timer.ms());
      }
    }
    return 0;
  } catch (const NonConvergence& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
