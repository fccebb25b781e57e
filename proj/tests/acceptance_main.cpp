//---------------------------------------------------------------------------//
// Copyright 2026 the pairtherm developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
// End-to-end acceptance suite. Each criterion prints a single PASS/FAIL
// line; the process exits nonzero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "oracles.hpp"
#include "pairtherm/bogolubov.hpp"
#include "pairtherm/kinematics.hpp"
#include "pairtherm/montecarlo.hpp"
#include "pairtherm/rng.hpp"
#include "pairtherm/states.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pairtherm;

namespace {

int g_failures = 0;

void report(int number, const std::string& what, bool pass,
            const std::string& detail = "") {
  std::printf("%s  %2d: %s%s%s\n", pass ? "PASS" : "FAIL", number,
              what.c_str(), detail.empty() ? "" : " -- ",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  double seconds = 0.0;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(PAIRTHERM_BIN) + " " + args + " 2>/dev/null";
  const auto start = std::chrono::steady_clock::now();
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {};
  CliResult result;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
    result.out.append(buf, n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return result;
}

fs::path work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() /
             ("pairtherm_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const PhysicalConstants pc = codata2018();

// --- criteria ---------------------------------------------------------- //

void criterion_1_squeezed_discriminant() {
  bool pass = true;
  std::string detail;
  for (double zeta : {0.5, 1.0, 2.0}) {
    char args[256];
    std::snprintf(args, sizeof args,
                  "simulate --source squeezed --zeta %.17g --flashes 1000000 "
                  "--seed 2026",
                  zeta);
    const auto r = run_cli(args);
    if (r.exit_code != 0) {
      pass = false;
      detail = "exit code " + std::to_string(r.exit_code);
      break;
    }
    const json results = json::parse(r.out)["results"];
    const bool zero = results["var_nab"].get<double>() == 0.0;
    const bool label = results["classification"] == "squeezed";
    const bool fast = r.seconds < 5.0;
    if (!(zero && label && fast)) {
      pass = false;
      detail = "zeta=" + fmt(zeta) + " var_nab=" +
               results["var_nab"].dump() + " class=" +
               results["classification"].dump() + " t=" + fmt(r.seconds) + "s";
      break;
    }
    detail = "var_nab identically 0, classified squeezed, " +
             fmt(r.seconds) + " s/run";
  }
  report(1, "squeezed source: zero count-difference variance", pass, detail);
}

void criterion_2_thermal_discriminant() {
  const auto r = run_cli(
      "simulate --source thermal --nbar_a 1 --nbar_b 1 --flashes 1000000 "
      "--seed 2026");
  bool pass = r.exit_code == 0;
  std::string detail;
  if (pass) {
    const json results = json::parse(r.out)["results"];
    const double var = results["var_nab"].get<double>();
    const double se = results["var_nab_stderr"].get<double>();
    pass = std::abs(var - 4.0) <= 3.0 * se && r.seconds < 5.0 &&
           results["classification"] == "thermal";
    detail = "var_nab=" + fmt(var) + " stderr=" + fmt(se) + ", " +
             fmt(r.seconds) + " s";
  }
  report(2, "thermal source: variance 4.0 within 3 standard errors", pass,
         detail);
}

void criterion_3_lossy_squeezed() {
  // zeta with sinh^2 zeta = 1; eta = 0.8 -> Var = 2 eta (1 - eta) = 0.32
  const auto r = run_cli(
      "simulate --source squeezed --zeta 0.88137358701954302 --eta_a 0.8 "
      "--eta_b 0.8 --flashes 1000000 --seed 2026");
  bool pass = r.exit_code == 0;
  std::string detail;
  if (pass) {
    const json results = json::parse(r.out)["results"];
    const double var = results["var_nab"].get<double>();
    const double se = results["var_nab_stderr"].get<double>();
    pass = std::abs(var - 0.32) <= 3.0 * se;
    detail = "var_nab=" + fmt(var) + " stderr=" + fmt(se);
  }
  report(3, "lossy squeezed variance matches 0.32 within 3 standard errors",
         pass, detail);
}

void criterion_4_states_identities() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;

  for (int i = 0; i < 100 && pass; ++i) {
    const double zeta = 5.0 * i / 99.0;
    const states::SqueezeParameter z(zeta);
    const auto d = states::number_distribution_squeezed(z, 400);
    double sum = 0.0;
    for (double p : d.probs) sum += p;
    if (std::abs(sum + d.tail_mass - 1.0) > 1e-12) {
      pass = false;
      detail = "normalization off at zeta=" + fmt(zeta);
      break;
    }
    if (zeta == 0.0) continue;
    const long double p = states::geometric_ratio_squeezed(z);
    const double nbar = states::mean_occupation_squeezed(z);
    // closed-form tail corrections for the truncated sums
    const long double pM = std::pow(p, 401.0L);
    long double mean = pM * (401.0L + p / (1.0L - p));
    long double second =
        pM * (401.0L * 401.0L + 2.0L * 401.0L * p / (1.0L - p) +
              p * (1.0L + p) / ((1.0L - p) * (1.0L - p)));
    for (std::size_t n = 0; n < d.probs.size(); ++n) {
      mean += static_cast<long double>(n) * d.probs[n];
      second += static_cast<long double>(n) * n * d.probs[n];
    }
    const double mean_d = static_cast<double>(mean);
    const double var_d = static_cast<double>(second - mean * mean);
    if (std::abs(mean_d - nbar) > 1e-10 * std::max(1.0, nbar) ||
        std::abs(var_d - nbar * (nbar + 1.0)) >
            1e-10 * std::max(1.0, nbar * (nbar + 1.0))) {
      pass = false;
      detail = "moment mismatch at zeta=" + fmt(zeta);
    }
  }

  for (int i = 0; i <= 100 && pass; ++i) {
    const double x = 0.1 * std::pow(1000.0, i / 100.0);
    const states::Temperature t(250.0);
    const states::ModeFrequency omega(x * pc.k_B * 250.0 / pc.hbar);
    const auto zeta = states::squeeze_from_temperature(omega, t, pc);
    const auto back = states::effective_temperature(omega, zeta, pc);
    if (!back || std::abs(back->kelvin() - 250.0) > 1e-12 * 250.0) {
      pass = false;
      detail = "round trip off at x=" + fmt(x);
    }
  }

  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  if (seconds >= 1.0) {
    pass = false;
    detail = "runtime " + fmt(seconds) + " s";
  } else if (pass) {
    detail = fmt(seconds) + " s";
  }
  report(4, "number-statistics identities over the zeta and x grids", pass,
         detail);
}

void criterion_5_beta_limits() {
  bool pass = true;
  std::string detail;

  const bogolubov::RefractiveTransition profile(1.0, 2.0, 1e-15);
  const double t = bogolubov::tau(profile).tau;
  const auto k_for = [&](double ck_tau) { return ck_tau / (pc.c * t); };

  // sudden plateau
  const double sudden =
      bogolubov::beta_squared_diagonal(profile, k_for(1e-6), pc);
  if (std::abs(sudden / 0.125 - 1.0) > 1e-6) {
    pass = false;
    detail = "sudden value " + fmt(sudden);
  }

  // adiabatic Boltzmann ratio at c k tau = 10
  const double k10 = k_for(10.0);
  const double exact = bogolubov::beta_squared_diagonal(profile, k10, pc);
  const double boltzmann = bogolubov::beta_squared_adiabatic(
      profile, states::ModeFrequency(pc.c * k10 / profile.n_out()));
  if (std::abs(exact / boltzmann - 1.0) > 0.01) {
    pass = false;
    detail = "adiabatic ratio " + fmt(exact / boltzmann);
  }

  // log-space vs direct on the overlap (largest sinh argument in [10, 30])
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double ck_tau = 2.5 + 5.0 * i / 100.0;
    const double direct =
        bogolubov::detail::beta_squared_direct(ck_tau, 2.0 * ck_tau,
                                               4.0 * ck_tau);
    const double logspace =
        bogolubov::detail::beta_squared_logspace(ck_tau, 2.0 * ck_tau,
                                                 4.0 * ck_tau);
    worst = std::max(worst, std::abs(logspace / direct - 1.0));
  }
  if (worst > 1e-10) {
    pass = false;
    detail = "overlap mismatch " + fmt(worst);
  }
  if (pass) {
    detail = "sudden rel err " + fmt(std::abs(sudden / 0.125 - 1.0)) +
             ", overlap " + fmt(worst);
  }
  report(5, "pair-creation factor: sudden limit, Boltzmann tail, log-space",
         pass, detail);
}

void criterion_6_fine_tuning() {
  bool pass = true;
  std::string detail;

  // synthetic single-temperature spectrum
  {
    bogolubov::BetaSpectrum s;
    const int n = 50;
    s.omegas.resize(n);
    s.zetas.resize(n);
    s.beta_sq.resize(n);
    s.temps_kelvin.resize(n);
    s.density.resize(n);
    for (int i = 0; i < n; ++i) {
      const double x = 0.5 * std::pow(40.0, i / (n - 1.0));
      s.omegas[i] = x * pc.k_B * 20000.0 / pc.hbar;
      const auto zeta = states::squeeze_from_temperature(
          states::ModeFrequency(s.omegas[i]), states::Temperature(20000.0),
          pc);
      s.zetas[i] = zeta.value();
    }
    const auto r = bogolubov::fine_tuning_residual(s, s.omegas[0],
                                                   s.omegas[n - 1]);
    if (!(r.coefficient_of_variation < 1e-12)) {
      pass = false;
      detail = "synthetic CV " + fmt(r.coefficient_of_variation);
    }
  }

  const bogolubov::RefractiveTransition profile(1.0, 1.3, 1e-15);
  const double t = bogolubov::tau(profile).tau;
  const auto window = [&](double lo, double hi) {
    Eigen::ArrayXd grid(40);
    for (int i = 0; i < 40; ++i) {
      grid[i] = lo * std::pow(hi / lo, i / 39.0) / (profile.n_out() * t);
    }
    const auto s = bogolubov::build_spectrum(profile, grid, pc);
    return bogolubov::fine_tuning_residual(s, grid[0], grid[39])
        .coefficient_of_variation;
  };
  const double adiabatic_cv = window(5.0, 20.0);
  const double sudden_cv = window(1e-4, 1e-2);
  if (!(adiabatic_cv < 0.05)) {
    pass = false;
    detail = "adiabatic CV " + fmt(adiabatic_cv);
  }
  if (!(sudden_cv > 0.5)) {
    pass = false;
    detail = "sudden CV " + fmt(sudden_cv);
  }
  if (pass) {
    detail = "adiabatic CV " + fmt(adiabatic_cv) + ", sudden CV " +
             fmt(sudden_cv);
  }
  report(6, "fine-tuning residual separates the two regimes", pass, detail);
}

void criterion_7_form_factor() {
  bool pass = true;
  std::string detail;

  const kinematics::BubbleGeometry geom(1.0);
  const double vol = 4.0 / 3.0 * 3.14159265358979323846;
  if (std::abs(kinematics::form_factor(0.0, geom) / vol - 1.0) > 1e-12) {
    pass = false;
    detail = "S(0) off";
  }

  const double tan_root =
      oracles::bisect([](double x) { return std::tan(x) - x; }, 4.2, 4.6);
  const double lib_root = oracles::bisect(
      [&](double q) { return kinematics::form_factor(q, geom); }, 4.0, 5.0);
  if (std::abs(lib_root - 4.493409) > 1e-5 ||
      std::abs(lib_root - tan_root) > 1e-9) {
    pass = false;
    detail = "first zero " + fmt(lib_root);
  }

  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = 1e-4 * std::pow(100.0, i / 100.0);
    const double series = kinematics::detail::shape_normalized_series(x);
    const double closed = kinematics::detail::shape_normalized_closed(x);
    worst = std::max(worst, std::abs(series / closed - 1.0));
  }
  if (worst > 1e-10) {
    pass = false;
    detail = "series/closed mismatch " + fmt(worst);
  }
  if (pass) {
    detail = "zero at " + fmt(lib_root) + ", branch agreement " + fmt(worst);
  }
  report(7, "form factor: volume limit, first zero, series consistency", pass,
         detail);
}

void criterion_8_angular() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  const kinematics::BubbleGeometry geom(1.0);
  const int samples = 1000000;
  const int bins = 50;

  double prev_median = 4.0;
  std::string pvals;
  for (double kR : {0.1, 1.0, 10.0, 100.0}) {
    rng::Stream stream(20260808, 0);
    std::vector<double> xs(samples);
    for (int i = 0; i < samples; ++i) {
      const double theta =
          kinematics::sample_pair_direction(kR, geom, stream).deviation_angle;
      xs[i] = 2.0 * kR * std::sin(0.5 * theta);
    }
    std::vector<double> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    const double median_theta =
        2.0 * std::asin(std::min(1.0, sorted[samples / 2] / (2.0 * kR)));
    if (median_theta >= prev_median) {
      pass = false;
      detail = "median not decreasing at kR=" + fmt(kR);
    }
    prev_median = median_theta;

    // equal-probability bin edges from the quadrature CDF
    std::vector<double> probe(4096);
    for (int i = 0; i < 4096; ++i) {
      probe[i] = 2.0 * kR * (i + 1) / 4096.0;
    }
    const auto cdf_probe = oracles::angular_cdf_reference(probe);
    const double total = cdf_probe.back();
    std::vector<double> edges(bins - 1);
    for (int b = 1; b < bins; ++b) {
      const double target = total * b / bins;
      // invert the tabulated CDF by binary search + local refinement
      std::size_t lo = 0, hi = probe.size() - 1;
      while (lo + 1 < hi) {
        const std::size_t mid = (lo + hi) / 2;
        (cdf_probe[mid] < target ? lo : hi) = mid;
      }
      const double x0 = probe[lo];
      const double x1 = probe[hi];
      const double c0 = cdf_probe[lo];
      const double c1 = cdf_probe[hi];
      edges[b - 1] = x0 + (x1 - x0) * (target - c0) / (c1 - c0);
    }

    std::vector<std::int64_t> counts(bins, 0);
    for (double x : xs) {
      const auto it = std::upper_bound(edges.begin(), edges.end(), x);
      ++counts[static_cast<std::size_t>(it - edges.begin())];
    }
    const double expected = static_cast<double>(samples) / bins;
    double chi2 = 0.0;
    for (std::int64_t c : counts) {
      const double d = static_cast<double>(c) - expected;
      chi2 += d * d / expected;
    }
    const double p = oracles::chi2_pvalue(chi2, bins - 1);
    pvals += (pvals.empty() ? "p=" : ",") + fmt(p);
    if (!(p > 0.01)) {
      pass = false;
      detail = "chi2 p-value " + fmt(p) + " at kR=" + fmt(kR);
    }
  }

  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  if (seconds >= 10.0) {
    pass = false;
    detail = "runtime " + fmt(seconds) + " s";
  } else if (pass) {
    detail = pvals + ", medians decreasing, " + fmt(seconds) + " s";
  }
  report(8, "angular correlations match the quadrature density", pass, detail);
}

void criterion_9_determinism() {
  bool pass = true;
  std::string detail;
  const fs::path dir = work_dir();

  // simulate: different worker counts, same seed
  const auto ev = [&](int i) { return (dir / ("det_ev" + std::to_string(i) + ".csv")).string(); };
  const std::string base =
      "simulate --source thermal --nbar_a 1.3 --nbar_b 0.6 --eta_a 0.9 "
      "--eta_b 0.7 --flashes 300000 --seed 77 ";
  const auto s1 = run_cli(base + "--threads 1 --events " + ev(1));
  const auto s2 = run_cli(base + "--threads 8 --events " + ev(2));
  if (s1.exit_code != 0 || s2.exit_code != 0 ||
      json::parse(s1.out)["results"].dump() !=
          json::parse(s2.out)["results"].dump() ||
      slurp(ev(1)) != slurp(ev(2))) {
    pass = false;
    detail = "simulate differs across worker counts";
  }

  // angular: same seeded config twice
  const std::string ang =
      "angular --k_mag 3e6 --radius_m 1e-6 --samples 200000 --seed 5 --csv ";
  const auto a1 = run_cli(ang + (dir / "det_a1.csv").string());
  const auto a2 = run_cli(ang + (dir / "det_a2.csv").string());
  if (a1.exit_code != 0 || a2.exit_code != 0 ||
      slurp(dir / "det_a1.csv") != slurp(dir / "det_a2.csv") ||
      json::parse(a1.out)["results"].dump() !=
          json::parse(a2.out)["results"].dump()) {
    pass = false;
    detail = "angular differs between identical runs";
  }

  // discriminate: same events file twice
  const auto d1 = run_cli("discriminate --eta_a 0.9 --eta_b 0.7 --events " + ev(1));
  const auto d2 = run_cli("discriminate --eta_a 0.9 --eta_b 0.7 --events " + ev(2));
  if (d1.exit_code != 0 || d2.exit_code != 0 ||
      json::parse(d1.out)["results"].dump() !=
          json::parse(d2.out)["results"].dump()) {
    pass = false;
    detail = "discriminate differs";
  }
  report(9, "seeded commands are byte-reproducible across worker counts", pass,
         detail);
}

void criterion_10_temperature_crosscheck() {
  bool pass = true;
  std::string detail;
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i < 10 && pass; ++i) {
    const double n_in = 1.0 + 0.15 * i;
    const double n_out = 1.05 + 0.11 * (9 - i);
    const double t0 = 1e-15 * std::pow(10.0, i % 4);
    char args[256];
    std::snprintf(args, sizeof args,
                  "temperature --n_in %.17g --n_out %.17g --t0_s %.17g", n_in,
                  n_out, t0);
    const auto r = run_cli(args);
    if (r.exit_code != 0) {
      pass = false;
      detail = "exit " + std::to_string(r.exit_code);
      break;
    }
    const json results = json::parse(r.out)["results"];
    const double ratio = results["composed_to_formula_ratio"].get<double>();
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    if (std::abs(ratio - 2.0) > 1e-6) {
      pass = false;
      detail = "ratio " + fmt(ratio);
    }
  }
  if (pass && hi - lo > 1e-9) {
    pass = false;
    detail = "ratio drifts: " + fmt(lo) + " .. " + fmt(hi);
  }
  if (pass) detail = "constant ratio " + fmt(0.5 * (lo + hi));
  report(10, "both adiabatic temperature routes reported, ratio constant at 2",
         pass, detail);
}

}  // namespace

int main() {
  criterion_1_squeezed_discriminant();
  criterion_2_thermal_discriminant();
  criterion_3_lossy_squeezed();
  criterion_4_states_identities();
  criterion_5_beta_limits();
  criterion_6_fine_tuning();
  criterion_7_form_factor();
  criterion_8_angular();
  criterion_9_determinism();
  criterion_10_temperature_crosscheck();

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
