// Batch front-end for the threshold-scattering toolkit.
//
// Subcommands:
//   constants       --m <int>                      kernel-constant suite
//   kernel-check    --m <int> --samples --seed     route cross-validation
//   threshold       --potential <file>             null-space classification
//   probe           --p --operator --scales        L^p dilation probes
//   representation  --m <int> --lambda <float>     pairing-route comparison
//   run             --config <json>                dispatch from a JSON config
//
// Every run writes <task>-report.csv and <task>-verdict.json into --output
// (default: current directory).  Reports are byte-identical for identical
// (config, seed) pairs: no timestamps, fixed formatting, seeded generators.
// Exit codes: 0 success, 1 a named numerical check failed, 2 usage error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "threshscatter/grid.hpp"
#include "threshscatter/kernels.hpp"
#include "threshscatter/means.hpp"
#include "threshscatter/numeric.hpp"
#include "threshscatter/report.hpp"
#include "threshscatter/threshold.hpp"
#include "threshscatter/waveop.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string output_dir = ".";
  std::uint64_t seed = 0;
};

/// Collects checks and key/value results, then writes the CSV table and the
/// JSON verdict and decides the exit code.
class RunReport {
 public:
  RunReport(std::string task, const CommonOpts& common)
      : task_(std::move(task)), common_(common) {
    verdict_["task"] = task_;
    verdict_["seed"] = common.seed;
    const ts::GridSpec g = ts::default_grid_spec();
    verdict_["grid"] = {{"n", g.n}, {"rmin", g.rmin}, {"rmax", g.rmax}};
    verdict_["tolerances"] = json::object();
  }

  void set(const std::string& key, const json& v) { verdict_[key] = v; }

  double tolerance(const std::string& name, double v) {
    verdict_["tolerances"][name] = v;
    return v;
  }

  void check(const std::string& id, bool pass, double value, double tol,
             std::string detail = "") {
    checks_.push_back(ts::CheckLine{id, pass, value, tol, std::move(detail)});
  }

  /// |a - b| / max(|b|, floor) <= tol as a named check; returns the ratio.
  double check_rel(const std::string& id, ts::complex a, ts::complex b,
                   double tol, std::string detail = "") {
    const double rel = std::abs(a - b) / std::max(std::abs(b), 1e-300);
    check(id, rel <= tol, rel, tol, std::move(detail));
    return rel;
  }

  int finish(const ts::CsvTable* table) {
    namespace fs = std::filesystem;
    fs::create_directories(common_.output_dir);
    const fs::path base(common_.output_dir);
    if (table) table->write((base / (task_ + "-report.csv")).string());
    json checks = json::array();
    for (const ts::CheckLine& c : checks_) {
      json jc = {{"id", c.id},
                 {"pass", c.pass},
                 {"value", c.value},
                 {"tolerance", c.tolerance}};
      if (!c.detail.empty()) jc["detail"] = c.detail;
      checks.push_back(jc);
    }
    verdict_["checks"] = checks;
    const bool ok = ts::all_passed(checks_);
    verdict_["status"] = ok ? "pass" : "fail";
    std::ofstream vf((base / (task_ + "-verdict.json")).string(),
                     std::ios::binary);
    vf << verdict_.dump(2) << "\n";
    for (const ts::CheckLine& c : checks_)
      std::cout << ts::format_check_line(c) << "\n";
    if (!ok) {
      for (const ts::CheckLine& c : checks_)
        if (!c.pass) {
          std::cout << "failed: " << c.id << "\n";
          break;
        }
    }
    return ok ? 0 : 1;
  }

 private:
  std::string task_;
  CommonOpts common_;
  json verdict_;
  std::vector<ts::CheckLine> checks_;
};

std::string fmt(double v) { return ts::format_double(v); }

/// Deterministic uniform draws in (0, 1]: raw 53-bit mantissas, identical on
/// every platform for a given seed.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  double next() {
    // splitmix64 step
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return double((z >> 11) + 1ull) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// constants
// ---------------------------------------------------------------------------

int run_constants(int m, const CommonOpts& common) {
  RunReport rep("constants", common);
  rep.set("m", m);
  ts::CsvTable table({"name", "value_re", "value_im"});
  auto row = [&](const std::string& name, ts::complex v) {
    table.add_row({name, fmt(v.real()), fmt(v.imag())});
  };

  row("zero-energy-constant", ts::zero_energy_constant(m));
  row("total-weight", ts::dm_constant(m));

  if (m % 2 == 1) {
    const auto coeff = ts::odd_kernel_coefficients(m);
    for (std::size_t j = 0; j < coeff.size(); ++j)
      row("kernel-coefficient-" + std::to_string(j), coeff[j]);
    if (m >= 5) {
      // i C_0 + C_1 = 0 reduces to equality of the two leading rational
      // weights, so it can be checked exactly.
      const auto q = ts::odd_kernel_rationals(m);
      const bool exact = q[0] == q[1];
      const double resid = std::abs(double(q[0].num) / double(q[0].den) -
                                    double(q[1].num) / double(q[1].den));
      rep.check("odd-leading-cancellation", exact, resid,
                rep.tolerance("odd-leading-cancellation", 0.0),
                "exact rational comparison");
    }
    const ts::Rational dt = ts::tilde_dm_odd(m);
    rep.check("odd-binomial-sum-one", dt == ts::Rational(1),
              std::abs(double(dt.num) / double(dt.den) - 1.0),
              rep.tolerance("odd-binomial-sum-one", 0.0),
              "exact rational comparison");
    if (m == 5) {
      rep.check_rel("half-weight", ts::dm_constant(5), 0.5,
                    rep.tolerance("half-weight", 1e-14));
      rep.check_rel("zero-energy-normalization",
                    8.0 * ts::pi * ts::pi * ts::zero_energy_constant(5), 1.0,
                    rep.tolerance("zero-energy-normalization", 1e-14));
    }
  } else {
    rep.check("weight-identity-residual", ts::shin_identity_residual(m) <=
                                              1e-10,
              ts::shin_identity_residual(m),
              rep.tolerance("weight-identity-residual", 1e-10));
    const auto dmj = ts::dmj_constants(m);
    double sum = 0.0;
    for (std::size_t j = 0; j < dmj.size(); ++j) {
      row("weight-split-" + std::to_string(j), dmj[j]);
      sum += dmj[j];
    }
    rep.check("weight-split-sum-one", std::abs(sum - 1.0) <= 1e-10,
              std::abs(sum - 1.0), rep.tolerance("weight-split-sum-one", 1e-10));
    // Unit moments of the half-line functionals against the factorial ratio.
    const int nu = (m - 2) / 2;
    double worst = 0.0;
    for (int j = 0; j <= nu; ++j) {
      const ts::SuperpositionRule rule = ts::make_superposition_rule(m, j);
      const ts::complex tj = ts::superposition_functional(
          rule, [](double) { return ts::complex{1.0, 0.0}; });
      const ts::complex denom =
          std::pow(ts::complex{0.0, -2.0}, j) * ts::binomial(nu, j);
      const double ref = ts::superposition_moment_reference(m, j);
      worst = std::max(worst, std::abs(tj / denom - ref) / ref);
    }
    rep.check("unit-moment-factorial", worst <= 1e-10, worst,
              rep.tolerance("unit-moment-factorial", 1e-10),
              "all phase indices");
  }
  return rep.finish(&table);
}

// ---------------------------------------------------------------------------
// kernel-check
// ---------------------------------------------------------------------------

int run_kernel_check(int m, int samples, const CommonOpts& common) {
  RunReport rep("kernel-check", common);
  rep.set("m", m);
  rep.set("samples", samples);
  ts::CsvTable table({"index", "lambda", "r", "rel_error"});
  Uniform rng(common.seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double lambda = 2.0 * rng.next();
    const double r = 0.1 + 9.9 * rng.next();
    const ts::complex general =
        ts::eval_kernel_general(m, ts::complex{lambda, 0.0}, r);
    const ts::complex other =
        (m % 2 == 1) ? ts::eval_kernel_odd(m, ts::complex{lambda, 0.0}, r)
                     : ts::eval_kernel_even(m, ts::complex{lambda, 0.0}, r);
    const double rel = std::abs(general - other) / std::abs(general);
    worst = std::max(worst, rel);
    table.add_row({std::to_string(i), fmt(lambda), fmt(r), fmt(rel)});
  }
  rep.check("kernel-route-agreement", worst <= 1e-6, worst,
            rep.tolerance("kernel-route-agreement", 1e-6),
            std::to_string(samples) + " samples");
  return rep.finish(&table);
}

// ---------------------------------------------------------------------------
// threshold
// ---------------------------------------------------------------------------

const char* kind_name(ts::ThresholdKind k) {
  switch (k) {
    case ts::ThresholdKind::regular: return "regular";
    case ts::ThresholdKind::first_kind: return "first";
    case ts::ThresholdKind::second_kind: return "second";
    case ts::ThresholdKind::third_kind: return "third";
  }
  return "unknown";
}

int run_threshold(const std::string& potential_path,
                  const std::string& expect_kind, const CommonOpts& common) {
  RunReport rep("threshold", common);
  rep.set("potential", potential_path);
  const ts::RadialProfile V = ts::read_profile(potential_path);
  const ts::ThresholdClassification cls = ts::classify_threshold(V);
  rep.set("kind", kind_name(cls.kind));

  ts::CsvTable table({"sector", "vector", "sigma", "tolerance", "zeroth",
                      "zeroth_scale", "dipole", "dipole_scale", "grade"});
  for (const ts::SectorNullSpace& sec : cls.sectors) {
    if (sec.vectors.empty()) {
      const double sigma = sec.smallest_singular_values.empty()
                               ? 0.0
                               : sec.smallest_singular_values.front();
      table.add_row({std::to_string(sec.ell), "-", fmt(sigma), fmt(sec.tol),
                     "-", "-", "-", "-", "-"});
      continue;
    }
    for (std::size_t k = 0; k < sec.vectors.size(); ++k) {
      const ts::NullVectorMoments mom =
          ts::null_vector_moments(V, sec.vectors[k]);
      table.add_row({std::to_string(sec.ell), std::to_string(k),
                     fmt(sec.smallest_singular_values[k]), fmt(sec.tol),
                     fmt(mom.zeroth), fmt(mom.zeroth_scale), fmt(mom.dipole),
                     fmt(mom.dipole_scale),
                     std::to_string(ts::moment_grade(mom))});
    }
  }

  if (cls.kind == ts::ThresholdKind::first_kind ||
      cls.kind == ts::ThresholdKind::third_kind) {
    const ts::CanonicalResonance canon =
        ts::canonical_resonance(V, cls.sectors.front());
    const ts::complex coupling = ts::inner_product(V, canon.phi_c);
    rep.set("resonance", {{"coupling_re", coupling.real()},
                          {"coupling_im", coupling.imag()},
                          {"transmission_re", canon.transmission.real()},
                          {"transmission_im", canon.transmission.imag()},
                          {"tail_coefficient", canon.tail_coefficient}});
  }

  if (!expect_kind.empty())
    rep.check("threshold-kind", expect_kind == kind_name(cls.kind),
              expect_kind == kind_name(cls.kind) ? 0.0 : 1.0,
              rep.tolerance("threshold-kind", 0.0),
              "expected " + expect_kind + ", got " + kind_name(cls.kind));
  return rep.finish(&table);
}

// ---------------------------------------------------------------------------
// probe
// ---------------------------------------------------------------------------

int run_probe(double p, const std::string& tag,
              const std::vector<double>& scales_in, const std::string& expect,
              const CommonOpts& common) {
  RunReport rep("probe", common);
  rep.set("p", p);
  rep.set("operator", tag);
  const std::vector<double> scales =
      scales_in.empty() ? ts::default_probe_scales() : scales_in;

  std::function<ts::RadialProfile(const ts::RadialProfile&)> op;
  int ell = 0;
  if (tag == "zs" || tag == "zs-corrected") {
    const ts::ManufacturedPair mk = ts::manufacture_potential(0);
    const ts::SectorNullSpace sec = ts::threshold_null_space(mk.V, 0);
    const ts::CanonicalResonance canon = ts::canonical_resonance(mk.V, sec);
    const ts::FirstKindOperator zs =
        ts::make_first_kind_operator(mk.V, canon);
    if (tag == "zs")
      op = [zs](const ts::RadialProfile& u) { return zs.apply(u); };
    else
      op = [zs](const ts::RadialProfile& u) { return zs.apply_corrected(u); };
  } else if (tag == "zs1" || tag == "zs1-corrected") {
    ell = 1;
    const ts::ManufacturedPair mk = ts::manufacture_potential(1);
    const ts::SectorNullSpace sec = ts::threshold_null_space(mk.V, 1);
    const ts::SecondKindOperator zs1 =
        ts::make_second_kind_operator(mk.V, sec.vectors);
    if (tag == "zs1")
      op = [zs1](const ts::RadialProfile& u) { return zs1.apply(u); };
    else
      op = [zs1](const ts::RadialProfile& u) {
        return zs1.apply_corrected(u);
      };
  } else {
    throw CLI::ValidationError(
        "--operator must be zs, zs-corrected, zs1, or zs1-corrected");
  }

  const ts::GridSpec g = ts::default_grid_spec();
  const ts::RadialProfile u = ts::RadialProfile::sample(
      3, ell, 0.0, ts::log_grid(g), [&](double r) {
        const double bump = std::exp(-0.5 * (r - 2.0) * (r - 2.0));
        return ts::complex{(ell == 0 ? 1.0 : r / (1.0 + r)) * bump, 0.0};
      });

  const ts::DilationProbe probe = ts::run_dilation_probe(op, u, scales);
  const ts::ProbeResult res =
      ts::assess_probe(probe, p, rep.tolerance("slope-threshold", 0.15));

  ts::CsvTable table({"scale", "input_norm", "output_norm", "ratio"});
  for (std::size_t i = 0; i < scales.size(); ++i) {
    const double in = ts::norm_lp(probe.inputs[i], p);
    const double out = ts::norm_lp(probe.outputs[i], p);
    table.add_row({fmt(scales[i]), fmt(in), fmt(out), fmt(res.ratios[i])});
  }
  rep.set("slope", res.slope);
  rep.set("spread", res.spread);
  rep.set("verdict", res.growing ? "growing" : "bounded");
  if (!expect.empty())
    rep.check("probe-verdict",
              expect == (res.growing ? "growing" : "bounded"), res.slope,
              0.15, "expected " + expect);
  return rep.finish(&table);
}

// ---------------------------------------------------------------------------
// representation
// ---------------------------------------------------------------------------

int run_representation(int m, double lambda, const CommonOpts& common) {
  RunReport rep("representation", common);
  rep.set("m", m);
  rep.set("lambda", lambda);
  const ts::GridSpec g = ts::default_grid_spec();
  const std::vector<double> r = ts::log_grid(g);
  const ts::RadialProfile u = ts::RadialProfile::sample(
      m, 0, 0.0, r,
      [](double x) { return ts::complex{std::exp(-(x - 1.0) * (x - 1.0)), 0.0}; });
  const ts::RadialProfile v = ts::RadialProfile::sample(
      m, 0, 0.0, r, [](double x) {
        return ts::complex{std::exp(-0.5 * (x - 2.0) * (x - 2.0)), 0.0};
      });

  const ts::complex spectral = ts::pairing_spectral(v, u, lambda);
  const ts::complex repr = (m % 2 == 1)
                               ? ts::pairing_representation_odd(v, u, lambda)
                               : ts::pairing_representation_even(v, u, lambda);
  ts::CsvTable table({"route", "value_re", "value_im"});
  table.add_row({"spectral", fmt(spectral.real()), fmt(spectral.imag())});
  table.add_row({"representation", fmt(repr.real()), fmt(repr.imag())});
  rep.check_rel("representation-agreement", repr, spectral,
                rep.tolerance("representation-agreement", 1e-5));
  if (m % 2 == 0) {
    const ts::complex tilde =
        ts::pairing_representation_even(v, u, lambda, true);
    table.add_row({"representation-tilde", fmt(tilde.real()),
                   fmt(tilde.imag())});
    rep.check_rel("representation-tilde-agreement", tilde, spectral,
                  rep.tolerance("representation-tilde-agreement", 1e-5));
  }
  return rep.finish(&table);
}

// ---------------------------------------------------------------------------
// config dispatch
// ---------------------------------------------------------------------------

int run_from_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    std::cerr << "cannot open config: " << path << "\n";
    return 2;
  }
  json cfg;
  try {
    f >> cfg;
  } catch (const json::exception& e) {
    std::cerr << "config parse error: " << e.what() << "\n";
    return 2;
  }
  if (!cfg.is_object() || !cfg.contains("task")) {
    std::cerr << "config must be an object with a \"task\" field\n";
    return 2;
  }
  CommonOpts common;
  common.output_dir = cfg.value("output", ".");
  common.seed = cfg.value("seed", std::uint64_t{0});
  const std::string task = cfg["task"];
  if (task == "constants") return run_constants(cfg.value("m", 3), common);
  if (task == "kernel-check")
    return run_kernel_check(cfg.value("m", 3), cfg.value("samples", 50),
                            common);
  if (task == "threshold")
    return run_threshold(cfg.value("potential", ""),
                         cfg.value("expect_kind", ""), common);
  if (task == "probe")
    return run_probe(cfg.value("p", 2.0), cfg.value("operator", "zs"),
                     cfg.value("scales", std::vector<double>{}),
                     cfg.value("expect", ""), common);
  if (task == "representation")
    return run_representation(cfg.value("m", 3), cfg.value("lambda", 1.0),
                              common);
  std::cerr << "unknown task: " << task << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"threshold-scattering numerical toolkit"};
  app.require_subcommand(1);
  // Let --output/--seed appear after the subcommand name.
  app.fallthrough();

  CommonOpts common;
  app.add_option("--output", common.output_dir, "report output directory");
  app.add_option("--seed", common.seed, "random seed (recorded in reports)");

  int m = 3, samples = 50;
  double p = 2.0, lambda = 1.0;
  std::string potential_path, op_tag = "zs", expect, expect_kind, config_path;
  std::vector<double> scales;

  CLI::App* c_const = app.add_subcommand("constants", "kernel-constant suite");
  c_const->add_option("--m", m, "dimension")->required();

  CLI::App* c_kern =
      app.add_subcommand("kernel-check", "kernel route cross-validation");
  c_kern->add_option("--m", m, "dimension")->required();
  c_kern->add_option("--samples", samples, "number of random (lambda, r)");

  CLI::App* c_thr =
      app.add_subcommand("threshold", "threshold null-space classification");
  c_thr->add_option("--potential", potential_path, "potential profile file")
      ->required();
  c_thr->add_option("--expect-kind", expect_kind,
                    "fail unless the classification matches");

  CLI::App* c_probe = app.add_subcommand("probe", "L^p dilation probe");
  c_probe->add_option("--p", p, "Lebesgue exponent")->required();
  c_probe->add_option("--operator", op_tag,
                      "zs | zs-corrected | zs1 | zs1-corrected")
      ->required();
  c_probe->add_option("--scales", scales, "dilation scales")->delimiter(',');
  c_probe->add_option("--expect", expect, "bounded | growing");

  CLI::App* c_rep =
      app.add_subcommand("representation", "pairing-route comparison");
  c_rep->add_option("--m", m, "dimension")->required();
  c_rep->add_option("--lambda", lambda, "spectral parameter")->required();

  CLI::App* c_run = app.add_subcommand("run", "dispatch from a JSON config");
  c_run->add_option("--config", config_path, "JSON config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(c_const)) return run_constants(m, common);
    if (app.got_subcommand(c_kern))
      return run_kernel_check(m, samples, common);
    if (app.got_subcommand(c_thr))
      return run_threshold(potential_path, expect_kind, common);
    if (app.got_subcommand(c_probe))
      return run_probe(p, op_tag, scales, expect, common);
    if (app.got_subcommand(c_rep)) return run_representation(m, lambda, common);
    if (app.got_subcommand(c_run)) return run_from_config(config_path);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ts::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ts::io_error& e) {
    std::cerr << "file error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
