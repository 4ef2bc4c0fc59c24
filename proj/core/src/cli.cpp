#include "henon/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>

#include "henon/acceptance.hpp"
#include "henon/morse_verify.hpp"
#include "henon/numerics.hpp"
#include "henon/radial_solver.hpp"
#include "henon/spectral.hpp"
#include "henon/transform.hpp"

namespace henon::cli {

namespace {

struct HelpRequested {
  std::string text;
};

void parse_domain_spec(RunConfig& config) {
  const std::string& spec = config.domain_spec;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("--domain " + spec + ": " + why);
  };
  std::vector<std::string> parts;
  std::stringstream stream(spec);
  std::string item;
  while (std::getline(stream, item, ':')) parts.push_back(item);
  if (parts.empty()) fail("expected ball | ball:R | annulus:RIN:ROUT");
  try {
    if (parts[0] == "ball") {
      config.inner_radius = 0.0;
      config.outer_radius = parts.size() > 1 ? std::stod(parts[1]) : 1.0;
      if (parts.size() > 2) fail("expected ball | ball:R");
      if (!(config.outer_radius > 0.0)) fail("radius must be positive");
    } else if (parts[0] == "annulus") {
      if (parts.size() != 3) fail("expected annulus:RIN:ROUT");
      config.inner_radius = std::stod(parts[1]);
      config.outer_radius = std::stod(parts[2]);
      if (!(config.inner_radius > 0.0)) fail("inner radius must be positive");
      if (!(config.inner_radius < config.outer_radius)) fail("inner < outer required");
    } else {
      fail("expected ball | ball:R | annulus:RIN:ROUT");
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    fail("malformed number");
  }
}

void validate(RunConfig& config, bool kappa_given) {
  if (!(config.alpha >= 0.0)) throw std::invalid_argument("--alpha: alpha must be >= 0");
  if (!(config.p > 1.0)) throw std::invalid_argument("--p: Henon power must exceed 1");
  if (config.nodal < 1) throw std::invalid_argument("--nodal: at least one nodal set required");
  if (config.grid < 16) throw std::invalid_argument("--grid: grid sizes >= 16 required");
  if (!(config.tol.ode > 0.0 && config.tol.eigen > 0.0 && config.tol.identity > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (config.modes < 0) throw std::invalid_argument("--modes: must be >= 0");
  parse_domain_spec(config);
  if (!kappa_given) config.kappa = 2.0 / (config.alpha + 2.0);
  if (!(config.kappa > 0.0)) throw std::invalid_argument("--kappa: kappa must be positive");
  if (config.even_upto != 0.0) {
    const double half = config.even_upto / 2.0;
    if (!(config.even_upto >= 2.0) || std::abs(half - std::round(half)) > 1e-12) {
      throw std::invalid_argument("--all-even-upto: expected an even integer >= 2");
    }
  }
}

}  // namespace

RunConfig parse_cli(const std::vector<std::string>& args) {
  RunConfig config;
  bool weighted_flag = false;
  bool unweighted_flag = false;

  CLI::App app{"Radial nodal solutions of planar Henon-type equations: solver, angular-mode "
               "spectra, Morse-index verification"};
  app.name("henon-morse");
  app.require_subcommand(1);

  auto add_tolerances = [&](CLI::App* cmd) {
    cmd->add_option("--ode-tol", config.tol.ode, "ODE integration tolerance");
    cmd->add_option("--eigen-tol", config.tol.eigen, "eigenvalue bisection tolerance");
    cmd->add_option("--identity-tol", config.tol.identity, "identity-check tolerance");
  };

  CLI::App* solve = app.add_subcommand("solve", "compute a radial nodal solution by shooting");
  solve->add_option("--alpha", config.alpha, "weight exponent");
  solve->add_option("--p", config.p, "Henon power");
  solve->add_option("--nodal", config.nodal, "number of nodal sets");
  solve->add_option("--domain", config.domain_spec, "ball | ball:R | annulus:RIN:ROUT");
  solve->add_option("--grid", config.grid, "output grid size");
  solve->add_option("--out", config.out_path, "output CSV path")->capture_default_str();
  solve->add_option("--seed", config.seed);
  add_tolerances(solve);

  CLI::App* transform = app.add_subcommand("transform", "planar power-map utilities");
  CLI::App* transform_check =
      transform->add_subcommand("check", "verify the transform integral identities");
  CLI::Option* kappa_option =
      transform_check->add_option("--kappa", config.kappa, "transform exponent");
  transform_check->add_option("--alpha", config.alpha, "weight exponent (kappa = 2/(alpha+2))");
  transform_check->add_option("--grid", config.grid, "quadrature grid size");
  transform_check->add_option("--domain", config.domain_spec, "domain the identities run on");
  transform_check->add_option("--out", config.out_path, "write the JSON report here");
  transform_check->add_option("--seed", config.seed);
  add_tolerances(transform_check);

  CLI::App* spectrum = app.add_subcommand("spectrum", "per-mode eigenvalues about a profile");
  spectrum->add_option("--profile", config.profile_path, "profile CSV (r,u,du)")->required();
  spectrum->add_option("--alpha", config.alpha, "weight exponent of the profile's equation");
  spectrum->add_option("--p", config.p, "Henon power of the linearization");
  spectrum->add_option("--modes", config.modes, "highest angular mode");
  spectrum->add_flag("--weighted", weighted_flag, "|x|^alpha dx eigenvalue measure");
  spectrum->add_flag("--unweighted", unweighted_flag, "dx eigenvalue measure");
  spectrum->add_option("--grid", config.grid, "discretization size");
  spectrum->add_option("--out", config.out_path, "output CSV path");
  add_tolerances(spectrum);

  CLI::App* morse = app.add_subcommand("morse", "Morse index report for a solved profile");
  morse->add_option("--profile", config.profile_path, "profile CSV (r,u,du)")->required();
  morse->add_option("--alpha", config.alpha, "weight exponent");
  morse->add_option("--p", config.p, "Henon power");
  morse->add_option("--grid", config.grid, "discretization size");
  morse->add_option("--out", config.out_path, "write the JSON report here");
  morse->add_flag("--pretty", config.pretty, "human-readable table");
  add_tolerances(morse);

  CLI::App* verify = app.add_subcommand("verify", "theorem-level verification pipeline");
  verify->add_option("--alpha", config.alpha, "weight exponent");
  verify->add_option("--p", config.p, "Henon power");
  verify->add_option("--nodal", config.nodal, "number of nodal sets");
  verify->add_option("--domain", config.domain_spec, "ball | ball:R | annulus:RIN:ROUT");
  verify->add_option("--grid", config.grid, "discretization size");
  verify->add_option("--all-even-upto", config.even_upto,
                     "run every even alpha up to this value");
  verify->add_option("--out", config.out_path, "write the JSON verdicts here");
  verify->add_option("--emit-plots", config.plots_dir, "write (r,u) and (k,lambda1) CSV series");
  verify->add_flag("--pretty", config.pretty, "human-readable tables");
  verify->add_option("--seed", config.seed);
  add_tolerances(verify);

  CLI::App* suite = verify->add_subcommand("suite", "run the full verification matrix");
  suite->add_option("--out", config.out_path, "report path (default report.json)");
  suite->add_option("--out-dir", config.out_dir, "directory for per-case CSV spectra");
  suite->add_option("--emit-plots", config.plots_dir, "write plot-data CSV series");
  suite->add_option("--grid", config.grid, "discretization size");
  suite->add_option("--seed", config.seed);
  add_tolerances(suite);

  std::vector<std::string> argv_store;
  argv_store.push_back("henon-morse");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  argv.reserve(argv_store.size());
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& err) {
    throw std::invalid_argument(err.what());
  }

  if (solve->parsed()) config.command = "solve";
  if (transform->parsed()) {
    if (!transform_check->parsed()) {
      throw std::invalid_argument("transform: expected the 'check' subcommand");
    }
    config.command = "transform check";
  }
  if (spectrum->parsed()) {
    config.command = "spectrum";
    if (weighted_flag == unweighted_flag) {
      throw std::invalid_argument("spectrum: exactly one of --weighted/--unweighted required");
    }
    config.weighted = weighted_flag;
  }
  if (morse->parsed()) config.command = "morse";
  if (verify->parsed()) config.command = suite->parsed() ? "verify suite" : "verify";

  validate(config, kappa_option->count() > 0);
  return config;
}

namespace {

void emit(const RunConfig& config, const std::string& content) {
  if (config.out_path.empty()) {
    std::cout << content << "\n";
  } else {
    write_text_file(config.out_path, content);
  }
}

ShootingConfig shooting_config(const RunConfig& config) {
  ShootingConfig shooting;
  shooting.ode_tolerance = config.tol.ode;
  shooting.output_points = config.grid;
  return shooting;
}

MorseOptions morse_options(const RunConfig& config) {
  MorseOptions options;
  options.grid_points = config.grid;
  options.tol = config.tol;
  return options;
}

int run_solve(const RunConfig& config) {
  const Nonlinearity f = Nonlinearity::henon(config.p);
  const ShootResult result =
      shoot_nodal_solution(f, config.alpha, config.domain(), config.nodal,
                           shooting_config(config));
  const std::string out = config.out_path.empty() ? "profile.csv" : config.out_path;
  write_profile_csv(out, result.profile, to_json(config));
  std::cout << "wrote " << out << "  parameter=" << format_double(result.parameter)
            << "  nodal_sets=" << result.profile.nodal_sets
            << "  residual=" << format_double(result.profile.residual_sup) << "\n";
  return exit_ok;
}

int run_transform_check(const RunConfig& config) {
  const Domain omega = config.domain();
  const Domain omega_kappa = map_domain(omega, config.kappa);
  const RadialGrid grid = make_grid(omega_kappa, config.grid % 2 == 0 ? config.grid + 1
                                                                      : config.grid);
  const double inner = omega_kappa.is_ball() ? 0.0 : omega_kappa.inner_radius();
  const double outer = omega_kappa.outer_radius();

  auto envelope = [&](double r) {
    return (outer - r) * (omega_kappa.is_ball() ? 1.0 : (r - inner));
  };
  auto denvelope = [&](double r) {
    return omega_kappa.is_ball() ? -1.0 : (outer + inner - 2.0 * r);
  };
  std::vector<FourierTerm> terms;
  terms.push_back(make_term(grid, 0, Parity::cosine,
                            [&](double r) { return (1.0 + 0.5 * r) * envelope(r); },
                            [&](double r) { return 0.5 * envelope(r) + (1.0 + 0.5 * r) * denvelope(r); }));
  terms.push_back(make_term(grid, 1, Parity::cosine,
                            [&](double r) { return 0.7 * r * envelope(r); },
                            [&](double r) { return 0.7 * (envelope(r) + r * denvelope(r)); }));
  terms.push_back(make_term(grid, 2, Parity::sine,
                            [&](double r) { return 0.3 * r * r * envelope(r); },
                            [&](double r) { return 0.3 * (2.0 * r * envelope(r) + r * r * denvelope(r)); }));
  const AngularFourierFunction psi(grid, std::move(terms));
  std::vector<FourierTerm> radial_terms;
  radial_terms.push_back(make_term(grid, 0, Parity::cosine,
                                   [&](double r) { return (1.0 + 0.25 * r * r) * envelope(r); },
                                   [&](double r) {
                                     return 0.5 * r * envelope(r) +
                                            (1.0 + 0.25 * r * r) * denvelope(r);
                                   }));
  const AngularFourierFunction psi_radial(grid, std::move(radial_terms));

  const IdentityReport lr =
      verify_lr_identity(psi, omega_kappa, config.kappa, 2.0, config.tol.identity);
  const IdentityReport comp = verify_composition_identity(
      psi, omega_kappa, config.kappa, [](double v) { return std::cos(v); },
      config.tol.identity);
  const H1Report h1 = verify_h1_identities(psi, omega_kappa, config.kappa, 1e-8);
  const H1Report h1_radial = verify_h1_identities(psi_radial, omega_kappa, config.kappa, 1e-8);

  const bool pass = lr.pass && comp.pass && h1.sandwich_pass && h1_radial.pass;

  auto h1_json = [](const H1Report& r) {
    JsonWriter hw;
    hw.begin_object();
    hw.key("energy_psi");
    hw.value(r.energy_psi);
    hw.key("energy_phi");
    hw.value(r.energy_phi);
    hw.key("lower_factor");
    hw.value(r.lower_factor);
    hw.key("upper_factor");
    hw.value(r.upper_factor);
    hw.key("sandwich_pass");
    hw.value(r.sandwich_pass);
    hw.key("radial");
    hw.value(r.radial);
    hw.key("radial_equality_rel_error");
    hw.value(r.radial_equality_rel_error);
    hw.key("tolerance");
    hw.value(r.tolerance);
    hw.key("pass");
    hw.value(r.pass);
    hw.end_object();
    return hw.str();
  };
  const std::string body = "{\"config\":" + to_json(config) + ",\"lr\":" + to_json(lr) +
                           ",\"composition\":" + to_json(comp) + ",\"h1\":" + h1_json(h1) +
                           ",\"h1_radial\":" + h1_json(h1_radial) +
                           ",\"pass\":" + (pass ? "true" : "false") + "}";
  emit(config, body);
  return pass ? exit_ok : exit_verification_failure;
}

RadialProfile load_profile(const RunConfig& config, const Nonlinearity& f) {
  ProfileSamples samples = read_profile_csv(config.profile_path);
  return make_radial_profile(std::move(samples.grid), std::move(samples.values),
                             std::move(samples.derivatives), config.alpha, &f, config.tol);
}

int run_spectrum(const RunConfig& config) {
  const Nonlinearity f = Nonlinearity::henon(config.p);
  const RadialProfile profile = load_profile(config, f);
  std::vector<ModeSpectrum> spectra;
  const int q = std::max(profile.nodal_sets + 2, 8);
  for (int k = 0; k <= config.modes; ++k) {
    const ModeProblem problem = make_mode_problem(profile, f, k, config.weighted, config.grid);
    spectra.push_back(solve_mode(problem, q, config.tol));
  }
  emit(config, spectrum_csv(spectra, config));
  return exit_ok;
}

int run_morse(const RunConfig& config) {
  const Nonlinearity f = Nonlinearity::henon(config.p);
  const RadialProfile profile = load_profile(config, f);
  const MorseReport report = morse_index(profile, f, morse_options(config));
  if (config.pretty) {
    std::cout << pretty_morse(report);
  }
  emit(config, to_json(report, config));
  return report.verdict ? exit_ok : exit_verification_failure;
}

void emit_plots(const RunConfig& config, const std::string& label, const RadialProfile& profile,
                const MorseReport& morse) {
  namespace fs = std::filesystem;
  fs::create_directories(config.plots_dir);
  {
    std::string csv = "r,u\n";
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
      csv += format_double(profile.grid[i]) + "," + format_double(profile.values[i]) + "\n";
    }
    write_text_file((fs::path(config.plots_dir) / (label + "_profile.csv")).string(), csv);
  }
  {
    std::string csv = "k,lambda1\n";
    for (const auto& mode : morse.per_mode) {
      if (!mode.eigenvalues.empty()) {
        csv += std::to_string(mode.mode) + "," + format_double(mode.eigenvalues.front()) + "\n";
      }
    }
    write_text_file((fs::path(config.plots_dir) / (label + "_spectrum.csv")).string(), csv);
  }
}

int run_verify(const RunConfig& config) {
  VerifyOptions options;
  options.shooting = shooting_config(config);
  options.morse = morse_options(config);
  options.seed = config.seed;

  std::vector<double> alphas;
  if (config.even_upto > 0.0) {
    for (double a = 2.0; a <= config.even_upto + 1e-9; a += 2.0) alphas.push_back(a);
  } else {
    alphas.push_back(config.alpha);
  }

  bool all_pass = true;
  std::string body = "[";
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const VerdictBundle bundle =
        verify_theorems(alphas[i], config.p, config.nodal, config.domain(), options);
    all_pass = all_pass && bundle.all_pass;
    if (config.pretty) std::cout << pretty_bundle(bundle);
    if (i > 0) body += ",";
    body += to_json(bundle, config);
    if (!config.plots_dir.empty()) {
      const ShootResult solved =
          shoot_nodal_solution(Nonlinearity::henon(config.p), alphas[i], config.domain(),
                               config.nodal, options.shooting);
      std::ostringstream label;
      label << "alpha=" << alphas[i] << "_p=" << config.p << "_n=" << config.nodal;
      emit_plots(config, label.str(), solved.profile, bundle.morse);
    }
  }
  body += "]";
  emit(config, alphas.size() == 1 ? body.substr(1, body.size() - 2) : body);
  return all_pass ? exit_ok : exit_verification_failure;
}

int run_suite(const RunConfig& config) {
  SuiteOptions options;
  options.verify.shooting = shooting_config(config);
  options.verify.morse = morse_options(config);
  options.verify.seed = config.seed;

  const SuiteReport report = run_acceptance_suite(options);
  for (const auto& criterion : report.criteria) {
    std::cout << "criterion " << criterion.id << " [" << criterion.name << "] "
              << (criterion.pass ? "PASS" : "FAIL") << "\n";
  }

  const std::string out = config.out_path.empty() ? "report.json" : config.out_path;
  RunConfig embedded = config;
  embedded.out_path = out;
  write_text_file(out, to_json(report, embedded));

  namespace fs = std::filesystem;
  const std::string dir = config.out_dir.empty() ? "verify_out" : config.out_dir;
  fs::create_directories(dir);
  for (const auto& series : report.spectra) {
    write_text_file((fs::path(dir) / (series.case_label + "_spectrum.csv")).string(),
                    spectrum_csv(series.modes, embedded));
  }
  for (const auto& series : report.profiles) {
    write_profile_csv((fs::path(dir) / (series.case_label + "_profile.csv")).string(),
                      series.profile, to_json(embedded));
  }
  if (!config.plots_dir.empty()) {
    fs::create_directories(config.plots_dir);
    for (const auto& series : report.profiles) {
      std::string csv = "r,u\n";
      for (std::size_t i = 0; i < series.profile.grid.size(); ++i) {
        csv += format_double(series.profile.grid[i]) + "," +
               format_double(series.profile.values[i]) + "\n";
      }
      write_text_file((fs::path(config.plots_dir) / (series.case_label + "_profile.csv")).string(),
                      csv);
    }
    for (const auto& series : report.spectra) {
      std::string csv = "k,lambda1\n";
      for (const auto& mode : series.modes) {
        if (!mode.eigenvalues.empty()) {
          csv += std::to_string(mode.mode) + "," + format_double(mode.eigenvalues.front()) + "\n";
        }
      }
      write_text_file((fs::path(config.plots_dir) / (series.case_label + "_spectrum.csv")).string(),
                      csv);
    }
  }
  std::cout << "wrote " << out << "\n";
  return report.all_pass ? exit_ok : exit_verification_failure;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  RunConfig config;
  try {
    config = parse_cli(args);
  } catch (const HelpRequested& help) {
    std::cout << help.text;
    return exit_ok;
  } catch (const std::invalid_argument& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return exit_usage_error;
  }

  try {
    if (config.command == "solve") return run_solve(config);
    if (config.command == "transform check") return run_transform_check(config);
    if (config.command == "spectrum") return run_spectrum(config);
    if (config.command == "morse") return run_morse(config);
    if (config.command == "verify") return run_verify(config);
    if (config.command == "verify suite") return run_suite(config);
    std::cerr << "usage error: unknown command\n";
    return exit_usage_error;
  } catch (const solve_error& err) {
    std::cerr << "solver failure: " << err.what() << "\n";
    return exit_solver_failure;
  } catch (const std::invalid_argument& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return exit_usage_error;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return exit_solver_failure;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace henon::cli
