#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "app.hpp"

using namespace shellres;

int main(int argc, char** argv) {
  CLI::App cli{"Shell-potential scattering: S-matrix, resonance poles, Gamow states and resonance expansions"};
  cli.require_subcommand(1);
  std::string config_path;
  std::optional<std::string> out_dir;
  bool no_timestamp = false;
  cli.add_option("-c,--config", config_path, "configuration file (key = value with [sections])");
  cli.add_option("-o,--output", out_dir, "output directory (overrides [output] dir)");
  cli.add_flag("--no-timestamp", no_timestamp, "omit the wall-clock line from text reports");

  app::SmatrixArgs sm;
  auto* smatrix = cli.add_subcommand("smatrix", "S(k) on a real wave-number grid");
  smatrix->add_option("--kmin", sm.k_min, "first wave number")->capture_default_str();
  smatrix->add_option("--kmax", sm.k_max, "last wave number")->capture_default_str();
  smatrix->add_option("-n,--points", sm.n, "grid points")->capture_default_str();

  bool anti = false;
  auto* poles = cli.add_subcommand("poles", "resonance poles in the search region");
  poles->add_flag("--anti", anti, "also write the anti-resonance partners");

  app::GamowArgs ga;
  auto* gamow = cli.add_subcommand("gamow", "sample a Gamow state");
  gamow->add_option("--pole", ga.pole, "pole index, 1-based, as in the poles table")->capture_default_str();
  gamow->add_option("--rmax", ga.r_max, "largest radius (default 2b)");
  gamow->add_option("-n,--points", ga.n, "grid intervals")->capture_default_str();
  gamow->add_flag("--anti", ga.anti, "sample the anti-resonance partner instead");

  app::ExpandArgs ea;
  std::string mode = "in-in";
  std::optional<std::size_t> n_poles;
  std::optional<double> k_max, depth;
  auto* expand = cli.add_subcommand("expand", "Gamow expansion of the configured test function");
  expand->add_option("--mode", mode, "in-in, out-out or out-in")->capture_default_str();
  expand->add_option("--poles", n_poles, "number of enclosed poles (default from [contour] poles)");
  expand->add_option("--alpha", ea.alphas, "regulator values; three or more are extrapolated to zero")
      ->delimiter(',')
      ->capture_default_str();
  expand->add_option("--kmax", k_max, "wave-number cutoff (default from [contour] kmax)");
  expand->add_option("--contour-depth", depth, "depth of the contour (default from [contour] depth)");

  auto* verify = cli.add_subcommand("verify", "run the invariant suite and print a table");

  CLI11_PARSE(cli, argc, argv);

  try {
    const RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    const app::Output out{out_dir.value_or(cfg.output_dir), !no_timestamp};
    const PotentialSpec& pot = cfg.potential;

    if (smatrix->parsed()) {
      auto file = out.open("smatrix.csv");
      app::smatrix_csv(file, pot, sm);
      fmt::print("wrote {}\n", out.path("smatrix.csv"));
    } else if (poles->parsed()) {
      const auto found = find_resonances(cfg.search, pot, cfg.newton_tol);
      auto file = out.open("poles.csv");
      app::poles_csv(file, found);
      fmt::print("{} poles; wrote {}\n", found.size(), out.path("poles.csv"));
      if (anti) {
        auto partners = out.open("antiresonances.csv");
        app::antiresonances_csv(partners, found, pot);
        fmt::print("wrote {}\n", out.path("antiresonances.csv"));
      }
    } else if (gamow->parsed()) {
      const auto found = find_resonances(cfg.search, pot, cfg.newton_tol);
      if (ga.pole < 1 || ga.pole > found.size())
        throw Error(ErrorCode::InvalidInput, fmt::format("pole index {} outside 1..{}", ga.pole, found.size()));
      const auto& p = found[ga.pole - 1];
      const GamowState state = ga.anti ? antiresonance_state(pair_antiresonance(p, pot), pot) : gamow_state(p, pot);
      const std::string name = fmt::format("{}_{}.csv", ga.anti ? "antiresonance" : "gamow", ga.pole);
      auto file = out.open(name);
      app::gamow_csv(file, state, pot, ga);
      fmt::print("wrote {}\n", out.path(name));
    } else if (expand->parsed()) {
      ea.mode = app::parse_mode(mode);
      ea.poles = n_poles.value_or(cfg.contour.poles);
      ea.k_max = k_max.value_or(cfg.contour.k_max);
      ea.depth = depth.value_or(cfg.contour.depth);
      const auto [report, relative] = app::run_expansion(cfg, ea);
      const TestFunction bump = TestFunction::gaussian_bump(cfg.bump.center, cfg.bump.width, cfg.bump.support);
      auto text = out.open("expansion.txt");
      app::expansion_text(text, out, cfg, ea, report, relative);
      auto csv = out.open("expansion.csv");
      app::expansion_csv(csv, bump, report);
      const double tol = cfg.tolerance("expansion");
      fmt::print("relative L2 error {:.3e} (tolerance {:.0e}); wrote {} and {}\n", relative, tol,
                 out.path("expansion.txt"), out.path("expansion.csv"));
      if (!(relative <= tol)) return app::verify_failed;
    } else if (verify->parsed()) {
      const auto rows = run_verification(cfg);
      return app::print_verification(std::cout, rows) ? app::ok : app::verify_failed;
    }
  } catch (const Error& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return app::exit_code(e.code());
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return app::config_error;
  }
  return app::ok;
}
