// finsler: command-line front end.
//
//   finsler propagate --x0=... --momenta=... --s-max 1 --samples 3
//   finsler invert    --momenta=...
//   finsler transform (--matrix-file F | --matrix=... | --random) --x=...
//   finsler reduce4d  --xdot03=... --xdot47=... --mass 1 --c 1
//   finsler check     --seed 0 --trials 100
//
// Vector arguments are comma- or space-separated lists. Use the --opt=value
// form when the first entry is negative.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "finsler/cli.hpp"

namespace {

using namespace finsler;
using finsler::cli::Format;

struct Inputs {
  std::string x0 = "0,0,0,0,0,0,0,0,0";
  std::string momenta;
  double s_max = 1.0;
  long long samples = 2;
  std::string matrix_file;
  std::string matrix;
  bool random_matrix = false;
  std::string x;
  std::string xdot03;
  std::string xdot47 = "0,0,0,0";
  double mass = 1.0;
  double light_speed = 1.0;
};

template <class F>
int with_output(const std::string& path, F&& body) {
  if (path.empty()) return body(std::cout);
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    cli::report_error(std::cerr, "InvalidArgument", "cannot open output file '" + path + "'");
    return cli::kExitFailure;
  }
  return body(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Particle mechanics in the 9-dimensional Finsler space with cubic metric"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::RunConfig cfg;
  Inputs in;
  std::string format = "csv";
  std::string out_path;
  long long trials = 500;
  std::vector<std::string> tolerances;

  app.add_option("--kappa", cfg.kappa, "Particle constant kappa (nonzero)")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for MT19937-64")->capture_default_str();
  app.add_option("--trials", trials, "Trials per property check")->capture_default_str();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", out_path, "Output file (default: standard output)");
  app.add_option("--tol", tolerances, "Tolerance override <check>=<value>");

  auto* propagate = app.add_subcommand("propagate", "Sample the straight world line for given momenta");
  propagate->add_option("--x0", in.x0, "Initial coordinates (9 reals)")->capture_default_str();
  propagate->add_option("--momenta", in.momenta, "Initial momenta (9 reals)")->required();
  propagate->add_option("--s-max", in.s_max, "Final arc length")->capture_default_str();
  propagate->add_option("--samples", in.samples, "Number of samples")->capture_default_str();

  auto* invert = app.add_subcommand("invert", "Initial velocities from initial momenta");
  invert->add_option("--momenta", in.momenta, "Momenta (9 reals)")->required();

  auto* transform = app.add_subcommand("transform", "Apply the SL(3,C) action to a vector");
  auto* mfile = transform->add_option("--matrix-file", in.matrix_file, "3 lines of 're im re im re im'");
  auto* minline = transform->add_option("--matrix", in.matrix, "18 reals, (re,im) pairs row-major");
  auto* mrandom = transform->add_flag("--random", in.random_matrix, "Seeded random unimodular matrix");
  mfile->excludes(minline)->excludes(mrandom);
  minline->excludes(mrandom);
  transform->add_option("--x", in.x, "Vector (9 reals)")->required();

  auto* reduce = app.add_subcommand("reduce4d", "Solve the velocity constraint and compare action densities");
  reduce->add_option("--xdot03", in.xdot03, "4-velocity (4 reals)")->required();
  reduce->add_option("--xdot47", in.xdot47, "Spinor velocities (4 reals)")->capture_default_str();
  reduce->add_option("--mass", in.mass, "Mass m > 0")->capture_default_str();
  reduce->add_option("--c", in.light_speed, "Speed of light c > 0")->capture_default_str();

  auto* check = app.add_subcommand("check", "Run the seeded invariant suite and print a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    cli::report_error(std::cerr, "Usage", e.what());
    return cli::kExitUsage;
  }

  if (cfg.kappa == 0.0 || !std::isfinite(cfg.kappa)) {
    cli::report_error(std::cerr, "Usage", "kappa must be finite and nonzero");
    return cli::kExitUsage;
  }
  if (trials < 1) {
    cli::report_error(std::cerr, "Usage", "trials must be at least 1");
    return cli::kExitUsage;
  }
  cfg.trials = static_cast<std::size_t>(trials);
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  for (const auto& item : tolerances) {
    const auto parsed = cli::parse_tolerance(item);
    if (!parsed) {
      cli::report_error(std::cerr, "Usage", "bad tolerance override '" + item + "'");
      return cli::kExitUsage;
    }
    cfg.tolerances[parsed->first] = parsed->second;
  }

  return cli::guarded(std::cerr, [&]() -> int {
    if (*propagate) {
      if (in.samples < 1) {
        cli::report_error(std::cerr, "Usage", "samples must be at least 1");
        return cli::kExitUsage;
      }
      cli::PropagateArgs args{io::parse_components<Vector9>(in.x0, "x0"),
                              io::parse_components<Momenta9>(in.momenta, "momenta"), in.s_max,
                              static_cast<std::size_t>(in.samples)};
      return with_output(out_path, [&](std::ostream& os) { return cli::cmd_propagate(cfg, args, os, std::cerr); });
    }
    if (*invert) {
      const auto p = io::parse_components<Momenta9>(in.momenta, "momenta");
      return with_output(out_path, [&](std::ostream& os) { return cli::cmd_invert(cfg, p, os, std::cerr); });
    }
    if (*transform) {
      CMat3 d;
      if (!in.matrix_file.empty()) {
        std::ifstream f(in.matrix_file);
        if (!f) throw Error(Errc::InvalidArgument, "cannot open matrix file '" + in.matrix_file + "'");
        d = io::read_matrix_file(f);
      } else if (!in.matrix.empty()) {
        d = io::complex_matrix_from_reals(io::parse_reals(in.matrix, 18, "matrix"));
      } else if (in.random_matrix) {
        Rng rng(cfg.seed);
        d = random_unimodular3(rng);
      } else {
        cli::report_error(std::cerr, "Usage", "one of --matrix-file, --matrix or --random is required");
        return cli::kExitUsage;
      }
      const auto x = io::parse_components<Vector9>(in.x, "x");
      return with_output(out_path, [&](std::ostream& os) { return cli::cmd_transform(cfg, d, x, os, std::cerr); });
    }
    if (*reduce) {
      cli::Reduce4dArgs args{io::parse_components<MinkVec4>(in.xdot03, "xdot03"),
                             io::parse_components<Spinor4>(in.xdot47, "xdot47"), in.mass, in.light_speed};
      return with_output(out_path, [&](std::ostream& os) { return cli::cmd_reduce4d(cfg, args, os, std::cerr); });
    }
    if (*check) {
      return with_output(out_path, [&](std::ostream& os) { return cli::cmd_check(cfg, os, std::cerr); });
    }
    return cli::kExitUsage;
  });
}
