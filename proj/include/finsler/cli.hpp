#ifndef FINSLER_CLI_HPP
#define FINSLER_CLI_HPP

// Command implementations behind the `finsler` executable. Each command
// writes its result to `out`, diagnostics to `err`, and returns the process
// exit code:
//   0 success, 1 check failure or malformed input, 2 domain error, 64 usage.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "finsler/core.hpp"
#include "finsler/errors.hpp"
#include "finsler/invariants.hpp"
#include "finsler/io.hpp"
#include "finsler/lorentz.hpp"
#include "finsler/mechanics.hpp"
#include "finsler/random.hpp"

namespace finsler::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitUsage = 64;

enum class Format { Csv, Json };

struct RunConfig {
  double kappa = -1.0;
  std::uint64_t seed = 0;
  std::size_t trials = 500;
  std::map<std::string, double> tolerances;
  Format format = Format::Csv;
};

/// Prints "<Token>: <message>" on one line.
inline void report_error(std::ostream& err, std::string_view token, std::string_view message) {
  err << token << ": " << message << '\n';
}

/// Runs `body`, mapping library errors to exit codes: InvalidArgument is
/// malformed input (1), everything else is a domain error (2).
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    report_error(err, token(e.code()), e.what());
    return e.code() == Errc::InvalidArgument ? kExitFailure : kExitDomain;
  }
}

// ---------------------------------------------------------------------------
// propagate
// ---------------------------------------------------------------------------

struct PropagateArgs {
  Vector9 x0;
  Momenta9 momenta;
  double s_max = 1.0;
  std::size_t samples = 2;
};

inline int cmd_propagate(const RunConfig& cfg, const PropagateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.samples < 1) throw Error(Errc::InvalidArgument, "samples must be positive");
    const Kappa kappa(cfg.kappa);
    const Trajectory traj = Trajectory::from_momenta(args.x0, args.momenta, kappa, args.s_max);
    std::vector<io::TrajectoryRecord> rows;
    rows.reserve(args.samples);
    for (std::size_t k = 0; k < args.samples; ++k) {
      const double s = args.samples == 1 ? 0.0
                                         : args.s_max * static_cast<double>(k) /
                                               static_cast<double>(args.samples - 1);
      rows.push_back({k, s, traj.at(s)});
    }
    if (cfg.format == Format::Csv)
      io::write_trajectory_csv(out, rows);
    else
      io::write_trajectory_json(out, kappa.value(), traj.x0(), traj.v0(), rows);
    return kExitOk;
  });
}

// ---------------------------------------------------------------------------
// invert
// ---------------------------------------------------------------------------

inline int cmd_invert(const RunConfig& cfg, const Momenta9& p, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Kappa kappa(cfg.kappa);
    const Vector9 v = invert_momenta(p, kappa);
    const double d = det(vec_to_matrix(v)).real();
    if (cfg.format == Format::Csv) {
      out << "X0,X1,X2,X3,X4,X5,X6,X7,X8,det\n" << io::join_numbers(v, ",") << ',' << io::format_number(d) << '\n';
    } else {
      out << "{\"kappa\":" << io::format_number(kappa.value()) << ",\"v0\":" << io::json_array(v)
          << ",\"det\":" << io::format_number(d) << "}\n";
    }
    return kExitOk;
  });
}

// ---------------------------------------------------------------------------
// transform
// ---------------------------------------------------------------------------

inline int cmd_transform(const RunConfig& cfg, const CMat3& d, const Vector9& x, std::ostream& out,
                         std::ostream& err) {
  return guarded(err, [&] {
    const Transform9 l = group_action(d);
    const Vector9 y = l * x;
    const double before = cubic_form(x);
    const double after = cubic_form(y);
    if (cfg.format == Format::Csv) {
      out << "X0,X1,X2,X3,X4,X5,X6,X7,X8,cubic_before,cubic_after\n"
          << io::join_numbers(y, ",") << ',' << io::format_number(before) << ',' << io::format_number(after)
          << '\n';
    } else {
      out << "{\"x\":" << io::json_array(y) << ",\"cubic_before\":" << io::format_number(before)
          << ",\"cubic_after\":" << io::format_number(after) << "}\n";
    }
    const double n = x.norm();
    const double gap = std::abs(after - before) / std::max(1.0, n * n * n);
    if (!(gap <= 1e-9)) {
      report_error(err, "InvariantViolation", "cubic form changed by " + io::format_number(gap));
      return kExitFailure;
    }
    return kExitOk;
  });
}

// ---------------------------------------------------------------------------
// reduce4d
// ---------------------------------------------------------------------------

struct Reduce4dArgs {
  MinkVec4 xdot03;
  Spinor4 xdot47;
  double mass = 1.0;
  double light_speed = 1.0;
};

inline int cmd_reduce4d(const RunConfig& cfg, const Reduce4dArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ReducedParams params(args.mass, args.light_speed);
    const double x8 = solve_x8dot(args.xdot03, args.xdot47);
    const Vector9 xdot = assemble_velocity(args.xdot03, args.xdot47, x8);
    const double finsler_density = lagrangian(xdot, params.kappa());
    const double minkowski_density = minkowski_lagrangian(args.xdot03, params);
    if (cfg.format == Format::Csv) {
      out << "x8dot,finsler_density,minkowski_density\n"
          << io::format_number(x8) << ',' << io::format_number(finsler_density) << ','
          << io::format_number(minkowski_density) << '\n';
    } else {
      out << "{\"x8dot\":" << io::format_number(x8) << ",\"finsler_density\":" << io::format_number(finsler_density)
          << ",\"minkowski_density\":" << io::format_number(minkowski_density) << "}\n";
    }
    const double gap = std::abs(finsler_density - minkowski_density) / std::abs(minkowski_density);
    if (!(gap <= 1e-10)) {
      report_error(err, "InvariantViolation", "action densities differ by " + io::format_number(gap));
      return kExitFailure;
    }
    return kExitOk;
  });
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

inline void write_check_report(std::ostream& out, const std::vector<CheckOutcome>& results) {
  out << "{\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    out << "  \"" << r.name << "\": {\"trials\": " << r.trials << ", \"failures\": " << r.failures
        << ", \"worst_residual\": " << io::format_number(r.worst_residual) << '}'
        << (i + 1 < results.size() ? "," : "") << '\n';
  }
  out << "}\n";
}

inline int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.trials < 1) {
    report_error(err, "Usage", "trials must be at least 1");
    return kExitUsage;
  }
  for (const auto& [name, tol] : cfg.tolerances) {
    const auto& suite = invariant_suite();
    const bool known = std::any_of(suite.begin(), suite.end(), [&](const CheckDef& s) { return s.name == name; });
    if (!known) {
      report_error(err, "Usage", "unknown check '" + name + "'");
      return kExitUsage;
    }
  }
  return guarded(err, [&] {
    const auto results = run_invariant_suite(cfg.seed, cfg.trials, Kappa(cfg.kappa), cfg.tolerances);
    write_check_report(out, results);
    int failed = 0;
    for (const auto& r : results)
      if (!r.passed()) ++failed;
    if (failed) {
      report_error(err, "CheckFailure", std::to_string(failed) + " check(s) failed");
      return kExitFailure;
    }
    return kExitOk;
  });
}

/// Parses "name=value".
inline std::optional<std::pair<std::string, double>> parse_tolerance(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) return std::nullopt;
  try {
    std::size_t used = 0;
    const std::string value = text.substr(eq + 1);
    const double v = std::stod(value, &used);
    if (used != value.size() || !(v >= 0.0)) return std::nullopt;
    return std::make_pair(text.substr(0, eq), v);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace finsler::cli

#endif  // FINSLER_CLI_HPP
