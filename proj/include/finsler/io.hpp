#ifndef FINSLER_IO_HPP
#define FINSLER_IO_HPP

// Text formats: 17-significant-digit numbers, trajectory CSV/JSON and the
// 3-line complex matrix file.

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "finsler/core.hpp"
#include "finsler/errors.hpp"
#include "finsler/linalg.hpp"

namespace finsler::io {

/// printf("%.17g"); negative zero prints as "0", non-finite values as "null".
inline std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class Range>
std::string join_numbers(const Range& values, std::string_view sep) {
  std::string out;
  bool first = true;
  for (double v : values) {
    if (!first) out += sep;
    out += format_number(v);
    first = false;
  }
  return out;
}

template <class Range>
std::string json_array(const Range& values) {
  return "[" + join_numbers(values, ",") + "]";
}

/// Parses exactly `count` reals separated by commas and/or whitespace.
inline std::vector<double> parse_reals(std::string_view text, std::size_t count, std::string_view what) {
  std::string s(text);
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || !std::isfinite(v))
      throw Error(Errc::InvalidArgument, std::string(what) + ": cannot parse '" + tok + "' as a real");
    out.push_back(v);
  }
  if (out.size() != count) {
    std::ostringstream os;
    os << what << ": expected " << count << " reals, got " << out.size();
    throw Error(Errc::InvalidArgument, os.str());
  }
  return out;
}

template <class Vec>
Vec parse_components(std::string_view text, std::string_view what) {
  const auto v = parse_reals(text, Vec::size(), what);
  Vec out{};
  for (std::size_t i = 0; i < Vec::size(); ++i) out[i] = v[i];
  return out;
}

/// 18 reals as (re, im) pairs in row-major order.
inline CMat3 complex_matrix_from_reals(const std::vector<double>& v) {
  CMat3 m{};
  for (std::size_t i = 0; i < 9; ++i) m.e[i] = {v[2 * i], v[2 * i + 1]};
  return m;
}

/// Three lines, each holding "re im re im re im".
inline CMat3 read_matrix_file(std::istream& in) {
  std::vector<double> all;
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto row = parse_reals(line, 6, "matrix row");
    all.insert(all.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows != 3) throw Error(Errc::InvalidArgument, "matrix file must have exactly 3 rows");
  return complex_matrix_from_reals(all);
}

inline void write_matrix_file(std::ostream& out, const CMat3& m) {
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      if (c) out << ' ';
      out << format_number(m(r, c).real()) << ' ' << format_number(m(r, c).imag());
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Trajectories
// ---------------------------------------------------------------------------

struct TrajectoryRecord {
  std::size_t index = 0;
  double s = 0.0;
  Vector9 x;
};

inline void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRecord>& rows) {
  out << "s,X0,X1,X2,X3,X4,X5,X6,X7,X8\n";
  for (const auto& r : rows) out << format_number(r.s) << ',' << join_numbers(r.x, ",") << '\n';
}

inline void write_trajectory_json(std::ostream& out, double kappa, const Vector9& x0, const Vector9& v0,
                                  const std::vector<TrajectoryRecord>& rows) {
  out << "{\"kappa\":" << format_number(kappa) << ",\"x0\":" << json_array(x0) << ",\"v0\":" << json_array(v0)
      << ",\"samples\":[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out << ',';
    out << "{\"s\":" << format_number(rows[i].s) << ",\"x\":" << json_array(rows[i].x) << '}';
  }
  out << "]}\n";
}

}  // namespace finsler::io

#endif  // FINSLER_IO_HPP
