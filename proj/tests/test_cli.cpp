#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "finsler/cli.hpp"
#include "json.hpp"
#include "support/oracles.hpp"
#include "support/process.hpp"

using namespace finsler;
using namespace finsler::cli;

namespace {

const char* const kDiagonalMomenta = "-0.66666666666666663,0,0,0,0,0,0,0,-0.33333333333333331";

struct Captured {
  int code;
  std::string out;
  std::string err;
};

template <class F>
Captured capture(F&& f) {
  std::ostringstream out, err;
  const int code = f(out, err);
  return {code, out.str(), err.str()};
}

Momenta9 diagonal_momenta() { return io::parse_components<Momenta9>(kDiagonalMomenta, "momenta"); }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("finsler_test_" + name)).string();
}

}  // namespace

// ---------------------------------------------------------------------------
// io helpers
// ---------------------------------------------------------------------------

TEST(Io, FormatNumber) {
  EXPECT_EQ(io::format_number(0.5), "0.5");
  EXPECT_EQ(io::format_number(-0.0), "0");
  EXPECT_EQ(io::format_number(1.0 / 3.0), "0.33333333333333331");
  EXPECT_EQ(io::format_number(std::numeric_limits<double>::infinity()), "null");
}

TEST(Io, ParseReals) {
  EXPECT_EQ(io::parse_reals("1, 2 3,-4", 4, "v"), (std::vector<double>{1, 2, 3, -4}));
  EXPECT_THROW(io::parse_reals("1,2", 3, "v"), Error);
  EXPECT_THROW(io::parse_reals("1,x,3", 3, "v"), Error);
  EXPECT_THROW(io::parse_reals("1,inf,3", 3, "v"), Error);
}

TEST(Io, MatrixFileRoundTrip) {
  Rng rng(50);
  const CMat3 d = random_unimodular3(rng);
  std::stringstream ss;
  io::write_matrix_file(ss, d);
  EXPECT_EQ(io::read_matrix_file(ss), d);
  std::istringstream two_rows("1 0 0 0 0 0\n0 0 1 0 0 0\n");
  EXPECT_THROW(io::read_matrix_file(two_rows), Error);
}

// ---------------------------------------------------------------------------
// propagate
// ---------------------------------------------------------------------------

TEST(Propagate, DiagonalFixture) {
  RunConfig cfg;
  const auto r = capture([&](auto& o, auto& e) {
    return cmd_propagate(cfg, {Vector9::zero(), diagonal_momenta(), 1.0, 3}, o, e);
  });
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "s,X0,X1,X2,X3,X4,X5,X6,X7,X8\n"
            "0,0,0,0,0,0,0,0,0,0\n"
            "0.5,0.5,0,0,0,0,0,0,0,0.5\n"
            "1,1,0,0,0,0,0,0,0,1\n");
}

TEST(Propagate, SingleSampleIsInitialPoint) {
  RunConfig cfg;
  const Vector9 x0{{1, 2, 3, 4, 5, 6, 7, 8, 9}};
  const auto r = capture([&](auto& o, auto& e) { return cmd_propagate(cfg, {x0, diagonal_momenta(), 5.0, 1}, o, e); });
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "s,X0,X1,X2,X3,X4,X5,X6,X7,X8\n0,1,2,3,4,5,6,7,8,9\n");
}

TEST(Propagate, JsonMatchesCsv) {
  Rng rng(51);
  const Vector9 x0 = random_vector(rng);
  const Momenta9 p = canonical_momenta(random_unit_speed(rng), default_kappa());
  RunConfig csv_cfg, json_cfg;
  json_cfg.format = Format::Json;
  const auto csv = capture([&](auto& o, auto& e) { return cmd_propagate(csv_cfg, {x0, p, -2.0, 7}, o, e); });
  const auto js = capture([&](auto& o, auto& e) { return cmd_propagate(json_cfg, {x0, p, -2.0, 7}, o, e); });
  ASSERT_EQ(csv.code, kExitOk) << csv.err;
  ASSERT_EQ(js.code, kExitOk) << js.err;

  const auto doc = nlohmann::json::parse(js.out);
  EXPECT_EQ(doc["kappa"].get<double>(), -1.0);
  ASSERT_EQ(doc["samples"].size(), 7u);
  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  Vector9 v0{};
  for (std::size_t a = 0; a < 9; ++a) v0[a] = doc["v0"][a].get<double>();
  for (std::size_t k = 0; k < 7; ++k) {
    ASSERT_TRUE(std::getline(lines, line));
    const auto row = io::parse_reals(line, 10, "row");
    const auto& sample = doc["samples"][k];
    EXPECT_EQ(row[0], sample["s"].get<double>());
    for (std::size_t a = 0; a < 9; ++a) EXPECT_EQ(row[a + 1], sample["x"][a].get<double>());
  }
  // Final row obeys F(X(s_f) - x0) = s_f^3.
  const auto last = doc["samples"][6];
  Vector9 xf{};
  for (std::size_t a = 0; a < 9; ++a) xf[a] = last["x"][a].get<double>();
  EXPECT_NEAR(cubic_form(xf - x0), -8.0, 1e-9 * 8.0);
  EXPECT_NEAR(cubic_form(v0), 1.0, 1e-9);
}

TEST(Propagate, RejectsInconsistentMomenta) {
  RunConfig cfg;
  const auto r = capture([&](auto& o, auto& e) { return cmd_propagate(cfg, {Vector9::zero(), Momenta9::zero(), 1.0, 3}, o, e); });
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_EQ(r.err.rfind("InconsistentMomenta: ", 0), 0u) << r.err;
  EXPECT_TRUE(r.out.empty());
}

// ---------------------------------------------------------------------------
// invert
// ---------------------------------------------------------------------------

TEST(Invert, DiagonalFixture) {
  RunConfig cfg;
  const auto r = capture([&](auto& o, auto& e) { return cmd_invert(cfg, diagonal_momenta(), o, e); });
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "X0,X1,X2,X3,X4,X5,X6,X7,X8,det\n1,0,0,0,0,0,0,0,1,1\n");
}

TEST(Invert, RoundTripThroughText) {
  Rng rng(52);
  const Vector9 v = random_unit_speed(rng);
  const Momenta9 p = io::parse_components<Momenta9>(io::join_numbers(canonical_momenta(v, default_kappa()), ","), "p");
  RunConfig cfg;
  cfg.format = Format::Json;
  const auto r = capture([&](auto& o, auto& e) { return cmd_invert(cfg, p, o, e); });
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  for (std::size_t a = 0; a < 9; ++a) EXPECT_NEAR(doc["v0"][a].get<double>(), v[a], 1e-9 * std::max(1.0, v.max_abs()));
  EXPECT_NEAR(doc["det"].get<double>(), 1.0, 1e-9);
}

TEST(Invert, ZeroMomenta) {
  RunConfig cfg;
  const auto r = capture([&](auto& o, auto& e) { return cmd_invert(cfg, Momenta9::zero(), o, e); });
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_EQ(r.err, "InconsistentMomenta: inconsistent momenta: residual 0.29629629629629628\n");
}

// ---------------------------------------------------------------------------
// transform
// ---------------------------------------------------------------------------

TEST(Transform, Identity) {
  RunConfig cfg;
  const Vector9 x{{1, -2, 3, 0.5, 0, 1, 2, -1, 4}};
  const auto r = capture([&](auto& o, auto& e) { return cmd_transform(cfg, CMat3::identity(), x, o, e); });
  EXPECT_EQ(r.code, kExitOk);
  const double f = cubic_form(x);
  EXPECT_EQ(r.out, "X0,X1,X2,X3,X4,X5,X6,X7,X8,cubic_before,cubic_after\n" + io::join_numbers(x, ",") + "," +
                       io::format_number(f) + "," + io::format_number(f) + "\n");
}

TEST(Transform, EmbeddedBoostKeepsScalar) {
  RunConfig cfg;
  cfg.format = Format::Json;
  const Vector9 x{{1, -2, 3, 0.5, 0, 1, 2, -1, 4}};
  const CMat3 d = embed_sl2(CMat2{std::exp(0.15), 0.0, 0.0, std::exp(-0.15)});
  const auto r = capture([&](auto& o, auto& e) { return cmd_transform(cfg, d, x, o, e); });
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["x"][8].get<double>(), 4.0, 1e-14);
  EXPECT_NEAR(doc["cubic_after"].get<double>(), doc["cubic_before"].get<double>(), 1e-9 * 125.0);
}

TEST(Transform, RejectsNonUnimodular) {
  RunConfig cfg;
  const auto r = capture([&](auto& o, auto& e) {
    return cmd_transform(cfg, Complex(2.0) * CMat3::identity(), Vector9::basis(0), o, e);
  });
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_EQ(r.err.rfind("NotUnimodular: ", 0), 0u);
}

// ---------------------------------------------------------------------------
// reduce4d
// ---------------------------------------------------------------------------

TEST(Reduce4d, Examples) {
  RunConfig cfg;
  const auto rest = capture([&](auto& o, auto& e) { return cmd_reduce4d(cfg, {MinkVec4{{1, 0, 0, 0}}, {}, 1, 1}, o, e); });
  EXPECT_EQ(rest.code, kExitOk);
  EXPECT_EQ(rest.out, "x8dot,finsler_density,minkowski_density\n1,-1,-1\n");
  const auto dilated =
      capture([&](auto& o, auto& e) { return cmd_reduce4d(cfg, {MinkVec4{{2, 0, 0, 0}}, {}, 1, 1}, o, e); });
  EXPECT_EQ(dilated.out, "x8dot,finsler_density,minkowski_density\n2,-2,-2\n");
}

TEST(Reduce4d, RandomTimelike) {
  Rng rng(53);
  RunConfig cfg;
  cfg.format = Format::Json;
  for (int i = 0; i < 20; ++i) {
    const MinkVec4 v = random_timelike(rng);
    const Spinor4 s = random_spinor(rng, v);
    const auto r = capture([&](auto& o, auto& e) { return cmd_reduce4d(cfg, {v, s, 1.7, 2.0}, o, e); });
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    const double fd = doc["finsler_density"].get<double>(), md = doc["minkowski_density"].get<double>();
    EXPECT_LE(std::abs(fd - md), 1e-10 * std::abs(md));
  }
}

TEST(Reduce4d, Spacelike) {
  RunConfig cfg;
  const auto r = capture([&](auto& o, auto& e) { return cmd_reduce4d(cfg, {MinkVec4{{0, 1, 0, 0}}, {}, 1, 1}, o, e); });
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_EQ(r.err.rfind("NonTimelike: ", 0), 0u);
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

TEST(Check, PassesAndReportsEveryCheck) {
  RunConfig cfg;
  cfg.trials = 10;
  const auto r = capture([&](auto& o, auto& e) { return cmd_check(cfg, o, e); });
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.size(), invariant_suite().size());
  for (const auto& [name, entry] : doc.items()) {
    EXPECT_EQ(entry["failures"].get<int>(), 0) << name;
    EXPECT_EQ(entry.size(), 3u);
  }
}

TEST(Check, UsageAndForcedFailure) {
  RunConfig cfg;
  cfg.trials = 0;
  EXPECT_EQ(capture([&](auto& o, auto& e) { return cmd_check(cfg, o, e); }).code, kExitUsage);
  cfg.trials = 5;
  cfg.tolerances["no_such_check"] = 1.0;
  EXPECT_EQ(capture([&](auto& o, auto& e) { return cmd_check(cfg, o, e); }).code, kExitUsage);
  cfg.tolerances.clear();
  cfg.tolerances["determinant_identity"] = 0.0;
  const auto r = capture([&](auto& o, auto& e) { return cmd_check(cfg, o, e); });
  EXPECT_EQ(r.code, kExitFailure);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_GT(doc["determinant_identity"]["failures"].get<int>(), 0);
}

TEST(Check, ParseTolerance) {
  EXPECT_EQ(parse_tolerance("covariance=1e-3"), std::make_optional(std::make_pair(std::string("covariance"), 1e-3)));
  EXPECT_FALSE(parse_tolerance("covariance"));
  EXPECT_FALSE(parse_tolerance("=1"));
  EXPECT_FALSE(parse_tolerance("a=-1"));
  EXPECT_FALSE(parse_tolerance("a=1x"));
}

// ---------------------------------------------------------------------------
// The executable
// ---------------------------------------------------------------------------

TEST(Executable, PropagateFixture) {
  const auto r = testproc::run_cli(std::string("propagate --momenta=") + kDiagonalMomenta + " --s-max 1 --samples 3");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out,
            "s,X0,X1,X2,X3,X4,X5,X6,X7,X8\n"
            "0,0,0,0,0,0,0,0,0,0\n"
            "0.5,0.5,0,0,0,0,0,0,0,0.5\n"
            "1,1,0,0,0,0,0,0,0,1\n");
}

TEST(Executable, GlobalOptionsAfterSubcommand) {
  const auto a = testproc::run_cli(std::string("--format json invert --momenta=") + kDiagonalMomenta);
  const auto b = testproc::run_cli(std::string("invert --momenta=") + kDiagonalMomenta + " --format json");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["det"].get<double>(), 1.0);
}

TEST(Executable, ExitCodes) {
  const std::string err = temp_path("stderr.txt");
  EXPECT_EQ(testproc::run_cli("invert --momenta=0,0,0,0,0,0,0,0,0", err).exit_code, 2);
  EXPECT_EQ(testproc::slurp(err).rfind("InconsistentMomenta: ", 0), 0u);
  EXPECT_EQ(testproc::run_cli("invert --momenta=1,2", err).exit_code, 1);
  EXPECT_EQ(testproc::slurp(err).rfind("InvalidArgument: ", 0), 0u);
  EXPECT_EQ(testproc::run_cli("frobnicate").exit_code, 64);
  EXPECT_EQ(testproc::run_cli("").exit_code, 64);
  EXPECT_EQ(testproc::run_cli("--kappa 0 invert --momenta=1,0,0,0,0,0,0,0,1").exit_code, 64);
  EXPECT_EQ(testproc::run_cli("check --trials 0").exit_code, 64);
  EXPECT_EQ(testproc::run_cli("transform --x=1,0,0,0,0,0,0,0,1").exit_code, 64);
  EXPECT_EQ(testproc::run_cli("check --trials 3 --tol determinant_identity=0").exit_code, 1);
  std::filesystem::remove(err);
}

TEST(Executable, TransformSources) {
  const std::string file = temp_path("matrix.txt");
  {
    std::ofstream f(file);
    f << "1 0 0 0 0 0\n0 0 1 0 0 0\n0 0 0 0 1 0\n";
  }
  const auto from_file = testproc::run_cli("transform --matrix-file " + file + " --x=1,2,3,4,5,6,7,8,9");
  const auto inline_m = testproc::run_cli("transform --matrix=1,0,0,0,0,0,0,0,1,0,0,0,0,0,0,0,1,0 --x=1,2,3,4,5,6,7,8,9");
  EXPECT_EQ(from_file.exit_code, 0);
  EXPECT_EQ(from_file.out, inline_m.out);
  EXPECT_NE(from_file.out.find("\n1,2,3,4,5,6,7,8,9,"), std::string::npos);
  const auto random1 = testproc::run_cli("--seed 9 transform --random --x=1,2,3,4,5,6,7,8,9");
  const auto random2 = testproc::run_cli("--seed 9 transform --random --x=1,2,3,4,5,6,7,8,9");
  EXPECT_EQ(random1.exit_code, 0);
  EXPECT_EQ(random1.out, random2.out);
  EXPECT_EQ(testproc::run_cli("transform --random --matrix-file " + file + " --x=1,2,3,4,5,6,7,8,9").exit_code, 64);
  std::filesystem::remove(file);
}

TEST(Executable, ReduceAndOutputFile) {
  const std::string out = temp_path("reduce.csv");
  const auto r = testproc::run_cli("reduce4d --xdot03=2,0,0,0 --out " + out);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(testproc::slurp(out), "x8dot,finsler_density,minkowski_density\n2,-2,-2\n");
  std::filesystem::remove(out);
}

TEST(Executable, CheckIsDeterministic) {
  const auto a = testproc::run_cli("check --seed 4 --trials 5");
  const auto b = testproc::run_cli("check --seed 4 --trials 5");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}
