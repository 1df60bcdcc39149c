#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spw/cli.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = spw::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  return rows;
}

std::vector<std::string> fields(const std::string& row) {
  std::vector<std::string> cells;
  std::istringstream in(row);
  for (std::string cell; std::getline(in, cell, ',');) cells.push_back(cell);
  return cells;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::path(SPW_TEST_TMPDIR) / name;
}

}  // namespace

TEST_CASE("transform of EXP(-1) at the origin") {
  const Outcome o = run({"transform", "--fn", "exp:a=-1", "--theta", "0", "--omega", "0"});
  REQUIRE(o.code == 0);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "theta,omega_re,omega_im,g_re,g_im,est_error");
  const auto cells = fields(rows[1]);
  REQUIRE(cells.size() == 6);
  CHECK_THAT(std::stod(cells[4]), WithinAbs(-0.15915494309189535, 1e-10));
  CHECK(o.out.find('\r') == std::string::npos);
}

TEST_CASE("transform of the zero function") {
  const Outcome o = run({"transform", "--fn", "zero", "--theta", "0", "--omega", "-1"});
  REQUIRE(o.code == 0);
  const auto cells = fields(lines(o.out)[1]);
  CHECK(std::stod(cells[3]) == 0.0);
  CHECK(std::stod(cells[4]) == 0.0);
}

TEST_CASE("transform outside the half-plane is a numeric failure") {
  const Outcome o = run({"transform", "--fn", "exp:a=1", "--theta", "0", "--omega", "0"});
  CHECK(o.code == 3);
  CHECK_THAT(o.err, ContainsSubstring("OutsideDomain"));

  const Outcome skipped = run({"transform", "--fn", "exp:a=1", "--theta", "0", "--omega", "0", "--omega=-2",
                               "--skip-invalid"});
  CHECK(skipped.code == 0);
  CHECK(lines(skipped.out).size() == 2);
}

TEST_CASE("transform without a direction uses the concatenated transform") {
  const Outcome o = run({"transform", "--fn", "exp:a=-1", "--omega=0-2i"});
  REQUIRE(o.code == 0);
  const auto cells = fields(lines(o.out)[1]);
  CHECK_THAT(std::stod(cells[0]), WithinAbs(-0.78539816339744831, 1e-9));
}

TEST_CASE("configuration errors exit with code 2") {
  CHECK(run({"transform", "--alpha", "2", "--omega", "0"}).code == 2);
  CHECK(run({"transform", "--fn", "nope", "--omega", "0"}).code == 2);
  CHECK(run({"transform", "--omega", "abc"}).code == 2);
  CHECK(run({"transform", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"invert", "--g-source", "exact"}).code == 2);

  const Outcome apex = run({"invert", "--fn", "exp:a=1", "--p=-1"});
  CHECK(apex.code == 2);
  CHECK_THAT(apex.err, ContainsSubstring("requires p·cos(alpha) < -h"));

  const Outcome alpha = run({"invert", "--alpha", "1.6"});
  CHECK_THAT(alpha.err, ContainsSubstring("requires 0 < alpha < pi/2"));

  const Outcome low_h = run({"invert", "--fn", "exp:a=1", "--h", "0.5"});
  CHECK(low_h.code == 2);
  CHECK_THAT(low_h.err, ContainsSubstring("below the exponential type"));

  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("round trip of EXP(-1) with the closed-form transform") {
  const Outcome o = run({"roundtrip", "--fn", "exp:a=-1", "--p=-1"});
  REQUIRE(o.code == 0);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 11);
  CHECK_THAT(rows.back(), ContainsSubstring("# summary max_rel="));
  for (std::size_t k = 1; k < 10; ++k) CHECK(fields(rows[k]).back() == "ok");

  CHECK(run({"roundtrip", "--fn", "exp:a=-1", "--threshold", "1e-30"}).code == 3);

  const Outcome zero = run({"roundtrip", "--fn", "zero"});
  CHECK(zero.code == 0);
  CHECK_THAT(zero.out, ContainsSubstring("max_rel=0 "));
}

TEST_CASE("round trip with a slowly decaying contour") {
  const Outcome o = run({"roundtrip", "--fn", "exp:a=-1", "--p=-0.0001"});
  CHECK((o.code == 0 || o.code == 3));
  if (o.code == 3) CHECK_THAT(o.out + o.err, ContainsSubstring("BudgetExceeded"));
}

TEST_CASE("inversion at user points") {
  const Outcome o = run({"invert", "--fn", "exp:a=1", "--z", "1", "--z", "0.5+0.2i"});
  REQUIRE(o.code == 0);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 3);
  CHECK(std::stod(fields(rows[1]).back()) < 1e-9);

  CHECK(run({"invert", "--fn", "exp:a=1", "--z=-1"}).code == 3);
  CHECK(run({"invert", "--fn", "exp:a=1", "--z=-1", "--z", "1", "--skip-invalid"}).code == 0);
}

TEST_CASE("indicator on a nine-point theta grid") {
  const Outcome o = run({"indicator", "--fn", "exp:a=1", "--theta-grid", "9"});
  REQUIRE(o.code == 0);
  const auto rows = lines(o.out);
  REQUIRE(rows.size() == 10);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto cells = fields(rows[k]);
    CHECK_THAT(std::stod(cells[1]), WithinAbs(std::cos(std::stod(cells[0])), 1e-8));
  }
}

TEST_CASE("probe locates the pole") {
  const Outcome o = run({"probe", "--fn", "exp:a=1", "--theta", "0"});
  REQUIRE(o.code == 0);
  const auto cells = fields(lines(o.out)[1]);
  CHECK_THAT(std::stod(cells[1]), WithinAbs(-1.0, 1e-3));
  CHECK_THAT(std::stod(cells[2]), WithinAbs(0.0, 1e-3));
}

TEST_CASE("config files and command-line overrides") {
  const auto path = scratch("spw_test.conf");
  {
    std::ofstream conf(path);
    conf << "# comment line\n"
         << "fn=exp:a=1\n"
         << "theta=0\n"
         << "omega=-3\n";
  }
  const Outcome from_file = run({"transform", "--config", path.string()});
  REQUIRE(from_file.code == 0);
  const auto cells = fields(lines(from_file.out)[1]);
  // -1/(2 pi i (-3 + 1)) = -i/(4 pi)
  CHECK_THAT(std::stod(cells[4]), WithinAbs(-1.0 / (4.0 * M_PI), 1e-10));

  const Outcome overridden = run({"transform", "--config", path.string(), "--fn", "exp:a=-1"});
  REQUIRE(overridden.code == 0);
  CHECK_THAT(std::stod(fields(lines(overridden.out)[1])[4]), WithinAbs(-1.0 / (8.0 * M_PI), 1e-10));

  CHECK(run({"transform", "--config", scratch("missing.conf").string()}).code == 2);
}

TEST_CASE("output file and deterministic rows") {
  const auto path = scratch("spw_test_out.csv");
  std::filesystem::remove(path);
  const std::vector<std::string> args = {"indicator", "--fn", "trig", "--theta-grid", "5", "--out", path.string()};
  REQUIRE(run(args).code == 0);
  std::ifstream in(path, std::ios::binary);
  const std::string first((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(lines(first).size() == 6);
  REQUIRE(run(args).code == 0);
  std::ifstream again(path, std::ios::binary);
  const std::string second((std::istreambuf_iterator<char>(again)), std::istreambuf_iterator<char>());
  CHECK(first == second);
}

TEST_CASE("config files accept space-separated lists") {
  const auto path = scratch("spw_list.conf");
  {
    std::ofstream conf(path);
    conf << "fn = exp:a=1\n"
         << "theta = 0 0.3\n"
         << "omega = -3 -2+1i\n";
  }
  const Outcome o = run({"transform", "--config", path.string()});
  REQUIRE(o.code == 0);
  CHECK(lines(o.out).size() == 5);
}
