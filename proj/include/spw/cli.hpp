#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "spw/inversion.hpp"
#include "spw/quadrature.hpp"

namespace spw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

/// Everything a command needs; filled from the config file and flags.
struct ExperimentConfig {
  std::string fn = "exp:a=-1";
  double alpha = 0.78539816339744830962;
  std::optional<double> h;
  std::optional<double> p;
  double epsilon = 0.1;
  QuadratureBudget budget{};
  double min_margin = kDefaultMinMargin;
  double angular_margin = kDefaultAngularMargin;
  GSource g_source = GSource::Oracle;
  std::vector<double> thetas;
  int theta_grid = 9;
  std::vector<cplx> omegas;
  std::vector<cplx> zs;
  double s_min = 1.0;
  double s_max = 65536.0;
  int s_points = 64;
  int window = 8;
  int degree = 24;
  std::optional<double> threshold;
  bool skip_invalid = false;
  std::string out;
};

/// Function, sector and contour after re-validating the config.
struct Experiment {
  TestFunction fn;
  ContourGamma gamma;
};

/// Throws spw::Error (ConfigError / InvalidArgument / InvalidApex) on violated constraints.
Experiment resolve(const ExperimentConfig& config);

int cmd_transform(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_invert(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_roundtrip(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_indicator(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_probe(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_selftest(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs the command.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spw::cli
