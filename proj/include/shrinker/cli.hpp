#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace shrinker {

struct RunConfig {
  std::string model = "gaussian:k=3";
  /// Set when --model was given; `verify` then runs that model only.
  bool model_given = false;
  std::string modes = "poly:d=1,idx=0,c=1";
  double alpha = 2.0;
  double t_min = 1e-2;
  double t_max = 1e2;
  double ppd = 40.0;
  std::string spacing = "log";
  std::size_t points = 100;  ///< linear spacing only
  std::string engine = "closed";
  double tol_rel = 1e-10;
  double tol_abs = 1e-14;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 1;
  std::string out;
  std::string json_out;
  double T = 4.0;
  double epsilon = 0.1;
  double lambda = 1.0;
  int d_max = 6;
  std::size_t combinations = 6;
};

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailedChecks = 1;
inline constexpr int kUsage = 2;
}  // namespace exit_code

/// Runs one of models, volume, frequency, verify, doubling, dimension.
/// Primary artifacts go to `config.out` (or `out` when empty); the summary
/// goes to `out` when a file was written, else to `err`. Parse and domain
/// errors are reported on `err` and return exit_code::kUsage.
int run(const std::string& subcommand, const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace shrinker
