#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "shrinker/frequency.hpp"
#include "shrinker/harmonic_family.hpp"
#include "shrinker/report.hpp"

namespace shrinker {

/// Seeded source of random test inputs.
class CombinationSampler {
public:
  explicit CombinationSampler(std::uint64_t seed) : generator_(seed) {}

  /// Uniform on [0, 1) from the top 53 bits.
  double uniform();
  int integer(int lo, int hi);

  /// 1 … max_terms distinct polynomial modes of degree ≤ max_degree that
  /// exist in rank k, with |c| ∈ [0.1, 2] and random sign.
  HarmonicCombination polynomial(int k, int max_degree, int max_terms = 4);

private:
  std::mt19937_64 generator_;
};

struct VerifyConfig {
  /// Model descriptors; empty means default_verify_models().
  std::vector<std::string> models;
  std::uint64_t seed = 1;
  FrequencyOptions frequency{};
  std::size_t mc_samples = 100000;
  /// Random combinations per scenario family.
  std::size_t combinations = 6;
  double t_min = 1e-2;
  double t_max = 1e2;
  double points_per_decade = 40.0;
};

std::vector<std::string> default_verify_models();

/// Runs the full identity matrix on every configured model.
IdentityReport run_verification(const VerifyConfig& config);

/// Fixed worked values on the Gaussian k = 3 model.
IdentityReport anchor_checks(const FrequencyOptions& options = {});

nlohmann::json verify_run_info(const VerifyConfig& config);

}  // namespace shrinker
