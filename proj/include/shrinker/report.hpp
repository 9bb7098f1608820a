#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace shrinker {

enum class Verdict { pass, fail, skipped };

std::string_view to_string(Verdict verdict);

/// One checked identity or inequality. `residual` is the largest violation
/// measured over the entry's parameter set; the verdict is pass exactly when
/// residual ≤ tol, unless the entry was skipped (then `reason` says why).
struct IdentityEntry {
  std::string id;
  nlohmann::json params = nlohmann::json::object();
  double residual = 0.0;
  double tol = 0.0;
  Verdict verdict = Verdict::pass;
  std::string engine;
  std::uint64_t seed = 0;
  std::string reason;
  nlohmann::json details = nlohmann::json::object();
};

/// Sets residual/tol and derives the verdict from them.
IdentityEntry judged(std::string id, nlohmann::json params, double residual, double tol,
                     std::string engine);

IdentityEntry skipped(std::string id, nlohmann::json params, std::string reason, std::string engine);

class IdentityReport {
public:
  static constexpr int kSchemaVersion = 1;

  void add(IdentityEntry entry);
  void append(const IdentityReport& other);

  const std::vector<IdentityEntry>& entries() const { return entries_; }
  std::size_t count(Verdict verdict) const;
  bool all_passed() const { return count(Verdict::fail) == 0; }

  /// Entries ordered by (id, serialized params); the JSON form is stable
  /// across runs for equal inputs.
  nlohmann::json to_json(const nlohmann::json& run_info = nlohmann::json::object()) const;
  std::string summary_table() const;

private:
  std::vector<IdentityEntry> sorted() const;

  std::vector<IdentityEntry> entries_;
};

}  // namespace shrinker
