#include "shrinker/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace shrinker {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::skipped:
      return "skipped";
  }
  return "unknown";
}

IdentityEntry judged(std::string id, nlohmann::json params, double residual, double tol,
                     std::string engine) {
  IdentityEntry entry;
  entry.id = std::move(id);
  entry.params = std::move(params);
  entry.residual = residual;
  entry.tol = tol;
  // NaN residuals fail.
  entry.verdict = (residual <= tol) ? Verdict::pass : Verdict::fail;
  entry.engine = std::move(engine);
  return entry;
}

IdentityEntry skipped(std::string id, nlohmann::json params, std::string reason, std::string engine) {
  IdentityEntry entry;
  entry.id = std::move(id);
  entry.params = std::move(params);
  entry.verdict = Verdict::skipped;
  entry.reason = std::move(reason);
  entry.engine = std::move(engine);
  return entry;
}

void IdentityReport::add(IdentityEntry entry) { entries_.push_back(std::move(entry)); }

void IdentityReport::append(const IdentityReport& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

std::size_t IdentityReport::count(Verdict verdict) const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [verdict](const IdentityEntry& e) { return e.verdict == verdict; }));
}

std::vector<IdentityEntry> IdentityReport::sorted() const {
  std::vector<IdentityEntry> result = entries_;
  std::stable_sort(result.begin(), result.end(), [](const IdentityEntry& a, const IdentityEntry& b) {
    if (a.id != b.id) {
      return a.id < b.id;
    }
    return a.params.dump() < b.params.dump();
  });
  return result;
}

namespace {

nlohmann::json finite_or_null(double value) {
  if (std::isfinite(value)) {
    return value;
  }
  return nullptr;
}

}  // namespace

nlohmann::json IdentityReport::to_json(const nlohmann::json& run_info) const {
  nlohmann::json entries = nlohmann::json::array();
  for (const IdentityEntry& e : sorted()) {
    nlohmann::json item = {
        {"id", e.id},
        {"params", e.params},
        {"residual", finite_or_null(e.residual)},
        {"tol", e.tol},
        {"verdict", std::string(to_string(e.verdict))},
        {"engine", e.engine},
        {"seed", e.seed},
    };
    if (!e.reason.empty()) {
      item["reason"] = e.reason;
    }
    if (!e.details.empty()) {
      item["details"] = e.details;
    }
    entries.push_back(std::move(item));
  }
  nlohmann::json report = {
      {"schema_version", kSchemaVersion},
      {"entries", std::move(entries)},
      {"summary",
       {{"pass", count(Verdict::pass)}, {"fail", count(Verdict::fail)}, {"skipped", count(Verdict::skipped)}}},
  };
  if (!run_info.empty()) {
    report["run"] = run_info;
  }
  return report;
}

std::string IdentityReport::summary_table() const {
  struct Group {
    std::size_t pass = 0, fail = 0, skipped = 0;
    double worst = 0.0;
    double tol = 0.0;
  };
  std::map<std::string, Group> groups;
  for (const IdentityEntry& e : entries_) {
    Group& g = groups[e.id];
    switch (e.verdict) {
      case Verdict::pass: ++g.pass; break;
      case Verdict::fail: ++g.fail; break;
      case Verdict::skipped: ++g.skipped; break;
    }
    if (e.verdict != Verdict::skipped && !(e.residual <= g.worst)) {
      g.worst = e.residual;
    }
    g.tol = std::max(g.tol, e.tol);
  }
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-36s %6s %6s %7s %12s %10s\n", "identity", "pass", "fail", "skipped",
                "max_resid", "tol");
  out << line;
  for (const auto& [id, g] : groups) {
    std::snprintf(line, sizeof line, "%-36s %6zu %6zu %7zu %12.3e %10.1e\n", id.c_str(), g.pass, g.fail, g.skipped,
                  g.worst, g.tol);
    out << line;
  }
  for (const IdentityEntry& e : sorted()) {
    if (e.verdict == Verdict::fail) {
      out << "FAIL " << e.id << " residual=" << e.residual << " tol=" << e.tol << " " << e.params.dump() << "\n";
    }
  }
  out << "pass=" << count(Verdict::pass) << " fail=" << count(Verdict::fail)
      << " skipped=" << count(Verdict::skipped) << "\n";
  return out.str();
}

}  // namespace shrinker
