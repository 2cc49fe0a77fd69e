#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace spinolab {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, skipped };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "?";
}

struct Check {
  std::string id;
  Status status = Status::pass;
  double residual = 0;
  // Stable name of the identity being checked.
  std::string tag;
  std::string detail;
};

struct RunConfig {
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int samples = 100;
};

class Report {
 public:
  explicit Report(std::string suite, RunConfig config = {}) : suite_(std::move(suite)), config_(config) {}

  const std::string& suite() const { return suite_; }
  const RunConfig& config() const { return config_; }
  const std::vector<Check>& checks() const { return checks_; }
  Json& extras() { return extras_; }
  const Json& extras() const { return extras_; }

  void add(std::string id, bool ok, double residual, std::string tag, std::string detail = {}) {
    checks_.push_back({std::move(id), ok ? Status::pass : Status::fail, residual, std::move(tag), std::move(detail)});
  }

  // Passes when residual < tol (the run tolerance by default).
  void add_residual(std::string id, double residual, std::string tag, double tol = -1, std::string detail = {}) {
    if (tol < 0) tol = config_.tol;
    add(std::move(id), residual < tol, residual, std::move(tag), std::move(detail));
  }

  void skip(std::string id, std::string tag, std::string detail) {
    checks_.push_back({std::move(id), Status::skipped, 0, std::move(tag), std::move(detail)});
  }

  void merge(const Report& other, const std::string& prefix = {}) {
    for (Check c : other.checks_) {
      if (!prefix.empty()) c.id = prefix + "." + c.id;
      checks_.push_back(std::move(c));
    }
    if (!other.extras_.is_null() && !other.extras_.empty()) extras_[prefix.empty() ? other.suite_ : prefix] = other.extras_;
  }

  bool passed() const {
    for (const auto& c : checks_)
      if (c.status == Status::fail) return false;
    return true;
  }

  int count(Status s) const {
    int n = 0;
    for (const auto& c : checks_) n += c.status == s;
    return n;
  }

  Json to_json() const {
    Json j;
    j["suite"] = suite_;
    j["seed"] = config_.seed;
    j["tolerance"] = config_.tol;
    j["samples"] = config_.samples;
    j["status"] = passed() ? "pass" : "fail";
    Json checks = Json::array();
    for (const auto& c : checks_) {
      Json e;
      e["id"] = c.id;
      e["status"] = status_name(c.status);
      e["residual"] = c.residual;
      e["tag"] = c.tag;
      if (!c.detail.empty()) e["detail"] = c.detail;
      checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    if (!extras_.is_null() && !extras_.empty()) j["data"] = extras_;
    return j;
  }

  std::string summary() const {
    std::ostringstream out;
    out << suite_ << ": " << count(Status::pass) << " passed, " << count(Status::fail) << " failed, "
        << count(Status::skipped) << " skipped\n";
    for (const auto& c : checks_)
      if (c.status == Status::fail)
        out << "  FAIL " << c.id << " residual=" << c.residual << (c.detail.empty() ? "" : " (" + c.detail + ")")
            << "\n";
    return out.str();
  }

 private:
  std::string suite_;
  RunConfig config_;
  std::vector<Check> checks_;
  Json extras_ = Json::object();
};

}  // namespace spinolab
