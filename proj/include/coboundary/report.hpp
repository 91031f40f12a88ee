#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

namespace coboundary {

using Json = nlohmann::json;

/// Invalid check parameters (CLI exit code 2).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Status { pass, fail, not_derivable };

std::string status_text(Status s);

/// Outcome of one check. Sub-checks fold into the status: any failing
/// sub-check makes the report fail; not-derivable outranks pass only.
struct CheckReport {
  std::string check;
  Json params = Json::object();
  Status status = Status::pass;
  Json subchecks = Json::array();
  Json witnesses = Json::array();
  Json details = Json::object();

  void record(const std::string& name, Status s, Json detail = Json::object());
  void record(const std::string& name, bool ok, Json detail = Json::object()) {
    record(name, ok ? Status::pass : Status::fail, std::move(detail));
  }
  /// Informational sub-check; never changes the status.
  void note(const std::string& name, Json detail);
  void witness(Json w) { witnesses.push_back(std::move(w)); }
  bool passed() const { return status == Status::pass; }

  Json to_json() const;
};

}  // namespace coboundary
