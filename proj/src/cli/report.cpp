#include "coboundary/report.hpp"

namespace coboundary {

std::string status_text(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::not_derivable:
      return "not-derivable-at-degree";
  }
  return "fail";
}

void CheckReport::record(const std::string& name, Status s, Json detail) {
  Json entry = Json::object();
  entry["name"] = name;
  entry["status"] = status_text(s);
  if (!detail.is_null() && !(detail.is_object() && detail.empty())) entry["detail"] = std::move(detail);
  subchecks.push_back(std::move(entry));
  if (s == Status::fail) {
    status = Status::fail;
  } else if (s == Status::not_derivable && status == Status::pass) {
    status = Status::not_derivable;
  }
}

void CheckReport::note(const std::string& name, Json detail) {
  Json entry = Json::object();
  entry["name"] = name;
  entry["status"] = "info";
  entry["detail"] = std::move(detail);
  subchecks.push_back(std::move(entry));
}

Json CheckReport::to_json() const {
  Json j = Json::object();
  j["check"] = check;
  j["params"] = params;
  j["status"] = status_text(status);
  j["subchecks"] = subchecks;
  if (!witnesses.empty()) j["witnesses"] = witnesses;
  if (!details.empty()) j["details"] = details;
  return j;
}

}  // namespace coboundary
