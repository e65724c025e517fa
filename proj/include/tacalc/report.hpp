#pragma once

// Command reports: one JSON document with the command echo, results,
// cross-checks and warnings, plus a flattened text rendering of it.

#include <json.hpp>

#include "tacalc/error.hpp"

namespace tacalc {

using Json = nlohmann::ordered_json;

inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::cap_exceeded: return 3;
    case ErrorKind::cross_check: return 4;
    default: return 2;
  }
}

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::usage: return "usage";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::field_mismatch: return "field mismatch";
    case ErrorKind::dimension_mismatch: return "dimension mismatch";
    case ErrorKind::cap_exceeded: return "cap exceeded";
    case ErrorKind::cross_check: return "cross-check";
    case ErrorKind::io: return "io";
  }
  return "";
}

class Report {
 public:
  Report(std::string command, std::vector<std::string> args) {
    doc_["command"] = std::move(command);
    doc_["arguments"] = std::move(args);
    doc_["field"] = nullptr;
    doc_["results"] = Json::object();
    doc_["cross_checks"] = Json::array();
    doc_["warnings"] = Json::array();
    doc_["exit_status"] = 0;
  }

  void set_field(const std::string& f) { doc_["field"] = f; }
  Json& results() { return doc_["results"]; }
  const Json& document() const { return doc_; }

  void cross_check(const std::string& name, bool passed, const std::string& detail) {
    doc_["cross_checks"].push_back(Json{{"name", name}, {"passed", passed}, {"detail", detail}});
    if (!passed) doc_["exit_status"] = 4;
  }

  void warn(const std::string& w) { doc_["warnings"].push_back(w); }

  void error(const Error& e) {
    doc_["error"] = Json{{"kind", to_string(e.kind())}, {"message", e.what()}};
    const int code = exit_code(e.kind());
    if (code > exit_status()) doc_["exit_status"] = code;
  }

  int exit_status() const { return doc_["exit_status"].get<int>(); }

  std::string json() const { return doc_.dump(2) + "\n"; }

  /// One "path: value" line per scalar; arrays of scalars go on one line.
  std::string text() const {
    std::string out;
    flatten(doc_, "", out);
    return out;
  }

 private:
  // Multi-line strings stay JSON-quoted so every record is one line.
  static std::string scalar(const Json& j) {
    if (!j.is_string()) return j.dump();
    const auto& s = j.get_ref<const std::string&>();
    return s.find('\n') == std::string::npos ? s : j.dump();
  }

  static void flatten(const Json& j, const std::string& path, std::string& out) {
    if (j.is_object()) {
      if (j.empty()) return;
      for (auto it = j.begin(); it != j.end(); ++it)
        flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    } else if (j.is_array()) {
      if (j.empty()) return;
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      const bool strings = std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_string(); });
      if (flat && !strings) {
        out += path + ":";
        for (const auto& e : j) out += " " + scalar(e);
        out += "\n";
        return;
      }
      for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    } else {
      out += path + ": " + scalar(j) + "\n";
    }
  }

  Json doc_;
};

}  // namespace tacalc
