#pragma once

// Structured check reports with canonical serialization: byte-identical
// across runs for identical inputs; timing is kept out of the payload.

#include <string>
#include <vector>

#include "cfloer/fixtures.hpp"

namespace cfloer {

struct Check {
  std::string name;
  std::string status;  // pass | fail | skip
  Json got;
  Json want;
  std::string provenance;
};

class Report {
public:
  explicit Report(std::string tool_version = "1.0.0")
      : version_(std::move(tool_version)) {}

  void set_input(const Json& payload);
  void add(Check c);
  void pass(const std::string& name, Json got, Json want = Json(),
            const std::string& provenance = "");
  void fail_check(const std::string& name, Json got, Json want = Json(),
                  const std::string& provenance = "");
  void check(const std::string& name, bool ok, Json got, Json want = Json(),
             const std::string& provenance = "");
  void skip(const std::string& name, const std::string& why);

  bool all_passed() const;
  Json to_json() const;
  std::string text() const;

private:
  std::string version_;
  std::string input_digest_ = "none";
  std::vector<Check> checks_;
};

// FNV-1a digest of the canonical dump; stable across runs.
std::string digest(const Json& j);

}  // namespace cfloer
