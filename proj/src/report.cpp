#include "cfloer/report.hpp"

#include <sstream>

namespace cfloer {

std::string digest(const Json& j) {
  std::string s = j.dump();
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

void Report::set_input(const Json& payload) { input_digest_ = digest(payload); }

void Report::add(Check c) { checks_.push_back(std::move(c)); }

void Report::pass(const std::string& name, Json got, Json want,
                  const std::string& provenance) {
  add(Check{name, "pass", std::move(got), std::move(want), provenance});
}

void Report::fail_check(const std::string& name, Json got, Json want,
                        const std::string& provenance) {
  add(Check{name, "fail", std::move(got), std::move(want), provenance});
}

void Report::check(const std::string& name, bool ok, Json got, Json want,
                   const std::string& provenance) {
  add(Check{name, ok ? "pass" : "fail", std::move(got), std::move(want), provenance});
}

void Report::skip(const std::string& name, const std::string& why) {
  add(Check{name, "skip", Json(why), Json(), ""});
}

bool Report::all_passed() const {
  for (const auto& c : checks_) {
    if (c.status == "fail") return false;
  }
  return true;
}

Json Report::to_json() const {
  Json checks = Json::array();
  for (const auto& c : checks_) {
    Json e{{"name", c.name}, {"status", c.status}};
    if (!c.got.is_null()) e["got"] = c.got;
    if (!c.want.is_null()) e["want"] = c.want;
    if (!c.provenance.empty()) e["provenance"] = c.provenance;
    checks.push_back(e);
  }
  return Json{{"version", version_}, {"input_digest", input_digest_},
              {"checks", checks}};
}

std::string Report::text() const {
  std::ostringstream os;
  for (const auto& c : checks_) {
    os << "[" << c.status << "] " << c.name;
    if (!c.got.is_null()) os << ": " << c.got.dump();
    if (!c.want.is_null()) os << " (want " << c.want.dump() << ")";
    if (!c.provenance.empty()) os << " [" << c.provenance << "]";
    os << "\n";
  }
  return os.str();
}

}  // namespace cfloer
