#pragma once

// Verification reports emitted by the command-line tools: named checks with
// the value, the tolerance it was tested against, and a derived pass flag.
// Serialization is deterministic so that identical runs produce identical
// bytes; the timestamp and wall-clock duration can be suppressed for
// reproducibility tests.

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace krzyz {

using Json = nlohmann::ordered_json;

struct Check {
  std::string name;
  Json value;
  double tolerance = 0;
  std::string reference;
  bool pass = false;
  Json expected;  // optional context, null when absent
};

inline Json to_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

// |value - expected| <= tolerance
inline Check check_close(std::string name, double value, double expected, double tolerance,
                         std::string reference) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.tolerance = tolerance;
  c.reference = std::move(reference);
  c.expected = expected;
  c.pass = std::abs(value - expected) <= tolerance;
  return c;
}

// value in [lo - slack_lo, hi + slack_hi] with the range recorded
inline Check check_in_range(std::string name, double value, double lo, double hi,
                            std::string reference) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.tolerance = 0;
  c.reference = std::move(reference);
  c.expected = Json::array({lo, hi});
  c.pass = value >= lo && value <= hi;
  return c;
}

// value <= bound
inline Check check_below(std::string name, double value, double bound, std::string reference) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.tolerance = bound;
  c.reference = std::move(reference);
  c.pass = value <= bound;
  return c;
}

struct Report {
  std::string command;
  Json params = Json::object();
  std::vector<Check> results;
  std::uint64_t seed = 0;
  double duration_s = 0;
  bool with_timestamp = true;
  std::string timestamp;
  Json data;  // optional payload (coefficient tables etc.), null when absent

  void add(Check c) { results.push_back(std::move(c)); }

  bool all_pass() const {
    for (const auto& c : results)
      if (!c.pass) return false;
    return true;
  }

  int exit_code() const { return all_pass() ? 0 : 1; }

  Json to_json() const {
    Json j;
    j["schema"] = 1;
    j["command"] = command;
    j["params"] = params;
    Json rs = Json::array();
    for (const auto& c : results) {
      Json r;
      r["name"] = c.name;
      r["value"] = c.value;
      r["tolerance"] = c.tolerance;
      r["paper_ref"] = c.reference;
      r["pass"] = c.pass;
      if (!c.expected.is_null()) r["expected"] = c.expected;
      rs.push_back(std::move(r));
    }
    j["results"] = std::move(rs);
    j["seed"] = seed;
    j["duration_s"] = with_timestamp ? duration_s : 0.0;
    if (with_timestamp) j["timestamp"] = timestamp;
    if (!data.is_null()) j["data"] = data;
    j["pass"] = all_pass();
    return j;
  }
};

}  // namespace krzyz
