#pragma once

// Uniform pass/fail reporting for the CLI: a report is a titled list of
// named checks. Text and JSON emitters are deterministic (stable ordering,
// fixed number formatting) so repeated runs compare byte for byte.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropibary/bundlecheck.hpp"

namespace tropibary {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string title;
  std::vector<CheckResult> checks;

  std::size_t failed() const {
    std::size_t f = 0;
    for (const auto& c : checks)
      if (!c.pass) ++f;
    return f;
  }

  bool all_pass() const { return failed() == 0; }
};

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string emit_text(const Report& rep) {
  std::string out = rep.title + "\n";
  for (const auto& c : rep.checks) {
    out += "  " + c.name + ": " + (c.pass ? "PASS" : "FAIL");
    if (!c.detail.empty()) out += " (" + c.detail + ")";
    out += "\n";
  }
  out += std::to_string(rep.checks.size()) + " checks, " + std::to_string(rep.failed()) + " failed\n";
  return out;
}

inline std::string emit_json(const Report& rep) {
  nlohmann::ordered_json j;
  j["title"] = rep.title;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks)
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["total"] = rep.checks.size();
  j["failed"] = rep.failed();
  j["all_pass"] = rep.all_pass();
  return j.dump(2) + "\n";
}

// Aggregate view of a deformation verification run.
inline Report to_report(const TWReport& tw) {
  Report rep;
  rep.title = "tw-check (mode=" + tw.mode + ", epsilon=" + format_number(tw.epsilon) +
              ", shift=" + format_scalar(tw.shift) +
              (tw.mode == "interval" ? ", p=" + format_number(tw.p) : "") + ")";
  rep.checks.push_back({"samples_pass", tw.failures == 0,
                        std::to_string(tw.samples - tw.failures) + " of " + std::to_string(tw.samples)});
  rep.checks.push_back({"fiber_preserved", tw.fiber_preserved, ""});
  rep.checks.push_back({"images_disjoint", tw.images_disjoint,
                        tw.disjointness_vacuous ? "vacuous: no applicable samples"
                                                : std::to_string(tw.applicable) + " applicable"});
  rep.checks.push_back({"g_within_epsilon", tw.g_close + tw.g_close_bound <= tw.epsilon,
                        "max " + format_number(tw.g_close) + " + bound " + format_number(tw.g_close_bound)});
  rep.checks.push_back({"h_within_epsilon", tw.h_close + tw.h_close_bound <= tw.epsilon,
                        "max " + format_number(tw.h_close) + " + bound " + format_number(tw.h_close_bound)});
  if (tw.mode == "mr") {
    bool beta_ok = true;
    for (const auto& r : tw.details) beta_ok = beta_ok && r.beta_in_k;
    rep.checks.push_back({"barycenter_in_k", beta_ok, ""});
  } else {
    bool l1_ok = true;
    for (const auto& r : tw.details) l1_ok = l1_ok && r.l1_identity;
    rep.checks.push_back({"l_at_1_identity", l1_ok, ""});
  }
  std::size_t shown = 0;
  for (const auto& r : tw.details) {
    if (r.ok || shown == 3) continue;
    ++shown;
    std::string detail = r.note.empty() ? "g " + format_number(r.g_displacement) + " + " +
                                              format_number(r.g_bound) + ", h " +
                                              format_number(r.h_displacement) + " + " + format_number(r.h_bound)
                                        : r.note;
    rep.checks.push_back({"sample_" + std::to_string(r.index), false, detail});
  }
  return rep;
}

}  // namespace tropibary
