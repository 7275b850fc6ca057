#ifndef TWISTCERT_REPORT_HPP_
#define TWISTCERT_REPORT_HPP_

#include <string>

#include "twistcert/certify.hpp"

namespace twistcert {

namespace detail {

inline void render_line(std::string& out, const StepReport& s) {
  out += s.ok() ? "PASS " : "FAIL ";
  out += s.name + " " + s.kind;
  out += s.twistcalc ? " tc=y" : " tc=n";
  out += s.homology ? " h=y" : " h=n";
  out += '\n';
}

}  // namespace detail

// One line per step, then one per certificate output, then the summary. The
// step count in the summary excludes outputs; failures include them.
inline std::string render_report(const Report& r) {
  std::string out;
  for (const auto& s : r.steps) detail::render_line(out, s);
  for (const auto& s : r.outputs) detail::render_line(out, s);
  out += "genus=" + std::to_string(r.genus) +
         " steps=" + std::to_string(r.steps.size()) +
         " failures=" + std::to_string(r.failures()) + '\n';
  return out;
}

}  // namespace twistcert

#endif  // TWISTCERT_REPORT_HPP_
