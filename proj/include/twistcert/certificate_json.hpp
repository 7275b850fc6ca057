#ifndef TWISTCERT_CERTIFICATE_JSON_HPP_
#define TWISTCERT_CERTIFICATE_JSON_HPP_

// JSON export of certificates. Keys keep insertion order so that the same
// certificate always serializes to the same bytes.

#include <json.hpp>

#include <string>
#include <vector>

#include "twistcert/certify.hpp"

namespace twistcert {

inline constexpr int kCertificateVersion = 1;

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson letters_json(const PCWord& w) {
  ojson a = ojson::array();
  for (const auto& l : w.letters()) a.push_back(l.str());
  return a;
}

inline ojson involutions_json(const InvolutionWord& w) {
  ojson a = ojson::array();
  for (auto x : w) a.push_back(to_string(x));
  return a;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const Certificate& cert) {
  using detail::ojson;
  ojson j;
  j["version"] = kCertificateVersion;
  j["genus"] = cert.genus.value();
  j["chain"] = cert.chain;
  j["involutions"] = ojson::array({ojson::array({"r1"}), ojson::array({"r2"}),
                                   ojson::array({"iota"})});
  if (cert.iota) {
    ojson sym = ojson::array();
    for (auto s : cert.iota->rho_prefix) sym.push_back(to_string(s));
    j["iota"] = {{"rho_prefix", sym},
                 {"rho", detail::involutions_json(cert.iota->rho)},
                 {"f1", detail::letters_json(cert.iota->f1)}};
  }

  ojson steps = ojson::array();
  for (const auto& s : cert.steps) {
    ojson mod_p = ojson::object();
    for (const auto& [p, ok] : s.verified_mod_p) mod_p[std::to_string(p)] = ok;
    ojson step;
    step["name"] = s.name;
    step["kind"] = to_string(s.kind);
    step["inputs"] = s.input_strings();
    step["result"] = detail::letters_json(s.claimed_result);
    step["membership_len"] = s.membership.flatten().size();
    step["verified"] = {{"twistcalc", s.verified_twistcalc},
                        {"homology", s.verified_homology},
                        {"mod_p", mod_p}};
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);

  ojson outputs = ojson::object();
  for (const auto& o : cert.outputs) {
    outputs[o.key] = detail::involutions_json(o.word);
  }
  j["outputs"] = std::move(outputs);
  return j;
}

// A single certificate is written as an object, several as an array.
inline std::string certificates_to_json(const std::vector<Certificate>& certs,
                                        int indent = 2) {
  if (certs.size() == 1) return to_json(certs.front()).dump(indent) + "\n";
  auto a = nlohmann::ordered_json::array();
  for (const auto& c : certs) a.push_back(to_json(c));
  return a.dump(indent) + "\n";
}

}  // namespace twistcert

#endif  // TWISTCERT_CERTIFICATE_JSON_HPP_
