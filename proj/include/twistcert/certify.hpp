#ifndef TWISTCERT_CERTIFY_HPP_
#define TWISTCERT_CERTIFY_HPP_

// Derivation chains showing that rho1, rho2 and one twist element F1 generate
// elements A1 A2^-1, B1 B2^-1, C1 C2^-1 (which together with R generate the
// mapping class group), and their repackaging over three involutions.
//
// Every inference is one of: an axiom, conjugation by a symmetry word,
// conjugation of one derived element by a product of derived elements (curve
// images computed by the twist evaluator), a product, or an inverse. Each step
// is checked twice: symbolically (twistcalc + partially commutative normal
// form) and on homology (the matrix of the membership expression must equal
// the matrix of the claimed twist word).

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "twistcert/group_expr.hpp"
#include "twistcert/homology.hpp"
#include "twistcert/surface.hpp"
#include "twistcert/twistcalc.hpp"
#include "twistcert/twistwords.hpp"

namespace twistcert {

enum class StepKind : std::uint8_t {
  Axiom,
  SymConjugation,
  Conjugation,
  Product,
  Inverse,
  RotationClosure,
  Involution,
};

inline std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::Axiom: return "axiom";
    case StepKind::SymConjugation: return "sym-conjugation";
    case StepKind::Conjugation: return "conjugation";
    case StepKind::Product: return "product";
    case StepKind::Inverse: return "inverse";
    case StepKind::RotationClosure: return "rotation-closure";
    case StepKind::Involution: return "lemma41";
  }
  return "?";
}

struct StepRef {
  std::string name;
  bool inverted = false;

  std::string str() const { return inverted ? name + "^-1" : name; }
  friend bool operator==(const StepRef&, const StepRef&) = default;
};

struct DerivationStep {
  std::string name;
  StepKind kind = StepKind::Axiom;
  std::vector<StepRef> conjugator;        // Conjugation: product of these
  std::vector<StepRef> operands;          // factors, or the conjugated element
  std::vector<SymmetryGen> symmetry;      // symmetry conjugator / rho prefix
  std::vector<CurveId> tuple_in;          // Conjugation: recorded curve images
  std::vector<CurveId> tuple_out;
  std::optional<PCWord> involution_x;     // Involution: X and Y = rho X rho
  std::optional<PCWord> involution_y;
  PCWord claimed_result;
  GroupExpr membership;
  bool verified_twistcalc = false;
  bool verified_homology = false;
  std::map<std::int64_t, bool> verified_mod_p;

  DerivationStep(std::string n, StepKind k, Genus g)
      : name(std::move(n)), kind(k), claimed_result(g) {}

  std::vector<std::string> input_strings() const {
    std::vector<std::string> out;
    if (!conjugator.empty()) {
      std::string c;
      for (const auto& r : conjugator) c += (c.empty() ? "" : " ") + r.str();
      out.push_back(c);
    }
    if (!symmetry.empty()) {
      std::string s;
      for (auto x : symmetry) s += (s.empty() ? "" : " ") + to_string(x);
      out.push_back(s);
    }
    for (const auto& r : operands) out.push_back(r.str());
    if (involution_x) out.push_back(involution_x->str());
    return out;
  }
};

// The third involution iota = rho * F1 (rho = rho4 at genus 6, rho3 above).
struct InvolutionDef {
  std::vector<SymmetryGen> rho_prefix;
  InvolutionWord rho;
  PCWord f1;
};

struct CertificateOutput {
  std::string key;          // "A1A2inv", "B1B2inv", "C1C2inv", "R"
  std::string source_step;  // empty for R
  InvolutionWord word;
};

struct Certificate {
  Genus genus;
  std::string chain;  // "genus6" or "general"
  std::vector<DerivationStep> steps;
  std::optional<InvolutionDef> iota;
  std::vector<CertificateOutput> outputs;

  const DerivationStep* find(const std::string& name) const {
    for (const auto& s : steps)
      if (s.name == name) return &s;
    return nullptr;
  }
};

class CertificateError : public std::runtime_error {
 public:
  CertificateError(std::string step, const std::string& what)
      : std::runtime_error("step " + step + ": " + what),
        step_(std::move(step)) {}
  const std::string& step() const noexcept { return step_; }

 private:
  std::string step_;
};

// "A_1B_3^-1" for the word A1 B3^-1.
inline std::string element_name(const PCWord& w) {
  std::string s;
  for (const auto& l : w.letters()) {
    s += std::string(1, family_char(l.curve.family())) + "_" +
         std::to_string(l.curve.index());
    if (l.exponent < 0) s += "^-1";
  }
  return s.empty() ? "1" : s;
}

// The twist element F1 generating together with rho1, rho2.
inline PCWord generator_word(Genus g) {
  if (g.value() < 6) {
    throw std::invalid_argument("genus must be >= 6, got " +
                                std::to_string(g.value()));
  }
  return pc_normalize(parse_word(
      g.value() == 6 ? "A1C1B3B4^-1C5^-1A6^-1" : "A1C1B3B5^-1C6^-1A7^-1", g));
}

inline std::vector<CurveId> parse_curves(std::string_view s, Genus g) {
  const auto w = parse_word(s, g);
  std::vector<CurveId> out;
  for (const auto& l : w.letters()) out.push_back(l.curve);
  return out;
}

struct StepReport {
  std::string name;
  std::string kind;
  bool twistcalc = false;
  bool homology = false;
  std::map<std::int64_t, bool> mod_p;
  std::string detail;

  bool ok() const {
    if (!twistcalc || !homology) return false;
    for (const auto& [p, v] : mod_p)
      if (!v) return false;
    return true;
  }
};

struct Report {
  int genus = 0;
  std::vector<StepReport> steps;
  std::vector<StepReport> outputs;

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& s : steps) n += !s.ok();
    for (const auto& s : outputs) n += !s.ok();
    return n;
  }
  bool ok() const { return failures() == 0; }
};

namespace detail {

// Re-derives each step from the claimed results of earlier steps.
class StepChecker {
 public:
  StepChecker(Genus g, std::size_t depth_bound)
      : genus_(g), depth_bound_(depth_bound), f1_(generator_word(g)) {}

  const PCWord& f1() const { return f1_; }

  void add(const DerivationStep& s) { index_.insert_or_assign(s.name, s); }
  void reset() { index_.clear(); }

  const DerivationStep& lookup(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) {
      throw CertificateError(name, "unknown step reference");
    }
    return it->second;
  }

  PCWord word_of(const StepRef& r) const {
    const auto& w = lookup(r.name).claimed_result;
    return r.inverted ? invert(w) : w;
  }

  GroupExpr membership_of(const StepRef& r) const {
    const auto& m = lookup(r.name).membership;
    return r.inverted ? m.inverse() : m;
  }

  GroupExpr expected_membership(const DerivationStep& s) const {
    switch (s.kind) {
      case StepKind::Axiom:
        return f1_expr();
      case StepKind::SymConjugation:
      case StepKind::RotationClosure:
        return GroupExpr::conjugate(symmetry_expr(s.symmetry),
                                    membership_of(one_operand(s)));
      case StepKind::Conjugation: {
        std::vector<GroupExpr> by;
        for (const auto& r : s.conjugator) by.push_back(membership_of(r));
        return GroupExpr::conjugate(GroupExpr::product(std::move(by)),
                                    membership_of(one_operand(s)));
      }
      case StepKind::Product: {
        std::vector<GroupExpr> fs;
        for (const auto& r : s.operands) fs.push_back(membership_of(r));
        return GroupExpr::product(std::move(fs));
      }
      case StepKind::Inverse:
        return membership_of(one_operand(s)).inverse();
      case StepKind::Involution:
        return GroupExpr::product({symmetry_expr(s.symmetry), f1_expr()});
    }
    return {};
  }

  // The twist word the engine derives for s, or a reason it cannot.
  std::variant<PCWord, std::string> engine_result(
      const DerivationStep& s) const {
    switch (s.kind) {
      case StepKind::Axiom:
        return f1_;
      case StepKind::SymConjugation:
      case StepKind::RotationClosure: {
        MappingWord conj(genus_);
        for (auto x : s.symmetry) conj.append(MappingLetter(x));
        const auto operand = word_of(one_operand(s));
        auto r = conjugate_word(conj, operand, depth_bound_);
        if (auto* bad = std::get_if<Indeterminate>(&r)) return describe(*bad);
        const auto& w = std::get<PCWord>(r);
        // index-level relabeling must agree with the evaluator
        if (!word_equal(w, sym_conjugate(s.symmetry, operand))) {
          return std::string("symmetry relabeling disagrees with evaluator");
        }
        return w;
      }
      case StepKind::Conjugation: {
        MappingWord conj(genus_);
        for (const auto& r : s.conjugator) conj.append(word_of(r));
        if (!s.tuple_in.empty()) {
          auto t = evaluate_tuple(conj, s.tuple_in, depth_bound_);
          if (auto* bad = std::get_if<Indeterminate>(&t)) return describe(*bad);
          if (std::get<std::vector<CurveId>>(t) != s.tuple_out) {
            return std::string("recorded curve images do not match");
          }
        }
        auto r = conjugate_word(conj, word_of(one_operand(s)), depth_bound_);
        if (auto* bad = std::get_if<Indeterminate>(&r)) return describe(*bad);
        return std::get<PCWord>(r);
      }
      case StepKind::Product: {
        PCWord acc(genus_);
        for (const auto& r : s.operands) acc = pc_mul(acc, word_of(r));
        return acc;
      }
      case StepKind::Inverse:
        return invert(word_of(one_operand(s)));
      case StepKind::Involution: {
        if (!s.involution_x || !s.involution_y) {
          return std::string("missing X/Y");
        }
        MappingWord rho(genus_);
        for (auto x : s.symmetry) rho.append(MappingLetter(x));
        auto y = conjugate_word(rho, *s.involution_x, depth_bound_);
        if (auto* bad = std::get_if<Indeterminate>(&y)) return describe(*bad);
        if (!word_equal(std::get<PCWord>(y), *s.involution_y)) {
          return "premise rho X rho = Y fails: got " +
                 std::get<PCWord>(y).str();
        }
        auto xy = pc_mul(*s.involution_x, invert(*s.involution_y));
        if (!word_equal(xy, f1_)) {
          return "X Y^-1 = " + xy.str() + " is not the generator " + f1_.str();
        }
        return xy;
      }
    }
    return std::string("unknown step kind");
  }

  template <typename Ring>
  Matrix<Ring> membership_matrix(const DerivationStep& s, Ring ring) const {
    const auto atoms = s.membership.flatten();
    return word_matrix(expand_atoms(atoms, f1_), ring);
  }

  // M(iota) = M(rho) M(F1), for involution steps.
  template <typename Ring>
  Matrix<Ring> involution_matrix(const DerivationStep& s, Ring ring) const {
    MappingWord w(genus_);
    for (auto x : s.symmetry) w.append(MappingLetter(x));
    w.append(s.claimed_result);
    return word_matrix(w, ring);
  }

  StepReport check(const DerivationStep& s,
                   std::span<const std::int64_t> primes) const {
    StepReport rep{s.name, to_string(s.kind), false, false, {}, {}};
    try {
      auto engine = engine_result(s);
      if (auto* why = std::get_if<std::string>(&engine)) {
        rep.detail = *why;
      } else if (!word_equal(std::get<PCWord>(engine), s.claimed_result)) {
        rep.detail = "claimed " + s.claimed_result.str() + " but engine gives " +
                     std::get<PCWord>(engine).str();
      } else {
        rep.twistcalc = true;
      }

      const bool structural =
          expected_membership(s).flatten() == s.membership.flatten();
      if (!structural) rep.detail += " membership does not match inputs;";

      if (s.kind == StepKind::Involution) {
        const auto m = involution_matrix(s, IntegerRing{});
        rep.homology = structural && matrix_order(m, 2) == 2;
        for (auto p : primes) {
          const auto mp = involution_matrix(s, ModRing(p));
          rep.mod_p[p] = (mp * mp).is_identity();
        }
      } else {
        rep.homology = structural && membership_matrix(s, IntegerRing{}) ==
                                         word_matrix(s.claimed_result);
        for (auto p : primes) {
          const ModRing ring(p);
          rep.mod_p[p] = membership_matrix(s, ring) ==
                         word_matrix(s.claimed_result, ring);
        }
      }
      if (!rep.homology && rep.detail.empty()) {
        rep.detail = "membership matrix differs from claimed word";
      }
    } catch (const std::exception& e) {
      rep.detail = e.what();
    }
    return rep;
  }

 private:
  static const StepRef& one_operand(const DerivationStep& s) {
    if (s.operands.size() != 1) {
      throw CertificateError(s.name, "expected exactly one operand");
    }
    return s.operands[0];
  }

  static std::string describe(const Indeterminate& bad) {
    return "indeterminate image of " + bad.input.str() + " (blocked at " +
           bad.blocking_letter + ", state " + bad.final_state + ")";
  }

  Genus genus_;
  std::size_t depth_bound_;
  PCWord f1_;
  std::map<std::string, DerivationStep> index_;
};

}  // namespace detail

// R^k-conjugates of an element for each requested shift; shift 0 yields the
// element itself.
inline std::vector<DerivationStep> rotation_closure(
    const DerivationStep& base, std::span<const int> shifts) {
  const Genus g = base.claimed_result.genus();
  std::vector<DerivationStep> out;
  for (int k : shifts) {
    const int kk = g.wrap(k) % g.value();
    std::vector<SymmetryGen> rot(static_cast<std::size_t>(kk),
                                 SymmetryGen::ROT);
    auto w = sym_conjugate(rot, base.claimed_result);
    DerivationStep s(kk == 0 ? base.name : element_name(w),
                     StepKind::RotationClosure, g);
    s.symmetry = std::move(rot);
    s.operands = {StepRef{base.name}};
    s.claimed_result = std::move(w);
    s.membership = GroupExpr::conjugate(symmetry_expr(s.symmetry),
                                        base.membership);
    out.push_back(std::move(s));
  }
  return out;
}

// Assembles a chain step by step, verifying each one as it is added.
class ChainBuilder {
 public:
  ChainBuilder(Genus g, std::string chain,
               std::size_t depth_bound = kDefaultDepthBound)
      : cert_{g, std::move(chain), {}, std::nullopt, {}},
        checker_(g, depth_bound) {}

  Genus genus() const { return cert_.genus; }

  const DerivationStep& axiom(const std::string& name, std::string_view word) {
    DerivationStep s(name, StepKind::Axiom, genus());
    return commit(std::move(s), word);
  }

  const DerivationStep& sym_conjugation(const std::string& name,
                                        std::vector<SymmetryGen> by,
                                        StepRef operand,
                                        std::string_view expect = {}) {
    DerivationStep s(name, StepKind::SymConjugation, genus());
    s.symmetry = std::move(by);
    s.operands = {std::move(operand)};
    return commit(std::move(s), expect);
  }

  const DerivationStep& conjugation(const std::string& name,
                                    std::vector<StepRef> by, StepRef operand,
                                    std::string_view images_in,
                                    std::string_view images_out,
                                    std::string_view expect = {}) {
    DerivationStep s(name, StepKind::Conjugation, genus());
    s.conjugator = std::move(by);
    s.operands = {std::move(operand)};
    s.tuple_in = parse_curves(images_in, genus());
    s.tuple_out = parse_curves(images_out, genus());
    return commit(std::move(s), expect);
  }

  const DerivationStep& product(const std::string& name,
                                std::vector<StepRef> factors,
                                std::string_view expect = {}) {
    DerivationStep s(name, StepKind::Product, genus());
    s.operands = std::move(factors);
    return commit(std::move(s), expect);
  }

  const DerivationStep& inverse(const std::string& name, StepRef operand,
                                std::string_view expect = {}) {
    DerivationStep s(name, StepKind::Inverse, genus());
    s.operands = {std::move(operand)};
    return commit(std::move(s), expect);
  }

  void closure(const std::string& base, std::span<const int> shifts) {
    for (auto& s : rotation_closure(checker_.lookup(base), shifts)) {
      if (s.name == base) continue;
      commit_built(std::move(s));
    }
  }

  // All nontrivial rotations of base.
  void closure(const std::string& base) {
    std::vector<int> shifts;
    for (int k = 1; k < genus().value(); ++k) shifts.push_back(k);
    closure(base, shifts);
  }

  const DerivationStep& lemma41(const std::string& name,
                                std::vector<SymmetryGen> rho,
                                std::string_view x, std::string_view y) {
    DerivationStep s(name, StepKind::Involution, genus());
    s.symmetry = std::move(rho);
    s.involution_x = parse_word(x, genus());
    s.involution_y = parse_word(y, genus());
    s.claimed_result =
        pc_mul(*s.involution_x, invert(*s.involution_y));
    s.membership = checker_.expected_membership(s);
    return commit_built(std::move(s));
  }

  Certificate& certificate() { return cert_; }
  Certificate finish() && { return std::move(cert_); }

 private:
  const DerivationStep& commit(DerivationStep s, std::string_view expect) {
    if (!expect.empty()) {
      s.claimed_result = parse_word(expect, genus());
    } else {
      auto r = checker_.engine_result(s);
      if (auto* why = std::get_if<std::string>(&r)) {
        throw CertificateError(s.name, *why);
      }
      s.claimed_result = std::get<PCWord>(r);
    }
    s.membership = checker_.expected_membership(s);
    return commit_built(std::move(s));
  }

  const DerivationStep& commit_built(DerivationStep s) {
    if (cert_.find(s.name)) {
      throw CertificateError(s.name, "duplicate step name");
    }
    const auto rep = checker_.check(s, {});
    if (!rep.ok()) throw CertificateError(s.name, rep.detail);
    s.verified_twistcalc = rep.twistcalc;
    s.verified_homology = rep.homology;
    cert_.steps.push_back(std::move(s));
    checker_.add(cert_.steps.back());
    return cert_.steps.back();
  }

  Certificate cert_;
  detail::StepChecker checker_;
};

namespace detail {

using S = SymmetryGen;

inline void encode_genus6_chain(ChainBuilder& b) {
  const StepRef F1{"F_1"}, F2{"F_2"}, F3{"F_3"}, F4{"F_4"}, F5{"F_5"},
      F6{"F_6"}, F7{"F_7"}, F8{"F_8"}, F9{"F_9"};
  const StepRef F7inv{"F_7", true}, F8inv{"F_8", true};

  b.axiom("F_1", "A1C1B3B4^-1C5^-1A6^-1");
  b.sym_conjugation("F_2", {S::ROT}, F1, "A2C2B4B5^-1C6^-1A1^-1");
  b.conjugation("F_3", {F2, F1}, F2, "A2 C2 B4 B5 C6 A1", "A2 B3 B4 C5 C6 A1",
                "A2B3B4C5^-1C6^-1A1^-1");
  b.conjugation("F_4", {F1, F2}, F1, "A1 C1 B3 B4 C5 A6", "A1 C1 C2 B4 B5 A6",
                "A1C1C2B4^-1B5^-1A6^-1");
  b.sym_conjugation("F_5", {S::ROT, S::ROT}, F3, "A4B5B6C1^-1C2^-1A3^-1");
  b.inverse("F_6", F5, "A3C2C1B6^-1B5^-1A4^-1");
  b.conjugation("F_7", {F6, F4}, F6, "A3 C2 C1 B6 B5 A4", "A3 C2 C1 A6 B5 B4",
                "A3C2C1A6^-1B5^-1B4^-1");
  b.product("F_8", {F4, F7inv}, "A1A3^-1");
  b.conjugation("A_1B_3^-1", {F8inv, F3}, F8, "A1 A3", "A1 B3", "A1B3^-1");
  b.closure("A_1B_3^-1");  // A_i B_{i+2}^-1
  b.product("F_9", {{"A_1B_3^-1", true}, F8, {"A_3B_5^-1"}}, "B3B5^-1");
  b.conjugation("B_3C_5^-1", {F9, F3}, F9, "B3 B5", "B3 C5", "B3C5^-1");
  b.closure("B_3C_5^-1");  // B_i C_{i+2}^-1
  b.sym_conjugation("B_2C_5^-1", {S::RHO1}, {"B_2C_4^-1"}, "B2C5^-1");
  b.closure("B_2C_5^-1");  // B_i C_{i+3}^-1
  b.product("B_1B_2^-1", {{"B_1C_4^-1"}, {"B_2C_4^-1", true}}, "B1B2^-1");
  const int two[] = {2};
  b.closure("B_1B_2^-1", two);
  b.product("A_1A_2^-1",
            {{"A_1B_3^-1"}, {"B_3B_4^-1"}, {"A_2B_4^-1", true}}, "A1A2^-1");
  b.product("C_1C_2^-1", {{"B_5C_1^-1", true}, {"B_5C_2^-1"}}, "C1C2^-1");
}

// Words are written with the g >= 8 indices; at g = 7 the index A8 wraps to
// A1, which gives the genus-7 forms.
inline void encode_general_chain(ChainBuilder& b) {
  const StepRef F1{"F_1"}, F2{"F_2"}, F3{"F_3"}, F4{"F_4"}, F5{"F_5"},
      F6{"F_6"}, F7{"F_7"}, F8{"F_8"};

  b.axiom("F_1", "A1C1B3B5^-1C6^-1A7^-1");
  b.sym_conjugation("F_2", {S::ROT}, F1, "A2C2B4B6^-1C7^-1A8^-1");
  b.conjugation("F_3", {F2, F1}, F2, "A2 C2 B4 B6 C7 A8", "A2 B3 B4 C6 C7 A8",
                "A2B3B4C6^-1C7^-1A8^-1");
  b.sym_conjugation("F_4", {S::ROT_INV}, F3, "A1B2B3C5^-1C6^-1A7^-1");
  b.conjugation("F_5", {F4, F3}, F4, "A1 B2 B3 C5 C6 A7", "A1 A2 B3 C5 C6 A7",
                "A1A2B3C5^-1C6^-1A7^-1");
  b.product("B_2A_2^-1", {F4, {"F_5", true}}, "B2A2^-1");
  b.closure("B_2A_2^-1");  // B_i A_i^-1
  b.product("F_6", {{"B_3A_3^-1", true}, F1}, "A1C1A3B5^-1C6^-1A7^-1");
  b.sym_conjugation("F_7", {S::ROT}, F6, "A2C2A4B6^-1C7^-1A8^-1");
  b.conjugation("F_8", {F7, F6}, F7, "A2 C2 A4 B6 C7 A8", "A2 C2 A4 C6 C7 A8",
                "A2C2A4C6^-1C7^-1A8^-1");
  b.product("B_6C_6^-1", {{"F_7", true}, F8}, "B6C6^-1");
  b.closure("B_6C_6^-1");  // B_i C_i^-1
  b.sym_conjugation("B_2C_1^-1", {S::RHO2}, {"B_1C_1^-1"}, "B2C1^-1");
  b.closure("B_2C_1^-1");  // B_{i+1} C_i^-1
  b.product("C_1C_2^-1", {{"B_2C_1^-1", true}, {"B_2C_2^-1"}}, "C1C2^-1");
  b.product("B_1B_2^-1",
            {{"B_1C_1^-1"}, {"C_1C_2^-1"}, {"B_2C_2^-1", true}}, "B1B2^-1");
  const int two[] = {2};
  b.closure("B_1B_2^-1", two);
  b.product("A_1A_2^-1",
            {{"B_1A_1^-1", true}, {"B_1B_2^-1"}, {"B_2A_2^-1"}}, "A1A2^-1");
}

inline void check_genus(Genus g) {
  if (g.value() < 6) {
    throw std::invalid_argument("genus must be >= 6, got " +
                                std::to_string(g.value()));
  }
}

}  // namespace detail

// Genus 6: rho1, rho2 and F1 = A1 C1 B3 B4^-1 C5^-1 A6^-1 generate A1A2^-1,
// B1B2^-1 and C1C2^-1.
inline Certificate run_lemma31(Genus g = Genus(6),
                               std::size_t depth_bound = kDefaultDepthBound) {
  if (g.value() != 6) {
    throw std::invalid_argument("the genus-6 chain needs genus 6, got " +
                                std::to_string(g.value()));
  }
  ChainBuilder b(g, "genus6", depth_bound);
  detail::encode_genus6_chain(b);
  return std::move(b).finish();
}

// Genus >= 7, with F1 = A1 C1 B3 B5^-1 C6^-1 A7^-1.
inline Certificate run_lemma32(Genus g,
                               std::size_t depth_bound = kDefaultDepthBound) {
  if (g.value() < 7) {
    throw std::invalid_argument("the general chain needs genus >= 7, got " +
                                std::to_string(g.value()));
  }
  ChainBuilder b(g, "general", depth_bound);
  detail::encode_general_chain(b);
  return std::move(b).finish();
}

struct InvolutionResult {
  GroupExpr iota;      // rho * (X Y^-1), over rho1, rho2 and F1 := X Y^-1
  InvolutionWord rho;  // the conjugator written over rho1, rho2
  PCWord y;            // rho X rho
  PCWord twist;        // X Y^-1
  int order;           // of M(iota)
};

// If rho is an involution and rho X rho = Y then rho X Y^-1 is an involution.
// Y is computed on indices and re-checked with the evaluator; the order of
// the resulting matrix must be exactly 2. Throws CertificateError("iota")
// when a check fails.
inline InvolutionResult lemma41_involution(
    std::span<const SymmetryGen> rho_prefix, const PCWord& x,
    const std::optional<PCWord>& claimed_y = std::nullopt,
    std::size_t depth_bound = kDefaultDepthBound) {
  const Genus g = x.genus();
  const auto rho_mat = word_matrix(
      MappingWord(g, {rho_prefix.begin(), rho_prefix.end()}));
  if (matrix_order(rho_mat, 2) != 2) {
    throw CertificateError("iota", "conjugator is not an involution");
  }
  const auto y = sym_conjugate(rho_prefix, x);
  auto symbolic = conjugate_word(
      MappingWord(g, {rho_prefix.begin(), rho_prefix.end()}), x, depth_bound);
  if (!std::holds_alternative<PCWord>(symbolic) ||
      !word_equal(std::get<PCWord>(symbolic), y) ||
      (claimed_y && !word_equal(*claimed_y, y))) {
    throw CertificateError("iota", "premise rho X rho = Y fails");
  }
  const auto twist = pc_mul(x, invert(y));
  const auto m = rho_mat * word_matrix(twist);
  const auto order = matrix_order(m, 2);
  if (order != 2) {
    throw CertificateError("iota", "rho X Y^-1 does not have order 2");
  }
  const auto rho = rho_word(rho_prefix);
  GroupExpr iota = symmetry_expr(rho_prefix);
  if (!twist.empty()) iota = GroupExpr::product({iota, f1_expr()});
  return {iota, rho, y, twist, *order};
}

namespace detail {

struct OutputTarget {
  const char* key;
  const char* step;
  const char* word;
};

inline constexpr OutputTarget kOutputTargets[] = {
    {"A1A2inv", "A_1A_2^-1", "A1A2^-1"},
    {"B1B2inv", "B_1B_2^-1", "B1B2^-1"},
    {"C1C2inv", "C_1C_2^-1", "C1C2^-1"},
};

template <typename Ring>
Matrix<Ring> output_target(const std::string& key, Genus g, Ring ring) {
  if (key == "R") return sym_matrix(SymmetryGen::ROT, g, ring);
  for (const auto& t : kOutputTargets) {
    if (key == t.key) return word_matrix(parse_word(t.word, g), ring);
  }
  throw std::invalid_argument("unknown certificate output " + key);
}

// Matrix of a word over rho1, rho2, iota with iota = rho F1.
template <typename Ring>
Matrix<Ring> involution_word_matrix(std::span<const Involution> w,
                                    const InvolutionDef& def, Genus g,
                                    Ring ring) {
  MappingWord iota(g);
  for (auto s : def.rho_prefix) iota.append(MappingLetter(s));
  iota.append(def.f1);
  MappingWord full(g);
  for (auto x : w) {
    switch (x) {
      case Involution::R1: full.append(MappingLetter(SymmetryGen::RHO1)); break;
      case Involution::R2: full.append(MappingLetter(SymmetryGen::RHO2)); break;
      case Involution::IOTA: full.append(iota); break;
    }
  }
  return word_matrix(full, ring);
}

}  // namespace detail

// Re-checks every step and output of a certificate. Never throws for a bad
// certificate; failures are recorded in the report.
inline Report verify_certificate(const Certificate& cert,
                                 std::span<const std::int64_t> primes,
                                 std::size_t depth_bound = kDefaultDepthBound) {
  Report rep;
  rep.genus = cert.genus.value();
  if (cert.steps.empty() && cert.outputs.empty()) return rep;

  std::optional<detail::StepChecker> checker;
  try {
    checker.emplace(cert.genus, depth_bound);
  } catch (const std::exception& e) {
    StepReport bad{"genus", "setup", false, false, {}, e.what()};
    rep.steps.push_back(bad);
    return rep;
  }

  for (const auto& s : cert.steps) {
    rep.steps.push_back(checker->check(s, primes));
    checker->add(s);
  }

  for (const auto& out : cert.outputs) {
    StepReport r{"output:" + out.key, "output", false, false, {}, {}};
    try {
      if (!cert.iota) throw std::runtime_error("certificate has no iota");
      const auto& def = *cert.iota;
      if (!word_equal(def.f1, checker->f1()) ||
          def.rho != rho_word(def.rho_prefix)) {
        throw std::runtime_error("iota definition is inconsistent");
      }
      if (out.source_step.empty()) {
        r.twistcalc = out.word == InvolutionWord{Involution::R1, Involution::R2};
      } else {
        const auto* src = cert.find(out.source_step);
        if (!src) throw std::runtime_error("missing step " + out.source_step);
        r.twistcalc =
            substitute_f1(src->membership.flatten(), def.rho) == out.word;
      }
      r.homology = detail::involution_word_matrix(out.word, def, cert.genus,
                                                  IntegerRing{}) ==
                   detail::output_target(out.key, cert.genus, IntegerRing{});
      for (auto p : primes) {
        const ModRing ring(p);
        r.mod_p[p] =
            detail::involution_word_matrix(out.word, def, cert.genus, ring) ==
            detail::output_target(out.key, cert.genus, ring);
      }
      if (!r.twistcalc) r.detail = "word is not the expansion of its source";
      else if (!r.homology) r.detail = "matrix differs from target";
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    rep.outputs.push_back(std::move(r));
  }
  return rep;
}

// Copies per-step verification flags from a report into the certificate.
inline void apply_report(Certificate& cert, const Report& rep) {
  for (auto& s : cert.steps) {
    for (const auto& r : rep.steps) {
      if (r.name != s.name) continue;
      s.verified_twistcalc = r.twistcalc;
      s.verified_homology = r.homology;
      s.verified_mod_p = r.mod_p;
    }
  }
}

// Three involutions rho1, rho2, iota generating the mapping class group of
// genus g >= 6, with iota = rho4 F1 at genus 6 and rho3 F1 above, and words
// over them for A1A2^-1, B1B2^-1, C1C2^-1 and R.
inline Certificate build_theorem1(Genus g,
                                  std::size_t depth_bound = kDefaultDepthBound) {
  detail::check_genus(g);
  const bool six = g.value() == 6;
  ChainBuilder b(g, six ? "genus6" : "general", depth_bound);
  if (six) detail::encode_genus6_chain(b);
  else detail::encode_general_chain(b);

  const auto& prefix = six ? rho4_prefix() : rho3_prefix();
  const auto x = parse_word("A1C1B3", g);
  const auto y = parse_word(six ? "A6C5B4" : "A7C6B5", g);
  const auto inv = lemma41_involution(prefix, x, y, depth_bound);
  b.lemma41("iota", prefix, "A1C1B3", six ? "A6C5B4" : "A7C6B5");

  Certificate cert = std::move(b).finish();
  cert.iota = InvolutionDef{prefix, inv.rho, inv.twist};
  for (const auto& t : detail::kOutputTargets) {
    const auto* src = cert.find(t.step);
    cert.outputs.push_back(
        {t.key, t.step, substitute_f1(src->membership.flatten(), inv.rho)});
  }
  cert.outputs.push_back({"R", "", {Involution::R1, Involution::R2}});
  return cert;
}

}  // namespace twistcert

#endif  // TWISTCERT_CERTIFY_HPP_
