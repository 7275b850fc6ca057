// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// all pass. All comparisons are exact.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "twistcert/certify.hpp"
#include "twistcert/report.hpp"

namespace twistcert {
namespace {

using S = SymmetryGen;
using Clock = std::chrono::steady_clock;

const std::int64_t kPrimes[] = {2, 3, 5};
constexpr double kBudgetSeconds = 5.0;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

PCWord W(const char* s, int g) { return parse_word(s, Genus(g)); }

PCWord result_of(const Certificate& c, const std::string& name) {
  const auto* s = c.find(name);
  require(s != nullptr, "missing step " + name);
  return s->claimed_result;
}

void require_result(const Certificate& c, const std::string& name,
                    const char* w) {
  const auto got = result_of(c, name);
  require(word_equal(got, W(w, c.genus.value())),
          name + " = " + got.str() + ", expected " + w);
}

void require_all_pass(const Certificate& c) {
  const auto r = verify_certificate(c, kPrimes);
  for (const auto& s : r.steps) {
    require(s.ok(), "g=" + std::to_string(r.genus) + " step " + s.name +
                        " failed: " + s.detail);
  }
  for (const auto& s : r.outputs) {
    require(s.ok(), "g=" + std::to_string(r.genus) + " " + s.name +
                        " failed: " + s.detail);
  }
}

MappingWord product_of(const Certificate& c,
                       std::initializer_list<const char*> names) {
  MappingWord w(c.genus);
  for (auto n : names) w.append(result_of(c, n));
  return w;
}

void require_tuple(const Certificate& c, std::initializer_list<const char*> by,
                   const char* in, const char* out) {
  const auto images = evaluate_tuple(product_of(c, by), parse_curves(in, c.genus));
  require(std::holds_alternative<std::vector<CurveId>>(images),
          std::string("indeterminate images of ") + in);
  require(std::get<std::vector<CurveId>>(images) == parse_curves(out, c.genus),
          std::string("images of ") + in + " differ from " + out);
}

std::string criterion1() {
  const auto t0 = Clock::now();
  const Genus g(6);
  const auto c = build_theorem1(g);
  require(c.chain == "genus6", "genus 6 must use its own chain");
  require_all_pass(c);
  const auto e = evaluate(product_of(c, {"F_2", "F_1"}), curve_c(2, g));
  require(is_determinate(e) && std::get<CurveId>(e) == curve_b(3, g),
          "F2F1(c2) != b3");
  require_tuple(c, {"F_2", "F_1"}, "A2 C2 B4 B5 C6 A1", "A2 B3 B4 C5 C6 A1");
  require_tuple(c, {"F_1", "F_2"}, "A1 C1 B3 B4 C5 A6", "A1 C1 C2 B4 B5 A6");
  require_tuple(c, {"F_6", "F_4"}, "A3 C2 C1 B6 B5 A4", "A3 C2 C1 A6 B5 B4");
  require_result(c, "F_3", "A2B3B4C5^-1C6^-1A1^-1");
  require_result(c, "F_4", "A1C1C2B4^-1B5^-1A6^-1");
  require_result(c, "F_7", "A3C2C1A6^-1B5^-1B4^-1");
  require_result(c, "F_8", "A1A3^-1");
  require_result(c, "A_1A_2^-1", "A1A2^-1");
  require_result(c, "B_1B_2^-1", "B1B2^-1");
  require_result(c, "C_1C_2^-1", "C1C2^-1");
  const double t = seconds_since(t0);
  require(t < kBudgetSeconds, "runtime " + std::to_string(t) + " s");
  std::ostringstream os;
  os << c.steps.size() << " steps, " << t << " s";
  return os.str();
}

std::string criterion2() {
  double worst = 0;
  for (int n = 7; n <= 12; ++n) {
    const auto t0 = Clock::now();
    const Genus g(n);
    const auto c = build_theorem1(g);
    require(c.chain == "general", "g >= 7 must use the general chain");
    require_all_pass(c);
    require(word_equal(pc_mul(result_of(c, "F_4"), invert(result_of(c, "F_5"))),
                       W("B2A2^-1", n)),
            "F4 F5^-1 != B2 A2^-1");
    require(word_equal(pc_mul(invert(result_of(c, "F_7")), result_of(c, "F_8")),
                       W("B6C6^-1", n)),
            "F7^-1 F8 != B6 C6^-1");
    require_tuple(c, {"F_4", "F_3"}, "A1 B2 B3 C5 C6 A7", "A1 A2 B3 C5 C6 A7");
    require_result(c, "F_4", "A1B2B3C5^-1C6^-1A7^-1");
    require_result(c, "F_5", "A1A2B3C5^-1C6^-1A7^-1");
    require_result(c, "F_6", "A1C1A3B5^-1C6^-1A7^-1");
    if (n == 7) {
      require_tuple(c, {"F_2", "F_1"}, "A2 C2 B4 B6 C7 A1", "A2 B3 B4 C6 C7 A1");
      require_tuple(c, {"F_7", "F_6"}, "A2 C2 A4 B6 C7 A1", "A2 C2 A4 C6 C7 A1");
      require_result(c, "F_2", "A2C2B4B6^-1C7^-1A1^-1");
      require_result(c, "F_3", "A2B3B4C6^-1C7^-1A1^-1");
      require_result(c, "F_7", "A2C2A4B6^-1C7^-1A1^-1");
      require_result(c, "F_8", "A2C2A4C6^-1C7^-1A1^-1");
    } else {
      require_tuple(c, {"F_2", "F_1"}, "A2 C2 B4 B6 C7 A8", "A2 B3 B4 C6 C7 A8");
      require_tuple(c, {"F_7", "F_6"}, "A2 C2 A4 B6 C7 A8", "A2 C2 A4 C6 C7 A8");
      require_result(c, "F_2", "A2C2B4B6^-1C7^-1A8^-1");
      require_result(c, "F_3", "A2B3B4C6^-1C7^-1A8^-1");
      require_result(c, "F_7", "A2C2A4B6^-1C7^-1A8^-1");
      require_result(c, "F_8", "A2C2A4C6^-1C7^-1A8^-1");
    }
    const double t = seconds_since(t0);
    require(t < kBudgetSeconds,
            "g=" + std::to_string(n) + " runtime " + std::to_string(t) + " s");
    worst = std::max(worst, t);
  }
  std::ostringstream os;
  os << "g=7..12, slowest " << worst << " s";
  return os.str();
}

MappingWord iota_word(const InvolutionDef& d, Genus g) {
  MappingWord w(g);
  for (auto s : d.rho_prefix) w.append(MappingLetter(s));
  for (const auto& l : d.f1.letters()) w.append(MappingLetter(l));
  return w;
}

std::string criterion3() {
  for (int n = 6; n <= 12; ++n) {
    const Genus g(n);
    const auto& prefix = n == 6 ? rho4_prefix() : rho3_prefix();
    MappingWord rho(g);
    for (auto s : prefix) rho.append(MappingLetter(s));
    const auto y = conjugate_word(rho, W("A1C1B3", n));
    require(std::holds_alternative<PCWord>(y), "premise indeterminate");
    require(word_equal(std::get<PCWord>(y), W(n == 6 ? "A6C5B4" : "A7C6B5", n)),
            "premise fails at g=" + std::to_string(n));
    const auto c = build_theorem1(g);
    require(c.iota && word_equal(c.iota->f1, generator_word(g)),
            "iota is not rho F1");
    const auto m = oracle::naive_word_matrix(iota_word(*c.iota, g));
    require(!m.is_identity(), "M(iota) = I at g=" + std::to_string(n));
    require((m * m).is_identity(), "M(iota)^2 != I at g=" + std::to_string(n));
  }
  return "g=6..12";
}

MappingWord expand(const InvolutionWord& w, const InvolutionDef& d, Genus g) {
  MappingWord out(g);
  const auto iota = iota_word(d, g);
  for (auto x : w) {
    if (x == Involution::R1) out.append(MappingLetter(S::RHO1));
    if (x == Involution::R2) out.append(MappingLetter(S::RHO2));
    if (x == Involution::IOTA) out.append(iota);
  }
  return out;
}

std::string criterion4() {
  std::size_t longest = 0;
  for (int n = 6; n <= 12; ++n) {
    const Genus g(n);
    const auto c = build_theorem1(g);
    require(c.outputs.size() == 4, "expected four outputs");
    const auto report = verify_certificate(c, kPrimes);
    for (const auto& o : report.outputs) {
      require(o.ok(), o.name + " failed at g=" + std::to_string(n));
      require(o.mod_p.size() == 3, "missing prime checks");
    }
    // independent dense replay over Z, reduced mod p afterwards
    const char* targets[] = {"A1A2^-1", "B1B2^-1", "C1C2^-1"};
    for (std::size_t k = 0; k < 4; ++k) {
      const auto& o = c.outputs[k];
      longest = std::max(longest, o.word.size());
      const auto m = oracle::naive_word_matrix(expand(o.word, *c.iota, g));
      const auto target =
          k < 3 ? oracle::naive_word_matrix(MappingWord(W(targets[k], n)))
                : oracle::naive_word_matrix(
                      MappingWord(g, {MappingLetter(S::ROT)}));
      require(m == target, o.key + " differs at g=" + std::to_string(n));
      for (auto p : kPrimes) {
        require(mod_p(m, p) == mod_p(target, p),
                o.key + " differs mod " + std::to_string(p));
      }
    }
    require(c.outputs[3].word ==
                InvolutionWord{Involution::R1, Involution::R2},
            "R is not r1 r2");
  }
  return "g=6..12, longest word " + std::to_string(longest);
}

std::string criterion5() {
  std::size_t pairs = 0;
  for (int n : {6, 7, 8}) {
    const Genus g(n);
    const auto cs = standard_curves(g);
    for (const auto& c : cs) {
      const auto tc = oracle::naive_word_matrix(
          MappingWord(g, {MappingLetter(TwistLetter(c, 1))}));
      for (const auto& d : cs) {
        const auto td = oracle::naive_word_matrix(
            MappingWord(g, {MappingLetter(TwistLetter(d, 1))}));
        const int i = intersect(c, d);
        require(i == 0 || i == 1, "intersection number outside {0,1}");
        if (i == 0) {
          require(tc * td == td * tc, "commutation fails " + c.str() + d.str());
        } else {
          require(tc * td * tc == td * tc * td,
                  "braid relation fails " + c.str() + d.str());
          require(tc * td != td * tc, c.str() + d.str() + " commute");
        }
        ++pairs;
      }
    }
  }
  return std::to_string(pairs) + " ordered pairs";
}

std::string criterion6() {
  std::size_t words = 0, determinate = 0;
  for (int n : {6, 7, 8}) {
    const Genus g(n);
    std::mt19937_64 rng(1000 + n);
    const auto cs = standard_curves(g);
    std::uniform_int_distribution<std::size_t> pick(0, cs.size() - 1);
    for (int trial = 0; trial < 1500; ++trial) {
      const auto w = oracle::random_mapping_word(rng, g, 20);
      require(w.size() <= 20, "word too long");
      const auto m = oracle::naive_word_matrix(w);
      ++words;
      for (int k = 0; k < 3; ++k) {
        const auto c = cs[pick(rng)];
        const auto e = evaluate(w, c);
        if (!is_determinate(e)) continue;
        ++determinate;
        const HomologyClass img{m.apply(class_of(c).coords)};
        const auto target = class_of(std::get<CurveId>(e));
        require(img == target || img == -target,
                "M(w)[" + c.str() + "] != +-[" + std::get<CurveId>(e).str() +
                    "] for " + w.str());
      }
    }
  }
  return std::to_string(words) + " words, " + std::to_string(determinate) +
         " determinate images, 0 violations";
}

std::string criterion7() {
  for (int n = 6; n <= 12; ++n) {
    const Genus g(n);
    validate_symmetry_formulas(g);
    require(solve_reflections(g).size() == 1, "formulas not unique");
    auto r4 = [&](CurveId c) { return sym_conj_image(rho4_prefix(), c); };
    auto r3 = [&](CurveId c) { return sym_conj_image(rho3_prefix(), c); };
    require(sym_conjugate(std::vector<S>{S::RHO2}, W("B1C1^-1", n))
                .str() == W("B2C1^-1", n).str(),
            "rho2 B1C1^-1 rho2 != B2C1^-1");
    require(r4(curve_a(1, g)) == curve_a(6, g) &&
                r4(curve_c(1, g)) == curve_c(5, g) &&
                r4(curve_b(3, g)) == curve_b(4, g),
            "rho4 A1C1B3 rho4 != A6C5B4");
    if (n == 6) {
      require(word_equal(sym_conjugate(std::vector<S>{S::RHO1}, W("B2C4^-1", 6)),
                         W("B2C5^-1", 6)),
              "rho1 B2C4^-1 rho1 != B2C5^-1");
    }
    if (n >= 7) {
      require(r3(curve_a(1, g)) == curve_a(7, g) &&
                  r3(curve_c(1, g)) == curve_c(6, g) &&
                  r3(curve_b(3, g)) == curve_b(5, g),
              "rho3 A1C1B3 rho3 != A7C6B5");
    }
    for (const auto& c : standard_curves(g)) {
      for (auto s : {S::RHO1, S::RHO2})
        require(sym_image(s, sym_image(s, c)) == c, "not an involution");
      require(sym_image(S::RHO1, sym_image(S::RHO2, c)) == sym_image(S::ROT, c),
              "rho1 rho2 != R");
      for (const auto& d : standard_curves(g)) {
        for (auto s : {S::RHO1, S::RHO2})
          require(intersect(sym_image(s, c), sym_image(s, d)) == intersect(c, d),
                  "intersection table not preserved");
      }
    }
    const auto rot = oracle::naive_word_matrix(
        MappingWord(g, {MappingLetter(S::ROT)}));
    auto p = rot;
    for (int k = 1; k < n; ++k) {
      require(!p.is_identity(), "R has order below g");
      p = p * rot;
    }
    require(p.is_identity(), "R^g != I");
  }
  return "g=6..12";
}

std::string criterion8() {
  std::mt19937_64 rng(2024);
  const Genus g(6);
  const auto all = standard_curves(g);
  // a small alphabet with both commuting and braiding pairs keeps equal
  // pairs frequent
  const std::vector<CurveId> alphabet = {curve_a(1, g), curve_b(1, g),
                                         curve_c(1, g), curve_b(2, g),
                                         curve_a(3, g), curve_c(3, g)};
  int pairs = 0, equal = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const auto u = oracle::random_twists(rng, alphabet, 8);
    std::vector<TwistLetter> v;
    if (trial % 2 == 0) {
      const auto reach = oracle::reachable(u, g);
      std::uniform_int_distribution<std::size_t> pick(0, reach.size() - 1);
      auto it = reach.begin();
      std::advance(it, static_cast<std::ptrdiff_t>(pick(rng)));
      for (auto [c, e] : *it) v.emplace_back(all[c], e);
    } else {
      v = oracle::random_twists(rng, alphabet, 8);
    }
    require(u.size() <= 8 && v.size() <= 8, "word too long");
    const bool expect = oracle::bfs_equal(u, v, g);
    const PCWord pu(g, u), pv(g, v);
    require(word_equal(pu, pv) == expect,
            "word_equal disagrees with BFS on " + pu.str() + " / " + pv.str());
    for (const auto* w : {&pu, &pv}) {
      const auto n1 = pc_normalize(*w);
      require(pc_normalize(n1) == n1, "pc_normalize not idempotent");
    }
    ++pairs;
    equal += expect;
  }
  return std::to_string(pairs) + " pairs, " + std::to_string(equal) + " equal";
}

std::vector<std::string> failing(const Report& r) {
  std::vector<std::string> out;
  for (const auto& s : r.steps)
    if (!s.ok()) out.push_back(s.name);
  for (const auto& s : r.outputs)
    if (!s.ok()) out.push_back(s.name);
  return out;
}

DerivationStep& mutable_step(Certificate& c, const std::string& name) {
  for (auto& s : c.steps)
    if (s.name == name) return s;
  throw Failure("missing step " + name);
}

std::string criterion9() {
  const Genus g(6);
  const auto e = evaluate(MappingWord(W("A1", 6)), curve_b(1, g));
  require(!is_determinate(e), "A1(b1) resolved to a standard curve");
  require(std::get<Indeterminate>(e).blocking_letter == "A1",
          "blocking letter not reported");

  struct Injection {
    int genus;
    std::string step;
    std::function<void(Certificate&)> corrupt;
  };
  const std::vector<Injection> cases = {
      {6, "F_4",
       [](Certificate& c) {
         auto& s = mutable_step(c, "F_4");
         auto l = s.claimed_result.letters();
         l[0] = l[0].inverse();
         s.claimed_result = PCWord(c.genus, l);
       }},
      {6, "F_3",
       [](Certificate& c) {
         mutable_step(c, "F_3").tuple_out[1] = curve_b(4, c.genus);
       }},
      {7, "B_6C_6^-1",
       [](Certificate& c) {
         auto& s = mutable_step(c, "B_6C_6^-1");
         s.membership = GroupExpr::product({s.membership, f1_expr()});
       }},
      {7, "iota",
       [](Certificate& c) {
         mutable_step(c, "iota").symmetry = rho4_prefix();
       }},
      {8, "output:C1C2inv",
       [](Certificate& c) { c.outputs[2].word.push_back(Involution::R1); }},
  };
  for (const auto& inj : cases) {
    auto c = build_theorem1(Genus(inj.genus));
    inj.corrupt(c);
    const auto bad = failing(verify_certificate(c, kPrimes));
    require(!bad.empty(), "corruption of " + inj.step + " not detected");
    require(bad.front() == inj.step,
            "corruption of " + inj.step + " reported at " + bad.front());
  }

  // the builder refuses a wrong claim outright
  ChainBuilder b(g, "negative");
  b.axiom("F_1", "A1C1B3B4^-1C5^-1A6^-1");
  try {
    b.sym_conjugation("F_2", {S::ROT}, {"F_1"}, "A2C2B4B5^-1C6^-1A6^-1");
    throw Failure("builder accepted a wrong claim");
  } catch (const CertificateError& err) {
    require(err.step() == "F_2", "builder named " + err.step());
  }
  return std::to_string(cases.size()) + " injections rejected";
}

}  // namespace
}  // namespace twistcert

int main() {
  using Criterion = std::string (*)();
  const std::pair<const char*, Criterion> criteria[] = {
      {"1 genus-6 chain replay", twistcert::criterion1},
      {"2 general chain replay g=7..12", twistcert::criterion2},
      {"3 third involution", twistcert::criterion3},
      {"4 certificate outputs over Z and mod 2,3,5", twistcert::criterion4},
      {"5 commutation and braid relations", twistcert::criterion5},
      {"6 evaluator vs homology", twistcert::criterion6},
      {"7 symmetry formulas", twistcert::criterion7},
      {"8 normal form vs BFS", twistcert::criterion8},
      {"9 negative controls", twistcert::criterion9},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    try {
      const auto detail = run();
      std::cout << "PASS " << name << " (" << detail << ")\n";
    } catch (const std::exception& e) {
      ++failed;
      std::cout << "FAIL " << name << ": " << e.what() << "\n";
    }
  }
  std::cout << (9 - failed) << "/9 criteria passed\n";
  return failed == 0 ? 0 : 1;
}
