#ifndef TWISTCERT_TWISTCALC_HPP_
#define TWISTCERT_TWISTCALC_HPP_

// Symbolic evaluation of mapping words on standard curves. The evaluator
// tracks f(c) as a standard base curve under a short stack of pending twists
// and only ever applies rewrite steps that are valid in the mapping class
// group:
//   R0  symmetries relabel the base and every pending curve;
//   R1  t_x fixes the current curve when x is provably disjoint from it;
//   R2  a twist about the top pending curve merges into it;
//   R3  t_c^e t_d^e (c) = d when i(c, d) = 1 (braid relation);
//   R4  anything else is pushed; past the depth bound the state is dead.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "twistcert/surface.hpp"
#include "twistcert/twistwords.hpp"

namespace twistcert {

inline constexpr std::size_t kDefaultDepthBound = 4;

struct PendingTwist {
  CurveId curve;
  int exponent;  // nonzero, may exceed 1 after merging
  friend bool operator==(const PendingTwist&, const PendingTwist&) = default;
};

// The curve (t_{pending[k-1]} ... t_{pending[0]})(base).
struct CurveState {
  CurveId base;
  std::vector<PendingTwist> pending;
  bool dead = false;

  explicit CurveState(CurveId c) : base(c) {}

  bool is_standard() const noexcept { return pending.empty() && !dead; }

  std::string str() const {
    if (dead) return "<dead>";
    std::string s;
    for (auto it = pending.rbegin(); it != pending.rend(); ++it) {
      s += "t(" + it->curve.str() + ")^" + std::to_string(it->exponent) + " ";
    }
    return s + base.str();
  }

  friend bool operator==(const CurveState&, const CurveState&) = default;
};

// Intersection number of x with the curve represented by s, using
// i(x, f(c)) = i(f^-1(x), c). Each pending twist is unwound only when its
// curve is disjoint from or equal to x, so f^-1(x) = x; otherwise the answer
// is unknown (nullopt).
inline std::optional<int> resolve_intersection(const CurveId& x,
                                               const CurveState& s) {
  if (s.dead) return std::nullopt;
  for (auto it = s.pending.rbegin(); it != s.pending.rend(); ++it) {
    if (it->curve != x && intersect(it->curve, x) != 0) return std::nullopt;
  }
  return intersect(x, s.base);
}

inline CurveState apply_letter(CurveState s, const MappingLetter& letter,
                               std::size_t depth_bound = kDefaultDepthBound) {
  if (s.dead) return s;

  if (const auto* sym = std::get_if<SymmetryGen>(&letter)) {
    s.base = sym_image(*sym, s.base);
    for (auto& p : s.pending) p.curve = sym_image(*sym, p.curve);
    return s;
  }

  const auto& t = std::get<TwistLetter>(letter);

  if (resolve_intersection(t.curve, s) == 0) return s;

  if (!s.pending.empty() && s.pending.back().curve == t.curve) {
    s.pending.back().exponent += t.exponent;
    if (s.pending.back().exponent == 0) s.pending.pop_back();
    return s;
  }

  if (s.pending.size() == 1 && s.pending[0].exponent == t.exponent &&
      t.curve == s.base && intersect(t.curve, s.pending[0].curve) == 1) {
    s.base = s.pending[0].curve;
    s.pending.clear();
    return s;
  }

  s.pending.push_back({t.curve, t.exponent});
  if (s.pending.size() > depth_bound) s.dead = true;
  return s;
}

// Why an evaluation did not end on a standard curve.
struct Indeterminate {
  CurveId input;
  std::size_t blocking_position;  // index into the word of the last push
  std::string blocking_letter;
  std::string final_state;
};

using EvalResult = std::variant<CurveId, Indeterminate>;

inline bool is_determinate(const EvalResult& r) {
  return std::holds_alternative<CurveId>(r);
}

// The rightmost letter acts first.
inline EvalResult evaluate(const MappingWord& w, const CurveId& c,
                           std::size_t depth_bound = kDefaultDepthBound) {
  CurveState s(c);
  std::size_t blocking = w.size();
  const auto& letters = w.letters();
  for (std::size_t i = letters.size(); i-- > 0;) {
    const auto before = s.pending.size();
    s = apply_letter(std::move(s), letters[i], depth_bound);
    if (s.pending.size() > before || s.dead) blocking = i;
    if (s.dead) break;
  }
  if (s.is_standard()) return s.base;

  std::string letter = "?";
  if (blocking < letters.size()) {
    const auto& l = letters[blocking];
    if (const auto* t = std::get_if<TwistLetter>(&l)) letter = t->str();
    else letter = to_string(std::get<SymmetryGen>(l));
  }
  return Indeterminate{c, blocking, letter, s.str()};
}

using TupleResult = std::variant<std::vector<CurveId>, Indeterminate>;

inline TupleResult evaluate_tuple(const MappingWord& w,
                                  std::span<const CurveId> cs,
                                  std::size_t depth_bound = kDefaultDepthBound) {
  std::vector<CurveId> out;
  out.reserve(cs.size());
  for (const auto& c : cs) {
    auto r = evaluate(w, c, depth_bound);
    if (auto* bad = std::get_if<Indeterminate>(&r)) return std::move(*bad);
    out.push_back(std::get<CurveId>(r));
  }
  return out;
}

using ConjResult = std::variant<PCWord, Indeterminate>;

// G w G^-1, computed letterwise from f t_c f^-1 = t_{f(c)}.
inline ConjResult conjugate_word(const MappingWord& conjugator,
                                 const PCWord& w,
                                 std::size_t depth_bound = kDefaultDepthBound) {
  std::vector<TwistLetter> out;
  out.reserve(w.size());
  for (const auto& l : w.letters()) {
    auto r = evaluate(conjugator, l.curve, depth_bound);
    if (auto* bad = std::get_if<Indeterminate>(&r)) return std::move(*bad);
    out.emplace_back(std::get<CurveId>(r), l.exponent);
  }
  return pc_normalize(PCWord(w.genus(), std::move(out)));
}

}  // namespace twistcert

#endif  // TWISTCERT_TWISTCALC_HPP_
