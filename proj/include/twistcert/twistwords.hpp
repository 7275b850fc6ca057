#ifndef TWISTCERT_TWISTWORDS_HPP_
#define TWISTCERT_TWISTWORDS_HPP_

// Words in Dehn twists about the standard curves, normalized in the free
// partially commutative group where two twist letters commute iff their
// curves are disjoint.

#include <algorithm>
#include <cctype>
#include <compare>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "twistcert/surface.hpp"

namespace twistcert {

struct TwistLetter {
  CurveId curve;
  int exponent;  // +1 or -1

  TwistLetter(CurveId c, int e) : curve(c), exponent(e) {
    if (e != 1 && e != -1) {
      throw std::invalid_argument("twist letter exponent must be +1 or -1");
    }
  }

  TwistLetter inverse() const { return {curve, -exponent}; }

  // Two letters commute iff their curves are disjoint (or equal).
  bool commutes_with(const TwistLetter& o) const {
    return intersect(curve, o.curve) == 0;
  }

  std::string str() const {
    return exponent == 1 ? curve.str() : curve.str() + "^-1";
  }

  friend bool operator==(const TwistLetter&, const TwistLetter&) = default;
  // Tie-break order for the normal form: family, index, exponent.
  friend std::strong_ordering operator<=>(const TwistLetter& l,
                                          const TwistLetter& r) {
    if (auto c = l.curve <=> r.curve; c != 0) return c;
    return l.exponent <=> r.exponent;
  }
};

namespace detail {

inline std::vector<TwistLetter> free_pc_reduce(
    const std::vector<TwistLetter>& in) {
  std::vector<TwistLetter> out;
  out.reserve(in.size());
  for (const auto& x : in) {
    bool cancelled = false;
    for (auto i = out.size(); i-- > 0;) {
      if (out[i] == x.inverse()) {
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
        cancelled = true;
        break;
      }
      if (!out[i].commutes_with(x)) break;
    }
    if (!cancelled) out.push_back(x);
  }
  return out;
}

// Lexicographically least word in the commutation class: repeatedly emit the
// smallest letter that commutes with everything still in front of it.
inline std::vector<TwistLetter> lex_min_arrangement(
    std::vector<TwistLetter> rest) {
  std::vector<TwistLetter> out;
  out.reserve(rest.size());
  while (!rest.empty()) {
    std::size_t best = rest.size();
    for (std::size_t i = 0; i < rest.size(); ++i) {
      bool movable = true;
      for (std::size_t j = 0; j < i; ++j) {
        if (!rest[j].commutes_with(rest[i])) {
          movable = false;
          break;
        }
      }
      if (movable && (best == rest.size() || rest[i] < rest[best])) best = i;
    }
    out.push_back(rest[best]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

}  // namespace detail

class PCWord {
 public:
  explicit PCWord(Genus g) : genus_(g) {}
  PCWord(Genus g, std::vector<TwistLetter> letters)
      : genus_(g), letters_(std::move(letters)) {
    for (const auto& l : letters_) {
      if (l.curve.genus() != genus_) {
        throw std::invalid_argument("twist letter " + l.str() +
                                    " has the wrong genus");
      }
    }
  }

  Genus genus() const noexcept { return genus_; }
  const std::vector<TwistLetter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  std::string str() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (const auto& l : letters_) s += l.str();
    return s;
  }

  // Letter-for-letter equality; use word_equal for group equality.
  friend bool operator==(const PCWord&, const PCWord&) = default;

 private:
  Genus genus_;
  std::vector<TwistLetter> letters_;
};

inline PCWord pc_normalize(const PCWord& w) {
  return PCWord(w.genus(),
                detail::lex_min_arrangement(
                    detail::free_pc_reduce(w.letters())));
}

inline PCWord invert(const PCWord& w) {
  std::vector<TwistLetter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return pc_normalize(PCWord(w.genus(), std::move(out)));
}

inline PCWord pc_mul(const PCWord& u, const PCWord& v) {
  if (u.genus() != v.genus()) {
    throw std::invalid_argument("pc_mul: genus mismatch");
  }
  auto letters = u.letters();
  letters.insert(letters.end(), v.letters().begin(), v.letters().end());
  return pc_normalize(PCWord(u.genus(), std::move(letters)));
}

inline bool word_equal(const PCWord& u, const PCWord& v) {
  if (u.genus() != v.genus()) return false;
  return pc_normalize(u).letters() == pc_normalize(v).letters();
}

// Exponent map of a product of twists about pairwise disjoint curves.
struct Multitwist {
  std::map<CurveId, int> exponents;
  friend bool operator==(const Multitwist&, const Multitwist&) = default;
};

// Witness for a word whose support contains an intersecting pair.
struct NotMultitwist {
  CurveId first;
  CurveId second;
};

inline std::variant<Multitwist, NotMultitwist> as_multitwist(
    const PCWord& w) {
  const PCWord n = pc_normalize(w);
  Multitwist m;
  for (const auto& l : n.letters()) {
    for (const auto& [c, e] : m.exponents) {
      if (intersect(c, l.curve) != 0) return NotMultitwist{c, l.curve};
    }
    m.exponents[l.curve] += l.exponent;
  }
  // a reduced word over commuting letters cannot hold x and x^-1 together
  return m;
}

// Parses "A1C1B3B4^-1", optionally with whitespace between letters. "1" or
// the empty string is the identity.
inline PCWord parse_word(std::string_view text, Genus g) {
  std::vector<TwistLetter> out;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip_ws();
  if (text.substr(i) == "1") return PCWord(g);
  while (i < text.size()) {
    const char f = text[i];
    Family fam;
    if (f == 'A') fam = Family::A;
    else if (f == 'B') fam = Family::B;
    else if (f == 'C') fam = Family::C;
    else throw std::invalid_argument("bad twist letter in '" +
                                     std::string(text) + "'");
    ++i;
    if (i < text.size() && text[i] == '_') ++i;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      ++i;
    if (start == i) {
      throw std::invalid_argument("missing index in '" + std::string(text) +
                                  "'");
    }
    const int index = std::stoi(std::string(text.substr(start, i - start)));
    int exp = 1;
    if (text.substr(i, 3) == "^-1") {
      exp = -1;
      i += 3;
    }
    out.emplace_back(CurveId(fam, index, g), exp);
    skip_ws();
  }
  return PCWord(g, std::move(out));
}

// A word mixing twist letters with the symmetry generators.
using MappingLetter = std::variant<TwistLetter, SymmetryGen>;

class MappingWord {
 public:
  explicit MappingWord(Genus g) : genus_(g) {}
  MappingWord(Genus g, std::vector<MappingLetter> letters)
      : genus_(g), letters_(std::move(letters)) {
    for (const auto& l : letters_) {
      if (const auto* t = std::get_if<TwistLetter>(&l);
          t && t->curve.genus() != genus_) {
        throw std::invalid_argument("mapping word letter has wrong genus");
      }
    }
  }
  explicit MappingWord(const PCWord& w) : genus_(w.genus()) {
    letters_.assign(w.letters().begin(), w.letters().end());
  }

  Genus genus() const noexcept { return genus_; }
  const std::vector<MappingLetter>& letters() const noexcept {
    return letters_;
  }
  std::size_t size() const noexcept { return letters_.size(); }

  MappingWord& append(const MappingLetter& l) {
    letters_.push_back(l);
    return *this;
  }
  MappingWord& append(const MappingWord& w) {
    letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end());
    return *this;
  }
  MappingWord& append(const PCWord& w) {
    letters_.insert(letters_.end(), w.letters().begin(), w.letters().end());
    return *this;
  }

  MappingWord inverse() const {
    MappingWord out(genus_);
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
      if (const auto* t = std::get_if<TwistLetter>(&*it)) {
        out.letters_.emplace_back(t->inverse());
      } else {
        out.letters_.emplace_back(twistcert::inverse(std::get<SymmetryGen>(*it)));
      }
    }
    return out;
  }

  std::string str() const {
    std::string s;
    for (const auto& l : letters_) {
      if (!s.empty()) s += ' ';
      if (const auto* t = std::get_if<TwistLetter>(&l)) s += t->str();
      else s += to_string(std::get<SymmetryGen>(l));
    }
    return s.empty() ? "1" : s;
  }

 private:
  Genus genus_;
  std::vector<MappingLetter> letters_;
};

inline MappingWord operator*(MappingWord l, const MappingWord& r) {
  return std::move(l.append(r));
}

// Conjugate of a twist word by a symmetry word, computed on indices only.
inline PCWord sym_conjugate(std::span<const SymmetryGen> prefix,
                            const PCWord& w) {
  std::vector<TwistLetter> out;
  out.reserve(w.size());
  for (const auto& l : w.letters()) {
    out.emplace_back(sym_conj_image(prefix, l.curve), l.exponent);
  }
  return pc_normalize(PCWord(w.genus(), std::move(out)));
}

}  // namespace twistcert

#endif  // TWISTCERT_TWISTWORDS_HPP_
