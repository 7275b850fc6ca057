#ifndef TWISTCERT_GROUP_EXPR_HPP_
#define TWISTCERT_GROUP_EXPR_HPP_

// Membership witnesses: expression trees over the generators rho1, rho2 and
// the twist element F1, plus words over the three involutions rho1, rho2,
// iota that certificates are ultimately expressed in.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "twistcert/surface.hpp"
#include "twistcert/twistwords.hpp"

namespace twistcert {

enum class Atom : std::uint8_t { RHO1, RHO2, F1 };

struct AtomPower {
  Atom atom;
  int exponent;  // rho letters are involutions and always carry +1
  friend bool operator==(const AtomPower&, const AtomPower&) = default;
};

class GroupExpr {
 public:
  GroupExpr() : GroupExpr(Kind::Product, Atom::F1, {}) {}

  static GroupExpr atom(Atom a) { return GroupExpr(Kind::Leaf, a, {}); }
  static GroupExpr product(std::vector<GroupExpr> factors) {
    return GroupExpr(Kind::Product, Atom::F1, std::move(factors));
  }
  static GroupExpr conjugate(const GroupExpr& by, const GroupExpr& x) {
    return GroupExpr(Kind::Conjugate, Atom::F1, {by, x});
  }
  GroupExpr inverse() const {
    return GroupExpr(Kind::Inverse, Atom::F1, {*this});
  }

  // Freely reduced word over the atoms, with rho^2 = 1.
  std::vector<AtomPower> flatten() const {
    std::vector<AtomPower> out;
    node_->emit(out, false);
    return out;
  }

 private:
  enum class Kind : std::uint8_t { Leaf, Product, Conjugate, Inverse };

  struct Node {
    Kind kind;
    Atom atom;
    std::vector<GroupExpr> children;

    static void push(std::vector<AtomPower>& out, AtomPower p) {
      if (p.atom != Atom::F1) p.exponent = 1;
      if (!out.empty() && out.back().atom == p.atom &&
          (p.atom != Atom::F1 || out.back().exponent == -p.exponent)) {
        out.pop_back();
      } else {
        out.push_back(p);
      }
    }

    void emit(std::vector<AtomPower>& out, bool inverted) const {
      switch (kind) {
        case Kind::Leaf:
          push(out, {atom, inverted ? -1 : 1});
          break;
        case Kind::Inverse:
          children[0].node_->emit(out, !inverted);
          break;
        case Kind::Product:
          if (inverted) {
            for (auto it = children.rbegin(); it != children.rend(); ++it)
              it->node_->emit(out, true);
          } else {
            for (const auto& c : children) c.node_->emit(out, false);
          }
          break;
        case Kind::Conjugate:
          // (b x b^-1)^-1 = b x^-1 b^-1
          children[0].node_->emit(out, false);
          children[1].node_->emit(out, inverted);
          children[0].node_->emit(out, true);
          break;
      }
    }
  };

  GroupExpr(Kind k, Atom a, std::vector<GroupExpr> children)
      : node_(std::make_shared<const Node>(Node{k, a, std::move(children)})) {}

  std::shared_ptr<const Node> node_;
};

inline GroupExpr rho1_expr() { return GroupExpr::atom(Atom::RHO1); }
inline GroupExpr rho2_expr() { return GroupExpr::atom(Atom::RHO2); }
inline GroupExpr f1_expr() { return GroupExpr::atom(Atom::F1); }

// R = rho1 rho2 and R^-1 = rho2 rho1.
inline GroupExpr symmetry_expr(std::span<const SymmetryGen> word) {
  std::vector<GroupExpr> parts;
  for (auto s : word) {
    switch (s) {
      case SymmetryGen::RHO1: parts.push_back(rho1_expr()); break;
      case SymmetryGen::RHO2: parts.push_back(rho2_expr()); break;
      case SymmetryGen::ROT:
        parts.push_back(rho1_expr());
        parts.push_back(rho2_expr());
        break;
      case SymmetryGen::ROT_INV:
        parts.push_back(rho2_expr());
        parts.push_back(rho1_expr());
        break;
    }
  }
  return GroupExpr::product(std::move(parts));
}

// Realizes an atom word as a mapping word, given the twist word standing for
// F1.
inline MappingWord expand_atoms(std::span<const AtomPower> word,
                                const PCWord& f1) {
  MappingWord out(f1.genus());
  MappingWord f1_inv = MappingWord(f1).inverse();
  for (const auto& p : word) {
    switch (p.atom) {
      case Atom::RHO1: out.append(MappingLetter(SymmetryGen::RHO1)); break;
      case Atom::RHO2: out.append(MappingLetter(SymmetryGen::RHO2)); break;
      case Atom::F1:
        out.append(p.exponent > 0 ? MappingWord(f1) : f1_inv);
        break;
    }
  }
  return out;
}

enum class Involution : std::uint8_t { R1, R2, IOTA };

inline std::string to_string(Involution i) {
  switch (i) {
    case Involution::R1: return "r1";
    case Involution::R2: return "r2";
    case Involution::IOTA: return "iota";
  }
  return "?";
}

using InvolutionWord = std::vector<Involution>;

// Append with cancellation, every letter being its own inverse.
inline void push_involution(InvolutionWord& w, Involution x) {
  if (!w.empty() && w.back() == x) w.pop_back();
  else w.push_back(x);
}

inline InvolutionWord reduce(std::span<const Involution> w) {
  InvolutionWord out;
  for (auto x : w) push_involution(out, x);
  return out;
}

// A symmetry word written over rho1, rho2 and reduced.
inline InvolutionWord rho_word(std::span<const SymmetryGen> prefix) {
  InvolutionWord out;
  for (const auto& p : symmetry_expr(prefix).flatten()) {
    push_involution(out, p.atom == Atom::RHO1 ? Involution::R1
                                              : Involution::R2);
  }
  return out;
}

// Rewrites an atom word into the involutions using F1 = rho iota, so that
// F1^-1 = iota rho^-1.
inline InvolutionWord substitute_f1(std::span<const AtomPower> word,
                                    std::span<const Involution> rho) {
  InvolutionWord out;
  for (const auto& p : word) {
    switch (p.atom) {
      case Atom::RHO1: push_involution(out, Involution::R1); break;
      case Atom::RHO2: push_involution(out, Involution::R2); break;
      case Atom::F1:
        if (p.exponent > 0) {
          for (auto r : rho) push_involution(out, r);
          push_involution(out, Involution::IOTA);
        } else {
          push_involution(out, Involution::IOTA);
          for (auto it = rho.rbegin(); it != rho.rend(); ++it)
            push_involution(out, *it);
        }
        break;
    }
  }
  return out;
}

}  // namespace twistcert

#endif  // TWISTCERT_GROUP_EXPR_HPP_
