#ifndef TWISTCERT_HOMOLOGY_HPP_
#define TWISTCERT_HOMOLOGY_HPP_

// The symplectic representation on H_1(Sigma_g; Z) in the basis
// x_1, y_1, ..., x_g, y_g with <x_i, y_i> = +1. Standard curves have classes
// [a_i] = x_i, [b_i] = y_i, [c_i] = x_i - x_{i+1}; a right twist about u acts
// by the transvection v -> v + <v, u> u.
//
// Matrices are generic over a coefficient ring: exact 64-bit integers with
// overflow checks, or integers mod a prime.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "twistcert/surface.hpp"
#include "twistcert/twistwords.hpp"

namespace twistcert {

// Exact integers; every operation throws std::overflow_error instead of
// wrapping.
struct IntegerRing {
  using value_type = std::int64_t;

  static value_type add(value_type a, value_type b) {
    value_type r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("add");
    return r;
  }
  static value_type sub(value_type a, value_type b) {
    value_type r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("sub");
    return r;
  }
  static value_type mul(value_type a, value_type b) {
    value_type r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("mul");
    return r;
  }
  static value_type from_int(std::int64_t v) { return v; }

  friend bool operator==(const IntegerRing&, const IntegerRing&) = default;
};

constexpr bool is_prime(std::int64_t p) noexcept {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// Z/pZ with representatives in [0, p).
struct ModRing {
  using value_type = std::int64_t;
  std::int64_t p;

  explicit ModRing(std::int64_t prime) : p(prime) {
    if (!is_prime(prime) || prime > (std::int64_t{1} << 31)) {
      throw std::invalid_argument("modulus must be a prime below 2^31, got " +
                                  std::to_string(prime));
    }
  }

  value_type add(value_type a, value_type b) const { return (a + b) % p; }
  value_type sub(value_type a, value_type b) const { return (a - b + p) % p; }
  value_type mul(value_type a, value_type b) const { return (a * b) % p; }
  value_type from_int(std::int64_t v) const {
    const auto r = v % p;
    return r < 0 ? r + p : r;
  }

  friend bool operator==(const ModRing&, const ModRing&) = default;
};

template <typename Ring>
class Matrix {
 public:
  using value_type = typename Ring::value_type;

  Matrix(Ring ring, int n)
      : ring_(ring), n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}

  static Matrix identity(Ring ring, int n) {
    Matrix m(ring, n);
    for (int i = 0; i < n; ++i) m(i, i) = ring.from_int(1);
    return m;
  }

  int dim() const noexcept { return n_; }
  const Ring& ring() const noexcept { return ring_; }

  value_type& operator()(int r, int c) {
    return a_[static_cast<std::size_t>(r) * n_ + c];
  }
  value_type operator()(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * n_ + c];
  }

  bool is_identity() const {
    for (int r = 0; r < n_; ++r) {
      for (int c = 0; c < n_; ++c) {
        if ((*this)(r, c) != (r == c ? ring_.from_int(1) : 0)) return false;
      }
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(ring_, n_);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& l, const Matrix& r) {
    if (l.n_ != r.n_) throw std::invalid_argument("matrix size mismatch");
    Matrix out(l.ring_, l.n_);
    for (int i = 0; i < l.n_; ++i) {
      for (int k = 0; k < l.n_; ++k) {
        const auto lik = l(i, k);
        if (lik == 0) continue;
        for (int j = 0; j < l.n_; ++j) {
          if (r(k, j) == 0) continue;
          out(i, j) = l.ring_.add(out(i, j), l.ring_.mul(lik, r(k, j)));
        }
      }
    }
    return out;
  }

  std::vector<value_type> apply(std::span<const value_type> v) const {
    if (static_cast<int>(v.size()) != n_) {
      throw std::invalid_argument("vector size mismatch");
    }
    std::vector<value_type> out(n_, 0);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c)
        out[r] = ring_.add(out[r], ring_.mul((*this)(r, c), v[c]));
    return out;
  }

  friend bool operator==(const Matrix& l, const Matrix& r) {
    return l.n_ == r.n_ && l.a_ == r.a_;
  }

 private:
  Ring ring_;
  int n_;
  std::vector<value_type> a_;
};

using SpMatrix = Matrix<IntegerRing>;
using ModMatrix = Matrix<ModRing>;

struct HomologyClass {
  std::vector<std::int64_t> coords;  // x_1, y_1, ..., x_g, y_g

  static HomologyClass zero(Genus g) {
    return {std::vector<std::int64_t>(2 * static_cast<std::size_t>(g.value()), 0)};
  }
  HomologyClass operator-() const {
    HomologyClass r = *this;
    for (auto& v : r.coords) v = IntegerRing::sub(0, v);
    return r;
  }
  friend bool operator==(const HomologyClass&, const HomologyClass&) = default;
};

inline constexpr int x_slot(int i) { return 2 * (i - 1); }
inline constexpr int y_slot(int i) { return 2 * (i - 1) + 1; }

inline HomologyClass class_of(const CurveId& c) {
  const Genus g = c.genus();
  auto h = HomologyClass::zero(g);
  const int i = c.index();
  switch (c.family()) {
    case Family::A: h.coords[x_slot(i)] = 1; break;
    case Family::B: h.coords[y_slot(i)] = 1; break;
    case Family::C:
      h.coords[x_slot(i)] += 1;
      h.coords[x_slot(g.wrap(i + 1))] -= 1;
      break;
  }
  return h;
}

inline std::int64_t pairing(const HomologyClass& u, const HomologyClass& v) {
  if (u.coords.size() != v.coords.size() || u.coords.size() % 2 != 0) {
    throw std::invalid_argument("pairing: dimension mismatch");
  }
  std::int64_t s = 0;
  for (std::size_t k = 0; k < u.coords.size(); k += 2) {
    s = IntegerRing::add(s, IntegerRing::mul(u.coords[k], v.coords[k + 1]));
    s = IntegerRing::sub(s, IntegerRing::mul(u.coords[k + 1], v.coords[k]));
  }
  return s;
}

// The matrix of the pairing, J(r, c) = <e_r, e_c>.
template <typename Ring = IntegerRing>
Matrix<Ring> pairing_matrix(Genus g, Ring ring = Ring{}) {
  const int n = 2 * g.value();
  Matrix<Ring> j(ring, n);
  for (int i = 1; i <= g.value(); ++i) {
    j(x_slot(i), y_slot(i)) = ring.from_int(1);
    j(y_slot(i), x_slot(i)) = ring.from_int(-1);
  }
  return j;
}

template <typename Ring>
bool is_symplectic(const Matrix<Ring>& m) {
  const Genus g(m.dim() / 2);
  const auto j = pairing_matrix(g, m.ring());
  return m.transpose() * j * m == j;
}

namespace detail {

// M <- M * (v -> v + sign <v,u> u), i.e. M + sign (M u) w^T where
// w_k = <e_k, u>.
template <typename Ring>
void right_multiply_transvection(Matrix<Ring>& m, const HomologyClass& u,
                                 int sign) {
  using V = typename Ring::value_type;
  const auto& ring = m.ring();
  const int n = m.dim();
  // standard classes have at most two nonzero coordinates; work sparsely
  std::vector<std::pair<int, V>> us, ws;
  for (int k = 0; k < n; k += 2) {
    if (u.coords[k] != 0) {
      us.emplace_back(k, ring.from_int(u.coords[k]));
      ws.emplace_back(k + 1, ring.from_int(IntegerRing::sub(0, u.coords[k])));
    }
    if (u.coords[k + 1] != 0) {
      us.emplace_back(k + 1, ring.from_int(u.coords[k + 1]));
      ws.emplace_back(k, ring.from_int(u.coords[k + 1]));
    }
  }
  for (int r = 0; r < n; ++r) {
    V mu = 0;
    for (const auto& [k, uk] : us) mu = ring.add(mu, ring.mul(m(r, k), uk));
    if (mu == 0) continue;
    if (sign < 0) mu = ring.sub(0, mu);
    for (const auto& [c, wc] : ws) m(r, c) = ring.add(m(r, c), ring.mul(mu, wc));
  }
}

// Symmetries act as signed permutations of the basis: column `col` of the
// matrix has the single entry sign at row target[col].
struct SignedPermutation {
  std::vector<int> target;
  std::vector<int> sign;
};

inline SignedPermutation symmetry_permutation(SymmetryGen s, Genus g) {
  const int n = 2 * g.value();
  SignedPermutation p{std::vector<int>(n), std::vector<int>(n, 1)};
  for (int i = 1; i <= g.value(); ++i) {
    int j = i;
    int sign = 1;
    switch (s) {
      case SymmetryGen::ROT: j = g.wrap(i + 1); break;
      case SymmetryGen::ROT_INV: j = g.wrap(i - 1); break;
      case SymmetryGen::RHO1:
        j = g.wrap(kRho1Reflection.ka - i);
        sign = -1;
        break;
      case SymmetryGen::RHO2:
        j = g.wrap(kRho2Reflection.ka - i);
        sign = -1;
        break;
    }
    p.target[x_slot(i)] = x_slot(j);
    p.target[y_slot(i)] = y_slot(j);
    p.sign[x_slot(i)] = sign;
    p.sign[y_slot(i)] = sign;
  }
  return p;
}

// M <- M * P: column c of the product is sign[c] * column target[c] of M.
template <typename Ring>
void right_multiply_symmetry(Matrix<Ring>& m, SymmetryGen s) {
  const auto& ring = m.ring();
  const int n = m.dim();
  const auto p = symmetry_permutation(s, Genus(n / 2));
  Matrix<Ring> out(ring, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      const auto v = m(r, p.target[c]);
      out(r, c) = p.sign[c] < 0 ? ring.sub(0, v) : v;
    }
  }
  m = std::move(out);
}

}  // namespace detail

template <typename Ring = IntegerRing>
Matrix<Ring> transvection(const HomologyClass& u, int sign = 1,
                          Ring ring = Ring{}) {
  const int n = static_cast<int>(u.coords.size());
  auto m = Matrix<Ring>::identity(ring, n);
  detail::right_multiply_transvection(m, u, sign);
  return m;
}

template <typename Ring = IntegerRing>
Matrix<Ring> sym_matrix(SymmetryGen s, Genus g, Ring ring = Ring{}) {
  auto m = Matrix<Ring>::identity(ring, 2 * g.value());
  detail::right_multiply_symmetry(m, s);
  return m;
}

template <typename Ring = IntegerRing>
Matrix<Ring> letter_matrix(const MappingLetter& l, Genus g, Ring ring = Ring{}) {
  if (const auto* t = std::get_if<TwistLetter>(&l)) {
    return transvection(class_of(t->curve), t->exponent, ring);
  }
  return sym_matrix(std::get<SymmetryGen>(l), g, ring);
}

// Product of the letter matrices in word order, so the rightmost letter acts
// first on column vectors.
template <typename Ring = IntegerRing>
Matrix<Ring> word_matrix(const MappingWord& w, Ring ring = Ring{}) {
  auto m = Matrix<Ring>::identity(ring, 2 * w.genus().value());
  for (const auto& l : w.letters()) {
    if (const auto* t = std::get_if<TwistLetter>(&l)) {
      detail::right_multiply_transvection(m, class_of(t->curve), t->exponent);
    } else {
      detail::right_multiply_symmetry(m, std::get<SymmetryGen>(l));
    }
  }
  return m;
}

template <typename Ring = IntegerRing>
Matrix<Ring> word_matrix(const PCWord& w, Ring ring = Ring{}) {
  return word_matrix(MappingWord(w), ring);
}

// Inverse of a symplectic matrix: M^-1 = -J M^T J.
template <typename Ring>
Matrix<Ring> symplectic_inverse(const Matrix<Ring>& m) {
  const Genus g(m.dim() / 2);
  const auto j = pairing_matrix(g, m.ring());
  auto r = j * m.transpose() * j;
  Matrix<Ring> out(m.ring(), m.dim());
  for (int a = 0; a < m.dim(); ++a)
    for (int b = 0; b < m.dim(); ++b) out(a, b) = m.ring().sub(0, r(a, b));
  return out;
}

inline ModMatrix mod_p(const SpMatrix& m, std::int64_t p) {
  const ModRing ring(p);
  ModMatrix out(ring, m.dim());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) out(r, c) = ring.from_int(m(r, c));
  return out;
}

// Least n in [1, bound] with M^n = I; nullopt when the order exceeds bound.
template <typename Ring>
std::optional<int> matrix_order(const Matrix<Ring>& m, int bound) {
  if (bound < 1) throw std::invalid_argument("matrix_order: bound < 1");
  auto p = m;
  for (int n = 1; n <= bound; ++n) {
    if (p.is_identity()) return n;
    if (n < bound) p = p * m;
  }
  return std::nullopt;
}

}  // namespace twistcert

#endif  // TWISTCERT_HOMOLOGY_HPP_
