#pragma once

// Polynomial differential forms and polynomial multivector fields on C^N.
//
// A basis element dz_I (or d/dz_I) is a bitmask over the coordinates; the
// index tuple is the set bits in increasing order. Signs come from sorting the
// concatenated tuples and counting transpositions.

#include "flagforge/polyring.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flagforge {

using IndexMask = std::uint32_t;
inline constexpr std::size_t kMaxVariables = 32;

/// Lexicographic order of the increasing index tuples encoded by two masks.
struct TupleOrder {
  bool operator()(IndexMask a, IndexMask b) const {
    if (a == b) return false;
    const IndexMask diff = a ^ b;
    return (a & (diff & (~diff + 1U))) != 0;
  }
};

inline IndexMask bit(std::size_t i) { return IndexMask{1} << i; }
inline int tuple_size(IndexMask m) { return std::popcount(m); }

inline std::vector<int> tuple_indices(IndexMask m) {
  std::vector<int> out;
  for (int i = 0; m != 0; ++i, m >>= 1U) {
    if (m & 1U) out.push_back(i);
  }
  return out;
}

/// Sign of moving the indices of `right` past those of `left`: (-1)^#{i in left, j in right : i > j}.
inline int merge_sign(IndexMask left, IndexMask right) {
  int inversions = 0;
  for (IndexMask r = right; r != 0; r &= r - 1) {
    const int j = std::countr_zero(r);
    inversions += std::popcount(static_cast<IndexMask>(left >> (j + 1)));
  }
  return (inversions & 1) ? -1 : 1;
}

/// Sign of pulling index j to the front of the tuple `m` (j must be in m).
inline int front_sign(IndexMask m, int j) { return (std::popcount(m & (bit(j) - 1U)) & 1) ? -1 : 1; }

/// Every mask with q bits among the first nvars, in tuple order.
inline std::vector<IndexMask> masks_of_size(std::size_t nvars, std::size_t q) {
  std::vector<IndexMask> out;
  if (q > nvars) return out;
  const std::uint64_t limit = std::uint64_t{1} << nvars;
  for (std::uint64_t m = 0; m < limit; ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) == q) out.push_back(static_cast<IndexMask>(m));
  }
  std::sort(out.begin(), out.end(), TupleOrder{});
  return out;
}

struct FormKind {
  static constexpr std::string_view basis_prefix = "dz";
  static constexpr std::string_view name = "form";
};
struct VectorKind {
  static constexpr std::string_view basis_prefix = "d/dz";
  static constexpr std::string_view name = "multivector";
};

/// Element of the p-th exterior power over polynomial coefficients.
template <class Kind>
class Alternating {
 public:
  using ComponentMap = std::map<IndexMask, Poly, TupleOrder>;

  Alternating(std::size_t nvars, std::size_t degree) : nvars_(nvars), degree_(degree) {
    if (nvars == 0 || nvars > kMaxVariables) throw std::invalid_argument("unsupported number of variables");
  }

  /// c * e_{i1} ^ ... ^ e_{ip} for an arbitrary index list; repeated indices give zero.
  static Alternating basis(std::size_t nvars, std::span<const int> indices, const Poly& coefficient) {
    Alternating out(nvars, indices.size());
    std::vector<int> sorted(indices.begin(), indices.end());
    int sign = 1;
    for (std::size_t pass = 0; pass < sorted.size(); ++pass) {
      for (std::size_t k = 0; k + 1 < sorted.size() - pass; ++k) {
        if (sorted[k] > sorted[k + 1]) {
          std::swap(sorted[k], sorted[k + 1]);
          sign = -sign;
        }
      }
    }
    IndexMask mask = 0;
    for (int i : sorted) {
      if (i < 0 || static_cast<std::size_t>(i) >= nvars) throw std::out_of_range("basis index out of range");
      if (mask & bit(i)) return out;
      mask |= bit(i);
    }
    out.add(mask, sign < 0 ? -coefficient : coefficient);
    return out;
  }
  static Alternating basis(std::size_t nvars, std::initializer_list<int> indices) {
    return basis(nvars, std::span<const int>(indices.begin(), indices.size()), Poly::constant(nvars, Rational(1)));
  }

  std::size_t nvars() const { return nvars_; }
  std::size_t degree() const { return degree_; }
  const ComponentMap& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  Poly component(IndexMask mask) const {
    auto it = comps_.find(mask);
    return it == comps_.end() ? Poly(nvars_) : it->second;
  }

  void add(IndexMask mask, const Poly& coefficient) {
    if (static_cast<std::size_t>(tuple_size(mask)) != degree_) throw std::invalid_argument("basis element of the wrong degree");
    if (nvars_ < kMaxVariables && (mask >> nvars_) != 0) throw std::out_of_range("basis index out of range");
    if (coefficient.nvars() != nvars_) throw DimensionMismatch("coefficient lives in a different ring");
    if (coefficient.is_zero()) return;
    auto [it, inserted] = comps_.try_emplace(mask, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

  Alternating& operator+=(const Alternating& other) {
    require_compatible(other);
    for (const auto& [m, c] : other.comps_) add(m, c);
    return *this;
  }
  Alternating& operator-=(const Alternating& other) {
    require_compatible(other);
    for (const auto& [m, c] : other.comps_) add(m, -c);
    return *this;
  }
  friend Alternating operator+(Alternating a, const Alternating& b) { return a += b; }
  friend Alternating operator-(Alternating a, const Alternating& b) { return a -= b; }
  Alternating operator-() const {
    Alternating out(nvars_, degree_);
    for (const auto& [m, c] : comps_) out.comps_.emplace(m, -c);
    return out;
  }

  /// Multiplies every coefficient by a polynomial.
  friend Alternating operator*(const Poly& f, const Alternating& a) {
    Alternating out(a.nvars_, a.degree_);
    for (const auto& [m, c] : a.comps_) out.add(m, f * c);
    return out;
  }
  friend Alternating operator*(const Rational& q, const Alternating& a) {
    Alternating out(a.nvars_, a.degree_);
    for (const auto& [m, c] : a.comps_) out.add(m, q * c);
    return out;
  }

  bool operator==(const Alternating& other) const {
    return nvars_ == other.nvars_ && degree_ == other.degree_ && comps_ == other.comps_;
  }

  /// Common homogeneous degree of all coefficients.
  HomogeneousDegree coefficient_degree() const {
    HomogeneousDegree acc = HomogeneousDegree::any();
    for (const auto& [m, c] : comps_) acc = acc.merge(c.homogeneous_degree());
    return acc;
  }

 private:
  void require_compatible(const Alternating& other) const {
    if (other.nvars_ != nvars_) throw DimensionMismatch("operands live on different numbers of variables");
    if (other.degree_ != degree_) throw std::invalid_argument("cannot add elements of different degree");
  }

  std::size_t nvars_;
  std::size_t degree_;
  ComponentMap comps_;
};

using PForm = Alternating<FormKind>;
using MultiVector = Alternating<VectorKind>;

// ---------------------------------------------------------------------------
// Constructors for common elements.

inline PForm coordinate_differential(std::size_t nvars, int i) { return PForm::basis(nvars, {i}); }
inline MultiVector coordinate_field(std::size_t nvars, int i) { return MultiVector::basis(nvars, {i}); }

/// The vector field sum_i components[i] d/dz_i.
inline MultiVector vector_field(std::span<const Poly> components) {
  if (components.empty()) throw std::invalid_argument("a vector field needs at least one component");
  const std::size_t n = components.size();
  MultiVector out(n, 1);
  for (std::size_t i = 0; i < n; ++i) out.add(bit(i), components[i]);
  return out;
}
inline MultiVector vector_field(const std::vector<Poly>& components) {
  return vector_field(std::span<const Poly>(components));
}

/// Components X_0..X_{N-1} of a vector field.
inline std::vector<Poly> field_components(const MultiVector& field) {
  if (field.degree() != 1) throw std::invalid_argument("not a vector field");
  std::vector<Poly> out;
  out.reserve(field.nvars());
  for (std::size_t i = 0; i < field.nvars(); ++i) out.push_back(field.component(bit(i)));
  return out;
}

/// theta = z0 d/dz0 + ... + z{N-1} d/dz{N-1}.
inline MultiVector radial_field(std::size_t nvars) {
  MultiVector out(nvars, 1);
  for (std::size_t i = 0; i < nvars; ++i) out.add(bit(i), Poly::variable(nvars, i));
  return out;
}

/// dz0 ^ ... ^ dz{N-1}.
inline PForm volume_form(std::size_t nvars) {
  PForm out(nvars, nvars);
  out.add(nvars == kMaxVariables ? ~IndexMask{0} : bit(nvars) - 1U, Poly::constant(nvars, Rational(1)));
  return out;
}

/// dP = sum_i dP/dz_i dz_i.
inline PForm differential(const Poly& p) {
  PForm out(p.nvars(), 1);
  for (std::size_t i = 0; i < p.nvars(); ++i) out.add(bit(i), p.derivative(i));
  return out;
}

// ---------------------------------------------------------------------------
// Operations.

template <class Kind>
Alternating<Kind> wedge(const Alternating<Kind>& a, const Alternating<Kind>& b) {
  if (a.nvars() != b.nvars()) throw DimensionMismatch("wedge of elements on different numbers of variables");
  Alternating<Kind> out(a.nvars(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.components()) {
    for (const auto& [mb, cb] : b.components()) {
      if (ma & mb) continue;
      const Poly prod = ca * cb;
      out.add(ma | mb, merge_sign(ma, mb) < 0 ? -prod : prod);
    }
  }
  return out;
}

/// Interior product. A basis multivector d/dz_{j1} ^ ... ^ d/dz_{jq} acts as
/// i_{j1} o ... o i_{jq}, i.e. the rightmost contraction is applied first.
inline PForm contract(const MultiVector& v, const PForm& a) {
  if (v.nvars() != a.nvars()) throw DimensionMismatch("contraction on different numbers of variables");
  if (v.degree() > a.degree()) return PForm(a.nvars(), 0);
  PForm out(a.nvars(), a.degree() - v.degree());
  for (const auto& [mv, cv] : v.components()) {
    const std::vector<int> js = tuple_indices(mv);
    for (const auto& [ma, ca] : a.components()) {
      if ((ma & mv) != mv) continue;
      IndexMask mask = ma;
      int sign = 1;
      for (auto it = js.rbegin(); it != js.rend(); ++it) {
        sign *= front_sign(mask, *it);
        mask ^= bit(*it);
      }
      const Poly prod = cv * ca;
      out.add(mask, sign < 0 ? -prod : prod);
    }
  }
  return out;
}

/// i_{X1} i_{X2} ... i_{Xk} a, with X_k applied first.
inline PForm contract_all(std::span<const MultiVector> fields, PForm a) {
  for (auto it = fields.rbegin(); it != fields.rend(); ++it) a = contract(*it, a);
  return a;
}

inline PForm exterior_derivative(const PForm& a) {
  PForm out(a.nvars(), a.degree() + 1);
  if (a.degree() >= a.nvars()) return out;
  for (const auto& [m, c] : a.components()) {
    for (std::size_t j = 0; j < a.nvars(); ++j) {
      if (m & bit(j)) continue;
      const Poly dc = c.derivative(j);
      if (dc.is_zero()) continue;
      out.add(m | bit(j), front_sign(m | bit(j), static_cast<int>(j)) < 0 ? -dc : dc);
    }
  }
  return out;
}

/// [X, Y]_i = sum_j (X_j dY_i/dz_j - Y_j dX_i/dz_j).
inline MultiVector lie_bracket(const MultiVector& x, const MultiVector& y) {
  if (x.nvars() != y.nvars()) throw DimensionMismatch("bracket of fields on different numbers of variables");
  if (x.degree() != 1 || y.degree() != 1) throw std::invalid_argument("the Lie bracket is defined for vector fields");
  const std::size_t n = x.nvars();
  const auto xs = field_components(x);
  const auto ys = field_components(y);
  MultiVector out(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    Poly acc(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (!xs[j].is_zero()) acc += xs[j] * ys[i].derivative(j);
      if (!ys[j].is_zero()) acc -= ys[j] * xs[i].derivative(j);
    }
    out.add(bit(i), acc);
  }
  return out;
}

/// Coefficient values of a form at a rational point, keyed by basis mask.
template <class Kind>
std::map<IndexMask, Rational, TupleOrder> evaluate(const Alternating<Kind>& a, std::span<const Rational> point) {
  std::map<IndexMask, Rational, TupleOrder> out;
  for (const auto& [m, c] : a.components()) {
    Rational v = c.evaluate(point);
    if (v != 0) out.emplace(m, v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format: "(z2^2 + z0*z3) dz1 - z1*z2 dz2^dz3", vector fields "z1 d/dz0 + ...".

template <class Kind>
std::string basis_text(IndexMask mask) {
  std::string out;
  for (int i : tuple_indices(mask)) {
    if (!out.empty()) out += '^';
    out += Kind::basis_prefix;
    out += std::to_string(i);
  }
  return out;
}

template <class Kind>
std::string to_string(const Alternating<Kind>& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mask, c] : a.components()) {
    const std::string basis = basis_text<Kind>(mask);
    std::string coef;
    bool negative = false;
    if (c.term_count() == 1) {
      const auto& [mono, value] = *c.terms().begin();
      negative = value < 0;
      if (!(mono.total_degree() == 0 && abs(value) == 1 && !basis.empty())) {
        coef = detail::unsigned_term_text(mono, value);
      }
    } else {
      coef = "(" + to_string(c) + ")";
    }
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    out += coef;
    if (!coef.empty() && !basis.empty()) out += ' ';
    out += basis;
    first = false;
  }
  return out;
}

namespace detail {

template <class Kind>
class AlternatingGrammar {
 public:
  AlternatingGrammar(Scanner& scanner, std::size_t nvars) : in_(scanner), nvars_(nvars) {}

  /// element := ['+'|'-'] term (('+'|'-') term)*;  term := [product] [basis]
  std::vector<std::pair<std::vector<int>, Poly>> terms() {
    std::vector<std::pair<std::vector<int>, Poly>> out;
    bool negative = false;
    if (in_.consume('-')) {
      negative = true;
    } else {
      in_.consume('+');
    }
    for (;;) {
      std::optional<Poly> coef;
      if (!in_.looking_at(Kind::basis_prefix)) {
        PolyGrammar poly(in_, nvars_);
        coef = poly.product();
      }
      std::vector<int> indices;
      if (in_.consume(Kind::basis_prefix)) {
        indices.push_back(static_cast<int>(in_.index()));
        while (in_.consume('^')) {
          if (!in_.consume(Kind::basis_prefix)) in_.fail("expected a basis element after '^'");
          indices.push_back(static_cast<int>(in_.index()));
        }
      } else if (!coef) {
        in_.fail("expected a coefficient or a basis element");
      }
      Poly c = coef ? *coef : Poly::constant(nvars_, Rational(1));
      if (negative) c *= Rational(-1);
      out.emplace_back(std::move(indices), std::move(c));
      if (in_.consume('+')) {
        negative = false;
      } else if (in_.consume('-')) {
        negative = true;
      } else {
        return out;
      }
    }
  }

 private:
  Scanner& in_;
  std::size_t nvars_;
};

template <class Kind>
Alternating<Kind> parse_alternating(std::string_view text, std::size_t nvars, std::optional<std::size_t> degree) {
  if (nvars == 0) nvars = static_cast<std::size_t>(std::max(max_coordinate_index(text), 0)) + 1;
  Scanner scanner(text);
  AlternatingGrammar<Kind> grammar(scanner, nvars);
  auto terms = grammar.terms();
  if (!scanner.at_end()) scanner.fail("trailing characters");

  // A lone "0" is the zero element of whatever degree the caller expects.
  std::size_t p = degree.value_or(0);
  bool have_degree = degree.has_value();
  for (const auto& [indices, c] : terms) {
    if (c.is_zero()) continue;
    if (!have_degree) {
      p = indices.size();
      have_degree = true;
    } else if (indices.size() != p) {
      throw ParseError("terms of different degree in one " + std::string(Kind::name), 0);
    }
  }
  Alternating<Kind> out(nvars, p);
  for (const auto& [indices, c] : terms) {
    if (c.is_zero()) continue;
    for (int i : indices) {
      if (static_cast<std::size_t>(i) >= nvars) throw ParseError("basis index outside the ring", 0);
    }
    out += Alternating<Kind>::basis(nvars, indices, c);
  }
  return out;
}

}  // namespace detail

/// Parses a differential form. nvars == 0 infers the ring from the text.
inline PForm parse_form(std::string_view text, std::size_t nvars = 0, std::optional<std::size_t> degree = {}) {
  return detail::parse_alternating<FormKind>(text, nvars, degree);
}

/// Parses a multivector field ("d/dz" basis). nvars == 0 infers the ring from the text.
inline MultiVector parse_multivector(std::string_view text, std::size_t nvars = 0,
                                     std::optional<std::size_t> degree = {}) {
  return detail::parse_alternating<VectorKind>(text, nvars, degree);
}

}  // namespace flagforge
