#pragma once

// Sparse multivariate polynomials over Q in the coordinates z0..z{N-1}.
//
// Terms are kept in a map ordered by descending graded-lex order, so
// iteration (and hence printing) is canonical. No stored coefficient is zero.

#include "flagforge/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flagforge {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class Monomial {
 public:
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
    degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
  }

  static Monomial variable(std::size_t nvars, std::size_t i, std::uint32_t power = 1) {
    Monomial m(nvars);
    m.exps_.at(i) = power;
    m.degree_ = power;
    return m;
  }

  std::size_t nvars() const { return exps_.size(); }
  std::uint32_t total_degree() const { return degree_; }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::span<const std::uint32_t> exponents() const { return exps_; }

  Monomial operator*(const Monomial& other) const {
    Monomial out(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
    out.degree_ += other.degree_;
    return out;
  }

  /// Lowers the exponent of variable i by one; caller guarantees it is positive.
  Monomial lowered(std::size_t i) const {
    Monomial out(*this);
    --out.exps_[i];
    --out.degree_;
    return out;
  }

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

/// Strict order placing the larger monomial (graded lex, z0 > z1 > ...) first.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.total_degree() != b.total_degree()) return a.total_degree() > b.total_degree();
    const auto ea = a.exponents();
    const auto eb = b.exponents();
    return std::lexicographical_compare(eb.begin(), eb.end(), ea.begin(), ea.end());
  }
};

/// Result of a homogeneity query. The zero polynomial is homogeneous of any degree.
class HomogeneousDegree {
 public:
  enum class Kind { any, exact, mixed };

  static HomogeneousDegree any() { return HomogeneousDegree(Kind::any, 0); }
  static HomogeneousDegree exact(int degree) { return HomogeneousDegree(Kind::exact, degree); }
  static HomogeneousDegree mixed() { return HomogeneousDegree(Kind::mixed, 0); }

  Kind kind() const { return kind_; }
  bool is_any() const { return kind_ == Kind::any; }
  bool is_mixed() const { return kind_ == Kind::mixed; }
  bool is_exact() const { return kind_ == Kind::exact; }
  int value() const {
    if (kind_ != Kind::exact) throw std::logic_error("homogeneous degree is not a single value");
    return degree_;
  }

  /// Combines two homogeneity results as if the inputs were summed.
  HomogeneousDegree merge(const HomogeneousDegree& other) const {
    if (is_mixed() || other.is_mixed()) return mixed();
    if (is_any()) return other;
    if (other.is_any()) return *this;
    return degree_ == other.degree_ ? *this : mixed();
  }

  bool operator==(const HomogeneousDegree&) const = default;

 private:
  HomogeneousDegree(Kind kind, int degree) : kind_(kind), degree_(degree) {}
  Kind kind_;
  int degree_;
};

class ModPoly;

class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexDescending>;

  explicit Poly(std::size_t nvars) : nvars_(nvars) {
    if (nvars == 0) throw std::invalid_argument("a polynomial needs at least one variable");
  }

  static Poly constant(std::size_t nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(Monomial(nvars), c);
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw std::out_of_range("variable index out of range");
    Poly p(nvars);
    p.add_term(Monomial::variable(nvars, i), Rational(1));
    return p;
  }
  static Poly term(const Monomial& m, const Rational& c) {
    Poly p(m.nvars());
    p.add_term(m, c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Largest total degree of a term; -1 for the zero polynomial.
  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.total_degree()); }

  /// Coefficient of the grlex-largest term; zero for the zero polynomial.
  Rational leading_coefficient() const { return terms_.empty() ? Rational(0) : terms_.begin()->second; }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (m.nvars() != nvars_) throw DimensionMismatch("monomial has the wrong number of variables");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& other) {
    require_same_ring(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& other) {
    require_same_ring(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [m, coef] : terms_) coef *= c;
    }
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  Poly operator-() const { return Poly(*this) *= Rational(-1); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.require_same_ring(b);
    Poly out(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        const Rational prod = ca * cb;
        out.add_term(ma * mb, prod);
      }
    }
    return out;
  }
  Poly& operator*=(const Poly& other) { return *this = *this * other; }

  bool operator==(const Poly& other) const { return nvars_ == other.nvars_ && terms_ == other.terms_; }

  Poly derivative(std::size_t i) const {
    if (i >= nvars_) throw std::out_of_range("partial derivative index out of range");
    Poly out(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m[i] == 0) continue;
      const Rational scaled = c * m[i];
      out.add_term(m.lowered(i), scaled);
    }
    return out;
  }

  HomogeneousDegree homogeneous_degree() const {
    if (terms_.empty()) return HomogeneousDegree::any();
    const auto first = terms_.begin()->first.total_degree();
    for (const auto& [m, c] : terms_) {
      if (m.total_degree() != first) return HomogeneousDegree::mixed();
    }
    return HomogeneousDegree::exact(static_cast<int>(first));
  }

  /// Sum of the terms of total degree e.
  Poly homogeneous_part(std::uint32_t e) const {
    Poly out(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m.total_degree() == e) out.terms_.emplace(m, c);
    }
    return out;
  }

  /// Largest power of z_i appearing in any term.
  std::uint32_t degree_in(std::size_t i) const {
    std::uint32_t best = 0;
    for (const auto& [m, c] : terms_) best = std::max(best, m[i]);
    return best;
  }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars_) throw DimensionMismatch("evaluation point has the wrong length");
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
      Rational value = c;
      for (std::size_t i = 0; i < nvars_; ++i) {
        for (std::uint32_t e = 0; e < m[i]; ++e) value *= point[i];
      }
      total += value;
    }
    return total;
  }

  ModPoly reduce_mod(std::uint64_t prime) const;

 private:
  void require_same_ring(const Poly& other) const {
    if (other.nvars_ != nvars_) {
      throw DimensionMismatch("polynomials live in different rings (" + std::to_string(nvars_) + " vs " +
                              std::to_string(other.nvars_) + " variables)");
    }
  }

  std::size_t nvars_;
  TermMap terms_;
};

/// A polynomial over F_p, stored as a flat term list for fast evaluation.
class ModPoly {
 public:
  struct Term {
    std::uint64_t coefficient;
    std::vector<std::uint32_t> exponents;
  };

  ModPoly(std::size_t nvars, std::uint64_t prime) : nvars_(nvars), prime_(prime) {}

  std::size_t nvars() const { return nvars_; }
  std::uint64_t prime() const { return prime_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void push_term(std::uint64_t coefficient, std::span<const std::uint32_t> exps) {
    if (coefficient % prime_ == 0) return;
    terms_.push_back(Term{coefficient % prime_, std::vector<std::uint32_t>(exps.begin(), exps.end())});
  }

  std::uint64_t evaluate(std::span<const std::uint64_t> point) const {
    if (point.size() != nvars_) throw DimensionMismatch("evaluation point has the wrong length");
    std::uint64_t total = 0;
    for (const auto& t : terms_) {
      std::uint64_t value = t.coefficient;
      for (std::size_t i = 0; i < nvars_ && value != 0; ++i) {
        if (t.exponents[i] != 0) value = mul_mod(value, pow_mod(point[i], t.exponents[i], prime_), prime_);
      }
      total = (total + value) % prime_;
    }
    return total;
  }

 private:
  std::size_t nvars_;
  std::uint64_t prime_;
  std::vector<Term> terms_;
};

inline ModPoly Poly::reduce_mod(std::uint64_t prime) const {
  if (!is_prime(prime)) throw std::invalid_argument("modulus " + std::to_string(prime) + " is not prime");
  ModPoly out(nvars_, prime);
  for (const auto& [m, c] : terms_) out.push_term(residue(c, prime), m.exponents());
  return out;
}

/// All monomials of total degree e in nvars variables, in descending grlex order.
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint32_t e) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> exps(nvars, 0);
  // Lexicographically largest first: z0 takes as much as it can.
  auto recurse = [&](auto&& self, std::size_t i, std::uint32_t remaining) -> void {
    if (i + 1 == nvars) {
      exps[i] = remaining;
      out.emplace_back(exps);
      return;
    }
    for (std::uint32_t take = remaining + 1; take-- > 0;) {
      exps[i] = take;
      self(self, i + 1, remaining - take);
    }
    exps[i] = 0;
  };
  if (nvars > 0) recurse(recurse, 0, e);
  return out;
}

inline Poly partial_derivative(const Poly& p, std::size_t i) { return p.derivative(i); }
inline HomogeneousDegree homogeneous_degree(const Poly& p) { return p.homogeneous_degree(); }
inline Rational evaluate(const Poly& p, std::span<const Rational> point) { return p.evaluate(point); }
inline ModPoly reduce_mod_p(const Poly& p, std::uint64_t prime) { return p.reduce_mod(prime); }

// ---------------------------------------------------------------------------
// Text format: signed sum of terms c*z0^a0*z1^a1*..., e.g. "z3^2 - 3/2*z1*z2".

namespace detail {

inline std::string monomial_text(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'z' + std::to_string(i);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

/// Term text without its sign.
inline std::string unsigned_term_text(const Monomial& m, const Rational& c) {
  const Rational magnitude = abs(c);
  if (m.total_degree() == 0) return magnitude.get_str();
  if (magnitude == 1) return monomial_text(m);
  return magnitude.get_str() + "*" + monomial_text(m);
}

/// Cursor over a text expression shared by the polynomial and form parsers.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  /// True when the unconsumed text starts with `prefix` (after spaces).
  bool looking_at(std::string_view prefix) {
    skip_space();
    return text_.substr(pos_, prefix.size()) == prefix;
  }
  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool consume(std::string_view prefix) {
    if (!looking_at(prefix)) return false;
    pos_ += prefix.size();
    return true;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }
  bool next_is_digit() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }
  /// Digits immediately at the cursor (no leading spaces allowed inside tokens).
  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }
  std::size_t index() {
    const std::string d = digits();
    if (d.size() > 6) fail("index too large");
    return static_cast<std::size_t>(std::stoul(d));
  }
  std::size_t position() const { return pos_; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

/// Largest N such that "zN" occurs in the text (as a coordinate or inside dzN), or -1.
inline int max_coordinate_index(std::string_view text) {
  int best = -1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'z') continue;
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i + 1 && j - i - 1 <= 6) best = std::max(best, std::stoi(std::string(text.substr(i + 1, j - i - 1))));
  }
  return best;
}

class PolyGrammar {
 public:
  PolyGrammar(Scanner& scanner, std::size_t nvars) : in_(scanner), nvars_(nvars) {}

  /// sum := ['+'|'-'] product (('+'|'-') product)*
  Poly sum() {
    Poly total(nvars_);
    bool negative = false;
    if (in_.consume('-')) {
      negative = true;
    } else {
      in_.consume('+');
    }
    for (;;) {
      Poly t = product();
      if (negative) t *= Rational(-1);
      total += t;
      if (in_.consume('+')) {
        negative = false;
      } else if (in_.consume('-')) {
        negative = true;
      } else {
        return total;
      }
    }
  }

  /// product := factor ('*' factor)*
  Poly product() {
    Poly out = factor();
    while (in_.consume('*')) out *= factor();
    return out;
  }

  /// factor := rational | 'z' index ['^' power] | '(' sum ')' ['^' power]
  Poly factor() {
    const char c = in_.peek();
    if (c == '(') {
      in_.consume('(');
      Poly inner = sum();
      in_.expect(')');
      return power_of(inner);
    }
    if (c == 'z') {
      in_.consume('z');
      const std::size_t i = in_.index();
      if (i >= nvars_) in_.fail("variable z" + std::to_string(i) + " outside the ring");
      return power_of(Poly::variable(nvars_, i));
    }
    if (in_.next_is_digit()) {
      std::string text = in_.digits();
      if (in_.consume('/')) {
        in_.skip_space();
        text += '/' + in_.digits();
      }
      try {
        return Poly::constant(nvars_, parse_rational(text));
      } catch (const std::invalid_argument& e) {
        in_.fail(e.what());
      }
    }
    in_.fail("expected a number, a variable or '('");
  }

 private:
  Poly power_of(const Poly& base) {
    if (!in_.consume('^')) return base;
    in_.skip_space();
    const std::size_t e = in_.index();
    Poly out = Poly::constant(nvars_, Rational(1));
    for (std::size_t k = 0; k < e; ++k) out *= base;
    return out;
  }

  Scanner& in_;
  std::size_t nvars_;
};

}  // namespace detail

inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (first) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    out += detail::unsigned_term_text(m, c);
    first = false;
  }
  return out;
}

/// Parses the polynomial text format. nvars == 0 infers the ring from the
/// largest variable index that appears (at least one variable).
inline Poly parse_poly(std::string_view text, std::size_t nvars = 0) {
  if (nvars == 0) nvars = static_cast<std::size_t>(std::max(detail::max_coordinate_index(text), 0)) + 1;
  detail::Scanner scanner(text);
  detail::PolyGrammar grammar(scanner, nvars);
  Poly p = grammar.sum();
  if (!scanner.at_end()) scanner.fail("trailing characters");
  return p;
}

}  // namespace flagforge
