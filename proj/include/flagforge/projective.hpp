#pragma once

// Descent of homogeneous polynomial data on C^{n+1} to distributions on P^n,
// and the degree/twist arithmetic attached to them.

#include "flagforge/extalg.hpp"

#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagforge {

class DistributionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHomogeneous : public DistributionError {
 public:
  using DistributionError::DistributionError;
};

class ZeroForm : public DistributionError {
 public:
  using DistributionError::DistributionError;
};

/// The form is not annihilated by the radial field; carries i_theta(omega).
class EulerRelationFails : public DistributionError {
 public:
  explicit EulerRelationFails(PForm residue)
      : DistributionError("Euler relation fails: i_theta(omega) = " + to_string(residue)), residue_(std::move(residue)) {}
  const PForm& residue() const { return residue_; }

 private:
  PForm residue_;
};

class RadialMultiple : public DistributionError {
 public:
  explicit RadialMultiple(std::size_t index)
      : DistributionError("generator " + std::to_string(index) + " is a polynomial multiple of the radial field"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class TooManyFields : public DistributionError {
 public:
  using DistributionError::DistributionError;
};

/// A codimension-q distribution on P^n given by a homogeneous q-form on C^{n+1}
/// with i_theta(omega) = 0. Only descend_form constructs these.
class ProjDistribution {
 public:
  int n() const { return n_; }
  int codim() const { return static_cast<int>(omega_.degree()); }
  int dimension() const { return n_ - codim(); }
  const PForm& omega() const { return omega_; }
  /// Coefficient degree minus one.
  int degree() const { return degree_; }
  /// Exponent of the line bundle O(d + q + 1).
  int twist() const { return degree_ + codim() + 1; }

  bool operator==(const ProjDistribution&) const = default;

 private:
  friend ProjDistribution descend_form(const PForm& omega, int n);
  ProjDistribution(int n, PForm omega, int degree) : n_(n), omega_(std::move(omega)), degree_(degree) {}

  int n_;
  PForm omega_;
  int degree_;
};

inline ProjDistribution descend_form(const PForm& omega, int n) {
  if (n < 1 || omega.nvars() != static_cast<std::size_t>(n) + 1) {
    throw DimensionMismatch("a form on P^" + std::to_string(n) + " needs " + std::to_string(n + 1) + " variables");
  }
  if (omega.is_zero()) throw ZeroForm("the zero form defines no distribution");
  const HomogeneousDegree e = omega.coefficient_degree();
  if (!e.is_exact()) throw NotHomogeneous("coefficients have mixed degrees");
  PForm residue = contract(radial_field(omega.nvars()), omega);
  if (!residue.is_zero()) throw EulerRelationFails(std::move(residue));
  const int p = static_cast<int>(omega.degree());
  if (p < 1 || p > n - 1) {
    throw DistributionError("form degree " + std::to_string(p) + " is not a codimension in [1, " + std::to_string(n - 1) +
                            "]");
  }
  if (e.value() < 1) throw DistributionError("constant coefficients cannot satisfy the Euler relation");
  return ProjDistribution(n, omega, e.value() - 1);
}

/// A distribution with split tangent sheaf, presented by homogeneous generators.
class FieldsDistribution {
 public:
  int n() const { return n_; }
  int dimension() const { return static_cast<int>(generators_.size()); }
  const std::vector<MultiVector>& generators() const { return generators_; }
  const std::vector<int>& degrees() const { return degrees_; }
  int total_degree() const { return std::accumulate(degrees_.begin(), degrees_.end(), 0); }

  bool operator==(const FieldsDistribution&) const = default;

 private:
  friend FieldsDistribution fields_distribution(std::vector<MultiVector> fields, int n);
  FieldsDistribution(int n, std::vector<MultiVector> generators, std::vector<int> degrees)
      : n_(n), generators_(std::move(generators)), degrees_(std::move(degrees)) {}

  int n_;
  std::vector<MultiVector> generators_;
  std::vector<int> degrees_;
};

inline FieldsDistribution fields_distribution(std::vector<MultiVector> fields, int n) {
  if (fields.empty()) throw DistributionError("a distribution needs at least one generator");
  if (fields.size() >= static_cast<std::size_t>(std::max(n, 0))) {
    throw TooManyFields(std::to_string(fields.size()) + " generators on P^" + std::to_string(n) +
                        " do not give a proper distribution");
  }
  const MultiVector radial = radial_field(static_cast<std::size_t>(n) + 1);
  std::vector<int> degrees;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const MultiVector& x = fields[i];
    if (x.nvars() != radial.nvars()) throw DimensionMismatch("generator " + std::to_string(i) + " has the wrong ring");
    if (x.degree() != 1) throw DistributionError("generator " + std::to_string(i) + " is not a vector field");
    if (x.is_zero()) throw ZeroForm("generator " + std::to_string(i) + " is zero");
    const HomogeneousDegree e = x.coefficient_degree();
    if (!e.is_exact()) throw NotHomogeneous("generator " + std::to_string(i) + " has mixed coefficient degrees");
    if (wedge(x, radial).is_zero()) throw RadialMultiple(i);
    degrees.push_back(e.value());
  }
  return FieldsDistribution(n, std::move(fields), std::move(degrees));
}

// ---------------------------------------------------------------------------
// Degree arithmetic.

/// L = O(d + q + 1) for a codimension-q distribution of degree d.
inline int line_bundle_twist(int degree, int codim) { return degree + codim + 1; }

/// det of the tangent sheaf of a k-dimensional distribution of degree d is O(k - d).
inline int det_tangent_twist(int k, int d) { return k - d; }

/// Twist of the canonical sheaf of a Baum-Kupka component: deg(G) - dim(F) - 1.
inline int kupka_canonical_twist(int deg_g, int dim_f) { return deg_g - dim_f - 1; }

/// Number of singular points of a generic degree-k codimension-one distribution on P^n:
/// ((k+1)^{n+1} - (-1)^{n+1}) / (k+2).
inline Integer generic_codim1_singular_count(int n, int k) {
  if (n < 1 || k < 0) throw std::invalid_argument("need n >= 1 and k >= 0");
  Integer power;
  mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(k + 1), static_cast<unsigned long>(n + 1));
  const Integer numerator = power - ((n + 1) % 2 == 0 ? 1 : -1);
  const Integer divisor = k + 2;
  if (numerator % divisor != 0) throw std::domain_error("count formula is not integral for these inputs");
  return numerator / divisor;
}

// ---------------------------------------------------------------------------
// Singular ideals.

/// Coefficients of omega, in canonical component order.
inline std::vector<Poly> singular_ideal(const ProjDistribution& dist) {
  std::vector<Poly> out;
  for (const auto& [mask, c] : dist.omega().components()) out.push_back(c);
  return out;
}

/// Nonzero components of X1 ^ ... ^ Xk ^ theta. Empty means every generator
/// vanishes identically (degenerate input such as X = theta).
inline std::vector<Poly> singular_ideal(std::span<const MultiVector> fields) {
  if (fields.empty()) throw std::invalid_argument("no fields given");
  MultiVector acc = fields.front();
  for (std::size_t i = 1; i < fields.size(); ++i) acc = wedge(acc, fields[i]);
  acc = wedge(acc, radial_field(acc.nvars()));
  std::vector<Poly> out;
  for (const auto& [mask, c] : acc.components()) out.push_back(c);
  return out;
}

inline std::vector<Poly> singular_ideal(const FieldsDistribution& dist) {
  return singular_ideal(std::span<const MultiVector>(dist.generators()));
}

}  // namespace flagforge
