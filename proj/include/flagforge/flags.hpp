#pragma once

// Flags (F, G): a distribution F presented by vector fields, tangent to a
// codimension-one distribution G presented by a 1-form. Tangency, the
// contraction-chain identity, division of forms, and the degree audits.

#include "flagforge/bott.hpp"
#include "flagforge/linsolve.hpp"
#include "flagforge/projective.hpp"

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagforge {

/// Theta = i_{X1} ... i_{Xk} i_theta dV on C^{n+1}, X_k contracted first.
inline PForm contraction_chain(std::span<const MultiVector> fields, int n) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  if (fields.size() >= static_cast<std::size_t>(n)) throw TooManyFields("contraction chain needs k < n fields");
  const std::size_t nvars = static_cast<std::size_t>(n) + 1;
  for (const auto& x : fields) {
    if (x.nvars() != nvars) throw DimensionMismatch("field on the wrong number of variables");
  }
  return contract_all(fields, contract(radial_field(nvars), volume_form(nvars)));
}

inline PForm contraction_chain(const FieldsDistribution& dist) {
  return contraction_chain(std::span<const MultiVector>(dist.generators()), dist.n());
}

/// Finds eta with omega ^ eta = theta by an exact linear solve over the
/// monomial basis of the candidate coefficients. Free unknowns are set to zero,
/// so the answer is the one selected by the canonical column order.
inline std::optional<PForm> divide_by_form(const PForm& theta, const PForm& omega) {
  if (theta.nvars() != omega.nvars()) throw DimensionMismatch("division of forms on different rings");
  if (theta.degree() < omega.degree()) throw std::invalid_argument("divisor has larger form degree than the dividend");
  if (omega.is_zero()) throw ZeroForm("cannot divide by the zero form");
  const HomogeneousDegree dt = theta.coefficient_degree();
  const HomogeneousDegree dw = omega.coefficient_degree();
  if (!dt.is_exact() && !dt.is_any()) throw NotHomogeneous("dividend is not homogeneous");
  if (!dw.is_exact()) throw NotHomogeneous("divisor is not homogeneous");

  const std::size_t nvars = theta.nvars();
  const std::size_t q = theta.degree() - omega.degree();
  if (theta.is_zero()) return PForm(nvars, q);
  const int target = dt.value() - dw.value();
  if (target < 0) {
    throw std::domain_error("quotient would need coefficient degree " + std::to_string(target) +
                            "; the dividend has lower degree than the divisor");
  }

  const std::vector<IndexMask> masks = masks_of_size(nvars, q);
  const std::vector<Monomial> monos = monomials_of_degree(nvars, static_cast<std::uint32_t>(target));
  const std::size_t cols = masks.size() * monos.size();

  // Row per (basis element of the product, monomial); theta's terms first.
  std::map<IndexMask, std::map<Monomial, std::size_t, GrlexDescending>, TupleOrder> row_of;
  std::size_t rows = 0;
  auto row_index = [&](IndexMask k, const Monomial& m) {
    auto [it, inserted] = row_of[k].try_emplace(m, rows);
    if (inserted) ++rows;
    return it->second;
  };
  for (const auto& [k, c] : theta.components()) {
    for (const auto& [m, coef] : c.terms()) row_index(k, m);
  }
  struct Entry {
    std::size_t row, col;
    Rational value;
  };
  std::vector<Entry> entries;
  for (std::size_t a = 0; a < masks.size(); ++a) {
    for (std::size_t b = 0; b < monos.size(); ++b) {
      const std::size_t col = a * monos.size() + b;
      for (const auto& [mw, cw] : omega.components()) {
        if (mw & masks[a]) continue;
        const int sign = merge_sign(mw, masks[a]);
        for (const auto& [m, coef] : cw.terms()) {
          entries.push_back({row_index(mw | masks[a], m * monos[b]), col, sign < 0 ? Rational(-coef) : coef});
        }
      }
    }
  }

  LinearSystem system(rows, cols);
  for (const auto& e : entries) system.at(e.row, e.col) += e.value;
  for (const auto& [k, c] : theta.components()) {
    for (const auto& [m, coef] : c.terms()) system.rhs(row_of[k][m]) = coef;
  }
  const auto solution = system.solve();
  if (!solution) return std::nullopt;

  PForm eta(nvars, q);
  for (std::size_t a = 0; a < masks.size(); ++a) {
    Poly coef(nvars);
    for (std::size_t b = 0; b < monos.size(); ++b) coef.add_term(monos[b], (*solution)[a * monos.size() + b]);
    eta.add(masks[a], coef);
  }
  if (!(wedge(omega, eta) == theta)) throw std::logic_error("division produced a quotient that does not multiply back");
  return eta;
}

enum class Verdict { holds, sharp, violated, not_applicable };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::sharp:
      return "sharp";
    case Verdict::violated:
      return "violated";
    case Verdict::not_applicable:
      return "n/a";
  }
  return "?";
}

/// Verdict for the bound lhs <= rhs.
inline Verdict bound_verdict(int lhs, int rhs) {
  if (lhs < rhs) return Verdict::holds;
  return lhs == rhs ? Verdict::sharp : Verdict::violated;
}

struct BracketCheck {
  int i = 0;
  int j = 0;
  MultiVector bracket{1, 1};
  bool closed = false;  // [X_i, X_j] ^ X_1 ^ ... ^ X_k ^ theta == 0
};

struct FlagReport {
  int n = 0;
  int dim_lower = 0;
  int dim_upper = 0;
  int deg_lower = 0;
  int deg_upper = 0;
  std::vector<int> generator_degrees;

  std::vector<PForm> tangency_residues;  // i_{X_j} omega
  bool tangency = false;
  PForm chain_form{1, 0};                // Theta
  bool contraction_chain_zero = false;   // Theta ^ omega == 0
  bool integrability_upper = false;      // omega ^ d omega == 0
  bool integrability_lower = false;
  std::vector<BracketCheck> brackets;

  /// Keys "theorem1", "theorem2", "theorem3"; computed from the degrees above.
  std::map<std::string, Verdict> inequality_verdicts;
  std::optional<bott::Theorem1Audit> theorem1_hypotheses;

  /// Tangency, the contraction-chain identity and no violated bound, except that
  /// a violated deg G <= deg F - 1 is excused when its degree hypotheses fail
  /// (deg G < 2 or an exceptional value). Integrability is reported but not
  /// required: distributions need not be foliations.
  bool passed() const {
    if (!tangency || !contraction_chain_zero) return false;
    for (const auto& [name, v] : inequality_verdicts) {
      if (v != Verdict::violated) continue;
      if (name == "theorem1" && theorem1_hypotheses && !theorem1_hypotheses->hypotheses_met) continue;
      return false;
    }
    return true;
  }
};

inline std::map<std::string, Verdict> inequality_verdicts(int n, int dim_lower, int deg_lower, int codim_upper,
                                                          int deg_upper) {
  std::map<std::string, Verdict> out;
  const bool codim_one = codim_upper == 1;
  // dim F = 1 tangent to codim-one G: deg G <= deg F - 1.
  out["theorem1"] = codim_one && dim_lower == 1 && n >= 3 ? bound_verdict(deg_upper, deg_lower - 1)
                                                          : Verdict::not_applicable;
  // Split F of any dimension tangent to codim-one G: deg G <= deg F.
  out["theorem2"] = codim_one && dim_lower < n - 1 ? bound_verdict(deg_upper, deg_lower) : Verdict::not_applicable;
  // Foliations with dim F = dim G - 1: deg G <= deg F.
  out["theorem3"] = codim_one && n >= 3 && dim_lower == n - 2 ? bound_verdict(deg_upper, deg_lower)
                                                              : Verdict::not_applicable;
  return out;
}

inline FlagReport verify_flag(const FieldsDistribution& lower, const ProjDistribution& upper) {
  if (lower.n() != upper.n()) throw DimensionMismatch("flag members live on different projective spaces");
  if (upper.codim() != 1) throw std::invalid_argument("the upper member must have codimension one");
  if (lower.dimension() >= upper.dimension()) throw std::invalid_argument("lower member is not smaller than the upper");

  const int n = lower.n();
  const std::size_t nvars = static_cast<std::size_t>(n) + 1;
  const PForm& omega = upper.omega();
  const auto& xs = lower.generators();

  FlagReport rep;
  rep.n = n;
  rep.dim_lower = lower.dimension();
  rep.dim_upper = upper.dimension();
  rep.deg_lower = lower.total_degree();
  rep.deg_upper = upper.degree();
  rep.generator_degrees = lower.degrees();

  rep.tangency = true;
  for (const auto& x : xs) {
    rep.tangency_residues.push_back(contract(x, omega));
    rep.tangency = rep.tangency && rep.tangency_residues.back().is_zero();
  }

  rep.chain_form = contraction_chain(lower);
  rep.contraction_chain_zero = wedge(rep.chain_form, omega).is_zero();
  rep.integrability_upper = wedge(omega, exterior_derivative(omega)).is_zero();

  MultiVector span_all = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) span_all = wedge(span_all, xs[i]);
  span_all = wedge(span_all, radial_field(nvars));
  rep.integrability_lower = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      BracketCheck check{static_cast<int>(i), static_cast<int>(j), lie_bracket(xs[i], xs[j]), false};
      check.closed = wedge(check.bracket, span_all).is_zero();
      rep.integrability_lower = rep.integrability_lower && check.closed;
      rep.brackets.push_back(std::move(check));
    }
  }

  rep.inequality_verdicts = inequality_verdicts(n, rep.dim_lower, rep.deg_lower, upper.codim(), rep.deg_upper);
  if (rep.dim_lower == 1 && n >= 3) rep.theorem1_hypotheses = bott::theorem1_audit(n, rep.deg_lower, rep.deg_upper);
  return rep;
}

struct ChainMember {
  int dimension = 0;
  int degree = 0;
};

struct ChainVerdict {
  bool holds = true;
  bool all_equal = true;
  std::vector<std::size_t> violations;  // i such that deg[i] > deg[i+1]
};

/// Checks deg(F_1) <= deg(F_2) <= ... along a chain of strictly increasing dimension.
inline ChainVerdict audit_chain(std::span<const ChainMember> chain) {
  ChainVerdict out;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (chain[i].dimension >= chain[i + 1].dimension) {
      throw std::invalid_argument("members do not form a chain of increasing dimension");
    }
    if (chain[i].degree > chain[i + 1].degree) {
      out.holds = false;
      out.violations.push_back(i);
    }
    if (chain[i].degree != chain[i + 1].degree) out.all_equal = false;
  }
  return out;
}

/// The lower members of the reports in order, followed by the last report's upper member.
inline ChainVerdict audit_inequalities(std::span<const FlagReport> reports) {
  if (reports.empty()) throw std::invalid_argument("no reports given");
  std::vector<ChainMember> chain;
  for (const auto& r : reports) chain.push_back({r.dim_lower, r.deg_lower});
  chain.push_back({reports.back().dim_upper, reports.back().deg_upper});
  return audit_chain(chain);
}

}  // namespace flagforge
