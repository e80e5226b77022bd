#pragma once

// The two explicit families: a codimension-one distribution on P^3 built from
// an antisymmetric matrix, and the Hamiltonian flag on P^{2n} attached to a
// polynomial f with an isolated critical point at the origin.

#include "flagforge/flags.hpp"
#include "flagforge/projective.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagforge {

struct AntisymExample {
  int k = 0;
  PForm omega{4, 1};
  MultiVector field{4, 1};
};

/// omega = sum A_i dz_i with A = M z, M the antisymmetric matrix
///   [ 0      0      0     z3^k ]
///   [ 0      0      z2^k  z0^k ]
///   [ 0     -z2^k   0     0    ]
///   [-z3^k  -z0^k   0     0    ]
/// and X = z1 z2^k d0 + (z0 z3^k + z0^k z1) d1 + z3^{k+1} d2 + (z2^{k+1} + z0^k z3) d3.
inline AntisymExample antisym_example(int k) {
  if (k < 1) throw std::invalid_argument("the antisymmetric family needs k >= 1");
  constexpr std::size_t N = 4;
  const auto e = static_cast<std::uint32_t>(k);
  auto z = [](std::size_t i) { return Poly::variable(N, i); };
  auto zk = [&](std::size_t i, std::uint32_t power) { return Poly::term(Monomial::variable(N, i, power), Rational(1)); };

  const Poly zero(N);
  const std::array<std::array<Poly, N>, N> m{{
      {zero, zero, zero, zk(3, e)},
      {zero, zero, zk(2, e), zk(0, e)},
      {zero, -zk(2, e), zero, zero},
      {-zk(3, e), -zk(0, e), zero, zero},
  }};

  AntisymExample out;
  out.k = k;
  for (std::size_t i = 0; i < N; ++i) {
    Poly a(N);
    for (std::size_t j = 0; j < N; ++j) {
      if (!m[i][j].is_zero()) a += m[i][j] * z(j);
    }
    out.omega.add(bit(i), a);
  }
  out.field = vector_field(std::vector<Poly>{
      z(1) * zk(2, e),
      z(0) * zk(3, e) + zk(0, e) * z(1),
      zk(3, e + 1),
      zk(2, e + 1) + zk(0, e) * z(3),
  });
  return out;
}

/// F(z0, z) = f_k(z) + z0 f_{k-1}(z) + ... + z0^{k-1} f_1(z). The input lives in
/// the same ring as the output and must not involve z0.
inline Poly homogenize(const Poly& f, int k) {
  if (k < 1) throw std::invalid_argument("homogenization degree must be positive");
  if (f.degree_in(0) != 0) throw std::invalid_argument("the affine polynomial must not involve z0");
  if (!f.homogeneous_part(0).is_zero()) throw std::invalid_argument("the affine polynomial has a nonzero constant term");
  if (f.total_degree() != k) {
    throw std::invalid_argument("the affine polynomial has degree " + std::to_string(f.total_degree()) + ", expected " +
                                std::to_string(k));
  }
  const std::size_t nvars = f.nvars();
  Poly out(nvars);
  for (int j = 1; j <= k; ++j) {
    const Poly part = f.homogeneous_part(static_cast<std::uint32_t>(j));
    if (part.is_zero()) continue;
    out += Poly::term(Monomial::variable(nvars, 0, static_cast<std::uint32_t>(k - j)), Rational(1)) * part;
  }
  return out;
}

/// f(z1, ..., zN) = F(1, z1, ..., zN).
inline Poly dehomogenize(const Poly& big_f) {
  const std::size_t nvars = big_f.nvars();
  Poly out(nvars);
  for (const auto& [m, c] : big_f.terms()) {
    std::vector<std::uint32_t> exps(m.exponents().begin(), m.exponents().end());
    exps[0] = 0;
    out.add_term(Monomial(std::move(exps)), c);
  }
  return out;
}

/// omega = z0 dF - k F dz0 on C^{n2+1}, F the homogenization of f.
inline PForm kupka_omega(const Poly& f, int k, int n2) {
  if (n2 < 2 || n2 % 2 != 0) throw std::invalid_argument("the Hamiltonian family lives on P^{2n} with n >= 1");
  if (f.nvars() != static_cast<std::size_t>(n2) + 1) throw DimensionMismatch("f must live on z0..z" + std::to_string(n2));
  const Poly big_f = homogenize(f, k);
  const std::size_t nvars = f.nvars();
  return Poly::variable(nvars, 0) * differential(big_f) -
         (Rational(k) * big_f) * coordinate_differential(nvars, 0);
}

inline ProjDistribution kupka_form(const Poly& f, int k, int n2) { return descend_form(kupka_omega(f, k, n2), n2); }

// ---------------------------------------------------------------------------
// Hamiltonian fields.

/// Entry at position j (1-based) of a pattern: sign * d f / d z_partial.
struct SignedPartial {
  int sign = 1;
  int partial = 1;
  bool operator==(const SignedPartial&) const = default;
};

enum class PatternOrigin { nominal, corrected };

inline std::string to_string(PatternOrigin o) { return o == PatternOrigin::nominal ? "nominal" : "corrected"; }

struct HamiltonianCandidate {
  int index = 0;  // i in 1..2n-1
  PatternOrigin origin = PatternOrigin::nominal;
  std::vector<SignedPartial> pattern;  // positions 1..2n
  MultiVector field{1, 1};             // component 0 is zero
  Poly residue{1};                     // sum_j X_j df/dz_j
  bool valid = false;
};

inline std::string pattern_text(const std::vector<SignedPartial>& pattern) {
  std::string out = "(";
  for (std::size_t j = 0; j < pattern.size(); ++j) {
    if (j) out += ", ";
    out += pattern[j].sign < 0 ? "-d" : "d";
    out += std::to_string(pattern[j].partial);
    out += 'f';
  }
  return out + ")";
}

/// The displayed sign patterns. Position j holds +-d_{s(j)} f with sign - at odd
/// positions and + at even ones. For odd i, s reverses the block 1..i+1; for even
/// i, s swaps the halves of the block 1..i+2. Outside the block s pairs 2j-1 with 2j.
/// H_1, H_2, H_3 and H_{2n-1} are the listed rows; the others follow the same rule.
inline std::vector<SignedPartial> nominal_pattern(int i, int n2) {
  if (n2 < 4 || n2 % 2 != 0) throw std::invalid_argument("Hamiltonian patterns need 2n >= 4");
  if (i < 1 || i > n2 - 1) throw std::out_of_range("Hamiltonian index outside 1..2n-1");
  const int block = i % 2 == 1 ? i + 1 : i + 2;
  std::vector<SignedPartial> out;
  for (int j = 1; j <= n2; ++j) {
    int s = 0;
    if (j > block) {
      s = j % 2 == 1 ? j + 1 : j - 1;
    } else if (i % 2 == 1) {
      s = block + 1 - j;
    } else {
      s = j <= block / 2 ? j + block / 2 : j - block / 2;
    }
    out.push_back({j % 2 == 1 ? -1 : 1, s});
  }
  return out;
}

/// One flip per clashing pair: whenever positions a < b = s(a) carry the same
/// sign, position a gets - and position b gets +. Every pair then cancels in
/// sum_j X_j d_j f, whatever f is.
inline std::vector<SignedPartial> corrected_pattern(std::vector<SignedPartial> pattern) {
  for (std::size_t a = 0; a < pattern.size(); ++a) {
    const auto b = static_cast<std::size_t>(pattern[a].partial - 1);
    if (b <= a || b >= pattern.size()) continue;
    if (pattern[a].sign == pattern[b].sign) {
      pattern[a].sign = -1;
      pattern[b].sign = 1;
    }
  }
  return pattern;
}

/// Builds the field and its residue against f; f lives on z0..z{2n}.
inline HamiltonianCandidate hamiltonian_candidate(const Poly& f, int index, std::vector<SignedPartial> pattern,
                                                  PatternOrigin origin) {
  const std::size_t nvars = f.nvars();
  std::vector<Poly> comps(nvars, Poly(nvars));
  Poly residue(nvars);
  for (std::size_t j = 1; j < nvars; ++j) {
    const SignedPartial& sp = pattern[j - 1];
    Poly c = f.derivative(static_cast<std::size_t>(sp.partial));
    if (sp.sign < 0) c = -c;
    residue += c * f.derivative(j);
    comps[j] = std::move(c);
  }
  HamiltonianCandidate out;
  out.index = index;
  out.origin = origin;
  out.pattern = std::move(pattern);
  out.field = vector_field(comps);
  out.valid = residue.is_zero();
  out.residue = std::move(residue);
  return out;
}

/// H_1..H_{2n-1} as displayed, each validated against f. A failing pattern is
/// followed by its corrected candidate, so the list may hold two entries per index.
inline std::vector<HamiltonianCandidate> hamiltonian_fields(const Poly& f, int n2) {
  if (n2 < 4 || n2 % 2 != 0) throw std::invalid_argument("Hamiltonian fields need 2n >= 4");
  if (f.nvars() != static_cast<std::size_t>(n2) + 1) throw DimensionMismatch("f must live on z0..z" + std::to_string(n2));
  std::vector<HamiltonianCandidate> out;
  for (int i = 1; i <= n2 - 1; ++i) {
    auto nominal = nominal_pattern(i, n2);
    out.push_back(hamiltonian_candidate(f, i, nominal, PatternOrigin::nominal));
    if (!out.back().valid) {
      out.push_back(hamiltonian_candidate(f, i, corrected_pattern(std::move(nominal)), PatternOrigin::corrected));
    }
  }
  return out;
}

/// The first valid candidate for each index, in index order.
inline std::vector<HamiltonianCandidate> validated_fields(const std::vector<HamiltonianCandidate>& candidates) {
  std::vector<HamiltonianCandidate> out;
  for (const auto& c : candidates) {
    if (!c.valid) continue;
    if (!out.empty() && out.back().index == c.index) continue;
    out.push_back(c);
  }
  return out;
}

struct BracketEntry {
  int i = 0;
  int j = 0;
  MultiVector bracket{1, 1};
  bool vanishes = false;
};

/// [H_i, H_j] for every pair i < j of the given candidates.
inline std::vector<BracketEntry> bracket_table(const std::vector<HamiltonianCandidate>& fields) {
  std::vector<BracketEntry> out;
  for (std::size_t a = 0; a < fields.size(); ++a) {
    for (std::size_t b = a + 1; b < fields.size(); ++b) {
      BracketEntry e{fields[a].index, fields[b].index, lie_bracket(fields[a].field, fields[b].field), false};
      e.vanishes = e.bracket.is_zero();
      out.push_back(std::move(e));
    }
  }
  return out;
}

struct HamiltonianFlag {
  FieldsDistribution lower;
  ProjDistribution upper;
  std::vector<HamiltonianCandidate> used;
};

/// The lower member spanned by the validated H_i (i in indices), computed from the
/// homogenization F so that the fields are homogeneous; the upper member is kupka_form.
inline HamiltonianFlag hamiltonian_flag(const Poly& f, int k, int n2, const std::vector<int>& indices) {
  const Poly big_f = homogenize(f, k);
  const auto valid = validated_fields(hamiltonian_fields(big_f, n2));
  std::vector<HamiltonianCandidate> used;
  std::vector<MultiVector> gens;
  for (int i : indices) {
    auto it = std::find_if(valid.begin(), valid.end(), [&](const auto& c) { return c.index == i; });
    if (it == valid.end()) throw std::invalid_argument("no valid Hamiltonian field with index " + std::to_string(i));
    used.push_back(*it);
    gens.push_back(it->field);
  }
  return {fields_distribution(std::move(gens), n2), kupka_form(f, k, n2), std::move(used)};
}

}  // namespace flagforge
