#pragma once

// Brute-force reference implementations used to cross-check the closed-form
// routines. Everything here trades speed for being elementary: exhaustive
// grids, no residuation, no per-support minimization shortcuts.

#include <cmath>
#include <optional>
#include <vector>

#include "tropibary/measure.hpp"
#include "tropibary/metric.hpp"
#include "tropibary/space.hpp"

namespace tropibary {

// All weight tuples of the given length drawn from the level set whose
// maximum is exactly 0.
inline std::vector<std::vector<Scalar>> normalized_grid_weights(const std::vector<Scalar>& levels,
                                                                std::size_t m) {
  std::vector<std::vector<Scalar>> out;
  std::vector<std::size_t> idx(m, 0);
  const Scalar zero(0.0);
  while (true) {
    std::vector<Scalar> w(m);
    Scalar top = Scalar::bottom();
    for (std::size_t j = 0; j < m; ++j) {
      w[j] = levels[idx[j]];
      top = oplus(top, w[j]);
    }
    if (top == zero) out.push_back(std::move(w));
    std::size_t j = 0;
    while (j < m && ++idx[j] == levels.size()) idx[j++] = 0;
    if (j == m) break;
  }
  return out;
}

// Grid-restricted hull membership: a tuple-by-tuple scan for an exact
// combination reproducing p.
inline bool grid_hull_member(const TropicalHull& hull, const Point& p,
                             const std::vector<std::vector<Scalar>>& tuples, double tol) {
  for (const auto& w : tuples)
    if (approx_equal(combine_points(hull.generators.points(), w), p, tol)) return true;
  return false;
}

// All normalized measures on the space with weights drawn from the level
// set.
inline std::vector<IdempotentMeasure> all_grid_measures(const SpacePtr& sp,
                                                        const std::vector<Scalar>& levels) {
  std::vector<IdempotentMeasure> out;
  for (auto& w : normalized_grid_weights(levels, sp->size())) out.emplace_back(sp, std::move(w));
  return out;
}

// Searches for a representation mu = mu1 oplus a odot mu2 with mu1, mu2
// both different from mu, everything drawn from the given grid. Exact
// (bitwise) reconstruction only.
inline bool has_nontrivial_rep_bruteforce(const IdempotentMeasure& mu,
                                          const std::vector<IdempotentMeasure>& grid_measures,
                                          const std::vector<Scalar>& levels) {
  for (Scalar a : levels) {
    if (a > Scalar(0.0)) continue;
    for (const auto& m1 : grid_measures) {
      if (measures_equal(m1, mu)) continue;
      for (const auto& m2 : grid_measures) {
        if (measures_equal(m2, mu)) continue;
        bool match = true;
        for (std::size_t i = 0; match && i < mu.size(); ++i)
          match = oplus(m1.weight(i), odot(a, m2.weight(i))) == mu.weight(i);
        if (match) return true;
      }
    }
  }
  return false;
}

// Nontrivial representation of a non-Dirac measure from its first proper
// support bipartition, via the decomposition lemma.
inline std::optional<Decomposition> nontrivial_rep_by_decompose(const IdempotentMeasure& mu) {
  auto supp = mu.support();
  if (supp.size() < 2) return std::nullopt;
  std::vector<bool> in_block2(mu.size(), false);
  in_block2[supp[0]] = true;
  return decompose(mu, in_block2);
}

// Grid oracle for the degree-n dual distance. Test functions run over a
// product grid with phi[0] = 0 (the objective is invariant under adding
// constants); each grid tuple is replaced by its n-Lipschitz lower envelope
// min_b (psi_b + n d(a, b)), which keeps the scan inside the admissible
// class while staying within one grid step of any admissible function. The
// result is a lower bound on the true supremum and is within `step` of it.
inline double dn_grid_oracle(const IdempotentMeasure& mu, const IdempotentMeasure& nu,
                             std::size_t n, double step) {
  const GroundSpace& sp = *mu.space();
  std::size_t m = sp.size();
  double R = static_cast<double>(n) * sp.diameter();
  // One extra level so the grid tops out at or above R; the snap-up argument
  // in the accuracy bound needs ceil(phi) to stay on the grid.
  std::size_t levels = static_cast<std::size_t>(std::floor(2.0 * R / step)) + 2;
  std::vector<std::size_t> idx(m, 0);
  std::vector<double> psi(m, 0.0), phi(m, 0.0);
  double best = 0.0;
  while (true) {
    psi[0] = 0.0;
    for (std::size_t j = 1; j < m; ++j) psi[j] = -R + static_cast<double>(idx[j]) * step;
    for (std::size_t a = 0; a < m; ++a) {
      double v = psi[a];
      for (std::size_t b = 0; b < m; ++b)
        v = std::min(v, psi[b] + static_cast<double>(n) * sp.distance(a, b));
      phi[a] = v;
    }
    best = std::max(best, std::abs(evaluate(mu, phi) - evaluate(nu, phi)));
    std::size_t j = 1;
    while (j < m && ++idx[j] == levels) idx[j++] = 0;
    if (j == m) break;
  }
  return best / static_cast<double>(n);
}

}  // namespace tropibary
