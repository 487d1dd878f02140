#pragma once

// Lipschitz-dual distances between idempotent measures: the per-degree
// distances d_n and the certified metrization d_I = sum_n d_n / 2^n, plus the
// induced distance between level-2 measures computed on the finite atom
// subspace.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "tropibary/measure.hpp"

namespace tropibary {

// |phi_a - phi_b| <= n * d(a, b) for all pairs, within tol.
inline bool lipschitz_check(const GroundSpace& sp, std::span<const double> phi, int n, double tol = 1e-12) {
  if (n < 1) throw invalid_input("lipschitz_check: n must be positive");
  if (phi.size() != sp.size()) throw invalid_input("lipschitz_check: function length mismatch");
  for (std::size_t a = 0; a < sp.size(); ++a)
    for (std::size_t b = a + 1; b < sp.size(); ++b)
      if (std::abs(phi[a] - phi[b]) > static_cast<double>(n) * sp.distance(a, b) + tol) return false;
  return true;
}

namespace detail {

// sup over n-Lipschitz phi of mu(phi) - nu(phi). Each support index i of mu
// contributes one small LP (maximize lambda_i + phi_i - max_j(kappa_j +
// phi_j) over Lip_n); its exact optimum is attained at the minimal Lipschitz
// extension phi(x) = phi_i - n*d(i, x), which is feasible by the triangle
// inequality and optimal because the objective decreases in every other
// coordinate. The optimum value is lambda_i + min_j (n*d(i,j) - kappa_j).
inline double one_sided_sup(const IdempotentMeasure& mu, const IdempotentMeasure& nu, int n,
                            const std::vector<std::size_t>& supp_mu, const std::vector<std::size_t>& supp_nu) {
  const GroundSpace& sp = *mu.space();
  double dn = static_cast<double>(n);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i : supp_mu) {
    double inner = std::numeric_limits<double>::infinity();
    for (std::size_t j : supp_nu) inner = std::min(inner, dn * sp.distance(i, j) - nu.weight(j).value());
    best = std::max(best, mu.weight(i).value() + inner);
  }
  return best;
}

}  // namespace detail

// d_n(mu, nu) = sup{|mu(phi) - nu(phi)| / n : phi n-Lipschitz}, computed
// exactly (both one-sided sups are >= 0, so the absolute value is their max).
inline double dn_exact(const IdempotentMeasure& mu, const IdempotentMeasure& nu, int n) {
  if (n < 1) throw invalid_input("dn_exact: n must be positive");
  if (!same_space(mu, nu)) throw invalid_input("dn_exact: space mismatch");
  auto sm = mu.support(), sn = nu.support();
  double a = detail::one_sided_sup(mu, nu, n, sm, sn);
  double b = detail::one_sided_sup(nu, mu, n, sn, sm);
  return std::max(a, b) / static_cast<double>(n);
}

struct DistanceResult {
  double value;
  double error_bound;
};

// Certified truncation of d_I = sum_{n>=1} d_n / 2^n. Each d_n is bounded by
// the diameter, so stopping after N terms leaves a tail of at most
// diam * 2^-N; N is chosen to push that below tol/2. value <= d_I <= value +
// error_bound.
inline DistanceResult dI(const IdempotentMeasure& mu, const IdempotentMeasure& nu, double tol) {
  if (!(tol > 0.0)) throw invalid_input("dI: tol must be positive");
  if (!same_space(mu, nu)) throw invalid_input("dI: space mismatch");
  double diam = mu.space()->diameter();
  int N = 0;
  while (diam * std::ldexp(1.0, -N) > 0.5 * tol) {
    ++N;
    if (N > 1024) throw invalid_input("dI: tol too small for this diameter");
  }
  double sum = 0.0;
  for (int n = 1; n <= N; ++n) sum += std::ldexp(dn_exact(mu, nu, n), -n);
  return DistanceResult{sum, diam * std::ldexp(1.0, -N)};
}

// Distance between level-2 measures: d_I built over the finite ground space
// formed by the union of both atom lists with certified pairwise d_I entries.
// Restriction to the atom subspace is exact (Lipschitz functions extend with
// the same constant), so only the certification slack enters the bound:
// ground entries are upper bounds off by at most their certification bound,
// and d_n responds to a ground perturbation by no more than that perturbation.
inline DistanceResult meta_dI(const MetaMeasure& A, const MetaMeasure& B, double tol) {
  if (!(tol > 0.0)) throw invalid_input("meta_dI: tol must be positive");
  if (A.space() != B.space()) throw invalid_input("meta_dI: space mismatch");
  std::vector<const IdempotentMeasure*> atoms;
  for (const auto& a : A.atoms()) atoms.push_back(&a);
  for (const auto& b : B.atoms()) {
    bool present = false;
    for (const auto& a : A.atoms())
      if (measures_equal(a, b, MetaMeasure::atom_match_tol)) {
        present = true;
        break;
      }
    if (!present) atoms.push_back(&b);
  }
  const std::size_t k = atoms.size();
  double atom_tol = 0.25 * tol;
  double max_bound = 0.0;
  std::vector<double> g(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      DistanceResult r = dI(*atoms[i], *atoms[j], atom_tol);
      g[i * k + j] = g[j * k + i] = r.value + r.error_bound;
      max_bound = std::max(max_bound, r.error_bound);
    }
  auto meta_space = std::make_shared<GroundSpace>(GroundSpace::auto_labels(k), std::nullopt, std::move(g),
                                                  3.0 * atom_tol + 1e-9, /*require_distinct=*/false);
  auto weights_over = [&](const MetaMeasure& M) {
    std::vector<Scalar> w(k, Scalar::bottom());
    for (std::size_t j = 0; j < M.size(); ++j)
      for (std::size_t i = 0; i < k; ++i)
        if (measures_equal(*atoms[i], M.atom(j), MetaMeasure::atom_match_tol)) {
          w[i] = oplus(w[i], M.weight(j));
          break;
        }
    return w;
  };
  IdempotentMeasure ma(meta_space, weights_over(A)), mb(meta_space, weights_over(B));
  DistanceResult r = dI(ma, mb, 0.5 * tol);
  return DistanceResult{r.value, r.error_bound + max_bound};
}

}  // namespace tropibary
