#pragma once

// Deterministic random generators for test data. Values are dyadic
// rationals (multiples of 2^-7) wherever exact identities are asserted, so
// combining, decomposing, and shifting incur no rounding. The raw engine is
// used directly; distribution classes are avoided because their output is
// not pinned across standard library implementations.

#include <cstdint>
#include <random>
#include <vector>

#include "tropibary/barycenter.hpp"
#include "tropibary/measure.hpp"

namespace tropibary {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1) with 53-bit mantissa.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

  bool chance(double p) { return unit() < p; }

  // Uniform dyadic multiple of 2^-7 in [0, 1].
  double dyadic_unit() { return static_cast<double>(index(129)) * 0x1.0p-7; }

  // Dyadic weight in [-8, 0].
  double dyadic_weight() { return -8.0 * dyadic_unit(); }

 private:
  std::mt19937_64 eng_;
};

// Finite metric space with dyadic distances: either planar dyadic points
// under the sup metric or a random symmetric matrix with entries in [1, 2]
// (triangle inequality automatic).
inline SpacePtr random_metric_space(Rng& rng, std::size_t n) {
  if (rng.chance(0.5)) {
    std::vector<Point> pts;
    while (pts.size() < n) {
      Point p{Scalar(4.0 * rng.dyadic_unit()), Scalar(4.0 * rng.dyadic_unit())};
      bool dup = false;
      for (const Point& q : pts) dup = dup || approx_equal(p, q, 1e-15);
      if (!dup) pts.push_back(std::move(p));
    }
    return GroundSpace::from_coords(PointConfig(std::move(pts)));
  }
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = 1.0 + rng.dyadic_unit();
  return GroundSpace::from_matrix(std::move(d));
}

// Normalized measure with dyadic weights; roughly a fifth of the entries
// are -Inf and one anchor index is pinned at 0.
inline IdempotentMeasure random_measure(Rng& rng, SpacePtr sp) {
  std::vector<Scalar> w(sp->size());
  for (auto& wi : w) wi = rng.chance(0.2) ? Scalar::bottom() : Scalar(rng.dyadic_weight());
  w[rng.index(w.size())] = Scalar(0.0);
  return IdempotentMeasure(std::move(sp), std::move(w));
}

inline IdempotentMeasure random_nondirac_measure(Rng& rng, SpacePtr sp) {
  std::vector<Scalar> w(sp->size(), Scalar::bottom());
  std::size_t a = rng.index(w.size());
  std::size_t b = (a + 1 + rng.index(w.size() - 1)) % w.size();
  for (auto& wi : w)
    if (rng.chance(0.6)) wi = Scalar(rng.dyadic_weight());
  w[a] = Scalar(0.0);
  w[b] = Scalar(rng.dyadic_weight());
  return IdempotentMeasure(std::move(sp), std::move(w));
}

// Normalized measure whose support size is bounded (keeps brute-force
// oracles tractable).
inline IdempotentMeasure random_small_measure(Rng& rng, SpacePtr sp, std::size_t max_support) {
  std::vector<Scalar> w(sp->size(), Scalar::bottom());
  std::size_t k = 1 + rng.index(max_support);
  for (std::size_t j = 0; j < k; ++j) w[rng.index(w.size())] = Scalar(rng.dyadic_weight());
  w[rng.index(w.size())] = Scalar(0.0);
  return IdempotentMeasure(std::move(sp), std::move(w));
}

// n-Lipschitz function as an inf-convolution phi(a) = min_b (psi(b) +
// n*d(a, b)); exact for dyadic psi and distances, Lipschitz by
// construction.
inline std::vector<double> random_lipschitz(Rng& rng, const GroundSpace& sp, std::size_t n) {
  std::vector<double> psi(sp.size());
  for (auto& v : psi) v = 8.0 * rng.dyadic_unit() - 4.0;
  std::vector<double> phi(sp.size());
  for (std::size_t a = 0; a < sp.size(); ++a) {
    double best = psi[a];
    for (std::size_t b = 0; b < sp.size(); ++b)
      best = std::min(best, psi[b] + static_cast<double>(n) * sp.distance(a, b));
    phi[a] = best;
  }
  return phi;
}

inline PointMap random_point_map(Rng& rng, SpacePtr from, SpacePtr to) {
  std::vector<std::size_t> target(from->size());
  for (auto& t : target) t = rng.index(to->size());
  return PointMap{std::move(from), std::move(to), std::move(target)};
}

inline MetaMeasure random_meta(Rng& rng, SpacePtr sp, std::size_t natoms) {
  std::vector<IdempotentMeasure> atoms;
  std::vector<Scalar> w;
  for (std::size_t j = 0; j < natoms; ++j) {
    atoms.push_back(random_measure(rng, sp));
    w.push_back(rng.chance(0.15) ? Scalar::bottom() : Scalar(rng.dyadic_weight()));
  }
  w[rng.index(w.size())] = Scalar(0.0);
  return MetaMeasure(std::move(atoms), std::move(w));
}

// Level-2 measure whose barycenter equals kappa exactly. The support of
// kappa is split into blocks; each block yields an atom (the block
// restriction, renormalized) weighted by the block maximum, exactly as the
// decomposition lemma produces them. Extra dominated atoms (support inside
// supp kappa, weight below the pointwise slack) may be added; they cannot
// raise the barycenter.
inline MetaMeasure random_meta_with_barycenter(Rng& rng, const IdempotentMeasure& kappa) {
  auto supp = kappa.support();
  SpacePtr sp = kappa.space();
  if (rng.chance(0.1)) return MetaMeasure::dirac(kappa);
  std::size_t nblocks = 1 + rng.index(std::min<std::size_t>(3, supp.size()));
  std::vector<std::vector<std::size_t>> blocks(nblocks);
  for (std::size_t j = 0; j < supp.size(); ++j)
    blocks[j < nblocks ? j : rng.index(nblocks)].push_back(supp[j]);
  std::vector<IdempotentMeasure> atoms;
  std::vector<Scalar> w;
  for (const auto& block : blocks) {
    double a = -1e300;
    for (std::size_t i : block) a = std::max(a, kappa.weight(i).value());
    std::vector<Scalar> bw(sp->size(), Scalar::bottom());
    for (std::size_t i : block) bw[i] = Scalar(kappa.weight(i).value() - a);
    atoms.emplace_back(sp, std::move(bw));
    w.push_back(Scalar(a));
  }
  std::size_t extras = rng.index(3);
  for (std::size_t e = 0; e < extras; ++e) {
    std::vector<std::size_t> sub;
    for (std::size_t i : supp)
      if (rng.chance(0.5)) sub.push_back(i);
    if (sub.empty()) sub.push_back(supp[rng.index(supp.size())]);
    double m = -1e300;
    for (std::size_t i : sub) m = std::max(m, kappa.weight(i).value());
    std::vector<Scalar> nw(sp->size(), Scalar::bottom());
    for (std::size_t i : sub) nw[i] = Scalar(kappa.weight(i).value() - m);
    atoms.emplace_back(sp, std::move(nw));
    w.push_back(Scalar(m - rng.dyadic_unit()));
  }
  return MetaMeasure(std::move(atoms), std::move(w));
}

// Measure on a [0, 1] grid with barycenter pinned inside [0, 5/8]: an
// anchor below 5/8 carries weight 0 and every density value is capped by
// 5/8 - s, so s + rho(s) <= 5/8 < 2/3 throughout.
inline IdempotentMeasure random_interval_measure(Rng& rng, SpacePtr sp) {
  const PointConfig& pc = sp->coords();
  std::vector<std::size_t> low;
  for (std::size_t i = 0; i < sp->size(); ++i)
    if (pc[i][0].value() <= 0.625) low.push_back(i);
  std::vector<Scalar> w(sp->size(), Scalar::bottom());
  for (std::size_t i = 0; i < sp->size(); ++i) {
    if (rng.chance(0.3)) continue;
    double s = pc[i][0].value();
    w[i] = Scalar(std::min(0.0, 0.625 - s) - 4.0 * rng.dyadic_unit());
  }
  w[low[rng.index(low.size())]] = Scalar(0.0);
  return IdempotentMeasure(std::move(sp), std::move(w));
}

// Normalized dyadic combination weights for a hull with the given number of
// generators.
inline std::vector<Scalar> random_combination_weights(Rng& rng, std::size_t n) {
  std::vector<Scalar> c(n);
  for (auto& ci : c) ci = rng.chance(0.25) ? Scalar::bottom() : Scalar(rng.dyadic_weight());
  c[rng.index(n)] = Scalar(0.0);
  return c;
}

}  // namespace tropibary
