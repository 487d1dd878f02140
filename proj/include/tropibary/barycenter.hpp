#pragma once

// The idempotent barycenter map: coordinatewise evaluation of the coordinate
// functionals at level 1, combination of atoms at level 2, and the search for
// non-Dirac fiber elements.

#include <optional>
#include <span>
#include <vector>

#include "tropibary/measure.hpp"

namespace tropibary {

// Embedded ground space, optionally carrying the tropical hull it lives in.
// Every ground point must belong to the hull.
struct EmbeddedSpace {
  SpacePtr space;
  std::optional<TropicalHull> hull;

  explicit EmbeddedSpace(SpacePtr sp, std::optional<TropicalHull> h = std::nullopt)
      : space(std::move(sp)), hull(std::move(h)) {
    if (!space || !space->has_coords()) throw invalid_input("EmbeddedSpace: coordinates required");
    if (hull) {
      if (hull->generators.dimension() != space->coords().dimension())
        throw invalid_input("EmbeddedSpace: hull dimension mismatch");
      for (const Point& p : space->coords().points())
        if (!hull_membership(*hull, p).member) throw invalid_input("EmbeddedSpace: ground point outside hull");
    }
  }
};

// pr_t(beta(mu)) = mu(f_t) = max_i (lambda_i + x_{i,t}).
inline Point barycenter(const GroundSpace& sp, const IdempotentMeasure& mu) {
  if (mu.space().get() != &sp) throw invalid_input("barycenter: space mismatch");
  const PointConfig& pc = sp.coords();
  Point b(pc.dimension(), Scalar::bottom());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu.weight(i).is_bottom()) continue;
    for (std::size_t t = 0; t < pc.dimension(); ++t) b[t] = oplus(b[t], odot(mu.weight(i), pc[i][t]));
  }
  return b;
}

inline Point barycenter(const EmbeddedSpace& es, const IdempotentMeasure& mu) { return barycenter(*es.space, mu); }

// Level-2 barycenter: the normalized combination of the atoms. Sends the
// Dirac at mu back to mu and is max-plus affine.
inline IdempotentMeasure barycenter_meta(const MetaMeasure& M) {
  return combine_measures(std::span<const IdempotentMeasure>(M.atoms()), std::span<const Scalar>(M.weights()));
}

// Searches two-point measures lambda odot delta_y oplus delta_z (lambda
// finite, y != z, hence non-Dirac) with barycenter x. Scan order: y index,
// z index, grid order. Returns the measure, or nullopt when the sampled
// fiber over x contains only delta_x.
inline std::optional<IdempotentMeasure> fiber_witness(const EmbeddedSpace& es, const Point& x,
                                                      std::span<const Scalar> weight_grid, double tol = 1e-12) {
  const GroundSpace& sp = *es.space;
  const PointConfig& pc = sp.coords();
  if (x.size() != pc.dimension()) throw invalid_input("fiber_witness: dimension mismatch");
  bool representable = sp.find_point(x, tol).has_value() ||
                       (es.hull && hull_membership(*es.hull, x).member);
  if (!representable) throw invalid_input("fiber_witness: x not representable");
  Scalar zero(0.0);
  for (Scalar w : weight_grid)
    if (w > zero) throw invalid_input("fiber_witness: weight grid values must be <= 0");
  for (std::size_t yi = 0; yi < sp.size(); ++yi) {
    for (std::size_t zi = 0; zi < sp.size(); ++zi) {
      if (zi == yi) continue;
      for (Scalar lam : weight_grid) {
        if (lam.is_bottom()) continue;
        bool hit = true;
        for (std::size_t t = 0; t < pc.dimension(); ++t) {
          if (!approx_equal(oplus(odot(lam, pc[yi][t]), pc[zi][t]), x[t], tol)) {
            hit = false;
            break;
          }
        }
        if (!hit) continue;
        std::vector<Scalar> w(sp.size(), Scalar::bottom());
        w[yi] = lam;
        w[zi] = Scalar(0.0);
        return IdempotentMeasure(es.space, std::move(w));
      }
    }
  }
  return std::nullopt;
}

}  // namespace tropibary
