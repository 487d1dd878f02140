#pragma once

// Finite max-plus point configurations, normalized tropical combinations, and
// tropical (max-plus) polytopes with residuation-based membership plus the
// extremality / two-point-combination witness searches.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "tropibary/scalar.hpp"

namespace tropibary {

// A point of R_max^d. Coordinates may be -Inf in general; embedded compacta
// use all-finite points.
using Point = std::vector<Scalar>;

inline Point point(std::initializer_list<double> coords) {
  Point p;
  p.reserve(coords.size());
  for (double c : coords) p.push_back(Scalar(c));
  return p;
}

inline bool approx_equal(const Point& a, const Point& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t t = 0; t < a.size(); ++t)
    if (!approx_equal(a[t], b[t], tol)) return false;
  return true;
}

inline Point oplus(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw invalid_input("oplus: dimension mismatch");
  Point r(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) r[t] = oplus(a[t], b[t]);
  return r;
}

inline Point odot(Scalar c, const Point& a) {
  Point r(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) r[t] = odot(c, a[t]);
  return r;
}

// Normalized combination oplus_k (lambda_k odot v_k). Weights must be <= 0
// with max exactly 0; this keeps combinations of embedded compacta inside the
// finite range.
inline Point combine_points(std::span<const Point> pts, std::span<const Scalar> weights) {
  if (pts.size() != weights.size()) throw invalid_input("combine_points: length mismatch");
  if (pts.empty()) throw invalid_input("combine_points: empty combination");
  Scalar zero(0.0);
  Scalar top = Scalar::bottom();
  for (Scalar w : weights) {
    if (w > zero) throw invalid_input("combine_points: weight above 0");
    top = oplus(top, w);
  }
  if (top != zero) throw invalid_input("combine_points: normalization violation (max weight must be 0)");
  const std::size_t d = pts[0].size();
  Point r(d, Scalar::bottom());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (pts[k].size() != d) throw invalid_input("combine_points: dimension mismatch");
    if (weights[k].is_bottom()) continue;
    for (std::size_t t = 0; t < d; ++t) r[t] = oplus(r[t], odot(weights[k], pts[k][t]));
  }
  return r;
}

// Two-point combination s(x, y, (t, p)) = t odot x oplus p odot y along J.
inline Point s_combine(const Point& x, const Point& y, const JPair& j) {
  return oplus(odot(j.t(), x), odot(j.p(), y));
}

// Non-empty list of equal-dimension points.
class PointConfig {
 public:
  explicit PointConfig(std::vector<Point> pts) : pts_(std::move(pts)) {
    if (pts_.empty()) throw invalid_input("PointConfig: at least one point required");
    for (const Point& p : pts_)
      if (p.size() != pts_[0].size()) throw invalid_input("PointConfig: dimension mismatch");
  }

  std::size_t dimension() const { return pts_[0].size(); }
  std::size_t size() const { return pts_.size(); }
  const std::vector<Point>& points() const { return pts_; }
  const Point& operator[](std::size_t i) const { return pts_[i]; }

  bool all_finite() const {
    for (const Point& p : pts_)
      for (Scalar c : p)
        if (c.is_bottom()) return false;
    return true;
  }

 private:
  std::vector<Point> pts_;
};

// Tropical polytope: the set of normalized combinations of its generators.
struct TropicalHull {
  PointConfig generators;
};

struct MembershipResult {
  bool member;
  std::vector<Scalar> weights;  // canonical (residuated, clamped at 0) weights
  Point reconstruction;
  double gap;  // sup distance between reconstruction and the query
};

namespace detail {

// Residual max{lambda : lambda odot v <= p}, as an extended value where
// +inf means "unconstrained". Used coordinatewise, then clamped at 0.
inline double residual_upper(Scalar p, Scalar v) {
  if (v.is_bottom()) return std::numeric_limits<double>::infinity();
  if (p.is_bottom()) return -std::numeric_limits<double>::infinity();
  return p.value() - v.value();
}

inline double coord_gap(Scalar a, Scalar b) {
  if (a.is_bottom() || b.is_bottom())
    return (a.is_bottom() && b.is_bottom()) ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(a.value() - b.value());
}

}  // namespace detail

// Decides p in hull by residuation: the clamped weights
// lambda*_k = min(0, min_t residual(p_t, v_kt)) give the largest normalized
// combination below p; p is a member iff that combination reproduces p (within
// tol) and some lambda*_k is 0. Sound and complete: any witness weights are
// <= lambda* coordinatewise, so if they reproduce p then so does lambda*.
inline MembershipResult hull_membership(const TropicalHull& hull, const Point& p, double tol = 1e-9) {
  const auto& gens = hull.generators;
  if (p.size() != gens.dimension()) throw invalid_input("hull_membership: dimension mismatch");
  std::vector<Scalar> lam(gens.size(), Scalar::bottom());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    double up = 0.0;
    for (std::size_t t = 0; t < p.size(); ++t)
      up = std::min(up, detail::residual_upper(p[t], gens[k][t]));
    lam[k] = std::isinf(up) ? Scalar::bottom() : Scalar(up);
  }
  Point rec(p.size(), Scalar::bottom());
  Scalar top = Scalar::bottom();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    top = oplus(top, lam[k]);
    if (lam[k].is_bottom()) continue;
    for (std::size_t t = 0; t < p.size(); ++t) rec[t] = oplus(rec[t], odot(lam[k], gens[k][t]));
  }
  double gap = 0.0;
  for (std::size_t t = 0; t < p.size(); ++t) gap = std::max(gap, detail::coord_gap(rec[t], p[t]));
  bool normalized = !top.is_bottom() && top.value() >= -tol;
  return MembershipResult{normalized && gap <= tol, std::move(lam), std::move(rec), gap};
}

struct CombinationWitness {
  std::size_t y;
  std::size_t z;
  Scalar weight;
};

// First (y, z, t) in scan order (y index, z index, grid order) with
// x = t odot y oplus z and x not in {y, z}. A witness certifies x is not
// extremal in the sample; NONE means no witness among the sampled points.
inline std::optional<CombinationWitness> extremal_witness(const PointConfig& sample, const Point& x,
                                                          std::span<const Scalar> weight_grid,
                                                          double tol = 1e-12) {
  Scalar zero(0.0);
  for (Scalar w : weight_grid)
    if (w > zero) throw invalid_input("extremal_witness: weight grid values must be <= 0");
  bool x_in_sample = false;
  for (const Point& s : sample.points())
    if (approx_equal(s, x, tol)) {
      x_in_sample = true;
      break;
    }
  if (!x_in_sample) throw invalid_input("extremal_witness: x not in sample");
  for (std::size_t yi = 0; yi < sample.size(); ++yi) {
    const Point& y = sample[yi];
    if (approx_equal(y, x, tol)) continue;
    for (std::size_t zi = 0; zi < sample.size(); ++zi) {
      const Point& z = sample[zi];
      if (approx_equal(z, x, tol)) continue;
      for (Scalar t : weight_grid) {
        if (approx_equal(oplus(odot(t, y), z), x, tol)) return CombinationWitness{yi, zi, t};
      }
    }
  }
  return std::nullopt;
}

// First (y, z, lambda) with x = lambda odot y oplus z and not (x = y = z),
// lambda finite. Such a witness certifies that the barycenter fiber over x
// contains the non-Dirac measure lambda odot delta_y oplus delta_z, i.e.
// x is not in B(sample). lambda = -Inf is excluded: it would only certify
// delta_x itself. Scan order as in extremal_witness.
inline std::optional<CombinationWitness> b_membership_witness(const TropicalHull& hull, const Point& x,
                                                              const PointConfig& sample,
                                                              std::span<const Scalar> weight_grid,
                                                              double tol = 1e-12) {
  if (!hull_membership(hull, x).member) throw invalid_input("b_membership_witness: x outside hull");
  Scalar zero(0.0);
  for (Scalar w : weight_grid)
    if (w > zero) throw invalid_input("b_membership_witness: weight grid values must be <= 0");
  for (std::size_t yi = 0; yi < sample.size(); ++yi) {
    const Point& y = sample[yi];
    for (std::size_t zi = 0; zi < sample.size(); ++zi) {
      const Point& z = sample[zi];
      if (approx_equal(y, z, tol)) continue;  // y = z forces x = y = z
      for (Scalar lam : weight_grid) {
        if (lam.is_bottom()) continue;
        if (approx_equal(oplus(odot(lam, y), z), x, tol)) return CombinationWitness{yi, zi, lam};
      }
    }
  }
  return std::nullopt;
}

}  // namespace tropibary
