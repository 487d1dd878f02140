#pragma once

// Idempotent (Maslov) measures on finite metric ground spaces, given by their
// densities: weight vectors <= 0 with max exactly 0. Includes functionals,
// pushforwards, normalized combinations, two-block decompositions, and
// level-2 measures (measures whose atoms are measures).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tropibary/space.hpp"

namespace tropibary {

class GroundSpace;
using SpacePtr = std::shared_ptr<const GroundSpace>;

// Finite metric space, optionally embedded via coordinates. Metric axioms are
// checked at construction: symmetry and the triangle inequality within
// check_tol, zero diagonal, and (unless relaxed) positive off-diagonal
// entries. Internal constructions from certified distance values relax the
// tolerances; documents use the defaults.
class GroundSpace {
 public:
  GroundSpace(std::vector<std::string> labels, std::optional<PointConfig> coords, std::vector<double> dist,
              double check_tol = 1e-12, bool require_distinct = true)
      : labels_(std::move(labels)), coords_(std::move(coords)), dist_(std::move(dist)) {
    n_ = labels_.size();
    if (n_ == 0) throw invalid_input("GroundSpace: at least one point required");
    if (coords_) {
      if (coords_->size() != n_) throw invalid_input("GroundSpace: coords/label count mismatch");
      if (!coords_->all_finite()) throw invalid_input("GroundSpace: embedded coordinates must be finite");
    }
    if (dist_.size() != n_ * n_) throw invalid_input("GroundSpace: distance matrix size mismatch");
    diam_ = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (dist_[i * n_ + i] != 0.0) throw invalid_input("GroundSpace: nonzero diagonal distance");
      for (std::size_t j = 0; j < n_; ++j) {
        double d = dist_[i * n_ + j];
        if (!std::isfinite(d) || d < 0.0) throw invalid_input("GroundSpace: distances must be finite and >= 0");
        if (std::abs(d - dist_[j * n_ + i]) > check_tol) throw invalid_input("GroundSpace: asymmetric distance matrix");
        if (require_distinct && i != j && d <= 0.0) throw invalid_input("GroundSpace: distinct points at distance 0");
        diam_ = std::max(diam_, d);
      }
    }
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k)
          if (dist_[i * n_ + j] > dist_[i * n_ + k] + dist_[k * n_ + j] + check_tol)
            throw invalid_input("GroundSpace: triangle inequality violated");
  }

  static std::vector<std::string> auto_labels(std::size_t n) {
    std::vector<std::string> ls;
    ls.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ls.push_back("p" + std::to_string(i));
    return ls;
  }

  // Sup-metric space on embedded finite coordinates.
  static SpacePtr from_coords(PointConfig pc) {
    std::size_t n = pc.size();
    return sup_space(auto_labels(n), std::move(pc));
  }

  static SpacePtr sup_space(std::vector<std::string> labels, PointConfig pc) {
    if (!pc.all_finite()) throw invalid_input("GroundSpace: embedded coordinates must be finite");
    std::size_t n = pc.size();
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double d = 0.0;
        for (std::size_t t = 0; t < pc.dimension(); ++t)
          d = std::max(d, std::abs(pc[i][t].value() - pc[j][t].value()));
        dist[i * n + j] = d;
      }
    auto sp = std::make_shared<GroundSpace>(std::move(labels), std::move(pc), std::move(dist));
    sp->metric_kind_ = "sup";
    return sp;
  }

  static SpacePtr from_matrix(std::vector<double> dist, std::optional<PointConfig> coords = std::nullopt) {
    std::size_t n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(dist.size()))));
    return std::make_shared<GroundSpace>(auto_labels(n), std::move(coords), std::move(dist));
  }

  // Uniform grid on [0, 1] including both endpoints, with the natural metric.
  static SpacePtr interval_grid(std::size_t n) {
    if (n < 2) throw invalid_input("interval_grid: at least 2 points required");
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      pts.push_back(Point{Scalar(static_cast<double>(i) / static_cast<double>(n - 1))});
    return from_coords(PointConfig(std::move(pts)));
  }

  std::size_t size() const { return n_; }
  double distance(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
  const std::vector<double>& distance_matrix() const { return dist_; }
  double diameter() const { return diam_; }
  bool has_coords() const { return coords_.has_value(); }
  const PointConfig& coords() const {
    if (!coords_) throw error("GroundSpace: no coordinates");
    return *coords_;
  }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::string& metric_kind() const { return metric_kind_; }

  std::optional<std::size_t> find_point(const Point& p, double tol = 1e-12) const {
    if (!coords_) return std::nullopt;
    for (std::size_t i = 0; i < n_; ++i)
      if (approx_equal((*coords_)[i], p, tol)) return i;
    return std::nullopt;
  }

 private:
  std::vector<std::string> labels_;
  std::optional<PointConfig> coords_;
  std::vector<double> dist_;
  std::size_t n_ = 0;
  double diam_ = 0.0;
  std::string metric_kind_ = "matrix";
};

inline std::vector<double> constant_function(const GroundSpace& sp, double c) {
  return std::vector<double>(sp.size(), c);
}

inline std::vector<double> coordinate_function(const GroundSpace& sp, std::size_t t) {
  const PointConfig& pc = sp.coords();
  if (t >= pc.dimension()) throw invalid_input("coordinate_function: coordinate index out of range");
  std::vector<double> f(sp.size());
  for (std::size_t i = 0; i < sp.size(); ++i) f[i] = pc[i][t].value();
  return f;
}

// Density of an idempotent probability measure: weights <= 0 with max exactly
// 0. Support = points of finite weight.
class IdempotentMeasure {
 public:
  IdempotentMeasure(SpacePtr space, std::vector<Scalar> weights) : space_(std::move(space)), w_(std::move(weights)) {
    if (!space_) throw invalid_input("measure: null space");
    if (w_.size() != space_->size()) throw invalid_input("measure: weight count mismatch");
    Scalar zero(0.0);
    Scalar top = Scalar::bottom();
    for (Scalar w : w_) {
      if (w > zero) throw invalid_input("measure: weight above 0");
      top = oplus(top, w);
    }
    if (top != zero) throw invalid_input("measure: normalization: max weight must be 0");
  }

  static IdempotentMeasure dirac(SpacePtr space, std::size_t i) {
    if (!space || i >= space->size()) throw invalid_input("dirac: index out of range");
    std::vector<Scalar> w(space->size(), Scalar::bottom());
    w[i] = Scalar(0.0);
    return IdempotentMeasure(std::move(space), std::move(w));
  }

  const SpacePtr& space() const { return space_; }
  std::size_t size() const { return w_.size(); }
  Scalar weight(std::size_t i) const { return w_[i]; }
  const std::vector<Scalar>& weights() const { return w_; }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i].is_finite()) s.push_back(i);
    return s;
  }

  bool is_dirac() const { return support().size() == 1; }

  std::optional<std::size_t> dirac_index() const {
    auto s = support();
    if (s.size() == 1) return s[0];
    return std::nullopt;
  }

 private:
  SpacePtr space_;
  std::vector<Scalar> w_;
};

inline bool same_space(const IdempotentMeasure& a, const IdempotentMeasure& b) { return a.space() == b.space(); }

inline bool measures_equal(const IdempotentMeasure& a, const IdempotentMeasure& b, double tol = 0.0) {
  if (!same_space(a, b)) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (tol == 0.0 ? !(a.weight(i) == b.weight(i)) : !approx_equal(a.weight(i), b.weight(i), tol)) return false;
  return true;
}

// mu(phi) = max_i (lambda_i + phi_i). Always finite: some lambda_i is 0.
inline double evaluate(const IdempotentMeasure& mu, std::span<const double> phi) {
  if (phi.size() != mu.size()) throw invalid_input("evaluate: function length mismatch");
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu.weight(i).is_bottom()) continue;
    best = std::max(best, mu.weight(i).value() + phi[i]);
  }
  return best;
}

// Point map between ground spaces; pushforward transports densities by
// max over preimages.
struct PointMap {
  SpacePtr from;
  SpacePtr to;
  std::vector<std::size_t> target;

  PointMap(SpacePtr f, SpacePtr t, std::vector<std::size_t> tgt)
      : from(std::move(f)), to(std::move(t)), target(std::move(tgt)) {
    if (!from || !to) throw invalid_input("PointMap: null space");
    if (target.size() != from->size()) throw invalid_input("PointMap: target count mismatch");
    for (std::size_t i : target)
      if (i >= to->size()) throw invalid_input("PointMap: target index out of range");
  }

  // Largest displacement d(x, f(x)) when both spaces coincide.
  double displacement() const {
    if (from != to) throw invalid_input("PointMap: displacement needs an endomap");
    double e = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) e = std::max(e, from->distance(i, target[i]));
    return e;
  }
};

inline IdempotentMeasure pushforward(const PointMap& f, const IdempotentMeasure& mu) {
  if (f.from != mu.space()) throw invalid_input("pushforward: space mismatch");
  std::vector<Scalar> w(f.to->size(), Scalar::bottom());
  for (std::size_t i = 0; i < mu.size(); ++i) w[f.target[i]] = oplus(w[f.target[i]], mu.weight(i));
  return IdempotentMeasure(f.to, std::move(w));
}

// Normalized combination of measures: density max_j (alpha_j + rho_j). The
// result is normalized exactly whenever the inputs are.
inline IdempotentMeasure combine_measures(std::span<const IdempotentMeasure> atoms, std::span<const Scalar> weights) {
  if (atoms.size() != weights.size()) throw invalid_input("combine_measures: length mismatch");
  if (atoms.empty()) throw invalid_input("combine_measures: empty combination");
  Scalar zero(0.0);
  Scalar top = Scalar::bottom();
  for (Scalar w : weights) {
    if (w > zero) throw invalid_input("combine_measures: weight above 0");
    top = oplus(top, w);
  }
  if (top != zero) throw invalid_input("combine_measures: normalization: max weight must be 0");
  const SpacePtr& sp = atoms[0].space();
  std::vector<Scalar> w(sp->size(), Scalar::bottom());
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    if (atoms[j].space() != sp) throw invalid_input("combine_measures: space mismatch");
    if (weights[j].is_bottom()) continue;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = oplus(w[i], odot(weights[j], atoms[j].weight(i)));
  }
  return IdempotentMeasure(sp, std::move(w));
}

struct Decomposition {
  Scalar a1;
  IdempotentMeasure mu1;
  Scalar a2;
  IdempotentMeasure mu2;
};

// Splits mu along a two-block partition of the index set: on each block the
// density is renormalized by the block maximum a_k, so that
// combine((mu1, mu2), (a1, a2)) reconstructs mu. Both blocks must meet the
// support.
inline Decomposition decompose(const IdempotentMeasure& mu, const std::vector<bool>& in_block2) {
  if (in_block2.size() != mu.size()) throw invalid_input("decompose: mask size mismatch");
  Scalar a[2] = {Scalar::bottom(), Scalar::bottom()};
  for (std::size_t i = 0; i < mu.size(); ++i) a[in_block2[i] ? 1 : 0] = oplus(a[in_block2[i] ? 1 : 0], mu.weight(i));
  if (a[0].is_bottom() || a[1].is_bottom()) throw invalid_input("decompose: block misses the support");
  std::vector<Scalar> w1(mu.size(), Scalar::bottom()), w2(mu.size(), Scalar::bottom());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu.weight(i).is_bottom()) continue;
    std::size_t b = in_block2[i] ? 1 : 0;
    Scalar shifted(mu.weight(i).value() - a[b].value());
    (b ? w2 : w1)[i] = shifted;
  }
  return Decomposition{a[0], IdempotentMeasure(mu.space(), std::move(w1)), a[1],
                       IdempotentMeasure(mu.space(), std::move(w2))};
}

// Level-2 measure: finitely many measure atoms over a common ground space
// with normalized weights. Atoms are kept pairwise distinct; a collision
// (weight-vector equality within atom_match_tol) keeps the larger weight.
class MetaMeasure {
 public:
  static constexpr double atom_match_tol = 1e-12;

  MetaMeasure(std::vector<IdempotentMeasure> atoms, std::vector<Scalar> weights) {
    if (atoms.size() != weights.size()) throw invalid_input("MetaMeasure: length mismatch");
    if (atoms.empty()) throw invalid_input("MetaMeasure: at least one atom required");
    Scalar zero(0.0);
    Scalar top = Scalar::bottom();
    for (Scalar w : weights) {
      if (w > zero) throw invalid_input("MetaMeasure: weight above 0");
      top = oplus(top, w);
    }
    if (top != zero) throw invalid_input("MetaMeasure: normalization: max weight must be 0");
    SpacePtr anchor = atoms[0].space();
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      if (atoms[j].space() != anchor) throw invalid_input("MetaMeasure: atoms on different spaces");
      std::size_t hit = atoms_.size();
      for (std::size_t k = 0; k < atoms_.size(); ++k)
        if (measures_equal(atoms_[k], atoms[j], atom_match_tol)) {
          hit = k;
          break;
        }
      if (hit == atoms_.size()) {
        atoms_.push_back(std::move(atoms[j]));
        w_.push_back(weights[j]);
      } else {
        w_[hit] = oplus(w_[hit], weights[j]);
      }
    }
  }

  static MetaMeasure dirac(IdempotentMeasure mu) {
    std::vector<IdempotentMeasure> a;
    a.push_back(std::move(mu));
    return MetaMeasure(std::move(a), {Scalar(0.0)});
  }

  std::size_t size() const { return atoms_.size(); }
  const IdempotentMeasure& atom(std::size_t j) const { return atoms_[j]; }
  Scalar weight(std::size_t j) const { return w_[j]; }
  const std::vector<IdempotentMeasure>& atoms() const { return atoms_; }
  const std::vector<Scalar>& weights() const { return w_; }
  const SpacePtr& space() const { return atoms_[0].space(); }

 private:
  std::vector<IdempotentMeasure> atoms_;
  std::vector<Scalar> w_;
};

// Unordered equality of level-2 measures: same atom set (within tol) with
// matching weights.
inline bool metas_equal(const MetaMeasure& a, const MetaMeasure& b, double tol = 0.0) {
  if (a.size() != b.size()) return false;
  double atol = std::max(tol, 0.0);
  std::vector<bool> used(b.size(), false);
  for (std::size_t j = 0; j < a.size(); ++j) {
    bool found = false;
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (used[k]) continue;
      if (!measures_equal(a.atom(j), b.atom(k), std::max(atol, MetaMeasure::atom_match_tol))) continue;
      if (tol == 0.0 ? !(a.weight(j) == b.weight(k)) : !approx_equal(a.weight(j), b.weight(k), tol)) continue;
      used[k] = true;
      found = true;
      break;
    }
    if (!found) return false;
  }
  return true;
}

// Canonical weight grid for witness searches on a ground space: 0, the
// negated pairwise distances (descending), and -Inf. On grid spaces this
// supplies every shift needed to decompose an interior point.
inline std::vector<Scalar> default_weight_grid(const GroundSpace& sp) {
  std::vector<double> ds;
  for (std::size_t i = 0; i < sp.size(); ++i)
    for (std::size_t j = i + 1; j < sp.size(); ++j) ds.push_back(-sp.distance(i, j));
  ds.push_back(0.0);
  std::sort(ds.begin(), ds.end(), std::greater<double>());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  std::vector<Scalar> grid;
  grid.reserve(ds.size() + 1);
  for (double d : ds) grid.push_back(Scalar(d));
  grid.push_back(Scalar::bottom());
  return grid;
}

}  // namespace tropibary
