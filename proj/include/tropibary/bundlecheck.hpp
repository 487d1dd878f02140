#pragma once

// Fiber-preserving epsilon-deformations of the barycenter map and the
// harnesses that certify their contracts: barycenter preservation, certified
// displacement below epsilon, and image disjointness via support
// certificates (never via pairwise comparison).

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "tropibary/barycenter.hpp"
#include "tropibary/metric.hpp"

namespace tropibary {

// Shift depth guaranteeing d_I(mu oplus t odot kappa, mu) < epsilon for any
// measures mu, kappa on a space of the given diameter: with t = -N*diam,
// every term of degree n <= N vanishes (t + n*diam <= 0) and the tail is at
// most diam * 2^-N <= epsilon/2. N = max(0, ceil(log2(2*diam/epsilon))),
// computed by an exact integer loop; N = 0 is correct when epsilon >=
// 2*diam (the tail bound alone suffices) and keeps t <= 0.
inline Scalar shift_bound(double epsilon, double diam) {
  if (!(epsilon > 0.0)) throw invalid_input("shift_bound: epsilon must be positive");
  if (!(diam >= 0.0) || !std::isfinite(diam)) throw invalid_input("shift_bound: bad diameter");
  int N = 0;
  while (std::ldexp(diam, -N) > 0.5 * epsilon) {
    ++N;
    if (N > 1024) throw invalid_input("shift_bound: epsilon too small for this diameter");
  }
  return N == 0 ? Scalar(0.0) : Scalar(-(static_cast<double>(N) * diam));
}

// g-deformation: each atom mu_j is replaced by mu_j oplus t odot kappa where
// kappa is the level-2 barycenter; the atom weights are unchanged. The
// barycenter is preserved exactly: the added branch alpha_j + t + rho_kappa
// never exceeds rho_kappa. When kappa is non-Dirac and t is finite, every
// deformed atom's support contains supp(kappa), so the image avoids all
// Dirac measures.
inline MetaMeasure mr_g(const MetaMeasure& M, Scalar t) {
  if (t > Scalar(0.0)) throw invalid_input("mr_g: t must be <= 0");
  IdempotentMeasure kappa = barycenter_meta(M);
  std::vector<IdempotentMeasure> atoms;
  atoms.reserve(M.size());
  const Scalar w2[2] = {Scalar(0.0), t};
  for (std::size_t j = 0; j < M.size(); ++j) {
    const IdempotentMeasure pair[2] = {M.atom(j), kappa};
    atoms.push_back(combine_measures(pair, w2));
  }
  return MetaMeasure(std::move(atoms), M.weights());
}

// h-deformation: M oplus t odot I(delta_X)(kappa), i.e. the Dirac measures
// delta_x for x in supp(kappa) join the atom list at weight t + rho_kappa(x).
// The barycenter is preserved exactly (kappa oplus t odot kappa = kappa).
// When t is finite the image contains a finite-weight Dirac atom.
inline MetaMeasure mr_h(const MetaMeasure& M, Scalar t) {
  if (t > Scalar(0.0)) throw invalid_input("mr_h: t must be <= 0");
  IdempotentMeasure kappa = barycenter_meta(M);
  std::vector<IdempotentMeasure> atoms = M.atoms();
  std::vector<Scalar> weights = M.weights();
  if (t.is_finite()) {
    for (std::size_t x : kappa.support()) {
      atoms.push_back(IdempotentMeasure::dirac(M.space(), x));
      weights.push_back(odot(t, kappa.weight(x)));
    }
  }
  return MetaMeasure(std::move(atoms), std::move(weights));
}

namespace detail {

inline double interval_coord(const GroundSpace& sp, std::size_t i) { return sp.coords()[i][0].value(); }

inline void require_interval_space(const GroundSpace& sp, const char* who) {
  if (!sp.has_coords() || sp.coords().dimension() != 1) throw invalid_input(std::string(who) + ": 1-d grid space required");
  for (std::size_t i = 0; i < sp.size(); ++i) {
    double s = interval_coord(sp, i);
    if (s < -1e-12 || s > 1.0 + 1e-12) throw invalid_input(std::string(who) + ": grid must lie in [0, 1]");
  }
}

inline double beta_value(const IdempotentMeasure& mu) { return barycenter(*mu.space(), mu)[0].value(); }

}  // namespace detail

// Interval deformation l(nu, p): mass strictly below p is kept; the mass on
// [p, 1] collapses onto p with density sigma(p) = max_{s in [p,1]} ((s - p) +
// rho_nu(s)). Preserves the barycenter exactly (sigma(p) + p equals the
// collapsed part's contribution) and l(nu, 1) = nu. Requires beta(nu) <= 2/3
// and p in (2/3, 1]; then sigma(p) < 0 and the density maximum stays below p.
inline IdempotentMeasure interval_l(const IdempotentMeasure& nu, double p) {
  const GroundSpace& sp = *nu.space();
  detail::require_interval_space(sp, "interval_l");
  auto ip = sp.find_point(Point{Scalar(p)});
  if (!ip) throw invalid_input("interval_l: p is not a grid point");
  if (!(p > 2.0 / 3.0) || p > 1.0 + 1e-12) throw invalid_input("interval_l: p must lie in (2/3, 1]");
  if (detail::beta_value(nu) > 2.0 / 3.0 + 1e-12) throw invalid_input("interval_l: barycenter above 2/3");
  std::vector<Scalar> sigma(sp.size(), Scalar::bottom());
  Scalar at_p = Scalar::bottom();
  for (std::size_t i = 0; i < sp.size(); ++i) {
    double s = detail::interval_coord(sp, i);
    if (i == *ip || s >= p) {
      if (nu.weight(i).is_finite()) at_p = oplus(at_p, Scalar((s - p) + nu.weight(i).value()));
    } else {
      sigma[i] = nu.weight(i);
    }
  }
  sigma[*ip] = at_p;
  return IdempotentMeasure(nu.space(), std::move(sigma));
}

// Interval deformation h_0(mu, t) = mu oplus t odot delta_1. Requires t <= -1
// and beta(mu) in [0, 2/3]; then t + 1 <= 0 <= beta(mu), so the barycenter is
// preserved exactly, and 1 enters the support whenever t is finite.
inline IdempotentMeasure interval_h0(const IdempotentMeasure& mu, Scalar t) {
  const GroundSpace& sp = *mu.space();
  detail::require_interval_space(sp, "interval_h0");
  auto i1 = sp.find_point(Point{Scalar(1.0)});
  if (!i1) throw invalid_input("interval_h0: 1 is not a grid point");
  if (t.is_finite() && t.value() > -1.0) throw invalid_input("interval_h0: t must be <= -1");
  double beta = detail::beta_value(mu);
  if (beta < -1e-12 || beta > 2.0 / 3.0 + 1e-12) throw invalid_input("interval_h0: barycenter outside [0, 2/3]");
  const IdempotentMeasure pair[2] = {mu, IdempotentMeasure::dirac(mu.space(), *i1)};
  const Scalar w2[2] = {Scalar(0.0), t};
  return combine_measures(pair, w2);
}

// Smallest grid point p with p >= 1 - epsilon/2, p > 2/3, p < 1. Such a p
// bounds the l-displacement by (1 + ln 2)(1 - p) <= 0.85 * epsilon.
inline double choose_interval_p(const GroundSpace& sp, double epsilon) {
  detail::require_interval_space(sp, "choose_interval_p");
  double target = std::max(1.0 - 0.5 * epsilon, 2.0 / 3.0);
  double best = 2.0;
  for (std::size_t i = 0; i < sp.size(); ++i) {
    double s = detail::interval_coord(sp, i);
    if (s >= target && s > 2.0 / 3.0 && s < 1.0) best = std::min(best, s);
  }
  if (best > 1.0) throw invalid_input("choose_interval_p: grid too coarse for epsilon");
  return best;
}

struct TwSampleRecord {
  std::size_t index = 0;
  bool ok = false;
  bool applicable = true;      // mr mode: barycenter non-Dirac, so the disjointness certificates apply
  bool fiber_preserved = false;
  bool g_cert = false;         // mr: image avoids Dirac atoms; interval: 1 outside the support
  bool h_cert = false;         // mr: image contains a Dirac atom; interval: 1 in the support
  bool beta_in_k = true;       // mr mode only: barycenter stays a member of K
  bool l1_identity = true;     // interval mode only: l(nu, 1) = nu bit-exact
  double g_displacement = 0.0, g_bound = 0.0;
  double h_displacement = 0.0, h_bound = 0.0;
  std::string note;
};

struct TWReport {
  std::string mode;
  double epsilon = 0.0;
  Scalar shift;
  double p = 0.0;  // interval mode
  std::size_t samples = 0, applicable = 0, failures = 0;
  bool fiber_preserved = true;
  bool images_disjoint = true;
  bool disjointness_vacuous = false;
  double g_close = 0.0, g_close_bound = 0.0;
  double h_close = 0.0, h_close_bound = 0.0;
  bool all_pass = true;
  std::vector<TwSampleRecord> details;
};

namespace detail {

inline void fold_sample(TWReport& rep, TwSampleRecord rec) {
  rep.samples += 1;
  if (rec.applicable) rep.applicable += 1;
  if (!rec.ok) rep.failures += 1;
  rep.fiber_preserved = rep.fiber_preserved && rec.fiber_preserved;
  if (rec.applicable) rep.images_disjoint = rep.images_disjoint && rec.g_cert && rec.h_cert;
  if (rec.g_displacement > rep.g_close) {
    rep.g_close = rec.g_displacement;
    rep.g_close_bound = rec.g_bound;
  }
  if (rec.h_displacement > rep.h_close) {
    rep.h_close = rec.h_displacement;
    rep.h_close_bound = rec.h_bound;
  }
  rep.all_pass = rep.all_pass && rec.ok;
  rep.details.push_back(std::move(rec));
}

}  // namespace detail

// Verifies the meta-level deformation pair on the given samples. K is the
// tropical hull of the generator densities; every sample's barycenter is
// tested for membership. Displacements are measured in the level-2 metric
// with certified bounds. Per-sample precondition violations are recorded,
// not fatal.
inline TWReport tw_verify_mr(const std::vector<MetaMeasure>& samples,
                             const std::vector<IdempotentMeasure>& k_generators, double epsilon,
                             double dist_tol = 0.0) {
  if (!(epsilon > 0.0)) throw invalid_input("tw_verify_mr: epsilon must be positive");
  if (samples.empty()) throw invalid_input("tw_verify_mr: no samples");
  if (k_generators.empty()) throw invalid_input("tw_verify_mr: no generators");
  const SpacePtr& sp = samples[0].space();
  for (const auto& g : k_generators)
    if (g.space() != sp) throw invalid_input("tw_verify_mr: generator space mismatch");
  if (dist_tol <= 0.0) dist_tol = std::max(1e-9, epsilon / 64.0);
  std::vector<Point> gen_pts;
  gen_pts.reserve(k_generators.size());
  for (const auto& g : k_generators) gen_pts.emplace_back(g.weights());
  TropicalHull k_hull{PointConfig(std::move(gen_pts))};
  TWReport rep;
  rep.mode = "mr";
  rep.epsilon = epsilon;
  rep.shift = shift_bound(epsilon, sp->diameter());
  for (std::size_t s = 0; s < samples.size(); ++s) {
    TwSampleRecord rec;
    rec.index = s;
    try {
      const MetaMeasure& M = samples[s];
      if (M.space() != sp) throw invalid_input("sample space mismatch");
      IdempotentMeasure kappa = barycenter_meta(M);
      rec.applicable = !kappa.is_dirac();
      MetaMeasure g = mr_g(M, rep.shift);
      MetaMeasure h = mr_h(M, rep.shift);
      rec.fiber_preserved = measures_equal(barycenter_meta(g), kappa, 1e-12) &&
                            measures_equal(barycenter_meta(h), kappa, 1e-12);
      rec.g_cert = true;
      for (std::size_t j = 0; j < g.size(); ++j)
        if (g.weight(j).is_finite()) rec.g_cert = rec.g_cert && !g.atom(j).is_dirac();
      rec.h_cert = false;
      for (std::size_t j = 0; j < h.size(); ++j)
        if (h.weight(j).is_finite()) rec.h_cert = rec.h_cert || h.atom(j).is_dirac();
      rec.beta_in_k = hull_membership(k_hull, Point(kappa.weights())).member;
      DistanceResult gd = meta_dI(g, M, dist_tol);
      DistanceResult hd = meta_dI(h, M, dist_tol);
      rec.g_displacement = gd.value;
      rec.g_bound = gd.error_bound;
      rec.h_displacement = hd.value;
      rec.h_bound = hd.error_bound;
      bool disp_ok = gd.value + gd.error_bound <= epsilon && hd.value + hd.error_bound <= epsilon;
      rec.ok = rec.fiber_preserved && disp_ok && rec.beta_in_k &&
               (!rec.applicable || (rec.g_cert && rec.h_cert));
      if (!rec.applicable) rec.note = "barycenter is Dirac: disjointness certificates vacuous";
    } catch (const error& e) {
      rec.ok = false;
      rec.applicable = false;
      rec.note = e.what();
    }
    detail::fold_sample(rep, std::move(rec));
  }
  rep.disjointness_vacuous = rep.applicable == 0;
  return rep;
}

// Verifies the interval deformation pair (l(., p), h_0) on measures over a
// [0, 1] grid with barycenter <= 2/3.
inline TWReport tw_verify_interval(const std::vector<IdempotentMeasure>& samples, double epsilon,
                                   double dist_tol = 0.0) {
  if (!(epsilon > 0.0)) throw invalid_input("tw_verify_interval: epsilon must be positive");
  if (samples.empty()) throw invalid_input("tw_verify_interval: no samples");
  const SpacePtr& sp = samples[0].space();
  detail::require_interval_space(*sp, "tw_verify_interval");
  auto i1 = sp->find_point(Point{Scalar(1.0)});
  if (!i1) throw invalid_input("tw_verify_interval: 1 is not a grid point");
  if (dist_tol <= 0.0) dist_tol = std::max(1e-9, epsilon / 64.0);
  TWReport rep;
  rep.mode = "interval";
  rep.epsilon = epsilon;
  rep.p = choose_interval_p(*sp, epsilon);
  Scalar raw = shift_bound(epsilon, sp->diameter());
  rep.shift = Scalar(std::min(-1.0, raw.value()));
  for (std::size_t s = 0; s < samples.size(); ++s) {
    TwSampleRecord rec;
    rec.index = s;
    try {
      const IdempotentMeasure& nu = samples[s];
      if (nu.space() != sp) throw invalid_input("sample space mismatch");
      double beta = detail::beta_value(nu);
      IdempotentMeasure g0 = interval_l(nu, rep.p);
      IdempotentMeasure h0 = interval_h0(nu, rep.shift);
      rec.fiber_preserved = std::abs(detail::beta_value(g0) - beta) <= 1e-12 &&
                            std::abs(detail::beta_value(h0) - beta) <= 1e-12;
      rec.g_cert = g0.weight(*i1).is_bottom();
      rec.h_cert = h0.weight(*i1).is_finite();
      rec.l1_identity = measures_equal(interval_l(nu, 1.0), nu);
      DistanceResult gd = dI(g0, nu, dist_tol);
      DistanceResult hd = dI(h0, nu, dist_tol);
      rec.g_displacement = gd.value;
      rec.g_bound = gd.error_bound;
      rec.h_displacement = hd.value;
      rec.h_bound = hd.error_bound;
      bool disp_ok = gd.value + gd.error_bound <= epsilon && hd.value + hd.error_bound <= epsilon;
      rec.ok = rec.fiber_preserved && disp_ok && rec.g_cert && rec.h_cert && rec.l1_identity;
    } catch (const error& e) {
      rec.ok = false;
      rec.applicable = false;
      rec.note = e.what();
    }
    detail::fold_sample(rep, std::move(rec));
  }
  rep.disjointness_vacuous = rep.applicable == 0;
  return rep;
}

}  // namespace tropibary
