#pragma once

// Seeded self-check battery behind the `verify` subcommand: every algebraic
// law, metric axiom, certified bound, and format contract the library
// relies on, exercised on deterministic random data. Each check is
// independent; a throw inside a check marks it failed instead of aborting
// the battery.

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tropibary/bundlecheck.hpp"
#include "tropibary/document.hpp"
#include "tropibary/oracle.hpp"
#include "tropibary/report.hpp"
#include "tropibary/sampling.hpp"

namespace tropibary {

namespace detail {

struct Checker {
  bool ok = true;
  std::string note;

  void that(bool cond, const char* tag) {
    if (!cond && ok) {
      ok = false;
      note = tag;
    }
  }
};

inline Scalar random_scalar(Rng& rng) {
  return rng.chance(0.2) ? Scalar::bottom() : Scalar(8.0 * rng.dyadic_unit() - 4.0);
}

}  // namespace detail

inline std::vector<CheckResult> run_verify_battery(std::uint64_t seed) {
  std::vector<CheckResult> out;
  auto run = [&](const char* name, std::uint64_t salt,
                 const std::function<std::pair<bool, std::string>(Rng&)>& fn) {
    Rng rng(seed * 1000003 + salt);
    CheckResult r;
    r.name = name;
    try {
      auto [ok, detail] = fn(rng);
      r.pass = ok;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
  };

  run("maxplus.semiring_laws", 1, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    Scalar zero(0.0), bot = Scalar::bottom();
    for (int k = 0; k < 200; ++k) {
      Scalar a = detail::random_scalar(rng), b = detail::random_scalar(rng), d = detail::random_scalar(rng);
      c.that(oplus(a, b) == oplus(b, a), "oplus commutative");
      c.that(oplus(oplus(a, b), d) == oplus(a, oplus(b, d)), "oplus associative");
      c.that(odot(a, b) == odot(b, a), "odot commutative");
      c.that(odot(odot(a, b), d) == odot(a, odot(b, d)), "odot associative");
      c.that(odot(a, oplus(b, d)) == oplus(odot(a, b), odot(a, d)), "odot distributes");
      c.that(oplus(a, bot) == a, "bottom neutral for oplus");
      c.that(odot(a, zero) == a, "zero neutral for odot");
      c.that(odot(a, bot) == bot, "bottom absorbing");
      c.that(oplus(a, a) == a, "oplus idempotent");
    }
    return {c.ok, c.ok ? "200 triples" : c.note};
  });

  run("maxplus.order_and_rho", 2, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    for (int k = 0; k < 200; ++k) {
      Scalar a = detail::random_scalar(rng), b = detail::random_scalar(rng), d = detail::random_scalar(rng);
      c.that((oplus(a, b) == b) == (a <= b), "order agrees with oplus");
      c.that(rho_metric(a, a) == 0.0, "rho reflexive");
      c.that(rho_metric(a, b) == rho_metric(b, a), "rho symmetric");
      c.that(rho_metric(a, d) <= rho_metric(a, b) + rho_metric(b, d) + 1e-13, "rho triangle");
    }
    c.that(rho_metric(Scalar::bottom(), Scalar(0.0)) == 1.0, "rho(-Inf, 0) = 1");
    return {c.ok, c.ok ? "200 triples" : c.note};
  });

  run("maxplus.format_roundtrip", 3, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    c.that(parse_scalar(format_scalar(Scalar::bottom())) == Scalar::bottom(), "-Inf roundtrip");
    for (int k = 0; k < 200; ++k) {
      Scalar a = rng.chance(0.5) ? Scalar(rng.unit() * 100.0 - 50.0) : detail::random_scalar(rng);
      c.that(parse_scalar(format_scalar(a)) == a, "roundtrip is exact");
    }
    return {c.ok, c.ok ? "201 values" : c.note};
  });

  run("space.combination_normalization", 4, [](Rng&) -> std::pair<bool, std::string> {
    detail::Checker c;
    std::vector<Point> pts{point({0.0, 1.0}), point({3.0, 0.0})};
    std::vector<Scalar> bad{Scalar(-1.0), Scalar(-2.0)};
    try {
      combine_points(pts, bad);
      c.that(false, "unnormalized weights accepted");
    } catch (const invalid_input&) {
    }
    std::vector<Scalar> good{Scalar(-1.0), Scalar(0.0)};
    Point p = combine_points(pts, good);
    c.that(approx_equal(p, point({3.0, 0.0}), 0.0), "combination value");
    return {c.ok, c.note};
  });

  run("space.residuation_vs_grid", 5, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    std::vector<Scalar> levels{Scalar(0.0), Scalar(-0.5), Scalar(-1.0), Scalar(-1.5), Scalar(-2.0),
                               Scalar::bottom()};
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<Point> gens;
      for (int g = 0; g < 3; ++g)
        gens.push_back(Point{Scalar(4.0 * rng.dyadic_unit()), Scalar(4.0 * rng.dyadic_unit()),
                             Scalar(4.0 * rng.dyadic_unit())});
      TropicalHull hull{PointConfig(gens)};
      auto tuples = normalized_grid_weights(levels, gens.size());
      for (const auto& w : tuples) {
        Point p = combine_points(hull.generators.points(), w);
        c.that(hull_membership(hull, p).member, "exact combination is a member");
        c.that(grid_hull_member(hull, p, tuples, 1e-9), "grid oracle finds the combination");
      }
      Point outside = combine_points(hull.generators.points(), tuples[0]);
      double top = -1e300;
      for (const Point& g : gens) top = std::max(top, g[0].value());
      outside[0] = Scalar(top + 0.5);
      c.that(!hull_membership(hull, outside).member, "point above generator max is outside");
      c.that(!grid_hull_member(hull, outside, tuples, 1e-9), "grid oracle agrees outside");
    }
    return {c.ok, c.ok ? "10 hulls" : c.note};
  });

  run("space.membership_witness", 6, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    std::vector<Scalar> levels{Scalar(0.0),  Scalar(-0.5), Scalar(-1.0), Scalar(-1.5),
                               Scalar(-2.0), Scalar(-3.0), Scalar::bottom()};
    std::vector<Point> gens{point({0.0, 1.0}), point({3.0, 0.0})};
    TropicalHull hull{PointConfig(gens)};
    auto tuples = normalized_grid_weights(levels, gens.size());
    std::vector<Point> sample_pts;
    for (const auto& w : tuples) sample_pts.push_back(combine_points(hull.generators.points(), w));
    PointConfig sample(sample_pts);
    std::size_t found = 0;
    for (const Point& x : sample_pts) {
      auto w1 = b_membership_witness(hull, x, sample, levels);
      auto w2 = b_membership_witness(hull, x, sample, levels);
      c.that(w1.has_value() == w2.has_value(), "witness search deterministic");
      if (!w1) continue;
      ++found;
      c.that(w1->y == w2->y && w1->z == w2->z && w1->weight == w2->weight, "witness search deterministic");
      c.that(w1->weight.is_finite(), "witness weight finite");
      c.that(approx_equal(oplus(odot(w1->weight, sample[w1->y]), sample[w1->z]), x, 1e-12),
             "witness recombines to x");
    }
    c.that(found > 0, "witnesses found for interior points");
    (void)rng;
    return {c.ok, c.ok ? std::to_string(found) + " witnesses" : c.note};
  });

  run("measure.normalization_rejected", 7, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    SpacePtr sp = random_metric_space(rng, 4);
    try {
      IdempotentMeasure(sp, {Scalar(-1.0), Scalar(-2.0), Scalar(-0.5), Scalar::bottom()});
      c.that(false, "max below 0 accepted");
    } catch (const invalid_input&) {
    }
    try {
      IdempotentMeasure(sp, {Scalar(0.5), Scalar(0.0), Scalar(0.0), Scalar(0.0)});
      c.that(false, "positive weight accepted");
    } catch (const invalid_input&) {
    }
    return {c.ok, c.note};
  });

  run("measure.functional_laws", 8, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    for (int k = 0; k < 50; ++k) {
      SpacePtr sp = random_metric_space(rng, 5);
      IdempotentMeasure mu = random_measure(rng, sp);
      std::vector<double> f(sp->size()), g(sp->size());
      for (auto& v : f) v = 8.0 * rng.dyadic_unit() - 4.0;
      for (auto& v : g) v = 8.0 * rng.dyadic_unit() - 4.0;
      std::vector<double> fg(sp->size());
      for (std::size_t i = 0; i < f.size(); ++i) fg[i] = std::max(f[i], g[i]);
      c.that(evaluate(mu, fg) == std::max(evaluate(mu, f), evaluate(mu, g)), "mu(f oplus g)");
      double cshift = rng.dyadic_unit();
      std::vector<double> fc(f);
      for (auto& v : fc) v += cshift;
      c.that(evaluate(mu, fc) == evaluate(mu, f) + cshift, "mu(c odot f)");
      c.that(evaluate(mu, constant_function(*sp, cshift)) == cshift, "mu(c) = c");
    }
    return {c.ok, c.ok ? "50 instances" : c.note};
  });

  run("measure.pushforward_functorial", 9, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    for (int k = 0; k < 50; ++k) {
      SpacePtr a = random_metric_space(rng, 4), b = random_metric_space(rng, 5), d = random_metric_space(rng, 3);
      PointMap f = random_point_map(rng, a, b), g = random_point_map(rng, b, d);
      std::vector<std::size_t> comp(a->size());
      for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = g.target[f.target[i]];
      PointMap gf{a, d, comp};
      IdempotentMeasure mu = random_measure(rng, a);
      c.that(measures_equal(pushforward(gf, mu), pushforward(g, pushforward(f, mu))), "functoriality");
      std::vector<std::size_t> ident(a->size());
      for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = i;
      c.that(measures_equal(pushforward(PointMap{a, a, ident}, mu), mu), "identity map");
    }
    return {c.ok, c.ok ? "50 instances" : c.note};
  });

  run("measure.decompose_reconstructs", 10, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    for (int k = 0; k < 100; ++k) {
      SpacePtr sp = random_metric_space(rng, 5);
      IdempotentMeasure mu = random_nondirac_measure(rng, sp);
      auto supp = mu.support();
      std::vector<bool> block2(sp->size(), false);
      std::size_t cut = 1 + rng.index(supp.size() - 1);
      for (std::size_t j = 0; j < cut; ++j) block2[supp[j]] = true;
      Decomposition dec = decompose(mu, block2);
      const IdempotentMeasure parts[2] = {dec.mu1, dec.mu2};
      const Scalar ws[2] = {dec.a1, dec.a2};
      c.that(measures_equal(combine_measures(parts, ws), mu), "exact reconstruction");
      c.that(!measures_equal(dec.mu1, mu) && !measures_equal(dec.mu2, mu), "proper parts");
    }
    return {c.ok, c.ok ? "100 instances" : c.note};
  });

  run("meta.atom_dedup", 11, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    SpacePtr sp = random_metric_space(rng, 4);
    IdempotentMeasure mu = random_measure(rng, sp), nu = random_nondirac_measure(rng, sp);
    MetaMeasure M({mu, nu, mu}, {Scalar(-1.0), Scalar(0.0), Scalar(-0.25)});
    c.that(M.size() == (measures_equal(mu, nu, MetaMeasure::atom_match_tol) ? 1 : 2), "duplicates merged");
    for (std::size_t j = 0; j < M.size(); ++j)
      if (measures_equal(M.atom(j), mu, MetaMeasure::atom_match_tol) &&
          !measures_equal(mu, nu, MetaMeasure::atom_match_tol))
        c.that(M.weight(j) == Scalar(-0.25), "merged weight is the max");
    return {c.ok, c.note};
  });

  run("metric.dn_axioms", 12, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    for (int k = 0; k < 40; ++k) {
      SpacePtr sp = random_metric_space(rng, 5);
      IdempotentMeasure a = random_measure(rng, sp), b = random_measure(rng, sp), d = random_measure(rng, sp);
      for (std::size_t n : {std::size_t(1), std::size_t(2), std::size_t(5)}) {
        double ab = dn_exact(a, b, n), ba = dn_exact(b, a, n);
        c.that(ab == ba, "symmetry");
        c.that(ab >= 0.0 && ab <= sp->diameter() + 1e-12, "range [0, diam]");
        c.that(dn_exact(a, a, n) == 0.0, "identity");
        c.that(dn_exact(a, d, n) <= ab + dn_exact(b, d, n) + 1e-12, "triangle");
      }
    }
    return {c.ok, c.ok ? "40 triples" : c.note};
  });

  run("metric.dn_vs_grid_oracle", 13, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    double step = 0.25;
    for (int k = 0; k < 6; ++k) {
      SpacePtr sp = random_metric_space(rng, 3);
      IdempotentMeasure a = random_measure(rng, sp), b = random_measure(rng, sp);
      for (std::size_t n : {std::size_t(1), std::size_t(2)}) {
        double exact = dn_exact(a, b, n), grid = dn_grid_oracle(a, b, n, step);
        c.that(exact >= grid - 1e-12, "closed form dominates every admissible function");
        c.that(exact <= grid + step + 1e-9, "closed form within one grid step");
      }
    }
    return {c.ok, c.ok ? "6 pairs" : c.note};
  });

  run("metric.dirac_isometry", 14, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    for (int k = 0; k < 20; ++k) {
      SpacePtr sp = random_metric_space(rng, 5);
      std::size_t x = rng.index(5), y = rng.index(5);
      auto dx = IdempotentMeasure::dirac(sp, x), dy = IdempotentMeasure::dirac(sp, y);
      for (std::size_t n : {std::size_t(1), std::size_t(3)})
        c.that(std::abs(dn_exact(dx, dy, n) - sp->distance(x, y)) <= 1e-12, "dn(delta, delta) = d");
      DistanceResult r = dI(dx, dy, 1e-8);
      c.that(std::abs(r.value - sp->distance(x, y)) <= r.error_bound + 1e-12, "dI isometry");
    }
    return {c.ok, c.ok ? "20 pairs" : c.note};
  });

  run("metric.dI_certified", 15, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    for (int k = 0; k < 20; ++k) {
      SpacePtr sp = random_metric_space(rng, 4);
      IdempotentMeasure a = random_measure(rng, sp), b = random_measure(rng, sp);
      DistanceResult coarse = dI(a, b, 1e-3), fine = dI(a, b, 1e-9);
      c.that(coarse.error_bound <= 1e-3 && fine.error_bound <= 1e-9, "bound within tolerance");
      c.that(fine.value + fine.error_bound >= coarse.value - 1e-15, "intervals consistent");
      c.that(coarse.value + coarse.error_bound >= fine.value - 1e-15, "intervals consistent");
      c.that(dI(a, a, 1e-9).value == 0.0, "dI identity");
    }
    return {c.ok, c.ok ? "20 pairs" : c.note};
  });

  run("metric.meta_dI_certified", 16, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    for (int k = 0; k < 10; ++k) {
      SpacePtr sp = random_metric_space(rng, 4);
      MetaMeasure A = random_meta(rng, sp, 3), B = random_meta(rng, sp, 2);
      DistanceResult ab = meta_dI(A, B, 1e-4), ba = meta_dI(B, A, 1e-4);
      c.that(std::abs(ab.value - ba.value) <= ab.error_bound + ba.error_bound + 1e-12, "symmetry within bounds");
      DistanceResult aa = meta_dI(A, A, 1e-4);
      c.that(aa.value <= aa.error_bound + 1e-12, "self distance within bound");
    }
    return {c.ok, c.ok ? "10 pairs" : c.note};
  });

  run("barycenter.dirac_identity", 17, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    std::size_t hits = 0;
    while (hits < 50) {
      SpacePtr sp = random_metric_space(rng, 5);
      if (!sp->has_coords()) continue;
      ++hits;
      std::size_t i = rng.index(sp->size());
      c.that(approx_equal(barycenter(*sp, IdempotentMeasure::dirac(sp, i)), sp->coords()[i], 0.0),
             "b(delta_x) = x");
    }
    return {c.ok, c.ok ? "50 spaces" : c.note};
  });

  run("barycenter.affine", 18, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    std::vector<Point> pts;
    for (int g = 0; g < 5; ++g)
      pts.push_back(Point{Scalar(4.0 * rng.dyadic_unit()), Scalar(4.0 * rng.dyadic_unit())});
    std::vector<Point> distinct;
    for (const Point& p : pts) {
      bool dup = false;
      for (const Point& q : distinct) dup = dup || approx_equal(p, q, 1e-15);
      if (!dup) distinct.push_back(p);
    }
    if (distinct.size() < 2) return {true, "degenerate draw skipped"};
    SpacePtr sp = GroundSpace::from_coords(PointConfig(distinct));
    for (int k = 0; k < 50; ++k) {
      IdempotentMeasure mu = random_measure(rng, sp), nu = random_measure(rng, sp);
      Scalar a(rng.dyadic_weight());
      const IdempotentMeasure parts[2] = {mu, nu};
      const Scalar ws[2] = {Scalar(0.0), a};
      IdempotentMeasure mix = combine_measures(parts, ws);
      Point want = oplus(barycenter(*sp, mu), odot(a, barycenter(*sp, nu)));
      c.that(approx_equal(barycenter(*sp, mix), want, 0.0), "b is max-plus affine");
      MetaMeasure M({mu, nu}, {Scalar(0.0), a});
      c.that(approx_equal(barycenter(*sp, barycenter_meta(M)), want, 0.0), "level-2 agrees");
    }
    return {c.ok, c.ok ? "50 instances" : c.note};
  });

  run("barycenter.extremal_bruteforce", 19, [](Rng&) -> std::pair<bool, std::string> {
    detail::Checker c;
    SpacePtr sp = GroundSpace::interval_grid(3);
    std::vector<Scalar> levels{Scalar(0.0), Scalar(-0.5), Scalar(-1.0), Scalar::bottom()};
    auto ms = all_grid_measures(sp, levels);
    std::size_t diracs = 0;
    for (const auto& mu : ms) {
      bool rep = has_nontrivial_rep_bruteforce(mu, ms, levels);
      if (mu.is_dirac()) {
        ++diracs;
        c.that(!rep, "Dirac has no nontrivial representation");
      } else {
        c.that(rep, "non-Dirac decomposes");
        auto dec = nontrivial_rep_by_decompose(mu);
        c.that(dec.has_value(), "decomposition exists");
        if (dec) {
          const IdempotentMeasure parts[2] = {dec->mu1, dec->mu2};
          const Scalar ws[2] = {dec->a1, dec->a2};
          c.that(measures_equal(combine_measures(parts, ws), mu), "decomposition reconstructs");
        }
      }
    }
    c.that(diracs == sp->size(), "all Diracs enumerated");
    return {c.ok, c.ok ? std::to_string(ms.size()) + " measures" : c.note};
  });

  run("barycenter.fiber_witness", 20, [](Rng&) -> std::pair<bool, std::string> {
    detail::Checker c;
    SpacePtr sp = GroundSpace::interval_grid(11);
    EmbeddedSpace es(sp);
    auto grid = default_weight_grid(*sp);
    std::size_t found = 0;
    for (std::size_t i = 0; i < sp->size(); ++i) {
      const Point& x = sp->coords()[i];
      auto w = fiber_witness(es, x, grid);
      c.that(w.has_value(), "every grid point has a non-Dirac fiber witness");
      if (w) {
        ++found;
        c.that(!w->is_dirac(), "witness is non-Dirac");
        c.that(approx_equal(barycenter(es, *w), x, 1e-12), "witness lies in the fiber");
      }
      auto ex = extremal_witness(sp->coords(), x, grid);
      double xv = x[0].value();
      if (xv == 0.0 || xv == 1.0)
        c.that(!ex.has_value(), "extremal witness is NONE at the endpoints");
      else
        c.that(ex.has_value(), "extremal witness exists off the endpoints");
    }
    return {c.ok, c.ok ? std::to_string(found) + " witnesses" : c.note};
  });

  run("bundle.shift_bound", 21, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    for (int k = 0; k < 25; ++k) {
      SpacePtr sp = random_metric_space(rng, 4);
      double eps = 0.05 + rng.dyadic_unit();
      Scalar t = shift_bound(eps, sp->diameter());
      c.that(!(t > Scalar(0.0)), "shift is <= 0");
      IdempotentMeasure mu = random_measure(rng, sp), kappa = random_measure(rng, sp);
      const IdempotentMeasure parts[2] = {mu, kappa};
      const Scalar ws[2] = {Scalar(0.0), t};
      IdempotentMeasure shifted = combine_measures(parts, ws);
      DistanceResult r = dI(shifted, mu, eps / 8.0);
      c.that(r.value + r.error_bound <= eps, "displacement under epsilon");
    }
    return {c.ok, c.ok ? "25 instances" : c.note};
  });

  run("bundle.mr_contract", 22, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    for (int k = 0; k < 8; ++k) {
      SpacePtr sp = random_metric_space(rng, 4);
      IdempotentMeasure kappa = random_nondirac_measure(rng, sp);
      MetaMeasure M = random_meta_with_barycenter(rng, kappa);
      c.that(measures_equal(barycenter_meta(M), kappa), "sample hits the prescribed barycenter");
      double eps = 0.25;
      Scalar t = shift_bound(eps, sp->diameter());
      MetaMeasure g = mr_g(M, t), h = mr_h(M, t);
      c.that(measures_equal(barycenter_meta(g), kappa), "g preserves the barycenter");
      c.that(measures_equal(barycenter_meta(h), kappa), "h preserves the barycenter");
      bool gc = true;
      for (const auto& atom : g.atoms()) gc = gc && !atom.is_dirac();
      c.that(gc, "g image avoids Dirac atoms");
      bool hc = false;
      for (const auto& atom : h.atoms()) hc = hc || atom.is_dirac();
      c.that(hc, "h image contains a Dirac atom");
      c.that(metas_equal(mr_g(M, Scalar::bottom()), M), "g at -Inf is the identity");
      c.that(metas_equal(mr_h(M, Scalar::bottom()), M), "h at -Inf is the identity");
    }
    return {c.ok, c.ok ? "8 instances" : c.note};
  });

  run("bundle.interval_contract", 23, [](Rng& rng) -> std::pair<bool, std::string> {
    detail::Checker c;
    SpacePtr sp = GroundSpace::interval_grid(21);
    double eps = 0.2;
    double p = choose_interval_p(*sp, eps);
    c.that(p > 2.0 / 3.0 && p < 1.0 && p >= 1.0 - 0.5 * eps, "p selection in range");
    for (int k = 0; k < 30; ++k) {
      IdempotentMeasure nu = random_interval_measure(rng, sp);
      double beta = detail::beta_value(nu);
      IdempotentMeasure l = interval_l(nu, p);
      c.that(std::abs(detail::beta_value(l) - beta) <= 1e-12, "l preserves the barycenter");
      c.that(measures_equal(interval_l(nu, 1.0), nu), "l at 1 is the identity");
      IdempotentMeasure h = interval_h0(nu, Scalar(-2.0));
      c.that(std::abs(detail::beta_value(h) - beta) <= 1e-12, "h0 preserves the barycenter");
      auto i1 = sp->find_point(Point{Scalar(1.0)});
      c.that(l.weight(*i1).is_bottom(), "1 outside the l image support");
      c.that(h.weight(*i1).is_finite(), "1 inside the h0 image support");
    }
    return {c.ok, c.ok ? "30 instances" : c.note};
  });

  run("bundle.tw_mr_battery", 24, [](Rng& rng) -> std::pair<bool, std::string> {
    SpacePtr sp = random_metric_space(rng, 4);
    std::vector<IdempotentMeasure> gens;
    for (int g = 0; g < 3; ++g) gens.push_back(random_nondirac_measure(rng, sp));
    std::vector<MetaMeasure> samples;
    for (int s = 0; s < 10; ++s) {
      auto cw = random_combination_weights(rng, gens.size());
      IdempotentMeasure kappa = combine_measures(gens, cw);
      samples.push_back(random_meta_with_barycenter(rng, kappa));
    }
    TWReport rep = tw_verify_mr(samples, gens, 0.5);
    return {rep.all_pass && rep.fiber_preserved && rep.images_disjoint,
            std::to_string(rep.samples) + " samples, " + std::to_string(rep.failures) + " failures"};
  });

  run("bundle.tw_interval_battery", 25, [](Rng& rng) -> std::pair<bool, std::string> {
    SpacePtr sp = GroundSpace::interval_grid(41);
    std::vector<IdempotentMeasure> samples;
    for (int s = 0; s < 20; ++s) samples.push_back(random_interval_measure(rng, sp));
    TWReport rep = tw_verify_interval(samples, 0.2);
    return {rep.all_pass && rep.fiber_preserved && rep.images_disjoint,
            std::to_string(rep.samples) + " samples, " + std::to_string(rep.failures) + " failures"};
  });

  run("document.roundtrip", 26, [](Rng&) -> std::pair<bool, std::string> {
    detail::Checker c;
    std::string text = R"({
      "version": "tropibary/1",
      "space": {"labels": ["a", "b"], "points": [[0, 1], [3, 0]], "metric": "sup"},
      "measures": {"m1": {"weights": [0, -2]}, "m2": {"weights": ["-Inf", 0]}},
      "meta_measures": {"M": {"atoms": ["m1", "m2"], "weights": [0, -1]}}
    })";
    Document doc = parse_document(text);
    c.that(doc.space->size() == 2 && doc.space->distance(0, 1) == 3.0, "space parsed");
    c.that(doc.measure("m1").weight(1) == Scalar(-2.0), "weights parsed");
    c.that(doc.measure("m2").weight(0).is_bottom(), "-Inf parsed");
    c.that(doc.meta("M").meta.size() == 2, "meta parsed");
    Document again = parse_document(serialize_document(doc));
    c.that(serialize_document(again) == serialize_document(doc), "serialization is stable");
    c.that(again.measure("m1").weights() == doc.measure("m1").weights() &&
               again.measure("m2").weights() == doc.measure("m2").weights(),
           "measures roundtrip");
    for (const char* bad :
         {R"({"version": "tropibary/2", "space": {"metric": "sup"}})", R"({"version": "tropibary/1"})",
          R"({not json)",
          R"({"version": "tropibary/1", "space": {"points": [[0]], "metric": "sup"}, "measures": {"m": {"weights": [0, 0]}}})"}) {
      try {
        parse_document(bad);
        c.that(false, "malformed document accepted");
      } catch (const invalid_input&) {
      }
    }
    return {c.ok, c.note};
  });

  run("report.deterministic", 27, [&](Rng&) -> std::pair<bool, std::string> {
    auto once = [&]() {
      Rng r(seed + 99);
      SpacePtr sp = random_metric_space(r, 4);
      std::vector<IdempotentMeasure> gens;
      for (int g = 0; g < 2; ++g) gens.push_back(random_nondirac_measure(r, sp));
      std::vector<MetaMeasure> samples;
      for (int s = 0; s < 4; ++s) {
        auto cw = random_combination_weights(r, gens.size());
        samples.push_back(random_meta_with_barycenter(r, combine_measures(gens, cw)));
      }
      TWReport rep = tw_verify_mr(samples, gens, 0.5);
      return emit_text(to_report(rep)) + emit_json(to_report(rep));
    };
    std::string a = once(), b = once();
    return {a == b, a == b ? "byte-identical reruns" : "rerun output differs"};
  });

  return out;
}

}  // namespace tropibary
