#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include <tropibary/barycenter.hpp>
#include <tropibary/sampling.hpp>

using namespace tropibary;

namespace {

SpacePtr segment() {
  return GroundSpace::sup_space({"a", "b"}, PointConfig({point({0, 1}), point({3, 0})}));
}

SpacePtr dyadic_plane(Rng& rng, std::size_t n) {
  std::vector<Point> pts;
  while (pts.size() < n) {
    Point p{Scalar(4.0 * rng.dyadic_unit()), Scalar(4.0 * rng.dyadic_unit())};
    bool dup = false;
    for (const Point& q : pts) dup = dup || approx_equal(p, q, 1e-15);
    if (!dup) pts.push_back(std::move(p));
  }
  return GroundSpace::from_coords(PointConfig(std::move(pts)));
}

}  // namespace

TEST_CASE("barycenter of a segment measure") {
  SpacePtr sp = segment();
  IdempotentMeasure m1(sp, {Scalar(0.0), Scalar(-2.0)});
  REQUIRE(barycenter(*sp, m1) == Point{Scalar(1.0), Scalar(1.0)});
  IdempotentMeasure m2(sp, {Scalar::bottom(), Scalar(0.0)});
  REQUIRE(barycenter(*sp, m2) == Point{Scalar(3.0), Scalar(0.0)});
  // space mismatch
  SpacePtr other = segment();
  REQUIRE_THROWS_AS(barycenter(*other, m1), invalid_input);
}

TEST_CASE("barycenter on the unit interval grid") {
  SpacePtr sp = GroundSpace::interval_grid(11);
  std::vector<Scalar> w(11, Scalar::bottom());
  w[1] = Scalar(0.0);
  w[9] = Scalar(-0.4);
  REQUIRE(barycenter(*sp, IdempotentMeasure(sp, w)) == Point{Scalar(0.5)});
}

TEST_CASE("barycenter sends Diracs to their points") {
  Rng rng(501);
  SpacePtr sp = dyadic_plane(rng, 5);
  for (std::size_t i = 0; i < sp->size(); ++i)
    REQUIRE(barycenter(*sp, IdempotentMeasure::dirac(sp, i)) == sp->coords()[i]);
}

TEST_CASE("barycenter is max-plus affine") {
  Rng rng(502);
  for (int trial = 0; trial < 25; ++trial) {
    SpacePtr sp = dyadic_plane(rng, 4);
    IdempotentMeasure mu1 = random_measure(rng, sp), mu2 = random_measure(rng, sp);
    Scalar a1(0.0), a2(rng.dyadic_weight());
    const IdempotentMeasure atoms[2] = {mu1, mu2};
    const Scalar ws[2] = {a1, a2};
    Point lhs = barycenter(*sp, combine_measures(atoms, ws));
    Point rhs = oplus(odot(a1, barycenter(*sp, mu1)), odot(a2, barycenter(*sp, mu2)));
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("level-2 barycenter identities") {
  SpacePtr sp = segment();
  IdempotentMeasure da = IdempotentMeasure::dirac(sp, 0), db = IdempotentMeasure::dirac(sp, 1);
  // Dirac at mu maps back to mu
  IdempotentMeasure mu(sp, {Scalar(0.0), Scalar(-2.0)});
  REQUIRE(measures_equal(barycenter_meta(MetaMeasure::dirac(mu)), mu));
  // combination of Diracs yields the measure with those weights
  MetaMeasure M({da, db}, {Scalar(0.0), Scalar(-1.0)});
  IdempotentMeasure b = barycenter_meta(M);
  REQUIRE(b.weight(0) == Scalar(0.0));
  REQUIRE(b.weight(1) == Scalar(-1.0));
}

TEST_CASE("level-2 barycenter is natural under pushforward") {
  Rng rng(503);
  for (int trial = 0; trial < 15; ++trial) {
    SpacePtr sp = random_metric_space(rng, 4);
    MetaMeasure M = random_meta(rng, sp, 3);
    PointMap f = random_point_map(rng, sp, sp);
    std::vector<IdempotentMeasure> pushed;
    for (const auto& atom : M.atoms()) pushed.push_back(pushforward(f, atom));
    MetaMeasure N(std::move(pushed), M.weights());
    REQUIRE(measures_equal(barycenter_meta(N), pushforward(f, barycenter_meta(M))));
  }
}

TEST_CASE("fiber witnesses exist at every grid point of the interval") {
  SpacePtr sp = GroundSpace::interval_grid(11);
  EmbeddedSpace es(sp);
  auto grid = default_weight_grid(*sp);
  for (std::size_t k = 0; k < sp->size(); ++k) {
    Point x = sp->coords()[k];
    auto w = fiber_witness(es, x, grid);
    REQUIRE(w.has_value());
    REQUIRE(!w->is_dirac());
    Point b = barycenter(es, *w);
    REQUIRE(approx_equal(b, x, 1e-12));
    // deterministic: the scan returns the same witness again
    auto w2 = fiber_witness(es, x, grid);
    REQUIRE(measures_equal(*w, *w2));
  }
  // an explicit fiber element over 0: weight 0 at 0 and weight -1 at 1
  std::vector<Scalar> fw(11, Scalar::bottom());
  fw[0] = Scalar(0.0);
  fw[10] = Scalar(-1.0);
  REQUIRE(barycenter(*sp, IdempotentMeasure(sp, fw)) == Point{Scalar(0.0)});
}

TEST_CASE("fiber witness at a hull point off the sample") {
  SpacePtr sp = GroundSpace::interval_grid(11);
  TropicalHull hull{PointConfig({point({0}), point({1})})};
  EmbeddedSpace es(sp, hull);
  Point x = point({0.05});
  const Scalar fine[3] = {Scalar(0.0), Scalar(-0.05), Scalar::bottom()};
  auto w = fiber_witness(es, x, fine);
  REQUIRE(w.has_value());
  REQUIRE(w->weight(1) == Scalar(-0.05));
  REQUIRE(w->weight(0) == Scalar(0.0));
  REQUIRE(approx_equal(barycenter(es, *w), x, 1e-12));
  // the default grid has no shift reaching 0.05
  REQUIRE(!fiber_witness(es, x, default_weight_grid(*sp)).has_value());
}

TEST_CASE("fiber witness input validation") {
  SpacePtr sp = GroundSpace::interval_grid(11);
  EmbeddedSpace es(sp);
  auto grid = default_weight_grid(*sp);
  // off-sample point without a hull
  REQUIRE_THROWS_AS(fiber_witness(es, point({0.05}), grid), invalid_input);
  // dimension mismatch
  REQUIRE_THROWS_AS(fiber_witness(es, point({0.1, 0.2}), grid), invalid_input);
  // positive grid weight
  const Scalar bad[1] = {Scalar(0.5)};
  REQUIRE_THROWS_AS(fiber_witness(es, point({0.1}), bad), invalid_input);
  // a space without coordinates cannot be embedded
  REQUIRE_THROWS_AS(EmbeddedSpace(GroundSpace::from_matrix({0, 1, 1, 0})), invalid_input);
  // ground point outside the declared hull
  TropicalHull half{PointConfig({point({0}), point({0.5})})};
  REQUIRE_THROWS_AS(EmbeddedSpace(sp, half), invalid_input);
  // hull dimension mismatch
  TropicalHull plane{PointConfig({point({0, 0}), point({1, 1})})};
  REQUIRE_THROWS_AS(EmbeddedSpace(sp, plane), invalid_input);
}
