#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include <tropibary/measure.hpp>

using namespace tropibary;

namespace {

SpacePtr two_point() { return GroundSpace::from_matrix({0, 1, 1, 0}); }

SpacePtr line3() { return GroundSpace::from_matrix({0, 1, 2, 1, 0, 1, 2, 1, 0}); }

}  // namespace

TEST_CASE("ground space validates its metric") {
  REQUIRE_NOTHROW(GroundSpace::from_matrix({0, 1, 1, 0}));
  // nonzero diagonal
  REQUIRE_THROWS_AS(GroundSpace::from_matrix({1, 1, 1, 0}), invalid_input);
  // asymmetry
  REQUIRE_THROWS_AS(GroundSpace::from_matrix({0, 1, 2, 0}), invalid_input);
  // negative entry
  REQUIRE_THROWS_AS(GroundSpace::from_matrix({0, -1, -1, 0}), invalid_input);
  // zero distance between distinct points
  REQUIRE_THROWS_AS(GroundSpace::from_matrix({0, 0, 0, 0}), invalid_input);
  // triangle violation
  REQUIRE_THROWS_AS(GroundSpace::from_matrix({0, 1, 3, 1, 0, 1, 3, 1, 0}), invalid_input);
  // label count mismatch
  REQUIRE_THROWS_AS(GroundSpace::sup_space({"a"}, PointConfig({point({0}), point({1})})), invalid_input);
}

TEST_CASE("sup metric from coordinates") {
  SpacePtr sp = GroundSpace::sup_space({"a", "b"}, PointConfig({point({0, 1}), point({3, 0})}));
  REQUIRE(sp->size() == 2);
  REQUIRE(sp->distance(0, 1) == 3.0);
  REQUIRE(sp->diameter() == 3.0);
  REQUIRE(sp->metric_kind() == "sup");
  REQUIRE(sp->label(0) == "a");
  REQUIRE(sp->find_point(point({3, 0})) == std::size_t{1});
  REQUIRE(!sp->find_point(point({2, 2})).has_value());
  // coincident coordinates are rejected
  REQUIRE_THROWS_AS(GroundSpace::from_coords(PointConfig({point({1, 1}), point({1, 1})})), invalid_input);
}

TEST_CASE("interval grid space") {
  SpacePtr sp = GroundSpace::interval_grid(11);
  REQUIRE(sp->size() == 11);
  REQUIRE(sp->coords()[3] == Point{Scalar(0.3)});
  REQUIRE(sp->distance(1, 9) == Catch::Approx(0.8).margin(1e-15));
  REQUIRE(sp->diameter() == 1.0);
  REQUIRE_THROWS_AS(GroundSpace::interval_grid(1), invalid_input);
}

TEST_CASE("measure normalization is enforced") {
  SpacePtr sp = two_point();
  REQUIRE_NOTHROW(IdempotentMeasure(sp, {Scalar(0.0), Scalar(-1.0)}));
  REQUIRE_THROWS_AS(IdempotentMeasure(sp, {Scalar(0.5), Scalar(0.0)}), invalid_input);
  REQUIRE_THROWS_AS(IdempotentMeasure(sp, {Scalar(-1.0), Scalar(-2.0)}), invalid_input);
  REQUIRE_THROWS_AS(IdempotentMeasure(sp, {Scalar::bottom(), Scalar::bottom()}), invalid_input);
  REQUIRE_THROWS_AS(IdempotentMeasure(sp, {Scalar(0.0)}), invalid_input);
}

TEST_CASE("support and Dirac structure") {
  SpacePtr sp = line3();
  IdempotentMeasure d1 = IdempotentMeasure::dirac(sp, 1);
  REQUIRE(d1.is_dirac());
  REQUIRE(d1.dirac_index() == std::size_t{1});
  REQUIRE(d1.weight(1) == Scalar(0.0));
  REQUIRE(d1.weight(0).is_bottom());
  IdempotentMeasure mu(sp, {Scalar(0.0), Scalar(-2.0), Scalar::bottom()});
  REQUIRE(mu.support() == std::vector<std::size_t>{0, 1});
  REQUIRE(!mu.is_dirac());
  REQUIRE(!mu.dirac_index().has_value());
  REQUIRE_THROWS_AS(IdempotentMeasure::dirac(sp, 7), invalid_input);
}

TEST_CASE("functional evaluation") {
  SpacePtr sp = two_point();
  IdempotentMeasure mu(sp, {Scalar(0.0), Scalar(-1.0)});
  std::vector<double> phi{2.0, 5.0};
  REQUIRE(evaluate(mu, phi) == 4.0);
  std::vector<double> psi{2.0, 1.0};
  REQUIRE(evaluate(mu, psi) == 2.0);
  REQUIRE(evaluate(mu, constant_function(*sp, -3.5)) == -3.5);
  std::vector<double> shortphi{1.0};
  REQUIRE_THROWS_AS(evaluate(mu, shortphi), invalid_input);
}

TEST_CASE("pushforward transports density by max over preimages") {
  SpacePtr sp = line3();
  PointMap collapse{sp, sp, {0, 0, 2}};
  IdempotentMeasure mu(sp, {Scalar(-1.0), Scalar(0.0), Scalar(-0.5)});
  IdempotentMeasure out = pushforward(collapse, mu);
  REQUIRE(out.weight(0) == Scalar(0.0));
  REQUIRE(out.weight(1).is_bottom());
  REQUIRE(out.weight(2) == Scalar(-0.5));
  REQUIRE(collapse.displacement() == 1.0);
  REQUIRE_THROWS_AS(PointMap(sp, sp, {0, 1}), invalid_input);
  REQUIRE_THROWS_AS(PointMap(sp, sp, {0, 1, 9}), invalid_input);
}

TEST_CASE("combination of measures is normalized and exact") {
  SpacePtr sp = two_point();
  IdempotentMeasure da = IdempotentMeasure::dirac(sp, 0), db = IdempotentMeasure::dirac(sp, 1);
  const IdempotentMeasure atoms[2] = {da, db};
  const Scalar w[2] = {Scalar(0.0), Scalar(-1.0)};
  IdempotentMeasure mix = combine_measures(atoms, w);
  REQUIRE(mix.weight(0) == Scalar(0.0));
  REQUIRE(mix.weight(1) == Scalar(-1.0));
  const Scalar bad[2] = {Scalar(-1.0), Scalar(-1.0)};
  REQUIRE_THROWS_AS(combine_measures(atoms, bad), invalid_input);
}

TEST_CASE("two-block decomposition") {
  SpacePtr sp = line3();
  IdempotentMeasure mu(sp, {Scalar(0.0), Scalar(-2.0), Scalar(-3.0)});
  Decomposition dec = decompose(mu, {false, true, true});
  REQUIRE(dec.a1 == Scalar(0.0));
  REQUIRE(dec.mu1.weights() == std::vector<Scalar>{Scalar(0.0), Scalar::bottom(), Scalar::bottom()});
  REQUIRE(dec.a2 == Scalar(-2.0));
  REQUIRE(dec.mu2.weights() == std::vector<Scalar>{Scalar::bottom(), Scalar(0.0), Scalar(-1.0)});
  const IdempotentMeasure parts[2] = {dec.mu1, dec.mu2};
  const Scalar ws[2] = {dec.a1, dec.a2};
  REQUIRE(measures_equal(combine_measures(parts, ws), mu));
  // a block missing the support is rejected
  REQUIRE_THROWS_AS(decompose(mu, {false, false, false}), invalid_input);
  IdempotentMeasure dirac0 = IdempotentMeasure::dirac(sp, 0);
  REQUIRE_THROWS_AS(decompose(dirac0, {false, true, true}), invalid_input);
}

TEST_CASE("meta measures deduplicate atoms keeping the larger weight") {
  SpacePtr sp = two_point();
  IdempotentMeasure mu(sp, {Scalar(0.0), Scalar(-1.0)});
  IdempotentMeasure same(sp, {Scalar(0.0), Scalar(-1.0)});
  IdempotentMeasure other(sp, {Scalar(-0.5), Scalar(0.0)});
  MetaMeasure M({mu, other, same}, {Scalar(-1.0), Scalar(0.0), Scalar(-0.25)});
  REQUIRE(M.size() == 2);
  bool found = false;
  for (std::size_t j = 0; j < M.size(); ++j)
    if (measures_equal(M.atom(j), mu)) {
      found = true;
      REQUIRE(M.weight(j) == Scalar(-0.25));
    }
  REQUIRE(found);
  // a bottom-weight atom stays listed
  MetaMeasure N({mu, other}, {Scalar(0.0), Scalar::bottom()});
  REQUIRE(N.size() == 2);
  REQUIRE(N.weight(1).is_bottom());
  REQUIRE_THROWS_AS(MetaMeasure({mu, other}, {Scalar(-1.0), Scalar(-2.0)}), invalid_input);
  REQUIRE(metas_equal(M, M));
  REQUIRE(!metas_equal(M, N));
}

TEST_CASE("default weight grid lists 0, negated distances, and bottom") {
  SpacePtr sp = line3();
  auto grid = default_weight_grid(*sp);
  REQUIRE(grid.size() == 4);
  REQUIRE(grid[0] == Scalar(0.0));
  REQUIRE(grid[1] == Scalar(-1.0));
  REQUIRE(grid[2] == Scalar(-2.0));
  REQUIRE(grid[3].is_bottom());
}
