#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include <tropibary/bundlecheck.hpp>
#include <tropibary/sampling.hpp>

using namespace tropibary;

namespace {

SpacePtr two_point() { return GroundSpace::from_matrix({0, 1, 1, 0}); }

MetaMeasure two_atom_meta(const SpacePtr& sp) {
  return MetaMeasure({IdempotentMeasure::dirac(sp, 0), IdempotentMeasure::dirac(sp, 1)},
                     {Scalar(0.0), Scalar(-1.0)});
}

}  // namespace

TEST_CASE("shift depth") {
  REQUIRE(shift_bound(1.0, 1.0) == Scalar(-1.0));
  REQUIRE(shift_bound(0.25, 1.0) == Scalar(-3.0));
  REQUIRE(shift_bound(5.0, 1.0) == Scalar(0.0));
  REQUIRE(shift_bound(2.0, 1.0) == Scalar(0.0));
  REQUIRE(shift_bound(0.25, 0.0) == Scalar(0.0));
  REQUIRE_THROWS_AS(shift_bound(0.0, 1.0), invalid_input);
  REQUIRE_THROWS_AS(shift_bound(-1.0, 1.0), invalid_input);
  REQUIRE_THROWS_AS(shift_bound(1.0, -1.0), invalid_input);
  REQUIRE_THROWS_AS(shift_bound(1e-320, 1.0), invalid_input);
  // the guarantee the depth certifies, on the two-point space
  SpacePtr sp = two_point();
  IdempotentMeasure mu = IdempotentMeasure::dirac(sp, 0), kappa = IdempotentMeasure::dirac(sp, 1);
  const IdempotentMeasure pair[2] = {mu, kappa};
  const Scalar w2[2] = {Scalar(0.0), shift_bound(0.25, 1.0)};
  DistanceResult r = dI(combine_measures(pair, w2), mu, 1e-9);
  REQUIRE(r.value + r.error_bound <= 0.25);
}

TEST_CASE("g-deformation") {
  SpacePtr sp = two_point();
  MetaMeasure M = two_atom_meta(sp);
  MetaMeasure G = mr_g(M, Scalar(-2.0));
  REQUIRE(G.size() == 2);
  REQUIRE(G.atom(0).weights() == std::vector<Scalar>{Scalar(0.0), Scalar(-3.0)});
  REQUIRE(G.atom(1).weights() == std::vector<Scalar>{Scalar(-2.0), Scalar(0.0)});
  REQUIRE(G.weight(0) == Scalar(0.0));
  REQUIRE(G.weight(1) == Scalar(-1.0));
  REQUIRE(measures_equal(barycenter_meta(G), barycenter_meta(M)));
  // every deformed atom is non-Dirac, so the image avoids Dirac measures
  for (std::size_t j = 0; j < G.size(); ++j) REQUIRE(!G.atom(j).is_dirac());
  // bottom shift leaves the input untouched
  REQUIRE(metas_equal(mr_g(M, Scalar::bottom()), M));
  // a Dirac level-2 measure is a fixed point
  MetaMeasure D = MetaMeasure::dirac(IdempotentMeasure(sp, {Scalar(0.0), Scalar(-1.0)}));
  REQUIRE(metas_equal(mr_g(D, Scalar(-2.0)), D));
  REQUIRE_THROWS_AS(mr_g(M, Scalar(0.5)), invalid_input);
}

TEST_CASE("h-deformation") {
  SpacePtr sp = two_point();
  MetaMeasure M = two_atom_meta(sp);
  // the appended Dirac atoms are dominated by the existing ones and merge away
  REQUIRE(metas_equal(mr_h(M, Scalar(-2.0)), M));
  REQUIRE(metas_equal(mr_h(M, Scalar::bottom()), M));
  // on a Dirac level-2 measure with a non-Dirac atom the Diracs survive
  MetaMeasure D = MetaMeasure::dirac(IdempotentMeasure(sp, {Scalar(0.0), Scalar(-1.0)}));
  MetaMeasure H = mr_h(D, Scalar(-2.0));
  REQUIRE(H.size() == 3);
  bool has_finite_dirac = false;
  for (std::size_t j = 0; j < H.size(); ++j)
    if (H.weight(j).is_finite() && H.atom(j).is_dirac()) has_finite_dirac = true;
  REQUIRE(has_finite_dirac);
  REQUIRE(measures_equal(barycenter_meta(H), barycenter_meta(D)));
  REQUIRE_THROWS_AS(mr_h(M, Scalar(0.5)), invalid_input);
}

TEST_CASE("interval collapse deformation") {
  SpacePtr sp = GroundSpace::interval_grid(11);
  // a Dirac below p is untouched
  IdempotentMeasure d5 = IdempotentMeasure::dirac(sp, 5);
  REQUIRE(measures_equal(interval_l(d5, 0.8), d5));
  // mass at 0.9 collapses onto 0.8 with the compensating density
  std::vector<Scalar> w(11, Scalar::bottom());
  w[1] = Scalar(0.0);
  w[9] = Scalar(-0.4);
  IdempotentMeasure nu(sp, w);
  IdempotentMeasure out = interval_l(nu, 0.8);
  REQUIRE(out.weight(1) == Scalar(0.0));
  REQUIRE(out.weight(9).is_bottom());
  REQUIRE(out.weight(8).is_finite());
  REQUIRE(out.weight(8).value() == Catch::Approx(-0.3).margin(1e-12));
  double beta_before = barycenter(*sp, nu)[0].value();
  double beta_after = barycenter(*sp, out)[0].value();
  REQUIRE(beta_before == 0.5);
  REQUIRE(std::abs(beta_after - beta_before) <= 1e-12);
  // p = 1 is the identity, bit for bit
  std::vector<Scalar> v(11, Scalar::bottom());
  v[0] = Scalar(0.0);
  v[10] = Scalar(-0.5);
  IdempotentMeasure mu(sp, v);
  REQUIRE(measures_equal(interval_l(mu, 1.0), mu));
  REQUIRE(measures_equal(interval_l(d5, 1.0), d5));
  // p must be an admissible grid point and the barycenter must stay low
  REQUIRE_THROWS_AS(interval_l(nu, 0.6), invalid_input);
  REQUIRE_THROWS_AS(interval_l(nu, 0.85), invalid_input);
  REQUIRE_THROWS_AS(interval_l(IdempotentMeasure::dirac(sp, 8), 0.8), invalid_input);
}

TEST_CASE("interval top-shift deformation") {
  SpacePtr sp = GroundSpace::interval_grid(11);
  IdempotentMeasure d0 = IdempotentMeasure::dirac(sp, 0);
  IdempotentMeasure h = interval_h0(d0, Scalar(-1.0));
  REQUIRE(h.weight(0) == Scalar(0.0));
  REQUIRE(h.weight(10) == Scalar(-1.0));
  IdempotentMeasure d5 = IdempotentMeasure::dirac(sp, 5);
  IdempotentMeasure h5 = interval_h0(d5, Scalar(-2.0));
  REQUIRE(h5.weight(5) == Scalar(0.0));
  REQUIRE(h5.weight(10) == Scalar(-2.0));
  double beta = barycenter(*sp, h5)[0].value();
  REQUIRE(beta == 0.5);
  // bottom shift is the identity
  REQUIRE(measures_equal(interval_h0(d5, Scalar::bottom()), d5));
  // shallow shifts and high barycenters are rejected
  REQUIRE_THROWS_AS(interval_h0(d5, Scalar(-0.5)), invalid_input);
  REQUIRE_THROWS_AS(interval_h0(IdempotentMeasure::dirac(sp, 8), Scalar(-1.0)), invalid_input);
}

TEST_CASE("interval collapse point selection") {
  REQUIRE(choose_interval_p(*GroundSpace::interval_grid(11), 0.2) == 0.9);
  REQUIRE(choose_interval_p(*GroundSpace::interval_grid(11), 0.5) == 0.8);
  REQUIRE(choose_interval_p(*GroundSpace::interval_grid(101), 0.1) == 0.95);
  REQUIRE_THROWS_AS(choose_interval_p(*GroundSpace::interval_grid(2), 0.2), invalid_input);
}

TEST_CASE("meta-level harness on Dirac samples is vacuously disjoint") {
  SpacePtr sp = two_point();
  std::vector<IdempotentMeasure> gens{IdempotentMeasure::dirac(sp, 0), IdempotentMeasure::dirac(sp, 1)};
  std::vector<MetaMeasure> samples{MetaMeasure::dirac(gens[0]), MetaMeasure::dirac(gens[1])};
  TWReport rep = tw_verify_mr(samples, gens, 0.25);
  REQUIRE(rep.all_pass);
  REQUIRE(rep.samples == 2);
  REQUIRE(rep.applicable == 0);
  REQUIRE(rep.disjointness_vacuous);
  REQUIRE(rep.fiber_preserved);
  REQUIRE(rep.images_disjoint);
  REQUIRE(rep.g_close == 0.0);
  REQUIRE(rep.h_close == 0.0);
  REQUIRE(rep.shift == Scalar(-3.0));
  REQUIRE(rep.mode == "mr");
}

TEST_CASE("meta-level harness battery") {
  Rng rng(601);
  SpacePtr sp = random_metric_space(rng, 3);
  std::vector<IdempotentMeasure> gens;
  for (int j = 0; j < 3; ++j) gens.push_back(random_nondirac_measure(rng, sp));
  std::vector<MetaMeasure> samples;
  for (int s = 0; s < 30; ++s) {
    auto cw = random_combination_weights(rng, gens.size());
    samples.push_back(random_meta_with_barycenter(rng, combine_measures(gens, cw)));
  }
  TWReport rep = tw_verify_mr(samples, gens, 0.25);
  REQUIRE(rep.all_pass);
  REQUIRE(rep.samples == 30);
  REQUIRE(rep.failures == 0);
  REQUIRE(rep.applicable == 30);
  REQUIRE(!rep.disjointness_vacuous);
  REQUIRE(rep.images_disjoint);
  REQUIRE(rep.fiber_preserved);
  REQUIRE(rep.g_close + rep.g_close_bound <= 0.25);
  REQUIRE(rep.h_close + rep.h_close_bound <= 0.25);
  REQUIRE(rep.epsilon == 0.25);
  REQUIRE(rep.details.size() == 30);
  for (const auto& rec : rep.details) REQUIRE(rec.beta_in_k);
  // a sample on a different space is recorded as a failure, not a crash
  SpacePtr other = two_point();
  samples.push_back(MetaMeasure::dirac(IdempotentMeasure::dirac(other, 0)));
  TWReport bad = tw_verify_mr(samples, gens, 0.25);
  REQUIRE(!bad.all_pass);
  REQUIRE(bad.failures == 1);
  REQUIRE(bad.details.back().note == "sample space mismatch");
  REQUIRE_THROWS_AS(tw_verify_mr({}, gens, 0.25), invalid_input);
  REQUIRE_THROWS_AS(tw_verify_mr(samples, gens, 0.0), invalid_input);
  REQUIRE_THROWS_AS(tw_verify_mr(samples, {}, 0.25), invalid_input);
}

TEST_CASE("interval harness battery") {
  Rng rng(602);
  SpacePtr sp = GroundSpace::interval_grid(101);
  std::vector<IdempotentMeasure> samples;
  for (int s = 0; s < 30; ++s) samples.push_back(random_interval_measure(rng, sp));
  TWReport rep = tw_verify_interval(samples, 0.1);
  REQUIRE(rep.all_pass);
  REQUIRE(rep.samples == 30);
  REQUIRE(rep.failures == 0);
  REQUIRE(rep.mode == "interval");
  REQUIRE(rep.p == 0.95);
  REQUIRE(rep.shift == Scalar(-5.0));
  REQUIRE(rep.g_close + rep.g_close_bound <= 0.1);
  REQUIRE(rep.h_close + rep.h_close_bound <= 0.1);
  for (const auto& rec : rep.details) {
    REQUIRE(rec.l1_identity);
    REQUIRE(rec.g_cert);
    REQUIRE(rec.h_cert);
  }
  // a sample with barycenter above 2/3 fails its record only
  samples.push_back(IdempotentMeasure::dirac(sp, 80));
  TWReport bad = tw_verify_interval(samples, 0.1);
  REQUIRE(!bad.all_pass);
  REQUIRE(bad.failures == 1);
  REQUIRE_THROWS_AS(tw_verify_interval({}, 0.1), invalid_input);
  REQUIRE_THROWS_AS(tw_verify_interval(samples, -0.1), invalid_input);
  std::vector<IdempotentMeasure> off{IdempotentMeasure::dirac(two_point(), 0)};
  REQUIRE_THROWS_AS(tw_verify_interval(off, 0.1), invalid_input);
}
