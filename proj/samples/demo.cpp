// Walkthrough of the main library flows on a two-point segment: measures,
// evaluation, barycenters on both levels, certified distances, witness
// searches, and an epsilon-deformation battery.

#include <iostream>

#include <tropibary/tropibary.hpp>

using namespace tropibary;

int main() {
  SpacePtr sp = GroundSpace::sup_space({"a", "b"}, PointConfig({point({0, 1}), point({3, 0})}));
  EmbeddedSpace es(sp);

  IdempotentMeasure m1(sp, {Scalar(0.0), Scalar(-2.0)});
  IdempotentMeasure m2(sp, {Scalar::bottom(), Scalar(0.0)});

  double phi[] = {2.0, 5.0};
  std::cout << "m1(phi) = " << format_number(evaluate(m1, phi)) << "\n";

  Point b = barycenter(es, m1);
  std::cout << "barycenter(m1) = (" << format_scalar(b[0]) << ", " << format_scalar(b[1]) << ")\n";

  MetaMeasure M({m1, m2}, {Scalar(0.0), Scalar(-1.0)});
  IdempotentMeasure bm = barycenter_meta(M);
  std::cout << "barycenter(M) weights = [";
  for (std::size_t i = 0; i < bm.size(); ++i) std::cout << (i ? ", " : "") << format_scalar(bm.weight(i));
  std::cout << "]\n";

  std::cout << "d3(m1, m2) = " << format_number(dn_exact(m1, m2, 3)) << "\n";
  DistanceResult r = dI(m1, m2, 1e-6);
  std::cout << "dI(m1, m2) = " << format_number(r.value) << " +/- " << format_number(r.error_bound) << "\n";

  TropicalHull hull{sp->coords()};
  MembershipResult mem = hull_membership(hull, point({1, 1}));
  std::cout << "(1, 1) in hull: " << (mem.member ? "MEMBER" : "NOT_MEMBER") << "\n";

  SpacePtr grid = GroundSpace::interval_grid(11);
  EmbeddedSpace ges(grid);
  auto wgrid = default_weight_grid(*grid);
  auto w = fiber_witness(ges, Point{Scalar(0.5)}, wgrid);
  std::cout << "fiber witness at 0.5: " << (w ? "found, support size " + std::to_string(w->support().size()) : "none")
            << "\n";

  Rng rng(7);
  std::vector<IdempotentMeasure> samples;
  for (int s = 0; s < 10; ++s) samples.push_back(random_interval_measure(rng, grid));
  TWReport rep = tw_verify_interval(samples, 0.2);
  std::cout << emit_text(to_report(rep));
  return rep.all_pass ? 0 : 1;
}
