// Verification CLI for the idempotent-measure calculus. Documents are
// "tropibary/1" JSON. Exit codes: 0 success, 1 verification failure, 2
// invalid input or usage.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <tropibary/tropibary.hpp>

namespace {

using namespace tropibary;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_input("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<double> parse_number_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      Scalar s = parse_scalar(trim(item));
      if (s.is_bottom()) throw invalid_input("finite value required");
      out.push_back(s.value());
    } catch (const error&) {
      throw invalid_input(std::string(what) + ": bad entry '" + item + "'");
    }
  }
  if (out.empty()) throw invalid_input(std::string(what) + ": empty list");
  return out;
}

std::vector<Scalar> parse_scalar_list(const std::string& text, const char* what) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_scalar(trim(item)));
    } catch (const error&) {
      throw invalid_input(std::string(what) + ": bad entry '" + item + "'");
    }
  }
  if (out.empty()) throw invalid_input(std::string(what) + ": empty list");
  return out;
}

Point parse_point(const std::string& text) {
  Point p;
  for (Scalar s : parse_scalar_list(text, "--point")) p.push_back(s);
  return p;
}

std::string point_text(const Point& p) {
  std::string out = "(";
  for (std::size_t t = 0; t < p.size(); ++t) out += (t ? ", " : "") + format_scalar(p[t]);
  return out + ")";
}

std::string weights_text(const std::vector<Scalar>& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? ", " : "") + format_scalar(w[i]);
  return out + "]";
}

json point_json(const Point& p) {
  json arr = json::array();
  for (Scalar s : p) arr.push_back(scalar_to_json(s));
  return arr;
}

json weights_json(const std::vector<Scalar>& w) {
  json arr = json::array();
  for (Scalar s : w) arr.push_back(scalar_to_json(s));
  return arr;
}

struct Cli {
  bool json_out = false;
  int exit_code = 0;

  void print(const json& j, const std::string& text) {
    if (json_out)
      std::cout << j.dump(2) << "\n";
    else
      std::cout << text;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"idempotent measures, tropical barycenters, and their verification"};
  app.require_subcommand(1);
  Cli cli;
  app.add_flag("--json", cli.json_out, "emit JSON instead of text");

  std::string input, measure_name, other_name, phi_text, point_text_arg, weights_text_arg, blocks_text, mode;
  std::size_t dn_degree = 0;
  double tol = 1e-9, epsilon = 0.1;
  std::size_t nsamples = 100, grid_n = 101;
  std::uint64_t seed = 1;
  bool use_meta = false, use_hull = false;

  auto* c_eval = app.add_subcommand("eval", "evaluate a measure functional on a test function");
  c_eval->add_option("--input", input, "tropibary/1 document")->required();
  c_eval->add_option("--measure", measure_name, "measure name")->required();
  c_eval->add_option("--phi", phi_text, "comma-separated finite values, one per point")->required();
  c_eval->callback([&] {
    Document doc = parse_document(slurp(input));
    const IdempotentMeasure& mu = doc.measure(measure_name);
    std::vector<double> phi = parse_number_list(phi_text, "--phi");
    if (phi.size() != doc.space->size()) throw invalid_input("--phi: one value per space point required");
    double v = evaluate(mu, phi);
    cli.print(json{{"value", v}}, format_number(v) + "\n");
  });

  auto* c_bary = app.add_subcommand("barycenter", "barycenter of a measure or level-2 measure");
  c_bary->add_option("--input", input, "tropibary/1 document")->required();
  c_bary->add_option("--measure", measure_name, "measure name");
  c_bary->add_option("--meta", other_name, "level-2 measure name");
  c_bary->callback([&] {
    Document doc = parse_document(slurp(input));
    if (measure_name.empty() == other_name.empty())
      throw invalid_input("barycenter: exactly one of --measure or --meta required");
    if (!measure_name.empty()) {
      Point b = barycenter(*doc.space, doc.measure(measure_name));
      cli.print(json{{"point", point_json(b)}}, point_text(b) + "\n");
    } else {
      IdempotentMeasure out = barycenter_meta(doc.meta(other_name).meta);
      cli.print(json{{"measure", weights_json(out.weights())}}, weights_text(out.weights()) + "\n");
    }
  });

  auto* c_dist = app.add_subcommand("distance", "dual distance between two (level-2) measures");
  c_dist->add_option("--input", input, "tropibary/1 document")->required();
  c_dist->add_option("--a", measure_name, "first name")->required();
  c_dist->add_option("--b", other_name, "second name")->required();
  c_dist->add_option("--n", dn_degree, "degree: compute the exact degree-n distance");
  c_dist->add_option("--tol", tol, "certified tolerance for the full distance (default 1e-9)");
  c_dist->add_flag("--meta", use_meta, "names refer to level-2 measures");
  c_dist->callback([&] {
    Document doc = parse_document(slurp(input));
    DistanceResult r;
    if (use_meta) {
      if (dn_degree != 0) throw invalid_input("distance: --n applies to level-1 measures only");
      r = meta_dI(doc.meta(measure_name).meta, doc.meta(other_name).meta, tol);
    } else if (dn_degree != 0) {
      r = {dn_exact(doc.measure(measure_name), doc.measure(other_name), dn_degree), 0.0};
    } else {
      r = dI(doc.measure(measure_name), doc.measure(other_name), tol);
    }
    cli.print(json{{"value", r.value}, {"error_bound", r.error_bound}},
              "value = " + format_number(r.value) + ", error_bound = " + format_number(r.error_bound) + "\n");
  });

  auto* c_ext = app.add_subcommand("extremal", "witness search: is the point a proper combination of sample points");
  c_ext->add_option("--input", input, "tropibary/1 document")->required();
  c_ext->add_option("--point", point_text_arg, "query point, comma-separated coordinates")->required();
  c_ext->add_option("--weights", weights_text_arg, "weight grid (default: derived from the space)");
  c_ext->callback([&] {
    Document doc = parse_document(slurp(input));
    const PointConfig& sample = doc.space->coords();
    std::vector<Scalar> grid = weights_text_arg.empty() ? default_weight_grid(*doc.space)
                                                        : parse_scalar_list(weights_text_arg, "--weights");
    auto w = extremal_witness(sample, parse_point(point_text_arg), grid);
    if (!w) {
      cli.print(json{{"witness", nullptr}}, "none\n");
    } else {
      cli.print(json{{"witness",
                      {{"y", doc.space->label(w->y)},
                       {"y_index", w->y},
                       {"z", doc.space->label(w->z)},
                       {"z_index", w->z},
                       {"t", scalar_to_json(w->weight)}}}},
                "witness: y = " + doc.space->label(w->y) + ", z = " + doc.space->label(w->z) +
                    ", t = " + format_scalar(w->weight) + "\n");
    }
  });

  auto* c_fiber = app.add_subcommand("fiber", "search the barycenter fiber over a point for a non-Dirac measure");
  c_fiber->add_option("--input", input, "tropibary/1 document")->required();
  c_fiber->add_option("--point", point_text_arg, "query point, comma-separated coordinates")->required();
  c_fiber->add_option("--weights", weights_text_arg, "weight grid (default: derived from the space)");
  c_fiber->add_flag("--hull", use_hull, "treat the space points as hull generators for representability");
  c_fiber->callback([&] {
    Document doc = parse_document(slurp(input));
    std::optional<TropicalHull> hull;
    if (use_hull) hull = TropicalHull{doc.space->coords()};
    EmbeddedSpace es(doc.space, std::move(hull));
    std::vector<Scalar> grid = weights_text_arg.empty() ? default_weight_grid(*doc.space)
                                                        : parse_scalar_list(weights_text_arg, "--weights");
    auto w = fiber_witness(es, parse_point(point_text_arg), grid);
    if (!w) {
      cli.print(json{{"witness", nullptr}}, "none\n");
    } else {
      cli.print(json{{"witness", weights_json(w->weights())}}, weights_text(w->weights()) + "\n");
    }
  });

  auto* c_dec = app.add_subcommand("decompose", "two-block decomposition of a measure");
  c_dec->add_option("--input", input, "tropibary/1 document")->required();
  c_dec->add_option("--measure", measure_name, "measure name")->required();
  c_dec->add_option("--blocks", blocks_text, "index blocks, e.g. \"0,2|1,3\"")->required();
  c_dec->callback([&] {
    Document doc = parse_document(slurp(input));
    const IdempotentMeasure& mu = doc.measure(measure_name);
    auto bar = blocks_text.find('|');
    if (bar == std::string::npos) throw invalid_input("--blocks: expected \"i,j|k,l\"");
    std::vector<int> seen(doc.space->size(), -1);
    std::vector<bool> in_block2(doc.space->size(), false);
    for (int side = 0; side < 2; ++side) {
      std::string part = side == 0 ? blocks_text.substr(0, bar) : blocks_text.substr(bar + 1);
      for (double v : parse_number_list(part, "--blocks")) {
        std::size_t i = static_cast<std::size_t>(v);
        if (v != std::floor(v) || i >= in_block2.size()) throw invalid_input("--blocks: bad index");
        if (seen[i] >= 0) throw invalid_input("--blocks: index " + std::to_string(i) + " listed twice");
        seen[i] = side;
        in_block2[i] = side == 1;
      }
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (seen[i] < 0) throw invalid_input("--blocks: index " + std::to_string(i) + " missing");
    Decomposition dec = decompose(mu, in_block2);
    cli.print(json{{"a1", scalar_to_json(dec.a1)},
                   {"mu1", weights_json(dec.mu1.weights())},
                   {"a2", scalar_to_json(dec.a2)},
                   {"mu2", weights_json(dec.mu2.weights())}},
              "a1 = " + format_scalar(dec.a1) + ", mu1 = " + weights_text(dec.mu1.weights()) +
                  "\na2 = " + format_scalar(dec.a2) + ", mu2 = " + weights_text(dec.mu2.weights()) + "\n");
  });

  auto* c_tw = app.add_subcommand("tw-check", "verify the epsilon-deformation contracts on sampled data");
  c_tw->add_option("--mode", mode, "mr or interval")->required();
  c_tw->add_option("--epsilon", epsilon, "deformation budget (default 0.1)");
  c_tw->add_option("--samples", nsamples, "sample count (default 100)");
  c_tw->add_option("--seed", seed, "sampling seed (default 1)");
  c_tw->add_option("--input", input, "document whose measures generate K (mr mode)");
  c_tw->add_option("--grid", grid_n, "interval grid size (interval mode, default 101)");
  c_tw->callback([&] {
    TWReport tw;
    Rng rng(seed);
    if (mode == "mr") {
      if (input.empty()) throw invalid_input("tw-check: mr mode requires --input");
      Document doc = parse_document(slurp(input));
      if (doc.measures.size() < 2) throw invalid_input("tw-check: at least two generator measures required");
      std::vector<IdempotentMeasure> gens;
      for (const auto& [name, m] : doc.measures) gens.push_back(m);
      std::vector<MetaMeasure> samples;
      for (std::size_t s = 0; s < nsamples; ++s) {
        auto cw = random_combination_weights(rng, gens.size());
        samples.push_back(random_meta_with_barycenter(rng, combine_measures(gens, cw)));
      }
      tw = tw_verify_mr(samples, gens, epsilon);
    } else if (mode == "interval") {
      SpacePtr sp;
      if (!input.empty()) {
        Document doc = parse_document(slurp(input));
        sp = doc.space;
      } else {
        sp = GroundSpace::interval_grid(grid_n);
      }
      std::vector<IdempotentMeasure> samples;
      for (std::size_t s = 0; s < nsamples; ++s) samples.push_back(random_interval_measure(rng, sp));
      tw = tw_verify_interval(samples, epsilon);
    } else {
      throw invalid_input("tw-check: --mode must be mr or interval");
    }
    Report rep = to_report(tw);
    if (cli.json_out)
      std::cout << emit_json(rep);
    else
      std::cout << emit_text(rep);
    if (!rep.all_pass()) cli.exit_code = 1;
  });

  auto* c_verify = app.add_subcommand("verify", "run the library self-check battery");
  c_verify->add_option("--seed", seed, "battery seed (default 1)");
  c_verify->callback([&] {
    Report rep;
    rep.title = "verify (seed=" + std::to_string(seed) + ")";
    rep.checks = run_verify_battery(seed);
    if (cli.json_out)
      std::cout << emit_json(rep);
    else
      std::cout << emit_text(rep);
    if (!rep.all_pass()) cli.exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return cli.exit_code;
}
