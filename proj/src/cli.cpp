#include "hyperlat/cli.hpp"

#include "hyperlat/error.hpp"
#include "hyperlat/json_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace hyperlat::cli {

using json_io::Json;
using json_io::to_json;

namespace {

struct Options {
  std::string lattice, isometry, generators, point, v0, output, csv, svg, moduli;
  std::string norm = "-2";
  std::string root_norm = "-2";
  int height = 10;
  int budget = 6;
  int depth = -1;  // defaults to the word budget
  std::uint64_t seed = 0;
  int precision = 12;
  std::size_t samples = 100;
  std::size_t steps = 1000;
  int rho = 0;
  long uniform = 0, cc_d4 = 0, cc_a2 = 0;
  int member = 3;
};

LatticeVector parse_vector(const std::string& text, const char* flag) {
  LatticeVector v;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    const auto b = item.find_first_not_of(' '), e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw Error(ErrorCode::MalformedInput, std::string(flag) + ": empty entry");
    item = item.substr(b, e - b + 1);
    v.push_back(json_io::integer_from(Json(item), flag));
  }
  if (v.empty()) throw Error(ErrorCode::MalformedInput, std::string(flag) + ": expected comma-separated integers");
  return v;
}

Integer parse_integer(const std::string& text, const char* flag) { return json_io::integer_from(Json(text), flag); }

class Session {
 public:
  Session(const Options& o, std::string sub) : opt_(o), sub_(std::move(sub)) {
    config_["subcommand"] = sub_;
    config_["height"] = o.height;
    config_["budget"] = o.budget;
    config_["seed"] = o.seed;
    config_["precision"] = o.precision;
  }

  Json& config() { return config_; }
  const Options& opt() const { return opt_; }

  GramLattice lattice() {
    require(opt_.lattice, "--lattice");
    config_["inputs"]["lattice"] = opt_.lattice;
    return json_io::lattice_from(json_io::read_file(opt_.lattice));
  }

  ConeOrientation orientation(const GramLattice& l) {
    if (opt_.v0.empty()) return ConeOrientation::automatic(l);
    config_["v0"] = opt_.v0;
    return ConeOrientation::make(l, parse_vector(opt_.v0, "--v0"));
  }

  FGGroup group(const ConeOrientation& o) {
    require(opt_.generators, "--generators");
    config_["inputs"]["generators"] = opt_.generators;
    std::vector<Isometry> gens;
    for (auto& m : json_io::generator_matrices_from(json_io::read_file(opt_.generators)))
      gens.push_back(make_isometry(o, std::move(m)));
    return FGGroup::make(std::move(gens));
  }

  Isometry isometry(const ConeOrientation& o) {
    require(opt_.isometry, "--isometry");
    config_["inputs"]["isometry"] = opt_.isometry;
    return make_isometry(o, json_io::isometry_matrix_from(json_io::read_file(opt_.isometry)));
  }

  HyperboloidPoint point(const ConeOrientation& o) {
    require(opt_.point, "--point");
    config_["point"] = opt_.point;
    return HyperboloidPoint::make(o, parse_vector(opt_.point, "--point"));
  }

  int depth() {
    const int d = opt_.depth >= 0 ? opt_.depth : opt_.budget;
    config_["depth"] = d;
    return d;
  }

  Json report(Json result) const {
    Json r;
    r["tool"] = "hyperlat";
    r["version"] = kVersion;
    r["config"] = config_;
    r["result"] = std::move(result);
    return r;
  }

  double num(double x) const { return json_io::display(x, opt_.precision); }
  Json num(const std::vector<double>& xs) const { return json_io::display(xs, opt_.precision); }

 private:
  static void require(const std::string& v, const char* flag) {
    if (v.empty()) throw Error(ErrorCode::MalformedInput, std::string(flag) + " is required");
  }
  const Options& opt_;
  std::string sub_;
  Json config_;
};

void emit(const Session& s, const Json& doc, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (s.opt().output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(s.opt().output, std::ios::binary);
  if (!f) throw Error(ErrorCode::MalformedInput, s.opt().output + ": cannot write file");
  f << text;
}

// --- subcommands -----------------------------------------------------------

Json cmd_info(Session& s) {
  const GramLattice l = s.lattice();
  const Signature sig = l.signature();
  Json r;
  r["rank"] = l.rank();
  r["gram"] = to_json(l.gram());
  r["labels"] = l.labels();
  r["determinant"] = to_json(l.determinant());
  r["signature"] = {sig.positive, sig.negative};
  r["hyperbolic"] = sig.positive == 1 && l.rank() >= 2;
  r["v0"] = r["hyperbolic"].get<bool>() ? to_json(s.orientation(l).v0()) : Json();
  return r;
}

Json cmd_roots(Session& s) {
  const GramLattice l = s.lattice();
  const Integer norm = parse_integer(s.opt().norm, "--norm");
  s.config()["norm"] = s.opt().norm;
  RootSearchOptions opts;
  if (!s.opt().moduli.empty()) {
    opts.moduli = parse_vector(s.opt().moduli, "--moduli");
    s.config()["moduli"] = s.opt().moduli;
  }
  return to_json(root_existence(l, norm, s.opt().height, opts));
}

Json cmd_isotropy(Session& s) {
  const GramLattice l = s.lattice();
  Json r = to_json(rational_isotropy(l, s.opt().height));
  r["height_bound"] = s.opt().height;
  return r;
}

Json cmd_enumerate(Session& s) {
  const GramLattice l = s.lattice();
  const Integer norm = parse_integer(s.opt().norm, "--norm");
  s.config()["norm"] = s.opt().norm;
  const auto vs = enumerate_norm_vectors(l, norm, s.opt().height);
  Json r;
  r["kind"] = vs.empty() ? "NoneUpToHeight" : "Witness";
  r["target"] = to_json(norm);
  r["witness"] = vs.empty() ? Json() : to_json(simplest(vs));
  r["certificate"] = Json();
  r["height_bound"] = s.opt().height;
  r["count"] = vs.size();
  r["vectors"] = to_json(vs);
  return r;
}

Json fixed_ray_json(const Session& s, const FixedRay& f) {
  Json j;
  j["rational"] = f.rational;
  j["lattice_ray"] = f.lattice_ray ? to_json(*f.lattice_ray) : Json();
  j["numeric"] = s.num(f.vector.numeric);
  j["ball"] = s.num(f.ball);
  Json coords = Json::array();
  for (const auto& c : f.vector.coords) {
    Json poly = Json::array();
    for (const auto& q : c) poly.push_back(to_json(q));
    coords.push_back(std::move(poly));
  }
  j["field_coords"] = std::move(coords);
  return j;
}

Json cmd_classify(Session& s) {
  const GramLattice l = s.lattice();
  const ConeOrientation o = s.orientation(l);
  const Isometry g = s.isometry(o);
  const Classification& c = classify(g);
  Json r;
  r["class"] = std::string(to_string(c.kind));
  r["order"] = c.kind == IsometryKind::Elliptic ? Json(c.order) : Json();
  r["cyclotomic_orders"] = c.cyclotomic_orders;
  r["charpoly"] = to_json(g.charpoly());
  r["entropy"] = s.num(entropy(g));
  if (c.kind == IsometryKind::Loxodromic) {
    r["lambda_minpoly"] = to_json(c.lambda_minpoly);
    r["lambda_bracket"] = {to_string(c.lambda_lo), to_string(c.lambda_hi)};
    r["lambda"] = s.num(c.lambda);
  } else {
    r["lambda_minpoly"] = Json();
    r["lambda_bracket"] = Json();
    r["lambda"] = 1.0;
  }
  Json rays = Json::array();
  if (c.kind != IsometryKind::Elliptic)
    for (const auto& f : fixed_boundary_points(g)) rays.push_back(fixed_ray_json(s, f));
  r["fixed_rays"] = std::move(rays);
  return r;
}

Json cmd_entropy(Session& s) {
  const GramLattice l = s.lattice();
  const ConeOrientation o = s.orientation(l);
  const Isometry g = s.isometry(o);
  const Classification& c = classify(g);
  Json r;
  r["class"] = std::string(to_string(c.kind));
  r["entropy"] = s.num(entropy(g));
  r["spectral_radius"] = s.num(c.lambda);
  return r;
}

Json cmd_orbit(Session& s) {
  const GramLattice l = s.lattice();
  const ConeOrientation o = s.orientation(l);
  const FGGroup g = s.group(o);
  const HyperboloidPoint x = s.point(o);
  const auto pts = orbit(g, x, s.depth());
  Json list = Json::array();
  for (const auto& p : pts) list.push_back({{"ray", to_json(p.ray())}, {"ball", s.num(to_ball(p))}});
  return {{"count", pts.size()}, {"points", std::move(list)}};
}

Json limits_json(const Session& s, const LimitSample& ls) {
  Json clusters = Json::array();
  for (const auto& c : ls.clusters) clusters.push_back({{"direction", s.num(c.direction)}, {"size", c.size}});
  Json r;
  r["clusters"] = std::move(clusters);
  r["orbit_points"] = ls.orbit_points;
  r["near_boundary"] = ls.near_boundary;
  r["radius_threshold"] = ls.radius_threshold;
  r["angular_tolerance"] = ls.angular_tolerance;
  return r;
}

Json cmd_limits(Session& s) {
  const GramLattice l = s.lattice();
  const ConeOrientation o = s.orientation(l);
  const FGGroup g = s.group(o);
  const HyperboloidPoint x = s.point(o);
  return limits_json(s, limit_points_sample(g, x, s.depth()));
}

Json polytope_json(const PolytopeReport& p) {
  Json r;
  r["passes"] = p.passes;
  r["sides"] = p.sides;
  r["nonempty"] = p.nonempty;
  r["pointed"] = p.pointed;
  r["rays_in_closed_cone"] = p.rays_in_closed_cone;
  r["zero_norm_rays_rational"] = p.zero_norm_rays_rational;
  r["positive_vertices_rational"] = p.positive_vertices_rational;
  r["cusp_candidates"] = to_json(p.cusp_candidates);
  r["interior_vertices"] = to_json(p.interior_vertices);
  r["notes"] = p.notes;
  return r;
}

Json domain_json(DirichletDomain& d, const ConeOrientation& o) {
  Json r;
  Json hs = Json::array();
  for (const auto& h : d.cone.halfspaces()) hs.push_back(to_json(h.normal));
  r["halfspaces"] = std::move(hs);
  const auto& v = extreme_rays(d.cone);
  r["rays"] = to_json(v.rays);
  r["lines"] = to_json(v.lines);
  Json tags = Json::array();
  for (auto t : d.cone.ray_tags()) tags.push_back(std::string(to_string(t)));
  r["ray_tags"] = std::move(tags);
  r["truncated_at"] = d.truncated_at;
  r["elements_used"] = d.elements_used;
  r["polytope"] = polytope_json(polytope_hypothesis_check(d.cone, o));
  return r;
}

Json cmd_dirichlet(Session& s) {
  const GramLattice l = s.lattice();
  const ConeOrientation o = s.orientation(l);
  const FGGroup g = s.group(o);
  const HyperboloidPoint h = s.point(o);
  DirichletDomain d = dirichlet_domain(g, h, s.opt().budget);
  return domain_json(d, o);
}

Json cmd_tile_check(Session& s) {
  const GramLattice l = s.lattice();
  const ConeOrientation o = s.orientation(l);
  const FGGroup g = s.group(o);
  const HyperboloidPoint h = s.point(o);
  s.config()["samples"] = s.opt().samples;
  DirichletDomain d = dirichlet_domain(g, h, s.opt().budget);
  const TilingReport t = tiling_check(d.cone, g, s.opt().samples, s.opt().budget, s.opt().seed);
  Json r;
  r["domain"] = domain_json(d, o);
  r["samples"] = t.samples;
  r["interior_samples"] = t.interior_samples;
  r["overlaps"] = t.overlaps;
  r["reach_samples"] = t.reach_samples;
  r["unreachable"] = t.unreachable;
  r["overlap_points"] = to_json(t.overlap_points);
  r["unreachable_points"] = to_json(t.unreachable_points);
  r["passes"] = t.passes();
  return r;
}

Json cmd_chamber_walk(Session& s) {
  const GramLattice l = s.lattice();
  const ConeOrientation o = s.orientation(l);
  const LatticeVector x = parse_vector(s.opt().point, "--point");
  s.config()["point"] = s.opt().point;
  s.config()["root_norm"] = s.opt().root_norm;
  s.config()["steps"] = s.opt().steps;
  const ChamberWalk w = chamber_walk(o, x, parse_integer(s.opt().root_norm, "--root-norm"), s.opt().height,
                                     s.opt().steps);
  return {{"image", to_json(w.image)}, {"word", to_json(w.word)}, {"roots_considered", w.roots_considered}};
}

Json cmd_criteria_k3(Session& s) {
  const GramLattice l = s.lattice();
  const int rho = s.opt().rho > 0 ? s.opt().rho : static_cast<int>(l.rank());
  s.config()["rho"] = rho;
  std::optional<FGGroup> g;
  if (!s.opt().generators.empty()) g = s.group(s.orientation(l));
  return to_json(k3_criteria(l, s.opt().height, g, rho, s.opt().budget), s.opt().precision);
}

Json cmd_families(Session& s) {
  const Options& o = s.opt();
  const int chosen = (o.uniform != 0) + (o.cc_d4 != 0) + (o.cc_a2 != 0);
  if (chosen != 1) throw Error(ErrorCode::InvalidParameter, "choose exactly one of --uniform, --cc-d4, --cc-a2");
  GramLattice l = [&] {
    if (o.uniform != 0) {
      s.config()["uniform"] = o.uniform;
      s.config()["member"] = o.member;
      auto [r3, r4] = uniform_lattice_family(o.uniform);
      return o.member == 4 ? r4 : r3;
    }
    if (o.cc_d4 != 0) {
      s.config()["cc_d4"] = o.cc_d4;
      return convex_cocompact_rank5_family({RankFiveSelector::Kind::D4, o.cc_d4});
    }
    s.config()["cc_a2"] = o.cc_a2;
    return convex_cocompact_rank5_family({RankFiveSelector::Kind::A2Squared, o.cc_a2});
  }();
  return json_io::lattice_json(l);
}

// Plot output: CSV rows x1..xn,tag and an SVG projection onto (x1, x2).
std::string svg_plot(const std::vector<std::pair<std::vector<double>, std::string>>& rows) {
  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"420\" height=\"420\" viewBox=\"-1.05 -1.05 2.1 2.1\">\n"
      "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"0.004\"/>\n";
  char buf[200];
  for (const auto& [p, tag] : rows) {
    const double x = p[0], y = p.size() > 1 ? -p[1] : 0.0;
    const char* color = tag == "limit" ? "red" : (tag == "basepoint" ? "blue" : "black");
    const double r = tag == "orbit" ? 0.006 : 0.012;
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.6f\" cy=\"%.6f\" r=\"%.3f\" fill=\"%s\"/>\n", x, y, r, color);
    out += buf;
  }
  return out + "</svg>\n";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::MalformedInput, path + ": cannot write file");
  f << text;
}

int cmd_plot(Session& s, std::ostream& out) {
  const GramLattice l = s.lattice();
  const ConeOrientation o = s.orientation(l);
  const FGGroup g = s.group(o);
  const HyperboloidPoint x = s.point(o);
  const int depth = s.depth();
  std::vector<std::pair<std::vector<double>, std::string>> rows;
  rows.emplace_back(to_ball(x), "basepoint");
  for (const auto& p : orbit(g, x, depth)) rows.emplace_back(to_ball(p), "orbit");
  for (const auto& c : limit_points_sample(g, x, depth).clusters) rows.emplace_back(c.direction, "limit");

  std::string csv;
  const std::size_t n = o.dimension();
  for (std::size_t i = 0; i < n; ++i) csv += "x" + std::to_string(i + 1) + ",";
  csv += "tag\n";
  char buf[64];
  for (const auto& [p, tag] : rows) {
    for (double v : p) {
      std::snprintf(buf, sizeof buf, "%.*g,", s.opt().precision, s.num(v));
      csv += buf;
    }
    csv += tag + "\n";
  }
  const bool svg_ok = n <= 3;
  if (s.opt().csv.empty() && s.opt().svg.empty()) {
    out << csv;
    return 0;
  }
  Json r;
  if (!s.opt().csv.empty()) {
    write_text(s.opt().csv, csv);
    s.config()["csv"] = s.opt().csv;
  }
  if (!s.opt().svg.empty()) {
    s.config()["svg"] = s.opt().svg;
    if (svg_ok) write_text(s.opt().svg, svg_plot(rows));
  }
  r["rows"] = rows.size();
  r["svg_written"] = svg_ok && !s.opt().svg.empty();
  r["note"] = svg_ok ? "" : "SVG needs hyperbolic dimension <= 3; CSV only";
  emit(s, s.report(r), out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact computations on hyperbolic lattices of signature (1,n)", "hyperlat"};
  app.set_version_flag("--version", std::string("hyperlat ") + kVersion);
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--height", o.height, "Sup-norm bound for searches (>= 1)")->check(CLI::Range(1, 1 << 20));
    sub->add_option("--budget", o.budget, "Word-length budget W (>= 0)")->check(CLI::Range(0, 1 << 20));
    sub->add_option("--seed", o.seed, "Random seed for sampled checks");
    sub->add_option("--precision", o.precision, "Significant digits of floating display fields")
        ->check(CLI::Range(1, 17));
    sub->add_option("--output,-o", o.output, "Write the JSON report to this file instead of stdout");
    sub->add_option("--v0", o.v0, "Vector fixing the positive cone, e.g. 1,0,0 (default: automatic)");
  };
  auto lattice = [&](CLI::App* sub) { sub->add_option("--lattice", o.lattice, "Lattice JSON file")->required(); };
  auto group = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--generators", o.generators, "Generator JSON file");
    if (required) opt->required();
  };
  auto point = [&](CLI::App* sub, const char* what) {
    sub->add_option("--point", o.point, what)->required();
  };
  auto depth = [&](CLI::App* sub) {
    sub->add_option("--depth", o.depth, "Word length of the orbit (default: --budget)")->check(CLI::Range(0, 1 << 20));
  };

  std::map<std::string, std::function<Json(Session&)>> handlers;
  auto add = [&](const char* name, const char* help, std::function<Json(Session&)> h) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    handlers[name] = std::move(h);
    return sub;
  };

  auto* info = add("info", "Rank, determinant, signature and cone orientation of a lattice", cmd_info);
  lattice(info);
  auto* roots = add("roots", "Search for vectors of a given norm (default -2) with certificates", cmd_roots);
  lattice(roots);
  roots->add_option("--norm", o.norm, "Target norm (default -2)");
  roots->add_option("--moduli", o.moduli, "Congruence moduli ladder, e.g. 3,4,5,8");
  auto* iso = add("isotropy", "Decide rational isotropy and search for an integral witness", cmd_isotropy);
  lattice(iso);
  auto* en = add("enumerate", "List vectors of a given norm and sup-norm <= height", cmd_enumerate);
  lattice(en);
  en->add_option("--norm", o.norm, "Target norm");
  auto* cl = add("classify", "Classify an isometry and report fixed boundary points", cmd_classify);
  lattice(cl);
  cl->add_option("--isometry", o.isometry, "Isometry JSON file")->required();
  auto* ent = add("entropy", "Entropy (log spectral radius) of an isometry", cmd_entropy);
  lattice(ent);
  ent->add_option("--isometry", o.isometry, "Isometry JSON file")->required();
  auto* orb = add("orbit", "Orbit of a point under words of bounded length", cmd_orbit);
  lattice(orb);
  group(orb, true);
  point(orb, "Ray of the base point, e.g. 1,0,0");
  depth(orb);
  auto* lim = add("limits", "Clustered approximation of the limit set", cmd_limits);
  lattice(lim);
  group(lim, true);
  point(lim, "Ray of the base point");
  depth(lim);
  auto* dir = add("dirichlet", "Budget-truncated Dirichlet domain as a rational cone", cmd_dirichlet);
  lattice(dir);
  group(dir, true);
  point(dir, "Ray of the center point");
  auto* tile = add("tile-check", "Sampled overlap and coverage check for a Dirichlet domain", cmd_tile_check);
  lattice(tile);
  group(tile, true);
  point(tile, "Ray of the center point");
  tile->add_option("--samples", o.samples, "Number of sample points")->check(CLI::Range(1, 10'000'000));
  auto* cw = add("chamber-walk", "Reflect a vector into the chamber of a root system", cmd_chamber_walk);
  lattice(cw);
  point(cw, "Lattice vector inside the positive cone");
  cw->add_option("--root-norm", o.root_norm, "Norm of the reflecting roots (default -2)");
  cw->add_option("--steps", o.steps, "Maximum number of reflections");
  auto* fam = add("families", "Write a lattice file for one of the reference families", cmd_families);
  fam->add_option("--uniform", o.uniform, "diag(4,-8,-12k) family, k > 0 and k = 1 mod 3");
  fam->add_option("--member", o.member, "Rank of the --uniform member to write (3 or 4)")->check(CLI::IsMember({3, 4}));
  fam->add_option("--cc-d4", o.cc_d4, "<2^k> + D4 with k >= 5");
  fam->add_option("--cc-a2", o.cc_a2, "<2*3^(2m-1)> + A2 + A2 with m >= 2");

  CLI::App* criteria = app.add_subcommand("criteria", "Criteria reports");
  criteria->require_subcommand(1);
  CLI::App* k3 = criteria->add_subcommand("k3", "Lattice, fibration, convex-cocompactness and entropy report");
  common(k3);
  lattice(k3);
  group(k3, false);
  k3->add_option("--rho", o.rho, "Picard number (default: lattice rank)")->check(CLI::Range(1, 22));

  CLI::App* plot = app.add_subcommand("plot", "CSV (and SVG for dimension <= 3) of orbit and limit points");
  common(plot);
  lattice(plot);
  group(plot, true);
  point(plot, "Ray of the base point");
  depth(plot);
  plot->add_option("--csv", o.csv, "CSV output path (default: stdout when no --svg)");
  plot->add_option("--svg", o.svg, "SVG output path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (criteria->parsed()) {
      Session s(o, "criteria k3");
      const Json r = cmd_criteria_k3(s);
      emit(s, s.report(r), out);
      return 0;
    }
    if (plot->parsed()) {
      Session s(o, "plot");
      return cmd_plot(s, out);
    }
    for (const auto& [name, h] : handlers) {
      if (!app.get_subcommand(name)->parsed()) continue;
      Session s(o, name);
      Json r = h(s);
      if (name == "families") {
        r["generated_by"] = {{"tool", "hyperlat"}, {"version", kVersion}, {"config", s.config()}};
        emit(s, r, out);
      } else {
        emit(s, s.report(std::move(r)), out);
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_budget_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace hyperlat::cli
