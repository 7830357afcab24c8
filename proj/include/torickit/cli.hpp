// Command-line front end. run() returns 0 on success, 1 when a checked
// property is false and 2 on input errors.
#pragma once

#include "torickit/casebook.hpp"
#include "torickit/io.hpp"
#include "torickit/markov.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>

namespace torickit::cli {

enum Exit { ok = 0, checked_false = 1, input_error = 2 };

namespace detail {

using nlohmann::json;

// Prints a plain line, or a JSON record in --json-lines mode.
class Reporter {
 public:
  Reporter(std::ostream& out, bool json_lines) : out_(out), json_(json_lines) {}
  bool json_lines() const { return json_; }
  void text(const std::string& line) {
    if (!json_) out_ << line << "\n";
  }
  void record(const json& j) {
    if (json_) out_ << j.dump() << "\n";
  }
  void both(const std::string& line, const json& j) {
    if (json_) out_ << j.dump() << "\n";
    else out_ << line << "\n";
  }
  std::ostream& raw() { return out_; }

 private:
  std::ostream& out_;
  bool json_;
};

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

inline std::vector<std::string> to_strings(const LatticeVector& v) {
  std::vector<std::string> s;
  for (const auto& c : v) s.push_back(c.str());
  return s;
}

inline LatticeVector parse_vector_arg(const std::vector<std::string>& parts, std::size_t rank) {
  if (parts.size() != rank)
    throw Error("expected " + std::to_string(rank) + " coordinates, got " + std::to_string(parts.size()));
  std::vector<Integer> c;
  for (const auto& p : parts) {
    std::size_t i = (p.size() > 1 && p[0] == '-') ? 1 : 0;
    if (p.empty() || !std::all_of(p.begin() + static_cast<long>(i), p.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      throw Error("not an integer: '" + p + "'");
    c.emplace_back(p);
  }
  return LatticeVector(std::move(c));
}

// Stratum given by file ray indices, as fan ray indices.
inline FanStratum stratum_from_file(const FanFile& ff, const std::vector<std::size_t>& file_indices) {
  FanStratum s;
  for (auto i : file_indices) {
    if (i >= ff.file_rays.size()) throw Error("ray index " + std::to_string(i) + " does not exist");
    s.cone_ray_indices.push_back(ff.fan_index(i));
  }
  std::sort(s.cone_ray_indices.begin(), s.cone_ray_indices.end());
  return s;
}

inline std::map<std::string, bool> fan_labels(const Fan& fan) {
  std::map<std::string, bool> m;
  m["complete"] = is_complete(fan);
  m["simplicial"] = is_simplicial(fan);
  m["smooth"] = is_smooth(fan);
  bool fano = false;
  try {
    fano = is_fano(ToricVariety{fan});
  } catch (const Error&) {
  }
  m["fano"] = fano;
  return m;
}

inline int expect(const std::optional<std::string>& label, const std::map<std::string, bool>& truth,
                  std::ostream& err) {
  if (!label) return ok;
  auto it = truth.find(*label);
  if (it == truth.end()) {
    std::vector<std::string> known;
    for (const auto& [k, v] : truth) known.push_back(k);
    err << "unknown --expect label '" << *label << "' (known: " << join(known, ", ") << ")\n";
    return input_error;
  }
  if (!it->second) {
    err << "expected " << *label << ", but it does not hold\n";
    return checked_false;
  }
  return ok;
}

struct Options {
  bool json_lines = false;
  std::optional<std::string> expect;
  std::string file;
  std::vector<std::size_t> cone;
  std::vector<std::string> ray;
  std::vector<std::string> valuation;
  std::vector<std::string> parts;
  std::size_t dim = 2;
  bool count_only = false;
  long max = 30;
  std::vector<std::string> triple;
};

inline int fan_check(const Options& o, Reporter& rep, std::ostream& err) {
  auto ff = load_fan_file(o.file);
  const Fan& fan = ff.fan;
  auto labels = fan_labels(fan);
  std::string cl = to_string(class_group(ToricVariety{fan}));
  std::vector<std::string> words{"valid"};
  for (const auto& [k, v] : labels) words.push_back(v ? k : "not " + k);
  words.push_back(std::to_string(fan.rays().size()) + " rays");
  words.push_back(std::to_string(fan.max_cones().size()) + " maximal cones");
  words.push_back("Cl = " + cl);
  json j{{"command", "fan check"}, {"file", o.file}, {"valid", true}, {"class_group", cl},
         {"rays", fan.rays().size()}, {"max_cones", fan.max_cones().size()}};
  for (const auto& [k, v] : labels) j[k] = v;
  rep.both(join(words, "; "), j);
  return expect(o.expect, labels, err);
}

inline int fan_resolve2d(const Options& o, Reporter& rep) {
  auto ff = load_fan_file(o.file);
  if (ff.fan.rank() != 2) throw Error("resolve2d needs a rank 2 fan");
  auto fine = resolve_fan_2d(ff.fan);
  std::size_t added = fine.rays().size() - ff.fan.rays().size();
  if (rep.json_lines()) {
    json rays = json::array();
    for (const auto& r : fine.rays()) rays.push_back(to_strings(r));
    rep.record({{"command", "fan resolve2d"}, {"added_rays", added}, {"rays", rays}, {"smooth", is_smooth(fine)}});
  } else {
    rep.raw() << "# " << added << " rays added\n" << emit_fan(fine);
  }
  return ok;
}

inline int fan_subdivide(const Options& o, Reporter& rep) {
  auto ff = load_fan_file(o.file);
  auto stratum = stratum_from_file(ff, o.cone);
  std::optional<LatticeVector> v;
  if (!o.ray.empty()) v = parse_vector_arg(o.ray, ff.fan.rank());
  auto fine = star_subdivision(ff.fan, stratum, v);
  if (rep.json_lines()) {
    json rays = json::array();
    for (const auto& r : fine.rays()) rays.push_back(to_strings(r));
    rep.record({{"command", "fan subdivide"}, {"rays", rays}, {"max_cones", fine.max_cones().size()}});
  } else {
    rep.raw() << emit_fan(fine);
  }
  return ok;
}

inline Decomposition decomposition_from_args(const PairFile& pf, const std::vector<std::string>& parts) {
  if (parts.empty()) return decomposition_by_primes(pf.pair);
  Decomposition d;
  for (const auto& p : parts) {
    auto colon = p.find(':');
    if (colon == std::string::npos) throw Error("part '" + p + "' is not of the form <weight>:<i>,<j>,...");
    Rational w = parse_rational(p.substr(0, colon));
    RaySet rays;
    std::stringstream ss(p.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw Error("bad ray index '" + item + "' in part '" + p + "'");
      auto i = std::stoul(item);
      if (i >= pf.fan_file.file_rays.size()) throw Error("ray index " + item + " does not exist");
      rays.push_back(pf.fan_file.fan_index(i));
    }
    d.add(w, rays);
  }
  return d;
}

inline int pair_classify(const Options& o, Reporter& rep, std::ostream& err) {
  auto pf = load_pair_file(o.file);
  const auto& pair = pf.pair;
  if (auto r = validate_pair(pair); !r.valid) {
    rep.both("invalid: " + r.message, {{"command", "pair classify"}, {"valid", false}, {"message", r.message}});
    return checked_false;
  }
  auto profile = singularity_profile(pair);
  bool cy = is_log_cy(pair);
  auto idx = pair_index(pair);
  auto c = complexity(pair, decomposition_by_primes(pair));
  std::string type = to_string(profile.finest());
  rep.both(type + "; " + (cy ? "log CY" : "not log CY") + "; index " + idx.str() + "; complexity " + to_string(c.c()),
           {{"command", "pair classify"},
            {"valid", true},
            {"type", type},
            {"terminal", profile.terminal},
            {"canonical", profile.canonical},
            {"klt", profile.klt},
            {"lc", profile.lc},
            {"log_cy", cy},
            {"index", idx.str()},
            {"complexity", to_string(c.c())}});
  std::map<std::string, bool> truth{{"terminal", profile.terminal}, {"canonical", profile.canonical},
                                    {"klt", profile.klt},           {"lc", profile.lc},
                                    {"not-lc", !profile.lc},        {"log-cy", cy}};
  return expect(o.expect, truth, err);
}

inline int pair_discrepancy(const Options& o, Reporter& rep) {
  auto pf = load_pair_file(o.file);
  const auto& pair = pf.pair;
  if (o.valuation.empty()) {
    // Log discrepancies of the divisors on X.
    for (std::size_t i = 0; i < pf.fan_file.file_rays.size(); ++i) {
      const auto& r = pf.fan_file.file_rays[i];
      auto a = log_discrepancy(pair, r);
      rep.both("ray " + std::to_string(i) + " " + to_string(r) + ": " + to_string(a),
               {{"ray", i}, {"vector", to_strings(r)}, {"log_discrepancy", to_string(a)}});
    }
    return ok;
  }
  auto v = parse_vector_arg(o.valuation, pair.dim());
  auto a = log_discrepancy(pair, v);
  std::vector<std::string> labels;
  if (!pair.fan().index_of(v)) labels = classify_extracted_place(pair, v).labels();
  std::string line = to_string(v) + ": " + to_string(a);
  if (!labels.empty()) line += " (" + join(labels, ", ") + ")";
  else line += " (divisor on X)";
  rep.both(line, {{"vector", to_strings(v)}, {"log_discrepancy", to_string(a)}, {"labels", labels},
                  {"exceptional", !labels.empty()}});
  return ok;
}

inline int pair_pullback(const Options& o, Reporter& rep, std::ostream& err) {
  auto pf = load_pair_file(o.file);
  auto stratum = stratum_from_file(pf.fan_file, o.cone);
  std::optional<LatticeVector> v;
  if (!o.ray.empty()) v = parse_vector_arg(o.ray, pf.pair.dim());
  auto fine = star_subdivision(pf.pair.fan(), stratum, v);
  try {
    auto pulled = crepant_pullback(pf.pair, fine);
    if (rep.json_lines()) {
      json coeffs = json::array();
      for (std::size_t i = 0; i < fine.rays().size(); ++i)
        coeffs.push_back({{"ray", to_strings(fine.ray(i))}, {"coeff", to_string(pulled.coefficient(i))}});
      rep.record({{"command", "pair pullback"}, {"coefficients", coeffs}});
    } else {
      rep.raw() << emit_pair(pulled);
    }
    return ok;
  } catch (const NegativeCoefficientError& e) {
    err << e.what() << "\n";
    rep.record({{"command", "pair pullback"}, {"effective", false}, {"ray", to_strings(e.ray())},
                {"coeff", to_string(e.coefficient())}});
    return checked_false;
  }
}

inline int pair_complexity(const Options& o, Reporter& rep) {
  auto pf = load_pair_file(o.file);
  auto d = decomposition_from_args(pf, o.parts);
  auto r = complexity(pf.pair, d);
  rep.both(to_string(r), {{"command", "pair complexity"},
                          {"dim", r.dim()},
                          {"rho", r.rho()},
                          {"norm", to_string(r.norm())},
                          {"c", to_string(r.c())}});
  return ok;
}

inline int polytope_check(const Options& o, Reporter& rep, std::ostream& err) {
  auto p = load_polytope_file(o.file);
  std::map<std::string, bool> truth;
  bool interior = p.hull().has_origin_in_interior();
  truth["origin-interior"] = interior;
  truth["reflexive"] = interior && is_reflexive(p);
  truth["smooth-fano"] = interior && is_smooth_fano_polytope(p);
  std::vector<std::string> words{std::to_string(p.vertices().size()) + " vertices"};
  json j{{"command", "polytope check"}, {"vertices", p.vertices().size()}};
  for (const auto& [k, v] : truth) {
    words.push_back(v ? k : "not " + k);
    j[k] = v;
  }
  if (interior) {
    auto d = dual_polytope(p);
    std::vector<std::string> dv;
    for (const auto& x : d.vertices()) dv.push_back(to_string(x));
    words.push_back("dual conv{" + join(dv, ", ") + "}");
    j["dual"] = dv;
  }
  rep.both(join(words, "; "), j);
  return expect(o.expect, truth, err);
}

inline int polytope_enumerate(const Options& o, Reporter& rep) {
  if (o.dim != 2) throw Error("enumeration is only available in dimension 2");
  auto all = enumerate_reflexive_polygons();
  if (o.count_only) {
    rep.both(std::to_string(all.size()), {{"command", "polytope enumerate-reflexive"}, {"count", all.size()}});
    return ok;
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    json verts = json::array();
    for (const auto& v : all[i].vertices()) verts.push_back(to_strings(v));
    bool smooth = is_smooth_fano_polytope(all[i]);
    rep.both(std::to_string(i + 1) + " " + to_string(all[i]) + (smooth ? " smooth" : ""),
             {{"index", i + 1}, {"vertices", verts}, {"smooth_fano", smooth}});
  }
  return ok;
}

inline int markov_table(const Options& o, Reporter& rep) {
  if (o.max < 1) throw Error("--max must be at least 1");
  rep.text("a b c d weights degree amplitude wellformed quasismooth fano");
  for (const auto& t : enumerate_markov(Integer(o.max))) {
    auto h = hkw_surface(t);
    std::string w = "(" + h.weights[0].str() + "," + h.weights[1].str() + "," + h.weights[2].str() + "," +
                    h.weights[3].str() + ")";
    auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
    rep.both(t.a().str() + " " + t.b().str() + " " + t.c().str() + " " + h.weights[2].str() + " " + w + " " +
                 h.degree.str() + " " + h.amplitude.str() + " " + yn(h.wellformed) + " " + yn(h.quasismooth) + " " +
                 yn(h.fano),
             {{"triple", {t.a().str(), t.b().str(), t.c().str()}},
              {"d", h.weights[2].str()},
              {"weights", {h.weights[0].str(), h.weights[1].str(), h.weights[2].str(), h.weights[3].str()}},
              {"degree", h.degree.str()},
              {"amplitude", h.amplitude.str()},
              {"wellformed", h.wellformed},
              {"quasismooth", h.quasismooth},
              {"fano", h.fano}});
  }
  return ok;
}

inline int markov_adjacent(const Options& o, Reporter& rep) {
  if (o.triple.size() != 3) throw Error("expected three entries a b c");
  std::vector<Integer> x;
  for (const auto& s : o.triple) x.push_back(parse_vector_arg({s}, 1)[0]);
  MarkovTriple t(x[0], x[1], x[2]);
  auto n = adjacent_triple(t);
  rep.both(to_string(t) + " -> " + to_string(n), {{"triple", {t.a().str(), t.b().str(), t.c().str()}},
                                                  {"adjacent", {n.a().str(), n.b().str(), n.c().str()}}});
  return ok;
}

inline int casebook_segre(Reporter& rep) {
  auto cert = segre_certificate();
  for (const auto& [pt, c] : cert.coefficients)
    rep.both("coefficient " + pt + " " + to_string(c), {{"name", "coefficient " + pt}, {"status", "pass"},
                                                        {"witness", to_string(c)}});
  rep.both("contracted lines " + std::to_string(cert.contracted_lines),
           {{"name", "contracted lines"}, {"status", "pass"}, {"witness", std::to_string(cert.contracted_lines)}});
  rep.both(std::string("effective ") + (cert.effective ? "true" : "false"),
           {{"name", "effective"}, {"status", cert.effective ? "pass" : "fail"},
            {"witness", cert.effective ? "true" : "false"}});
  return cert.effective ? ok : checked_false;
}

inline int casebook_suite(Reporter& rep) {
  bool all = true;
  for (const auto& line : toric_boundary_suite()) {
    all = all && line.passed;
    rep.both(line.name + " " + (line.passed ? "pass" : "FAIL") + " " + line.witness,
             {{"name", line.name}, {"status", line.passed ? "pass" : "fail"}, {"witness", line.witness}});
  }
  return all ? ok : checked_false;
}

}  // namespace detail

/// Runs one command line (without the program name).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Exact toric geometry checks", "torickit"};
  app.require_subcommand(1);
  app.add_flag("--json-lines", o.json_lines, "one JSON record per line");

  auto file_opt = [&](CLI::App* sub) { sub->add_option("file", o.file, "input file")->required(); };
  auto expect_opt = [&](CLI::App* sub) {
    sub->add_option("--expect", o.expect, "exit 1 unless the label holds");
  };

  auto fan = app.add_subcommand("fan", "fan files");
  fan->require_subcommand(1);
  auto fan_check = fan->add_subcommand("check", "validate a fan and report its properties");
  file_opt(fan_check);
  expect_opt(fan_check);
  auto fan_resolve = fan->add_subcommand("resolve2d", "minimal resolution of a rank 2 fan");
  file_opt(fan_resolve);
  auto fan_sub = fan->add_subcommand("subdivide", "star subdivision at a cone");
  file_opt(fan_sub);
  fan_sub->add_option("--cone", o.cone, "ray indices of the cone")->required();
  fan_sub->add_option("--ray", o.ray, "new ray (default: sum of the cone's rays)");

  auto pair = app.add_subcommand("pair", "pair files");
  pair->require_subcommand(1);
  auto pair_classify = pair->add_subcommand("classify", "singularity class, log CY, index and complexity");
  file_opt(pair_classify);
  expect_opt(pair_classify);
  auto pair_disc = pair->add_subcommand("discrepancy", "log discrepancy of a toric valuation");
  file_opt(pair_disc);
  pair_disc->add_option("--valuation", o.valuation, "primitive lattice vector (default: every ray)");
  auto pair_pull = pair->add_subcommand("pullback", "log pullback to a star subdivision");
  file_opt(pair_pull);
  pair_pull->add_option("--cone", o.cone, "ray indices of the cone")->required();
  pair_pull->add_option("--ray", o.ray, "new ray (default: sum of the cone's rays)");
  auto pair_cx = pair->add_subcommand("complexity", "complexity of a decomposition");
  file_opt(pair_cx);
  pair_cx->add_option("--part", o.parts, "part <weight>:<i>,<j>,... (default: prime decomposition)");

  auto poly = app.add_subcommand("polytope", "polytope files");
  poly->require_subcommand(1);
  auto poly_check = poly->add_subcommand("check", "reflexivity and smoothness");
  file_opt(poly_check);
  expect_opt(poly_check);
  auto poly_enum = poly->add_subcommand("enumerate-reflexive", "reflexive polytopes up to isomorphism");
  poly_enum->add_option("--dim", o.dim, "dimension (only 2)");
  poly_enum->add_flag("--count-only", o.count_only, "print the count only");

  auto markov = app.add_subcommand("markov", "Markov triples");
  markov->require_subcommand(1);
  auto markov_table = markov->add_subcommand("table", "triples with their weighted hypersurfaces");
  markov_table->add_option("--max", o.max, "largest entry");
  auto markov_adj = markov->add_subcommand("adjacent", "the triple (a, b, 3ab - c)");
  markov_adj->add_option("triple", o.triple, "a b c")->required()->expected(3);

  auto casebook = app.add_subcommand("casebook", "worked examples");
  casebook->require_subcommand(1);
  auto cb_segre = casebook->add_subcommand("segre", "crepant certificate for the Segre arrangement");
  auto cb_suite = casebook->add_subcommand("suite", "reduced boundary checks over bundled fans");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }

  detail::Reporter rep(out, o.json_lines);
  try {
    if (fan_check->parsed()) return detail::fan_check(o, rep, err);
    if (fan_resolve->parsed()) return detail::fan_resolve2d(o, rep);
    if (fan_sub->parsed()) return detail::fan_subdivide(o, rep);
    if (pair_classify->parsed()) return detail::pair_classify(o, rep, err);
    if (pair_disc->parsed()) return detail::pair_discrepancy(o, rep);
    if (pair_pull->parsed()) return detail::pair_pullback(o, rep, err);
    if (pair_cx->parsed()) return detail::pair_complexity(o, rep);
    if (poly_check->parsed()) return detail::polytope_check(o, rep, err);
    if (poly_enum->parsed()) return detail::polytope_enumerate(o, rep);
    if (markov_table->parsed()) return detail::markov_table(o, rep);
    if (markov_adj->parsed()) return detail::markov_adjacent(o, rep);
    if (cb_segre->parsed()) return detail::casebook_segre(rep);
    if (cb_suite->parsed()) return detail::casebook_suite(rep);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
  err << app.help();
  return input_error;
}

}  // namespace torickit::cli
