// Copyright 2026 The onebit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "onebit/error.hpp"
#include "onebit/experiments.hpp"
#include "onebit/lhv.hpp"
#include "onebit/polytope.hpp"
#include "onebit/qstate.hpp"
#include "onebit/stats.hpp"

namespace onebit::cli {
namespace {

using nlohmann::json;

// Values just above pi/4 (as typed with four or five digits) are read as pi/4.
constexpr double kThetaSnap = 1e-4;

struct Common {
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out_dir;
};

void add_common(CLI::App* sub, Common& c, bool with_workers) {
  sub->add_option("--seed", c.seed, "Master seed (recorded in every output)");
  if (with_workers) {
    sub->add_option("--workers", c.workers, "Worker threads; results do not depend on it")
        ->check(CLI::PositiveNumber);
  }
  sub->add_option("--out-dir", c.out_dir,
                  std::string("Output root (default $") + kOutDirEnv + " or ./onebit_runs)");
}

std::string resolve_out_dir(const Common& c) {
  if (!c.out_dir.empty()) return c.out_dir;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return "onebit_runs";
}

double resolve_theta(const std::string& text) {
  double theta = parse_angle(text);
  const double quarter = std::numbers::pi / 4;
  if (theta > quarter && theta - quarter <= kThetaSnap) theta = quarter;
  return theta;
}

BlochVector parse_vector(const std::string& text) {
  std::stringstream ss(text);
  std::string item;
  std::vector<double> v;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse vector '" + text + "'");
    }
  }
  if (v.size() != 3) throw InvalidArgument("vector needs three components: '" + text + "'");
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(n > 0.0)) throw InvalidArgument("zero vector '" + text + "'");
  return BlochVector::normalized({v[0], v[1], v[2]});
}

json vec_json(const BlochVector& v) { return {v.x(), v.y(), v.z()}; }

BobConvention parse_convention(const std::string& text) {
  if (text == "unconjugated") return BobConvention::kUnconjugated;
  if (text == "conjugated") return BobConvention::kConjugated;
  throw InvalidArgument("unknown convention '" + text + "'");
}

Smoothing parse_smoothing(const std::string& text) {
  if (text == "none") return Smoothing::kNone;
  if (text == "floor") return Smoothing::kFloor;
  throw InvalidArgument("unknown smoothing '" + text + "'");
}

std::optional<Scenario> parse_optional_scenario(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return Scenario::parse(text);
}

Scenario require_scenario(const std::optional<Scenario>& s, const std::string& what) {
  if (!s) throw InvalidArgument(what + " needs --scenario");
  return *s;
}

// builtin:table2, builtin:white, builtin:cyclic, or a behavior JSON file.
Behavior load_point(const std::string& source, const std::optional<Scenario>& scenario) {
  if (source == "builtin:table2") return table2_point();
  if (source == "builtin:white" || source == "white") {
    return white_noise(require_scenario(scenario, source));
  }
  if (source == "builtin:cyclic") return cyclic_correlated_point(require_scenario(scenario, source));
  if (source.rfind("builtin:", 0) == 0) throw InvalidArgument("unknown built-in point '" + source + "'");
  return Behavior::from_json(read_json_file(source));
}

Functional load_functional(const std::string& source) {
  if (source == "builtin:table2") return table2_functional();
  if (source == "builtin:chsh") return chsh_functional();
  if (source.rfind("builtin:", 0) == 0) {
    throw InvalidArgument("unknown built-in functional '" + source + "'");
  }
  return functional_from_json(read_json_file(source));
}

std::string with_config(const json& config, json body) {
  body["config"] = config;
  return body.dump(2) + "\n";
}

std::string csv_with_config(const json& config, const std::string& csv) {
  return "# config: " + config.dump() + "\n" + csv;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt_fixed(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void finish(std::ostream& out, const Common& c, const std::string& experiment,
            const json& config, const std::map<std::string, std::string>& files) {
  const std::string dir =
      write_run_directory(resolve_out_dir(c), experiment, c.seed, config, files);
  out << "run_dir: " << dir << "\n";
}

json base_config(const std::string& command, const Common& c) {
  return {{"command", command}, {"seed", c.seed}, {"code_version", version()}};
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  Common common;
  std::string protocol = "max-entangled";
  std::string theta;
  std::uint64_t n = 10000;
  std::size_t settings = 1;
  std::string a, b;
  std::string smoothing = "none";
};

int do_simulate(const SimulateArgs& args, std::ostream& out) {
  const Protocol protocol = Protocol::parse(args.protocol);
  double theta = std::numbers::pi / 4;
  if (!args.theta.empty()) {
    theta = resolve_theta(args.theta);
  } else if (protocol.coefficients()) {
    theta = protocol.coefficients()->theta;
  }
  const TwoQubitState state(theta);
  if (args.n == 0) throw InvalidArgument("--n must be at least 1");
  const Smoothing smoothing = parse_smoothing(args.smoothing);

  std::vector<SettingPair> settings;
  if (!args.a.empty() || !args.b.empty()) {
    if (args.a.empty() || args.b.empty()) throw InvalidArgument("--a and --b go together");
    settings.push_back({parse_vector(args.a), parse_vector(args.b)});
  } else {
    if (args.settings == 0) throw InvalidArgument("--settings must be at least 1");
    settings = random_settings(args.settings, args.common.seed);
  }

  json config = base_config("simulate", args.common);
  config["protocol"] = protocol.name();
  config["theta"] = theta;
  config["n"] = args.n;
  config["smoothing"] = args.smoothing;
  if (protocol.coefficients()) config["coefficients"] = protocol.coefficients()->to_json();
  if (!args.a.empty()) {
    config["a"] = vec_json(settings[0].a);
    config["b"] = vec_json(settings[0].b);
  } else {
    config["settings"] = args.settings;
  }

  json rows = json::array();
  std::string csv = "ax,ay,az,bx,by,bz,kl,tvd,n95,est_mean_a,est_mean_b,est_correlator\n";
  EstimateOptions eopt;
  eopt.workers = args.common.workers;
  for (const auto& s : settings) {
    const OutcomeTable est = estimate_behavior(protocol, s.a, s.b, args.n, args.common.seed,
                                               setting_stream_id(s), eopt);
    const Behavior born = born_behavior(state, s.a, s.b);
    const DivergenceReport rep = divergence_report(born.table(), est, smoothing);
    const CorrelationStats exact = closed_form_stats(state, s.a, s.b);
    const double ma = est[0] + est[1] - est[2] - est[3];
    const double mb = est[0] - est[1] + est[2] - est[3];
    const double corr = est[0] - est[1] - est[2] + est[3];
    rows.push_back({{"a", vec_json(s.a)},
                    {"b", vec_json(s.b)},
                    {"estimate", {est[0], est[1], est[2], est[3]}},
                    {"born", born.to_json()["table"]},
                    {"estimated_stats", {{"mean_a", ma}, {"mean_b", mb}, {"correlator", corr}}},
                    {"exact_stats",
                     {{"mean_a", exact.mean_a},
                      {"mean_b", exact.mean_b},
                      {"correlator", exact.correlator}}},
                    {"divergence", rep.to_json()}});
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  s.a.x(), s.a.y(), s.a.z(), s.b.x(), s.b.y(), s.b.z(), rep.kl, rep.tvd,
                  rep.n95, ma, mb, corr);
    csv += buf;
    out << "setting: a=(" << fmt(s.a.x()) << "," << fmt(s.a.y()) << "," << fmt(s.a.z())
        << ") b=(" << fmt(s.b.x()) << "," << fmt(s.b.y()) << "," << fmt(s.b.z()) << ")\n";
    out << "  estimate P(++,+-,-+,--) = " << fmt(est[0]) << " " << fmt(est[1]) << " "
        << fmt(est[2]) << " " << fmt(est[3]) << "\n";
    const auto bt = born.table();
    out << "  born     P(++,+-,-+,--) = " << fmt(bt[0]) << " " << fmt(bt[1]) << " "
        << fmt(bt[2]) << " " << fmt(bt[3]) << "\n";
    out << "  correlator est " << fmt(corr) << " exact " << fmt(exact.correlator)
        << "  kl " << fmt(rep.kl) << "  tvd " << fmt(rep.tvd) << "  n95 " << fmt(rep.n95)
        << "\n";
  }
  finish(out, args.common, "simulate", config,
         {{"simulate.json", with_config(config, {{"settings", rows}})},
          {"settings.csv", csv_with_config(config, csv)}});
  return kOk;
}

// ---------------------------------------------------------------------------

struct DistanceArgs {
  Common common;
  std::string target, model;
  std::string smoothing = "none";
};

int do_distance(const DistanceArgs& args, std::ostream& out) {
  const Behavior target = Behavior::from_json(read_json_file(args.target));
  const Behavior model = Behavior::from_json(read_json_file(args.model));
  if (!(target.scenario() == model.scenario())) {
    throw InvalidArgument("target and model scenarios differ: " +
                          target.scenario().to_string() + " vs " +
                          model.scenario().to_string());
  }
  const Smoothing smoothing = parse_smoothing(args.smoothing);
  json config = base_config("distance", args.common);
  config["target"] = args.target;
  config["model"] = args.model;
  config["smoothing"] = args.smoothing;

  const Scenario& s = target.scenario();
  json blocks = json::array();
  std::string csv = "x,y,kl,tvd,n95\n";
  std::vector<double> kls, tvds;
  for (int x = 0; x < s.nx; ++x) {
    for (int y = 0; y < s.ny; ++y) {
      const DivergenceReport rep =
          divergence_report(target.block(x, y), model.block(x, y), smoothing);
      json j = rep.to_json();
      j["x"] = x;
      j["y"] = y;
      blocks.push_back(j);
      char buf[256];
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g\n", x, y, rep.kl, rep.tvd, rep.n95);
      csv += buf;
      kls.push_back(rep.kl);
      tvds.push_back(rep.tvd);
      out << "block (" << x << "," << y << "): kl " << fmt(rep.kl) << "  tvd " << fmt(rep.tvd)
          << "  n95 " << fmt(rep.n95) << (rep.support_violation ? "  [support violation]" : "")
          << "\n";
    }
  }
  const json body = {{"scenario", {s.nx, s.ny, s.na, s.nb}},
                     {"blocks", blocks},
                     {"kl", quantiles(kls).to_json()},
                     {"tvd", quantiles(tvds).to_json()}};
  finish(out, args.common, "distance", config,
         {{"distance.json", with_config(config, body)},
          {"blocks.csv", csv_with_config(config, csv)}});
  return kOk;
}

// ---------------------------------------------------------------------------

struct EnumerateArgs {
  Common common;
  std::string scenario;
  std::string set = "comm";
  bool list = false;
};

int do_enumerate(const EnumerateArgs& args, std::ostream& out) {
  const Scenario s = Scenario::parse(args.scenario);
  const SetTag tag = parse_set_tag(args.set);
  json config = base_config("enumerate", args.common);
  config["scenario"] = s.to_string();
  config["set"] = to_string(tag);
  config["list"] = args.list;

  const auto vertices = enumerate_vertices(s, tag);
  json body = {{"scenario", {s.nx, s.ny, s.na, s.nb}},
               {"set", to_string(tag)},
               {"count", vertices.size()}};
  out << "count: " << vertices.size() << "\n";
  if (tag == SetTag::kComm) {
    const auto naive = naive_comm_count(s);
    const auto formula = comm_vertex_count(s);
    const auto quoted = quoted_comm_vertex_count(s);
    body["naive_count"] = naive;
    body["formula_count"] = formula;
    out << "naive (before dedup): " << naive << "\n";
    out << "formula (leading |A|^|X|): " << formula << "\n";
    if (quoted != formula) {
      body["quoted_formula_count"] = quoted;
      out << "formula with leading |A| differs: " << quoted << "\n";
    }
  } else {
    body["formula_count"] = local_vertex_count(s);
  }
  std::map<std::string, std::string> files;
  if (args.list) {
    json list = json::array();
    for (const auto& v : vertices) list.push_back(v.to_json(s));
    body["vertices"] = std::move(list);
  }
  files["enumerate.json"] = with_config(config, body);
  finish(out, args.common, "enumerate", config, files);
  return kOk;
}

// ---------------------------------------------------------------------------

struct MembershipArgs {
  Common common;
  std::string scenario;
  std::string point;
  std::string set = "comm";
  double tolerance = 1e-7;
};

int do_membership(const MembershipArgs& args, std::ostream& out) {
  const auto scenario = parse_optional_scenario(args.scenario);
  const Behavior p = load_point(args.point, scenario);
  if (scenario && !(*scenario == p.scenario())) {
    throw InvalidArgument("point scenario " + p.scenario().to_string() +
                          " does not match --scenario " + scenario->to_string());
  }
  const SetTag tag = parse_set_tag(args.set);
  MembershipOptions opt;
  opt.tolerance = args.tolerance;
  json config = base_config("membership", args.common);
  config["scenario"] = p.scenario().to_string();
  config["point"] = args.point;
  config["set"] = to_string(tag);
  config["tolerance"] = args.tolerance;

  const MembershipResult r = membership(p, tag, opt);
  out << "inside: " << (r.inside ? "true" : "false") << "\n";
  out << "distance: " << fmt(r.distance) << "\n";
  if (r.inside) {
    out << "support: " << r.support.size() << " vertices, reconstruction error "
        << fmt(r.reconstruction_error) << "\n";
  } else {
    out << "separating margin: " << fmt(r.margin) << "\n";
  }
  finish(out, args.common, "membership", config,
         {{"membership.json", with_config(config, r.to_json(p.scenario()))}});
  return kOk;
}

// ---------------------------------------------------------------------------

struct VisibilityArgs {
  Common common;
  std::string scenario;
  std::string point;
  std::string noise = "white";
  std::string set = "comm";
  std::string method = "both";
  std::optional<double> reference_wq;
  std::string reference_file;
  double reference_precision = 5e-5;
};

double read_reference(const std::string& path) {
  const json j = read_json_file(path);
  for (const char* key : {"reference_wq", "w_q", "wq"}) {
    if (j.contains(key) && j[key].is_number()) return j[key].get<double>();
  }
  throw InvalidArgument("reference file " + path + " has no numeric reference_wq");
}

int do_visibility(const VisibilityArgs& args, std::ostream& out) {
  const auto scenario = parse_optional_scenario(args.scenario);
  const Behavior p = load_point(args.point, scenario);
  if (scenario && !(*scenario == p.scenario())) {
    throw InvalidArgument("point scenario " + p.scenario().to_string() +
                          " does not match --scenario " + scenario->to_string());
  }
  const Behavior noise = load_point(args.noise, p.scenario());
  if (!(noise.scenario() == p.scenario())) throw InvalidArgument("noise scenario mismatch");
  const SetTag tag = parse_set_tag(args.set);
  VisibilityOptions opt;
  opt.method = parse_visibility_method(args.method);
  std::optional<double> ref = args.reference_wq;
  if (!args.reference_file.empty()) {
    if (ref) throw InvalidArgument("give --reference-wq or --reference, not both");
    ref = read_reference(args.reference_file);
  }

  json config = base_config("visibility", args.common);
  config["scenario"] = p.scenario().to_string();
  config["point"] = args.point;
  config["noise"] = args.noise;
  config["set"] = to_string(tag);
  config["method"] = args.method;
  config["bisection_tolerance"] = opt.bisection_tolerance;
  if (ref) {
    config["external_reference_wq"] = *ref;
    config["reference_precision"] = args.reference_precision;
  }

  const VisibilityStudy st =
      visibility_study(p, noise, ref, tag, opt, args.reference_precision);
  const auto& r = st.result;
  out << "w_star (weight on point): " << fmt_fixed(r.w_star) << "\n";
  out << "w_C (noise weight 1 - w_star): " << fmt_fixed(r.noise_weight()) << "\n";
  if (r.w_bisection) out << "bisection: " << fmt_fixed(*r.w_bisection) << "\n";
  if (r.w_direct) out << "direct LP: " << fmt_fixed(*r.w_direct) << "\n";
  if (r.w_bisection && r.w_direct) {
    out << "routes agree: " << (r.routes_agree ? "true" : "false") << "\n";
  }
  if (st.no_candidate) out << "no candidate: point is inside the set\n";
  if (ref) {
    out << "external reference w_Q: " << fmt_fixed(*ref) << "\n";
    out << "gap w_Q - w_C: " << fmt_fixed(*st.gap) << "\n";
    out << "violation: " << (st.violation ? "true" : "false") << "\n";
  }
  finish(out, args.common, "visibility", config,
         {{"visibility.json", with_config(config, st.to_json())}});
  return r.routes_agree ? kOk : kNonConvergence;
}

// ---------------------------------------------------------------------------

struct HaarScanArgs {
  Common common;
  std::string scenario = "3,3,3,3";
  int d = 0;
  std::size_t points = 200;
  std::string convention = "unconjugated";
  double tolerance = 1e-7;
};

int do_haar_scan(const HaarScanArgs& args, std::ostream& out) {
  const Scenario s = Scenario::parse(args.scenario);
  const int d = args.d > 0 ? args.d : s.na;
  ScanOptions opt;
  opt.seed = args.common.seed;
  opt.workers = args.common.workers;
  opt.convention = parse_convention(args.convention);
  opt.membership.tolerance = args.tolerance;
  json config = base_config("haar-scan", args.common);
  config["scenario"] = s.to_string();
  config["d"] = d;
  config["points"] = args.points;
  config["bob_convention"] = to_string(opt.convention);
  config["tolerance"] = args.tolerance;

  const ScanReport r = haar_scan(s, d, args.points, opt);
  out << "points: " << r.n_points << "\n";
  out << "fraction in L: " << fmt_fixed(r.fraction_in_local) << " (" << r.in_local << ")\n";
  out << "fraction outside C: " << fmt_fixed(r.fraction_outside_comm) << " ("
      << r.outside_comm << ")\n";
  out << "borderline (outside L, distance <= " << fmt(opt.borderline_distance)
      << "): " << r.borderline_local << "\n";
  finish(out, args.common, "haar-scan", config,
         {{"scan.json", with_config(config, r.to_json())},
          {"points.csv", csv_with_config(config, r.csv())}});
  return kOk;
}

// ---------------------------------------------------------------------------

struct ThetaSweepArgs {
  Common common;
  std::vector<std::string> thetas;
  std::size_t settings = 500;
  std::uint64_t n = 100000;
  bool exact_max_entangled = false;
  std::string smoothing = "none";
};

int do_theta_sweep(const ThetaSweepArgs& args, std::ostream& out) {
  const std::vector<std::string> labels = args.thetas.empty() ? preset_names() : args.thetas;
  ThetaSweepOptions opt;
  opt.settings = args.settings;
  opt.samples = args.n;
  opt.seed = args.common.seed;
  opt.workers = args.common.workers;
  opt.exact_at_max_entangled = args.exact_max_entangled;
  opt.smoothing = parse_smoothing(args.smoothing);
  if (opt.settings == 0 || opt.samples == 0) {
    throw InvalidArgument("--settings and --n must be positive");
  }
  json config = base_config("theta-sweep", args.common);
  config["thetas"] = labels;
  config["settings"] = args.settings;
  config["n"] = args.n;
  config["exact_max_entangled"] = args.exact_max_entangled;
  config["smoothing"] = args.smoothing;

  const auto entries = theta_sweep(labels, opt);
  std::map<std::string, std::string> files;
  json summaries = json::array();
  for (const auto& e : entries) {
    std::string stem = e.label;
    for (char& ch : stem) {
      if (ch == '/') ch = '_';
    }
    json sj = sweep_summary_json(e.summary);
    sj["label"] = e.label;
    summaries.push_back(sj);
    files["sweep_" + stem + ".csv"] = csv_with_config(config, sweep_csv(e.summary));
    out << e.label << ": median kl " << fmt(e.summary.kl.median) << "  median tvd "
        << fmt(e.summary.tvd.median) << "  median n95 " << fmt(e.summary.n95.median)
        << "  (" << e.summary.protocol << ")\n";
  }
  files["summary.json"] = with_config(config, {{"sweeps", summaries}});
  finish(out, args.common, "theta-sweep", config, files);
  return kOk;
}

// ---------------------------------------------------------------------------

struct BellValueArgs {
  Common common;
  std::string functional;
  std::string set = "comm";
  bool game = false;
  std::string at;
};

int do_bell_value(const BellValueArgs& args, std::ostream& out) {
  const Functional f = load_functional(args.functional);
  const SetTag tag = parse_set_tag(args.set);
  json config = base_config("bell-value", args.common);
  config["functional"] = args.functional;
  config["scenario"] = f.scenario.to_string();
  config["set"] = to_string(tag);
  config["game_normalized"] = args.game;

  const double value = bell_value(f, tag, args.game);
  const OracleResult best = vertex_oracle(f, tag);
  json body = {{"value", value}, {"maximizer", best.strategy.to_json(f.scenario)}};
  out << "value: " << fmt(value) << "\n";
  if (!args.at.empty()) {
    config["at"] = args.at;
    const Behavior p = load_point(args.at, f.scenario);
    double v = evaluate(f, p);
    if (args.game) v /= f.scenario.nx * f.scenario.ny;
    body["value_at_point"] = v;
    out << "value at point: " << fmt(v) << "\n";
  }
  finish(out, args.common, "bell-value", config,
         {{"bell_value.json", with_config(config, body)}});
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulate and test one-bit communication models of quantum correlations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Monte Carlo behavior of a protocol vs the Born rule");
  add_common(c_sim, sim.common, true);
  c_sim->add_option("--protocol", sim.protocol,
                    "max-entangled | toner-bacon | semianalytical:<preset or file>");
  c_sim->add_option("--theta", sim.theta, "State angle, radians or e.g. 5pi/32");
  c_sim->add_option("--n", sim.n, "LHV samples per setting");
  c_sim->add_option("--settings", sim.settings, "Number of random setting pairs");
  c_sim->add_option("--a", sim.a, "Alice's direction x,y,z");
  c_sim->add_option("--b", sim.b, "Bob's direction x,y,z");
  c_sim->add_option("--smoothing", sim.smoothing, "none | floor");

  DistanceArgs dist;
  auto* c_dist = app.add_subcommand("distance", "KL, TVD and n95 between two behaviors");
  add_common(c_dist, dist.common, false);
  c_dist->add_option("--target", dist.target, "Target behavior JSON")->required();
  c_dist->add_option("--model", dist.model, "Model behavior JSON")->required();
  c_dist->add_option("--smoothing", dist.smoothing, "none | floor");

  EnumerateArgs en;
  auto* c_en = app.add_subcommand("enumerate", "Enumerate deterministic vertices");
  add_common(c_en, en.common, false);
  c_en->add_option("--scenario", en.scenario, "nx,ny,na,nb")->required();
  c_en->add_option("--set", en.set, "comm | local");
  c_en->add_flag("--list", en.list, "Write every vertex to the report");

  MembershipArgs mem;
  auto* c_mem = app.add_subcommand("membership", "Decide whether a behavior lies in L or C");
  add_common(c_mem, mem.common, false);
  c_mem->add_option("--scenario", mem.scenario, "nx,ny,na,nb");
  c_mem->add_option("--point", mem.point, "builtin:table2 | builtin:white | builtin:cyclic | file")
      ->required();
  c_mem->add_option("--set", mem.set, "comm | local");
  c_mem->add_option("--tolerance", mem.tolerance, "Inside tolerance (Euclidean)");

  VisibilityArgs vis;
  auto* c_vis = app.add_subcommand("visibility", "Noise threshold of a point for L or C");
  add_common(c_vis, vis.common, false);
  c_vis->add_option("--scenario", vis.scenario, "nx,ny,na,nb");
  c_vis->add_option("--point", vis.point, "builtin:table2 | builtin:cyclic | file")->required();
  c_vis->add_option("--noise", vis.noise, "white | file");
  c_vis->add_option("--set", vis.set, "comm | local");
  c_vis->add_option("--method", vis.method, "bisection | direct | both");
  c_vis->add_option("--reference-wq", vis.reference_wq,
                    "External quantum threshold as a noise weight");
  c_vis->add_option("--reference", vis.reference_file, "JSON sidecar holding reference_wq");
  c_vis->add_option("--reference-precision", vis.reference_precision,
                    "Rounding allowance of the reference value");

  HaarScanArgs hs;
  auto* c_hs = app.add_subcommand("haar-scan", "Haar-random qudit measurements tested against L and C");
  add_common(c_hs, hs.common, true);
  c_hs->add_option("--scenario", hs.scenario, "nx,ny,d,d");
  c_hs->add_option("--d", hs.d, "Local dimension (default na)");
  c_hs->add_option("--points", hs.points, "Number of sampled points");
  c_hs->add_option("--convention", hs.convention, "unconjugated | conjugated");
  c_hs->add_option("--tolerance", hs.tolerance, "Membership tolerance");

  ThetaSweepArgs ts;
  auto* c_ts = app.add_subcommand("theta-sweep", "Error distributions of the fitted protocol per state");
  add_common(c_ts, ts.common, true);
  c_ts->add_option("--thetas", ts.thetas, "Preset labels, e.g. 5pi/32")->delimiter(',');
  c_ts->add_option("--settings", ts.settings, "Random setting pairs per state");
  c_ts->add_option("--n", ts.n, "LHV samples per setting");
  c_ts->add_flag("--exact-max-entangled", ts.exact_max_entangled,
                 "Use the exact protocol at pi/4");
  c_ts->add_option("--smoothing", ts.smoothing, "none | floor");

  BellValueArgs bv;
  auto* c_bv = app.add_subcommand("bell-value", "Maximum of a Bell functional over L or C");
  add_common(c_bv, bv.common, false);
  c_bv->add_option("--functional", bv.functional, "builtin:table2 | builtin:chsh | file")
      ->required();
  c_bv->add_option("--set", bv.set, "comm | local");
  c_bv->add_flag("--game", bv.game, "Divide by nx*ny");
  c_bv->add_option("--at", bv.at, "Also evaluate at this point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kOk : kInvalidConfig;
  }

  try {
    if (*c_sim) return do_simulate(sim, out);
    if (*c_dist) return do_distance(dist, out);
    if (*c_en) return do_enumerate(en, out);
    if (*c_mem) return do_membership(mem, out);
    if (*c_vis) return do_visibility(vis, out);
    if (*c_hs) return do_haar_scan(hs, out);
    if (*c_ts) return do_theta_sweep(ts, out);
    if (*c_bv) return do_bell_value(bv, out);
  } catch (const GuardExceeded& e) {
    err << "guard exceeded: " << e.what() << "\n";
    return kGuardExceeded;
  } catch (const NonConvergence& e) {
    err << "did not converge: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::invalid_argument& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid input file: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kInvalidConfig;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"onebit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace onebit::cli
