#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "barypoly/geometry.hpp"
#include "barypoly/stationary.hpp"
#include "barypoly/verification.hpp"
#include "csv.hpp"
#include "figure.hpp"

namespace barypoly::cli {
namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  int p = 0;
  std::vector<double> weights;
  std::string points_file;
  std::size_t steps = 0;
  std::vector<int> order;
  bool json_output = false;
  std::string out;
  std::string check;
  bool sweep = false;
  std::uint64_t seed = 1;
  bool inject_perturbation = false;

  // Set when given on the command line or in the config file.
  bool has_p = false, has_weights = false, has_steps = false, has_order = false,
       has_seed = false;
  std::vector<Point> points;
};

struct Flags {
  CLI::Option* p = nullptr;
  CLI::Option* weights = nullptr;
  CLI::Option* points_file = nullptr;
  CLI::Option* steps = nullptr;
  CLI::Option* order = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* check = nullptr;
  CLI::Option* seed = nullptr;
};

json read_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw UsageError(std::string("cannot open ") + what + " '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("invalid JSON in ") + what + " '" + path + "': " + e.what());
  }
}

std::vector<Point> parse_points(const json& doc) {
  const json& list = doc.is_object() && doc.contains("points") ? doc.at("points") : doc;
  if (!list.is_array()) throw UsageError("points must be a JSON array of coordinate arrays");
  try {
    return list.get<std::vector<Point>>();
  } catch (const json::exception&) {
    throw UsageError("points must be a JSON array of coordinate arrays");
  }
}

// Config values fill in whatever the command line left unset.
void resolve(Options& o, const Flags& f) {
  o.has_p = f.p && f.p->count() > 0;
  o.has_weights = f.weights && f.weights->count() > 0;
  o.has_steps = f.steps && f.steps->count() > 0;
  o.has_order = f.order && f.order->count() > 0;
  o.has_seed = f.seed && f.seed->count() > 0;
  bool has_points_file = f.points_file && f.points_file->count() > 0;

  if (!o.config.empty()) {
    const json cfg = read_json_file(o.config, "config");
    if (!cfg.is_object()) throw UsageError("config must be a JSON object");
    try {
      if (!o.has_p && cfg.contains("p")) {
        o.p = cfg.at("p").get<int>();
        o.has_p = true;
      }
      if (!o.has_weights && cfg.contains("weights")) {
        o.weights = cfg.at("weights").get<std::vector<double>>();
        o.has_weights = true;
      }
      if (!o.has_steps && cfg.contains("max_steps")) {
        o.steps = cfg.at("max_steps").get<std::size_t>();
        o.has_steps = true;
      }
      if (!o.has_steps && cfg.contains("steps")) {
        o.steps = cfg.at("steps").get<std::size_t>();
        o.has_steps = true;
      }
      if (!o.has_order && cfg.contains("order")) {
        const json& ord = cfg.at("order");
        o.order = ord.is_array() ? ord.get<std::vector<int>>() : std::vector<int>{ord.get<int>()};
        o.has_order = true;
      }
      if (!o.has_seed && cfg.contains("seed")) {
        o.seed = cfg.at("seed").get<std::uint64_t>();
        o.has_seed = true;
      }
      if ((!f.out || f.out->count() == 0) && cfg.contains("out")) {
        o.out = cfg.at("out").get<std::string>();
      }
      if ((!f.check || f.check->count() == 0) && cfg.contains("check")) {
        o.check = cfg.at("check").get<std::string>();
      }
      if (!has_points_file && cfg.contains("points")) {
        o.points = parse_points(cfg.at("points"));
      }
    } catch (const json::exception& e) {
      throw UsageError(std::string("bad config value: ") + e.what());
    }
  }
  if (has_points_file) o.points = parse_points(read_json_file(o.points_file, "points file"));
  if (o.has_weights) {
    if (o.has_p && static_cast<std::size_t>(o.p) != o.weights.size()) {
      throw UsageError("--p " + std::to_string(o.p) + " does not match " +
                       std::to_string(o.weights.size()) + " weights");
    }
    o.p = static_cast<int>(o.weights.size());
    o.has_p = true;
  }
  if (!o.points.empty() && o.has_p && o.points.size() != static_cast<std::size_t>(o.p)) {
    throw UsageError(std::to_string(o.points.size()) + " points given for p = " +
                     std::to_string(o.p));
  }
}

void require_p_at_least_3(const Options& o, const char* command) {
  if (!o.has_p) throw UsageError(std::string(command) + ": --p or --weights is required");
  if (o.p < 3) {
    throw UsageError(std::string(command) + ": p must be at least 3 (got " +
                     std::to_string(o.p) +
                     "); the stationary point is exponentially unstable only for p >= 3");
  }
}

// The given weights, or the stationary (regular) tuple for p.
WeightTuple weights_or_stationary(const Options& o, const char* command) {
  if (o.has_weights) return WeightTuple(o.weights);
  require_p_at_least_3(o, command);
  return stationary_point(o.p);
}

PointSet points_or_polygon(const Options& o, std::size_t p) {
  if (!o.points.empty()) return PointSet(o.points);
  return regular_polygon(p);
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + o.out + "'");
  file << text;
  if (!file) throw UsageError("failed writing '" + o.out + "'");
}

int cmd_alpha(const Options& o, std::ostream& out) {
  require_p_at_least_3(o, "alpha");
  const StationaryCertificate c = certificate(o.p);
  std::ostringstream text;
  if (o.json_output) {
    nlohmann::ordered_json doc;
    doc["p"] = c.p;
    doc["alpha"] = c.alpha;
    doc["beta"] = c.beta;
    doc["lambda_contractive"] = c.lambda_contractive;
    doc["contractive_multiplicity"] = c.p - 1;
    doc["lambda_repulsive"] = c.lambda_repulsive;
    doc["instability_margin"] = c.instability_margin;
    text << doc.dump(2) << '\n';
  } else {
    text << "p = " << c.p << '\n'
         << "alpha = " << format_double(c.alpha) << '\n'
         << "beta = " << format_double(c.beta) << '\n'
         << "lambda_contractive = " << format_double(c.lambda_contractive)
         << " (multiplicity " << c.p - 1 << ")\n"
         << "lambda_repulsive = " << format_double(c.lambda_repulsive) << '\n'
         << "instability_margin = " << format_double(c.instability_margin) << '\n';
  }
  emit(o, out, text.str());
  return kExitSuccess;
}

int cmd_trajectory(const Options& o, std::ostream& out) {
  const WeightTuple t = weights_or_stationary(o, "trajectory");
  if (t.p() < 3) require_p_at_least_3(o, "trajectory");
  const TrajectoryRecord traj =
      run_trajectory(t.conjugate(), o.has_steps ? o.steps : 200, solve_alpha(t.p()));
  std::ostringstream text;
  write_trajectory_csv(text, traj);
  emit(o, out, text.str());
  return kExitSuccess;
}

int cmd_dual(const Options& o, std::ostream& out) {
  const WeightTuple t = weights_or_stationary(o, "dual");
  if (t.p() < 3) require_p_at_least_3(o, "dual");
  const PointSet points = points_or_polygon(o, t.size());
  const DualSequenceRecord dual = dual_sequence(points, t, o.has_steps ? o.steps : 60);
  std::ostringstream text;
  write_dual_csv(text, dual);
  emit(o, out, text.str());
  return kExitSuccess;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const std::optional<std::string> only =
      o.check.empty() ? std::nullopt : std::optional<std::string>(o.check);
  if (only && std::find(check_names().begin(), check_names().end(), *only) ==
                  check_names().end()) {
    std::string known;
    for (const auto& n : check_names()) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("verify: unknown check '" + *only + "' (known: " + known + ")");
  }
  VerificationReport report;
  if (o.has_weights && !o.sweep) {
    require_p_at_least_3(o, "verify");
    report = verify_weights(WeightTuple(o.weights), o.has_steps ? o.steps : 200, only,
                            o.inject_perturbation);
  } else {
    SweepOptions sweep;
    if (o.has_p) {
      require_p_at_least_3(o, "verify");
      sweep.p_min = sweep.p_max = o.p;
    }
    if (o.has_steps) sweep.steps = o.steps;
    if (o.has_seed) sweep.seed = o.seed;
    sweep.only_check = only;
    sweep.inject_perturbation = o.inject_perturbation;
    report = run_sweep(sweep);
  }
  emit(o, out, report.to_json() + "\n");
  return report.passed() ? kExitSuccess : kExitCheckFailure;
}

int cmd_figure(const Options& o, std::ostream& out) {
  if (!o.has_weights) throw UsageError("figure: --weights is required");
  const WeightTuple t(o.weights);
  const PointSet points = points_or_polygon(o, t.size());
  const std::vector<int> orders = o.has_order ? o.order : std::vector<int>{0};
  const Figure figure = build_figure(points, t, orders,
                                     o.has_steps ? std::optional<std::size_t>(o.steps)
                                                 : std::nullopt);
  emit(o, out, render_svg(figure));
  return kExitSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Derived barypolygonal sequences: stationary point, trajectories, "
               "dual sequence, verifiers and figures"};
  app.name("barypoly");
  app.require_subcommand(1);

  Options o;
  Flags flags;
  std::function<int(const Options&, std::ostream&)> action;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON config file; flags override its values");
    sub->add_option("--out", o.out, "Write output to this file instead of stdout");
  };
  auto add_p = [&](CLI::App* sub) {
    flags.p = sub->add_option("--p", o.p, "Number of points / weights");
  };
  auto add_weights = [&](CLI::App* sub) {
    flags.weights = sub->add_option("--weights", o.weights, "Comma-separated weights in (0,1)")
                        ->delimiter(',');
  };
  auto add_steps = [&](CLI::App* sub, const char* help) {
    flags.steps = sub->add_option("--steps", o.steps, help);
  };
  auto add_points = [&](CLI::App* sub) {
    flags.points_file =
        sub->add_option("--points-file", o.points_file,
                        "JSON array of point coordinates (default: regular p-gon)");
  };

  CLI::App* alpha = app.add_subcommand("alpha", "Stationary point and its spectrum");
  add_common(alpha);
  add_p(alpha);
  alpha->add_flag("--json", o.json_output, "Machine-readable output");
  alpha->callback([&] { action = cmd_alpha; });

  CLI::App* traj = app.add_subcommand("trajectory", "CSV of the conjugate-system orbit");
  add_common(traj);
  add_p(traj);
  add_weights(traj);
  add_steps(traj, "Maximum number of steps (default 200)");
  traj->callback([&] { action = cmd_trajectory; });

  CLI::App* dual = app.add_subcommand("dual", "CSV of the dual sequence G_m");
  add_common(dual);
  add_p(dual);
  add_weights(dual);
  add_points(dual);
  add_steps(dual, "Number of steps (default 60)");
  dual->callback([&] { action = cmd_dual; });

  CLI::App* verify = app.add_subcommand("verify", "Run the verifier suite, JSON report");
  add_common(verify);
  add_p(verify);
  add_weights(verify);
  add_steps(verify, "Trajectory length (default 200)");
  flags.check = verify->add_option("--check", o.check, "Run a single named check");
  verify->add_flag("--sweep", o.sweep, "Random-seed sweep (default without --weights)");
  flags.seed = verify->add_option("--seed", o.seed, "Sweep RNG seed (default 1)");
  verify->add_flag("--inject-perturbation", o.inject_perturbation,
                   "Corrupt one recorded state per trajectory (harness check)");
  verify->callback([&] { action = cmd_verify; });

  CLI::App* figure = app.add_subcommand("figure", "SVG of iterated polygons");
  add_common(figure);
  add_weights(figure);
  add_points(figure);
  add_steps(figure, "Fixed iteration count (default: until diameter < 1e-3 of initial)");
  flags.order = figure->add_option("--order", o.order,
                                   "Derivative order, or a comma-separated list to overlay")
                    ->delimiter(',');
  figure->callback([&] { action = cmd_figure; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitSuccess;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  // Several subcommands share option names; use the ones actually parsed.
  CLI::App* chosen = app.get_subcommands().front();
  flags.p = chosen->get_option_no_throw("--p");
  flags.weights = chosen->get_option_no_throw("--weights");
  flags.points_file = chosen->get_option_no_throw("--points-file");
  flags.steps = chosen->get_option_no_throw("--steps");
  flags.order = chosen->get_option_no_throw("--order");
  flags.out = chosen->get_option_no_throw("--out");
  flags.check = chosen->get_option_no_throw("--check");
  flags.seed = chosen->get_option_no_throw("--seed");

  try {
    resolve(o, flags);
    return action(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailure;
  }
}

}  // namespace barypoly::cli
