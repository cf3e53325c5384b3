#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "envlab/config.hpp"
#include "envlab/detectors.hpp"
#include "envlab/envelope_numeric.hpp"
#include "envlab/envelope_symbolic.hpp"
#include "envlab/error.hpp"
#include "envlab/flow.hpp"
#include "envlab/harness.hpp"
#include "envlab/serialize.hpp"

namespace fs = std::filesystem;
using namespace envlab;

namespace {

struct Options {
  std::string config_path;
  std::optional<int> workers;
  std::string out_dir;

  std::string flow;
  std::string alpha;
  std::string alpha_preset;
  std::optional<int> depth;
  std::optional<std::int64_t> horizon;
  std::optional<double> epsilon;
  std::optional<int> grid;
  std::string direction = "forward";
  std::string directions;

  std::string property = "proximal";
  std::vector<std::size_t> points;

  bool all = false;
  std::vector<std::string> ids;
  std::optional<std::int64_t> horizon_cap;
  std::optional<std::uint64_t> seed;

  std::string report_path;
};

ExperimentConfig effective_config(const Options& o) {
  ExperimentConfig c = o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
  if (!o.flow.empty()) c.flow.kind = flow_kind_from_string(o.flow);
  if (!o.alpha_preset.empty()) c.flow.params.alpha = parse_float_preset(o.alpha_preset);
  if (!o.alpha.empty()) c.flow.params.alpha = parse_float_preset(o.alpha);
  if (o.depth) c.flow.params.depth = *o.depth;
  if (o.workers) c.workers = *o.workers;
  if (o.horizon_cap) c.theorems.horizon_cap = *o.horizon_cap;
  if (o.seed) c.theorems.seed = *o.seed;
  if (!o.ids.empty()) c.theorems.ids = o.ids;
  if (o.all) c.theorems.ids.clear();
  if (!o.out_dir.empty()) c.output.dir = o.out_dir;
  c.theorems.workers = c.workers;
  // Re-parse to apply the same validation as a config file.
  return parse_config(serialize_config(c));
}

fs::path output_dir(const ExperimentConfig& c) {
  fs::path dir = c.output.dir;
  if (dir.empty()) {
    const char* env = std::getenv("ENVLAB_OUT_DIR");
    dir = env && *env ? fs::path(env) : fs::current_path();
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("write failed for " + path.string());
  std::cout << "wrote " << path.string() << "\n";
}

Point default_start(const FlowSystem& flow) {
  switch (flow.kind()) {
    case FlowKind::annulus: return AnnulusPoint::from_radius(1.5, 0.0);
    case FlowKind::torus_circle: return TorusOrCirclePoint{Part::torus, 0.3, 0.7};
    case FlowKind::circle_stack: return StackPoint{1, 0.0};
    case FlowKind::shift_pair: return SeqPoint::with_block(0, flow.params().block);
    case FlowKind::full_shift: return SeqPoint::with_block(0, "1");
    case FlowKind::rotation:
    case FlowKind::identity: break;
  }
  return CirclePoint{0.0};
}

Direction parse_direction(const std::string& s) {
  if (s == "forward") return Direction::forward;
  if (s == "backward") return Direction::backward;
  if (s == "both") return Direction::both;
  throw ConfigError("--direction must be forward, backward or both");
}

FunctionMetric metric_for(const FlowSystem& flow, int resolution) {
  GridPtr grid = make_grid(flow.space().sample_grid(resolution).points);
  if (flow.kind() == FlowKind::circle_stack) return FunctionMetric::stacked(flow.space(), grid);
  return FunctionMetric::uniform(flow.space(), grid);
}

int run_simulate(const Options& o) {
  const ExperimentConfig c = effective_config(o);
  const FlowSystem flow = make_flow(c.flow);
  const std::int64_t h = o.horizon.value_or(c.detectors.horizon);
  const auto orb = orbit(flow, default_start(flow), h, parse_direction(o.direction));
  write_file(output_dir(c) / "orbit.csv", orbit_csv(orb));
  return 0;
}

int run_semigroup(const Options& o) {
  ExperimentConfig c = effective_config(o);
  if (o.epsilon) c.semigroup.epsilon = *o.epsilon;
  if (o.horizon) c.semigroup.horizon = *o.horizon;
  if (o.grid) c.semigroup.grid_resolution = *o.grid;
  if (!o.directions.empty()) {
    if (o.directions != "both" && o.directions != "forward") {
      throw ConfigError("--directions must be forward or both");
    }
    c.semigroup.directions =
        o.directions == "both" ? ScanDirections::both : ScanDirections::forward;
  }
  c = parse_config(serialize_config(c));
  const FlowSystem flow = make_flow(c.flow);
  const auto& s = c.semigroup;
  const auto approx = approximate_semigroup(flow, metric_for(flow, s.grid_resolution),
                                            s.horizon, s.epsilon, s.directions);
  std::vector<std::string> tags;
  if (flow.kind() == FlowKind::annulus) {
    const AnnulusAlgebra algebra(flow.params().alpha);
    for (const auto& e : approx.elements) {
      const auto m = match_annulus(algebra, approx.metric, e, s.epsilon);
      tags.push_back(to_string(m.element));
    }
  }
  const fs::path dir = output_dir(c);
  write_file(dir / "semigroup.json", semigroup_json(approx, c, tags));
  write_file(dir / "distance_matrix.csv", distance_matrix_csv(approx));
  std::cout << approx.size() << " clusters\n";
  return 0;
}

int run_detect(const Options& o) {
  ExperimentConfig c = effective_config(o);
  if (o.epsilon) c.detectors.epsilon = *o.epsilon;
  if (o.horizon) c.detectors.horizon = *o.horizon;
  if (o.grid) c.detectors.grid_resolution = *o.grid;
  c = parse_config(serialize_config(c));
  const FlowSystem flow = make_flow(c.flow);
  const auto& d = c.detectors;
  const auto grid = flow.space().sample_grid(d.grid_resolution).points;
  auto pick = [&](std::size_t i) -> const Point& {
    if (i >= grid.size()) {
      throw ConfigError("--points index " + std::to_string(i) + " outside the grid of " +
                        std::to_string(grid.size()) + " points");
    }
    return grid[i];
  };
  std::vector<Point> chosen;
  for (auto i : o.points) chosen.push_back(pick(i));
  if (chosen.empty()) chosen.push_back(grid.front());

  const fs::path dir = output_dir(c);
  Verdict v;
  if (o.property == "proximal") {
    const Point& x = chosen.front();
    const Point& y = chosen.size() > 1 ? chosen[1] : pick(grid.size() / 2);
    const ReturnSet rs = proximality(flow, x, y, d.epsilon, d.horizon, c.workers);
    Witness w{{to_string(x), to_string(y)}, rs.argmin, rs.min_value, d.epsilon, {}};
    v = rs.hits.empty() ? Verdict::fails("proximal", {w}, "no return within the window")
                        : Verdict::holds("proximal", {w});
    v.with("hits", double(rs.hits.size())).with("horizon", double(d.horizon));
    std::string note;
    v.with("syndetic", syndeticity(rs, d.gap_bound, &note) ? 1.0 : 0.0);
    write_file(dir / "return_set.csv", return_set_csv(rs));
  } else if (o.property == "weak-rigidity") {
    v = weak_rigidity(flow, chosen, d.epsilon, d.horizon).verdict;
  } else if (o.property == "uniform-rigidity") {
    v = uniform_rigidity(flow, grid, d.epsilon, d.horizon).verdict;
  } else if (o.property == "sensitivity") {
    v = sensitivity(flow, grid, d.horizon, d.epsilon_ladder, d.sensitivity_radii, c.workers)
            .verdict;
  } else if (o.property == "equicontinuity") {
    v = equicontinuity_at(flow, chosen.front(), d.epsilon, d.horizon, d.delta_grid).verdict;
  } else if (o.property == "transitivity") {
    v = transitivity(flow, chosen.front(), d.epsilon, d.horizon, grid, c.workers).verdict;
  } else {
    throw ConfigError("unknown --property " + o.property);
  }
  write_file(dir / "verdict.json", verdict_json(v, c));
  std::cout << v.property << ": " << to_string(v.outcome) << "\n";
  return 0;
}

int run_theorems(const Options& o) {
  if (!o.all && o.ids.empty()) throw ConfigError("theorems needs --all or at least one --id");
  const ExperimentConfig c = effective_config(o);
  const HarnessReport report = run_all(c.theorems);
  const std::string text = report_json(report, c);
  write_file(output_dir(c) / "report.json", text);
  std::cout << render_report_text(text);
  return report.failed > 0 ? 1 : 0;
}

int run_report(const Options& o) {
  std::ifstream in(o.report_path, std::ios::binary);
  if (!in) throw ConfigError("cannot read report " + o.report_path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::cout << render_report_text(buf.str());
  return 0;
}

void add_flow_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--flow", o.flow,
                  "circle-stack, annulus, torus-circle, shift-pair, full-shift, rotation, identity");
  cmd->add_option("--alpha", o.alpha, "rotation number as a decimal or preset name");
  cmd->add_option("--alpha-preset", o.alpha_preset, "golden or silver");
  cmd->add_option("--depth", o.depth, "circle-stack depth");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enveloping semigroups of flows: simulation, detectors and theorem checks"};
  app.require_subcommand(1);
  Options o;
  app.add_option("-c,--config", o.config_path, "JSON experiment config");
  app.add_option("-w,--workers", o.workers, "worker threads (results do not depend on it)");
  app.add_option("-o,--out", o.out_dir, "output directory (default: $ENVLAB_OUT_DIR or .)");

  auto* simulate = app.add_subcommand("simulate", "write an orbit as CSV");
  add_flow_options(simulate, o);
  simulate->add_option("--horizon", o.horizon, "number of steps");
  simulate->add_option("--direction", o.direction, "forward, backward or both");

  auto* semigroup = app.add_subcommand("semigroup", "approximate E(X) by sampled iterates");
  add_flow_options(semigroup, o);
  semigroup->add_option("--epsilon", o.epsilon, "clustering radius");
  semigroup->add_option("--horizon", o.horizon, "largest |t| scanned");
  semigroup->add_option("--grid", o.grid, "grid resolution");
  semigroup->add_option("--directions", o.directions, "forward or both");

  auto* detect = app.add_subcommand("detect", "run one detector");
  add_flow_options(detect, o);
  detect->add_option("--property", o.property,
                     "proximal, weak-rigidity, uniform-rigidity, sensitivity, "
                     "equicontinuity or transitivity");
  detect->add_option("--points", o.points, "grid indices of the probe points")->delimiter(',');
  detect->add_option("--epsilon", o.epsilon, "entourage size");
  detect->add_option("--horizon", o.horizon, "largest |t| scanned");
  detect->add_option("--grid", o.grid, "grid resolution");

  auto* theorems = app.add_subcommand("theorems", "run the theorem checks");
  theorems->add_flag("--all", o.all, "run every registered check");
  theorems->add_option("--id", o.ids, "check id, repeatable");
  theorems->add_option("--horizon-cap", o.horizon_cap, "cap on every scan horizon");
  theorems->add_option("--seed", o.seed, "seed for random probe points");

  auto* report = app.add_subcommand("report", "render a stored report JSON as text");
  report->add_option("file", o.report_path, "report.json")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (simulate->parsed()) return run_simulate(o);
    if (semigroup->parsed()) return run_semigroup(o);
    if (detect->parsed()) return run_detect(o);
    if (theorems->parsed()) return run_theorems(o);
    if (report->parsed()) return run_report(o);
  } catch (const Error& e) {
    std::cerr << "envlab: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
