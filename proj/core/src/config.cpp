#include "envlab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "envlab/error.hpp"

namespace envlab {

using nlohmann::json;

std::string_view to_string(ScanDirections d) {
  return d == ScanDirections::forward ? "forward" : "both";
}

double parse_float_preset(std::string_view text) {
  if (text == "golden") return kGolden;
  if (text == "silver") return kSilver;
  std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw ConfigError("\"" + s + "\" is neither a number nor a preset (golden, silver)");
  }
  return v;
}

namespace {

/// Walks one JSON object, remembering which keys were consumed so the rest
/// can be reported as unknown.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(where() + " must be an object");
  }

  ~Section() = default;

  std::string key_path(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const json* find(std::string_view key) {
    seen_.insert(std::string(key));
    auto it = node_.find(std::string(key));
    return it == node_.end() ? nullptr : &*it;
  }

  void number(std::string_view key, double& out, bool allow_preset = false) {
    const json* v = find(key);
    if (!v) return;
    if (v->is_number()) {
      out = v->get<double>();
    } else if (allow_preset && v->is_string()) {
      try {
        out = parse_float_preset(v->get<std::string>());
      } catch (const ConfigError& e) {
        throw ConfigError(key_path(key) + ": " + e.what());
      }
    } else {
      throw ConfigError(key_path(key) + " must be a number" +
                        (allow_preset ? " or a preset name" : ""));
    }
  }

  template <class Int>
  void integer(std::string_view key, Int& out) {
    const json* v = find(key);
    if (!v) return;
    if (v->is_number_integer()) {
      out = static_cast<Int>(v->get<std::int64_t>());
    } else if (v->is_number_float() && std::floor(v->get<double>()) == v->get<double>() &&
               std::fabs(v->get<double>()) < 9.0e18) {
      out = static_cast<Int>(v->get<double>());
    } else {
      throw ConfigError(key_path(key) + " must be an integer");
    }
  }

  void string(std::string_view key, std::string& out) {
    const json* v = find(key);
    if (!v) return;
    if (!v->is_string()) throw ConfigError(key_path(key) + " must be a string");
    out = v->get<std::string>();
  }

  void numbers(std::string_view key, std::vector<double>& out) {
    const json* v = find(key);
    if (!v) return;
    if (!v->is_array()) throw ConfigError(key_path(key) + " must be an array");
    out.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_number()) {
        throw ConfigError(key_path(key) + "[" + std::to_string(i) + "] must be a number");
      }
      out.push_back((*v)[i].get<double>());
    }
  }

  void strings(std::string_view key, std::vector<std::string>& out) {
    const json* v = find(key);
    if (!v) return;
    if (!v->is_array()) throw ConfigError(key_path(key) + " must be an array");
    out.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_string()) {
        throw ConfigError(key_path(key) + "[" + std::to_string(i) + "] must be a string");
      }
      out.push_back((*v)[i].get<std::string>());
    }
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) {
        throw ConfigError("unknown key \"" + key_path(it.key()) + "\"");
      }
    }
  }

 private:
  std::string where() const { return path_.empty() ? "config" : path_; }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key + " " + what);
}

void require_positive_list(const std::vector<double>& v, const std::string& key) {
  require(!v.empty(), key, "must not be empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    require(std::isfinite(v[i]) && v[i] > 0,
            key + "[" + std::to_string(i) + "]", "must be a positive finite number");
  }
}

void read_flow(const json& node, FlowDescriptor& flow) {
  if (node.is_string()) {
    flow.kind = flow_kind_from_string(node.get<std::string>());
    return;
  }
  Section s(node, "flow");
  std::string kind(to_string(flow.kind));
  s.string("kind", kind);
  try {
    flow.kind = flow_kind_from_string(kind);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("flow.kind: ") + e.what());
  }
  auto& p = flow.params;
  s.number("alpha", p.alpha, true);
  s.number("mu", p.mu, true);
  s.integer("depth", p.depth);
  s.string("block", p.block);
  s.integer("window", p.window);
  s.integer("horizon_cap", p.horizon_cap);
  s.finish();
}

void validate(const ExperimentConfig& c) {
  require(c.schema_version == kSchemaVersion, "schema_version",
          "must be " + std::to_string(kSchemaVersion));
  try {
    (void)make_flow(c.flow);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("flow: ") + e.what());
  }
  const auto& d = c.detectors;
  require_positive_list(d.epsilon_ladder, "detectors.epsilon_ladder");
  require_positive_list(d.delta_grid, "detectors.delta_grid");
  require_positive_list(d.sensitivity_radii, "detectors.sensitivity_radii");
  require(std::isfinite(d.epsilon) && d.epsilon > 0, "detectors.epsilon",
          "must be positive, got " + std::to_string(d.epsilon));
  require(d.horizon >= 1, "detectors.horizon", "must be >= 1");
  require(d.grid_resolution >= 1 && d.grid_resolution <= 4096,
          "detectors.grid_resolution", "must lie in [1, 4096]");
  require(d.gap_bound >= 1, "detectors.gap_bound", "must be >= 1");
  require(d.run_length >= 1, "detectors.run_length", "must be >= 1");
  const auto& g = c.semigroup;
  require(std::isfinite(g.epsilon) && g.epsilon > 0, "semigroup.epsilon",
          "must be positive, got " + std::to_string(g.epsilon));
  require(g.horizon >= 0, "semigroup.horizon", "must be >= 0");
  require(g.grid_resolution >= 1 && g.grid_resolution <= 4096,
          "semigroup.grid_resolution", "must lie in [1, 4096]");
  require(c.theorems.horizon_cap >= 1, "theorems.horizon_cap", "must be >= 1");
  require(c.workers >= 1 && c.workers <= 256, "workers", "must lie in [1, 256]");
}

json preset_or_number(double v) {
  if (v == kGolden) return "golden";
  if (v == kSilver) return "silver";
  return v;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    // e.what() already carries "at line L, column C".
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  ExperimentConfig c;
  Section top(root, "");
  top.integer("schema_version", c.schema_version);
  if (const json* f = top.find("flow")) read_flow(*f, c.flow);
  if (const json* d = top.find("detectors")) {
    Section s(*d, "detectors");
    auto& p = c.detectors;
    s.numbers("epsilon_ladder", p.epsilon_ladder);
    s.numbers("delta_grid", p.delta_grid);
    s.numbers("sensitivity_radii", p.sensitivity_radii);
    s.number("epsilon", p.epsilon);
    s.integer("horizon", p.horizon);
    s.integer("grid_resolution", p.grid_resolution);
    s.integer("gap_bound", p.gap_bound);
    s.integer("run_length", p.run_length);
    s.finish();
  }
  if (const json* g = top.find("semigroup")) {
    Section s(*g, "semigroup");
    auto& p = c.semigroup;
    s.number("epsilon", p.epsilon);
    s.integer("horizon", p.horizon);
    std::string dirs(to_string(p.directions));
    s.string("directions", dirs);
    if (dirs == "both") {
      p.directions = ScanDirections::both;
    } else if (dirs == "forward") {
      p.directions = ScanDirections::forward;
    } else {
      throw ConfigError("semigroup.directions must be \"forward\" or \"both\"");
    }
    s.integer("grid_resolution", p.grid_resolution);
    s.finish();
  }
  if (const json* t = top.find("theorems")) {
    Section s(*t, "theorems");
    s.strings("ids", c.theorems.ids);
    s.integer("horizon_cap", c.theorems.horizon_cap);
    s.integer("seed", c.theorems.seed);
    s.finish();
  }
  if (const json* o = top.find("output")) {
    Section s(*o, "output");
    s.string("dir", c.output.dir);
    s.finish();
  }
  top.integer("workers", c.workers);
  top.finish();
  c.theorems.workers = c.workers;
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string serialize_config(const ExperimentConfig& c) {
  json root;
  root["schema_version"] = c.schema_version;
  const auto& fp = c.flow.params;
  root["flow"] = {{"kind", std::string(to_string(c.flow.kind))},
                  {"alpha", preset_or_number(fp.alpha)},
                  {"mu", preset_or_number(fp.mu)},
                  {"depth", fp.depth},
                  {"block", fp.block},
                  {"window", fp.window},
                  {"horizon_cap", fp.horizon_cap}};
  const auto& d = c.detectors;
  root["detectors"] = {{"epsilon_ladder", d.epsilon_ladder},
                       {"delta_grid", d.delta_grid},
                       {"sensitivity_radii", d.sensitivity_radii},
                       {"epsilon", d.epsilon},
                       {"horizon", d.horizon},
                       {"grid_resolution", d.grid_resolution},
                       {"gap_bound", d.gap_bound},
                       {"run_length", d.run_length}};
  root["semigroup"] = {{"epsilon", c.semigroup.epsilon},
                       {"horizon", c.semigroup.horizon},
                       {"directions", std::string(to_string(c.semigroup.directions))},
                       {"grid_resolution", c.semigroup.grid_resolution}};
  root["theorems"] = {{"ids", c.theorems.ids},
                      {"horizon_cap", c.theorems.horizon_cap},
                      {"seed", c.theorems.seed}};
  root["output"] = {{"dir", c.output.dir}};
  root["workers"] = c.workers;
  // nlohmann prints doubles with round-trip precision, so parsing the text
  // back yields the same values bit for bit.
  return root.dump(2) + "\n";
}

}  // namespace envlab
