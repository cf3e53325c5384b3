#include "envlab/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "envlab/error.hpp"

namespace envlab {

using nlohmann::json;

double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

namespace {

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return round12(v);
}

/// Rounds every float in place; integers and strings pass through.
void normalize(json& j) {
  if (j.is_number_float()) {
    j = number(j.get<double>());
  } else if (j.is_structured()) {
    for (auto& child : j) normalize(child);
  }
}

/// The config echo leaves out the worker count: it changes how fast a run
/// goes, never what it computes, and reports must not depend on it.
json config_echo(const ExperimentConfig& config) {
  json c = json::parse(serialize_config(config));
  c.erase("workers");
  normalize(c);
  return c;
}

json witness_json(const Witness& w) {
  return {{"points", w.points},
          {"time", w.time},
          {"distance", number(w.distance)},
          {"epsilon", number(w.epsilon)},
          {"note", w.note}};
}

json verdict_to_json(const Verdict& v) {
  json ws = json::array();
  for (const auto& w : v.witnesses) ws.push_back(witness_json(w));
  json params = json::object();
  for (const auto& [k, x] : v.parameters) params[k] = number(x);
  return {{"property", v.property},
          {"outcome", std::string(to_string(v.outcome))},
          {"witnesses", ws},
          {"note", v.note},
          {"parameters", params}};
}

json check_json(const CheckReport& r) {
  json clauses = json::array();
  for (const auto& c : r.clauses) {
    clauses.push_back({{"role", std::string(to_string(c.role))},
                       {"expected", std::string(to_string(c.expected))},
                       {"matches", c.matches()},
                       {"verdict", verdict_to_json(c.verdict)}});
  }
  return {{"id", r.id},
          {"title", r.title},
          {"relation", r.relation},
          {"instance", r.instance},
          {"status", std::string(to_string(r.status))},
          {"note", r.note},
          {"clauses", clauses}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct CsvCoords {
  std::string c1, c2, tag;
};

CsvCoords coords(const Point& p) {
  return std::visit(
      [](const auto& q) -> CsvCoords {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, CirclePoint>) {
          return {csv_number(q.angle), "", "circle"};
        } else if constexpr (std::is_same_v<T, AnnulusPoint>) {
          return {csv_number(q.radius()), csv_number(q.angle), "annulus"};
        } else if constexpr (std::is_same_v<T, TorusPoint>) {
          return {csv_number(q.angle1), csv_number(q.angle2), "torus"};
        } else if constexpr (std::is_same_v<T, StackPoint>) {
          return {csv_number(q.radius()), csv_number(q.angle),
                  q.outer() ? std::string("outer") : "ring" + std::to_string(q.ring)};
        } else if constexpr (std::is_same_v<T, TorusOrCirclePoint>) {
          if (q.part == Part::circle) return {csv_number(q.angle1), "", "circle"};
          return {csv_number(q.angle1), csv_number(q.angle2), "torus"};
        } else {
          return {q.window(8), q.tails(), "seq"};
        }
      },
      p);
}

}  // namespace

std::string report_json(const HarnessReport& report, const ExperimentConfig& config) {
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back(check_json(c));
  json root = {{"schema_version", kSchemaVersion},
               {"kind", "theorem-report"},
               {"config", config_echo(config)},
               {"summary",
                {{"passed", report.passed},
                 {"failed", report.failed},
                 {"inconclusive", report.inconclusive},
                 {"total", report.checks.size()}}},
               {"checks", checks}};
  return dump(root);
}

std::string render_report_text(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
  if (!root.contains("checks") || !root["checks"].is_array()) {
    throw ConfigError("report has no \"checks\" array");
  }
  std::ostringstream out;
  char line[512];
  std::snprintf(line, sizeof line, "%-12s %-13s %-15s %s\n", "check", "status",
                "relation", "statement");
  out << line << std::string(80, '-') << "\n";
  for (const auto& c : root["checks"]) {
    std::snprintf(line, sizeof line, "%-12s %-13s %-15s %s\n",
                  c.value("id", "").c_str(), c.value("status", "").c_str(),
                  c.value("relation", "").c_str(), c.value("title", "").c_str());
    out << line;
    if (c.value("status", "") != "pass") out << "    " << c.value("note", "") << "\n";
  }
  out << std::string(80, '-') << "\n";
  if (root.contains("summary")) {
    const auto& s = root["summary"];
    out << s.value("passed", 0) << " passed, " << s.value("failed", 0) << " failed, "
        << s.value("inconclusive", 0) << " inconclusive\n";
  }
  return out.str();
}

std::string render_report_text(const HarnessReport& report) {
  return render_report_text(report_json(report, ExperimentConfig{}));
}

std::string verdict_json(const Verdict& verdict, const ExperimentConfig& config) {
  json root = {{"schema_version", kSchemaVersion},
               {"kind", "verdict"},
               {"config", config_echo(config)},
               {"verdict", verdict_to_json(verdict)}};
  return dump(root);
}

std::string semigroup_json(const SemigroupApprox& approx,
                           const ExperimentConfig& config,
                           const std::vector<std::string>& tags) {
  json elements = json::array();
  for (std::size_t i = 0; i < approx.size(); ++i) {
    json e = {{"index", i},
              {"label", approx.elements[i].provenance().describe()},
              {"witness_times", approx.witness_times[i]}};
    if (i < tags.size()) e["symbolic"] = tags[i];
    elements.push_back(std::move(e));
  }
  json matrix = json::array();
  for (const auto& row : approx.distance_matrix()) {
    json r = json::array();
    for (double d : row) r.push_back(number(d));
    matrix.push_back(std::move(r));
  }
  json root = {{"schema_version", kSchemaVersion},
               {"kind", "semigroup"},
               {"config", config_echo(config)},
               {"flow", approx.flow.name()},
               {"epsilon", number(approx.epsilon)},
               {"horizon", approx.horizon},
               {"directions", std::string(to_string(approx.directions))},
               {"grid_size", approx.metric.grid().size()},
               {"elements", elements},
               {"distance_matrix", matrix}};
  return dump(root);
}

std::string orbit_csv(const std::vector<OrbitSample>& orbit) {
  std::string out = "t,coord1,coord2,tag\n";
  for (const auto& s : orbit) {
    const CsvCoords c = coords(s.point);
    out += std::to_string(s.t) + "," + csv_quote(c.c1) + "," + csv_quote(c.c2) +
           "," + c.tag + "\n";
  }
  return out;
}

std::string return_set_csv(const ReturnSet& rs) {
  std::string out = "t,distance\n";
  for (std::int64_t t = -rs.horizon; t <= rs.horizon; ++t) {
    out += std::to_string(t) + "," + csv_number(rs.distance_at(t)) + "\n";
  }
  return out;
}

std::string distance_matrix_csv(const SemigroupApprox& approx) {
  std::string out = "element";
  for (const auto& e : approx.elements) out += "," + csv_quote(e.provenance().describe());
  out += "\n";
  const auto m = approx.distance_matrix();
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += csv_quote(approx.elements[i].provenance().describe());
    for (double d : m[i]) out += "," + csv_number(d);
    out += "\n";
  }
  return out;
}

}  // namespace envlab
