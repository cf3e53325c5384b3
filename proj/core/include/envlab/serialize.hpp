#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "envlab/config.hpp"
#include "envlab/detectors.hpp"
#include "envlab/envelope_numeric.hpp"
#include "envlab/flow.hpp"
#include "envlab/harness.hpp"
#include "envlab/verdict.hpp"

// Every JSON writer here sorts keys, rounds doubles to 12 significant digits
// and writes non-finite values as the strings "inf", "-inf" or "nan", so the
// output is a pure function of its inputs.

namespace envlab {

/// Report of `theorems`: effective config, schema version, checks, counts.
std::string report_json(const HarnessReport& report, const ExperimentConfig& config);

/// Human table for a report JSON document (the `report` subcommand).
std::string render_report_text(std::string_view report_json_text);
std::string render_report_text(const HarnessReport& report);

/// `detect` output: one verdict plus the effective config.
std::string verdict_json(const Verdict& verdict, const ExperimentConfig& config);

/// `semigroup` output. `tags[i]`, when given, names the symbolic element
/// matched by elements[i].
std::string semigroup_json(const SemigroupApprox& approx,
                           const ExperimentConfig& config,
                           const std::vector<std::string>& tags = {});

/// t,coord1,coord2,tag. Circle: angle. Annulus and stack: radius, angle.
/// Torus: both angles. Sequences: the window string around 0 and the tails.
std::string orbit_csv(const std::vector<OrbitSample>& orbit);

/// t,distance over the whole scanned window.
std::string return_set_csv(const ReturnSet& rs);

/// Square matrix with a header row of representative labels.
std::string distance_matrix_csv(const SemigroupApprox& approx);

/// Rounds to 12 significant digits; the fixed number format of all reports.
double round12(double v);

}  // namespace envlab
