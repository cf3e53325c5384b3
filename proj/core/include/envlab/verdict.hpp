#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace envlab {

enum class Outcome : std::uint8_t { holds, fails, inconclusive };

std::string_view to_string(Outcome o);

/// Certificate attached to a verdict: the objects involved, the time at which
/// the measurement was taken, the measured distance and the entourage size.
struct Witness {
  std::vector<std::string> points;
  std::int64_t time = 0;
  double distance = 0.0;
  double epsilon = 0.0;
  std::string note;
};

/// Outcome of a detector or theorem-check clause.
///
/// holds/fails carry at least one witness or a scan note describing the
/// exhaustive search; inconclusive always names the exhausted resource.
struct Verdict {
  std::string property;
  Outcome outcome = Outcome::inconclusive;
  std::vector<Witness> witnesses;
  std::string note;
  std::map<std::string, double> parameters;

  static Verdict holds(std::string property, std::vector<Witness> witnesses,
                       std::string note = {});
  static Verdict fails(std::string property, std::vector<Witness> witnesses,
                       std::string note = {});
  static Verdict inconclusive(std::string property, std::string exhausted);

  Verdict& with(std::string key, double value) {
    parameters[std::move(key)] = value;
    return *this;
  }

  bool well_formed() const;
};

}  // namespace envlab
