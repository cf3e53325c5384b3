#include "envlab/verdict.hpp"

#include <utility>

namespace envlab {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::holds: return "holds";
    case Outcome::fails: return "fails";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "unknown";
}

Verdict Verdict::holds(std::string property, std::vector<Witness> witnesses,
                       std::string note) {
  return {std::move(property), Outcome::holds, std::move(witnesses),
          std::move(note), {}};
}

Verdict Verdict::fails(std::string property, std::vector<Witness> witnesses,
                       std::string note) {
  return {std::move(property), Outcome::fails, std::move(witnesses),
          std::move(note), {}};
}

Verdict Verdict::inconclusive(std::string property, std::string exhausted) {
  return {std::move(property), Outcome::inconclusive, {}, std::move(exhausted),
          {}};
}

bool Verdict::well_formed() const {
  if (outcome == Outcome::inconclusive) return !note.empty();
  return !witnesses.empty() || !note.empty();
}

}  // namespace envlab
