#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "envlab/error.hpp"
#include "envlab/harness.hpp"
#include "envlab/serialize.hpp"

using namespace envlab;

namespace {

Clause clause(Clause::Role role, Outcome got, Outcome expected) {
  Verdict v;
  v.property = "p";
  v.outcome = got;
  return {role, v, expected};
}

const HarnessReport& default_report() {
  static const HarnessReport r = run_all(HarnessConfig{});
  return r;
}

}  // namespace

TEST(Registry, CoversEveryTheorem) {
  std::set<std::string> ids;
  for (const auto& c : default_registry()) ids.insert(c.id);
  for (const char* id : {"T-dis", "T-group", "T-equi", "T-t3", "T-iso", "T-niso", "C-wr",
                         "C-fullshift", "T-sensitive", "T-sub", "T-ad2", "T-ur", "C-sensE",
                         "T-weakly", "T-uni", "T-synd", "T-ts", "T-proxE", "T-syndist", "C-last",
                         "E-circ"}) {
    EXPECT_TRUE(ids.count(id)) << id;
  }
  for (const auto& c : default_registry()) {
    EXPECT_TRUE(c.relation == "implies" || c.relation == "iff" || c.relation == "counterexample")
        << c.id;
    EXPECT_FALSE(c.instance.empty()) << c.id;
  }
}

TEST(Decide, Rules) {
  using R = Clause::Role;
  const auto H = Outcome::holds;
  const auto F = Outcome::fails;
  const auto I = Outcome::inconclusive;
  EXPECT_EQ(decide({clause(R::hypothesis, H, H), clause(R::conclusion, F, F)}, 100, 1),
            CheckStatus::pass);
  EXPECT_EQ(decide({clause(R::hypothesis, H, H), clause(R::conclusion, H, F)}, 100, 1),
            CheckStatus::fail);
  EXPECT_EQ(decide({clause(R::hypothesis, I, H), clause(R::conclusion, H, H)}, 100, 1),
            CheckStatus::inconclusive);
  std::string note;
  EXPECT_EQ(decide({clause(R::hypothesis, F, H)}, 10, 100, &note), CheckStatus::inconclusive);
  EXPECT_NE(note.find("below"), std::string::npos);
  EXPECT_EQ(decide({clause(R::hypothesis, F, H)}, 100, 100), CheckStatus::fail);
}

TEST(RunAll, EmptyRegistryGivesEmptyReport) {
  const auto r = run_all(HarnessConfig{}, {});
  EXPECT_TRUE(r.checks.empty());
  EXPECT_EQ(r.passed + r.failed + r.inconclusive, 0);
}

TEST(RunAll, UnknownIdIsAnError) {
  EXPECT_THROW(run_theorem("T-nope", HarnessConfig{}), ConfigError);
  HarnessConfig cfg;
  cfg.ids = {"T-nope"};
  EXPECT_THROW(run_all(cfg), ConfigError);
}

TEST(RunAll, ExceptionsBecomeStatuses) {
  std::vector<TheoremCheck> reg{
      {"Z-exhausted", "t", "implies", "i", 1,
       [](HarnessContext&) -> std::vector<Clause> { throw HorizonExhausted("ran out", 0.3); }},
      {"A-broken", "t", "implies", "i", 1,
       [](HarnessContext&) -> std::vector<Clause> { throw KindError("bad point"); }},
  };
  const auto r = run_all(HarnessConfig{}, reg);
  ASSERT_EQ(r.checks.size(), 2u);
  EXPECT_EQ(r.checks[0].id, "A-broken");  // sorted
  EXPECT_EQ(r.checks[0].status, CheckStatus::fail);
  EXPECT_EQ(r.checks[1].status, CheckStatus::inconclusive);
  EXPECT_NE(r.checks[1].note.find("horizon"), std::string::npos);
}

TEST(RunAll, DefaultConfigHasNoFailures) {
  const auto& r = default_report();
  EXPECT_EQ(r.failed, 0);
  EXPECT_LE(r.inconclusive, 2);
  EXPECT_EQ(r.checks.size(), default_registry().size());
  EXPECT_TRUE(std::is_sorted(r.checks.begin(), r.checks.end(),
                             [](const auto& a, const auto& b) { return a.id < b.id; }));
  for (const auto& c : r.checks) {
    EXPECT_NE(c.status, CheckStatus::fail) << c.id << ": " << c.note;
    bool hyp = false;
    bool con = false;
    for (const auto& cl : c.clauses) {
      hyp |= cl.role == Clause::Role::hypothesis;
      con |= cl.role == Clause::Role::conclusion;
      EXPECT_TRUE(cl.verdict.well_formed()) << c.id << " / " << cl.verdict.property;
    }
    EXPECT_TRUE(hyp && con) << c.id;
  }
}

TEST(RunAll, CounterexamplesAssertBothSides) {
  const auto& r = default_report();
  for (const auto& c : r.checks) {
    if (c.relation != "counterexample") continue;
    bool holds = false;
    bool fails = false;
    for (const auto& cl : c.clauses) {
      holds |= cl.verdict.outcome == Outcome::holds;
      fails |= cl.verdict.outcome == Outcome::fails;
    }
    EXPECT_TRUE(holds && fails) << c.id;
  }
}

TEST(RunAll, TinyHorizonNeverFalselyFails) {
  HarnessConfig cfg;
  cfg.horizon_cap = 10;
  const auto r = run_all(cfg);
  EXPECT_EQ(r.failed, 0);
  EXPECT_GE(r.inconclusive, 3);
  for (const auto& c : r.checks) {
    if (c.status == CheckStatus::inconclusive) {
      EXPECT_FALSE(c.note.empty()) << c.id;
    }
  }
}

TEST(RunAll, WorkerCountDoesNotChangeTheReport) {
  HarnessConfig one;
  one.ids = {"T-dis", "T-sensitive", "T-synd"};
  HarnessConfig many = one;
  many.workers = 8;
  EXPECT_EQ(report_json(run_all(one), {}), report_json(run_all(many), {}));
}
