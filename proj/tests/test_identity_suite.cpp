#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "orthgen/identity_suite.hpp"

using namespace orthgen;

namespace {

SuiteOptions serial() {
  SuiteOptions o;
  o.parallel = false;
  return o;
}

}  // namespace

TEST(IdentitySuite, RegistrySortedAndUnique) {
  std::vector<std::string_view> ids(kSuiteIds.begin(), kSuiteIds.end());
  EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
  EXPECT_EQ(std::set<std::string_view>(ids.begin(), ids.end()).size(), ids.size());
  EXPECT_EQ(ids.size(), 17u);
  for (const auto& item : kSuiteItems) EXPECT_FALSE(item.description.empty()) << item.id;
}

TEST(IdentitySuite, SingleItemPasses) {
  SuiteReport r = run_suite({"L2.3.i"}, 42, 10, serial());
  ASSERT_EQ(r.items.size(), 1u);
  EXPECT_EQ(r.items[0].id, "L2.3.i");
  EXPECT_EQ(r.items[0].samples, 10u);
  EXPECT_TRUE(r.items[0].failures.empty());
  EXPECT_EQ(to_json(r, false).dump(), R"({"items":[{"failures":[],"id":"L2.3.i","samples":10}],"seed":42})");
}

TEST(IdentitySuite, ZeroSamples) {
  SuiteReport r = run_suite({"all"}, 42, 0, serial());
  EXPECT_TRUE(r.items.empty());
  EXPECT_EQ(to_json(r, false).dump(), R"({"items":[],"seed":42})");
}

TEST(IdentitySuite, UnknownItem) {
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ParseError;
  };
  EXPECT_EQ(kind_of([] { run_suite({"NOPE"}, 42, 5, serial()); }), ErrorKind::UnknownItem);
  EXPECT_EQ(kind_of([] { run_suite({}, 42, 5, serial()); }), ErrorKind::UnknownItem);
  EXPECT_EQ(kind_of([] { find_item("L9.9"); }), ErrorKind::UnknownItem);
}

TEST(IdentitySuite, SquaredCommutatorsDependOnConvention) {
  SuiteReport ok = run_suite({"L4.16"}, 7, 25, serial());
  EXPECT_EQ(ok.failure_count(), 0u);
  SuiteOptions other = serial();
  other.conv = CommutatorConvention::AinvBinvAB;
  SuiteReport bad = run_suite({"L4.16"}, 7, 25, other);
  EXPECT_GT(bad.failure_count(), 0u);
}

TEST(IdentitySuite, CommutatorRelationsHoldInBothConventions) {
  SuiteOptions other = serial();
  other.conv = CommutatorConvention::AinvBinvAB;
  EXPECT_EQ(run_suite({"D2.7.comm"}, 11, 20, serial()).failure_count(), 0u);
  EXPECT_EQ(run_suite({"D2.7.comm"}, 11, 20, other).failure_count(), 0u);
}

TEST(IdentitySuite, ReplayIsDeterministic) {
  SuiteOptions par;
  std::string a = to_json(run_suite({"all"}, 5, 4, serial()), false).dump();
  std::string b = to_json(run_suite({"all"}, 5, 4, par), false).dump();
  EXPECT_EQ(a, b);
  for (const auto& id : kSuiteIds) {
    auto f1 = run_sample(id, 5, 2, serial());
    auto f2 = run_sample(id, 5, 2, serial());
    EXPECT_EQ(f1.has_value(), f2.has_value()) << id;
    if (f1 && f2) EXPECT_EQ(f1->dump(), f2->dump()) << id;
  }
}

TEST(IdentitySuite, FailureRecordsAreSelfContained) {
  SuiteReport r = run_suite({"L5.1"}, 42, 6, serial());
  ASSERT_EQ(r.items.size(), 1u);
  ASSERT_FALSE(r.items[0].failures.empty());
  for (const auto& f : r.items[0].failures) {
    EXPECT_TRUE(f.contains("reason"));
    EXPECT_TRUE(f.contains("inputs"));
    EXPECT_TRUE(f.contains("sample"));
    EXPECT_TRUE(f.contains("ring"));
    EXPECT_TRUE(f.contains("n"));
    auto again = run_sample("L5.1", 42, f["sample"].get<std::size_t>(), serial());
    ASSERT_TRUE(again.has_value());
    EXPECT_EQ(again->dump(), f.dump());
  }
}

TEST(IdentitySuite, AllOtherItemsPass) {
  SuiteReport r = run_suite({"all"}, 42, 12, SuiteOptions{});
  ASSERT_EQ(r.items.size(), kSuiteIds.size());
  for (const auto& it : r.items) {
    if (it.id == "L5.1") continue;
    EXPECT_TRUE(it.failures.empty()) << it.id << ": " << (it.failures.empty() ? "" : it.failures[0].dump());
  }
}

TEST(IdentitySuite, TimingField) {
  SuiteOptions o = serial();
  o.timing = true;
  json j = to_json(run_suite({"L5.6"}, 1, 3, o), true);
  EXPECT_TRUE(j["items"][0].contains("elapsed_ms"));
  EXPECT_FALSE(to_json(run_suite({"L5.6"}, 1, 3, serial()), false)["items"][0].contains("elapsed_ms"));
}

TEST(IdentitySuite, MutationSelfTestDetectsEveryFlip) {
  auto out = mutation_self_test(42, 10);
  EXPECT_EQ(out.size(), 12u);
  for (const auto& m : out)
    EXPECT_TRUE(m.detected) << family_name(m.flip.family) << " term " << m.flip.term;
}
