// Copyright 2026 The socmine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "socmine/miner_ltl.hpp"

namespace socmine {
namespace {

using namespace socmine::testing;

using Pairs = std::vector<std::pair<EventId, EventId>>;

Pairs pairs_of(const std::vector<FollowsInstance>& in) {
  Pairs out;
  for (const auto& f : in) out.emplace_back(f.x, f.y);
  return out;
}

TEST(CheckInstance, Examples) {
  EXPECT_TRUE(check_instance(corpus_of({{1, 2}}), 1, 2).holds);
  const auto v = check_instance(corpus_of({{2, 1}}), 1, 2);
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(v.counterexample, (Counterexample{0, 1}));
  EXPECT_TRUE(check_instance(example_flat_corpus(), 6, 2).holds);
  EXPECT_THROW(check_instance(example_flat_corpus(), 2, 2), UsageError);
  EXPECT_THROW(check_instance(example_corpus(), 1, 2), UsageError);
}

TEST(CheckInstance, ReportsEarliestUnansweredX) {
  const auto v = check_instance(corpus_of({{1, 2}, {1, 1, 2, 1, 3}}), 1, 2);
  EXPECT_EQ(v.counterexample, (Counterexample{1, 3}));
}

TEST(MineFollows, WorkedExample) {
  const auto found = pairs_of(mine_follows(example_flat_corpus()));
  const Pairs listed{{1, 2}, {1, 5}, {1, 6}, {3, 4}, {3, 5}, {3, 6}, {5, 6}, {6, 2}};
  for (const auto& p : listed) EXPECT_NE(std::find(found.begin(), found.end(), p), found.end());
  EXPECT_EQ(found.size(), 15u);
  for (const auto& [x, y] : found) EXPECT_TRUE(check_instance(example_flat_corpus(), x, y).holds);
}

TEST(MineFollows, SingleEventHasNoInstance) {
  EXPECT_TRUE(mine_follows(corpus_of({{1}})).empty());
  EXPECT_TRUE(mine_follows(corpus_of({}, 3)).empty());
}

TEST(MineFollows, MatchesPairSweep) {
  std::mt19937 rng(51);
  for (int round = 0; round < 200; ++round) {
    const auto seqs = random_sequences(rng, 3, 12, 6);
    const auto c = corpus_of(seqs, 6);
    const auto found = mine_follows(c);
    EXPECT_EQ(pairs_of(found), oracle_follows(seqs, 6)) << "round " << round;
    for (const auto& f : found) EXPECT_FALSE(f.vacuous);
  }
}

TEST(MineFollows, ClosedFormAgreesWithChecker) {
  std::mt19937 rng(52);
  for (int round = 0; round < 200; ++round) {
    const auto seqs = random_sequences(rng, 3, 10, 4);
    const auto c = corpus_of(seqs, 4);
    const auto found = pairs_of(mine_follows(c));
    const auto occurring = alphabet_of(seqs);
    for (EventId x = 0; x < 4; ++x)
      for (EventId y = 0; y < 4; ++y) {
        if (x == y) continue;
        const bool mined = std::find(found.begin(), found.end(), std::pair(x, y)) != found.end();
        EXPECT_EQ(mined, occurring.contains(x) && check_instance(c, x, y).holds);
      }
  }
}

TEST(CheckInstance, CounterexamplesAreGenuine) {
  std::mt19937 rng(53);
  for (int round = 0; round < 300; ++round) {
    const auto seqs = random_sequences(rng, 3, 10, 3);
    const auto v = check_instance(corpus_of(seqs, 3), 0, 1);
    EXPECT_EQ(v.holds, oracle_follows_holds(seqs, 0, 1));
    if (v.holds) continue;
    ASSERT_TRUE(v.counterexample);
    const auto& s = seqs[v.counterexample->trace];
    ASSERT_LT(v.counterexample->step, s.size());
    EXPECT_EQ(s[v.counterexample->step], 0u);
    EXPECT_EQ(std::find(s.begin() + static_cast<std::ptrdiff_t>(v.counterexample->step), s.end(), 1u), s.end());
  }
}

TEST(MineFollows, AddingTraceNeverAddsInstancesWithObservedAntecedent) {
  std::mt19937 rng(54);
  for (int round = 0; round < 200; ++round) {
    auto seqs = random_sequences(rng, 3, 10, 5);
    const auto before = pairs_of(mine_follows(corpus_of(seqs, 5)));
    const auto occurring = alphabet_of(seqs);
    seqs.push_back(random_sequences(rng, 1, 10, 5).front());
    for (const auto& [x, y] : pairs_of(mine_follows(corpus_of(seqs, 5))))
      if (occurring.contains(x)) {
        EXPECT_NE(std::find(before.begin(), before.end(), std::pair(x, y)), before.end());
      }
  }
}

TEST(MineFollows, HonoursStopRequest) {
  std::stop_source stop;
  stop.request_stop();
  EXPECT_THROW(mine_follows(example_flat_corpus(), stop.get_token()), Cancelled);
}

TEST(EmitFollows, ResolvesNames) {
  const auto c = example_flat_corpus();
  EXPECT_EQ(emit_follows({{3, 4, false}}, c.vocabulary), "G(x -> XF y): x=ip:bus:m3 y=ip:bus:m4\n");
}

}  // namespace
}  // namespace socmine
