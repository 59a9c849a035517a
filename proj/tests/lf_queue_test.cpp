#include <gtest/gtest.h>

#include <map>

#include "queue_fixtures.hpp"
#include "repair/lf_queue.hpp"
#include "test_support.hpp"

namespace repair {
namespace {

using namespace repair::testing;

struct LfFixture {
  SortedText sorted;
  std::vector<Word> storage;
  std::vector<Word> frequencies;
  LfQueue queue;

  LfFixture(std::vector<Word> symbols, std::size_t capacity, Word max_frequency)
      : sorted(std::move(symbols)),
        storage(LfQueue::words_required(capacity)),
        frequencies(LfQueue::frequency_words(max_frequency)) {
    queue = LfQueue::build(sorted.text, sorted.tp, storage, frequencies,
                           {capacity, max_frequency, 3});
  }
};

using Bucket = std::vector<Pair>;

TEST(LfQueue, BuildsWorkedExampleBuckets) {
  LfFixture f(worked_text(), 5, 6);
  LfQueue& q = f.queue;
  EXPECT_EQ(q.size(), 5u);
  EXPECT_EQ(q.bucket(5), (Bucket{{kB, kD}}));
  EXPECT_EQ(q.bucket(4), Bucket{});
  EXPECT_EQ(q.bucket(3), (Bucket{{kD, kE}}));
  // Linked in pair order, so the last one sits at the head.
  EXPECT_EQ(q.bucket(2), (Bucket{{kF, kH}, {kE, kG}, {kD, kF}}));
  EXPECT_EQ(q.max(), (Pair{kB, kD}));
  EXPECT_EQ(q.min(), (Pair{kF, kH}));
  EXPECT_EQ(q.max_freq(), 5u);
  EXPECT_EQ(q.min_freq(), 2u);
  EXPECT_EQ(q.get({kE, kG}), (PairRange{10, 2, 2}));
  EXPECT_EQ(q.untracked_bound(), 2u);
  EXPECT_TRUE(q.consistent());
}

TEST(LfQueue, RejectsFrequenciesAtTheBound) {
  SortedText s(worked_text());
  std::vector<Word> storage(LfQueue::words_required(5));
  std::vector<Word> frequencies(LfQueue::frequency_words(5));
  EXPECT_THROW(LfQueue::build(s.text, s.tp, storage, frequencies, {5, 5, 0}),
               std::logic_error);
}

TEST(LfQueue, DecreaseMovesBetweenBuckets) {
  LfFixture f(worked_text(), 5, 6);
  LfQueue& q = f.queue;
  EXPECT_FALSE(q.decrease({kD, kE}));
  EXPECT_EQ(q.bucket(3), Bucket{});
  EXPECT_EQ(q.bucket(2), (Bucket{{kD, kE}, {kF, kH}, {kE, kG}, {kD, kF}}));
  EXPECT_EQ(q.min(), (Pair{kD, kE}));
  EXPECT_TRUE(q.consistent());

  EXPECT_FALSE(q.decrease({kB, kD}));
  EXPECT_EQ(q.bucket(4), (Bucket{{kB, kD}}));
  EXPECT_EQ(q.max_freq(), 4u);
  EXPECT_TRUE(q.consistent());

  EXPECT_TRUE(q.decrease({kE, kG}));
  EXPECT_FALSE(q.contains({kE, kG}));
  EXPECT_EQ(q.bucket(2), (Bucket{{kD, kE}, {kF, kH}, {kD, kF}}));
  EXPECT_EQ(q.size(), 4u);
  EXPECT_TRUE(q.consistent());
}

TEST(LfQueue, RemoveUpdatesMaxAndMin) {
  LfFixture f(worked_text(), 5, 6);
  LfQueue& q = f.queue;
  q.remove({kB, kD});
  EXPECT_EQ(q.max(), (Pair{kD, kE}));
  q.remove({kD, kE});
  EXPECT_EQ(q.max_freq(), 2u);
  EXPECT_EQ(q.max(), (Pair{kF, kH}));
  q.remove({kF, kH});
  q.remove({kE, kG});
  q.remove({kD, kF});
  EXPECT_TRUE(q.empty());
  EXPECT_THROW(q.max(), EmptyQueueError);
  EXPECT_TRUE(q.consistent());
}

TEST(LfQueue, DecrementKeepsPairsInLowBuckets) {
  LfFixture f(worked_text(), 5, 6);
  LfQueue& q = f.queue;
  q.decrement({kD, kF});
  q.decrement({kD, kF});
  EXPECT_EQ(q.get({kD, kF})->freq, 0u);
  EXPECT_EQ(q.bucket(0), (Bucket{{kD, kF}}));
  EXPECT_EQ(q.min(), (Pair{kD, kF}));
  EXPECT_TRUE(q.consistent());
  q.remove({kD, kF});
  EXPECT_EQ(q.min_freq(), 2u);
}

TEST(LfQueue, FreedSlotsAreReused) {
  LfFixture f(worked_text(), 5, 6);
  LfQueue& q = f.queue;
  q.remove({kE, kG});
  q.insert({kG, kB}, PairRange{15, 2, 2});
  EXPECT_EQ(q.bucket(2), (Bucket{{kG, kB}, {kF, kH}, {kD, kF}}));
  EXPECT_TRUE(q.consistent());
}

// a=0 b=1 r=2 c=3 d=4: ab, br, ra occur twice each; ties keep pair order.
TEST(LfQueue, CapacityOneKeepsFirstTiedPair) {
  LfFixture f({0, 1, 2, 0, 3, 0, 4, 0, 1, 2, 0}, 1, 3);
  EXPECT_EQ(f.queue.size(), 1u);
  EXPECT_TRUE(f.queue.contains({0, 1}));
  EXPECT_EQ(f.queue.untracked_bound(), 2u);
}

TEST(LfQueue, SynchronizeEvictsSuccessiveMinima) {
  LfFixture f(eviction_text(), 3, 7);
  LfQueue& q = f.queue;
  const Pair ab{kA2, kB2};
  ASSERT_EQ(q.bucket(3), (Bucket{{kE2, kF2}, {kC2, kD2}}));

  q.begin_round(ab);
  q.decrement({kC2, kD2});
  q.decrement({kE2, kF2});
  EXPECT_EQ(q.min(), (Pair{kE2, kF2}));
  for (std::size_t p = 0; p < 18; p += 3) f.sorted.text.replace_pair(p, 10);
  q.synchronize(ab, f.sorted.text, f.sorted.tp_words);

  EXPECT_EQ(q.bucket(3), (Bucket{{10, kY2}, {10, kX2}}));
  EXPECT_FALSE(q.contains({kC2, kD2}));
  EXPECT_FALSE(q.contains({kE2, kF2}));
  EXPECT_EQ(q.get(ab), (PairRange{6, 0, 0}));
  EXPECT_EQ(q.counters().evictions, 2u);
  EXPECT_EQ(q.untracked_bound(), 3u);
  EXPECT_TRUE(q.consistent());
}

TEST(LfQueue, FastCapacity) {
  EXPECT_EQ(LfQueue::fast_capacity(130, 1.0), 10u);
  EXPECT_EQ(LfQueue::fast_capacity(131, 1.0), 11u);
  EXPECT_EQ(LfQueue::fast_capacity(1000, 0.1), 8u);
  EXPECT_THROW(LfQueue::fast_capacity(100, 0.0), std::invalid_argument);
  EXPECT_THROW(LfQueue::fast_capacity(100, 1.5), std::invalid_argument);
  EXPECT_EQ(LfQueue::words_required(10), 130u);
}

TEST(LightCapacity, GrowsByReclaimedWordsOverThirteen) {
  LightCapacityPolicy policy;
  EXPECT_EQ(policy.capacity, 1u);
  EXPECT_EQ(light_next_capacity(policy, 130), 11u);
  EXPECT_EQ(policy.round, 2u);
  EXPECT_EQ(light_next_capacity(policy, 12), 11u);
  EXPECT_EQ(light_next_capacity(policy, 26, 5), 5u);
  EXPECT_EQ(policy.capacity, 13u);
  EXPECT_EQ(policy.reclaimed_words, 168u);
}

TEST(LightCapacity, SmallReclaimsAccumulate) {
  LightCapacityPolicy policy;
  for (int round = 0; round < 6; ++round) EXPECT_EQ(light_next_capacity(policy, 2), 1u);
  EXPECT_EQ(light_next_capacity(policy, 2), 2u);
}

// Random decrease / decrement / remove sequences against a frequency map.
TEST(LfQueueProperty, MatchesReferencePriorityMap) {
  Rng rng(17);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = uniform(rng, 8, 800);
    const std::size_t sigma = uniform(rng, 1, std::min<std::size_t>(8, n - 2));
    const auto symbols = random_symbols(rng, n, sigma);
    const std::size_t cap = uniform(rng, 1, 60);
    LfFixture f(symbols, cap, static_cast<Word>(n));
    LfQueue& q = f.queue;
    std::map<Pair, Word> model;
    for (Word l = 0; l < sigma; ++l) {
      for (Word r = 0; r < sigma; ++r) {
        if (const auto e = q.get({l, r})) model[{l, r}] = e->freq;
      }
    }
    ASSERT_EQ(model.size(), q.size());
    ASSERT_TRUE(q.consistent());
    while (!model.empty()) {
      auto it = model.begin();
      std::advance(it, static_cast<std::ptrdiff_t>(uniform(rng, 0, model.size() - 1)));
      const std::size_t op = uniform(rng, 0, 4);
      if (op == 0) {
        q.remove(it->first);
        model.erase(it);
      } else if (op == 1 && it->second > 0) {
        q.decrement(it->first);
        --it->second;
      } else if (it->second >= 2) {
        if (q.decrease(it->first)) {
          ASSERT_EQ(it->second, 2u);
          model.erase(it);
        } else {
          --it->second;
        }
      }
      ASSERT_EQ(q.size(), model.size());
      ASSERT_TRUE(q.consistent());
      if (model.empty()) break;
      Word hi = 0, lo = kNull;
      for (const auto& [p, fr] : model) {
        hi = std::max(hi, fr);
        lo = std::min(lo, fr);
        ASSERT_EQ(q.get(p)->freq, fr);
      }
      ASSERT_EQ(q.max_freq(), hi);
      ASSERT_EQ(q.min_freq(), lo);
      ASSERT_EQ(model.at(q.max()), hi);
      ASSERT_EQ(model.at(q.min()), lo);
    }
  }
}

}  // namespace
}  // namespace repair
