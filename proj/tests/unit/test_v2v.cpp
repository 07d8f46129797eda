#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "caccsim/errors.hpp"
#include "caccsim/v2v.hpp"

namespace caccsim {
namespace {

Bsm message(int sender, std::uint64_t seq, double t, double accel = 0.0) {
  return Bsm{sender, seq, t, accel, 10.0, 0.0};
}

TEST(V2vChannel, PureDelay) {
  ChannelParams p;
  p.latency = 0.1;
  V2vChannel ch(p, 1);
  ASSERT_TRUE(ch.broadcast(message(0, 0, 0.0, 0.7)).has_value());
  EXPECT_FALSE(ch.latest_accel(0, 0.05).has_value());
  const auto rx = ch.latest_accel(0, 0.1);
  ASSERT_TRUE(rx.has_value());
  EXPECT_DOUBLE_EQ(rx->accel, 0.7);
  EXPECT_NEAR(rx->age, 0.1, 1e-12);
}

TEST(V2vChannel, TotalLoss) {
  ChannelParams p;
  p.loss_prob = 1.0;
  V2vChannel ch(p, 1);
  for (std::uint64_t k = 0; k < 200; ++k) EXPECT_FALSE(ch.broadcast(message(0, k, 0.1 * k)).has_value());
  EXPECT_TRUE(ch.deliveries(0).empty());
  EXPECT_FALSE(ch.latest_accel(0, 30.0).has_value());
}

TEST(V2vChannel, MessageCount) {
  V2vChannel ch(ChannelParams{}, 1);
  for (std::uint64_t k = 0; k < 50; ++k) ch.broadcast(message(0, k, 0.1 * k));
  EXPECT_EQ(ch.deliveries(0).size(), 50u);
}

TEST(V2vChannel, NoDeliveriesYet) {
  V2vChannel ch(ChannelParams{}, 1);
  EXPECT_FALSE(ch.latest_accel(3, 1.0).has_value());
}

TEST(V2vChannel, StaleTimeout) {
  V2vChannel ch(ChannelParams{}, 1);
  ch.broadcast(message(0, 0, 0.0, 1.0));
  const auto fresh = ch.latest_accel(0, 0.05);
  ASSERT_TRUE(fresh.has_value());
  EXPECT_NEAR(fresh->age, 0.05, 1e-12);
  EXPECT_TRUE(ch.latest_accel(0, 0.5).has_value());
  EXPECT_FALSE(ch.latest_accel(0, 0.6).has_value());
}

TEST(V2vChannel, AgeEqualsLatencyRightAfterDelivery) {
  V2vChannel ch(ChannelParams{}, 1);
  for (std::uint64_t k = 0; k < 20; ++k) {
    const auto t = ch.broadcast(message(0, k, 0.1 * k));
    ASSERT_TRUE(t.has_value());
    const auto rx = ch.latest_accel(0, *t);
    ASSERT_TRUE(rx.has_value());
    EXPECT_NEAR(rx->age, 0.02, 1e-12);
  }
}

TEST(V2vChannel, DeliveredSubsetAndOrdered) {
  ChannelParams p;
  p.loss_prob = 0.3;
  p.latency = 0.08;
  p.jitter = 0.08;
  p.period = 0.02;
  V2vChannel ch(p, 42);
  std::set<std::uint64_t> sent;
  for (std::uint64_t k = 0; k < 2000; ++k) {
    ch.broadcast(message(1, k, 0.02 * k));
    sent.insert(k);
  }
  const auto& d = ch.deliveries(1);
  EXPECT_GT(d.size(), 1200u);
  EXPECT_LT(d.size(), 1600u);
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_TRUE(sent.count(d[i].bsm.seq));
    EXPECT_GE(d[i].t_deliver, d[i].bsm.t_sent);
    if (i > 0) {
      EXPECT_GT(d[i].bsm.seq, d[i - 1].bsm.seq);
      EXPECT_GE(d[i].t_deliver, d[i - 1].t_deliver);
    }
  }
}

TEST(V2vChannel, LossPatternDependsOnlyOnSeedSenderAndSeq) {
  ChannelParams p;
  p.loss_prob = 0.5;
  V2vChannel a(p, 9), b(p, 9), c(p, 10);
  // b interleaves a second sender; a does not.
  for (std::uint64_t k = 0; k < 300; ++k) {
    a.broadcast(message(0, k, 0.1 * k));
    b.broadcast(message(5, k, 0.1 * k));
    b.broadcast(message(0, k, 0.1 * k));
    c.broadcast(message(0, k, 0.1 * k));
  }
  auto seqs = [](const V2vChannel& ch) {
    std::vector<std::uint64_t> out;
    for (const auto& d : ch.deliveries(0)) out.push_back(d.bsm.seq);
    return out;
  };
  EXPECT_EQ(seqs(a), seqs(b));
  EXPECT_NE(seqs(a), seqs(c));
}

TEST(V2vChannel, RejectsNonIncreasingSeq) {
  V2vChannel ch(ChannelParams{}, 1);
  ch.broadcast(message(0, 3, 0.0));
  EXPECT_THROW(ch.broadcast(message(0, 3, 0.1)), std::invalid_argument);
  EXPECT_NO_THROW(ch.broadcast(message(1, 0, 0.1)));
}

TEST(ChannelParams, Validation) {
  ChannelParams p;
  EXPECT_NO_THROW(p.validate());
  p.jitter = 0.05;
  EXPECT_THROW(p.validate(), ConfigError);
  p = ChannelParams{};
  p.loss_prob = 1.5;
  EXPECT_THROW(p.validate(), ConfigError);
  p = ChannelParams{};
  p.period = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
}

}  // namespace
}  // namespace caccsim
