#include "caccsim/v2v.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "caccsim/errors.hpp"

namespace caccsim {

namespace {

constexpr double kClockSlack = 1e-9;  // absorbs k*dt rounding when comparing times

double unit_draw(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

std::mt19937_64 message_stream(std::uint64_t seed, int sender, std::uint64_t seq) {
  std::seed_seq sseq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(sender), static_cast<std::uint32_t>(seq),
                     static_cast<std::uint32_t>(seq >> 32), 0x56325632u};
  return std::mt19937_64(sseq);
}

}  // namespace

void ChannelParams::validate() const {
  if (!(period > 0.0)) throw ConfigError("channel.period must be positive");
  if (!(latency >= 0.0)) throw ConfigError("channel.latency must be non-negative");
  if (!(jitter >= 0.0)) throw ConfigError("channel.jitter must be non-negative");
  if (jitter > latency) throw ConfigError("channel.jitter must not exceed channel.latency");
  if (!(loss_prob >= 0.0 && loss_prob <= 1.0)) throw ConfigError("channel.loss_prob must lie in [0, 1]");
  if (!(stale_timeout > 0.0)) throw ConfigError("channel.stale_timeout must be positive");
}

V2vChannel::V2vChannel(const ChannelParams& params, std::uint64_t seed) : params_(params), seed_(seed) {
  params_.validate();
}

std::optional<double> V2vChannel::broadcast(const Bsm& bsm) {
  auto last = last_seq_.find(bsm.sender_id);
  if (last != last_seq_.end() && bsm.seq <= last->second) {
    throw std::invalid_argument("BSM sequence numbers must increase per sender");
  }
  last_seq_[bsm.sender_id] = bsm.seq;

  auto gen = message_stream(seed_, bsm.sender_id, bsm.seq);
  const double loss_draw = unit_draw(gen);
  const double jitter_draw = unit_draw(gen);
  if (loss_draw < params_.loss_prob) return std::nullopt;

  double t_deliver = bsm.t_sent + params_.latency + params_.jitter * (2.0 * jitter_draw - 1.0);
  auto& queue = deliveries_[bsm.sender_id];
  if (!queue.empty()) t_deliver = std::max(t_deliver, queue.back().t_deliver);
  queue.push_back({bsm, t_deliver});
  return t_deliver;
}

std::optional<ReceivedAccel> V2vChannel::latest_accel(int sender_id, double receiver_clock) const {
  auto it = deliveries_.find(sender_id);
  if (it == deliveries_.end()) return std::nullopt;
  const auto& queue = it->second;
  auto after = std::upper_bound(queue.begin(), queue.end(), receiver_clock + kClockSlack,
                                [](double t, const Delivery& d) { return t < d.t_deliver; });
  if (after == queue.begin()) return std::nullopt;
  const auto& latest = std::prev(after)->bsm;
  const double age = receiver_clock - latest.t_sent;
  if (age > params_.stale_timeout + kClockSlack) return std::nullopt;
  return ReceivedAccel{latest.accel, age};
}

const std::vector<Delivery>& V2vChannel::deliveries(int sender_id) const {
  static const std::vector<Delivery> kNone;
  auto it = deliveries_.find(sender_id);
  return it == deliveries_.end() ? kNone : it->second;
}

}  // namespace caccsim
