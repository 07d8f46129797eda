#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace caccsim {

/// In-simulator stand-in for a Basic Safety Message.
struct Bsm {
  int sender_id = 0;
  std::uint64_t seq = 0;
  double t_sent = 0.0;    // [s]
  double accel = 0.0;     // [m/s^2]
  double speed = 0.0;     // [m/s]
  double position = 0.0;  // [m]
  bool operator==(const Bsm&) const = default;
};

struct ChannelParams {
  double period = 0.1;         // broadcast interval [s]
  double latency = 0.02;       // [s]
  double jitter = 0.0;         // uniform half-width [s]
  double loss_prob = 0.0;
  double stale_timeout = 0.5;  // [s]

  void validate() const;
  bool operator==(const ChannelParams&) const = default;
};

struct ReceivedAccel {
  double accel = 0.0;
  double age = 0.0;  // receiver clock minus t_sent [s]
};

struct Delivery {
  Bsm bsm;
  double t_deliver = 0.0;
};

/// Lossy, delayed broadcast link. Loss and jitter for a message are drawn from
/// a stream keyed by (seed, sender, seq), so a rerun drops the same messages
/// regardless of the order in which senders broadcast.
class V2vChannel {
 public:
  V2vChannel(const ChannelParams& params, std::uint64_t seed);

  /// Returns the delivery time, or nothing if the message was dropped.
  /// Deliveries from one sender never overtake each other.
  std::optional<double> broadcast(const Bsm& bsm);

  /// Latest message from `sender_id` delivered by `receiver_clock`, unless it is older than stale_timeout.
  std::optional<ReceivedAccel> latest_accel(int sender_id, double receiver_clock) const;

  /// All deliveries from `sender_id`, in delivery order.
  const std::vector<Delivery>& deliveries(int sender_id) const;

  const ChannelParams& params() const { return params_; }

 private:
  ChannelParams params_;
  std::uint64_t seed_;
  std::map<int, std::vector<Delivery>> deliveries_;
  std::map<int, std::uint64_t> last_seq_;
};

}  // namespace caccsim
