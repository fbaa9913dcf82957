#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace v2vsim {

// The per-tick broadcast payload: id, position, yaw, speed, acceleration.
struct KinematicMessage {
    int sender_id = 0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double yaw = 0.0;
    double speed = 0.0;
    double accel = 0.0;
    double sent_at = 0.0;
};

struct Delivery {
    double deliver_at = 0.0;
    int dst_id = 0;
    KinematicMessage msg;
};

// Directed links with a constant per-link delay and an optional range gate.
// The range check happens at send time only; a message admitted to the queue
// is always delivered.
class NetworkModel {
public:
    NetworkModel() = default;
    NetworkModel(std::vector<std::pair<int, int>> links, double default_delay,
                 std::optional<double> range_limit);

    static NetworkModel precedent_topology(const std::vector<int>& vehicle_ids,
                                           double delay);
    static NetworkModel ego_topology(const std::vector<int>& vehicle_ids,
                                     int ego_id, double delay,
                                     double range_limit = 300.0);

    void set_link_delay(int src, int dst, double delay);
    double link_delay(int src, int dst) const;
    void set_default_delay(double delay);
    double default_delay() const { return default_delay_; }

    const std::vector<std::pair<int, int>>& links() const { return links_; }
    std::optional<double> range_limit() const { return range_limit_; }

    // Enqueues msg on every out-link of src whose endpoints are within range.
    // Out-of-range links drop silently. positions maps id -> (x, y).
    void send(int src_id, const KinematicMessage& msg, double now,
              const std::map<int, std::pair<double, double>>& positions);

    // Pops every message with deliver_at <= now, ordered by
    // (deliver_at, enqueue order). now must not run backwards.
    std::vector<Delivery> deliver_due(double now);

    std::size_t in_flight_count() const { return in_flight_.size(); }

private:
    struct Queued {
        double deliver_at;
        std::uint64_t seq;
        int dst_id;
        KinematicMessage msg;
    };

    std::vector<std::pair<int, int>> links_;
    double default_delay_ = 0.0;
    std::map<std::pair<int, int>, double> delay_overrides_;
    std::optional<double> range_limit_;
    std::vector<Queued> in_flight_;  // sorted by (deliver_at, seq)
    std::uint64_t next_seq_ = 0;
    double last_now_ = 0.0;
};

}  // namespace v2vsim
