#include "v2vsim/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace v2vsim {

NetworkModel::NetworkModel(std::vector<std::pair<int, int>> links,
                           double default_delay,
                           std::optional<double> range_limit)
    : links_(std::move(links)),
      default_delay_(default_delay),
      range_limit_(range_limit) {
    for (const auto& [src, dst] : links_) {
        if (src == dst) throw std::invalid_argument("network: self-link");
    }
    if (default_delay_ < 0.0)
        throw std::invalid_argument("network: negative delay");
}

NetworkModel NetworkModel::precedent_topology(
    const std::vector<int>& vehicle_ids, double delay) {
    if (vehicle_ids.size() < 2)
        throw std::invalid_argument(
            "precedent topology needs at least 2 vehicles");
    std::set<int> seen(vehicle_ids.begin(), vehicle_ids.end());
    if (seen.size() != vehicle_ids.size())
        throw std::invalid_argument("precedent topology: duplicate vehicle id");
    std::vector<std::pair<int, int>> links;
    for (std::size_t k = 0; k + 1 < vehicle_ids.size(); ++k) {
        links.emplace_back(vehicle_ids[k], vehicle_ids[k + 1]);
    }
    return NetworkModel(std::move(links), delay, std::nullopt);
}

NetworkModel NetworkModel::ego_topology(const std::vector<int>& vehicle_ids,
                                        int ego_id, double delay,
                                        double range_limit) {
    if (std::find(vehicle_ids.begin(), vehicle_ids.end(), ego_id) ==
        vehicle_ids.end())
        throw std::invalid_argument("ego topology: ego id not in vehicle set");
    std::vector<std::pair<int, int>> links;
    for (int id : vehicle_ids) {
        if (id != ego_id) links.emplace_back(id, ego_id);
    }
    return NetworkModel(std::move(links), delay, range_limit);
}

void NetworkModel::set_link_delay(int src, int dst, double delay) {
    if (delay < 0.0) throw std::invalid_argument("network: negative delay");
    delay_overrides_[{src, dst}] = delay;
}

double NetworkModel::link_delay(int src, int dst) const {
    auto it = delay_overrides_.find({src, dst});
    return it != delay_overrides_.end() ? it->second : default_delay_;
}

void NetworkModel::set_default_delay(double delay) {
    if (delay < 0.0) throw std::invalid_argument("network: negative delay");
    default_delay_ = delay;
}

void NetworkModel::send(
    int src_id, const KinematicMessage& msg, double now,
    const std::map<int, std::pair<double, double>>& positions) {
    for (const auto& [src, dst] : links_) {
        if (src != src_id) continue;
        if (range_limit_) {
            auto ps = positions.find(src);
            auto pd = positions.find(dst);
            if (ps == positions.end() || pd == positions.end()) continue;
            const double dist = std::hypot(ps->second.first - pd->second.first,
                                           ps->second.second - pd->second.second);
            if (dist > *range_limit_) continue;  // dropped, no retry
        }
        Queued q{now + link_delay(src, dst), next_seq_++, dst, msg};
        auto pos = std::upper_bound(
            in_flight_.begin(), in_flight_.end(), q,
            [](const Queued& a, const Queued& b) {
                return std::tie(a.deliver_at, a.seq) <
                       std::tie(b.deliver_at, b.seq);
            });
        in_flight_.insert(pos, std::move(q));
    }
}

std::vector<Delivery> NetworkModel::deliver_due(double now) {
    if (now < last_now_)
        throw std::invalid_argument("deliver_due: clock regression");
    last_now_ = now;
    std::vector<Delivery> out;
    auto it = in_flight_.begin();
    for (; it != in_flight_.end() && it->deliver_at <= now; ++it) {
        out.push_back({it->deliver_at, it->dst_id, it->msg});
    }
    in_flight_.erase(in_flight_.begin(), it);
    return out;
}

}  // namespace v2vsim
