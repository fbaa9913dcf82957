#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "v2vsim/network.hpp"

using namespace v2vsim;

namespace {

KinematicMessage msg_at(int sender, double t, double speed = 0.0) {
    KinematicMessage m;
    m.sender_id = sender;
    m.speed = speed;
    m.sent_at = t;
    return m;
}

const std::map<int, std::pair<double, double>> kColocated{
    {0, {0.0, 0.0}}, {1, {0.0, 0.0}}, {2, {0.0, 0.0}}, {3, {0.0, 0.0}}};

}  // namespace

TEST_CASE("precedent topology links consecutive pairs") {
    const auto net = NetworkModel::precedent_topology({0, 1, 2, 3}, 0.01);
    const std::vector<std::pair<int, int>> expected{{0, 1}, {1, 2}, {2, 3}};
    CHECK(net.links() == expected);
    CHECK_FALSE(net.range_limit().has_value());

    const auto minimal = NetworkModel::precedent_topology({7, 9}, 0.1);
    CHECK(minimal.links() == std::vector<std::pair<int, int>>{{7, 9}});

    CHECK_THROWS(NetworkModel::precedent_topology({5}, 0.01));
    CHECK_THROWS(NetworkModel::precedent_topology({1, 1, 2}, 0.01));
}

TEST_CASE("ego topology is receive-only with a range gate") {
    const auto net = NetworkModel::ego_topology({0, 1, 2, 3}, 0, 0.01);
    const std::vector<std::pair<int, int>> expected{{1, 0}, {2, 0}, {3, 0}};
    CHECK(net.links() == expected);
    CHECK(net.range_limit() == 300.0);

    const auto pair = NetworkModel::ego_topology({0, 1}, 0, 0.01);
    CHECK(pair.links() == std::vector<std::pair<int, int>>{{1, 0}});

    const auto silent = NetworkModel::ego_topology({0}, 0, 0.01);
    CHECK(silent.links().empty());

    CHECK_THROWS(NetworkModel::ego_topology({1, 2}, 5, 0.01));
}

TEST_CASE("delivery time is send time plus delay") {
    auto net = NetworkModel::precedent_topology({0, 1}, 0.1);
    net.send(0, msg_at(0, 1.0), 1.0, kColocated);
    CHECK(net.deliver_due(1.05).empty());
    auto due = net.deliver_due(1.1);
    REQUIRE(due.size() == 1);
    CHECK(due[0].deliver_at == 1.1);
    CHECK(due[0].dst_id == 1);
    CHECK(net.in_flight_count() == 0);
}

TEST_CASE("largest paper delay") {
    auto net = NetworkModel::precedent_topology({0, 1}, 1.0);
    net.send(0, msg_at(0, 0.0), 0.0, kColocated);
    CHECK(net.deliver_due(0.999).empty());
    CHECK(net.deliver_due(1.0).size() == 1);
}

TEST_CASE("zero delay is the synchronous limit") {
    auto net = NetworkModel::precedent_topology({0, 1}, 0.0);
    net.send(0, msg_at(0, 2.0), 2.0, kColocated);
    CHECK(net.deliver_due(2.0).size() == 1);
}

TEST_CASE("range gate drops at send time") {
    auto net = NetworkModel::ego_topology({0, 1}, 0, 0.5);
    std::map<int, std::pair<double, double>> far{{0, {0.0, 0.0}},
                                                 {1, {350.0, 0.0}}};
    net.send(1, msg_at(1, 0.0), 0.0, far);
    CHECK(net.in_flight_count() == 0);
    CHECK(net.deliver_due(10.0).empty());

    // exactly 300 m is in range
    std::map<int, std::pair<double, double>> edge{{0, {0.0, 0.0}},
                                                  {1, {300.0, 0.0}}};
    net.send(1, msg_at(1, 1.0), 1.0, edge);
    CHECK(net.in_flight_count() == 1);
}

TEST_CASE("per-link FIFO order") {
    auto net = NetworkModel::precedent_topology({0, 1}, 0.5);
    net.send(0, msg_at(0, 0.0, 1.0), 0.0, kColocated);
    net.send(0, msg_at(0, 0.01, 2.0), 0.01, kColocated);
    auto due = net.deliver_due(0.6);
    REQUIRE(due.size() == 2);
    CHECK(due[0].msg.speed == 1.0);
    CHECK(due[1].msg.speed == 2.0);
}

TEST_CASE("ties broken by enqueue order") {
    auto net = NetworkModel::precedent_topology({0, 1, 2}, 0.0);
    net.set_link_delay(0, 1, 0.2);
    net.set_link_delay(1, 2, 0.1);
    net.send(0, msg_at(0, 0.0, 10.0), 0.0, kColocated);  // arrives t=0.2
    net.send(1, msg_at(1, 0.1, 20.0), 0.1, kColocated);  // arrives t=0.2 too
    auto due = net.deliver_due(0.2);
    REQUIRE(due.size() == 2);
    CHECK(due[0].msg.speed == 10.0);
    CHECK(due[1].msg.speed == 20.0);
}

TEST_CASE("no delivery without a link") {
    auto net = NetworkModel::precedent_topology({0, 1}, 0.0);
    net.send(1, msg_at(1, 0.0), 0.0, kColocated);  // follower has no out-link
    CHECK(net.in_flight_count() == 0);
}

TEST_CASE("conservation: sent = delivered + in flight") {
    auto net = NetworkModel::precedent_topology({0, 1, 2, 3}, 0.25);
    std::size_t sent = 0, delivered = 0;
    for (int k = 0; k < 100; ++k) {
        const double now = k * 0.01;
        for (int id = 0; id < 3; ++id) {
            net.send(id, msg_at(id, now), now, kColocated);
            ++sent;  // each of ids 0..2 has exactly one out-link
        }
        delivered += net.deliver_due(now).size();
        REQUIRE(sent == delivered + net.in_flight_count());
    }
}

TEST_CASE("clock regression rejected") {
    auto net = NetworkModel::precedent_topology({0, 1}, 0.1);
    net.deliver_due(5.0);
    CHECK_THROWS(net.deliver_due(4.9));
}
