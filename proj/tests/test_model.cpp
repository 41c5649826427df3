/*
 * Copyright (C) 2026 The bassnet authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "bassnet/model.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace bassnet;

TEST_SUITE("model")
{
    TEST_CASE("params validation")
    {
        CHECK_NOTHROW(validate(BassParams{0.02, 0.1}));
        CHECK_NOTHROW(validate(BassParams{0.0, 0.1}));
        CHECK_THROWS_AS(validate(BassParams{0.0, 0.1}, true), std::invalid_argument);
        CHECK_THROWS_AS(validate(BassParams{-0.1, 0.1}), std::invalid_argument);
        CHECK_THROWS_AS(validate(BassParams{0.1, -1.0}), std::invalid_argument);
        CHECK_THROWS_AS(validate(BassParams{NAN, 0.1}), std::invalid_argument);
    }

    TEST_CASE("hetero spec validation and homogenization")
    {
        const HeteroSpec s({0.5, 0.5}, {0.0, 0.04}, {{0.0, 0.0}, {0.4, 0.0}});
        CHECK_NOTHROW(validate(s));
        const BassParams h = homogenize(s);
        CHECK(h.p == doctest::Approx(0.02));
        CHECK(h.q == doctest::Approx(0.1)); // a_1 * a_2 * 0.4
        CHECK_THROWS_AS(validate(HeteroSpec({0.5, 0.6}, {0.1, 0.1}, {{0, 0}, {0, 0}})), std::invalid_argument);
        CHECK_THROWS_AS(validate(HeteroSpec({1.0, 0.0}, {0.1, 0.1}, {{0, 0}, {0, 0}})), std::invalid_argument);
        CHECK_THROWS_AS(validate(HeteroSpec({0.5, 0.5}, {0.1, -0.1}, {{0, 0}, {0, 0}})), std::invalid_argument);
        CHECK_THROWS(HeteroSpec({0.5, 0.5}, {0.1, 0.1}, {{0, 0}}));
    }

    TEST_CASE("group sizes")
    {
        const HeteroSpec s = reference_four_group_spec();
        const GroupSizes g = group_sizes(s, 40);
        CHECK(g.M == 40);
        CHECK(g.M_k == std::vector<std::size_t>{16, 4, 12, 8});
        const GroupSizes odd = group_sizes(s, 13);
        std::size_t total = 0;
        for (auto m : odd.M_k) {
            total += m;
        }
        CHECK(total == 13);
        CHECK(odd.M_k.back() == 13 - 5 - 1 - 3);
        CHECK_THROWS_WITH_AS(group_sizes(s, 5), doctest::Contains("group 2"), std::invalid_argument);
    }

    TEST_CASE("complete network")
    {
        const NetworkInstance net = make_complete(5, {0.02, 0.1});
        CHECK(net.size() == 5);
        CHECK(net.is_dense());
        CHECK(net.indegree(3) == 4);
        CHECK(net.hazard(0, 1) == doctest::Approx(0.1 / 4));
        CHECK(net.hazard(2, 2) == 0.0);
        CHECK(net.edge_count() == 20);
        CHECK(net.max_influence(0) == doctest::Approx(0.1));
        const auto H = net.hazard_matrix();
        CHECK(H[0 * 5 + 0] == 0.0);
        CHECK(H[1 * 5 + 4] == doctest::Approx(0.025));
        CHECK_THROWS(make_complete(0, {0.02, 0.1}));
    }

    TEST_CASE("circle network")
    {
        const NetworkInstance net = make_circle(6, {0.02, 0.1});
        CHECK(net.topology() == Topology::circle);
        CHECK_FALSE(net.is_dense());
        for (std::size_t j = 0; j < 6; ++j) {
            CHECK(net.indegree(j) == 2);
            CHECK(net.max_influence(j) == doctest::Approx(0.1));
        }
        CHECK(net.hazard(5, 0) == doctest::Approx(0.05));
        CHECK(net.hazard(1, 0) == doctest::Approx(0.05));
        CHECK(net.hazard(3, 0) == 0.0);
        CHECK_THROWS_AS(make_circle(2, {0.02, 0.1}), std::invalid_argument);
    }

    TEST_CASE("explicit network")
    {
        const NetworkInstance net({0.1, 0.2, 0.0}, {{0, 1, 0.5}, {2, 1, 0.3}, {1, 2, 1.0}});
        CHECK(net.indegree(0) == 0);
        CHECK(net.indegree(1) == 2);
        CHECK(net.hazard(0, 1) == doctest::Approx(0.25));
        CHECK(net.hazard(1, 2) == doctest::Approx(1.0));
        CHECK(net.has_external_free_nodes());
        std::size_t outs = 0;
        net.for_each_out_edge(1, [&](std::size_t to, double w) {
            CHECK(to == 2);
            CHECK(w == 1.0);
            ++outs;
        });
        CHECK(outs == 1);
        CHECK_THROWS(NetworkInstance({0.1, 0.1}, {{0, 2, 1.0}}));
        CHECK_THROWS(NetworkInstance({0.1, 0.1}, {{0, 1, -1.0}}));
    }

    TEST_CASE("kgroup network")
    {
        const auto [net, sizes] = make_kgroup(reference_four_group_spec(), 20);
        CHECK(net.size() == 20);
        CHECK(sizes.M_k == std::vector<std::size_t>{8, 2, 6, 4});
        CHECK(net.group_of(0) == 0);
        CHECK(net.group_of(19) == 3);
        CHECK(net.p(0) == 0.0);
        CHECK(net.hazard(19, 0) == doctest::Approx(0.15 / 19));
    }

    TEST_CASE("grids and trajectories")
    {
        const auto g = uniform_grid(2.0, 5);
        CHECK(g == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
        CHECK_THROWS(validate_grid(std::vector<double>{0.1, 0.2}));
        CHECK_THROWS(validate_grid(std::vector<double>{0.0, 0.2, 0.2}));
        Trajectory tr(g);
        tr.add("x", {1, 2, 3, 4, 5});
        CHECK(tr.has("x"));
        CHECK(tr.series("x")[2] == 3);
        CHECK_THROWS(tr.add("x", {1, 2, 3, 4, 5}));
        CHECK_THROWS(tr.add("y", {1, 2}));
    }

    TEST_CASE("json round trip")
    {
        const HeteroSpec s = reference_four_group_spec();
        const nlohmann::json j = s;
        CHECK(j.at("K") == 4);
        const HeteroSpec back = j.get<HeteroSpec>();
        CHECK(back.a == s.a);
        CHECK(back.Q_flat == s.Q_flat);
        const BassParams bp = nlohmann::json::parse(R"({"p": 0.03, "q": 0.4})").get<BassParams>();
        CHECK(bp == BassParams{0.03, 0.4});
    }
}
