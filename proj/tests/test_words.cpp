#include <doctest.h>

#include "helpers.hpp"

using namespace kgraph;
using namespace kgraph::testing;

TEST_CASE("already colour-ordered words normalize to themselves") {
    GraphPtr g = graph22_flip();
    std::vector<Edge> w{{0, 1}, {0, 0}, {1, 1}};
    NormalWord nw = normalize(*g, w);
    CHECK(nw.blocks == std::vector<std::vector<int>>{{1, 0}, {1}});
}

TEST_CASE("normalization applies theta inverse at descents") {
    // identity theta: e^2_1 e^1_2 -> e^1_2 e^2_1
    GraphPtr id = graph22_identity();
    NormalWord nw = normalize(*id, {{1, 0}, {0, 1}});
    CHECK(nw.blocks == std::vector<std::vector<int>>{{1}, {0}});
    // flip theta: e^2_1 e^1_2 -> theta^{-1}(2,1) = (1,2): e^1_1 e^2_2
    GraphPtr fl = graph22_flip();
    NormalWord nf = normalize(*fl, {{1, 0}, {0, 1}});
    CHECK(nf.blocks == std::vector<std::vector<int>>{{0}, {1}});
}

TEST_CASE("factorize splits at the requested degree and round-trips") {
    GraphPtr id = graph22_identity();
    NormalWord w = normalize(*id, {{0, 0}, {1, 1}});
    SUBCASE("p = 0 and p = d(w) are forced") {
        auto [mu0, nu0] = factorize(*id, w, {0, 0});
        CHECK(mu0.empty());
        CHECK(nu0 == w);
        auto [mu1, nu1] = factorize(*id, w, {1, 1});
        CHECK(nu1.empty());
        CHECK(mu1 == w);
    }
    SUBCASE("commuting split via identity theta") {
        auto [mu, nu] = factorize(*id, w, {0, 1});
        CHECK(mu.blocks == std::vector<std::vector<int>>{{}, {1}});
        CHECK(nu.blocks == std::vector<std::vector<int>>{{0}, {}});
    }
    SUBCASE("degree error") { CHECK_THROWS_AS(factorize(*id, w, {2, 0}), domain_error); }
}

TEST_CASE("factorization round-trips and is unique for all words up to degree (2,2)") {
    for (const GraphPtr& g : {graph22_identity(), graph22_flip(), graph22_3cycle()})
        for (int d0 = 0; d0 <= 2; ++d0)
            for (int d1 = 0; d1 <= 2; ++d1)
                for (const NormalWord& w : enumerate_level(*g, {d0, d1}))
                    for (int p0 = 0; p0 <= d0; ++p0)
                        for (int p1 = 0; p1 <= d1; ++p1) {
                            Deg p{p0, p1};
                            auto [mu, nu] = factorize(*g, w, p);
                            CHECK(mu.degree() == p);
                            CHECK(concat(*g, mu, nu) == w);
                            // uniqueness by exhaustion over candidate splits
                            int count = 0;
                            for (const NormalWord& cand : enumerate_level(*g, p))
                                for (const NormalWord& rest : enumerate_level(*g, {d0 - p0, d1 - p1}))
                                    if (concat(*g, cand, rest) == w) ++count;
                            CHECK(count == 1);
                        }
}

TEST_CASE("enumerate_level counts m^p and is lexicographic") {
    GraphPtr g = graph23_identity();
    CHECK(enumerate_level(*g, {0, 0}).size() == 1);
    auto level10 = enumerate_level(*g, {1, 0});
    CHECK(level10.size() == 2);
    CHECK(level10[0].blocks == std::vector<std::vector<int>>{{0}, {}});
    CHECK(level10[1].blocks == std::vector<std::vector<int>>{{1}, {}});
    CHECK(enumerate_level(*g, {1, 1}).size() == 6);
    auto lvl = enumerate_level(*g, {2, 1});
    CHECK(lvl.size() == 12);
    CHECK(std::is_sorted(lvl.begin(), lvl.end()));
    CHECK(std::adjacent_find(lvl.begin(), lvl.end()) == lvl.end());
}

TEST_CASE("lambda_min on worked examples") {
    GraphPtr id = graph22_identity();
    GraphPtr fl = graph22_flip();
    NormalWord e11 = w_edge(*id, 0, 0), e21 = w_edge(*id, 1, 0);

    SUBCASE("mu == nu gives the trivial pair") {
        auto pairs = lambda_min(*id, e11, e11);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].first.empty());
        CHECK(pairs[0].second.empty());
    }
    SUBCASE("identity theta: unique extension") {
        auto pairs = lambda_min(*id, e11, e21);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].first == w_edge(*id, 1, 0));
        CHECK(pairs[0].second == w_edge(*id, 0, 0));
    }
    SUBCASE("flip theta: two extensions") {
        auto pairs = lambda_min(*fl, e11, e21);
        REQUIRE(pairs.size() == 2);
        CHECK(pairs[0] == std::make_pair(w_edge(*fl, 1, 0), w_edge(*fl, 0, 0)));
        CHECK(pairs[1] == std::make_pair(w_edge(*fl, 1, 1), w_edge(*fl, 0, 1)));
    }
}

TEST_CASE("lambda_min_fast agrees with the defining enumeration") {
    std::mt19937 rng(17);
    std::vector<GraphPtr> graphs{graph22_identity(), graph22_flip(), graph22_3cycle(), graph222_identity()};
    auto valid3 = all_valid_graphs(3, {2, 2, 2}, 20000);
    for (int t = 0; t < 3; ++t) graphs.push_back(valid3[std::uniform_int_distribution<std::size_t>(0, valid3.size() - 1)(rng)]);
    for (const GraphPtr& g : graphs)
        for (int trial = 0; trial < 80; ++trial) {
            NormalWord mu = random_word(*g, random_deg(g->k, 0, 2, rng), rng);
            NormalWord nu = random_word(*g, random_deg(g->k, 0, 2, rng), rng);
            auto brute = lambda_min(*g, mu, nu);
            auto fast = lambda_min_fast(*g, mu, nu);
            CHECK(brute == fast);
            CHECK(static_cast<int>(brute.size()) == lambda_min_size_oracle(*g, mu, nu));
        }
}

TEST_CASE("lambda_min symmetry: (xi,eta) in Lmin(mu,nu) iff (eta,xi) in Lmin(nu,mu)") {
    std::mt19937 rng(19);
    for (const GraphPtr& g : {graph22_flip(), graph22_3cycle()})
        for (int trial = 0; trial < 60; ++trial) {
            NormalWord mu = random_word(*g, random_deg(2, 0, 2, rng), rng);
            NormalWord nu = random_word(*g, random_deg(2, 0, 2, rng), rng);
            auto ab = lambda_min(*g, mu, nu);
            auto ba = lambda_min(*g, nu, mu);
            std::vector<std::pair<NormalWord, NormalWord>> flipped;
            for (auto& [xi, eta] : ba) flipped.emplace_back(eta, xi);
            std::sort(flipped.begin(), flipped.end());
            CHECK(ab == flipped);
        }
}

TEST_CASE("little pull-back property on the census examples") {
    CHECK(check_little_pullback(*graph22_identity()).lpb);
    LpbReport fl = check_little_pullback(*graph22_flip());
    CHECK(!fl.lpb);
    REQUIRE(fl.witness.has_value());
    CHECK(fl.witness->first == Edge{0, 0});
    CHECK(fl.witness->second == Edge{1, 0});
    CHECK(!check_little_pullback(*graph22_3cycle()).lpb);
}

TEST_CASE("single alignment matches LPB on the (2,2) census") {
    for (const GraphPtr& g : all_valid_graphs(2, {2, 2}, 1000))
        CHECK(check_little_pullback(*g).lpb == check_singly_aligned(*g, {3, 3}).singly_aligned);
}

TEST_CASE("normalization confluence holds exactly on valid graphs") {
    std::mt19937 rng(23);
    GraphPtr g = graph222_identity();
    for (int t = 0; t < 100; ++t) {
        std::vector<Edge> word;
        int len = std::uniform_int_distribution<int>(0, 8)(rng);
        for (int i = 0; i < len; ++i)
            word.push_back({std::uniform_int_distribution<int>(0, 2)(rng), std::uniform_int_distribution<int>(0, 1)(rng)});
        NormalWord base = normalize(*g, word);
        for (int r = 0; r < 5; ++r) CHECK(normalize_random(*g, word, rng) == base);
    }
}
