#include <psisel/select/select.hpp>

#include <gtest/gtest.h>

#include "test_support.hpp"

#include <cmath>
#include <random>

using namespace psisel;
using namespace psisel::testing;

TEST(SelectTarget, PathLambdaOne) {
    auto oracle = CutOracle::graph(path4());
    SelectionResult r = select_target(oracle, Ratio(1));
    EXPECT_EQ(r.chosen, NodeSet(4, {1, 2}));
    ASSERT_EQ(r.trace.size(), 2U);
    EXPECT_EQ(r.trace[0].node, 1U);
    EXPECT_EQ(r.trace[0].f_after, Ratio(-1));
    EXPECT_EQ(r.trace[1].node, 2U);
    EXPECT_EQ(r.trace[1].f_after, Ratio(0));
    EXPECT_EQ(r.achieved.psi, Ratio(1));
    EXPECT_EQ(r.target_lambda, Ratio(1));
}

TEST(SelectTarget, LazyNeedsNoMoreEvaluationsThanNaive) {
    auto oracle = CutOracle::graph(path4());
    SelectionResult lazy = select_target(oracle, Ratio(1), GreedyMode::lazy);
    SelectionResult naive = select_target(oracle, Ratio(1), GreedyMode::naive);
    // Both counts include the initial F_lambda(empty) evaluation.
    EXPECT_EQ(naive.oracle_evaluations, 1U + 4U + 3U);
    EXPECT_LE(lazy.oracle_evaluations, naive.oracle_evaluations);
    EXPECT_EQ(lazy.chosen, naive.chosen);
}

TEST(SelectTarget, LambdaZeroSelectsNothing) {
    auto oracle = CutOracle::graph(path4());
    SelectionResult r = select_target(oracle, Ratio(0));
    EXPECT_TRUE(r.chosen.empty());
    EXPECT_TRUE(r.trace.empty());
    EXPECT_THROW(select_target(oracle, Ratio(-1)), InvalidInput);
}

TEST(SelectTarget, TwoTrianglesNeedBothComponents) {
    auto oracle = CutOracle::graph(clique_pair(3, false));
    SelectionResult r = select_target(oracle, Ratio(1));
    EXPECT_TRUE(r.chosen.intersects(NodeSet(6, {0, 1, 2})));
    EXPECT_TRUE(r.chosen.intersects(NodeSet(6, {3, 4, 5})));
    EXPECT_GE(r.achieved.psi, Ratio(1));
}

TEST(SelectTarget, TiesGoToLowestIndex) {
    // Every node of an edgeless graph has the same gain.
    auto oracle = CutOracle::graph(WeightedGraph(5, {}));
    for (GreedyMode mode : {GreedyMode::lazy, GreedyMode::naive}) {
        SelectionResult r = select_target(oracle, Ratio(1), mode);
        std::vector<node_t> order;
        for (const auto& step : r.trace)
            order.push_back(step.node);
        EXPECT_EQ(order, (std::vector<node_t>{0, 1, 2, 3, 4}));
    }
}

TEST(SelectTarget, FeasibleTraceAndApproximationFactor) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t n = 2 + trial % 11;
        const bool hyper = trial % 4 == 3;
        WeightedGraph g = random_graph(rng, n, 0.45, 3);
        Hypergraph h = random_hypergraph(rng, std::min<std::size_t>(n, 8), 7, 3);
        auto oracle = hyper ? CutOracle::hypergraph(h) : CutOracle::graph(g);
        auto table = hyper ? cut_table(h) : cut_table(g);
        const std::size_t m = oracle.universe();
        for (std::int64_t lam = 1; lam <= 3; ++lam) {
            SelectionResult r = select_target(oracle, Ratio(lam));
            ASSERT_GE(r.achieved.psi, Ratio(lam));
            ASSERT_EQ(r.achieved.psi, compute_psi(oracle, r.chosen).psi);
            ASSERT_EQ(r.trace.size(), r.chosen.count());
            for (std::size_t i = 1; i < r.trace.size(); ++i)
                ASSERT_GE(r.trace[i].f_after, r.trace[i - 1].f_after);
            if (!r.trace.empty())
                ASSERT_EQ(r.trace.back().f_after, Ratio(0));
            const int optimum = brute_min_cover(table, m, lam, 1);
            const double factor = 1.0 + std::log(static_cast<double>(lam) * static_cast<double>(m));
            ASSERT_LE(static_cast<double>(r.chosen.count()), factor * optimum + 1e-9)
                << "trial " << trial << " lambda " << lam;
        }
    }
}

TEST(Greedy, LazyAndNaiveAgree) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 11;
        auto oracle = trial % 3 == 0 ? CutOracle::hypergraph(random_hypergraph(rng, n, 8, 3))
                                     : CutOracle::graph(random_graph(rng, n, 0.4, 4));
        Ratio lam(std::uniform_int_distribution<std::int64_t>(1, 12)(rng), 4);
        GreedyRun lazy = greedy_f_lambda(oracle, lam, {GreedyMode::lazy});
        GreedyRun naive = greedy_f_lambda(oracle, lam, {GreedyMode::naive});
        ASSERT_EQ(lazy.trace.size(), naive.trace.size());
        for (std::size_t i = 0; i < lazy.trace.size(); ++i) {
            ASSERT_EQ(lazy.trace[i].node, naive.trace[i].node) << "trial " << trial;
            ASSERT_EQ(lazy.trace[i].f_after, naive.trace[i].f_after);
        }
        ASSERT_LE(lazy.evaluations, naive.evaluations);
    }
}

TEST(Greedy, MaxSizeTruncates) {
    auto oracle = CutOracle::graph(path4());
    GreedyRun run = greedy_f_lambda(oracle, Ratio(1), {GreedyMode::lazy, 1});
    EXPECT_EQ(run.chosen, NodeSet(4, {1}));
    EXPECT_FALSE(run.feasible());
    EXPECT_EQ(run.final_value, Ratio(-1));
}

TEST(SelectBudget, PathSingleLabel) {
    auto oracle = CutOracle::graph(path4());
    SelectionResult r = select_budget(oracle, 1);
    EXPECT_EQ(r.chosen, NodeSet(4, {1}));
    EXPECT_EQ(r.achieved.psi, Ratio(1, 2));
    EXPECT_GT(r.oracle_evaluations, 0U);
}

TEST(SelectBudget, TwoTrianglesSingleLabel) {
    auto oracle = CutOracle::graph(clique_pair(3, false));
    SelectionResult r = select_budget(oracle, 1);
    EXPECT_EQ(r.chosen.count(), 1U);
    EXPECT_EQ(r.achieved.psi, Ratio(0));
}

TEST(SelectBudget, FullBudgetAndErrors) {
    auto oracle = CutOracle::graph(path4());
    SelectionResult r = select_budget(oracle, 4);
    EXPECT_EQ(r.chosen, NodeSet::full(4));
    EXPECT_TRUE(r.achieved.psi.is_infinite());
    EXPECT_THROW(select_budget(oracle, 0), InvalidInput);
    EXPECT_THROW(select_budget(oracle, 2, Ratio(0)), InvalidInput);
}

TEST(SelectBudget, LargeBudgetReachesSingletonBound) {
    auto oracle = CutOracle::graph(path4());
    SelectionResult r = select_budget(oracle, 3);
    EXPECT_GE(r.achieved.psi, Ratio(1));
}

TEST(SelectBudget, RespectsBudgetAndIsMonotoneInK) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 3 + trial % 10;
        auto oracle = trial % 3 == 0 ? CutOracle::hypergraph(random_hypergraph(rng, n, 9, 3))
                                     : CutOracle::graph(random_graph(rng, n, 0.45, 4));
        Ratio previous(0);
        for (std::size_t k = 1; k <= n; ++k) {
            SelectionResult r = select_budget(oracle, k);
            ASSERT_LE(r.chosen.count(), k);
            ASSERT_EQ(r.achieved.psi, compute_psi(oracle, r.chosen).psi);
            ASSERT_GE(r.achieved.psi, previous) << "trial " << trial << " k " << k;
            previous = r.achieved.psi;
        }
    }
}

TEST(RandomSelect, Contract) {
    EXPECT_EQ(random_select(10, 10, 1), NodeSet::full(10));
    EXPECT_TRUE(random_select(10, 0, 1).empty());
    EXPECT_EQ(random_select(10, 3, 99), random_select(10, 3, 99));
    EXPECT_EQ(random_select(10, 3, 99).count(), 3U);
    EXPECT_THROW(random_select(3, 4, 1), InvalidInput);
}

TEST(RandomSelect, RoughlyUniform) {
    std::vector<int> hits(8, 0);
    for (std::uint64_t seed = 0; seed < 4000; ++seed)
        for (node_t v : random_select(8, 2, seed).members())
            ++hits[v];
    for (int h : hits)
        EXPECT_NEAR(h, 1000, 150);
}

TEST(VertexCover, StrengthThreeMeansCover) {
    for (const auto& g : cubic_graph_suite()) {
        auto oracle = CutOracle::graph(g);
        auto table = cut_table(g);
        const std::size_t n = g.node_count();
        const Mask all = static_cast<Mask>((1U << n) - 1);
        for (Mask s = 0; s <= all; ++s) {
            Fraction f = brute_strength(table, all & ~s);
            const bool strong = f.den == 0 || f.num >= 3 * f.den;
            ASSERT_EQ(strong, is_vertex_cover(g, s));
            ASSERT_EQ(compute_psi(oracle, set_of(n, s)).psi >= Ratio(3), strong);
        }
    }
}
