#include <doctest.h>

#include <cmath>

#include "bnaco/errors.hpp"
#include "bnaco/scoring.hpp"
#include "support.hpp"

using namespace bnaco;
using namespace testsupport;

namespace {

Dataset tiny_dataset(std::vector<std::vector<std::uint8_t>> rows, std::vector<int> cards) {
    std::vector<Variable> vars;
    for (std::size_t i = 0; i < cards.size(); ++i) {
        Variable v;
        v.name = "x" + std::to_string(i);
        for (int k = 0; k < cards[i]; ++k) v.values.push_back("s" + std::to_string(k));
        vars.push_back(v);
    }
    Dataset out(vars, static_cast<int>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t v = 0; v < cards.size(); ++v) out.set_value(r, v, rows[r][v]);
    return out;
}

}  // namespace

TEST_CASE("family_counts tabulation") {
    Dataset empty = tiny_dataset({}, {2});
    auto c0 = family_counts(empty, 0, {});
    CHECK(c0.q == 1);
    CHECK(c0.sample_total() == 0);
    CHECK(c0.count(0, 0) == 0);

    Dataset single = tiny_dataset({{0}, {1}, {1}}, {2});
    auto c1 = family_counts(single, 0, {});
    CHECK(c1.count(0, 0) == 1);
    CHECK(c1.count(0, 1) == 2);
    CHECK(c1.row_total(0) == 3);

    CHECK_THROWS_AS(family_counts(single, 0, {0}), std::invalid_argument);
}

TEST_CASE("family_counts matches a brute-force tally") {
    // binary child (var 0), ternary parent (var 1), 6 rows
    Dataset d = tiny_dataset({{0, 0}, {1, 0}, {1, 1}, {0, 2}, {1, 2}, {1, 2}}, {2, 3});
    auto c = family_counts(d, 0, {1});
    CHECK(c.q == 3);
    CHECK(c.r == 2);
    long long tally[3][2] = {{0, 0}, {0, 0}, {0, 0}};
    for (int row = 0; row < d.row_count(); ++row) ++tally[d.value(row, 1)][d.value(row, 0)];
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 2; ++k) CHECK(c.count(j, k) == tally[j][k]);
    // row-major indexing with the first (lowest-id) parent most significant
    Dataset d2 = tiny_dataset({{0, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}, {2, 2, 2});
    auto c2 = family_counts(d2, 2, {0, 1});
    CHECK(c2.q == 4);
    CHECK(c2.count(0 * 2 + 1, 0) == 1);  // (x0=0, x1=1) -> j=1
    CHECK(c2.count(1 * 2 + 0, 1) == 1);  // (x0=1, x1=0) -> j=2
    CHECK(c2.count(1 * 2 + 1, 1) == 1);  // (x0=1, x1=1) -> j=3
}

TEST_CASE("bdeu family score closed forms") {
    FamilyCounts zero;
    zero.r = 2;
    zero.q = 1;
    CHECK(bdeu_family_score(zero, 1.0) == 0.0);  // empty data scores exactly zero

    FamilyCounts one;
    one.r = 2;
    one.q = 1;
    one.rows[0] = {1, 1};
    CHECK(bdeu_family_score(one, 1.0) == doctest::Approx(std::log(1.0 / 8.0)).epsilon(1e-12));

    CHECK_THROWS_AS(bdeu_family_score(one, 0.0), std::invalid_argument);
}

TEST_CASE("bdeu matches the independent high-precision route") {
    Rng rng(4242);
    for (int trial = 0; trial < 60; ++trial) {
        const int n_vars = 3;
        Dataset d = random_dataset(n_vars, 3, 50 + static_cast<int>(rng.next_below(150)),
                                   rng.next_u64());
        const int node = static_cast<int>(rng.next_below(n_vars));
        std::set<int> parents;
        for (int v = 0; v < n_vars; ++v)
            if (v != node && rng.next_uniform() < 0.6) parents.insert(v);
        auto counts = family_counts(d, node, parents);
        const double ess = 0.5 + 4.0 * rng.next_uniform();
        const double got = bdeu_family_score(counts, ess);
        const double want = bdeu_reference(counts, ess);
        CHECK(std::abs(got - want) < 1e-9);
    }
}

TEST_CASE("penalized scores") {
    FamilyCounts c;
    c.r = 2;
    c.q = 1;
    c.rows[0] = {3, 1};
    const double ll = 3 * std::log(3.0 / 4.0) + 1 * std::log(1.0 / 4.0);

    CHECK(penalized_family_score(c, Metric::Bic, 1.0) == doctest::Approx(ll));  // ln 1 = 0
    CHECK(penalized_family_score(c, Metric::Aic, 4.0) == doctest::Approx(ll - 1.0));
    // at N = e^2 the BIC and AIC penalties coincide
    CHECK(penalized_family_score(c, Metric::Bic, std::exp(2.0)) ==
          doctest::Approx(penalized_family_score(c, Metric::Aic, std::exp(2.0))));
    CHECK_THROWS_AS(penalized_family_score(c, Metric::Bic, 0.0), std::invalid_argument);

    // 0 * ln 0 term: a parent configuration where one outcome never occurs
    FamilyCounts c2;
    c2.r = 2;
    c2.q = 2;
    c2.rows[0] = {2, 0};
    c2.rows[1] = {1, 1};
    const double ll2 = 2 * std::log(1.0) + 2 * std::log(0.5);
    CHECK(penalized_family_score(c2, Metric::Aic, 4.0) == doctest::Approx(ll2 - 2.0));
}

TEST_CASE("structure prior delta") {
    ScoringConfig cfg;
    cfg.kappa = 0.2;
    CHECK(log_prior_delta(0, {1, 2}, cfg) == doctest::Approx(2.0 * std::log(0.2)));

    cfg.prior_graph = Dag::from_arcs(3, {{1, 0}, {2, 0}});
    CHECK(log_prior_delta(0, {1, 2}, cfg) == 0.0);  // parents equal the prior's
    CHECK(log_prior_delta(0, {1}, cfg) == doctest::Approx(std::log(0.2)));

    ScoringConfig unit;
    unit.kappa = 1.0;
    CHECK(log_prior_delta(0, {1, 2}, unit) == 0.0);
}

TEST_CASE("prior delta is symmetric in candidate and prior parent sets") {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        std::set<int> a, b;
        for (int v = 1; v < 6; ++v) {
            if (rng.next_uniform() < 0.5) a.insert(v);
            if (rng.next_uniform() < 0.5) b.insert(v);
        }
        ScoringConfig with_b;
        with_b.kappa = 0.3;
        Dag prior_b(6);
        for (int v : b) prior_b.add_arc(v, 0);
        with_b.prior_graph = prior_b;

        ScoringConfig with_a;
        with_a.kappa = 0.3;
        Dag prior_a(6);
        for (int v : a) prior_a.add_arc(v, 0);
        with_a.prior_graph = prior_a;

        CHECK(log_prior_delta(0, a, with_b) == doctest::Approx(log_prior_delta(0, b, with_a)));
    }
}

TEST_CASE("scorer caching contract") {
    Dataset d = random_dataset(3, 3, 40, 11);
    ScoringConfig cfg;
    cfg.max_parents = 2;
    Scorer scorer(d, cfg);

    const double first = scorer.family(0, {1, 2});
    const double second = scorer.family(0, {1, 2});
    CHECK(first == second);  // bit identical
    CHECK(scorer.total_evals() == 2);
    CHECK(scorer.distinct_evals() == 1);

    scorer.family(1, {});
    CHECK(scorer.total_evals() == 3);
    CHECK(scorer.distinct_evals() == 2);
    CHECK(scorer.distinct_evals() <= scorer.total_evals());

    CHECK_THROWS_AS(scorer.family(0, std::set<int>{1, 2, 99}), LimitError);
}

TEST_CASE("cached and uncached scores agree") {
    Dataset d = random_dataset(4, 3, 60, 21);
    ScoringConfig cfg;
    cfg.kappa = 0.2;
    Scorer cached(d, cfg);
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const int node = static_cast<int>(rng.next_below(4));
        std::set<int> parents;
        for (int v = 0; v < 4; ++v)
            if (v != node && rng.next_uniform() < 0.5) parents.insert(v);
        auto counts = family_counts(d, node, parents);
        const double direct =
            bdeu_family_score(counts, cfg.ess) + log_prior_delta(node, parents, cfg);
        CHECK(cached.family(node, parents) == direct);
    }
}

TEST_CASE("structure scores") {
    Dataset empty = tiny_dataset({}, {2, 2});
    ScoringConfig cfg;
    Scorer s_empty(empty, cfg);
    CHECK(s_empty.structure(Dag(2)) == 0.0);

    Dataset d = random_dataset(2, 2, 80, 3);
    Scorer s(d, cfg);
    Cpdag undirected(2);
    undirected.add_undirected(0, 1);
    const double c_score = s.structure(undirected);
    CHECK(c_score == doctest::Approx(s.structure(Dag::from_arcs(2, {{0, 1}}))).epsilon(1e-12));
    CHECK(c_score == doctest::Approx(s.structure(Dag::from_arcs(2, {{1, 0}}))).epsilon(1e-12));
}

TEST_CASE("decomposability: structure score is the sum of family terms") {
    Dataset d = random_dataset(4, 3, 70, 33);
    ScoringConfig cfg;
    cfg.kappa = 0.5;
    Scorer s(d, cfg);
    Dag g = random_dag(4, 0.5, 17);
    double total = 0.0;
    for (int v = 0; v < 4; ++v) total += s.family(v, g.parents(v));
    CHECK(s.structure(g) == total);
}

TEST_CASE("score equivalence across each class on up to 4 binary nodes") {
    auto dags = all_dags(4);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Dataset d = random_dataset(4, 2, 100, seed * 101 + 13);
        ScoringConfig cfg;
        cfg.kappa = 0.2;  // empty prior keeps the penalty class-invariant
        Scorer s(d, cfg);
        std::map<std::string, double> class_score;
        for (const Dag& g : dags) {
            std::string key;
            for (auto [a, b] : skeleton(g)) key += std::to_string(a) + std::to_string(b) + ";";
            key += "|";
            for (auto [x, z, y] : v_structures(g))
                key += std::to_string(x) + std::to_string(z) + std::to_string(y) + ";";
            const double score = s.structure(g);
            auto [it, inserted] = class_score.emplace(key, score);
            if (!inserted) CHECK(std::abs(score - it->second) < 1e-9);
        }
    }
}

TEST_CASE("config validation") {
    ScoringConfig bad;
    bad.ess = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.ess = 4.0;
    bad.kappa = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.kappa = 1.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.kappa = 0.2;
    bad.max_parents = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}
