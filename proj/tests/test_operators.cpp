#include <doctest.h>

#include <cmath>

#include "bnaco/errors.hpp"
#include "bnaco/operators.hpp"
#include "support.hpp"

using namespace bnaco;
using namespace testsupport;

namespace {

std::vector<std::string> move_texts(const std::vector<Move>& moves) {
    std::vector<std::string> out;
    for (const auto& m : moves) out.push_back(m.text());
    return out;
}

}  // namespace

TEST_CASE("move keys are canonical") {
    CHECK(Move::insert_u(2, 0) == Move::insert_u(0, 2));
    CHECK(Move::delete_u(5, 3) == Move::delete_u(3, 5));
    CHECK(Move::make_v(4, 1, 2) == Move::make_v(1, 4, 2));
    CHECK(Move::insert_d(1, 0) != Move::insert_d(0, 1));
    CHECK(Move::insert_u(0, 1).text() == "InsertU(0,1)");
    CHECK(Move::make_v(1, 0, 2).text() == "MakeV(0,1,2)");
    CHECK(Move::reverse_d(3, 1).text() == "ReverseD(3,1)");
}

TEST_CASE("candidate moves on the trace states") {
    TraceFixture fx;

    CHECK(move_texts(candidate_moves(fx.empty, OperatorSet::all())) ==
          std::vector<std::string>{"InsertU(0,1)", "InsertU(0,2)", "InsertU(1,2)"});

    CHECK(move_texts(candidate_moves(fx.one_edge, OperatorSet::all())) ==
          std::vector<std::string>{"InsertU(0,1)", "InsertU(1,2)", "DeleteU(0,2)"});

    CHECK(move_texts(candidate_moves(fx.two_edges, OperatorSet::all())) ==
          std::vector<std::string>{"InsertU(0,1)", "DeleteU(0,2)", "DeleteU(1,2)",
                                   "MakeV(0,1,2)"});

    CHECK(move_texts(candidate_moves(fx.vee, OperatorSet::all())) ==
          std::vector<std::string>{"InsertU(0,1)", "DeleteD(0,2)", "DeleteD(1,2)",
                                   "ReverseD(0,2)", "ReverseD(1,2)"});

    CHECK(move_texts(candidate_moves(fx.triangle, OperatorSet::all())) ==
          std::vector<std::string>{"DeleteU(0,1)", "DeleteU(0,2)", "DeleteU(1,2)"});
}

TEST_CASE("directed insertion needs distinct parent sets") {
    // with equal (empty) parent sets only the undirected insertion is valid
    Cpdag p(3);
    p.add_undirected(0, 2);
    p.add_undirected(1, 2);
    CHECK_FALSE(validate_move(Move::insert_d(0, 1), p));
    CHECK_FALSE(validate_move(Move::insert_d(1, 0), p));

    // a directed edge into x makes the parent sets differ
    Cpdag q(3);
    q.add_directed(2, 0);
    CHECK(validate_move(Move::insert_d(0, 1), q));
    CHECK(validate_move(Move::insert_u(1, 2), q));
    CHECK_FALSE(validate_move(Move::insert_u(0, 1), q));  // parent sets differ
}

TEST_CASE("make_v requires both undirected edges and non-adjacent tips") {
    Cpdag p(3);
    p.add_undirected(0, 2);
    p.add_undirected(1, 2);
    CHECK(validate_move(Move::make_v(0, 1, 2), p));

    Cpdag shielded = p;
    shielded.add_undirected(0, 1);
    CHECK_FALSE(validate_move(Move::make_v(0, 1, 2), shielded));

    Cpdag vee(3);
    vee.add_directed(0, 2);
    vee.add_undirected(1, 2);
    CHECK_FALSE(validate_move(Move::make_v(0, 1, 2), vee));
}

TEST_CASE("apply_move recompletes the result") {
    TraceFixture fx;
    Cpdag one = apply_move(fx.empty, Move::insert_u(0, 2));
    CHECK(one == fx.one_edge);

    Cpdag vee = apply_move(fx.two_edges, Move::make_v(0, 1, 2));
    CHECK(vee == fx.vee);

    // chain collapse: removing the collider's second parent undirects the rest
    Cpdag after = apply_move(fx.vee, Move::delete_d(0, 2));
    Cpdag expected(3);
    expected.add_undirected(1, 2);
    CHECK(after == expected);
}

TEST_CASE("applied moves keep a consistent extension and stable completion") {
    Rng rng(31);
    int applied = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Cpdag state(5);
        for (int step = 0; step < 6; ++step) {
            auto moves = candidate_moves(state, OperatorSet::all());
            if (moves.empty()) break;
            const Move m = moves[rng.next_below(moves.size())];
            state = apply_move(state, m);
            ++applied;
            CHECK(try_consistent_extension(state).has_value());
            CHECK(complete(state) == state);
        }
    }
    CHECK(applied >= 200);
}

TEST_CASE("table deltas match the rescore oracle") {
    Rng rng(77);
    int cases = 0;
    while (cases < 120) {
        const int n = 3 + static_cast<int>(rng.next_below(4));  // up to 6 nodes
        Dataset data = random_dataset(n, 3, 30 + static_cast<int>(rng.next_below(170)),
                                      rng.next_u64());
        ScoringConfig cfg;
        cfg.max_parents = 6;
        cfg.kappa = rng.next_uniform() < 0.5 ? 1.0 : 0.2;
        if (rng.next_uniform() < 0.25) cfg.metric = Metric::Bic;
        Scorer scorer(data, cfg);

        Cpdag state = random_cpdag(n, static_cast<int>(rng.next_below(7)), rng.next_u64());
        auto moves = enumerate_moves(state, scorer, OperatorSet::all());
        if (moves.empty()) continue;
        const auto& [m, eta] = moves[rng.next_below(moves.size())];
        const double before = scorer.structure(state);
        const double after = scorer.structure(apply_move(state, m));
        CHECK(std::abs(eta - (after - before)) < 1e-9);
        ++cases;
    }
}

TEST_CASE("insert and delete of the same undirected edge cancel") {
    Dataset data = random_dataset(3, 2, 60, 5);
    ScoringConfig cfg;
    Scorer scorer(data, cfg);
    Cpdag empty(3);
    const double ins = move_score_delta(Move::insert_u(0, 2), empty, scorer);
    Cpdag with_edge = apply_move(empty, Move::insert_u(0, 2));
    const double del = move_score_delta(Move::delete_u(0, 2), with_edge, scorer);
    CHECK(ins + del == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("parent limit filters moves from enumeration") {
    Dataset data = random_dataset(5, 2, 40, 9);
    ScoringConfig cfg;
    cfg.max_parents = 1;
    Scorer scorer(data, cfg);
    // star: three undirected edges at node 4; inserting a fourth would
    // require scoring families beyond the single-parent limit
    Cpdag star(5);
    star.add_undirected(0, 4);
    auto moves = enumerate_moves(star, scorer, OperatorSet::all());
    for (const auto& [m, eta] : moves) {
        Cpdag next = apply_move(star, m);
        Dag ext = pdag_to_dag(next);
        for (int v = 0; v < 5; ++v)
            CHECK(static_cast<int>(ext.parents(v).size()) <= cfg.max_parents);
    }
}

TEST_CASE("dag moves: validity and deltas") {
    Dataset data = random_dataset(3, 2, 50, 23);
    ScoringConfig cfg;
    Scorer scorer(data, cfg);

    Dag g(2);
    auto [ok1, d1] = dag_move_check_and_delta({DagMove::Kind::Insert, 0, 1}, g, scorer);
    CHECK(ok1);
    g.add_arc(0, 1);
    auto [ok2, d2] = dag_move_check_and_delta({DagMove::Kind::Insert, 1, 0}, g, scorer);
    CHECK_FALSE(ok2);  // would close a cycle
    auto [ok3, d3] = dag_move_check_and_delta({DagMove::Kind::Delete, 1, 0}, g, scorer);
    CHECK_FALSE(ok3);  // arc absent

    // reverse delta equals delete-family plus insert-family, and the rescore
    Dag h(3);
    h.add_arc(0, 1);
    h.add_arc(1, 2);
    auto [ok4, d4] = dag_move_check_and_delta({DagMove::Kind::Reverse, 0, 1}, h, scorer);
    CHECK(ok4);
    const double before = scorer.structure(h);
    const double after = scorer.structure(apply_dag_move(h, {DagMove::Kind::Reverse, 0, 1}));
    CHECK(d4 == doctest::Approx(after - before).epsilon(1e-12));
}

TEST_CASE("dag move edits invert cleanly and preserve acyclicity") {
    Dataset data = random_dataset(5, 2, 30, 41);
    ScoringConfig cfg;
    cfg.max_parents = 4;
    Scorer scorer(data, cfg);
    Rng rng(13);
    Dag g(5);
    for (int step = 0; step < 60; ++step) {
        auto moves = enumerate_dag_moves(g, scorer, false);
        if (moves.empty()) break;
        g = apply_dag_move(g, moves[rng.next_below(moves.size())].first);
        CHECK(g.is_acyclic());
    }
    Dag h(2);
    Dag h2 = apply_dag_move(h, {DagMove::Kind::Insert, 0, 1});
    CHECK(apply_dag_move(h2, {DagMove::Kind::Delete, 0, 1}) == h);
    Dag h3 = apply_dag_move(h2, {DagMove::Kind::Reverse, 0, 1});
    CHECK(apply_dag_move(h3, {DagMove::Kind::Reverse, 1, 0}) == h2);
}
