#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bnaco/graph.hpp"
#include "bnaco/scoring.hpp"

namespace bnaco {

enum class MoveKind : std::uint8_t { InsertU, DeleteU, InsertD, DeleteD, ReverseD, MakeV };

// One operator instantiation. Construct through the factories so keys are
// canonical: undirected kinds store x < y, MakeV stores (min, max, z),
// directed kinds keep (x, y) ordered.
struct Move {
    MoveKind kind = MoveKind::InsertU;
    int x = -1;
    int y = -1;
    int z = -1;  // MakeV only

    static Move insert_u(int x, int y);
    static Move delete_u(int x, int y);
    static Move insert_d(int x, int y);
    static Move delete_d(int x, int y);
    static Move reverse_d(int x, int y);
    static Move make_v(int x, int y, int z);

    std::array<int, 4> key() const {
        return {static_cast<int>(kind), x, y, z};
    }
    std::string text() const;  // e.g. "InsertU(0,2)", "MakeV(0,1,2)"

    bool operator==(const Move&) const = default;
    auto operator<=>(const Move& other) const { return key() <=> other.key(); }
};

struct ScoredMove {
    Move move;
    double eta = 0.0;
};

struct OperatorSet {
    bool insert_u = true;
    bool delete_u = true;
    bool insert_d = true;
    bool delete_d = true;
    bool reverse_d = true;
    bool make_v = true;

    static OperatorSet all() { return OperatorSet{}; }
    bool contains(MoveKind k) const;
};

// Structural preconditions plus the per-operator validity tests.
bool validate_move(const Move& m, const Cpdag& p);

// Closed-form score change of a valid move, evaluated through the cached
// family scorer. Propagates LimitError when an involved family exceeds
// max_parents.
double move_score_delta(const Move& m, const Cpdag& p, Scorer& scorer);

// Local edit followed by recompletion, so the result is again a CPDAG.
// A completion failure after a validated move is an operator bug and
// throws logic_error.
Cpdag apply_move(const Cpdag& p, const Move& m);

// All moves passing validate_move, in canonical order (kind as declared,
// then node tuple). No scoring.
std::vector<Move> candidate_moves(const Cpdag& p, const OperatorSet& kinds);

// candidate_moves paired with score deltas; moves whose delta evaluation
// trips the parent limit are dropped.
std::vector<ScoredMove> enumerate_moves(const Cpdag& p, Scorer& scorer, const OperatorSet& kinds);

// DAG-space operators.
struct DagMove {
    enum class Kind : std::uint8_t { Insert, Delete, Reverse };
    Kind kind = Kind::Insert;
    int tail = -1;
    int head = -1;

    std::string text() const;
    bool operator==(const DagMove&) const = default;
};

// Validity (acyclicity and parent limit) plus the family-level delta.
// Returns {false, 0} for invalid moves.
std::pair<bool, double> dag_move_check_and_delta(const DagMove& m, const Dag& g, Scorer& scorer);

Dag apply_dag_move(const Dag& g, const DagMove& m);

// Valid DAG moves with deltas, canonical order (kind, tail, head).
// additions_only restricts to arc insertions (the ant construction step).
std::vector<std::pair<DagMove, double>> enumerate_dag_moves(const Dag& g, Scorer& scorer,
                                                            bool additions_only);

}  // namespace bnaco
