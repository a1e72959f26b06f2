#pragma once

#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace bnaco {

using NodeId = int;

// Directed acyclic graph over nodes 0..n-1. Acyclicity is an invariant of
// validated construction paths (from_arcs, apply_dag_move); the raw edit
// methods do not re-check so callers in search loops pair them with
// would_create_cycle.
class Dag {
public:
    explicit Dag(int n);
    static Dag from_arcs(int n, const std::vector<std::pair<int, int>>& arcs);

    int node_count() const { return n_; }
    int arc_count() const { return arc_count_; }
    bool has_arc(int tail, int head) const;
    void add_arc(int tail, int head);
    void remove_arc(int tail, int head);
    bool adjacent(int a, int b) const { return has_arc(a, b) || has_arc(b, a); }

    const std::set<int>& parents(int v) const { return parents_.at(v); }
    const std::set<int>& children(int v) const { return children_.at(v); }

    std::vector<std::pair<int, int>> arcs() const;

    bool is_acyclic() const;
    // head ~> tail reachable, i.e. adding tail->head would close a cycle.
    bool would_create_cycle(int tail, int head) const;
    // Kahn's algorithm, lowest node id first among available nodes.
    std::vector<int> topological_order() const;

    bool operator==(const Dag& other) const = default;

private:
    int n_ = 0;
    int arc_count_ = 0;
    std::vector<std::set<int>> parents_;
    std::vector<std::set<int>> children_;
};

// Mixed graph with directed and undirected edges, no directed cycles.
// A Cpdag is a Pdag that is the completion of its own consistent
// extensions; that stronger invariant is maintained by the operator
// module (apply_move recompletes) rather than by this type.
class Pdag {
public:
    explicit Pdag(int n);
    static Pdag from_dag(const Dag& g);

    int node_count() const { return n_; }
    int directed_count() const { return directed_count_; }
    int undirected_count() const { return undirected_count_; }
    int edge_count() const { return directed_count_ + undirected_count_; }

    bool has_directed(int tail, int head) const;
    bool has_undirected(int a, int b) const;
    bool adjacent(int a, int b) const;

    void add_directed(int tail, int head);
    void add_undirected(int a, int b);
    void remove_directed(int tail, int head);
    void remove_undirected(int a, int b);

    const std::set<int>& parents(int v) const { return parents_.at(v); }
    const std::set<int>& children(int v) const { return children_.at(v); }
    const std::set<int>& neighbors(int v) const { return neighbors_.at(v); }
    std::set<int> adjacents(int v) const;

    std::vector<std::pair<int, int>> directed_edges() const;    // (tail, head)
    std::vector<std::pair<int, int>> undirected_edges() const;  // (a, b), a < b

    bool operator==(const Pdag& other) const = default;

private:
    void check_nodes(int a, int b) const;

    int n_ = 0;
    int directed_count_ = 0;
    int undirected_count_ = 0;
    std::vector<std::set<int>> parents_;
    std::vector<std::set<int>> children_;
    std::vector<std::set<int>> neighbors_;
};

using Cpdag = Pdag;

// Neighborhood sets around an ordered node pair (x, y):
// shared_neighbors is N_x intersect N_y, parent_neighbors is
// parents(x) intersect N_y.
struct NeighborhoodSets {
    std::set<int> parents_x;
    std::set<int> parents_y;
    std::set<int> neighbors_x;
    std::set<int> neighbors_y;
    std::set<int> shared_neighbors;
    std::set<int> parent_neighbors;
};

NeighborhoodSets neighborhood_sets(const Pdag& p, int x, int y);

std::set<std::pair<int, int>> skeleton(const Pdag& p);
std::set<std::pair<int, int>> skeleton(const Dag& g);

// Triples (x, z, y) with x -> z <- y, x < y, x and y non-adjacent.
std::set<std::tuple<int, int, int>> v_structures(const Pdag& p);
std::set<std::tuple<int, int, int>> v_structures(const Dag& g);

bool is_clique(const std::set<int>& nodes, const Pdag& p);

enum class PathKind { Undirected, SemiDirected };

// True iff every simple path of the given kind from `from` to `to` passes
// through a blocker as an internal vertex. `excluded_arc` skips one
// directed edge during traversal. Endpoints never count as blockers.
bool all_paths_blocked(const Pdag& p, int from, int to, PathKind kind,
                       const std::set<int>& blockers,
                       std::optional<std::pair<int, int>> excluded_arc = std::nullopt);

// Consistent extension: a DAG with the same skeleton and v-structures.
// Undirected edges are oriented one sink-like node at a time, picking the
// lowest node id when several qualify, so the result is deterministic.
std::optional<Dag> try_consistent_extension(const Pdag& p);
Dag pdag_to_dag(const Pdag& p);  // throws NoConsistentExtension

// Completion: directed edges are exactly the compelled ones of Class(g).
Cpdag dag_to_cpdag(const Dag& g);

// dag_to_cpdag(pdag_to_dag(p)); throws NoConsistentExtension.
Cpdag complete(const Pdag& p);

}  // namespace bnaco
