#include "bnaco/operators.hpp"

#include <algorithm>
#include <stdexcept>

#include "bnaco/errors.hpp"

namespace bnaco {

namespace {

std::set<int> with(std::set<int> s, int v) {
    s.insert(v);
    return s;
}

std::set<int> without(std::set<int> s, int v) {
    s.erase(v);
    return s;
}

std::set<int> unite(const std::set<int>& a, const std::set<int>& b) {
    std::set<int> out = a;
    out.insert(b.begin(), b.end());
    return out;
}

}  // namespace

Move Move::insert_u(int x, int y) { return Move{MoveKind::InsertU, std::min(x, y), std::max(x, y), -1}; }
Move Move::delete_u(int x, int y) { return Move{MoveKind::DeleteU, std::min(x, y), std::max(x, y), -1}; }
Move Move::insert_d(int x, int y) { return Move{MoveKind::InsertD, x, y, -1}; }
Move Move::delete_d(int x, int y) { return Move{MoveKind::DeleteD, x, y, -1}; }
Move Move::reverse_d(int x, int y) { return Move{MoveKind::ReverseD, x, y, -1}; }
Move Move::make_v(int x, int y, int z) {
    return Move{MoveKind::MakeV, std::min(x, y), std::max(x, y), z};
}

std::string Move::text() const {
    static const char* names[] = {"InsertU", "DeleteU", "InsertD", "DeleteD", "ReverseD", "MakeV"};
    std::string out = names[static_cast<int>(kind)];
    out += "(" + std::to_string(x) + "," + std::to_string(y);
    if (kind == MoveKind::MakeV) out += "," + std::to_string(z);
    out += ")";
    return out;
}

bool OperatorSet::contains(MoveKind k) const {
    switch (k) {
        case MoveKind::InsertU: return insert_u;
        case MoveKind::DeleteU: return delete_u;
        case MoveKind::InsertD: return insert_d;
        case MoveKind::DeleteD: return delete_d;
        case MoveKind::ReverseD: return reverse_d;
        case MoveKind::MakeV: return make_v;
    }
    return false;
}

bool validate_move(const Move& m, const Cpdag& p) {
    const int x = m.x, y = m.y, z = m.z;
    switch (m.kind) {
        case MoveKind::InsertU: {
            if (p.adjacent(x, y)) return false;
            auto nb = neighborhood_sets(p, x, y);
            if (nb.parents_x != nb.parents_y) return false;
            return all_paths_blocked(p, x, y, PathKind::Undirected, nb.shared_neighbors);
        }
        case MoveKind::DeleteU: {
            if (!p.has_undirected(x, y)) return false;
            auto nb = neighborhood_sets(p, x, y);
            return is_clique(nb.shared_neighbors, p);
        }
        case MoveKind::InsertD: {
            if (p.adjacent(x, y)) return false;
            auto nb = neighborhood_sets(p, x, y);
            if (nb.parents_x == nb.parents_y) return false;
            if (!is_clique(nb.parent_neighbors, p)) return false;
            return all_paths_blocked(p, y, x, PathKind::SemiDirected, nb.parent_neighbors);
        }
        case MoveKind::DeleteD: {
            if (!p.has_directed(x, y)) return false;
            return is_clique(p.neighbors(y), p);
        }
        case MoveKind::ReverseD: {
            if (!p.has_directed(x, y)) return false;
            // omega is taken for the pair (y, x): parents of y that neighbor x.
            auto nb = neighborhood_sets(p, y, x);
            if (!is_clique(nb.parent_neighbors, p)) return false;
            return all_paths_blocked(p, x, y, PathKind::SemiDirected,
                                     unite(nb.parent_neighbors, p.neighbors(y)),
                                     std::pair<int, int>{x, y});
        }
        case MoveKind::MakeV: {
            if (!p.has_undirected(x, z) || !p.has_undirected(y, z)) return false;
            if (p.adjacent(x, y)) return false;
            auto nb = neighborhood_sets(p, x, y);
            return all_paths_blocked(p, x, y, PathKind::Undirected, nb.shared_neighbors);
        }
    }
    return false;
}

double move_score_delta(const Move& m, const Cpdag& p, Scorer& scorer) {
    const int x = m.x, y = m.y, z = m.z;
    switch (m.kind) {
        case MoveKind::InsertU: {
            auto nb = neighborhood_sets(p, x, y);
            return scorer.family(y, unite(with(nb.shared_neighbors, x), nb.parents_y)) -
                   scorer.family(y, unite(nb.shared_neighbors, nb.parents_y));
        }
        case MoveKind::DeleteU: {
            auto nb = neighborhood_sets(p, x, y);
            return scorer.family(y, unite(nb.shared_neighbors, nb.parents_y)) -
                   scorer.family(y, unite(with(nb.shared_neighbors, x), nb.parents_y));
        }
        case MoveKind::InsertD: {
            auto nb = neighborhood_sets(p, x, y);
            return scorer.family(y, unite(nb.parent_neighbors, with(nb.parents_y, x))) -
                   scorer.family(y, unite(nb.parent_neighbors, nb.parents_y));
        }
        case MoveKind::DeleteD: {
            return scorer.family(y, unite(p.neighbors(y), without(p.parents(y), x))) -
                   scorer.family(y, unite(p.neighbors(y), p.parents(y)));
        }
        case MoveKind::ReverseD: {
            auto nb = neighborhood_sets(p, y, x);
            const auto& omega = nb.parent_neighbors;  // parents of y neighboring x
            return scorer.family(y, without(p.parents(y), x)) +
                   scorer.family(x, unite(with(p.parents(x), y), omega)) -
                   scorer.family(y, p.parents(y)) -
                   scorer.family(x, unite(p.parents(x), omega));
        }
        case MoveKind::MakeV: {
            auto nb = neighborhood_sets(p, x, y);
            const auto n_no_z = without(nb.shared_neighbors, z);
            return scorer.family(z, unite(with(p.parents(z), y), with(n_no_z, x))) +
                   scorer.family(y, unite(p.parents(y), n_no_z)) -
                   scorer.family(z, unite(p.parents(z), with(n_no_z, x))) -
                   scorer.family(y, unite(p.parents(y), nb.shared_neighbors));
        }
    }
    throw std::logic_error("move_score_delta: unknown move kind");
}

Cpdag apply_move(const Cpdag& p, const Move& m) {
    Pdag edited = p;
    switch (m.kind) {
        case MoveKind::InsertU:
            edited.add_undirected(m.x, m.y);
            break;
        case MoveKind::DeleteU:
            edited.remove_undirected(m.x, m.y);
            break;
        case MoveKind::InsertD:
            edited.add_directed(m.x, m.y);
            break;
        case MoveKind::DeleteD:
            edited.remove_directed(m.x, m.y);
            break;
        case MoveKind::ReverseD:
            edited.remove_directed(m.x, m.y);
            edited.add_directed(m.y, m.x);
            break;
        case MoveKind::MakeV:
            edited.remove_undirected(m.x, m.z);
            edited.remove_undirected(m.y, m.z);
            edited.add_directed(m.x, m.z);
            edited.add_directed(m.y, m.z);
            break;
    }
    try {
        return complete(edited);
    } catch (const NoConsistentExtension&) {
        throw std::logic_error("apply_move: validated move " + m.text() +
                               " produced a PDAG with no consistent extension");
    }
}

std::vector<Move> candidate_moves(const Cpdag& p, const OperatorSet& kinds) {
    const int n = p.node_count();
    std::vector<Move> out;
    auto consider = [&](Move m) {
        if (validate_move(m, p)) out.push_back(m);
    };
    if (kinds.insert_u) {
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                if (!p.adjacent(x, y)) consider(Move::insert_u(x, y));
    }
    if (kinds.delete_u) {
        for (const auto& [a, b] : p.undirected_edges()) consider(Move::delete_u(a, b));
    }
    if (kinds.insert_d) {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (x != y && !p.adjacent(x, y)) consider(Move::insert_d(x, y));
    }
    if (kinds.delete_d) {
        for (const auto& [t, h] : p.directed_edges()) consider(Move::delete_d(t, h));
    }
    if (kinds.reverse_d) {
        for (const auto& [t, h] : p.directed_edges()) consider(Move::reverse_d(t, h));
    }
    if (kinds.make_v) {
        for (int x = 0; x < n; ++x) {
            for (int y = x + 1; y < n; ++y) {
                if (p.adjacent(x, y)) continue;
                for (int z : p.neighbors(x))
                    if (p.has_undirected(y, z)) consider(Move::make_v(x, y, z));
            }
        }
    }
    return out;
}

std::vector<ScoredMove> enumerate_moves(const Cpdag& p, Scorer& scorer, const OperatorSet& kinds) {
    std::vector<ScoredMove> out;
    for (const Move& m : candidate_moves(p, kinds)) {
        try {
            out.push_back({m, move_score_delta(m, p, scorer)});
        } catch (const LimitError&) {
            // family beyond max_parents: move unavailable
        }
    }
    return out;
}

std::string DagMove::text() const {
    static const char* names[] = {"Insert_Arc", "Delete_Arc", "Reverse_Arc"};
    return std::string(names[static_cast<int>(kind)]) + "(" + std::to_string(tail) + "," +
           std::to_string(head) + ")";
}

std::pair<bool, double> dag_move_check_and_delta(const DagMove& m, const Dag& g, Scorer& scorer) {
    const int limit = scorer.config().max_parents;
    try {
        switch (m.kind) {
            case DagMove::Kind::Insert: {
                if (g.adjacent(m.tail, m.head)) return {false, 0.0};
                if (g.would_create_cycle(m.tail, m.head)) return {false, 0.0};
                if (static_cast<int>(g.parents(m.head).size()) + 1 > limit) return {false, 0.0};
                double d = scorer.family(m.head, with(g.parents(m.head), m.tail)) -
                           scorer.family(m.head, g.parents(m.head));
                return {true, d};
            }
            case DagMove::Kind::Delete: {
                if (!g.has_arc(m.tail, m.head)) return {false, 0.0};
                double d = scorer.family(m.head, without(g.parents(m.head), m.tail)) -
                           scorer.family(m.head, g.parents(m.head));
                return {true, d};
            }
            case DagMove::Kind::Reverse: {
                if (!g.has_arc(m.tail, m.head)) return {false, 0.0};
                Dag edited = g;
                edited.remove_arc(m.tail, m.head);
                if (edited.would_create_cycle(m.head, m.tail)) return {false, 0.0};
                if (static_cast<int>(g.parents(m.tail).size()) + 1 > limit) return {false, 0.0};
                double d = scorer.family(m.head, without(g.parents(m.head), m.tail)) -
                           scorer.family(m.head, g.parents(m.head)) +
                           scorer.family(m.tail, with(g.parents(m.tail), m.head)) -
                           scorer.family(m.tail, g.parents(m.tail));
                return {true, d};
            }
        }
    } catch (const LimitError&) {
        return {false, 0.0};
    }
    return {false, 0.0};
}

Dag apply_dag_move(const Dag& g, const DagMove& m) {
    Dag out = g;
    switch (m.kind) {
        case DagMove::Kind::Insert:
            out.add_arc(m.tail, m.head);
            break;
        case DagMove::Kind::Delete:
            out.remove_arc(m.tail, m.head);
            break;
        case DagMove::Kind::Reverse:
            out.remove_arc(m.tail, m.head);
            out.add_arc(m.head, m.tail);
            break;
    }
    if (!out.is_acyclic()) throw std::logic_error("apply_dag_move: " + m.text() + " formed a cycle");
    return out;
}

std::vector<std::pair<DagMove, double>> enumerate_dag_moves(const Dag& g, Scorer& scorer,
                                                            bool additions_only) {
    const int n = g.node_count();
    std::vector<std::pair<DagMove, double>> out;
    auto consider = [&](DagMove m) {
        auto [ok, delta] = dag_move_check_and_delta(m, g, scorer);
        if (ok) out.emplace_back(m, delta);
    };
    for (int t = 0; t < n; ++t)
        for (int h = 0; h < n; ++h)
            if (t != h && !g.adjacent(t, h)) consider({DagMove::Kind::Insert, t, h});
    if (!additions_only) {
        for (const auto& [t, h] : g.arcs()) consider({DagMove::Kind::Delete, t, h});
        for (const auto& [t, h] : g.arcs()) consider({DagMove::Kind::Reverse, t, h});
    }
    return out;
}

}  // namespace bnaco
