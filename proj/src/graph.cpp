#include "bnaco/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "bnaco/errors.hpp"

namespace bnaco {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Dag::Dag(int n) : n_(n), parents_(n), children_(n) {
    require(n >= 0, "Dag: negative node count");
}

Dag Dag::from_arcs(int n, const std::vector<std::pair<int, int>>& arcs) {
    Dag g(n);
    for (const auto& [tail, head] : arcs) g.add_arc(tail, head);
    require(g.is_acyclic(), "Dag::from_arcs: arc set contains a directed cycle");
    return g;
}

bool Dag::has_arc(int tail, int head) const {
    return tail >= 0 && tail < n_ && children_[tail].count(head) > 0;
}

void Dag::add_arc(int tail, int head) {
    require(tail >= 0 && tail < n_ && head >= 0 && head < n_, "Dag::add_arc: node out of range");
    require(tail != head, "Dag::add_arc: self loop");
    require(!has_arc(tail, head), "Dag::add_arc: duplicate arc");
    children_[tail].insert(head);
    parents_[head].insert(tail);
    ++arc_count_;
}

void Dag::remove_arc(int tail, int head) {
    require(has_arc(tail, head), "Dag::remove_arc: no such arc");
    children_[tail].erase(head);
    parents_[head].erase(tail);
    --arc_count_;
}

std::vector<std::pair<int, int>> Dag::arcs() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(arc_count_);
    for (int v = 0; v < n_; ++v)
        for (int c : children_[v]) out.emplace_back(v, c);
    std::sort(out.begin(), out.end());
    return out;
}

bool Dag::is_acyclic() const {
    std::vector<int> indeg(n_);
    for (int v = 0; v < n_; ++v) indeg[v] = static_cast<int>(parents_[v].size());
    std::vector<int> stack;
    for (int v = 0; v < n_; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    int seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int c : children_[v])
            if (--indeg[c] == 0) stack.push_back(c);
    }
    return seen == n_;
}

bool Dag::would_create_cycle(int tail, int head) const {
    if (tail == head) return true;
    // DFS from head along children; reaching tail closes a cycle.
    std::vector<char> visited(n_, 0);
    std::vector<int> stack{head};
    visited[head] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == tail) return true;
        for (int c : children_[v]) {
            if (!visited[c]) {
                visited[c] = 1;
                stack.push_back(c);
            }
        }
    }
    return false;
}

std::vector<int> Dag::topological_order() const {
    std::vector<int> indeg(n_);
    for (int v = 0; v < n_; ++v) indeg[v] = static_cast<int>(parents_[v].size());
    std::set<int> avail;
    for (int v = 0; v < n_; ++v)
        if (indeg[v] == 0) avail.insert(v);
    std::vector<int> order;
    order.reserve(n_);
    while (!avail.empty()) {
        int v = *avail.begin();
        avail.erase(avail.begin());
        order.push_back(v);
        for (int c : children_[v])
            if (--indeg[c] == 0) avail.insert(c);
    }
    require(static_cast<int>(order.size()) == n_, "Dag::topological_order: graph is cyclic");
    return order;
}

Pdag::Pdag(int n) : n_(n), parents_(n), children_(n), neighbors_(n) {
    require(n >= 0, "Pdag: negative node count");
}

Pdag Pdag::from_dag(const Dag& g) {
    Pdag p(g.node_count());
    for (const auto& [tail, head] : g.arcs()) p.add_directed(tail, head);
    return p;
}

void Pdag::check_nodes(int a, int b) const {
    require(a >= 0 && a < n_ && b >= 0 && b < n_, "Pdag: node out of range");
    require(a != b, "Pdag: self loop");
}

bool Pdag::has_directed(int tail, int head) const {
    return tail >= 0 && tail < n_ && children_[tail].count(head) > 0;
}

bool Pdag::has_undirected(int a, int b) const {
    return a >= 0 && a < n_ && neighbors_[a].count(b) > 0;
}

bool Pdag::adjacent(int a, int b) const {
    return has_directed(a, b) || has_directed(b, a) || has_undirected(a, b);
}

void Pdag::add_directed(int tail, int head) {
    check_nodes(tail, head);
    require(!adjacent(tail, head), "Pdag::add_directed: nodes already adjacent");
    children_[tail].insert(head);
    parents_[head].insert(tail);
    ++directed_count_;
}

void Pdag::add_undirected(int a, int b) {
    check_nodes(a, b);
    require(!adjacent(a, b), "Pdag::add_undirected: nodes already adjacent");
    neighbors_[a].insert(b);
    neighbors_[b].insert(a);
    ++undirected_count_;
}

void Pdag::remove_directed(int tail, int head) {
    require(has_directed(tail, head), "Pdag::remove_directed: no such edge");
    children_[tail].erase(head);
    parents_[head].erase(tail);
    --directed_count_;
}

void Pdag::remove_undirected(int a, int b) {
    require(has_undirected(a, b), "Pdag::remove_undirected: no such edge");
    neighbors_[a].erase(b);
    neighbors_[b].erase(a);
    --undirected_count_;
}

std::set<int> Pdag::adjacents(int v) const {
    std::set<int> out = neighbors_.at(v);
    out.insert(parents_[v].begin(), parents_[v].end());
    out.insert(children_[v].begin(), children_[v].end());
    return out;
}

std::vector<std::pair<int, int>> Pdag::directed_edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(directed_count_);
    for (int v = 0; v < n_; ++v)
        for (int c : children_[v]) out.emplace_back(v, c);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<int, int>> Pdag::undirected_edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(undirected_count_);
    for (int v = 0; v < n_; ++v)
        for (int u : neighbors_[v])
            if (v < u) out.emplace_back(v, u);
    std::sort(out.begin(), out.end());
    return out;
}

NeighborhoodSets neighborhood_sets(const Pdag& p, int x, int y) {
    if (x == y) throw std::invalid_argument("neighborhood_sets: x == y");
    NeighborhoodSets s;
    s.parents_x = p.parents(x);
    s.parents_y = p.parents(y);
    s.neighbors_x = p.neighbors(x);
    s.neighbors_y = p.neighbors(y);
    std::set_intersection(s.neighbors_x.begin(), s.neighbors_x.end(), s.neighbors_y.begin(),
                          s.neighbors_y.end(),
                          std::inserter(s.shared_neighbors, s.shared_neighbors.begin()));
    std::set_intersection(s.parents_x.begin(), s.parents_x.end(), s.neighbors_y.begin(),
                          s.neighbors_y.end(),
                          std::inserter(s.parent_neighbors, s.parent_neighbors.begin()));
    return s;
}

std::set<std::pair<int, int>> skeleton(const Pdag& p) {
    std::set<std::pair<int, int>> out;
    for (const auto& [t, h] : p.directed_edges()) out.insert({std::min(t, h), std::max(t, h)});
    for (const auto& e : p.undirected_edges()) out.insert(e);
    return out;
}

std::set<std::pair<int, int>> skeleton(const Dag& g) { return skeleton(Pdag::from_dag(g)); }

std::set<std::tuple<int, int, int>> v_structures(const Pdag& p) {
    std::set<std::tuple<int, int, int>> out;
    for (int z = 0; z < p.node_count(); ++z) {
        const auto& pa = p.parents(z);
        for (auto it = pa.begin(); it != pa.end(); ++it) {
            for (auto jt = std::next(it); jt != pa.end(); ++jt) {
                if (!p.adjacent(*it, *jt)) out.insert({*it, z, *jt});
            }
        }
    }
    return out;
}

std::set<std::tuple<int, int, int>> v_structures(const Dag& g) {
    return v_structures(Pdag::from_dag(g));
}

bool is_clique(const std::set<int>& nodes, const Pdag& p) {
    for (auto it = nodes.begin(); it != nodes.end(); ++it)
        for (auto jt = std::next(it); jt != nodes.end(); ++jt)
            if (!p.adjacent(*it, *jt)) return false;
    return true;
}

bool all_paths_blocked(const Pdag& p, int from, int to, PathKind kind,
                       const std::set<int>& blockers,
                       std::optional<std::pair<int, int>> excluded_arc) {
    if (from == to) throw std::invalid_argument("all_paths_blocked: from == to");
    // Reachability with blocker vertices removed; a walk that avoids the
    // blockers contains a simple path that does, so this decides the
    // simple-path condition exactly.
    std::vector<char> visited(p.node_count(), 0);
    std::vector<int> stack{from};
    visited[from] = 1;
    auto step = [&](int u, int v, bool directed) {
        if (directed && excluded_arc && excluded_arc->first == u && excluded_arc->second == v)
            return false;
        return true;
    };
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        auto visit = [&](int v) -> bool {
            if (v == to) return true;  // path with no internal blocker
            if (!visited[v] && blockers.count(v) == 0) {
                visited[v] = 1;
                stack.push_back(v);
            }
            return false;
        };
        for (int v : p.neighbors(u))
            if (step(u, v, false) && visit(v)) return false;
        if (kind == PathKind::SemiDirected) {
            for (int v : p.children(u))
                if (step(u, v, true) && visit(v)) return false;
        }
    }
    return true;
}

std::optional<Dag> try_consistent_extension(const Pdag& p) {
    const int n = p.node_count();
    Pdag work = p;
    Dag out(n);
    for (const auto& [t, h] : p.directed_edges()) out.add_arc(t, h);

    std::vector<char> removed(n, 0);
    int remaining = n;
    while (remaining > 0) {
        int chosen = -1;
        for (int x = 0; x < n && chosen < 0; ++x) {
            if (removed[x]) continue;
            if (!work.children(x).empty()) continue;  // must be a sink
            // Every undirected neighbor of x must be adjacent to all other
            // nodes adjacent to x.
            bool ok = true;
            std::set<int> adj = work.adjacents(x);
            for (int y : work.neighbors(x)) {
                for (int a : adj) {
                    if (a == y) continue;
                    if (!work.adjacent(y, a)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
            if (ok) chosen = x;
        }
        if (chosen < 0) return std::nullopt;
        for (int y : std::set<int>(work.neighbors(chosen))) {
            out.add_arc(y, chosen);
            work.remove_undirected(y, chosen);
        }
        for (int pa : std::set<int>(work.parents(chosen))) work.remove_directed(pa, chosen);
        removed[chosen] = 1;
        --remaining;
    }
    return out;
}

Dag pdag_to_dag(const Pdag& p) {
    auto ext = try_consistent_extension(p);
    if (!ext) throw NoConsistentExtension("pdag_to_dag: PDAG admits no consistent extension");
    return *ext;
}

namespace {

enum class EdgeLabel : char { Unknown, Compelled, Reversible };

}  // namespace

Cpdag dag_to_cpdag(const Dag& g) {
    const int n = g.node_count();

    // Rank nodes by a topological order, then order edges: ascending head
    // rank, and for equal heads descending tail rank.
    std::vector<int> order = g.topological_order();
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i) rank[order[i]] = i;

    std::vector<std::pair<int, int>> edges;  // (tail, head) in processing order
    edges.reserve(g.arc_count());
    for (int yi = 0; yi < n; ++yi) {
        int y = order[yi];
        std::vector<int> pa(g.parents(y).begin(), g.parents(y).end());
        std::sort(pa.begin(), pa.end(), [&](int a, int b) { return rank[a] > rank[b]; });
        for (int x : pa) edges.emplace_back(x, y);
    }

    std::vector<int> edge_index_of;  // position in `edges` keyed by tail*n+head
    edge_index_of.assign(static_cast<size_t>(n) * n, -1);
    for (size_t i = 0; i < edges.size(); ++i)
        edge_index_of[static_cast<size_t>(edges[i].first) * n + edges[i].second] =
            static_cast<int>(i);
    auto idx = [&](int t, int h) { return edge_index_of[static_cast<size_t>(t) * n + h]; };

    std::vector<EdgeLabel> label(edges.size(), EdgeLabel::Unknown);

    for (size_t i = 0; i < edges.size(); ++i) {
        if (label[i] != EdgeLabel::Unknown) continue;
        auto [x, y] = edges[i];
        bool resolved = false;
        for (int w : g.parents(x)) {
            if (label[idx(w, x)] != EdgeLabel::Compelled) continue;
            if (!g.has_arc(w, y)) {
                // x -> y and every edge into y become compelled.
                for (int z : g.parents(y)) label[idx(z, y)] = EdgeLabel::Compelled;
                resolved = true;
                break;
            }
            label[idx(w, y)] = EdgeLabel::Compelled;
        }
        if (resolved) continue;
        bool external_parent = false;
        for (int z : g.parents(y)) {
            if (z != x && !g.has_arc(z, x)) {
                external_parent = true;
                break;
            }
        }
        EdgeLabel verdict = external_parent ? EdgeLabel::Compelled : EdgeLabel::Reversible;
        label[i] = verdict;
        for (int z : g.parents(y)) {
            int j = idx(z, y);
            if (label[j] == EdgeLabel::Unknown) label[j] = verdict;
        }
    }

    Cpdag out(n);
    for (size_t i = 0; i < edges.size(); ++i) {
        auto [t, h] = edges[i];
        if (label[i] == EdgeLabel::Compelled)
            out.add_directed(t, h);
        else
            out.add_undirected(t, h);
    }
    return out;
}

Cpdag complete(const Pdag& p) { return dag_to_cpdag(pdag_to_dag(p)); }

}  // namespace bnaco
