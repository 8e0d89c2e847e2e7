#pragma once

/// @file graph.hpp
/// @brief The graph on primes whose edges are symmetric pairs.
///
/// Only a finite window of the infinite graph is ever built: vertices are the
/// primes <= N. A vertex p > N/2 may have partners in (N, 2p) that the window
/// cannot see, so such vertices are flagged as boundary vertices and every
/// answer that involves one carries that flag.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "symprime/error.hpp"
#include "symprime/number_theory.hpp"
#include "symprime/parallel.hpp"
#include "symprime/sieve.hpp"
#include "symprime/symmetry.hpp"

namespace symprime {

/// Disjoint-set forest with path compression. The root of every set is its
/// smallest element, so the partition and its representatives do not depend
/// on the order of unions.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::uint32_t{0}); }

    std::uint32_t find(std::uint32_t v) {
        std::uint32_t root = v;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[v] != root) {
            std::uint32_t next = parent_[v];
            parent_[v] = root;
            v = next;
        }
        return root;
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) parent_[b] = a;
        else parent_[a] = b;
    }

    std::size_t size() const noexcept { return parent_.size(); }

private:
    std::vector<std::uint32_t> parent_;
};

class SymGraph {
public:
    using index_type = std::uint32_t;

    u64 limit() const noexcept { return limit_; }
    Convention convention() const noexcept { return convention_; }

    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }
    std::span<const u64> vertices() const noexcept { return vertices_; }
    u64 vertex(index_type i) const { return vertices_.at(i); }

    std::optional<index_type> index_of(u64 p) const {
        auto it = std::ranges::lower_bound(vertices_, p);
        if (it == vertices_.end() || *it != p) return std::nullopt;
        return index_type(it - vertices_.begin());
    }

    bool contains(u64 p) const { return index_of(p).has_value(); }

    /// Neighbor indices of vertex i, ascending.
    std::span<const index_type> neighbor_indices(index_type i) const {
        return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
    }

    std::vector<u64> neighbors(u64 p) const {
        auto i = require_vertex(p, "neighbors");
        std::vector<u64> out;
        for (index_type j : neighbor_indices(i)) out.push_back(vertices_[j]);
        return out;
    }

    std::size_t degree(index_type i) const { return offsets_[i + 1] - offsets_[i]; }

    /// p > N/2: partners in (N, 2p) are outside the window.
    bool is_boundary(u64 p) const noexcept { return p > limit_ / 2; }

    /// Edge test for two vertices, by (q - p) | (p - 1).
    bool adjacent(u64 a, u64 b) const noexcept {
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        return (a - 1) % (b - a) == 0;
    }

    /// Calls f(p, q) for every edge with p < q, ordered by (p, q).
    template <typename F>
    void for_each_edge(F&& f) const {
        for (index_type i = 0; i < vertices_.size(); ++i)
            for (index_type j : neighbor_indices(i))
                if (j > i) f(vertices_[i], vertices_[j]);
    }

    index_type require_vertex(u64 p, const char* what) const {
        auto i = index_of(p);
        if (!i) throw std::invalid_argument(std::string(what) + ": " + std::to_string(p) + " is not a vertex");
        return *i;
    }

private:
    friend SymGraph build_graph(const Tables&, u64, Convention, unsigned);

    u64 limit_ = 0;
    Convention convention_{};
    std::vector<u64> vertices_;
    std::vector<u64> offsets_;
    std::vector<index_type> adjacency_;
};

/// Builds the window over primes <= limit. Each edge is found once from its
/// smaller endpoint p as p + d with d | p - 1.
inline SymGraph build_graph(const Tables& tables, u64 limit, Convention conv = {}, unsigned threads = 0) {
    require_input_range(limit, "graph limit");
    if (limit > tables.primes.bound())
        throw bound_error("build_graph: primality table is smaller than the graph limit", limit);
    if (limit > tables.factors.bound())
        throw bound_error("build_graph: factor table is smaller than the graph limit", limit);

    SymGraph g;
    g.limit_ = limit;
    g.convention_ = conv;
    if (limit >= 2) tables.primes.for_each_prime(2, limit, [&](u64 p) {
        if (conv.admits(p)) g.vertices_.push_back(p);
    });
    if (g.vertices_.size() >= std::numeric_limits<SymGraph::index_type>::max())
        throw resource_error("build_graph: too many vertices", g.vertices_.size() * sizeof(u64));

    const std::size_t n = g.vertices_.size();
    std::vector<std::vector<SymGraph::index_type>> up(n);
    constexpr std::size_t chunk = 4096;
    parallel_for((n + chunk - 1) / chunk, threads, [&](std::size_t c) {
        for (std::size_t i = c * chunk; i < std::min(n, (c + 1) * chunk); ++i) {
            const u64 p = g.vertices_[i];
            tables.factors.factorize(p - 1 == 0 ? 1 : p - 1).for_each_divisor([&](u64 d) {
                u64 q = p + d;
                if (q <= limit && conv.admits(q) && tables.primes.is_prime_unchecked(q))
                    up[i].push_back(*g.index_of(q));
            });
        }
    });

    std::vector<u64> degree(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        degree[i] += up[i].size();
        for (auto j : up[i]) ++degree[j];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
    g.adjacency_.resize(g.offsets_[n]);
    std::vector<u64> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (auto j : up[i]) {
            g.adjacency_[fill[i]++] = SymGraph::index_type(j);
            g.adjacency_[fill[j]++] = SymGraph::index_type(i);
        }
    for (std::size_t i = 0; i < n; ++i)
        std::sort(g.adjacency_.begin() + std::ptrdiff_t(g.offsets_[i]),
                  g.adjacency_.begin() + std::ptrdiff_t(g.offsets_[i + 1]));
    return g;
}

struct ComponentSummary {
    u64 representative = 0;  ///< smallest prime in the component
    u64 size = 0;
    u64 min = 0;
    u64 max = 0;
    bool is_boundary_touching = false;

    friend bool operator==(const ComponentSummary&, const ComponentSummary&) = default;
};

struct Components {
    static constexpr std::uint32_t dropped = ~std::uint32_t{0};

    std::vector<ComponentSummary> summaries;     ///< sorted by representative
    std::vector<std::uint32_t> component_of;     ///< vertex index -> summary index (or dropped)
};

/// Component partition of `graph`. With include_isolated = false, vertices
/// of degree 0 are left out (map entry `dropped`).
inline Components components(const SymGraph& graph, bool include_isolated = true) {
    const auto n = graph.vertex_count();
    UnionFind uf(n);
    for (SymGraph::index_type i = 0; i < n; ++i)
        for (auto j : graph.neighbor_indices(i)) uf.unite(i, j);

    Components out;
    out.component_of.assign(n, Components::dropped);
    std::vector<std::uint32_t> root_slot(n, Components::dropped);
    // Roots are the smallest members, so visiting vertices in order creates
    // summaries already sorted by representative.
    for (SymGraph::index_type i = 0; i < n; ++i) {
        if (!include_isolated && graph.degree(i) == 0) continue;
        auto r = uf.find(i);
        if (root_slot[r] == Components::dropped) {
            root_slot[r] = std::uint32_t(out.summaries.size());
            u64 p = graph.vertex(r);
            out.summaries.push_back({p, 0, p, p, false});
        }
        auto& s = out.summaries[root_slot[r]];
        u64 p = graph.vertex(i);
        ++s.size;
        s.max = std::max(s.max, p);
        s.is_boundary_touching = s.is_boundary_touching || graph.is_boundary(p);
        out.component_of[i] = root_slot[r];
    }
    return out;
}

inline ComponentSummary component_of(const SymGraph& graph, const Components& comps, u64 p) {
    auto i = graph.require_vertex(p, "component_of");
    auto slot = comps.component_of[i];
    if (slot == Components::dropped)
        throw std::invalid_argument("component_of: " + std::to_string(p) + " was dropped as isolated");
    return comps.summaries[slot];
}

inline ComponentSummary component_of(const SymGraph& graph, u64 p) {
    return component_of(graph, components(graph), p);
}

struct OutsideComponentResult {
    std::optional<u64> prime;
    /// Always true: components only merge as N grows, so the answer is an
    /// observation at this limit.
    bool limit_dependent = true;
};

/// Smallest symmetric prime p <= N/2 outside the component of 3. Primes above
/// N/2 are skipped because their symmetric status may depend on partners
/// beyond N.
inline OutsideComponentResult least_prime_outside_component_of_3(const SymGraph& graph) {
    OutsideComponentResult result;
    auto three = graph.index_of(3);
    if (!three) return result;
    auto comps = components(graph);
    auto home = comps.component_of[*three];
    for (SymGraph::index_type i = 0; i < graph.vertex_count(); ++i) {
        u64 p = graph.vertex(i);
        if (graph.is_boundary(p)) break;
        if (graph.degree(i) > 0 && comps.component_of[i] != home) {
            result.prime = p;
            break;
        }
    }
    return result;
}

struct Clique {
    std::vector<u64> members;  ///< ascending

    friend bool operator==(const Clique&, const Clique&) = default;
    friend auto operator<=>(const Clique& a, const Clique& b) { return a.members <=> b.members; }
};

namespace detail {

class CliqueSearch {
public:
    explicit CliqueSearch(const SymGraph& g) : g_(g) {}

    // Every m-clique whose smallest member is `root`, in lexicographic order.
    template <typename F>
    void m_cliques_from(u64 root, std::size_t m, F&& emit) {
        std::vector<u64> current{root};
        extend(current, higher_neighbors(root), m, emit);
    }

    // Maximal cliques whose smallest member is `root` (Bron-Kerbosch with
    // pivoting, candidates restricted to neighbors above root).
    template <typename F>
    void maximal_from(u64 root, F&& emit) {
        std::vector<u64> r{root};
        auto p = higher_neighbors(root);
        auto x = lower_neighbors(root);
        bron_kerbosch(r, p, x, emit);
    }

private:
    std::vector<u64> higher_neighbors(u64 v) const {
        std::vector<u64> out;
        for (auto j : g_.neighbor_indices(*g_.index_of(v)))
            if (g_.vertex(j) > v) out.push_back(g_.vertex(j));
        return out;
    }

    std::vector<u64> lower_neighbors(u64 v) const {
        std::vector<u64> out;
        for (auto j : g_.neighbor_indices(*g_.index_of(v)))
            if (g_.vertex(j) < v) out.push_back(g_.vertex(j));
        return out;
    }

    std::vector<u64> restrict_to_neighbors(const std::vector<u64>& set, u64 v) const {
        std::vector<u64> out;
        for (u64 u : set)
            if (g_.adjacent(u, v)) out.push_back(u);
        return out;
    }

    template <typename F>
    void extend(std::vector<u64>& current, const std::vector<u64>& candidates, std::size_t m, F& emit) {
        if (current.size() == m) {
            emit(current);
            return;
        }
        if (current.size() + candidates.size() < m) return;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            std::vector<u64> next;
            for (std::size_t j = i + 1; j < candidates.size(); ++j)
                if (g_.adjacent(candidates[i], candidates[j])) next.push_back(candidates[j]);
            current.push_back(candidates[i]);
            extend(current, next, m, emit);
            current.pop_back();
        }
    }

    template <typename F>
    void bron_kerbosch(std::vector<u64>& r, std::vector<u64> p, std::vector<u64> x, F& emit) {
        if (p.empty() && x.empty()) {
            emit(r);
            return;
        }
        // pivot: vertex of p or x with most neighbors in p
        u64 pivot = 0;
        std::size_t best = 0;
        bool have_pivot = false;
        for (const auto* pool : {&p, &x})
            for (u64 u : *pool) {
                std::size_t c = 0;
                for (u64 v : p) c += g_.adjacent(u, v);
                if (!have_pivot || c > best) {
                    pivot = u;
                    best = c;
                    have_pivot = true;
                }
            }
        std::vector<u64> branch;
        for (u64 v : p)
            if (!g_.adjacent(pivot, v)) branch.push_back(v);
        for (u64 v : branch) {
            r.push_back(v);
            bron_kerbosch(r, restrict_to_neighbors(p, v), restrict_to_neighbors(x, v), emit);
            r.pop_back();
            std::erase(p, v);
            x.push_back(v);
        }
    }

    const SymGraph& g_;
};

} // namespace detail

/// All m-cliques of the window (or only maximal cliques of size >= m), each
/// ascending, the list in lexicographic order.
inline std::vector<Clique> find_cliques(const SymGraph& graph, std::size_t m, bool maximal_only = false) {
    if (m < 2) throw std::invalid_argument("find_cliques: m must be >= 2");
    std::vector<Clique> out;
    detail::CliqueSearch search(graph);
    for (u64 v : graph.vertices()) {
        if (maximal_only) {
            search.maximal_from(v, [&](const std::vector<u64>& r) {
                if (r.size() < m) return;
                Clique c{r};
                std::ranges::sort(c.members);
                out.push_back(std::move(c));
            });
        } else {
            search.m_cliques_from(v, m, [&](const std::vector<u64>& r) { out.push_back(Clique{r}); });
        }
    }
    if (maximal_only) std::ranges::sort(out);
    return out;
}

/// Number of primes p <= x lying in some K_m. The window must reach 2x-1 so
/// no clique through p <= x is truncated.
inline u64 m_symmetric_count(const SymGraph& graph, std::size_t m, u64 x) {
    if (m < 2) throw std::invalid_argument("m_symmetric_count: m must be >= 2");
    u64 need = required_primality_bound(x);
    if (need > graph.limit())
        throw bound_error("m_symmetric_count: graph window too small for x = " + std::to_string(x), need);
    std::vector<char> marked(graph.vertex_count(), 0);
    detail::CliqueSearch search(graph);
    for (SymGraph::index_type i = 0; i < graph.vertex_count() && graph.vertex(i) <= x; ++i) {
        if (graph.degree(i) == 0) continue;
        if (m == 2) {
            marked[i] = 1;
            continue;
        }
        search.maximal_from(graph.vertex(i), [&](const std::vector<u64>& r) {
            if (r.size() < m) return;
            for (u64 v : r) marked[*graph.index_of(v)] = 1;
        });
    }
    u64 count = 0;
    for (SymGraph::index_type i = 0; i < graph.vertex_count() && graph.vertex(i) <= x; ++i) count += marked[i];
    return count;
}

inline u64 m_symmetric_count(const Tables& tables, std::size_t m, u64 x, Convention conv = {}) {
    auto graph = build_graph(tables, required_primality_bound(x), conv);
    return m_symmetric_count(graph, m, x);
}

} // namespace symprime
