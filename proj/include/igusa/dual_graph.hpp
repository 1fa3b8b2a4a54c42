#pragma once

// Dual graph of a resolved configuration and the ratio-ordering check.
//
// Vertices are the components that actually carry K-points on the resolved
// surface over the integration domain.  Edges record pairs of components
// with a common K-point on some leaf chart; existence is decided over Q_p
// (not merely over Q), by residue-class scans combined with two-variable
// Newton witnesses, so intersections at irrational points count.  Each edge
// carries rho, the largest number of later blow-ups stacked over a tracked
// intersection point that ends on the edge.
//
// The ordering check verifies, per connected piece of the graph, that the
// components of minimal nu/N form a connected subgraph and that every edge
// is either inside that minimal part (equal ratios) or joins a vertex
// strictly closer to it to one strictly farther with the smaller ratio on
// the closer side.  This is the structural fact that confines expected
// order-2 real candidate poles to the minimal ratio.

#include <algorithm>
#include <cstddef>
#include <map>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "igusa/errors.hpp"
#include "igusa/padic_roots.hpp"
#include "igusa/rational.hpp"
#include "igusa/resolve.hpp"

namespace igusa {

struct DualVertex {
  int comp = -1;
  CompKind kind = CompKind::Strict;
  long N = 0, nu = 0;
  Rat ratio;
  std::string name;
};

struct DualEdge {
  int a = -1, b = -1;  // component ids, a < b
  long rho = 0;
};

struct DualGraph {
  std::vector<DualVertex> vertices;
  std::vector<DualEdge> edges;

  int index_of(int comp) const {
    for (size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i].comp == comp) return static_cast<int>(i);
    return -1;
  }
};

inline DualGraph build_dual_graph(const ResolutionData& rd,
                                  const ResolveOptions& opt = {}) {
  DualGraph g;
  for (const auto& c : rd.comps) {
    if (!c.has_points) continue;
    g.vertices.push_back({c.id, c.kind, c.N, c.nu, c.ratio(), c.name});
  }

  std::map<std::pair<int, int>, long> edges;
  const Int& p = rd.p;
  for (int cid : rd.leaf_charts()) {
    const Chart& ch = rd.charts[static_cast<size_t>(cid)];
    for (size_t i = 0; i < ch.eqs.size(); ++i)
      for (size_t j = i + 1; j < ch.eqs.size(); ++j) {
        int ca = ch.eqs[i].first, cb = ch.eqs[j].first;
        if (!rd.comps[static_cast<size_t>(ca)].has_points ||
            !rd.comps[static_cast<size_t>(cb)].has_points)
          continue;
        std::pair<int, int> key{std::min(ca, cb), std::max(ca, cb)};
        if (edges.count(key)) continue;
        const BiPoly& A = ch.eqs[i].second;
        const BiPoly& B = ch.eqs[j].second;
        bool certified = false, dead = false;
        for (long depth : {std::min<long>(3, opt.cert_depth), opt.cert_depth}) {
          SystemScan sc = system_live_scan({A, B}, p, ch.ord1_min(), depth,
                                           opt.breadth_cap);
          if (sc.died_out) {
            dead = true;
            break;
          }
          size_t tries = std::min(sc.alive.size(), opt.witness_tries);
          for (size_t t = 0; t < tries && !certified; ++t)
            certified = newton_pair_certifies(A, B, Rat(sc.alive[t].first),
                                              Rat(sc.alive[t].second), p);
          if (certified) break;
        }
        if (dead) continue;
        if (!certified)
          fail(ErrorCode::NeedMoreDepth,
               "intersection of " + rd.comps[static_cast<size_t>(ca)].name +
                   " and " + rd.comps[static_cast<size_t>(cb)].name +
                   " in chart " + std::to_string(cid) +
                   " neither died out nor certified");
        edges[key] = 0;
      }
  }

  // rho from the tracking chains that end on an edge.
  for (const auto& rec : rd.records)
    for (const auto& dir : rec.dirs) {
      std::pair<int, int> key{std::min(rec.comp, dir.neighbor),
                              std::max(rec.comp, dir.neighbor)};
      auto it = edges.find(key);
      require(it != edges.end(), ErrorCode::InternalInvariant,
              "tracked intersection missing from the dual graph");
      it->second = std::max(it->second, dir.rho);
    }

  for (const auto& [key, rho] : edges)
    g.edges.push_back({key.first, key.second, rho});
  return g;
}

// One per-edge certificate line of the ordering check.
struct RatioComparison {
  int comp_a = -1, comp_b = -1;
  Rat ratio_a, ratio_b;
  long dist_a = 0, dist_b = 0;  // graph distance to the minimal part
  bool ok = false;
};

struct MinimalPartCheck {
  Rat min_ratio;                   // global minimum of nu/N over vertices
  std::vector<int> minimal_comps;  // component ids attaining it
  std::vector<std::vector<int>> pieces;       // connected pieces (comp ids)
  std::vector<bool> piece_minimal_connected;  // per piece
  std::vector<RatioComparison> comparisons;   // one per edge
  bool ok = false;
};

// Computes the minimal part and the edge-by-edge ordering certificate.
// Throws EmptyTree when no component carries points.
inline MinimalPartCheck minimal_part_and_order_check(const DualGraph& g) {
  require(!g.vertices.empty(), ErrorCode::EmptyTree,
          "no component with K-points: the zeta function has no pole data");
  MinimalPartCheck out;

  std::map<int, size_t> vidx;
  for (size_t i = 0; i < g.vertices.size(); ++i)
    vidx[g.vertices[i].comp] = i;
  std::vector<std::vector<size_t>> adj(g.vertices.size());
  for (const auto& e : g.edges) {
    size_t a = vidx.at(e.a), b = vidx.at(e.b);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  out.min_ratio = g.vertices.front().ratio;
  for (const auto& v : g.vertices) out.min_ratio = std::min(out.min_ratio, v.ratio);
  for (const auto& v : g.vertices)
    if (v.ratio == out.min_ratio) out.minimal_comps.push_back(v.comp);

  // Connected pieces.
  std::vector<int> piece(g.vertices.size(), -1);
  for (size_t s = 0; s < g.vertices.size(); ++s) {
    if (piece[s] != -1) continue;
    int id = static_cast<int>(out.pieces.size());
    out.pieces.emplace_back();
    std::queue<size_t> q;
    q.push(s);
    piece[s] = id;
    while (!q.empty()) {
      size_t u = q.front();
      q.pop();
      out.pieces.back().push_back(g.vertices[u].comp);
      for (size_t w : adj[u])
        if (piece[w] == -1) {
          piece[w] = id;
          q.push(w);
        }
    }
    std::sort(out.pieces.back().begin(), out.pieces.back().end());
  }

  // Per piece: minimal set, its connectivity, distances to it.
  std::vector<long> dist(g.vertices.size(), -1);
  out.piece_minimal_connected.assign(out.pieces.size(), false);
  for (size_t pc = 0; pc < out.pieces.size(); ++pc) {
    Rat m;
    bool have = false;
    for (size_t i = 0; i < g.vertices.size(); ++i) {
      if (piece[i] != static_cast<int>(pc)) continue;
      if (!have || g.vertices[i].ratio < m) {
        m = g.vertices[i].ratio;
        have = true;
      }
    }
    std::vector<size_t> sources;
    for (size_t i = 0; i < g.vertices.size(); ++i)
      if (piece[i] == static_cast<int>(pc) && g.vertices[i].ratio == m)
        sources.push_back(i);
    // Connectivity of the minimal set inside the piece.
    std::vector<bool> seen(g.vertices.size(), false);
    std::queue<size_t> q;
    q.push(sources.front());
    seen[sources.front()] = true;
    size_t reached = 0;
    while (!q.empty()) {
      size_t u = q.front();
      q.pop();
      ++reached;
      for (size_t w : adj[u])
        if (!seen[w] && g.vertices[w].ratio == m) {
          seen[w] = true;
          q.push(w);
        }
    }
    out.piece_minimal_connected[pc] = reached == sources.size();
    // Multi-source BFS distances within the piece.
    for (size_t s2 : sources) {
      dist[s2] = 0;
      q.push(s2);
    }
    while (!q.empty()) {
      size_t u = q.front();
      q.pop();
      for (size_t w : adj[u])
        if (dist[w] == -1) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
    }
  }

  bool all_ok = true;
  for (const auto& b : out.piece_minimal_connected) all_ok = all_ok && b;
  for (const auto& e : g.edges) {
    size_t a = vidx.at(e.a), b = vidx.at(e.b);
    RatioComparison c;
    c.comp_a = e.a;
    c.comp_b = e.b;
    c.ratio_a = g.vertices[a].ratio;
    c.ratio_b = g.vertices[b].ratio;
    c.dist_a = dist[a];
    c.dist_b = dist[b];
    if (c.ratio_a == c.ratio_b)
      c.ok = c.dist_a == 0 && c.dist_b == 0;
    else if (c.ratio_a < c.ratio_b)
      c.ok = c.dist_a < c.dist_b;
    else
      c.ok = c.dist_b < c.dist_a;
    all_ok = all_ok && c.ok;
    out.comparisons.push_back(std::move(c));
  }
  out.ok = all_ok;
  return out;
}

// Throws HypothesisViolated when the ordering check fails.
inline MinimalPartCheck require_ratio_order(const DualGraph& g) {
  MinimalPartCheck c = minimal_part_and_order_check(g);
  if (!c.ok) {
    for (const auto& cmp : c.comparisons)
      if (!cmp.ok)
        fail(ErrorCode::HypothesisViolated,
             "ratio ordering violated on the edge between components " +
                 std::to_string(cmp.comp_a) + " and " +
                 std::to_string(cmp.comp_b));
    fail(ErrorCode::HypothesisViolated,
         "a minimal-ratio part is disconnected");
  }
  return c;
}

}  // namespace igusa
