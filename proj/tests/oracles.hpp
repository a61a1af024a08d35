#pragma once

// Reference computations used only by the tests. They avoid the library's
// linear algebra and curve code so that agreement means something.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using Z = boost::multiprecision::cpp_int;
using Rows = std::vector<std::vector<Q>>;

// Plain Gaussian elimination with partial search for a nonzero pivot.
inline std::size_t rank(Rows a) {
  if (a.empty()) return 0;
  const std::size_t cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      Q f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

inline std::size_t nullity(const Rows& a, std::size_t cols) { return cols - rank(a); }

inline Q det(Rows a) {
  const std::size_t n = a.size();
  Q d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      Q f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return d;
}

// Graph description independent of the library types.
struct Edge {
  std::size_t tail;
  std::optional<std::size_t> head;
};

// dim H1(closure, boundary) = E - V + (components without a boundary point).
inline std::size_t relative_h1_dim(std::size_t vertices, const std::vector<Edge>& edges) {
  std::vector<std::size_t> root(vertices);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x];
    return x;
  };
  for (const auto& e : edges)
    if (e.head) root[find(e.tail)] = find(*e.head);
  std::set<std::size_t> closed;
  for (std::size_t v = 0; v < vertices; ++v) closed.insert(find(v));
  for (const auto& e : edges)
    if (!e.head) closed.erase(find(e.tail));
  return edges.size() - vertices + closed.size();
}

// Number of vertices that a subdivision could have introduced: per component,
// every 2-valent vertex except one when the component is a bare cycle, and
// none of a bare line's single vertex.
inline std::size_t removable_vertices(std::size_t vertices, const std::vector<Edge>& edges) {
  std::vector<std::size_t> valence(vertices), root(vertices);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x];
    return x;
  };
  for (const auto& e : edges) {
    ++valence[e.tail];
    if (e.head) {
      ++valence[*e.head];
      root[find(e.tail)] = find(*e.head);
    }
  }
  std::vector<std::vector<std::size_t>> comps(vertices);
  for (std::size_t v = 0; v < vertices; ++v) comps[find(v)].push_back(v);
  std::size_t total = 0;
  for (const auto& c : comps) {
    if (c.empty()) continue;
    std::size_t two = 0;
    for (auto v : c) two += valence[v] == 2;
    if (two == c.size())
      total += c.size() - 1;  // a cycle or a line: one vertex must stay
    else
      total += two;
  }
  return total;
}

// Edge data in the lifted picture: tail -> head with linear transport a and
// direction d in the tail chart.
struct ChartEdge {
  std::size_t tail;
  std::size_t head;
  std::vector<std::vector<Z>> a;
  std::vector<Z> d;
};

// Ungauged deformation dimension from 2x2 minors: A u_t - u_h parallel to A d.
inline std::size_t deformation_dim(std::size_t vertices, std::size_t n,
                                   const std::vector<ChartEdge>& edges) {
  Rows rows;
  for (const auto& e : edges) {
    std::vector<Q> ad(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ad[i] += Q(e.a[i][j] * e.d[j]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) {
        // ad_i * w_k - ad_k * w_i with w = A u_t - u_h
        std::vector<Q> row(vertices * n);
        for (std::size_t j = 0; j < n; ++j) {
          row[e.tail * n + j] += ad[i] * Q(e.a[k][j]) - ad[k] * Q(e.a[i][j]);
        }
        row[e.head * n + k] -= ad[i];
        row[e.head * n + i] += ad[k];
        rows.push_back(std::move(row));
      }
  }
  return nullity(rows, vertices * n);
}

// Length of the shortest closed loop through anchor along direction in a
// Klein bottle, found by applying words in a, b and their inverses directly.
// a: (x, y) -> (x, y + y0); b: (x, y) -> (x + x0, -y).
inline std::optional<Q> klein_fiber_circumference(const Q& x0, const Q& y0, std::pair<Q, Q> anchor,
                                                  std::pair<int, int> direction, int max_word = 8) {
  using P = std::pair<Q, Q>;
  std::set<P> seen{anchor};
  std::vector<P> frontier{anchor};
  std::optional<Q> best;
  for (int depth = 0; depth < max_word; ++depth) {
    std::vector<P> next;
    for (const auto& [x, y] : frontier) {
      const P images[] = {{x, y + y0}, {x, y - y0}, {x + x0, -y}, {x - x0, -y}};
      for (const auto& q : images) {
        if (!seen.insert(q).second) continue;
        next.push_back(q);
        // Is q = anchor + t * direction with t > 0?
        const Q dx = q.first - anchor.first, dy = q.second - anchor.second;
        std::optional<Q> t;
        if (direction.first != 0) {
          t = dx / direction.first;
          if (dy != *t * direction.second) t.reset();
        } else if (dx == 0) {
          t = dy / direction.second;
        }
        if (t && *t > 0 && (!best || *t < *best)) best = t;
      }
    }
    frontier = std::move(next);
  }
  return best;
}

}  // namespace oracle
