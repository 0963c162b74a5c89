#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>

namespace cdia::testing {

Matrix adjacency_matrix(const Graph& g) {
  const std::size_t n = g.num_vertices();
  Matrix a(n, std::vector<std::uint8_t>(n, 0));
  for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = 1;
  return a;
}

std::uint64_t count_c4_by_subsets(const Graph& g) {
  const auto a = adjacency_matrix(g);
  const std::size_t n = a.size();
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          total += a[i][j] && a[j][k] && a[k][l] && a[l][i];
          total += a[i][j] && a[j][l] && a[l][k] && a[k][i];
          total += a[i][k] && a[k][j] && a[j][l] && a[l][i];
        }
  return total;
}

bool is_bipartite_bfs(const Graph& g) {
  const auto a = adjacency_matrix(g);
  const std::size_t n = a.size();
  std::vector<int> colour(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::deque<std::size_t> q{s};
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      for (std::size_t w = 0; w < n; ++w) {
        if (!a[v][w]) continue;
        if (colour[w] < 0) {
          colour[w] = 1 - colour[v];
          q.push_back(w);
        } else if (colour[w] == colour[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::size_t girth_bfs(const Graph& g) {
  const auto a = adjacency_matrix(g);
  const std::size_t n = a.size();
  std::size_t best = 0;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<long> dist(n, -1), parent(n, -1);
    dist[s] = 0;
    std::deque<std::size_t> q{s};
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      for (std::size_t w = 0; w < n; ++w) {
        if (!a[v][w]) continue;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent[w] = static_cast<long>(v);
          q.push_back(w);
        } else if (parent[v] != static_cast<long>(w)) {
          const auto len = static_cast<std::size_t>(dist[v] + dist[w] + 1);
          if (best == 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

namespace {

bool subset_contains_cdia(const Matrix& a, const std::vector<std::size_t>& s) {
  const std::size_t len = s.size();
  const std::size_t l = len / 2;
  std::vector<std::size_t> order{s[0]};
  std::vector<std::uint8_t> used(len, 0);
  used[0] = 1;
  std::function<bool()> rec = [&]() -> bool {
    if (order.size() == len) {
      if (!a[order.back()][order.front()]) return false;
      for (std::size_t i = 0; i < l; ++i)
        if (!a[order[i]][order[i + l]]) return false;
      return true;
    }
    for (std::size_t k = 1; k < len; ++k) {
      if (used[k] || !a[order.back()][s[k]]) continue;
      used[k] = 1;
      order.push_back(s[k]);
      if (rec()) return true;
      order.pop_back();
      used[k] = 0;
    }
    return false;
  };
  return rec();
}

}  // namespace

bool naive_has_cdia(const Graph& g, std::size_t l_max) {
  const auto a = adjacency_matrix(g);
  const std::size_t n = a.size();
  if (n > 24) return false;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size < 4 || size % 2 != 0 || size / 2 > l_max) continue;
    std::vector<std::size_t> s;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1U) s.push_back(v);
    bool cubic = true;
    for (auto v : s) {
      std::size_t d = 0;
      for (auto w : s) d += a[v][w];
      cubic &= d >= 3;
    }
    if (cubic && subset_contains_cdia(a, s)) return true;
  }
  return false;
}

std::size_t cross_edges(const Graph& g, const std::vector<Vertex>& s) {
  const auto a = adjacency_matrix(g);
  std::vector<std::uint8_t> in(a.size(), 0);
  for (auto v : s) in[v] = 1;
  std::size_t c = 0;
  for (std::size_t v = 0; v < a.size(); ++v)
    for (std::size_t w = 0; w < a.size(); ++w) c += in[v] && !in[w] && a[v][w];
  return c;
}

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back({u, v});
  return Graph::from_edges(n, edges);
}

}  // namespace cdia::testing
