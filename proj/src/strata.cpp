#include "spinh/strata.hpp"

#include "spinh/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace spinh {

namespace {

int norm_mod(long x, int r) { return static_cast<int>(((x % r) + r) % r); }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

int vertex_count(const DecGraph& g) { return static_cast<int>(g.vertex_genus.size()); }

// Half-edge degree (loops count twice) plus tails.
std::vector<int> vertex_degrees(const DecGraph& g) {
  std::vector<int> deg(vertex_count(g), 0);
  for (const DecEdge& e : g.edges) {
    ++deg[e.v1];
    ++deg[e.v2];
  }
  for (const DecTail& t : g.tails) ++deg[t.v];
  return deg;
}

bool indices_ok(const DecGraph& g) {
  const int v = vertex_count(g);
  for (const DecEdge& e : g.edges)
    if (e.v1 < 0 || e.v1 >= v || e.v2 < 0 || e.v2 >= v) return false;
  for (const DecTail& t : g.tails)
    if (t.v < 0 || t.v >= v) return false;
  return v > 0 && g.r >= 2;
}

}  // namespace

int graph_genus(const DecGraph& g) {
  const int v = vertex_count(g);
  UnionFind uf(v);
  for (const DecEdge& e : g.edges) uf.unite(e.v1, e.v2);
  std::set<int> roots;
  for (int i = 0; i < v; ++i) roots.insert(uf.find(i));
  const int components = static_cast<int>(roots.size());
  int genus_sum = 0;
  for (int gv : g.vertex_genus) genus_sum += gv;
  return static_cast<int>(g.edges.size()) - v + components + genus_sum;
}

std::vector<std::string> validate_graph(const DecGraph& g) {
  std::vector<std::string> bad;
  if (!indices_ok(g)) {
    bad.push_back("malformed graph: bad vertex indices, empty vertex list, or r < 2");
    return bad;
  }
  const int r = g.r;
  for (int i = 0; i < vertex_count(g); ++i)
    if (g.vertex_genus[i] < 0)
      bad.push_back("vertex " + std::to_string(i) + ": negative genus");

  const std::vector<int> deg = vertex_degrees(g);
  for (int i = 0; i < vertex_count(g); ++i)
    if (2 * g.vertex_genus[i] - 2 + deg[i] <= 0)
      bad.push_back("vertex " + std::to_string(i) + ": unstable (2g-2+n = " +
                    std::to_string(2 * g.vertex_genus[i] - 2 + deg[i]) + ")");

  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const DecEdge& e = g.edges[i];
    if (e.m_plus < 0 || e.m_plus > r - 1 || e.m_minus < 0 || e.m_minus > r - 1)
      bad.push_back("edge " + std::to_string(i) + ": mark out of [0, r-1]");
    else if (norm_mod(e.m_plus + e.m_minus - (r - 2), r) != 0)
      bad.push_back("edge " + std::to_string(i) + ": marks " + std::to_string(e.m_plus) + "+" +
                    std::to_string(e.m_minus) + " != r-2 (mod r)");
  }
  for (std::size_t i = 0; i < g.tails.size(); ++i)
    if (g.tails[i].m < 0 || g.tails[i].m > r - 1)
      bad.push_back("tail " + std::to_string(i) + ": mark out of [0, r-1]");

  for (int v = 0; v < vertex_count(g); ++v) {
    long sum = 2L * g.vertex_genus[v] - 2;
    for (const DecEdge& e : g.edges) {
      if (e.v1 == v) sum -= e.m_plus;
      if (e.v2 == v) sum -= e.m_minus;
    }
    for (const DecTail& t : g.tails)
      if (t.v == v) sum -= t.m;
    if (norm_mod(sum, r) != 0)
      bad.push_back("vertex " + std::to_string(v) + ": 2g-2 - sum of marks = " +
                    std::to_string(sum) + " not divisible by r");
  }
  return bad;
}

mpz_class aut_order(const DecGraph& g) {
  if (!indices_ok(g)) throw std::domain_error("aut_order: malformed graph");
  const int r = g.r;
  const int v = vertex_count(g);

  struct Constraint {
    int v1, v2, d;
  };
  std::vector<Constraint> cons;
  for (const DecEdge& e : g.edges) {
    if (e.v1 == e.v2) continue;  // loops impose no condition
    const int d = static_cast<int>(mpz_class(gcd(mpz_class(e.m_plus + 1), mpz_class(r))).get_si());
    if (d > 1) cons.push_back({e.v1, e.v2, d});
  }

  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), r, v);
  if (bound <= 1000000) {
    long count = 0;
    std::vector<int> a(v, 0);
    while (true) {
      bool ok = true;
      for (const Constraint& c : cons)
        if ((a[c.v1] - a[c.v2]) % c.d != 0) {
          ok = false;
          break;
        }
      count += ok;
      int i = 0;
      while (i < v && ++a[i] == r) a[i++] = 0;
      if (i == v) break;
    }
    return count;
  }

  // Count solutions of M a == 0 (mod r) through the Smith form of M: with
  // nonzero invariant factors s_1..s_t, the count is r^(V-t) prod gcd(s_i, r).
  std::vector<std::vector<mpz_class>> mat;
  for (const Constraint& c : cons) {
    std::vector<mpz_class> row(v, 0);
    row[c.v1] = r / c.d;
    row[c.v2] = -(r / c.d);
    mat.push_back(std::move(row));
  }
  if (mat.empty()) return bound;
  const std::vector<mpz_class> diag = smith_diagonal(std::move(mat));
  int t = 0;
  mpz_class out = 1;
  for (const mpz_class& s : diag)
    if (s != 0) {
      ++t;
      out *= gcd(s, mpz_class(r));
    }
  mpz_class free_part;
  mpz_ui_pow_ui(free_part.get_mpz_t(), r, v - t);
  return out * free_part;
}

Rat virtual_dim(int r, int g, const std::vector<int>& marks, int alpha) {
  if (r < 2) throw std::domain_error("virtual_dim: r must be >= 2");
  long sum = 0;
  for (int m : marks) sum += m;
  return make_rat(static_cast<long>(r - 2) * (g - alpha) + sum, r);
}

std::string canonical_string(const DecGraph& g) {
  const int v = vertex_count(g);
  if (v > 8) throw std::domain_error("canonical_string: too many vertices");
  std::vector<int> perm(v);
  std::iota(perm.begin(), perm.end(), 0);

  std::string best;
  do {
    std::string s = "r" + std::to_string(g.r) + "|g[";
    // perm[i] = new label of old vertex i; list genera by new label.
    std::vector<int> genus(v);
    for (int i = 0; i < v; ++i) genus[perm[i]] = g.vertex_genus[i];
    for (int i = 0; i < v; ++i) s += (i ? "," : "") + std::to_string(genus[i]);
    s += "]|e[";
    std::vector<std::array<int, 4>> edges;
    for (const DecEdge& e : g.edges) {
      int a = perm[e.v1], b = perm[e.v2], mp = e.m_plus, mm = e.m_minus;
      if (a > b || (a == b && mp > mm)) {
        std::swap(a, b);
        std::swap(mp, mm);
      }
      edges.push_back({a, b, mp, mm});
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      s += i ? ";" : "";
      s += std::to_string(edges[i][0]) + "-" + std::to_string(edges[i][1]) + "(" +
           std::to_string(edges[i][2]) + "," + std::to_string(edges[i][3]) + ")";
    }
    s += "]|t[";
    std::vector<std::array<int, 3>> tails;
    for (const DecTail& t : g.tails) tails.push_back({t.label, perm[t.v], t.m});
    std::sort(tails.begin(), tails.end());
    for (std::size_t i = 0; i < tails.size(); ++i) {
      s += i ? ";" : "";
      s += std::to_string(tails[i][0]) + "@" + std::to_string(tails[i][1]) + "(" +
           std::to_string(tails[i][2]) + ")";
    }
    s += "]";
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<DecGraph> enumerate_boundary_graphs(int r, int g, const std::vector<int>& tail_marks,
                                                int max_edges) {
  if (r < 2 || g < 0 || g > 1 || max_edges < 0)
    throw std::domain_error("enumerate_boundary_graphs: bad parameters");
  if (max_edges > 6)
    throw std::domain_error("enumerate_boundary_graphs: size cap exceeded (max 6 edges)");
  for (int m : tail_marks)
    if (m < 0 || m > r - 1)
      throw std::domain_error("enumerate_boundary_graphs: tail mark out of range");

  std::map<std::string, DecGraph> found;
  const int n = static_cast<int>(tail_marks.size());
  long marks_sum = 0;
  for (int m : tail_marks) marks_sum += m;
  // Global admissibility: without it no vertex assignment can satisfy the
  // divisibility constraints (their sum telescopes to 2g-2 - sum of tails).
  if (norm_mod(2L * g - 2 - marks_sum, r) != 0) return {};

  for (int e_count = 0; e_count <= max_edges; ++e_count) {
    for (int v_count = 1; v_count <= e_count + 1; ++v_count) {
      const int b1 = e_count - v_count + 1;
      if (b1 < 0 || b1 > g) continue;
      const int genus_budget = g - b1;

      // Unordered vertex pairs, loops included.
      std::vector<std::pair<int, int>> pairs;
      for (int a = 0; a < v_count; ++a)
        for (int b = a; b < v_count; ++b) pairs.emplace_back(a, b);

      std::vector<std::pair<int, int>> edge_list;
      auto edges_rec = [&](auto&& self, std::size_t from, int left) -> void {
        if (left == 0) {
          // Connectivity over all v_count vertices.
          UnionFind uf(v_count);
          for (const auto& [a, b] : edge_list) uf.unite(a, b);
          int root = uf.find(0);
          for (int i = 1; i < v_count; ++i)
            if (uf.find(i) != root) return;

          // Genus labels: all zero, or a single vertex of genus 1.
          std::vector<std::vector<int>> genus_choices;
          if (genus_budget == 0) {
            genus_choices.emplace_back(v_count, 0);
          } else {
            for (int hot = 0; hot < v_count; ++hot) {
              std::vector<int> gs(v_count, 0);
              gs[hot] = 1;
              genus_choices.push_back(std::move(gs));
            }
          }

          std::vector<int> tail_at(n, 0);
          auto tails_rec = [&](auto&& tail_self, int ti) -> void {
            if (ti < n) {
              for (int v = 0; v < v_count; ++v) {
                tail_at[ti] = v;
                tail_self(tail_self, ti + 1);
              }
              return;
            }
            for (const std::vector<int>& genus : genus_choices) {
              // Stability.
              std::vector<int> deg(v_count, 0);
              for (const auto& [a, b] : edge_list) {
                ++deg[a];
                ++deg[b];
              }
              for (int i = 0; i < n; ++i) ++deg[tail_at[i]];
              bool stable = true;
              for (int v = 0; v < v_count && stable; ++v)
                stable = 2 * genus[v] - 2 + deg[v] > 0;
              if (!stable) continue;

              // Split edges into spanning-tree edges (marks forced) and free
              // edges (loops and cycle closers; r mark choices each).
              UnionFind span(v_count);
              std::vector<bool> is_tree(edge_list.size(), false);
              std::vector<std::size_t> free_edges;
              for (std::size_t ei = 0; ei < edge_list.size(); ++ei) {
                if (edge_list[ei].first != edge_list[ei].second &&
                    span.unite(edge_list[ei].first, edge_list[ei].second))
                  is_tree[ei] = true;
                else
                  free_edges.push_back(ei);
              }

              std::vector<int> free_marks(free_edges.size(), 0);
              while (true) {
                // Resolve: residue[v] tracks 2g(v)-2 minus already-assigned
                // marks; tree leaves peel off with forced marks.
                std::vector<long> residue(v_count);
                for (int v = 0; v < v_count; ++v) residue[v] = 2L * genus[v] - 2;
                for (int i = 0; i < n; ++i) residue[tail_at[i]] -= tail_marks[i];

                std::vector<DecEdge> dec(edge_list.size());
                for (std::size_t ei = 0; ei < edge_list.size(); ++ei)
                  dec[ei] = {edge_list[ei].first, edge_list[ei].second, 0, 0};
                for (std::size_t fi = 0; fi < free_edges.size(); ++fi) {
                  DecEdge& e = dec[free_edges[fi]];
                  e.m_plus = free_marks[fi];
                  e.m_minus = norm_mod(r - 2 - e.m_plus, r);
                  residue[e.v1] -= e.m_plus;
                  residue[e.v2] -= e.m_minus;
                }

                std::vector<int> pending(v_count, 0);
                for (std::size_t ei = 0; ei < edge_list.size(); ++ei)
                  if (is_tree[ei]) {
                    ++pending[edge_list[ei].first];
                    ++pending[edge_list[ei].second];
                  }
                std::vector<bool> done(edge_list.size(), false);
                bool progress = true;
                int unresolved = 0;
                for (bool t : is_tree) unresolved += t;
                while (unresolved > 0 && progress) {
                  progress = false;
                  for (std::size_t ei = 0; ei < edge_list.size(); ++ei) {
                    if (!is_tree[ei] || done[ei]) continue;
                    const auto [a, b] = edge_list[ei];
                    int leaf = -1;
                    if (pending[a] == 1)
                      leaf = a;
                    else if (pending[b] == 1)
                      leaf = b;
                    if (leaf < 0) continue;
                    const int other = leaf == a ? b : a;
                    const int mark = norm_mod(residue[leaf], r);
                    const int partner = norm_mod(r - 2 - mark, r);
                    if (leaf == dec[ei].v1) {
                      dec[ei].m_plus = mark;
                      dec[ei].m_minus = partner;
                    } else {
                      dec[ei].m_plus = partner;
                      dec[ei].m_minus = mark;
                    }
                    residue[leaf] -= mark;
                    residue[other] -= partner;
                    --pending[a];
                    --pending[b];
                    done[ei] = true;
                    --unresolved;
                    progress = true;
                  }
                }

                bool consistent = unresolved == 0;
                for (int v = 0; v < v_count && consistent; ++v)
                  consistent = norm_mod(residue[v], r) == 0;
                if (consistent) {
                  DecGraph out;
                  out.r = r;
                  out.vertex_genus = genus;
                  out.edges = dec;
                  for (int i = 0; i < n; ++i)
                    out.tails.push_back({tail_at[i], tail_marks[i], i});
                  if (validate_graph(out).empty()) found.emplace(canonical_string(out), out);
                }

                // Next free-mark tuple.
                std::size_t i = 0;
                while (i < free_marks.size() && ++free_marks[i] == r) free_marks[i++] = 0;
                if (i == free_marks.size()) break;
              }
            }
          };
          tails_rec(tails_rec, 0);
          return;
        }
        if (from == pairs.size()) return;
        for (int take = left; take >= 0; --take) {
          for (int k = 0; k < take; ++k) edge_list.push_back(pairs[from]);
          self(self, from + 1, left - take);
          for (int k = 0; k < take; ++k) edge_list.pop_back();
        }
      };
      edges_rec(edges_rec, 0, e_count);
    }
  }

  std::vector<DecGraph> out;
  out.reserve(found.size());
  for (auto& [key, graph] : found) {
    (void)key;
    out.push_back(std::move(graph));
  }
  return out;
}

}  // namespace spinh
