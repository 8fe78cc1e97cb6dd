#pragma once
// Decorated stable graphs (dual graphs of boundary strata): validity checks,
// genus, ghost-automorphism counting, and isomorphism-free enumeration at
// small sizes.

#include "spinh/rational.hpp"

#include <string>
#include <vector>

namespace spinh {

struct DecEdge {
  int v1 = 0, v2 = 0;      // endpoints (equal for a loop)
  int m_plus = 0;          // half-edge mark at the v1 end
  int m_minus = 0;         // half-edge mark at the v2 end
};

struct DecTail {
  int v = 0;      // carrying vertex
  int m = 0;      // twist
  int label = 0;  // external marked-point index
};

struct DecGraph {
  int r = 2;
  std::vector<int> vertex_genus;
  std::vector<DecEdge> edges;
  std::vector<DecTail> tails;
};

// dim H^1 + sum of vertex genera, with dim H^1 = |E| - |V| + #components.
int graph_genus(const DecGraph& g);

// All invariant violations (stability, edge decoration congruence, vertex
// divisibility); empty means valid.  Reports, never throws.
std::vector<std::string> validate_graph(const DecGraph& g);

// Order of the ghost-automorphism group: tuples (a_v) in (Z/r)^V with
// a_{v+} == a_{v-} (mod d_e), d_e = gcd(m_plus + 1, r), for every non-loop
// edge.  Brute force when r^V <= 10^6, else counted through the Smith form
// of the constraint matrix mod r.
mpz_class aut_order(const DecGraph& g);

// D = ((r-2)(g - alpha) + sum m_i) / r; may be non-integral.
Rat virtual_dim(int r, int g, const std::vector<int>& marks, int alpha);

// Canonical form under vertex relabeling and edge reorientation; equal
// strings iff isomorphic (tail labels fixed).
std::string canonical_string(const DecGraph& g);

// All valid connected decorated stable graphs of genus g (<= 1) with the
// given tail twists (tail i gets label i) and at most max_edges edges, up to
// isomorphism, sorted by canonical form.
std::vector<DecGraph> enumerate_boundary_graphs(int r, int g, const std::vector<int>& tail_marks,
                                                int max_edges);

}  // namespace spinh
