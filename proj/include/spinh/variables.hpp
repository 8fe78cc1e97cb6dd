#pragma once
// Series variables.  Three families:
//   t-variables "t{a}^{m}" - coupling times, Euler weight a - 1 + m/r
//   x-variables "x{m}"     - small-phase coordinates, Euler weight -1 + m/r
//   z-variables "z{i}"     - anonymous helpers for tests/tools, weight 0
// A VarId packs (kind, a, m); the numeric order of ids is the canonical
// variable order (t-family first, by (a, m), then x, then z).

#include "spinh/rational.hpp"

#include <cstdint>

namespace spinh {

using VarId = std::int64_t;

VarId t_var(int a, int m);
VarId x_var(int m);
VarId z_var(int idx);

int var_kind(VarId v);  // 0 = t, 1 = x, 2 = z
int var_a(VarId v);     // descendant level (t family; 0 otherwise)
int var_m(VarId v);     // twist index (t, x) or z index

std::string var_name(VarId v);
VarId var_from_name(const std::string& name);

// Euler weight of the variable in ring context r.
Rat var_weight(VarId v, int r);

}  // namespace spinh
