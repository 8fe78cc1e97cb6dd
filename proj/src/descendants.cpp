#include "spinh/descendants.hpp"

#include "spinh/cohft.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace spinh {

namespace {

Rat factorial(int n) {
  Rat f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void validate_insertions(int r, const std::vector<Insertion>& ins) {
  if (r < 2) throw std::domain_error("correlator: r must be >= 2");
  for (const auto& [a, m] : ins)
    if (a < 0 || m < 0 || m > r - 1)
      throw std::domain_error("correlator: insertion (" + std::to_string(a) + "," +
                              std::to_string(m) + ") out of range");
}

bool any_ramond(int r, const std::vector<Insertion>& ins) {
  for (const auto& [a, m] : ins) {
    (void)a;
    if (m == r - 1) return true;
  }
  return false;
}

// Dimension gate shared by all genus-0/1 variants: extra_deg counts extra
// cohomological degree from non-tautological insertions (1 for mu_1).
bool gate(int r, int g, const std::vector<Insertion>& ins, int extra_deg) {
  long sum_a = 0, sum_m = 0;
  for (const auto& [a, m] : ins) {
    sum_a += a;
    sum_m += m;
  }
  const long num = static_cast<long>(r - 2) * (g - 1) + sum_m;
  if (((num % r) + r) % r != 0) return false;
  const long d = num / r;
  if (d < 0) return false;
  return sum_a + extra_deg + d == 3L * g - 3 + static_cast<long>(ins.size());
}

const GradedSeries& small_phase(int r) {
  static std::map<int, GradedSeries> memo;
  auto it = memo.find(r);
  if (it == memo.end()) it = memo.emplace(r, solve_small_phase(r)).first;
  return it->second;
}

Rat primary_value(int r, const std::vector<Insertion>& ins) {
  const int n = static_cast<int>(ins.size());
  if (n == 3) return three_point(r, ins[0].second, ins[1].second, ins[2].second);
  if (n == 4)
    return four_point(r, ins[0].second, ins[1].second, ins[2].second, ins[3].second);
  std::vector<int> k(r - 1, 0);
  Monomial mono;
  for (const auto& [a, m] : ins) {
    (void)a;
    ++k[m];
  }
  for (int m = 0; m <= r - 2; ++m)
    if (k[m] > 0) mono.emplace_back(x_var(m), k[m]);
  Rat mult = 1;
  for (int e : k) mult *= factorial(e);
  return small_phase(r).coefficient(mono).rat_part() * mult;
}

using Memo = std::map<std::vector<Insertion>, Rat>;

// Recursion core; pivot_pos points at an insertion with a >= 1, pair positions
// are two distinct non-pivot slots.  Any valid choice yields the same value.
template <typename Corr>
Rat trr_g0_step(int r, const std::vector<Insertion>& ins, std::size_t pivot_pos,
                std::size_t pair1, std::size_t pair2, Corr&& corr) {
  const auto [pa, pm] = ins[pivot_pos];
  std::vector<Insertion> rest;
  for (std::size_t i = 0; i < ins.size(); ++i)
    if (i != pivot_pos && i != pair1 && i != pair2) rest.push_back(ins[i]);
  const Insertion fixed1 = ins[pair1], fixed2 = ins[pair2];

  Rat total = 0;
  const std::size_t subsets = std::size_t(1) << rest.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::vector<Insertion> left{{pa - 1, pm}};
    std::vector<Insertion> right{fixed1, fixed2};
    for (std::size_t i = 0; i < rest.size(); ++i)
      (mask >> i & 1 ? left : right).push_back(rest[i]);
    for (int mp = 0; mp <= r - 2; ++mp) {
      std::vector<Insertion> l = left, rt = right;
      l.emplace_back(0, mp);
      rt.emplace_back(0, r - 2 - mp);
      const Rat lv = corr(std::move(l));
      if (lv == 0) continue;
      total += lv * corr(std::move(rt));
    }
  }
  return total;
}

Rat corr_g0_memo(int r, std::vector<Insertion> ins, Memo& memo);

Rat corr_g0_eval(int r, const std::vector<Insertion>& ins, Memo& memo) {
  if (!gate(r, 0, ins, 0)) return 0;
  long sum_a = 0;
  for (const auto& [a, m] : ins) {
    (void)m;
    sum_a += a;
  }
  if (sum_a == 0) return primary_value(r, ins);
  // Deterministic policy: pivot = largest a with smallest m, fixed pair = two
  // lexicographically smallest of the rest.
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < ins.size(); ++i) {
    if (ins[i].first > ins[pivot].first ||
        (ins[i].first == ins[pivot].first && ins[i].second < ins[pivot].second))
      pivot = i;
  }
  std::size_t p1 = pivot == 0 ? 1 : 0;
  std::size_t p2 = p1 + 1 == pivot ? p1 + 2 : p1 + 1;
  return trr_g0_step(r, ins, pivot, p1, p2, [&](std::vector<Insertion> sub) {
    return corr_g0_memo(r, std::move(sub), memo);
  });
}

Rat corr_g0_memo(int r, std::vector<Insertion> ins, Memo& memo) {
  if (any_ramond(r, ins) || ins.size() < 3) return 0;
  std::sort(ins.begin(), ins.end());
  auto it = memo.find(ins);
  if (it != memo.end()) return it->second;
  Rat val = corr_g0_eval(r, ins, memo);
  memo.emplace(std::move(ins), val);
  return val;
}

}  // namespace

bool admissible(int r, int g, const std::vector<Insertion>& ins) {
  validate_insertions(r, ins);
  return gate(r, g, ins, 0);
}

Rat correlator_g0(int r, std::vector<Insertion> ins) {
  validate_insertions(r, ins);
  static std::map<int, Memo> memos;
  return corr_g0_memo(r, std::move(ins), memos[r]);
}

Rat correlator_g0_randomized(int r, std::vector<Insertion> ins, std::mt19937& rng) {
  validate_insertions(r, ins);
  struct Rec {
    int r;
    std::mt19937& rng;
    Memo memo;
    Rat eval(std::vector<Insertion> ins) {
      if (any_ramond(r, ins) || ins.size() < 3) return 0;
      std::sort(ins.begin(), ins.end());
      auto it = memo.find(ins);
      if (it != memo.end()) return it->second;
      Rat val = 0;
      if (gate(r, 0, ins, 0)) {
        long sum_a = 0;
        for (const auto& [a, m] : ins) {
          (void)m;
          sum_a += a;
        }
        if (sum_a == 0) {
          val = primary_value(r, ins);
        } else {
          std::vector<std::size_t> pivots;
          for (std::size_t i = 0; i < ins.size(); ++i)
            if (ins[i].first >= 1) pivots.push_back(i);
          const std::size_t pivot =
              pivots[std::uniform_int_distribution<std::size_t>(0, pivots.size() - 1)(rng)];
          std::vector<std::size_t> others;
          for (std::size_t i = 0; i < ins.size(); ++i)
            if (i != pivot) others.push_back(i);
          std::shuffle(others.begin(), others.end(), rng);
          val = trr_g0_step(r, ins, pivot, others[0], others[1],
                            [&](std::vector<Insertion> sub) { return eval(std::move(sub)); });
        }
      }
      memo.emplace(std::move(ins), val);
      return val;
    }
  } rec{r, rng, {}};
  return rec.eval(std::move(ins));
}

Rat correlator_g1(int r, std::vector<Insertion> ins) {
  validate_insertions(r, ins);
  std::sort(ins.begin(), ins.end());
  if (ins.empty() || any_ramond(r, ins)) return 0;
  static std::map<int, Memo> memos;
  Memo& memo = memos[r];
  auto it = memo.find(ins);
  if (it != memo.end()) return it->second;

  Rat val = 0;
  if (gate(r, 1, ins, 0)) {
    long sum_a = 0;
    for (const auto& [a, m] : ins) {
      (void)m;
      sum_a += a;
    }
    // All-primary genus-1 correlators are never admissible, so sum_a >= 1
    // whenever the gate passes.
    if (sum_a == 0) throw std::logic_error("correlator_g1: admissible primary correlator");
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < ins.size(); ++i)
      if (ins[i].first > ins[pivot].first ||
          (ins[i].first == ins[pivot].first && ins[i].second < ins[pivot].second))
        pivot = i;
    const auto [pa, pm] = ins[pivot];
    std::vector<Insertion> rest;
    for (std::size_t i = 0; i < ins.size(); ++i)
      if (i != pivot) rest.push_back(ins[i]);

    // Contracted genus-0 piece.
    for (int mp = 0; mp <= r - 2; ++mp) {
      std::vector<Insertion> sub = rest;
      sub.emplace_back(pa - 1, pm);
      sub.emplace_back(0, mp);
      sub.emplace_back(0, r - 2 - mp);
      val += correlator_g0(r, sub) / 24;
    }
    // Separating splittings: genus-0 side carries the descended pivot.
    const std::size_t subsets = std::size_t(1) << rest.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<Insertion> left{{pa - 1, pm}};
      std::vector<Insertion> right;
      for (std::size_t i = 0; i < rest.size(); ++i)
        (mask >> i & 1 ? left : right).push_back(rest[i]);
      for (int mp = 0; mp <= r - 2; ++mp) {
        std::vector<Insertion> l = left, rt = right;
        l.emplace_back(0, mp);
        rt.emplace_back(0, r - 2 - mp);
        const Rat lv = correlator_g0(r, l);
        if (lv == 0) continue;
        val += lv * correlator_g1(r, rt);
      }
    }
  }
  memo.emplace(std::move(ins), val);
  return val;
}

Rat mu1_correlator_g0(int r, std::vector<Insertion> ins) {
  validate_insertions(r, ins);
  std::sort(ins.begin(), ins.end());
  if (any_ramond(r, ins)) return 0;
  if (!gate(r, 0, ins, 1)) return 0;
  const std::size_t n = ins.size();

  Rat val = 0;
  // Descent terms: trade the extra class for a psi at one insertion.
  for (std::size_t i = 0; i < n; ++i) {
    const auto [a, m] = ins[i];
    const Rat weight = make_rat(static_cast<long>(m) * (r - 2 - m), 2L * r * r);
    if (weight == 0) continue;
    std::vector<Insertion> raised = ins;
    raised[i].first = a + 1;
    val += weight * correlator_g0(r, raised);
  }
  // Boundary terms: unordered splittings with at least two insertions on each
  // side (position 0 kept on the first side), joined by a twist forced by the
  // degree congruence.
  if (n >= 4) {
    const std::size_t subsets = std::size_t(1) << (n - 1);
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<Insertion> side1{ins[0]};
      std::vector<Insertion> side2;
      long sum1 = ins[0].second;
      for (std::size_t i = 1; i < n; ++i) {
        if (mask >> (i - 1) & 1) {
          side1.push_back(ins[i]);
          sum1 += ins[i].second;
        } else {
          side2.push_back(ins[i]);
        }
      }
      if (side1.size() < 2 || side2.size() < 2) continue;
      const int mi = static_cast<int>((((-2 - sum1) % r) + r) % r);
      if (mi == r - 1) continue;
      const Rat weight = make_rat(static_cast<long>(mi) * (r - 2 - mi), 2L * r * r);
      if (weight == 0) continue;
      side1.emplace_back(0, mi);
      const Rat v1 = correlator_g0(r, side1);
      if (v1 == 0) continue;
      side2.emplace_back(0, r - 2 - mi);
      val -= weight * v1 * correlator_g0(r, side2);
    }
  }
  return val;
}

Rat m04_mu1_integral(int r, const std::array<int, 4>& m) {
  if (r < 2) throw std::domain_error("m04_mu1_integral: r must be >= 2");
  long sum = 0;
  for (int mi : m) {
    if (mi < 0 || mi > r - 2)
      throw std::domain_error("m04_mu1_integral: index out of [0, r-2]");
    sum += mi;
  }
  if ((((sum - (r - 2)) % r) + r) % r != 0)
    throw std::domain_error("m04_mu1_integral: invalid type (sum of twists != r-2 mod r)");
  long num = 0;
  for (int mi : m) num += static_cast<long>(mi) * (r - 2 - mi);
  // The three pairings, each taken through the partner of the first slot.
  for (int other = 1; other <= 3; ++other) {
    const long mp = (((-2 - m[0] - m[other]) % r) + r) % r;
    num -= mp * (r - 2 - mp);
  }
  return make_rat(num, 2L * r * r);
}

GradedSeries genus0_potential(int r, int N) {
  if (r < 2 || N < 0) throw std::domain_error("genus0_potential: bad arguments");
  GradedSeries phi = GradedSeries::zero(r, N);
  if (N < 3) return phi;

  std::vector<Insertion> vars;
  for (int a = N - 3; a >= 0; --a)
    for (int m = 0; m <= r - 2; ++m) vars.emplace_back(a, m);

  std::vector<int> counts(vars.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int left, long sum_a, long sum_m) -> void {
    if (i == vars.size()) {
      const int n = N - left;
      if (n < 3) return;
      const long num = sum_m - (r - 2);
      if (((num % r) + r) % r != 0) return;
      const long d = num / r;
      if (d < 0 || sum_a + d != n - 3) return;
      std::vector<Insertion> ins;
      Rat mult = 1;
      Monomial mono;
      for (std::size_t j = 0; j < vars.size(); ++j) {
        if (counts[j] == 0) continue;
        ins.insert(ins.end(), counts[j], vars[j]);
        mult *= factorial(counts[j]);
        mono.emplace_back(t_var(vars[j].first, vars[j].second), counts[j]);
      }
      const Rat val = correlator_g0(r, ins);
      if (val == 0) return;
      std::sort(mono.begin(), mono.end());
      phi.set_coefficient(mono, ExactScalar(val / mult, r));
      return;
    }
    const int a_i = vars[i].first;
    for (int c = 0; c <= left; ++c) {
      if (sum_a + static_cast<long>(c) * a_i > N - 3) break;
      counts[i] = c;
      self(self, i + 1, left - c, sum_a + static_cast<long>(c) * a_i,
           sum_m + static_cast<long>(c) * vars[i].second);
      counts[i] = 0;
    }
  };
  rec(rec, 0, N, 0, 0);
  return phi;
}

GradedSeries genus1_potential(int r, int N) {
  if (r < 2 || N < 0) throw std::domain_error("genus1_potential: bad arguments");
  const GradedSeries phi0 = genus0_potential(r, N + 3);
  const VarId x = t_var(0, 0);

  // Jacobian of the flat coordinates v^m = d^2 phi0 / dt_0^0 dt_0^{r-2-m}
  // in the primary directions; the identity matrix at t = 0.
  const int sz = r - 1;
  std::vector<std::vector<GradedSeries>> delta(sz, std::vector<GradedSeries>());
  for (int m = 0; m < sz; ++m) {
    const GradedSeries vm = partial(partial(phi0, x), t_var(0, r - 2 - m));
    for (int l = 0; l < sz; ++l) delta[m].push_back(partial(vm, t_var(0, l)));
  }

  // det by permutation expansion; sz <= 5 in practice.
  GradedSeries det = GradedSeries::zero(r, N);
  std::vector<int> perm(sz);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < sz; ++i)
      for (int j = i + 1; j < sz; ++j)
        if (perm[i] > perm[j]) ++inversions;
    GradedSeries prod = GradedSeries::constant(Rat(1), r);
    for (int i = 0; i < sz; ++i) prod = prod * delta[i][perm[i]];
    det = inversions % 2 == 0 ? det + prod : det - prod;
  } while (std::next_permutation(perm.begin(), perm.end()));

  return make_rat(1, 24) * series_log_truncated(det, N);
}

}  // namespace spinh
