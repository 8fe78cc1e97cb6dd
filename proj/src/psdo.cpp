#include "spinh/psdo.hpp"

#include <algorithm>
#include <climits>

namespace spinh {

namespace {

int merged_r(int ra, int rb) {
  if (ra == rb) return ra;
  if (ra == 0) return rb;
  if (rb == 0) return ra;
  throw std::domain_error("Psdo: mixing ring contexts r=" + std::to_string(ra) +
                          " and r=" + std::to_string(rb));
}

bool all_constant(const Psdo& a) {
  for (const auto& [j, f] : a.c)
    if (!f.is_constant()) return false;
  return true;
}

void insert_term(Psdo& out, int exp, const DiffPoly& f) {
  if (f.is_zero()) return;
  auto it = out.c.find(exp);
  if (it == out.c.end()) {
    out.c.emplace(exp, f);
  } else {
    it->second = it->second + f;
    if (it->second.is_zero()) out.c.erase(it);
  }
}

// Shared sign-aware joining for renderings.
void append_signed(std::string& out, const std::string& term) {
  if (out.empty()) {
    out = term;
  } else if (!term.empty() && term[0] == '-') {
    out += " - " + term.substr(1);
  } else {
    out += " + " + term;
  }
}

}  // namespace

Psdo Psdo::zero(int r) {
  Psdo p;
  p.r = r;
  return p;
}

Psdo Psdo::d_power(int n, int r) {
  Psdo p = zero(r);
  p.c.emplace(n, DiffPoly::constant(Rat(1), r));
  return p;
}

Psdo Psdo::from_coeff(const DiffPoly& f, int exp, int r) {
  Psdo p = zero(r);
  if (!f.is_zero()) p.c.emplace(exp, f);
  return p;
}

Psdo Psdo::canonical_l(int r) {
  if (r < 2) throw std::domain_error("canonical_l: r must be >= 2");
  Psdo p = d_power(r, r);
  for (int m = 0; m <= r - 2; ++m)
    p.c.emplace(m, -DiffPoly::symbol(m, 0, r));
  return p;
}

int Psdo::top() const {
  if (c.empty()) throw std::logic_error("Psdo::top on zero operator");
  return c.rbegin()->first;
}

int Psdo::min_exp() const {
  if (c.empty()) throw std::logic_error("Psdo::min_exp on zero operator");
  return c.begin()->first;
}

int Psdo::certified_floor() const { return exact ? INT_MIN : floor; }

DiffPoly Psdo::coeff(int j) const {
  if (!exact && j < floor)
    throw std::domain_error("Psdo::coeff: exponent " + std::to_string(j) +
                            " below certified floor " + std::to_string(floor));
  auto it = c.find(j);
  return it == c.end() ? DiffPoly::zero(r) : it->second;
}

bool Psdo::is_differential() const {
  if (!exact && floor > 0) return false;
  return c.empty() || min_exp() >= 0;
}

std::string Psdo::to_string() const {
  if (c.empty()) return "0";
  std::string s;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    const auto& [j, f] = *it;
    std::string cs = f.to_string();
    std::string dpart = j == 0 ? "" : (j == 1 ? "D" : "D^" + std::to_string(j));
    std::string term;
    if (dpart.empty()) {
      term = f.terms.size() > 1 ? "(" + cs + ")" : cs;
    } else if (cs == "1") {
      term = dpart;
    } else if (cs == "-1") {
      term = "-" + dpart;
    } else if (f.terms.size() > 1) {
      term = "(" + cs + ")*" + dpart;
    } else {
      term = cs + "*" + dpart;
    }
    append_signed(s, term);
  }
  if (!exact) s += "  [O(D^" + std::to_string(floor - 1) + ")]";
  return s;
}

Psdo operator-(const Psdo& a) {
  Psdo out = a;
  for (auto& [j, f] : out.c) f = -f;
  return out;
}

Psdo operator+(const Psdo& a, const Psdo& b) {
  Psdo out = Psdo::zero(merged_r(a.r, b.r));
  out.exact = a.exact && b.exact;
  if (!out.exact)
    out.floor = std::max(a.exact ? INT_MIN : a.floor, b.exact ? INT_MIN : b.floor);
  for (const auto& [j, f] : a.c)
    if (out.exact || j >= out.floor) insert_term(out, j, f);
  for (const auto& [j, f] : b.c)
    if (out.exact || j >= out.floor) insert_term(out, j, f);
  return out;
}

Psdo operator-(const Psdo& a, const Psdo& b) { return a + (-b); }

Psdo operator*(const ExactScalar& s, const Psdo& a) {
  Psdo out = Psdo::zero(a.r);
  out.exact = a.exact;
  out.floor = a.floor;
  if (s.is_zero()) return out;
  for (const auto& [j, f] : a.c) {
    DiffPoly prod = s * f;
    if (!prod.is_zero()) out.c.emplace(j, prod);
  }
  return out;
}

Psdo operator*(const Rat& s, const Psdo& a) {
  return ExactScalar(s, a.r == 0 ? 2 : a.r) * a;
}

bool psdo_equal_certified(const Psdo& a, const Psdo& b) {
  if (!(a.r == b.r || a.r == 0 || b.r == 0)) return false;
  const int lo = std::max(a.certified_floor(), b.certified_floor());
  for (const auto& [j, f] : a.c)
    if (j >= lo && !diff_poly_equal(f, b.coeff(j))) return false;
  for (const auto& [j, f] : b.c)
    if (j >= lo && a.c.find(j) == a.c.end() && !f.is_zero()) return false;
  return true;
}

namespace {

// Shared core for compose and compose_grade (grade < 0: all grades).
Psdo compose_impl(const Psdo& a, const Psdo& b, std::optional<int> target_floor, int grade) {
  const int r = merged_r(a.r, b.r);
  if (a.c.empty() || b.c.empty()) return Psdo::zero(r);

  const int top_a = a.top(), top_b = b.top();
  int cf = INT_MIN;  // certified floor implied by soft inputs
  if (!a.exact) cf = std::max(cf, a.floor + top_b);
  if (!b.exact) cf = std::max(cf, top_a + b.floor);

  const bool finite = a.min_exp() >= 0 || all_constant(b);
  int work_floor = cf;
  if (target_floor) work_floor = std::max(work_floor, *target_floor);
  if (!finite && work_floor == INT_MIN)
    throw std::domain_error("compose: expansion does not terminate; a floor is required");

  Psdo out = Psdo::zero(r);
  out.exact = a.exact && b.exact && finite && !target_floor;
  if (!out.exact) out.floor = work_floor;

  const ExactScalar eps = ExactScalar::epsilon(r);
  for (const auto& [i, ca] : a.c) {
    for (const auto& [j, cb] : b.c) {
      DiffPoly der = cb;
      ExactScalar eps_pow(Rat(1), r);
      for (int k = 0;; ++k) {
        if (i >= 0 && k > i) break;
        if (work_floor != INT_MIN && i + j - k < work_floor) break;
        if (der.is_zero()) break;
        if (grade < 0 || k == grade) {
          const Rat bin = rat_binomial(Rat(i), static_cast<unsigned>(k));
          if (bin != 0) {
            DiffPoly term = (ExactScalar(bin, r) * eps_pow) * (ca * der);
            insert_term(out, i + j - k, term);
          }
          if (grade == k) break;
        }
        der = d_dx(der);
        eps_pow *= eps;
      }
    }
  }
  if (!out.exact) {
    for (auto it = out.c.begin(); it != out.c.end();)
      it = it->first < out.floor ? out.c.erase(it) : std::next(it);
  }
  return out;
}

}  // namespace

Psdo compose(const Psdo& a, const Psdo& b, std::optional<int> target_floor) {
  return compose_impl(a, b, target_floor, -1);
}

Psdo commutator(const Psdo& a, const Psdo& b, std::optional<int> target_floor) {
  return compose(a, b, target_floor) - compose(b, a, target_floor);
}

Psdo compose_grade(const Psdo& a, const Psdo& b, int grade, std::optional<int> target_floor) {
  if (grade < 0) throw std::domain_error("compose_grade: grade must be >= 0");
  return compose_impl(a, b, target_floor, grade);
}

Psdo p_derivative(const Psdo& a) {
  Psdo out = Psdo::zero(a.r);
  out.exact = a.exact;
  out.floor = a.floor - 1;
  for (const auto& [j, f] : a.c) {
    if (j == 0) continue;
    out.c.emplace(j - 1, Rat(j) * f);
  }
  return out;
}

Psdo x_derivative(const Psdo& a) {
  Psdo out = Psdo::zero(a.r);
  out.exact = a.exact;
  out.floor = a.floor;
  for (const auto& [j, f] : a.c) {
    DiffPoly df = d_dx(f);
    if (!df.is_zero()) out.c.emplace(j, df);
  }
  return out;
}

Psdo symbol_mul(const Psdo& a, const Psdo& b) { return compose_impl(a, b, std::nullopt, 0); }

Psdo plus_part(const Psdo& a) {
  if (!a.exact && a.floor > 0)
    throw std::domain_error("plus_part: operator not certified at order 0");
  Psdo out = Psdo::zero(a.r);
  for (const auto& [j, f] : a.c)
    if (j >= 0) out.c.emplace(j, f);
  return out;
}

DiffPoly residue(const Psdo& a) {
  if (!a.exact && a.floor > -1)
    throw std::domain_error("residue: operator not certified at order -1");
  return a.coeff(-1);
}

Rat k_constant(int r, int n, int m) {
  if (r < 2 || n < 0 || m < 0 || m > r - 1)
    throw std::domain_error("k_constant: bad indices");
  Rat den = 1;
  for (int j = 0; j <= n; ++j) den *= (static_cast<long>(j) * r + m + 1);
  Rat out = rat_pow(Rat(r), static_cast<unsigned>(n + 1)) / den;
  return n % 2 == 0 ? out : -out;
}

Psdo rth_root(const Psdo& l, int depth) {
  const int r = l.r;
  if (r < 2) throw std::domain_error("rth_root: bad ring context");
  if (depth < 1) throw std::domain_error("rth_root: depth must be >= 1");
  if (!l.exact || l.c.empty() || l.top() != r || l.min_exp() < 0)
    throw std::domain_error("rth_root: operator is not a monic differential operator of order r");
  if (!diff_poly_equal(l.coeff(r), DiffPoly::constant(Rat(1), r)))
    throw std::domain_error("rth_root: operator is not monic");
  if (!l.coeff(r - 1).is_zero())
    throw std::domain_error("rth_root: operator is not in canonical form (D^(r-1) present)");

  // Triangular solve: at level s only w_1..w_s enter the coefficient of
  // D^(r-1-s) in R^r, so the working root may be treated as exactly known.
  Psdo root = Psdo::d_power(1, r);
  for (int s = 1; s <= depth; ++s) {
    const int match = r - 1 - s;
    Psdo power = root;
    for (int f = 2; f <= r; ++f) power = compose(power, root, match - (r - f));
    const DiffPoly mismatch = l.coeff(match) - power.coeff(match);
    if (!mismatch.is_zero()) insert_term(root, -s, make_rat(1, r) * mismatch);
  }
  root.exact = false;
  root.floor = -depth;
  return root;
}

Psdo frac_power(const Psdo& l, int n, int m, int depth) {
  const int r = l.r;
  if (n < 0 || m < 0 || m > r - 1) throw std::domain_error("frac_power: bad indices");
  const int q = r * n + m + 1;
  const int root_depth = std::max(depth, q + 2);
  const Psdo root = rth_root(l, root_depth);
  Psdo acc = root;
  for (int i = 2; i <= q; ++i) acc = compose(acc, root);
  return acc;
}

Psdo kdv_flow_rhs(const Psdo& l, int n, int m, int depth) {
  const int r = l.r;
  if (n < 0 || m < 0 || m > r - 2) throw std::domain_error("kdv_flow_rhs: bad flow indices");
  const int q = r * n + m + 1;
  if (depth <= 0) depth = std::max(2 * r + 2, q + 2);
  const Psdo q_op = frac_power(l, n, m, depth);
  const Psdo q_plus = plus_part(q_op);
  const Psdo com = compose(q_plus, l) - compose(l, q_plus);
  // -k_{n,m} * eps * [Q_+, L]
  Psdo rhs = ExactScalar(Rat(0), -k_constant(r, n, m), r) * com;
  if (!rhs.exact) throw std::logic_error("kdv_flow_rhs: expected an exact commutator");
  for (const auto& [j, f] : rhs.c) {
    (void)f;
    if (j < 0 || j > r - 2)
      throw std::logic_error("kdv_flow_rhs: flow is not differential of order <= r-2");
  }
  return rhs;
}

}  // namespace spinh
