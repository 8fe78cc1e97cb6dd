#include "spinh/dispersionless.hpp"

#include <algorithm>
#include <climits>

namespace spinh {

namespace {

int merged_r(int ra, int rb) {
  if (ra == rb) return ra;
  if (ra == 0) return rb;
  if (rb == 0) return ra;
  throw std::domain_error("PSymbol: mixing ring contexts r=" + std::to_string(ra) +
                          " and r=" + std::to_string(rb));
}

void insert_term(PSymbol& out, int exp, const DiffPoly& f) {
  if (f.is_zero()) return;
  auto it = out.c.find(exp);
  if (it == out.c.end()) {
    out.c.emplace(exp, f);
  } else {
    it->second = it->second + f;
    if (it->second.is_zero()) out.c.erase(it);
  }
}

void append_signed(std::string& out, const std::string& term) {
  if (out.empty()) {
    out = term;
  } else if (!term.empty() && term[0] == '-') {
    out += " - " + term.substr(1);
  } else {
    out += " + " + term;
  }
}

void clip_below_floor(PSymbol& a) {
  if (a.exact) return;
  for (auto it = a.c.begin(); it != a.c.end();)
    it = it->first < a.floor ? a.c.erase(it) : std::next(it);
}

}  // namespace

PSymbol PSymbol::zero(int r) {
  PSymbol s;
  s.r = r;
  return s;
}

PSymbol PSymbol::p_power(int n, int r) {
  PSymbol s = zero(r);
  s.c.emplace(n, DiffPoly::constant(Rat(1), r));
  return s;
}

PSymbol PSymbol::from_coeff(const DiffPoly& f, int exp, int r) {
  PSymbol s = zero(r);
  if (!f.is_zero()) s.c.emplace(exp, f);
  return s;
}

PSymbol PSymbol::canonical(int r) {
  if (r < 2) throw std::domain_error("PSymbol::canonical: r must be >= 2");
  PSymbol s = p_power(r, r);
  for (int m = 0; m <= r - 2; ++m)
    s.c.emplace(m, -DiffPoly::symbol(m, 0, r));
  return s;
}

int PSymbol::top() const {
  if (c.empty()) throw std::logic_error("PSymbol::top on zero symbol");
  return c.rbegin()->first;
}

int PSymbol::min_exp() const {
  if (c.empty()) throw std::logic_error("PSymbol::min_exp on zero symbol");
  return c.begin()->first;
}

int PSymbol::certified_floor() const { return exact ? INT_MIN : floor; }

DiffPoly PSymbol::coeff(int j) const {
  if (!exact && j < floor)
    throw std::domain_error("PSymbol::coeff: exponent " + std::to_string(j) +
                            " below certified floor " + std::to_string(floor));
  auto it = c.find(j);
  return it == c.end() ? DiffPoly::zero(r) : it->second;
}

std::string PSymbol::to_string() const {
  if (c.empty()) return "0";
  std::string s;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    const auto& [j, f] = *it;
    std::string cs = f.to_string();
    std::string ppart = j == 0 ? "" : (j == 1 ? "p" : "p^" + std::to_string(j));
    std::string term;
    if (ppart.empty()) {
      term = f.terms.size() > 1 ? "(" + cs + ")" : cs;
    } else if (cs == "1") {
      term = ppart;
    } else if (cs == "-1") {
      term = "-" + ppart;
    } else if (f.terms.size() > 1) {
      term = "(" + cs + ")*" + ppart;
    } else {
      term = cs + "*" + ppart;
    }
    append_signed(s, term);
  }
  if (!exact) s += "  [O(p^" + std::to_string(floor - 1) + ")]";
  return s;
}

PSymbol operator-(const PSymbol& a) {
  PSymbol out = a;
  for (auto& [j, f] : out.c) f = -f;
  return out;
}

PSymbol operator+(const PSymbol& a, const PSymbol& b) {
  PSymbol out = PSymbol::zero(merged_r(a.r, b.r));
  out.exact = a.exact && b.exact;
  if (!out.exact)
    out.floor = std::max(a.exact ? INT_MIN : a.floor, b.exact ? INT_MIN : b.floor);
  for (const auto& [j, f] : a.c)
    if (out.exact || j >= out.floor) insert_term(out, j, f);
  for (const auto& [j, f] : b.c)
    if (out.exact || j >= out.floor) insert_term(out, j, f);
  return out;
}

PSymbol operator-(const PSymbol& a, const PSymbol& b) { return a + (-b); }

PSymbol operator*(const PSymbol& a, const PSymbol& b) {
  PSymbol out = PSymbol::zero(merged_r(a.r, b.r));
  if (a.c.empty() || b.c.empty()) return out;
  int cf = INT_MIN;
  if (!a.exact) cf = std::max(cf, a.floor + b.top());
  if (!b.exact) cf = std::max(cf, a.top() + b.floor);
  out.exact = cf == INT_MIN;
  out.floor = cf;
  for (const auto& [i, ca] : a.c)
    for (const auto& [j, cb] : b.c) {
      if (!out.exact && i + j < out.floor) continue;
      insert_term(out, i + j, ca * cb);
    }
  clip_below_floor(out);
  return out;
}

PSymbol operator*(const ExactScalar& s, const PSymbol& a) {
  PSymbol out = PSymbol::zero(a.r);
  out.exact = a.exact;
  out.floor = a.floor;
  if (s.is_zero()) return out;
  for (const auto& [j, f] : a.c) {
    DiffPoly prod = s * f;
    if (!prod.is_zero()) out.c.emplace(j, prod);
  }
  return out;
}

PSymbol operator*(const Rat& s, const PSymbol& a) {
  return ExactScalar(s, a.r == 0 ? 2 : a.r) * a;
}

bool psymbol_equal_certified(const PSymbol& a, const PSymbol& b) {
  if (!(a.r == b.r || a.r == 0 || b.r == 0)) return false;
  const int lo = std::max(a.certified_floor(), b.certified_floor());
  for (const auto& [j, f] : a.c)
    if (j >= lo && !diff_poly_equal(f, b.coeff(j))) return false;
  for (const auto& [j, f] : b.c)
    if (j >= lo && a.c.find(j) == a.c.end() && !f.is_zero()) return false;
  return true;
}

PSymbol sym_p_derivative(const PSymbol& a) {
  PSymbol out = PSymbol::zero(a.r);
  out.exact = a.exact;
  out.floor = a.floor - 1;
  for (const auto& [j, f] : a.c) {
    if (j == 0) continue;
    out.c.emplace(j - 1, Rat(j) * f);
  }
  return out;
}

PSymbol sym_x_derivative(const PSymbol& a) {
  PSymbol out = PSymbol::zero(a.r);
  out.exact = a.exact;
  out.floor = a.floor;
  for (const auto& [j, f] : a.c) {
    DiffPoly df = d_dx(f);
    if (!df.is_zero()) out.c.emplace(j, df);
  }
  return out;
}

PSymbol poisson(const PSymbol& a, const PSymbol& b) {
  return sym_p_derivative(a) * sym_x_derivative(b) -
         sym_p_derivative(b) * sym_x_derivative(a);
}

PSymbol sym_frac_power(const PSymbol& lt, int n, int m, int target_floor) {
  const int r = lt.r;
  if (r < 2) throw std::domain_error("sym_frac_power: bad ring context");
  if (n < 0 || m < 0 || m > r - 1) throw std::domain_error("sym_frac_power: bad indices");
  if (!lt.exact || lt.c.empty() || lt.top() != r || lt.min_exp() < 0 ||
      !diff_poly_equal(lt.coeff(r), DiffPoly::constant(Rat(1), r)) ||
      !lt.coeff(r - 1).is_zero())
    throw std::domain_error("sym_frac_power: symbol is not in canonical form");

  const int q = r * n + m + 1;
  // lt = p^r (1 - U) with U supported on exponents [-r, -2]; expand
  // (1 - U)^(q/r) binomially.  Term k sits at exponents <= q - 2k.
  PSymbol u_sym = (PSymbol::p_power(r, r) - lt) * PSymbol::p_power(-r, r);
  const bool integral = q % r == 0;
  const int kmax = integral ? q / r : (q - target_floor) / 2;

  const Rat exponent = make_rat(q, r);
  PSymbol acc = PSymbol::zero(r);
  PSymbol u_pow = PSymbol::p_power(0, r);
  for (int k = 0; k <= kmax; ++k) {
    const Rat bin = rat_binomial(exponent, static_cast<unsigned>(k));
    if (bin != 0) {
      Rat signed_bin = k % 2 == 0 ? bin : -bin;
      acc = acc + signed_bin * u_pow;
    }
    if (k < kmax) u_pow = u_pow * u_sym;
  }
  PSymbol out = acc * PSymbol::p_power(q, r);
  if (!integral) {
    out.exact = false;
    out.floor = target_floor;
    clip_below_floor(out);
  }
  return out;
}

PSymbol plus_sym(const PSymbol& a) {
  if (!a.exact && a.floor > 0)
    throw std::domain_error("plus_sym: symbol not certified at order 0");
  PSymbol out = PSymbol::zero(a.r);
  for (const auto& [j, f] : a.c)
    if (j >= 0) out.c.emplace(j, f);
  return out;
}

DiffPoly residue_p(const PSymbol& a) {
  if (!a.exact && a.floor > -1)
    throw std::domain_error("residue_p: symbol not certified at order -1");
  return a.coeff(-1);
}

std::vector<DiffPoly> v_of_u(int r) {
  const PSymbol lt = PSymbol::canonical(r);
  std::vector<DiffPoly> out;
  out.reserve(r - 1);
  for (int n = 0; n <= r - 2; ++n) {
    DiffPoly res = residue_p(sym_frac_power(lt, 0, n, -1));
    DiffPoly v = make_rat(-r, n + 1) * res;
    if (v.max_order() > 0) throw std::logic_error("v_of_u: residue has positive jet order");
    out.push_back(v);
  }
  return out;
}

std::vector<DiffPoly> u_of_v(int r) {
  const std::vector<DiffPoly> v_in_u = v_of_u(r);
  std::vector<DiffPoly> u_in_v(r - 1, DiffPoly::zero(r, JetBasis::v));
  std::vector<bool> solved(r - 1, false);
  // v_n = u_{r-2-n} + correction where the correction only involves
  // already-processed u-indices; solve triangularly.
  for (int n = 0; n <= r - 2; ++n) {
    const int mi = r - 2 - n;
    DiffPoly correction = v_in_u[n] - DiffPoly::symbol(mi, 0, r);
    for (const auto& [mono, coeffv] : correction.terms) {
      (void)coeffv;
      for (const auto& [sym, e] : mono) {
        (void)e;
        if (jet_k(sym) != 0 || !solved[jet_m(sym)])
          throw std::logic_error("u_of_v: flat coordinate change is not triangular");
      }
    }
    u_in_v[mi] = DiffPoly::symbol(n, 0, r, JetBasis::v) - substitute_poly(correction, u_in_v);
    solved[mi] = true;
  }
  return u_in_v;
}

PSymbol kdv0_flow_rhs(int r, int n, int m) {
  if (r < 2 || n < 0 || m < 0 || m > r - 2)
    throw std::domain_error("kdv0_flow_rhs: bad flow indices");
  const PSymbol lt = PSymbol::canonical(r);
  const PSymbol q_plus = plus_sym(sym_frac_power(lt, n, m, 0));
  PSymbol flow = (k_constant(r, n, m) / Rat(r)) * poisson(q_plus, lt);
  if (!flow.exact) throw std::logic_error("kdv0_flow_rhs: expected an exact bracket");
  for (const auto& [j, f] : flow.c) {
    (void)f;
    if (j < 0 || j > r - 2)
      throw std::logic_error("kdv0_flow_rhs: flow is not supported on [0, r-2]");
  }
  return flow;
}

std::vector<GradedSeries> potential_flow_residuals(const GradedSeries& phi0, int n, int m,
                                                   int N) {
  const int r = phi0.r;
  if (r < 2) throw std::domain_error("potential_flow_residuals: bad ring context");
  if (!phi0.trunc || *phi0.trunc < N + 3)
    throw std::domain_error(
        "potential_flow_residuals: phi0 must be truncation-certified to degree N+3");

  const VarId x = t_var(0, 0);
  std::vector<GradedSeries> v_values;
  v_values.reserve(r - 1);
  for (int l = 0; l <= r - 2; ++l)
    v_values.push_back(partial(partial(phi0, x), t_var(0, l)));

  const std::vector<DiffPoly> u_in_v = u_of_v(r);
  std::vector<GradedSeries> u_values;
  u_values.reserve(r - 1);
  for (int j = 0; j <= r - 2; ++j)
    u_values.push_back(substitute_series(u_in_v[j], v_values, x));

  const PSymbol flow = kdv0_flow_rhs(r, n, m);
  const VarId tv = t_var(n, m);
  std::vector<GradedSeries> residuals;
  residuals.reserve(r - 1);
  for (int j = 0; j <= r - 2; ++j) {
    GradedSeries lhs = partial(u_values[j], tv);
    GradedSeries rhs = substitute_series(flow.coeff(j), u_values, x);
    residuals.push_back(truncated(lhs + rhs, N));
  }
  return residuals;
}

bool verify_potential_flow(const GradedSeries& phi0, int n, int m, int N) {
  for (const GradedSeries& res : potential_flow_residuals(phi0, n, m, N))
    if (!res.is_zero()) return false;
  return true;
}

}  // namespace spinh
