#include "spinh/series.hpp"

#include <algorithm>
#include <climits>

namespace spinh {

namespace {

int merged_r(int ra, int rb) {
  if (ra == rb) return ra;
  if (ra == 0) return rb;
  if (rb == 0) return ra;
  throw std::domain_error("GradedSeries: mixing ring contexts r=" + std::to_string(ra) +
                          " and r=" + std::to_string(rb));
}

std::optional<int> min_trunc(const std::optional<int>& a, const std::optional<int>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

bool within(const std::optional<int>& trunc, int deg) { return !trunc || deg <= *trunc; }

// c * (monomial a)*(monomial b) accumulated into out.
void accumulate(std::map<Monomial, ExactScalar>& out, const Monomial& a, const Monomial& b,
                const ExactScalar& c) {
  Monomial prod;
  prod.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      prod.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    } else if (a[i].first < b[j].first) {
      prod.push_back(a[i++]);
    } else {
      prod.push_back(b[j++]);
    }
  }
  for (; i < a.size(); ++i) prod.push_back(a[i]);
  for (; j < b.size(); ++j) prod.push_back(b[j]);
  auto it = out.find(prod);
  if (it == out.end()) {
    out.emplace(std::move(prod), c);
  } else {
    it->second += c;
    if (it->second.is_zero()) out.erase(it);
  }
}

}  // namespace

int monomial_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

Rat monomial_weight(const Monomial& m, int r) {
  Rat w = 0;
  for (const auto& [v, e] : m) w += Rat(e) * var_weight(v, r);
  return w;
}

std::string monomial_to_string(const Monomial& m) {
  if (m.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : m) {
    if (!s.empty()) s += "*";
    s += var_name(v);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

Monomial monomial_of(VarId v, int exp) {
  if (exp < 0) throw std::domain_error("monomial_of: negative exponent");
  if (exp == 0) return {};
  return {{v, exp}};
}

GradedSeries GradedSeries::zero(int r, std::optional<int> trunc) {
  GradedSeries s;
  s.r = r;
  s.trunc = trunc;
  return s;
}

GradedSeries GradedSeries::constant(const Rat& c, int r) {
  return constant(ExactScalar(c, r), r);
}

GradedSeries GradedSeries::constant(const ExactScalar& c, int r) {
  GradedSeries s = zero(r);
  if (!c.is_zero()) s.terms.emplace(Monomial{}, c);
  return s;
}

GradedSeries GradedSeries::variable(VarId v, int r) {
  GradedSeries s = zero(r);
  s.terms.emplace(monomial_of(v), ExactScalar(Rat(1), r));
  return s;
}

int GradedSeries::min_degree() const {
  int d = INT_MAX;
  for (const auto& [m, c] : terms) d = std::min(d, monomial_degree(m));
  return d;
}

int GradedSeries::max_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms) d = std::max(d, monomial_degree(m));
  return d;
}

ExactScalar GradedSeries::coefficient(const Monomial& m) const {
  auto it = terms.find(m);
  return it == terms.end() ? ExactScalar() : it->second;
}

void GradedSeries::set_coefficient(const Monomial& m, const ExactScalar& c) {
  if (!within(trunc, monomial_degree(m)))
    throw std::domain_error("GradedSeries: term beyond truncation");
  if (c.is_zero()) {
    terms.erase(m);
  } else {
    terms[m] = c;
  }
}

std::vector<VarId> GradedSeries::variables() const {
  std::vector<VarId> vars;
  for (const auto& [m, c] : terms)
    for (const auto& [v, e] : m) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

std::string GradedSeries::to_string() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms) {
    std::string cs = c.to_string();
    bool negated = false;
    if (c.is_rational() && c.rat_part() < 0) {
      cs = rat_to_string(-c.rat_part());
      negated = true;
    }
    if (!s.empty()) s += negated ? " - " : " + ";
    else if (negated) s += "-";
    bool unit = (cs == "1");
    bool needs_parens = !c.is_rational() && !(c.rat_part() == 0);
    if (needs_parens) cs = "(" + cs + ")";
    if (m.empty()) {
      s += unit ? "1" : cs;
    } else if (unit) {
      s += monomial_to_string(m);
    } else {
      s += cs + "*" + monomial_to_string(m);
    }
  }
  return s;
}

GradedSeries operator-(const GradedSeries& a) {
  GradedSeries out = GradedSeries::zero(a.r, a.trunc);
  for (const auto& [m, c] : a.terms) out.terms.emplace(m, -c);
  return out;
}

GradedSeries operator+(const GradedSeries& a, const GradedSeries& b) {
  GradedSeries out = GradedSeries::zero(merged_r(a.r, b.r), min_trunc(a.trunc, b.trunc));
  for (const auto& [m, c] : a.terms)
    if (within(out.trunc, monomial_degree(m))) out.terms.emplace(m, c);
  for (const auto& [m, c] : b.terms) {
    if (!within(out.trunc, monomial_degree(m))) continue;
    auto it = out.terms.find(m);
    if (it == out.terms.end()) {
      out.terms.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) out.terms.erase(it);
    }
  }
  return out;
}

GradedSeries operator-(const GradedSeries& a, const GradedSeries& b) { return a + (-b); }

GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
  GradedSeries out = GradedSeries::zero(merged_r(a.r, b.r), min_trunc(a.trunc, b.trunc));
  if (a.terms.empty() || b.terms.empty()) return out;
  // Pre-compute degrees of b once; skip pairs beyond the truncation.
  std::vector<std::pair<int, const std::pair<const Monomial, ExactScalar>*>> bs;
  bs.reserve(b.terms.size());
  for (const auto& term : b.terms) bs.emplace_back(monomial_degree(term.first), &term);
  std::sort(bs.begin(), bs.end(),
            [](const auto& l, const auto& r2) { return l.first < r2.first; });
  for (const auto& [ma, ca] : a.terms) {
    const int da = monomial_degree(ma);
    for (const auto& [db, termb] : bs) {
      if (out.trunc && da + db > *out.trunc) break;
      accumulate(out.terms, ma, termb->first, ca * termb->second);
    }
  }
  return out;
}

GradedSeries operator*(const ExactScalar& c, const GradedSeries& a) {
  GradedSeries out = GradedSeries::zero(a.r, a.trunc);
  if (c.is_zero()) return out;
  for (const auto& [m, coeff] : a.terms) {
    ExactScalar prod = c * coeff;
    if (!prod.is_zero()) out.terms.emplace(m, prod);
  }
  return out;
}

GradedSeries operator*(const Rat& c, const GradedSeries& a) {
  if (c == 0) return GradedSeries::zero(a.r, a.trunc);
  return ExactScalar(c, a.r == 0 ? 2 : a.r) * a;
}

bool series_equal(const GradedSeries& a, const GradedSeries& b) {
  if (!(a.r == b.r || a.r == 0 || b.r == 0)) return false;
  return a.terms == b.terms;
}

GradedSeries truncated(const GradedSeries& a, int n) {
  GradedSeries out = GradedSeries::zero(a.r, min_trunc(a.trunc, n));
  for (const auto& [m, c] : a.terms)
    if (monomial_degree(m) <= *out.trunc) out.terms.emplace(m, c);
  return out;
}

GradedSeries partial(const GradedSeries& a, VarId v) {
  GradedSeries out = GradedSeries::zero(a.r);
  if (a.trunc) out.trunc = *a.trunc - 1;
  for (const auto& [m, c] : a.terms) {
    auto it = std::lower_bound(m.begin(), m.end(), std::make_pair(v, 0),
                               [](const auto& p, const auto& q) { return p.first < q.first; });
    if (it == m.end() || it->first != v) continue;
    Monomial dm;
    dm.reserve(m.size());
    ExactScalar dc = ExactScalar(Rat(it->second), a.r == 0 ? 2 : a.r) * c;
    for (const auto& p : m) {
      if (p.first == v) {
        if (p.second > 1) dm.emplace_back(p.first, p.second - 1);
      } else {
        dm.push_back(p);
      }
    }
    out.terms.emplace(std::move(dm), dc);
  }
  return out;
}

GradedSeries series_exp_truncated(const GradedSeries& a, int n) {
  if (!a.terms.empty() && a.min_degree() < 1)
    throw std::domain_error("series_exp_truncated: nonzero constant term");
  const int limit = a.trunc ? std::min(n, *a.trunc) : n;
  GradedSeries acc = GradedSeries::constant(Rat(1), a.r);
  acc.trunc = limit;
  GradedSeries power = acc;
  const GradedSeries base = truncated(a, limit);
  Rat factorial = 1;
  const int min_deg = a.terms.empty() ? limit + 1 : a.min_degree();
  for (int k = 1; static_cast<long>(k) * min_deg <= limit; ++k) {
    power = power * base;
    if (power.is_zero()) break;
    factorial *= k;
    acc = acc + Rat(1) / factorial * power;
  }
  return acc;
}

GradedSeries series_log_truncated(const GradedSeries& a, int n) {
  const ExactScalar c0 = a.coefficient({});
  if (!(c0.is_rational() && c0.rat_part() == 1))
    throw std::domain_error("series_log_truncated: constant term must be 1");
  const int limit = a.trunc ? std::min(n, *a.trunc) : n;
  GradedSeries t = truncated(a, limit);
  t.terms.erase(Monomial{});  // t = a - 1
  GradedSeries acc = GradedSeries::zero(a.r, limit);
  GradedSeries power = GradedSeries::constant(Rat(1), a.r);
  power.trunc = limit;
  const int min_deg = t.terms.empty() ? limit + 1 : t.min_degree();
  for (int k = 1; static_cast<long>(k) * min_deg <= limit; ++k) {
    power = power * t;
    if (power.is_zero()) break;
    acc = acc + make_rat(k % 2 == 1 ? 1 : -1, k) * power;
  }
  return acc;
}

bool is_quasi_homogeneous(const GradedSeries& a, const Rat& w) {
  for (const auto& [m, c] : a.terms)
    if (monomial_weight(m, a.r) != w) return false;
  return true;
}

}  // namespace spinh
