#include "spinh/diffpoly.hpp"

#include <algorithm>

namespace spinh {

namespace {

int merged_r(int ra, int rb) {
  if (ra == rb) return ra;
  if (ra == 0) return rb;
  if (rb == 0) return ra;
  throw std::domain_error("DiffPoly: mixing ring contexts r=" + std::to_string(ra) +
                          " and r=" + std::to_string(rb));
}

JetBasis merged_basis(const DiffPoly& a, const DiffPoly& b) {
  if (a.basis != b.basis && !a.is_constant() && !b.is_constant())
    throw std::domain_error("DiffPoly: mixing u- and v-basis polynomials");
  return a.is_constant() && !b.is_constant() ? b.basis : a.basis;
}

void accumulate(std::map<JetMono, ExactScalar>& out, const JetMono& a, const JetMono& b,
                const ExactScalar& c) {
  JetMono prod;
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

std::string jet_name(JetSym s, JetBasis basis) {
  std::string name = (basis == JetBasis::u ? "u" : "v") + std::to_string(jet_m(s));
  name.append(static_cast<std::size_t>(jet_k(s)), '\'');
  return name;
}

DiffPoly DiffPoly::zero(int r, JetBasis basis) {
  DiffPoly p;
  p.r = r;
  p.basis = basis;
  return p;
}

DiffPoly DiffPoly::constant(const ExactScalar& c, int r, JetBasis basis) {
  DiffPoly p = zero(r, basis);
  if (!c.is_zero()) p.terms.emplace(JetMono{}, c);
  return p;
}

DiffPoly DiffPoly::constant(const Rat& c, int r, JetBasis basis) {
  return constant(ExactScalar(c, r), r, basis);
}

DiffPoly DiffPoly::symbol(int m, int k, int r, JetBasis basis) {
  if (basis == JetBasis::v && k != 0)
    throw std::domain_error("DiffPoly: v-basis symbols carry no derivatives");
  DiffPoly p = zero(r, basis);
  p.terms.emplace(JetMono{{jet_sym(m, k), 1}}, ExactScalar(Rat(1), r));
  return p;
}

bool DiffPoly::is_constant() const {
  return terms.empty() || (terms.size() == 1 && terms.begin()->first.empty());
}

ExactScalar DiffPoly::constant_part() const {
  auto it = terms.find(JetMono{});
  return it == terms.end() ? ExactScalar() : it->second;
}

int DiffPoly::max_order() const {
  int k = -1;
  for (const auto& [m, c] : terms)
    for (const auto& [sym, e] : m) k = std::max(k, jet_k(sym));
  return k;
}

std::string DiffPoly::to_string() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [mono, c] : terms) {
    std::string cs = c.to_string();
    bool negated = false;
    if (c.is_rational() && c.rat_part() < 0) {
      cs = rat_to_string(-c.rat_part());
      negated = true;
    }
    if (!s.empty()) s += negated ? " - " : " + ";
    else if (negated) s += "-";
    if (!c.is_rational() && c.rat_part() != 0) cs = "(" + cs + ")";
    std::string ms;
    for (const auto& [sym, e] : mono) {
      if (!ms.empty()) ms += "*";
      ms += jet_name(sym, basis);
      if (e != 1) ms += "^" + std::to_string(e);
    }
    if (ms.empty()) {
      s += cs;
    } else if (cs == "1") {
      s += ms;
    } else {
      s += cs + "*" + ms;
    }
  }
  return s;
}

DiffPoly operator-(const DiffPoly& a) {
  DiffPoly out = DiffPoly::zero(a.r, a.basis);
  for (const auto& [m, c] : a.terms) out.terms.emplace(m, -c);
  return out;
}

DiffPoly operator+(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly out = DiffPoly::zero(merged_r(a.r, b.r), merged_basis(a, b));
  out.terms = a.terms;
  for (const auto& [m, c] : b.terms) {
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

DiffPoly operator-(const DiffPoly& a, const DiffPoly& b) { return a + (-b); }

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly out = DiffPoly::zero(merged_r(a.r, b.r), merged_basis(a, b));
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) accumulate(out.terms, ma, mb, ca * cb);
  return out;
}

DiffPoly operator*(const ExactScalar& c, const DiffPoly& a) {
  DiffPoly out = DiffPoly::zero(a.r, a.basis);
  if (c.is_zero()) return out;
  for (const auto& [m, coeff] : a.terms) {
    ExactScalar prod = c * coeff;
    if (!prod.is_zero()) out.terms.emplace(m, prod);
  }
  return out;
}

DiffPoly operator*(const Rat& c, const DiffPoly& a) {
  if (c == 0) return DiffPoly::zero(a.r, a.basis);
  return ExactScalar(c, a.r == 0 ? 2 : a.r) * a;
}

bool diff_poly_equal(const DiffPoly& a, const DiffPoly& b) {
  if (!(a.r == b.r || a.r == 0 || b.r == 0)) return false;
  if (a.basis != b.basis && !a.is_constant() && !b.is_constant()) return false;
  return a.terms == b.terms;
}

DiffPoly d_dx(const DiffPoly& a) {
  if (a.basis == JetBasis::v)
    throw std::domain_error("d_dx: v-basis polynomials carry no x-derivative");
  DiffPoly out = DiffPoly::zero(a.r, a.basis);
  for (const auto& [mono, c] : a.terms) {
    // Leibniz: differentiate each factor in turn.
    for (std::size_t f = 0; f < mono.size(); ++f) {
      const auto [sym, e] = mono[f];
      JetMono dm;
      dm.reserve(mono.size() + 1);
      for (std::size_t g = 0; g < mono.size(); ++g) {
        if (g == f) {
          if (e > 1) dm.emplace_back(sym, e - 1);
        } else {
          dm.push_back(mono[g]);
        }
      }
      // insert sym with order k+1, keeping the monomial sorted
      const JetSym up = jet_sym(jet_m(sym), jet_k(sym) + 1);
      auto pos = std::lower_bound(dm.begin(), dm.end(), std::make_pair(up, 0),
                                  [](const auto& p, const auto& q) { return p.first < q.first; });
      if (pos != dm.end() && pos->first == up) {
        pos->second += 1;
      } else {
        dm.insert(pos, {up, 1});
      }
      const ExactScalar dc = ExactScalar(Rat(e), a.r) * c;
      auto it = out.terms.find(dm);
      if (it == out.terms.end()) {
        out.terms.emplace(std::move(dm), dc);
      } else {
        it->second += dc;
        if (it->second.is_zero()) out.terms.erase(it);
      }
    }
  }
  return out;
}

GradedSeries substitute_series(const DiffPoly& a, const std::vector<GradedSeries>& values,
                               VarId x) {
  // Cache (m, k) -> d^k values[m] / dx^k.
  std::map<std::pair<int, int>, GradedSeries> jets;
  auto jet_value = [&](int m, int k) -> const GradedSeries& {
    if (m < 0 || static_cast<std::size_t>(m) >= values.size())
      throw std::domain_error("substitute_series: missing value for symbol index " +
                              std::to_string(m));
    auto it = jets.find({m, k});
    if (it != jets.end()) return it->second;
    if (k == 0) return jets.emplace(std::make_pair(m, 0), values[m]).first->second;
    for (int j = 1; j <= k; ++j)
      if (jets.find({m, j}) == jets.end()) {
        const GradedSeries& prev = j == 1 ? values[static_cast<std::size_t>(m)]
                                          : jets.at({m, j - 1});
        jets.emplace(std::make_pair(m, j), partial(prev, x));
      }
    return jets.at({m, k});
  };
  const int r = a.r != 0 ? a.r : (values.empty() ? 0 : values[0].r);
  GradedSeries out = GradedSeries::zero(r);
  for (const auto& [mono, c] : a.terms) {
    GradedSeries term = GradedSeries::constant(c, r);
    for (const auto& [sym, e] : mono)
      for (int i = 0; i < e; ++i) term = term * jet_value(jet_m(sym), jet_k(sym));
    out = out + term;
  }
  return out;
}

DiffPoly substitute_poly(const DiffPoly& a, const std::vector<DiffPoly>& values) {
  if (a.max_order() > 0)
    throw std::domain_error("substitute_poly: polynomial has derivative symbols");
  JetBasis basis = values.empty() ? a.basis : values[0].basis;
  for (const auto& v : values)
    if (v.basis != basis && !v.is_constant())
      throw std::domain_error("substitute_poly: values in mixed bases");
  const int r = a.r != 0 ? a.r : (values.empty() ? 0 : values[0].r);
  DiffPoly out = DiffPoly::zero(r, basis);
  for (const auto& [mono, c] : a.terms) {
    DiffPoly term = DiffPoly::constant(c, r, basis);
    for (const auto& [sym, e] : mono) {
      const int m = jet_m(sym);
      if (m < 0 || static_cast<std::size_t>(m) >= values.size())
        throw std::domain_error("substitute_poly: missing value for symbol index " +
                                std::to_string(m));
      for (int i = 0; i < e; ++i) term = term * values[m];
    }
    out = out + term;
  }
  return out;
}

}  // namespace spinh
