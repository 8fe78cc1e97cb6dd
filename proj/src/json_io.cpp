#include "spinh/json_io.hpp"

#include <algorithm>

namespace spinh {

namespace {

void expect(bool ok, const char* what) {
  if (!ok) throw std::domain_error(std::string("json: ") + what);
}

void expect_doc(const Json& j, const char* type) {
  expect(j.is_object() && j.value("schema", 0) == 1, "missing or unsupported schema");
  expect(j.value("type", "") == type, "unexpected document type");
}

JetSym jet_from_fields(const Json& j, JetBasis& basis_out) {
  expect(j.is_object() && j.contains("symbol") && j.contains("order"), "bad jet entry");
  const std::string name = j["symbol"].get<std::string>();
  expect(name.size() >= 2 && (name[0] == 'u' || name[0] == 'v'), "bad jet symbol name");
  basis_out = name[0] == 'u' ? JetBasis::u : JetBasis::v;
  int m = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    expect(name[i] >= '0' && name[i] <= '9', "bad jet symbol name");
    m = m * 10 + (name[i] - '0');
  }
  return jet_sym(m, j["order"].get<int>());
}

}  // namespace

Json scalar_to_json(const ExactScalar& s) {
  if (s.is_rational()) return rat_to_string(s.rat_part());
  Json j;
  j["rat"] = rat_to_string(s.rat_part());
  j["eps"] = rat_to_string(s.eps_part());
  return j;
}

ExactScalar scalar_from_json(const Json& j, int r) {
  if (j.is_string()) return ExactScalar(rat_from_string(j.get<std::string>()), r);
  expect(j.is_object() && j.contains("rat") && j.contains("eps"), "bad scalar");
  return ExactScalar(rat_from_string(j["rat"].get<std::string>()),
                     rat_from_string(j["eps"].get<std::string>()), r);
}

Json series_to_json(const GradedSeries& s) {
  Json j;
  j["schema"] = 1;
  j["type"] = "series";
  j["r"] = s.r;
  if (s.trunc)
    j["trunc"] = *s.trunc;
  else
    j["trunc"] = nullptr;
  Json terms = Json::array();
  for (const auto& [mono, coeff] : s.terms) {
    Json term;
    Json exps = Json::object();
    for (const auto& [v, e] : mono) exps[var_name(v)] = e;
    term["exps"] = std::move(exps);
    term["coeff"] = scalar_to_json(coeff);
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j;
}

GradedSeries series_from_json(const Json& j) {
  expect_doc(j, "series");
  const int r = j["r"].get<int>();
  GradedSeries s = GradedSeries::zero(
      r, j["trunc"].is_null() ? std::nullopt : std::optional<int>(j["trunc"].get<int>()));
  expect(j.contains("terms") && j["terms"].is_array(), "bad series terms");
  for (const Json& term : j["terms"]) {
    expect(term.contains("exps") && term["exps"].is_object(), "bad series term");
    Monomial mono;
    for (const auto& [name, e] : term["exps"].items())
      mono.emplace_back(var_from_name(name), e.get<int>());
    std::sort(mono.begin(), mono.end());
    s.set_coefficient(mono, scalar_from_json(term["coeff"], r));
  }
  return s;
}

Json diffpoly_to_json(const DiffPoly& p) {
  Json j;
  j["basis"] = p.basis == JetBasis::u ? "u" : "v";
  Json terms = Json::array();
  for (const auto& [mono, coeff] : p.terms) {
    Json term;
    Json jets = Json::array();
    for (const auto& [sym, e] : mono) {
      Json jet;
      jet["symbol"] = (p.basis == JetBasis::u ? "u" : "v") + std::to_string(jet_m(sym));
      jet["order"] = jet_k(sym);
      jet["exp"] = e;
      jets.push_back(std::move(jet));
    }
    term["jets"] = std::move(jets);
    term["coeff"] = scalar_to_json(coeff);
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j;
}

DiffPoly diffpoly_from_json(const Json& j, int r) {
  expect(j.is_object() && j.contains("basis") && j.contains("terms"), "bad diffpoly");
  const JetBasis basis = j["basis"].get<std::string>() == "v" ? JetBasis::v : JetBasis::u;
  DiffPoly p = DiffPoly::zero(r, basis);
  for (const Json& term : j["terms"]) {
    JetMono mono;
    for (const Json& jet : term["jets"]) {
      JetBasis jb = basis;
      const JetSym sym = jet_from_fields(jet, jb);
      expect(jb == basis, "jet basis mismatch inside diffpoly");
      mono.emplace_back(sym, jet.value("exp", 1));
    }
    std::sort(mono.begin(), mono.end());
    ExactScalar coeff = scalar_from_json(term["coeff"], r);
    if (!coeff.is_zero()) {
      DiffPoly one = DiffPoly::zero(r, basis);
      one.terms.emplace(std::move(mono), std::move(coeff));
      p = p + one;
    }
  }
  return p;
}

namespace {

template <typename Op>
Json operator_to_json(const Op& a, const char* type) {
  Json j;
  j["schema"] = 1;
  j["type"] = type;
  j["r"] = a.r;
  j["exact"] = a.exact;
  if (!a.exact) j["floor"] = a.floor;
  Json coeffs = Json::object();
  for (const auto& [exp, f] : a.c) coeffs[std::to_string(exp)] = diffpoly_to_json(f);
  j["coeffs"] = std::move(coeffs);
  return j;
}

template <typename Op>
Op operator_from_json(const Json& j, const char* type) {
  expect_doc(j, type);
  Op a = Op::zero(j["r"].get<int>());
  a.exact = j["exact"].get<bool>();
  if (!a.exact) a.floor = j["floor"].get<int>();
  for (const auto& [key, val] : j["coeffs"].items()) {
    DiffPoly f = diffpoly_from_json(val, a.r);
    if (!f.is_zero()) a.c.emplace(std::stoi(key), std::move(f));
  }
  return a;
}

}  // namespace

Json psdo_to_json(const Psdo& a) { return operator_to_json(a, "psdo"); }
Psdo psdo_from_json(const Json& j) { return operator_from_json<Psdo>(j, "psdo"); }

Json psymbol_to_json(const PSymbol& a) { return operator_to_json(a, "psymbol"); }
PSymbol psymbol_from_json(const Json& j) { return operator_from_json<PSymbol>(j, "psymbol"); }

Json graph_to_json(const DecGraph& g) {
  Json j;
  j["schema"] = 1;
  j["type"] = "graph";
  j["r"] = g.r;
  j["vertices"] = g.vertex_genus;
  Json edges = Json::array();
  for (const DecEdge& e : g.edges) {
    Json je;
    je["v1"] = e.v1;
    je["v2"] = e.v2;
    je["mplus"] = e.m_plus;
    je["mminus"] = e.m_minus;
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  Json tails = Json::array();
  for (const DecTail& t : g.tails) {
    Json jt;
    jt["v"] = t.v;
    jt["m"] = t.m;
    jt["label"] = t.label;
    tails.push_back(std::move(jt));
  }
  j["tails"] = std::move(tails);
  return j;
}

DecGraph graph_from_json(const Json& j) {
  expect_doc(j, "graph");
  DecGraph g;
  g.r = j["r"].get<int>();
  g.vertex_genus = j["vertices"].get<std::vector<int>>();
  for (const Json& je : j["edges"])
    g.edges.push_back({je["v1"].get<int>(), je["v2"].get<int>(), je["mplus"].get<int>(),
                       je["mminus"].get<int>()});
  for (const Json& jt : j["tails"])
    g.tails.push_back({jt["v"].get<int>(), jt["m"].get<int>(), jt["label"].get<int>()});
  return g;
}

}  // namespace spinh
