#include "spinh/cache.hpp"
#include "spinh/cohft.hpp"
#include "spinh/constraints.hpp"
#include "spinh/descendants.hpp"
#include "spinh/dispersionless.hpp"
#include "spinh/json_io.hpp"
#include "spinh/psdo.hpp"
#include "spinh/strata.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace {

constexpr const char* kVersionTag = "spinh 0.1.0";

struct Output {
  std::string text;
  int exit_code = 0;
};

using spinh::Insertion;
using spinh::Json;
using spinh::Rat;

// "tau(a,m)" tokens with optional "^k", separated by whitespace or '*'.
std::vector<Insertion> parse_insertions(const std::string& s) {
  std::vector<Insertion> out;
  std::size_t i = 0;
  auto skip_seps = [&] {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '*')) ++i;
  };
  auto parse_int = [&]() -> int {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw std::domain_error("insertions: expected an integer at '" + s.substr(start) + "'");
    return std::stoi(s.substr(start, i - start));
  };
  auto expect = [&](char c) {
    if (i >= s.size() || s[i] != c)
      throw std::domain_error(std::string("insertions: expected '") + c + "' in '" + s + "'");
    ++i;
  };
  skip_seps();
  while (i < s.size()) {
    if (s.compare(i, 4, "tau(") != 0)
      throw std::domain_error("insertions: expected 'tau(a,m)' at '" + s.substr(i) + "'");
    i += 4;
    const int a = parse_int();
    expect(',');
    const int m = parse_int();
    expect(')');
    int k = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      k = parse_int();
      if (k < 1) throw std::domain_error("insertions: power must be >= 1");
    }
    out.insert(out.end(), k, {a, m});
    skip_seps();
  }
  if (out.empty()) throw std::domain_error("insertions: empty list");
  return out;
}

std::string canonical_insertions(std::vector<Insertion> ins) {
  std::sort(ins.begin(), ins.end());
  std::string out;
  for (std::size_t i = 0; i < ins.size();) {
    std::size_t j = i;
    while (j < ins.size() && ins[j] == ins[i]) ++j;
    if (!out.empty()) out += "*";
    out += "tau(" + std::to_string(ins[i].first) + "," + std::to_string(ins[i].second) + ")";
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::string dot_render(const spinh::DecGraph& g, int index) {
  std::string s = "graph G" + std::to_string(index) + " {\n";
  for (std::size_t v = 0; v < g.vertex_genus.size(); ++v)
    s += "  v" + std::to_string(v) + " [label=\"g=" + std::to_string(g.vertex_genus[v]) +
         "\"];\n";
  for (const auto& e : g.edges)
    s += "  v" + std::to_string(e.v1) + " -- v" + std::to_string(e.v2) + " [label=\"(" +
         std::to_string(e.m_plus) + "," + std::to_string(e.m_minus) + ")\"];\n";
  for (const auto& t : g.tails) {
    s += "  t" + std::to_string(t.label) + " [shape=point];\n";
    s += "  v" + std::to_string(t.v) + " -- t" + std::to_string(t.label) + " [label=\"m=" +
         std::to_string(t.m) + "\"];\n";
  }
  s += "}\n";
  return s;
}

std::string series_text(const spinh::GradedSeries& s) { return s.to_string(); }

Output pass_fail(bool ok, const std::string& pass_msg, const std::string& fail_msg) {
  return ok ? Output{pass_msg + "\n", 0} : Output{fail_msg + "\n", 1};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations for the r-spin intersection hierarchy"};
  app.name("spinh");
  app.fallthrough();

  std::string format = "text";
  std::string cache_dir;
  bool no_cache = false;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cache-dir", cache_dir, "cache directory (overrides SPINH_CACHE_DIR)");
  app.add_flag("--no-cache", no_cache, "disable the result cache");

  std::function<Output()> compute;
  std::string key_tail;  // canonical argument fingerprint (format appended later)

  int r = 0, genus = 0, max_deg = 0, depth = 0, max_edges = 0;
  std::string insertions, flow, type_list, graph_arg;
  bool mu1 = false;

  // ---- potential ----
  CLI::App* potential = app.add_subcommand("potential", "generating series");
  CLI::App* pot_small = potential->add_subcommand("small", "small phase space potential");
  pot_small->add_option("--r", r, "spin parameter")->required();
  pot_small->callback([&] {
    key_tail = "potential small|r=" + std::to_string(r);
    compute = [&] {
      const spinh::GradedSeries phi = spinh::solve_small_phase(r);
      if (format == "json") return Output{spinh::series_to_json(phi).dump(2) + "\n", 0};
      return Output{series_text(phi) + "\n", 0};
    };
  });
  CLI::App* pot_large = potential->add_subcommand("large", "descendant potential");
  pot_large->add_option("--r", r, "spin parameter")->required();
  pot_large->add_option("--genus", genus, "genus (0 or 1)")->required()->check(CLI::Range(0, 1));
  pot_large->add_option("--max-deg", max_deg, "truncation degree")->required();
  pot_large->callback([&] {
    key_tail = "potential large|r=" + std::to_string(r) + "|genus=" + std::to_string(genus) +
               "|N=" + std::to_string(max_deg);
    compute = [&] {
      const spinh::GradedSeries phi = genus == 0 ? spinh::genus0_potential(r, max_deg)
                                                 : spinh::genus1_potential(r, max_deg);
      if (format == "json") return Output{spinh::series_to_json(phi).dump(2) + "\n", 0};
      return Output{series_text(phi) + "\n", 0};
    };
  });

  // ---- correlator ----
  CLI::App* corr = app.add_subcommand("correlator", "single intersection number");
  corr->add_option("--r", r, "spin parameter")->required();
  corr->add_option("--genus", genus, "genus (0 or 1)")->required()->check(CLI::Range(0, 1));
  corr->add_option("--insertions", insertions, "e.g. \"tau(0,1)^4\"")->required();
  corr->add_flag("--mu1", mu1, "insert one mu_1 class (genus 0 only)");
  corr->callback([&] {
    const std::vector<Insertion> ins = parse_insertions(insertions);
    key_tail = "correlator|r=" + std::to_string(r) + "|genus=" + std::to_string(genus) +
               "|mu1=" + std::to_string(mu1) + "|ins=" + canonical_insertions(ins);
    compute = [&, ins] {
      if (mu1 && genus != 0) throw std::domain_error("--mu1 requires --genus 0");
      Rat val;
      if (mu1)
        val = spinh::mu1_correlator_g0(r, ins);
      else
        val = genus == 0 ? spinh::correlator_g0(r, ins) : spinh::correlator_g1(r, ins);
      if (format == "json") {
        Json j;
        j["schema"] = 1;
        j["type"] = "correlator";
        j["key"] = canonical_insertions(ins);
        j["value"] = spinh::rat_to_string(val);
        return Output{j.dump(2) + "\n", 0};
      }
      return Output{spinh::rat_to_string(val) + "\n", 0};
    };
  });

  // ---- check ----
  CLI::App* check = app.add_subcommand("check", "verify an identity; exit 1 on failure");
  auto add_residual_check = [&](const char* name, const char* blurb) {
    CLI::App* sub = check->add_subcommand(name, blurb);
    sub->add_option("--r", r, "spin parameter")->required();
    sub->add_option("--max-deg", max_deg, "residual degree");
    return sub;
  };

  add_residual_check("wdvv", "associativity of the small phase potential")->callback([&] {
    key_tail = "check wdvv|r=" + std::to_string(r);
    compute = [&] {
      return pass_fail(spinh::wdvv_ok(spinh::solve_small_phase(r)), "residual: 0",
                       "associativity residual nonzero");
    };
  });
  for (const char* name : {"string", "dilaton", "l0", "grading"}) {
    add_residual_check(name, "linear constraint on the genus <= 1 potential")
        ->callback([&, name] {
          key_tail = std::string("check ") + name + "|r=" + std::to_string(r) +
                     "|N=" + std::to_string(max_deg);
          compute = [&, name] {
            const spinh::GradedSeries phi0 = spinh::genus0_potential(r, max_deg + 1);
            const spinh::GradedSeries phi1 = spinh::genus1_potential(r, max_deg + 1);
            spinh::GradedSeries res = spinh::GradedSeries::zero(r);
            const std::string n{name};
            if (n == "string")
              res = spinh::string_residual(phi0 + phi1, max_deg);
            else if (n == "dilaton")
              res = spinh::dilaton_residual(phi0, phi1, max_deg);
            else if (n == "l0")
              res = spinh::l0_residual(phi0 + phi1, max_deg);
            else
              res = spinh::grading_residual(phi0, phi1, max_deg);
            return pass_fail(res.is_zero(), "residual: 0", "residual: " + res.to_string());
          };
        });
  }
  CLI::App* check_kdv = check->add_subcommand("kdv", "hierarchy flow on the genus-0 potential");
  check_kdv->add_option("--r", r, "spin parameter")->required();
  check_kdv->add_option("--flow", flow, "flow indices n,m")->required();
  check_kdv->add_option("--max-deg", max_deg, "residual degree")->required();
  check_kdv->callback([&] {
    key_tail = "check kdv|r=" + std::to_string(r) + "|flow=" + flow +
               "|N=" + std::to_string(max_deg);
    compute = [&] {
      const auto comma = flow.find(',');
      if (comma == std::string::npos)
        throw std::domain_error("--flow expects n,m");
      const int fn = std::stoi(flow.substr(0, comma));
      const int fm = std::stoi(flow.substr(comma + 1));
      const spinh::GradedSeries phi0 = spinh::genus0_potential(r, max_deg + 3);
      const std::vector<spinh::GradedSeries> res =
          spinh::potential_flow_residuals(phi0, fn, fm, max_deg);
      std::string diff;
      for (std::size_t j = 0; j < res.size(); ++j)
        if (!res[j].is_zero())
          diff += "residual[u" + std::to_string(j) + "]: " + res[j].to_string() + "\n";
      if (diff.empty()) return Output{"residual: 0\n", 0};
      return Output{diff, 1};
    };
  });
  CLI::App* check_fourpoint =
      check->add_subcommand("fourpoint", "boundary formula vs four-point values");
  check_fourpoint->add_option("--r", r, "spin parameter")->required();
  check_fourpoint->callback([&] {
    key_tail = "check fourpoint|r=" + std::to_string(r);
    compute = [&] {
      int checked = 0;
      std::string diff;
      for (int m1 = 0; m1 <= r - 2; ++m1)
        for (int m2 = m1; m2 <= r - 2; ++m2)
          for (int m3 = m2; m3 <= r - 2; ++m3)
            for (int m4 = m3; m4 <= r - 2; ++m4) {
              if (m1 + m2 + m3 + m4 != 2 * r - 2) continue;
              ++checked;
              const Rat lhs = spinh::m04_mu1_integral(r, {m1, m2, m3, m4});
              const Rat rhs = spinh::four_point(r, m1, m2, m3, m4);
              if (lhs != rhs)
                diff += "type (" + std::to_string(m1) + "," + std::to_string(m2) + "," +
                        std::to_string(m3) + "," + std::to_string(m4) + "): " +
                        spinh::rat_to_string(lhs) + " != " + spinh::rat_to_string(rhs) + "\n";
            }
      if (!diff.empty()) return Output{diff, 1};
      return Output{"checked " + std::to_string(checked) + " types: all match\n", 0};
    };
  });
  CLI::App* check_mu1 = check->add_subcommand("mu1", "dimension-zero mu_1 correlators vanish");
  check_mu1->add_option("--r", r, "spin parameter")->required();
  check_mu1->callback([&] {
    key_tail = "check mu1|r=" + std::to_string(r);
    compute = [&] {
      int checked = 0;
      std::string diff;
      for (int m1 = 0; m1 <= r - 2; ++m1)
        for (int m2 = m1; m2 <= r - 2; ++m2)
          for (int m3 = m2; m3 <= r - 2; ++m3)
            for (int m4 = m3; m4 <= r - 2; ++m4) {
              if (m1 + m2 + m3 + m4 != r - 2) continue;
              ++checked;
              const Rat via_trr = spinh::mu1_correlator_g0(
                  r, {{0, m1}, {0, m2}, {0, m3}, {0, m4}});
              const Rat via_m04 = spinh::m04_mu1_integral(r, {m1, m2, m3, m4});
              if (via_trr != 0 || via_m04 != 0)
                diff += "type (" + std::to_string(m1) + "," + std::to_string(m2) + "," +
                        std::to_string(m3) + "," + std::to_string(m4) +
                        "): trr=" + spinh::rat_to_string(via_trr) +
                        " m04=" + spinh::rat_to_string(via_m04) + "\n";
            }
      if (!diff.empty()) return Output{diff, 1};
      return Output{"checked " + std::to_string(checked) + " types: all vanish\n", 0};
    };
  });

  // ---- psdo ----
  CLI::App* psdo_cmd = app.add_subcommand("psdo", "operator calculus");
  CLI::App* psdo_root = psdo_cmd->add_subcommand("root", "r-th root of the canonical operator");
  psdo_root->add_option("--r", r, "spin parameter")->required();
  psdo_root->add_option("--depth", depth, "tail depth")->required();
  psdo_root->callback([&] {
    key_tail = "psdo root|r=" + std::to_string(r) + "|depth=" + std::to_string(depth);
    compute = [&] {
      const spinh::Psdo root = spinh::rth_root(spinh::Psdo::canonical_l(r), depth);
      if (format == "json") return Output{spinh::psdo_to_json(root).dump(2) + "\n", 0};
      return Output{root.to_string() + "\n", 0};
    };
  });

  // ---- graphs ----
  std::string graph_format = "text";
  CLI::App* graphs = app.add_subcommand("graphs", "decorated stable graphs");
  CLI::App* genum = graphs->add_subcommand("enumerate", "boundary strata up to isomorphism");
  genum->add_option("--r", r, "spin parameter")->required();
  genum->add_option("--genus", genus, "total genus (0 or 1)")->required()->check(CLI::Range(0, 1));
  genum->add_option("--type", type_list, "comma-separated tail twists, e.g. 1,1,1,1");
  genum->add_option("--max-edges", max_edges, "edge bound")->required();
  genum->add_option("--graph-format", graph_format, "text, json or dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  genum->callback([&] {
    key_tail = "graphs enumerate|r=" + std::to_string(r) + "|genus=" + std::to_string(genus) +
               "|type=" + type_list + "|edges=" + std::to_string(max_edges) +
               "|gfmt=" + graph_format;
    compute = [&] {
      std::vector<int> marks;
      std::stringstream ss(type_list);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) marks.push_back(std::stoi(tok));
      }
      const std::vector<spinh::DecGraph> gs =
          spinh::enumerate_boundary_graphs(r, genus, marks, max_edges);
      if (graph_format == "json" || format == "json") {
        Json j;
        j["schema"] = 1;
        j["type"] = "graph_list";
        j["count"] = gs.size();
        Json arr = Json::array();
        for (const auto& g : gs) arr.push_back(spinh::graph_to_json(g));
        j["graphs"] = std::move(arr);
        return Output{j.dump(2) + "\n", 0};
      }
      std::string out;
      if (graph_format == "dot") {
        for (std::size_t i = 0; i < gs.size(); ++i) out += dot_render(gs[i], static_cast<int>(i));
      } else {
        for (const auto& g : gs) out += spinh::canonical_string(g) + "\n";
      }
      return Output{out, 0};
    };
  });
  CLI::App* gaut = graphs->add_subcommand("aut", "ghost automorphism count");
  gaut->add_option("--graph", graph_arg, "graph JSON document, or @file")->required();
  gaut->add_option("--r", r, "override the document's spin parameter");
  gaut->callback([&] {
    compute = [&] {
      std::string payload = graph_arg;
      if (!payload.empty() && payload[0] == '@') {
        std::ifstream in(payload.substr(1));
        if (!in) throw std::domain_error("cannot open " + payload.substr(1));
        std::stringstream buf;
        buf << in.rdbuf();
        payload = buf.str();
      }
      spinh::DecGraph g = spinh::graph_from_json(Json::parse(payload));
      if (r >= 2) g.r = r;
      const std::vector<std::string> bad = spinh::validate_graph(g);
      if (!bad.empty()) {
        std::string msg;
        for (const auto& b : bad) msg += b + "\n";
        return Output{msg, 1};
      }
      return Output{spinh::aut_order(g).get_str() + "\n", 0};
    };
    key_tail.clear();  // graph payload may be a file; skip caching
  });

  app.require_subcommand();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ? code : 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (!compute) {
    std::cerr << "error: missing subcommand\n";
    return 2;
  }

  const spinh::CacheConfig cache = spinh::resolve_cache_config(cache_dir, no_cache);
  const std::string key =
      key_tail.empty() ? "" : std::string(kVersionTag) + "|" + key_tail + "|format=" + format;
  if (!key.empty()) {
    if (const auto hit = spinh::cache_lookup(cache, key)) {
      std::cout << hit->output;
      std::cerr << "cache hit\n";
      return hit->exit_code;
    }
  }

  Output out;
  try {
    out = compute();
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  std::cout << out.text;
  if (!key.empty()) spinh::cache_store(cache, key, {out.text, out.exit_code});
  return out.exit_code;
}
