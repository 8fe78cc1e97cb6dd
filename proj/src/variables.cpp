#include "spinh/variables.hpp"

namespace spinh {

namespace {
constexpr int kAShift = 30;
constexpr std::int64_t kKindShift = 60;
constexpr std::int64_t kFieldMax = (std::int64_t(1) << kAShift) - 1;

VarId pack(int kind, int a, int m) {
  if (a < 0 || m < 0 || a > kFieldMax || m > kFieldMax)
    throw std::domain_error("variable index out of range");
  return (std::int64_t(kind) << kKindShift) | (std::int64_t(a) << kAShift) | std::int64_t(m);
}
}  // namespace

VarId t_var(int a, int m) { return pack(0, a, m); }
VarId x_var(int m) { return pack(1, 0, m); }
VarId z_var(int idx) { return pack(2, 0, idx); }

int var_kind(VarId v) { return int(v >> kKindShift); }
int var_a(VarId v) { return int((v >> kAShift) & kFieldMax); }
int var_m(VarId v) { return int(v & kFieldMax); }

std::string var_name(VarId v) {
  switch (var_kind(v)) {
    case 0: return "t" + std::to_string(var_a(v)) + "^" + std::to_string(var_m(v));
    case 1: return "x" + std::to_string(var_m(v));
    case 2: return "z" + std::to_string(var_m(v));
    default: throw std::domain_error("var_name: bad VarId");
  }
}

VarId var_from_name(const std::string& name) {
  if (name.empty()) throw std::domain_error("var_from_name: empty name");
  auto parse_int = [&](std::size_t from, std::size_t to) {
    if (from >= to) throw std::domain_error("var_from_name: bad name '" + name + "'");
    long val = 0;
    for (std::size_t i = from; i < to; ++i) {
      if (name[i] < '0' || name[i] > '9')
        throw std::domain_error("var_from_name: bad name '" + name + "'");
      val = val * 10 + (name[i] - '0');
      if (val > kFieldMax) throw std::domain_error("var_from_name: index too large");
    }
    return int(val);
  };
  if (name[0] == 't') {
    auto caret = name.find('^');
    if (caret == std::string::npos) throw std::domain_error("var_from_name: bad name '" + name + "'");
    return t_var(parse_int(1, caret), parse_int(caret + 1, name.size()));
  }
  if (name[0] == 'x') return x_var(parse_int(1, name.size()));
  if (name[0] == 'z') return z_var(parse_int(1, name.size()));
  throw std::domain_error("var_from_name: bad name '" + name + "'");
}

Rat var_weight(VarId v, int r) {
  if (r < 2) throw std::domain_error("var_weight: ring context r must be >= 2");
  switch (var_kind(v)) {
    case 0: return Rat(var_a(v) - 1) + make_rat(var_m(v), r);
    case 1: return Rat(-1) + make_rat(var_m(v), r);
    case 2: return Rat(0);
    default: throw std::domain_error("var_weight: bad VarId");
  }
}

}  // namespace spinh
