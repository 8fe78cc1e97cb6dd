#include "spinh/scalar.hpp"

namespace spinh {

ExactScalar::ExactScalar(Rat rat, int r) : rat_(std::move(rat)), r_(r) {
  if (r_ < 2 && !(r_ == 0 && rat_ == 0))
    throw std::domain_error("ExactScalar: ring context r must be >= 2");
}

ExactScalar::ExactScalar(Rat rat, Rat eps, int r)
    : rat_(std::move(rat)), eps_(std::move(eps)), r_(r) {
  if (r_ < 2 && !(r_ == 0 && rat_ == 0 && eps_ == 0))
    throw std::domain_error("ExactScalar: ring context r must be >= 2");
}

int ExactScalar::merged_r(const ExactScalar& a, const ExactScalar& b) {
  if (a.r_ == b.r_) return a.r_;
  if (a.r_ == 0) return b.r_;
  if (b.r_ == 0) return a.r_;
  throw std::domain_error("ExactScalar: mixing ring contexts r=" + std::to_string(a.r_) +
                          " and r=" + std::to_string(b.r_));
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar out;
  out.rat_ = -rat_;
  out.eps_ = -eps_;
  out.r_ = r_;
  return out;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  r_ = merged_r(*this, o);
  rat_ += o.rat_;
  eps_ += o.eps_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  r_ = merged_r(*this, o);
  rat_ -= o.rat_;
  eps_ -= o.eps_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  const int r = merged_r(*this, o);
  if (r == 0) {  // both bare zeros
    rat_ = 0;
    eps_ = 0;
    return *this;
  }
  // (a + b e)(c + d e) = (ac - bd/r) + (ad + bc) e, using e^2 = -1/r.
  // Copies guard against aliasing (x *= x).
  const Rat a = rat_, b = eps_, c = o.rat_, d = o.eps_;
  rat_ = a * c - b * d / r;
  eps_ = a * d + b * c;
  r_ = r;
  return *this;
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw std::domain_error("ExactScalar: division by zero");
  // 1/(a + b e) = (a - b e) / (a^2 + b^2/r); the norm is positive definite.
  Rat norm = rat_ * rat_ + eps_ * eps_ / r_;
  ExactScalar out;
  out.rat_ = rat_ / norm;
  out.eps_ = -eps_ / norm;
  out.r_ = r_;
  return out;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) { return *this *= o.inverse(); }

ExactScalar ExactScalar::pow(unsigned k) const {
  ExactScalar acc(Rat(1), r_ == 0 ? 2 : r_);
  ExactScalar base = *this;
  while (k > 0) {
    if (k & 1u) acc *= base;
    base *= base;
    k >>= 1u;
  }
  return acc;
}

std::string ExactScalar::to_string() const {
  if (is_zero()) return "0";
  if (eps_ == 0) return rat_to_string(rat_);
  std::string eps_str =
      (eps_ == 1) ? "eps" : (eps_ == -1) ? "-eps" : rat_to_string(eps_) + "*eps";
  if (rat_ == 0) return eps_str;
  if (eps_ > 0) return rat_to_string(rat_) + "+" + eps_str;
  return rat_to_string(rat_) + eps_str;  // eps_str already carries the '-'
}

}  // namespace spinh
