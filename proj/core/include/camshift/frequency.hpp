#pragma once

#include <string>
#include <string_view>

#include "camshift/bigint.hpp"

namespace camshift {

// eps_n = c * 3^-(d-1) * r^-n. The default scheme is c = 1/2, r = 4.
// Scheme names: "default" or "geometric:<c>:<r>" with c a rational such as
// "1/2" and r an integer >= 2.
class FrequencySequence {
 public:
  static FrequencySequence default_for(unsigned dim);
  static FrequencySequence parse(std::string_view scheme, unsigned dim);

  const std::string& scheme() const noexcept { return scheme_; }
  unsigned dimension() const noexcept { return dim_; }

  Rational eps(unsigned k) const;
  // Sum of eps_j for j in [from, to]; zero when from > to.
  Rational partial_sum(unsigned from, unsigned to) const;
  // Sum of eps_n for n >= N, in closed form.
  Rational tail(unsigned N) const;
  // 3^-(d+N-1), the bound every tail must stay under.
  Rational tail_bound(unsigned N) const;
  // tail(N) < tail_bound(N) for every N >= 1. The ratio tail/bound is
  // c r/(r-1) (3/r)^N, so it is decided by r >= 3 and the N = 1 case.
  bool tail_condition_for_all_n() const;

 private:
  FrequencySequence(std::string scheme, unsigned dim, Rational c, BigInt r);

  std::string scheme_;
  unsigned dim_;
  Rational c_;
  BigInt r_;
  Rational scale_;
};

}  // namespace camshift
