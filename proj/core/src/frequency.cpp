#include "camshift/frequency.hpp"

#include "camshift/error.hpp"

namespace camshift {

FrequencySequence::FrequencySequence(std::string scheme, unsigned dim, Rational c, BigInt r)
    : scheme_(std::move(scheme)), dim_(dim), c_(std::move(c)), r_(std::move(r)) {
  if (dim_ < 1) fail(ErrorCode::invalid_parameter, "dimension must be at least 1");
  if (c_ <= 0) fail(ErrorCode::invalid_parameter, "frequency scale must be positive");
  if (r_ < 2) fail(ErrorCode::invalid_parameter, "frequency ratio must be at least 2");
  scale_ = make_rational(1, pow_big(3, dim_ - 1));
}

FrequencySequence FrequencySequence::default_for(unsigned dim) {
  return FrequencySequence("default", dim, make_rational(1, 2), BigInt(4));
}

FrequencySequence FrequencySequence::parse(std::string_view scheme, unsigned dim) {
  if (scheme == "default") return default_for(dim);
  constexpr std::string_view prefix = "geometric:";
  if (scheme.substr(0, prefix.size()) != prefix) {
    fail(ErrorCode::invalid_parameter, "unknown frequency scheme '" + std::string(scheme) + "'");
  }
  const auto rest = scheme.substr(prefix.size());
  const auto colon = rest.find(':');
  if (colon == std::string_view::npos) {
    fail(ErrorCode::invalid_parameter, "expected geometric:<c>:<r>, got '" + std::string(scheme) + "'");
  }
  const auto c_text = rest.substr(0, colon);
  const auto slash = c_text.find('/');
  Rational c = slash == std::string_view::npos
                   ? Rational(parse_decimal(c_text))
                   : make_rational(parse_decimal(c_text.substr(0, slash)),
                                   parse_decimal(c_text.substr(slash + 1)));
  return FrequencySequence(std::string(scheme), dim, std::move(c),
                           parse_decimal(rest.substr(colon + 1)));
}

Rational FrequencySequence::eps(unsigned k) const {
  if (k < 1) fail(ErrorCode::invalid_parameter, "frequency index starts at 1");
  return c_ * scale_ / Rational(pow_big(r_, k));
}

Rational FrequencySequence::partial_sum(unsigned from, unsigned to) const {
  Rational sum = 0;
  for (unsigned j = from; j <= to; ++j) sum += eps(j);
  return sum;
}

Rational FrequencySequence::tail(unsigned N) const {
  return eps(N) * Rational(r_) / Rational(r_ - 1);
}

Rational FrequencySequence::tail_bound(unsigned N) const {
  return make_rational(1, pow_big(3, dim_ + N - 1));
}

bool FrequencySequence::tail_condition_for_all_n() const {
  return r_ >= 3 && tail(1) < tail_bound(1);
}

}  // namespace camshift
