#include "camshift/bigint.hpp"

#include <limits>

#include "camshift/error.hpp"

namespace camshift {

std::string to_decimal(const BigInt& value) { return value.str(); }

BigInt parse_decimal(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (digits.empty()) fail(ErrorCode::malformed_input, "empty decimal string");
  for (char c : digits) {
    if (c < '0' || c > '9') {
      fail(ErrorCode::malformed_input, "not a decimal integer: '" + std::string(text) + "'");
    }
  }
  return BigInt(std::string(text));
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorCode::invalid_parameter, "zero denominator");
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  const BigInt den = boost::multiprecision::denominator(value);
  std::string out = boost::multiprecision::numerator(value).str();
  if (den != 1) out += "/" + den.str();
  return out;
}

nlohmann::json rational_to_json(const Rational& value) {
  return nlohmann::json{{"num", boost::multiprecision::numerator(value).str()},
                        {"den", boost::multiprecision::denominator(value).str()}};
}

Rational rational_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den") || !j["num"].is_string() ||
      !j["den"].is_string()) {
    fail(ErrorCode::malformed_input, "rational must be {\"num\":str,\"den\":str}");
  }
  return make_rational(parse_decimal(j["num"].get<std::string>()),
                       parse_decimal(j["den"].get<std::string>()));
}

BigInt pow_big(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

std::uint64_t to_u64(const BigInt& value, std::string_view what) {
  if (value < 0 || value > std::numeric_limits<std::uint64_t>::max()) {
    fail(ErrorCode::budget_exceeded, std::string(what) + " does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(value);
}

}  // namespace camshift
