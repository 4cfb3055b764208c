#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

namespace camshift {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_decimal(const BigInt& value);
BigInt parse_decimal(std::string_view text);

Rational make_rational(const BigInt& num, const BigInt& den);
std::string to_string(const Rational& value);  // "num/den", or "num" when den == 1

// Rationals travel as {"num": "...", "den": "..."} with decimal strings.
nlohmann::json rational_to_json(const Rational& value);
Rational rational_from_json(const nlohmann::json& j);

BigInt pow_big(const BigInt& base, unsigned exponent);

// Narrowing with a range check; throws budget_exceeded when the value does not fit.
std::uint64_t to_u64(const BigInt& value, std::string_view what);

}  // namespace camshift
