#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The netauction authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>

namespace netauction {

/// Exact arithmetic for all monetary quantities. Bids, costs, payments and
/// welfare values never touch floating point, so payment identities in the
/// test-suites hold with equality rather than tolerance.
using Rational = boost::multiprecision::cpp_rational;
using BigInt   = boost::multiprecision::cpp_int;

/// Parses "12", "-3.25", "+0.5" or "7/4" into an exact rational.
/// Returns nullopt on malformed input (no locale, no exponent notation).
inline std::optional<Rational> parse_rational(std::string_view text)
{
  if (text.empty())
  {
    return std::nullopt;
  }
  bool        negative = false;
  std::size_t pos      = 0;
  if (text[0] == '+' || text[0] == '-')
  {
    negative = text[0] == '-';
    pos      = 1;
  }
  auto read_digits = [&](std::string &out) {
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
    {
      out.push_back(text[pos]);
      ++pos;
    }
  };
  std::string integral;
  read_digits(integral);
  if (integral.empty())
  {
    return std::nullopt;
  }

  if (pos < text.size() && text[pos] == '/')
  {
    ++pos;
    std::string denom;
    read_digits(denom);
    if (denom.empty() || pos != text.size())
    {
      return std::nullopt;
    }
    BigInt den(denom);
    if (den == 0)
    {
      return std::nullopt;
    }
    Rational value(BigInt(integral), den);
    return negative ? Rational(-value) : value;
  }

  std::string fraction;
  if (pos < text.size() && text[pos] == '.')
  {
    ++pos;
    read_digits(fraction);
    if (fraction.empty())
    {
      return std::nullopt;
    }
  }
  if (pos != text.size())
  {
    return std::nullopt;
  }
  BigInt scale = 1;
  for (std::size_t i = 0; i < fraction.size(); ++i)
  {
    scale *= 10;
  }
  BigInt   numerator = BigInt(integral) * scale + (fraction.empty() ? BigInt(0) : BigInt(fraction));
  Rational value(numerator, scale);
  return negative ? Rational(-value) : value;
}

/// Renders a rational exactly. Values with a 2^a*5^b denominator become plain
/// decimal strings ("-3", "0.25"); anything else falls back to "p/q".
inline std::string format_rational(const Rational &value)
{
  BigInt num = numerator(value);
  BigInt den = denominator(value);
  if (den == 1)
  {
    return num.str();
  }
  BigInt   rest  = den;
  unsigned twos  = 0;
  unsigned fives = 0;
  while (rest % 2 == 0)
  {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0)
  {
    rest /= 5;
    ++fives;
  }
  if (rest != 1)
  {
    return num.str() + "/" + den.str();
  }
  unsigned digits = std::max(twos, fives);
  BigInt   scale  = 1;
  for (unsigned i = 0; i < digits; ++i)
  {
    scale *= 10;
  }
  BigInt      scaled = num * scale / den;
  bool        neg    = scaled < 0;
  BigInt      magnitude = neg ? BigInt(-scaled) : scaled;
  std::string body      = magnitude.str();
  if (body.size() <= digits)
  {
    body.insert(0, digits + 1 - body.size(), '0');
  }
  body.insert(body.size() - digits, ".");
  return neg ? "-" + body : body;
}

}  // namespace netauction
