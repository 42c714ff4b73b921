#pragma once

#include <gmpxx.h>

#include <string>

#include "lefrank/error.hpp"

namespace lefrank {

// All arithmetic in the library is exact.  Rational wraps mpq_class and is
// kept canonical at all times: lowest terms, positive denominator.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw invalid_input("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepted forms: "p" and "p/q" with optional sign, q != 0.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw invalid_input("empty rational literal");
  for (char c : text) {
    if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9')))
      throw invalid_input("bad rational literal: '" + text + "'");
  }
  Rational q;
  try {
    q = Rational(text);
  } catch (const std::invalid_argument&) {
    throw invalid_input("bad rational literal: '" + text + "'");
  }
  if (q.get_den() == 0) throw invalid_input("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

// Serialization: "p" for integers, "p/q" otherwise, q > 0, lowest terms.
inline std::string format_rational(const Rational& q) {
  return q.get_str();
}

}  // namespace lefrank
