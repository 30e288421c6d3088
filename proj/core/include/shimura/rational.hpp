#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace shimura {

// Slopes, nu-invariants and masses are all small exact fractions.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace shimura
