#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace decisive {

using Rational = mpq_class;

/// Parses "2/3", "1", "0.25" or "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);

/// Parses a probability and checks that it lies in [0, 1].
Rational parse_probability(std::string_view text);

std::string format_rational(const Rational& value);

/// 12 significant digits, the format used by every approximate report.
std::string format_decimal(double value, int significant_digits = 12);

inline double to_double(const Rational& value) { return value.get_d(); }
inline double to_double(double value) { return value; }

// Arithmetic traits for the two numeric modes: exact rationals and float64.
template <class T>
struct Numeric;

template <>
struct Numeric<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from(const Rational& value) { return value; }
  static bool is_zero(const Rational& value) { return sgn(value) == 0; }
  static std::string format(const Rational& value) { return format_rational(value); }
};

template <>
struct Numeric<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from(const Rational& value) { return value.get_d(); }
  static bool is_zero(double value) { return value == 0.0; }
  static std::string format(double value) { return format_decimal(value); }
};

/// Mass tolerance in approximate mode.
inline constexpr double kMassTolerance = 1e-12;

/// Entries below this are pruned (and the loss accounted) in approximate mode.
inline constexpr double kPruneThreshold = 1e-15;

}  // namespace decisive
