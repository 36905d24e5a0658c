#pragma once

// Scalar field abstraction. The solver is instantiated for double precision
// (tolerance-based set classification) and for exact rationals (every
// comparison is exact, tolerance is zero).

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

namespace dynkin {

using Rational = mpq_class;

template <typename T>
struct FieldTraits;

template <>
struct FieldTraits<double> {
  static constexpr bool kExact = false;
  static constexpr const char* kName = "float";
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
};

template <>
struct FieldTraits<Rational> {
  static constexpr bool kExact = true;
  static constexpr const char* kName = "rational";
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational from_double(double x) { return Rational(x); }
};

template <typename T>
concept Scalar = requires { FieldTraits<T>::kExact; };

template <Scalar T>
T scalar_abs(const T& x) {
  return FieldTraits<T>::abs(x);
}

template <Scalar T>
double to_double(const T& x) {
  return FieldTraits<T>::to_double(x);
}

// Parses "3", "-0.25", "1e-3", "60/11". Decimal text is read exactly in the
// rational field, so "0.2" becomes 1/5. Throws std::invalid_argument.
template <Scalar T>
T parse_scalar(std::string_view text);

template <>
double parse_scalar<double>(std::string_view text);
template <>
Rational parse_scalar<Rational>(std::string_view text);

// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

// "p/q" (or "p" when the denominator is 1) for rationals, shortest round-trip
// decimal for doubles.
std::string format_scalar(double x);
std::string format_scalar(const Rational& x);

}  // namespace dynkin
