#include "dynkin/field.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace dynkin {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw std::invalid_argument("not a number: '" + std::string(text) + "'");
}

double parse_plain_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) bad_number(s);
  return value;
}

// Exact decimal: [sign] digits [. digits] [e|E [sign] digits]
Rational parse_decimal_exact(std::string_view s) {
  s = trim(s);
  if (s.empty()) bad_number(s);
  bool negative = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
    digits += s[i];
    seen_digit = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
      digits += s[i];
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) bad_number(s);
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    std::string_view exp = s.substr(i);
    if (!exp.empty() && exp.front() == '+') exp.remove_prefix(1);
    long e = 0;
    auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), e);
    if (ec != std::errc() || ptr != exp.data() + exp.size() || exp.empty())
      bad_number(s);
    scale += e;
    i = s.size();
  }
  if (i != s.size()) bad_number(s);

  mpz_class numerator(digits, 10);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  Rational out;
  if (scale >= 0) {
    out = Rational(numerator * ten_pow);
  } else {
    out = Rational(numerator, ten_pow);
  }
  out.canonicalize();
  if (negative) out = -out;
  return out;
}

}  // namespace

template <>
double parse_scalar<double>(std::string_view text) {
  std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    double num = parse_plain_double(s.substr(0, slash));
    double den = parse_plain_double(s.substr(slash + 1));
    if (den == 0.0) bad_number(text);
    return num / den;
  }
  return parse_plain_double(s);
}

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal_exact(s.substr(0, slash));
    Rational den = parse_decimal_exact(s.substr(slash + 1));
    if (den == 0) bad_number(text);
    Rational out = num / den;
    out.canonicalize();
    return out;
  }
  return parse_decimal_exact(s);
}

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string format_scalar(double x) { return format_double(x); }

std::string format_scalar(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_str();
}

}  // namespace dynkin
