#include "decisive/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <string>

#include "decisive/error.hpp"

namespace decisive {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownState: return "UnknownState";
    case ErrorKind::UnresolvableSet: return "UnresolvableSet";
    case ErrorKind::UnboundedFormula: return "UnboundedFormula";
    case ErrorKind::ZeroMass: return "ZeroMass";
    case ErrorKind::ResourceExhausted: return "ResourceExhausted";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::CertificateRequired: return "CertificateRequired";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DeadlockedConfiguration: return "DeadlockedConfiguration";
    case ErrorKind::Refused: return "Refused";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Error";
}

namespace {

Rational parse_decimal(std::string_view text) {
  std::string digits;
  long exponent = 0;
  bool negative = false;
  bool seen_point = false;
  bool seen_digit = false;
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c == 'e' || c == 'E') {
      ++i;
      std::string exp_text(text.substr(i));
      if (exp_text.empty()) break;
      std::size_t used = 0;
      long e = 0;
      try {
        e = std::stol(exp_text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != exp_text.size()) fail(ErrorKind::Parse, "malformed number '" + std::string(text) + "'");
      exponent += e;
      i = text.size();
      break;
    } else {
      fail(ErrorKind::Parse, "malformed number '" + std::string(text) + "'");
    }
  }
  if (!seen_digit) fail(ErrorKind::Parse, "malformed number '" + std::string(text) + "'");
  mpz_class numerator(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational value = exponent >= 0 ? Rational(numerator * scale) : Rational(numerator, scale);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) fail(ErrorKind::Parse, "empty number");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(trim(text.substr(0, slash)));
  const Rational den = parse_decimal(trim(text.substr(slash + 1)));
  if (sgn(den) == 0) fail(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational value = num / den;
  value.canonicalize();
  return value;
}

Rational parse_probability(std::string_view text) {
  Rational value = parse_rational(text);
  if (sgn(value) < 0 || value > 1) {
    fail(ErrorKind::Parse, "probability out of [0,1]: '" + std::string(text) + "'");
  }
  return value;
}

std::string format_rational(const Rational& value) {
  Rational canonical = value;
  canonical.canonicalize();
  return canonical.get_str(10);
}

std::string format_decimal(double value, int significant_digits) {
  if (value == 0.0) return "0";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", significant_digits, value);
  return buffer;
}

}  // namespace decisive
