#include "pol/rational.hpp"

#include <cctype>

#include "pol/errors.hpp"

namespace pol {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw InvalidInput("empty number");
  const auto dot = text.find('.');
  try {
    if (dot == std::string::npos) {
      Rational q(text);
      if (q.get_den() == 0) throw InvalidInput("zero denominator in '" + text + "'");
      q.canonicalize();
      return q;
    }
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    for (char ch : frac)
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw InvalidInput("malformed number '" + text + "'");
    const bool negative = !whole.empty() && whole[0] == '-';
    const std::string digits = (negative ? whole.substr(1) : whole) + frac;
    if (digits.empty()) throw InvalidInput("malformed number '" + text + "'");
    BigInt numerator(digits);
    BigInt denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), 10, frac.size());
    Rational q(numerator, denominator);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  } catch (const std::invalid_argument&) {
    throw InvalidInput("malformed number '" + text + "'");
  }
}

}  // namespace pol
