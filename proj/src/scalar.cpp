#include "threadkit/scalar.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace threadkit {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty number");

  bool negative = false;
  std::string_view body = s;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Scalar q(mpz_class(std::string(num), 10), d);
    q.canonicalize();
    return negative ? Scalar(-q) : q;
  }

  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = body.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6)
      throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    body = body.substr(0, e);
  }

  std::string digits;
  long frac_len = 0;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto int_part = body.substr(0, dot);
    auto frac_part = body.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty()))
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    digits = std::string(int_part) + std::string(frac_part);
    frac_len = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(body)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    digits = std::string(body);
  }

  mpz_class mantissa(digits, 10);
  long scale = exponent - frac_len;
  Scalar q;
  if (scale >= 0) {
    q = Scalar(mantissa * pow10(static_cast<unsigned long>(scale)));
  } else {
    q = Scalar(mantissa, pow10(static_cast<unsigned long>(-scale)));
    q.canonicalize();
  }
  return negative ? Scalar(-q) : q;
}

std::string format_scalar(const Scalar& s) {
  const mpz_class& num = s.get_num();
  mpz_class den = s.get_den();
  if (den == 1) return num.get_str();

  // Terminating decimal iff the denominator is 2^a 5^b.
  unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
  unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
  if (den != 1) return num.get_str() + "/" + s.get_den().get_str();

  unsigned long places = std::max(twos, fives);
  mpz_class scaled = num * pow10(places) / s.get_den();
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

Scalar from_double(double d) {
  if (!std::isfinite(d)) throw std::invalid_argument("non-finite value");
  return Scalar(d);
}

}  // namespace threadkit
