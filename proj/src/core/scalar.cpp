#include "stabpair/core/scalar.hpp"

#include "stabpair/core/errors.hpp"

#include <cctype>

namespace stabpair {

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw PreconditionError("division by zero scalar");
  mpq_class n = o.norm_sq();
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

std::string GaussianRational::to_string() const {
  if (is_real()) return format_rational(re_);
  return format_rational(re_) + (sgn(im_) < 0 ? "-" : "+") + format_rational(abs(im_)) + "i";
}

std::string format_rational(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw SchemaError("empty rational literal");
  auto dot = s.find('.');
  auto exp = s.find_first_of("eE");
  try {
    if (dot == std::string::npos && exp == std::string::npos) {
      mpq_class q(s, 10);
      if (q.get_den() == 0) throw SchemaError("zero denominator in '" + text + "'");
      q.canonicalize();
      return q;
    }
    // Decimal literal: mantissa digits over a power of ten, exactly.
    std::string mant = s.substr(0, exp);
    long e10 = exp == std::string::npos ? 0 : std::stol(s.substr(exp + 1));
    bool neg = !mant.empty() && (mant[0] == '-' || mant[0] == '+') ? (mant[0] == '-') : false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant = mant.substr(1);
    auto d = mant.find('.');
    std::string digits = mant;
    if (d != std::string::npos) {
      e10 -= static_cast<long>(mant.size() - d - 1);
      digits = mant.substr(0, d) + mant.substr(d + 1);
    }
    if (digits.empty()) throw SchemaError("bad rational literal '" + text + "'");
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw SchemaError("bad rational literal '" + text + "'");
    mpz_class num(digits, 10);
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(e10 < 0 ? -e10 : e10));
    mpq_class q = e10 >= 0 ? mpq_class(num * pow10) : mpq_class(num, pow10);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
  } catch (const std::invalid_argument&) {
    throw SchemaError("bad rational literal '" + text + "'");
  }
}

mpq_class rational_from_double(double x) {
  if (!std::isfinite(x)) throw PreconditionError("non-finite value has no exact rational form");
  mpq_class q(x);
  q.canonicalize();
  return q;
}

}  // namespace stabpair
