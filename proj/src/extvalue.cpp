#include "mdbl/extvalue.hpp"

#include <cmath>
#include <cstdlib>

namespace mdbl {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rational: empty string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    long long p = std::stoll(s.substr(0, slash));
    long long q = std::stoll(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("rational: zero denominator");
    return Rat(p, q);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rat(std::stoll(s));
  std::string head = s.substr(0, dot);
  std::string tail = s.substr(dot + 1);
  if (tail.size() > 15) throw std::invalid_argument("rational: too many digits");
  long long den = 1;
  for (size_t i = 0; i < tail.size(); ++i) den *= 10;
  bool neg = !head.empty() && head[0] == '-';
  long long whole = head.empty() || head == "-" ? 0 : std::stoll(head);
  long long frac = tail.empty() ? 0 : std::stoll(tail);
  Rat r = Rat(std::llabs(whole)) + Rat(frac, den);
  return neg ? -r : r;
}

std::string rat_to_string(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational: non-finite double");
  if (x == 0.0) return Rat(0);
  int exp = 0;
  double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
  // 53 bits of mantissa
  long long num = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  while (num % 2 == 0 && exp < 0) {
    num /= 2;
    ++exp;
  }
  if (exp > 62 || exp < -62)
    throw std::invalid_argument("rational: double out of exact range");
  long long pow2 = 1LL << std::abs(exp);
  return exp >= 0 ? Rat(num * pow2) : Rat(num, pow2);
}

double rat_to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace mdbl
