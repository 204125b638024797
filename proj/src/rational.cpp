#include "redunet/rational.hpp"

#include <bit>
#include <cctype>
#include <stdexcept>

namespace redunet {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rat rat_from_string(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty()) throw std::invalid_argument("empty rational literal: '" + text + "'");

  Rat value;
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("bad rational literal: '" + text + "'");
    }
    mpz_class d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    value = Rat(mpz_class(num), d);
  } else if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (frac.empty()) frac = "0";
    if (!all_digits(whole) || !all_digits(frac)) {
      throw std::invalid_argument("bad decimal literal: '" + text + "'");
    }
    mpz_class scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value = Rat(mpz_class(whole) * scale + mpz_class(frac), scale);
  } else {
    if (!all_digits(s)) throw std::invalid_argument("bad integer literal: '" + text + "'");
    value = Rat(mpz_class(s));
  }
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

std::string rat_to_string(const Rat& value) {
  return value.get_str();
}

double rat_to_double(const Rat& value) {
  return value.get_d();
}

long ceil_log2(const Rat& value) {
  if (value <= 0) throw std::invalid_argument("ceil_log2 requires a positive argument");
  const mpz_class num = value.get_num();
  const mpz_class den = value.get_den();
  long k = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
  auto holds = [&](long e) {
    // 2^e >= num/den
    mpz_class lhs, rhs;
    if (e >= 0) {
      mpz_mul_2exp(lhs.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
      rhs = num;
    } else {
      lhs = den;
      mpz_mul_2exp(rhs.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return lhs >= rhs;
  };
  while (!holds(k)) ++k;
  while (holds(k - 1)) --k;
  return k;
}

int floor_log2(uint64_t value) {
  if (value == 0) throw std::invalid_argument("floor_log2 requires a positive argument");
  return std::bit_width(value) - 1;
}

}  // namespace redunet
