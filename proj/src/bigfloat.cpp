#include "expfun/bigfloat.hpp"

#include <algorithm>
#include <ostream>
#include <vector>

namespace expfun {

namespace {

thread_local int g_working_bits = 128;

mpfr_prec_t clamp_prec(int bits) {
  return static_cast<mpfr_prec_t>(std::clamp<long>(bits, MPFR_PREC_MIN, MPFR_PREC_MAX));
}

}  // namespace

int working_precision() noexcept { return g_working_bits; }

ScopedPrecision::ScopedPrecision(int bits) : saved_(g_working_bits) {
  g_working_bits = static_cast<int>(clamp_prec(bits));
}

ScopedPrecision::~ScopedPrecision() { g_working_bits = saved_; }

BigFloat::BigFloat() {
  mpfr_init2(v_, clamp_prec(g_working_bits));
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double v) {
  mpfr_init2(v_, clamp_prec(std::max(g_working_bits, 53)));
  mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(int v) : BigFloat(static_cast<long>(v)) {}

BigFloat::BigFloat(long v) {
  mpfr_init2(v_, clamp_prec(std::max(g_working_bits, 64)));
  mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat& BigFloat::operator=(double v) {
  mpfr_set_d(v_, v, MPFR_RNDN);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat& BigFloat::operator+=(const BigFloat& x) { mpfr_add(v_, v_, x.v_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator-=(const BigFloat& x) { mpfr_sub(v_, v_, x.v_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator*=(const BigFloat& x) { mpfr_mul(v_, v_, x.v_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator/=(const BigFloat& x) { mpfr_div(v_, v_, x.v_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator+=(double x) { mpfr_add_d(v_, v_, x, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator-=(double x) { mpfr_sub_d(v_, v_, x, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator*=(double x) { mpfr_mul_d(v_, v_, x, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator/=(double x) { mpfr_div_d(v_, v_, x, MPFR_RNDN); return *this; }

std::string BigFloat::str(int digits) const {
  mpfr_exp_t exp10 = 0;
  char* s = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(std::max(digits, 0)), v_, MPFR_RNDN);
  std::string mant(s);
  mpfr_free_str(s);
  if (!mpfr_number_p(v_)) return mant;
  bool neg = !mant.empty() && mant[0] == '-';
  if (neg) mant.erase(0, 1);
  std::string out = neg ? "-" : "";
  out += mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  out += "e" + std::to_string(static_cast<long>(exp10) - 1);
  return out;
}

namespace {

template <class Op>
BigFloat apply(Op op) {
  BigFloat r;
  op(r.raw());
  return r;
}

}  // namespace

BigFloat operator-(const BigFloat& x) {
  BigFloat r(x);
  mpfr_neg(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) { return apply([&](mpfr_ptr r) { mpfr_add(r, a.raw(), b.raw(), MPFR_RNDN); }); }
BigFloat operator-(const BigFloat& a, const BigFloat& b) { return apply([&](mpfr_ptr r) { mpfr_sub(r, a.raw(), b.raw(), MPFR_RNDN); }); }
BigFloat operator*(const BigFloat& a, const BigFloat& b) { return apply([&](mpfr_ptr r) { mpfr_mul(r, a.raw(), b.raw(), MPFR_RNDN); }); }
BigFloat operator/(const BigFloat& a, const BigFloat& b) { return apply([&](mpfr_ptr r) { mpfr_div(r, a.raw(), b.raw(), MPFR_RNDN); }); }
BigFloat operator+(const BigFloat& a, double b) { return apply([&](mpfr_ptr r) { mpfr_add_d(r, a.raw(), b, MPFR_RNDN); }); }
BigFloat operator-(const BigFloat& a, double b) { return apply([&](mpfr_ptr r) { mpfr_sub_d(r, a.raw(), b, MPFR_RNDN); }); }
BigFloat operator*(const BigFloat& a, double b) { return apply([&](mpfr_ptr r) { mpfr_mul_d(r, a.raw(), b, MPFR_RNDN); }); }
BigFloat operator/(const BigFloat& a, double b) { return apply([&](mpfr_ptr r) { mpfr_div_d(r, a.raw(), b, MPFR_RNDN); }); }
BigFloat operator+(double a, const BigFloat& b) { return b + a; }
BigFloat operator-(double a, const BigFloat& b) { return apply([&](mpfr_ptr r) { mpfr_d_sub(r, a, b.raw(), MPFR_RNDN); }); }
BigFloat operator*(double a, const BigFloat& b) { return b * a; }
BigFloat operator/(double a, const BigFloat& b) { return apply([&](mpfr_ptr r) { mpfr_d_div(r, a, b.raw(), MPFR_RNDN); }); }

BigFloat abs(const BigFloat& x) { return apply([&](mpfr_ptr r) { mpfr_abs(r, x.raw(), MPFR_RNDN); }); }
BigFloat sqrt(const BigFloat& x) { return apply([&](mpfr_ptr r) { mpfr_sqrt(r, x.raw(), MPFR_RNDN); }); }
BigFloat exp(const BigFloat& x) { return apply([&](mpfr_ptr r) { mpfr_exp(r, x.raw(), MPFR_RNDN); }); }
BigFloat log(const BigFloat& x) { return apply([&](mpfr_ptr r) { mpfr_log(r, x.raw(), MPFR_RNDN); }); }
BigFloat pow(const BigFloat& x, const BigFloat& y) { return apply([&](mpfr_ptr r) { mpfr_pow(r, x.raw(), y.raw(), MPFR_RNDN); }); }
BigFloat pow(const BigFloat& x, double y) { return pow(x, BigFloat(y)); }

double log_abs(const BigFloat& x) noexcept {
  if (x.is_zero()) return -HUGE_VAL;
  long e = 0;
  double m = mpfr_get_d_2exp(&e, x.raw(), MPFR_RNDN);
  return std::log(std::fabs(m)) + static_cast<double>(e) * 0.69314718055994530942;
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) {
  auto digits = static_cast<int>(os.precision());
  return os << x.str(digits > 0 ? digits : 17);
}

}  // namespace expfun
