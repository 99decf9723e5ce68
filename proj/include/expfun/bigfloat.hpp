#pragma once

// Thin value-semantic wrapper over an MPFR number so that the series kernels
// can be written once and instantiated for double and for arbitrary precision.
//
// New values are created at the calling thread's working precision, which is
// set with ScopedPrecision. Copies keep the precision of their source.

#include <mpfr.h>

#include <cmath>
#include <iosfwd>
#include <string>

namespace expfun {

/// Working precision (bits) of the calling thread for newly created values.
int working_precision() noexcept;

class ScopedPrecision {
 public:
  explicit ScopedPrecision(int bits);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  int saved_;
};

class BigFloat {
 public:
  BigFloat();
  BigFloat(double v);  // NOLINT(google-explicit-constructor): exact conversion
  BigFloat(int v);     // NOLINT
  BigFloat(long v);    // NOLINT
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  BigFloat& operator=(double v);
  ~BigFloat();

  BigFloat& operator+=(const BigFloat& x);
  BigFloat& operator-=(const BigFloat& x);
  BigFloat& operator*=(const BigFloat& x);
  BigFloat& operator/=(const BigFloat& x);
  BigFloat& operator+=(double x);
  BigFloat& operator-=(double x);
  BigFloat& operator*=(double x);
  BigFloat& operator/=(double x);

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const noexcept { return mpfr_get_ld(v_, MPFR_RNDN); }
  explicit operator double() const noexcept { return to_double(); }

  int precision() const noexcept { return static_cast<int>(mpfr_get_prec(v_)); }
  int sign() const noexcept { return mpfr_sgn(v_); }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }

  std::string str(int digits = 0) const;

  mpfr_ptr raw() noexcept { return v_; }
  mpfr_srcptr raw() const noexcept { return v_; }

 private:
  mpfr_t v_;
};

BigFloat operator-(const BigFloat& x);
BigFloat operator+(const BigFloat& a, const BigFloat& b);
BigFloat operator-(const BigFloat& a, const BigFloat& b);
BigFloat operator*(const BigFloat& a, const BigFloat& b);
BigFloat operator/(const BigFloat& a, const BigFloat& b);
BigFloat operator+(const BigFloat& a, double b);
BigFloat operator-(const BigFloat& a, double b);
BigFloat operator*(const BigFloat& a, double b);
BigFloat operator/(const BigFloat& a, double b);
BigFloat operator+(double a, const BigFloat& b);
BigFloat operator-(double a, const BigFloat& b);
BigFloat operator*(double a, const BigFloat& b);
BigFloat operator/(double a, const BigFloat& b);

inline bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
inline bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
inline bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
inline bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
inline bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
inline bool operator<(const BigFloat& a, double b) { return mpfr_cmp_d(a.raw(), b) < 0; }
inline bool operator>(const BigFloat& a, double b) { return mpfr_cmp_d(a.raw(), b) > 0; }
inline bool operator<=(const BigFloat& a, double b) { return mpfr_cmp_d(a.raw(), b) <= 0; }
inline bool operator>=(const BigFloat& a, double b) { return mpfr_cmp_d(a.raw(), b) >= 0; }
inline bool operator==(const BigFloat& a, double b) { return mpfr_cmp_d(a.raw(), b) == 0; }

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat pow(const BigFloat& x, double y);

/// log|x| without overflow; -inf for zero.
double log_abs(const BigFloat& x) noexcept;

std::ostream& operator<<(std::ostream& os, const BigFloat& x);

// Uniform scalar helpers so generic code can treat double and BigFloat alike.
inline double to_double(double x) noexcept { return x; }
inline double to_double(long double x) noexcept { return static_cast<double>(x); }
inline double to_double(const BigFloat& x) noexcept { return x.to_double(); }
inline double log_abs(double x) noexcept { return std::log(std::fabs(x)); }
inline double log_abs(long double x) noexcept { return static_cast<double>(std::log(std::fabs(x))); }

}  // namespace expfun
