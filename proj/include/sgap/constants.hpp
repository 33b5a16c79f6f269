#pragma once

// High-precision gap constants. c1 = 2^h(1/3) and c2 = 2^(tau + h(tau)) where
// tau is the unique root of h(2t) - h(t) + t on (0, 1/2); tau is found by
// bisection after verifying the bracket really changes sign, and the defining
// residuals are carried along so callers can assert them.

#include <iomanip>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "sgap/errors.hpp"

namespace sgap {

using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<120>>;

inline constexpr int kMaxDigits = 80;
inline constexpr int kDefaultDigits = 12;

inline Real real_log2(const Real& x) {
  using boost::multiprecision::log;
  static const Real ln2 = log(Real(2));
  return log(x) / ln2;
}

inline Real real_pow2(const Real& x) {
  using boost::multiprecision::pow;
  return pow(Real(2), x);
}

inline Real binary_entropy(const Real& x) {
  if (x < 0 || x > 1) throw degenerate_input_error("binary entropy needs an argument in [0,1]");
  if (x == 0 || x == 1) return Real(0);
  return -x * real_log2(x) - (1 - x) * real_log2(1 - x);
}

struct GapConstants {
  Real c1;
  Real c2;
  Real tau;
  Real residual_c1;   // |c1^3 - 27/4|, since (2^h(1/3))^3 = 27/4 exactly
  Real residual_tau;  // |h(2 tau) - h(tau) + tau|
};

namespace detail {
inline Real tau_equation(const Real& t) {
  return binary_entropy(2 * t) - binary_entropy(t) + t;
}
}  // namespace detail

inline GapConstants compute_constants(int precision_digits = kDefaultDigits) {
  if (precision_digits < 10) throw degenerate_input_error("precision must be at least 10 digits");
  if (precision_digits > kMaxDigits) throw degenerate_input_error("precision exceeds the supported cap");
  using boost::multiprecision::abs;

  Real lo("0.001"), hi("0.499");
  const Real glo = detail::tau_equation(lo), ghi = detail::tau_equation(hi);
  if (!(glo > 0) || !(ghi < 0))
    throw bracketing_error("tau bracket endpoints do not straddle a root");
  // the root must be unique on the bracket: scan for exactly one sign change
  int sign_changes = 0;
  Real prev = glo;
  for (int i = 1; i <= 100; ++i) {
    Real t = lo + (hi - lo) * i / 100;
    Real g = detail::tau_equation(t);
    if ((prev > 0) != (g > 0)) ++sign_changes;
    prev = g;
  }
  if (sign_changes != 1) throw bracketing_error("tau equation is not single-rooted on the bracket");

  for (int it = 0; it < 420; ++it) {
    Real mid = (lo + hi) / 2;
    if (detail::tau_equation(mid) > 0)
      lo = mid;
    else
      hi = mid;
  }
  GapConstants g;
  g.tau = (lo + hi) / 2;
  g.c1 = real_pow2(binary_entropy(Real(1) / 3));
  g.c2 = real_pow2(g.tau + binary_entropy(g.tau));
  g.residual_c1 = abs(g.c1 * g.c1 * g.c1 - Real(27) / 4);
  g.residual_tau = abs(detail::tau_equation(g.tau));
  return g;
}

// Fixed-point decimal with the requested number of fractional digits.
inline std::string format_real(const Real& x, int digits) {
  if (digits < 1 || digits > kMaxDigits) throw degenerate_input_error("digit count out of range");
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

}  // namespace sgap
