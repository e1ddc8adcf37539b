// Numeric backends for reciprocal-matrix computations.
//
// Two backends are supported: exact rationals (GMP mpq_class) and binary
// doubles. Everything that decides an inequality goes through the helpers
// below, so the exact backend never sees a tolerance and the float backend
// always does.

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

namespace pcm {

using Rational = mpq_class;

enum class Errc {
  bad_shape,
  non_positive_entry,
  reciprocity_violation,
  dimension_mismatch,
  empty_subset,
  invalid_witness,
  subvector_not_efficient,
  head_not_efficient,
  no_convergence,
  structure_violation,
  not_normalized,
  theorem_violation,
  grid_too_large,
  invalid_spec,
  parse_error,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::bad_shape: return "BadShape";
    case Errc::non_positive_entry: return "NonPositiveEntry";
    case Errc::reciprocity_violation: return "ReciprocityViolation";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::empty_subset: return "EmptySubset";
    case Errc::invalid_witness: return "InvalidWitness";
    case Errc::subvector_not_efficient: return "SubvectorNotEfficient";
    case Errc::head_not_efficient: return "HeadNotEfficient";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::structure_violation: return "StructureViolation";
    case Errc::not_normalized: return "NotNormalized";
    case Errc::theorem_violation: return "TheoremViolation";
    case Errc::grid_too_large: return "GridTooLarge";
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Tolerances used by the float backend. The exact backend ignores them.
struct Tolerances {
  double recip = 1e-12;    // a_ij * a_ji == 1, relative
  double cons = 1e-9;      // a_ij * a_jk == a_ik, relative
  double edge = 1e-9;      // one-sided slack in favour of including an edge
  double perron = 1e-12;   // power iteration convergence and residual
  double compare = 1e-12;  // error comparisons in dominance checks
};

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
};

template <class T>
concept Scalar = requires { scalar_traits<T>::exact; } && std::copyable<T>;

template <Scalar T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

template <Scalar T>
T from_int(long v) {
  return T(v);
}

template <Scalar T>
T from_ratio(long num, long den) {
  if constexpr (is_exact_v<T>) {
    Rational q(num, den);
    q.canonicalize();
    return q;
  } else {
    return static_cast<double>(num) / static_cast<double>(den);
  }
}

template <Scalar T>
T abs_value(const T& x) {
  if constexpr (is_exact_v<T>) {
    return abs(x);
  } else {
    return std::fabs(x);
  }
}

/// a <= b, with relative slack `rel` on the float backend.
template <Scalar T>
bool leq(const T& a, const T& b, double rel) {
  if constexpr (is_exact_v<T>) {
    return a <= b;
  } else {
    return a <= b + rel * std::max({1.0, std::fabs(a), std::fabs(b)});
  }
}

/// a < b by more than the relative slack on the float backend.
template <Scalar T>
bool strictly_less(const T& a, const T& b, double rel) {
  if constexpr (is_exact_v<T>) {
    return a < b;
  } else {
    return a < b - rel * std::max({1.0, std::fabs(a), std::fabs(b)});
  }
}

template <Scalar T>
bool approx_equal(const T& a, const T& b, double rel) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
  }
}

/// The comparison-digraph edge rule: ratio >= a, where on the float backend
/// the threshold is lowered to a * (1 - slack) so near-ties keep the edge.
template <Scalar T>
bool edge_rule(const T& num, const T& den, const T& a, double slack) {
  if constexpr (is_exact_v<T>) {
    return num >= a * den;
  } else {
    return num / den >= a * (1.0 - slack);
  }
}

template <Scalar T>
T convert_from(const Rational& q) {
  if constexpr (is_exact_v<T>) {
    return q;
  } else {
    return q.get_d();
  }
}

/// Exact rational from a double. Every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
  Rational q(x);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str();
}

inline std::string to_string(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' ||
                        s.front() == '\n')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ||
                        s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace detail

/// True if the literal is written as "p/q".
inline bool is_rational_literal(std::string_view text) {
  return detail::trim(text).find('/') != std::string_view::npos;
}

/// Parses "p/q", an integer, or a decimal ("8.5", "1e-3", "2.5E2") exactly.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = detail::trim(text);
  auto fail = [&] { throw Error(Errc::parse_error, "not a number: '" + std::string(text) + "'"); };
  if (s.empty()) fail();

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = detail::trim(s.substr(0, slash));
    std::string_view den = detail::trim(s.substr(slash + 1));
    bool neg = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
      neg = num.front() == '-';
      num.remove_prefix(1);
    }
    if (!detail::all_digits(num) || !detail::all_digits(den)) fail();
    const mpz_class p(std::string(num), 10);
    const mpz_class q(std::string(den), 10);
    if (q == 0) fail();
    Rational r(neg ? mpz_class(-p) : p, q);
    r.canonicalize();
    return r;
  }

  bool neg = false;
  if (s.front() == '-' || s.front() == '+') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    bool exp_neg = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_neg = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!detail::all_digits(exp_part) || exp_part.size() > 6) fail();
    exponent = std::stol(std::string(exp_part));
    if (exp_neg) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) fail();
    if (!int_part.empty() && !detail::all_digits(int_part)) fail();
    if (!frac_part.empty() && !detail::all_digits(frac_part)) fail();
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!detail::all_digits(s)) fail();
    digits = std::string(s);
  }
  mpz_class mant(digits, 10);
  if (neg) mant = -mant;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(mant, scale) : Rational(mant * scale, 1);
  r.canonicalize();
  return r;
}

template <Scalar T>
T parse_scalar(std::string_view text) {
  Rational q = parse_rational(text);
  return convert_from<T>(q);
}

}  // namespace pcm
