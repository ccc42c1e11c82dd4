// Exact arithmetic in the truncated bigraded ring Q[c,h]/(c^{n+1}, h^k).
//
// The ring models the rational cohomology of a product A x P^{k-1}, where c is
// the class of a polarization on the n-dimensional factor and h the hyperplane
// class of the projective factor. Elements are stored sparsely with exact GMP
// rational coefficients; zero coefficients are never stored, so structural
// equality is ring equality.
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace abelscroll {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Thrown for malformed ring input: exponents outside the shape, mismatched
/// shapes, or a negative power of a non-unit.
class RingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ShapeMismatch : public RingError {
 public:
  using RingError::RingError;
};

class IndexOutOfRange : public RingError {
 public:
  IndexOutOfRange(int c_exp, int h_exp, const std::string& what)
      : RingError(what), c_exp_(c_exp), h_exp_(h_exp) {}
  int c_exp() const noexcept { return c_exp_; }
  int h_exp() const noexcept { return h_exp_; }

 private:
  int c_exp_;
  int h_exp_;
};

class NotInvertible : public RingError {
 public:
  using RingError::RingError;
};

/// Truncation data: c^{c_cap+1} = 0 and h^{h_cap+1} = 0.
struct RingShape {
  int c_cap = 0;
  int h_cap = 0;

  RingShape() = default;
  RingShape(int c, int h);

  bool contains(int c_exp, int h_exp) const noexcept {
    return c_exp >= 0 && h_exp >= 0 && c_exp <= c_cap && h_exp <= h_cap;
  }
  std::size_t grid_size() const noexcept {
    return static_cast<std::size_t>(c_cap + 1) * static_cast<std::size_t>(h_cap + 1);
  }
  /// Largest total degree of a nonzero monomial.
  int top_degree() const noexcept { return c_cap + h_cap; }

  friend bool operator==(const RingShape&, const RingShape&) = default;
};

struct Term {
  int c_exp = 0;
  int h_exp = 0;
  Rational coeff;
};

class TruncPoly {
 public:
  /// The zero element of `shape`.
  explicit TruncPoly(RingShape shape) : shape_(shape) {}

  /// Builds a polynomial from possibly repeated terms; duplicates are summed
  /// and cancelled terms dropped. Throws IndexOutOfRange for exponents
  /// outside `shape`.
  static TruncPoly make(RingShape shape, std::span<const Term> terms);
  static TruncPoly make(RingShape shape, std::initializer_list<Term> terms) {
    return make(shape, std::span<const Term>(terms.begin(), terms.size()));
  }

  static TruncPoly constant(RingShape shape, const Rational& value);
  static TruncPoly one(RingShape shape) { return constant(shape, Rational(1)); }
  /// The monomial c^i h^j; zero if it is truncated away.
  static TruncPoly monomial(RingShape shape, int c_exp, int h_exp,
                            const Rational& coeff = Rational(1));

  const RingShape& shape() const noexcept { return shape_; }
  /// Nonzero terms sorted by (c_exp, h_exp).
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational constant_term() const;
  bool is_unit() const { return constant_term() != 0; }
  bool is_integral() const;

  /// Throws IndexOutOfRange if (c_exp, h_exp) lies outside the shape.
  Rational coefficient(int c_exp, int h_exp) const;

  friend bool operator==(const TruncPoly& a, const TruncPoly& b);

  friend TruncPoly operator+(const TruncPoly& a, const TruncPoly& b);
  friend TruncPoly operator-(const TruncPoly& a, const TruncPoly& b);
  friend TruncPoly operator-(const TruncPoly& a);
  friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b);
  friend TruncPoly operator*(const Rational& s, const TruncPoly& a);

  std::string to_string() const;

 private:
  TruncPoly(RingShape shape, std::vector<Term> sorted_terms)
      : shape_(shape), terms_(std::move(sorted_terms)) {}

  static TruncPoly from_dense(RingShape shape, std::vector<Rational>& dense);

  RingShape shape_;
  std::vector<Term> terms_;
};

TruncPoly mul(const TruncPoly& a, const TruncPoly& b);

/// p^e for any signed e. Negative exponents go through the formal inverse, so
/// p must then have a nonzero constant term (NotInvertible otherwise).
///
/// For units the power is expanded as a0^e * sum_t C(e,t) (N/a0)^t with N the
/// nilpotent part; the sum stops at t = c_cap + h_cap because N^t vanishes
/// beyond the top degree. Non-units are raised by repeated squaring.
TruncPoly power_signed(const TruncPoly& p, std::int64_t e);

/// Unique q with p*q = 1 (Neumann series in the nilpotent part).
TruncPoly inverse(const TruncPoly& p);

/// Plain repeated squaring, e >= 0. Kept as an independent route for tests.
TruncPoly power_by_squaring(const TruncPoly& p, std::uint64_t e);

/// Re-expresses p in a smaller shape by dropping monomials outside it.
TruncPoly truncate_to(const TruncPoly& p, RingShape smaller);

/// Exact C(a, b); 0 when b < 0 or b > a. Requires a >= 0.
BigInt binomial(std::int64_t a, std::int64_t b);

/// Generalized binomial e(e-1)...(e-t+1)/t! for any integer e and t >= 0.
BigInt generalized_binomial(std::int64_t e, std::int64_t t);

BigInt factorial(std::int64_t n);

}  // namespace abelscroll
