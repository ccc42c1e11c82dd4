#include "abelscroll/trunc_ring.hpp"

#include <algorithm>
#include <sstream>

namespace abelscroll {

namespace {

std::size_t dense_index(const RingShape& s, int c_exp, int h_exp) {
  return static_cast<std::size_t>(c_exp) * static_cast<std::size_t>(s.h_cap + 1) +
         static_cast<std::size_t>(h_exp);
}

void require_same_shape(const TruncPoly& a, const TruncPoly& b) {
  if (!(a.shape() == b.shape())) {
    std::ostringstream os;
    os << "shape mismatch: (" << a.shape().c_cap << "," << a.shape().h_cap << ") vs ("
       << b.shape().c_cap << "," << b.shape().h_cap << ")";
    throw ShapeMismatch(os.str());
  }
}

[[noreturn]] void throw_out_of_range(const RingShape& s, int c_exp, int h_exp) {
  std::ostringstream os;
  os << "exponent (" << c_exp << "," << h_exp << ") outside shape (" << s.c_cap << ","
     << s.h_cap << ")";
  throw IndexOutOfRange(c_exp, h_exp, os.str());
}

}  // namespace

RingShape::RingShape(int c, int h) : c_cap(c), h_cap(h) {
  if (c < 0 || h < 0) {
    throw RingError("ring shape caps must be non-negative");
  }
}

TruncPoly TruncPoly::from_dense(RingShape shape, std::vector<Rational>& dense) {
  std::vector<Term> out;
  for (int i = 0; i <= shape.c_cap; ++i) {
    for (int j = 0; j <= shape.h_cap; ++j) {
      Rational& v = dense[dense_index(shape, i, j)];
      if (v != 0) {
        out.push_back(Term{i, j, std::move(v)});
      }
    }
  }
  return TruncPoly(shape, std::move(out));
}

TruncPoly TruncPoly::make(RingShape shape, std::span<const Term> terms) {
  std::vector<Rational> dense(shape.grid_size());
  for (const Term& t : terms) {
    if (!shape.contains(t.c_exp, t.h_exp)) {
      throw_out_of_range(shape, t.c_exp, t.h_exp);
    }
    Rational coeff = t.coeff;
    coeff.canonicalize();
    dense[dense_index(shape, t.c_exp, t.h_exp)] += coeff;
  }
  return from_dense(shape, dense);
}

TruncPoly TruncPoly::constant(RingShape shape, const Rational& value) {
  return monomial(shape, 0, 0, value);
}

TruncPoly TruncPoly::monomial(RingShape shape, int c_exp, int h_exp, const Rational& coeff) {
  if (c_exp < 0 || h_exp < 0) throw_out_of_range(shape, c_exp, h_exp);
  Rational q = coeff;
  q.canonicalize();
  if (!shape.contains(c_exp, h_exp) || q == 0) return TruncPoly(shape);
  return TruncPoly(shape, std::vector<Term>{Term{c_exp, h_exp, std::move(q)}});
}

Rational TruncPoly::constant_term() const {
  if (!terms_.empty() && terms_.front().c_exp == 0 && terms_.front().h_exp == 0) {
    return terms_.front().coeff;
  }
  return Rational(0);
}

bool TruncPoly::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.coeff.get_den() == 1; });
}

Rational TruncPoly::coefficient(int c_exp, int h_exp) const {
  if (!shape_.contains(c_exp, h_exp)) throw_out_of_range(shape_, c_exp, h_exp);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair{c_exp, h_exp},
                             [](const Term& t, const std::pair<int, int>& key) {
                               return std::pair{t.c_exp, t.h_exp} < key;
                             });
  if (it != terms_.end() && it->c_exp == c_exp && it->h_exp == h_exp) return it->coeff;
  return Rational(0);
}

bool operator==(const TruncPoly& a, const TruncPoly& b) {
  if (!(a.shape_ == b.shape_) || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const Term& x = a.terms_[i];
    const Term& y = b.terms_[i];
    if (x.c_exp != y.c_exp || x.h_exp != y.h_exp || x.coeff != y.coeff) return false;
  }
  return true;
}

TruncPoly operator+(const TruncPoly& a, const TruncPoly& b) {
  require_same_shape(a, b);
  std::vector<Rational> dense(a.shape_.grid_size());
  for (const Term& t : a.terms_) dense[dense_index(a.shape_, t.c_exp, t.h_exp)] += t.coeff;
  for (const Term& t : b.terms_) dense[dense_index(a.shape_, t.c_exp, t.h_exp)] += t.coeff;
  return TruncPoly::from_dense(a.shape_, dense);
}

TruncPoly operator-(const TruncPoly& a) {
  std::vector<Term> out = a.terms_;
  for (Term& t : out) t.coeff = -t.coeff;
  return TruncPoly(a.shape_, std::move(out));
}

TruncPoly operator-(const TruncPoly& a, const TruncPoly& b) { return a + (-b); }

TruncPoly operator*(const Rational& scalar, const TruncPoly& a) {
  Rational s = scalar;
  s.canonicalize();
  if (s == 0) return TruncPoly(a.shape_);
  std::vector<Term> out = a.terms_;
  for (Term& t : out) t.coeff *= s;
  return TruncPoly(a.shape_, std::move(out));
}

TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
  require_same_shape(a, b);
  const RingShape& s = a.shape_;
  std::vector<Rational> dense(s.grid_size());
  Rational prod;
  for (const Term& x : a.terms_) {
    for (const Term& y : b.terms_) {
      const int i = x.c_exp + y.c_exp;
      const int j = x.h_exp + y.h_exp;
      if (i > s.c_cap || j > s.h_cap) continue;
      prod = x.coeff * y.coeff;
      dense[dense_index(s, i, j)] += prod;
    }
  }
  return TruncPoly::from_dense(s, dense);
}

TruncPoly mul(const TruncPoly& a, const TruncPoly& b) { return a * b; }

std::string TruncPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.coeff.get_str();
    if (t.c_exp > 0) os << "*c^" << t.c_exp;
    if (t.h_exp > 0) os << "*h^" << t.h_exp;
  }
  return os.str();
}

TruncPoly power_by_squaring(const TruncPoly& p, std::uint64_t e) {
  TruncPoly result = TruncPoly::one(p.shape());
  TruncPoly base = p;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

namespace {

// a0^e * sum_{t=0}^{top} C(e,t) M^t with M = (p - a0)/a0 nilpotent.
TruncPoly unit_power(const TruncPoly& p, std::int64_t e) {
  const RingShape& s = p.shape();
  const Rational a0 = p.constant_term();
  const TruncPoly nilpotent = (Rational(1) / a0) * (p - TruncPoly::constant(s, a0));

  TruncPoly sum = TruncPoly::one(s);
  TruncPoly nil_power = TruncPoly::one(s);
  for (int t = 1; t <= s.top_degree(); ++t) {
    nil_power = nil_power * nilpotent;
    if (nil_power.is_zero()) break;
    const BigInt coeff = generalized_binomial(e, t);
    if (coeff == 0) break;  // e >= 0 and t > e
    sum = sum + Rational(coeff) * nil_power;
  }

  Rational scale(1);
  mpz_pow_ui(scale.get_num_mpz_t(), a0.get_num_mpz_t(),
             static_cast<unsigned long>(e < 0 ? -e : e));
  mpz_pow_ui(scale.get_den_mpz_t(), a0.get_den_mpz_t(),
             static_cast<unsigned long>(e < 0 ? -e : e));
  scale.canonicalize();
  if (e < 0) scale = Rational(1) / scale;
  return scale * sum;
}

}  // namespace

TruncPoly power_signed(const TruncPoly& p, std::int64_t e) {
  if (e == 0) return TruncPoly::one(p.shape());
  if (!p.is_unit()) {
    if (e < 0) throw NotInvertible("negative power of a polynomial with zero constant term");
    if (e > p.shape().top_degree()) return TruncPoly(p.shape());
    return power_by_squaring(p, static_cast<std::uint64_t>(e));
  }
  return unit_power(p, e);
}

TruncPoly inverse(const TruncPoly& p) { return power_signed(p, -1); }

TruncPoly truncate_to(const TruncPoly& p, RingShape smaller) {
  std::vector<Term> kept;
  for (const Term& t : p.terms()) {
    if (smaller.contains(t.c_exp, t.h_exp)) kept.push_back(t);
  }
  return TruncPoly::make(smaller, kept);
}

BigInt binomial(std::int64_t a, std::int64_t b) {
  if (a < 0) throw std::invalid_argument("binomial: top argument must be non-negative");
  if (b < 0 || b > a) return BigInt(0);
  b = std::min(b, a - b);
  BigInt acc(1);
  for (std::int64_t i = 1; i <= b; ++i) {
    // acc = C(a-b+i, i) stays integral at every step.
    acc *= static_cast<long>(a - b + i);
    mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return acc;
}

BigInt generalized_binomial(std::int64_t e, std::int64_t t) {
  if (t < 0) return BigInt(0);
  if (e >= 0) return binomial(e, t);
  // C(e,t) = (-1)^t C(t-e-1, t) for e < 0.
  BigInt v = binomial(t - e - 1, t);
  return (t % 2 == 0) ? v : BigInt(-v);
}

BigInt factorial(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative integer");
  BigInt acc(1);
  for (std::int64_t i = 2; i <= n; ++i) acc *= static_cast<unsigned long>(i);
  return acc;
}

}  // namespace abelscroll
