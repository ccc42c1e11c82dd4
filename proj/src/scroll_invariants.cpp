#include "abelscroll/scroll_invariants.hpp"

#include <sstream>

namespace abelscroll {

namespace {

void require_positive(int n, int k) {
  if (n < 1 || k < 1) {
    throw InvalidScrollData("n and k must both be at least 1");
  }
}

// Ring generators for H*(A x P^{k-1}).
struct Generators {
  RingShape shape;
  TruncPoly one, c, h;
  Generators(int n, int k)
      : shape(n, k - 1),
        one(TruncPoly::one(shape)),
        c(TruncPoly::monomial(shape, 1, 0)),
        h(TruncPoly::monomial(shape, 0, 1)) {}
};

BigInt integral_coefficient(const TruncPoly& p, int i, int j) {
  const Rational q = p.coefficient(i, j);
  if (q.get_den() != 1) {
    throw InternalInconsistency("expected an integral coefficient, got " + q.get_str());
  }
  return q.get_num();
}

}  // namespace

void ScrollData::validate() const {
  require_positive(n, k);
  if (l < n + k) {
    std::ostringstream os;
    os << "l = " << l << " is below n + k = " << n + k
       << "; P^{l-1} cannot contain the scroll";
    throw InvalidScrollData(os.str());
  }
  if (cn < 1) throw InvalidScrollData("cn must be a positive integer");
}

LinearSystem ScrollData::linear_system() const {
  const BigInt minimum = rr_min_degree(n, l);
  if (cn == minimum) return LinearSystem::complete;
  return cn > minimum ? LinearSystem::incomplete : LinearSystem::impossible;
}

std::string to_string(Verdict v) {
  return v == Verdict::double_points_forced ? "double-points-forced" : "consistent-with-smooth";
}

std::string to_string(LinearSystem s) {
  switch (s) {
    case LinearSystem::complete: return "complete";
    case LinearSystem::incomplete: return "incomplete";
    case LinearSystem::impossible: return "impossible";
  }
  return "unknown";
}

BigInt hyperplane_power_coefficient(int n, int k) {
  require_positive(n, k);
  const Generators g(n, k);
  const TruncPoly power = power_signed(g.c + g.h, n + k - 1);
  const BigInt engine = integral_coefficient(power, n, k - 1);
  const BigInt closed = binomial(n + k - 1, k - 1);
  if (engine != closed) {
    throw InternalInconsistency("hyperplane power: ring gives " + engine.get_str() +
                                ", closed form gives " + closed.get_str());
  }
  return engine;
}

BigInt top_chern_normal(int n, int k, int l) {
  require_positive(n, k);
  if (l < n + k) throw InvalidScrollData("top_chern_normal requires l >= n + k");

  const Generators g(n, k);
  const TruncPoly total = power_signed(g.one + g.c + g.h, l) * power_signed(g.one + g.h, -k);
  const BigInt engine = integral_coefficient(total, n, k - 1);

  const BigInt general = binomial(l, n) * generalized_binomial(l - n - k, k - 1);
  if (engine != general) {
    throw InternalInconsistency("top Chern class: ring gives " + engine.get_str() +
                                ", C(l,n)*[h^{k-1}](1+h)^{l-n-k} gives " + general.get_str());
  }
  if (l == 2 * n + 2 * k - 1) {
    const BigInt half = binomial(n + k - 1, n) * binomial(2 * n + 2 * k - 1, n);
    if (engine != half) {
      throw InternalInconsistency("top Chern class: ring gives " + engine.get_str() +
                                  ", C(n+k-1,n)*C(2n+2k-1,n) gives " + half.get_str());
    }
  }
  return engine;
}

Rational scroll_degree(const ScrollData& data) {
  data.validate();
  Rational deg(hyperplane_power_coefficient(data.n, data.k) * data.cn, BigInt(data.k));
  deg.canonicalize();
  return deg;
}

Rational double_point_number(const ScrollData& data) {
  data.validate();
  const BigInt hyper = hyperplane_power_coefficient(data.n, data.k);
  const Rational k(data.k);
  const Rational cn(data.cn);
  const Rational self_intersection = Rational(hyper * hyper) * cn / k;
  const Rational chern(top_chern_normal(data.n, data.k, data.l));
  return cn / k * (self_intersection - chern);
}

BigInt rr_min_degree(int n, int l) {
  if (n < 1 || l < 1) throw InvalidScrollData("rr_min_degree requires n >= 1 and l >= 1");
  return factorial(n) * l;
}

ScrollReport build_report(const ScrollData& data) {
  data.validate();
  ScrollReport r;
  r.data = data;
  r.deg_y = scroll_degree(data);
  r.top_chern_coefficient = top_chern_normal(data.n, data.k, data.l);
  r.top_chern_normal = r.top_chern_coefficient * data.cn;
  r.double_point = double_point_number(data);
  r.verdict = r.double_point > 0 ? Verdict::double_points_forced : Verdict::consistent_with_smooth;
  r.linear_system = data.linear_system();
  r.degree_integral = r.deg_y.get_den() == 1;
  r.double_point_integral = r.double_point.get_den() == 1;

  if (!r.degree_integral) {
    r.warnings.push_back("scroll degree " + r.deg_y.get_str() +
                         " is not an integer; the configuration cannot be realized");
  }
  if (!r.double_point_integral) {
    r.warnings.push_back("double point number " + r.double_point.get_str() +
                         " is not an integer");
  }
  if (r.linear_system == LinearSystem::impossible) {
    r.warnings.push_back("cn = " + data.cn.get_str() + " is below n!*l = " +
                         rr_min_degree(data.n, data.l).get_str() +
                         "; the polarization has fewer than l sections");
  }
  return r;
}

}  // namespace abelscroll
