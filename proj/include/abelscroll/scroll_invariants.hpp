// Enumerative invariants of an abelian scroll: degree, top Chern number of the
// normal bundle and the double point number, each computed in the truncated
// cohomology ring of A x P^{k-1} and cross-checked against closed forms.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "abelscroll/trunc_ring.hpp"

namespace abelscroll {

/// An engine computation disagreed with its closed form. Always a bug.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class InvalidScrollData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// How the polarization degree compares with the minimum n!*l needed for l
/// independent sections.
enum class LinearSystem { complete, incomplete, impossible };

struct ScrollData {
  int n = 1;   // dim A, also the irregularity of the scroll
  int k = 1;   // order of the translating subgroup G
  int l = 1;   // number of sections; ambient space is P^{l-1}
  BigInt cn;   // degree of the polarization, the integral of c^n over A

  /// Throws InvalidScrollData unless n >= 1, k >= 1, l >= n + k and cn >= 1.
  void validate() const;
  int scroll_dimension() const noexcept { return n + k - 1; }
  LinearSystem linear_system() const;
};

enum class Verdict { double_points_forced, consistent_with_smooth };

struct ScrollReport {
  ScrollData data;
  Rational deg_y;
  BigInt top_chern_coefficient;  // coefficient of c^n h^{k-1} in c(N)
  BigInt top_chern_normal;       // that coefficient times cn
  Rational double_point;
  Verdict verdict = Verdict::consistent_with_smooth;
  LinearSystem linear_system = LinearSystem::complete;
  bool degree_integral = true;
  bool double_point_integral = true;
  std::vector<std::string> warnings;
};

std::string to_string(Verdict v);
std::string to_string(LinearSystem s);

/// Coefficient of c^n h^{k-1} in (c+h)^{n+k-1}; ring result checked against
/// C(n+k-1, k-1).
BigInt hyperplane_power_coefficient(int n, int k);

/// Coefficient of c^n h^{k-1} in (1+c+h)^l (1+h)^{-k}; ring result checked
/// against C(l,n) * [h^{k-1}](1+h)^{l-n-k}, and additionally against
/// C(n+k-1,n) * C(2n+2k-1,n) when l = 2n+2k-1.
BigInt top_chern_normal(int n, int k, int l);

/// deg Y = C(n+k-1,k-1) * cn / k. Not necessarily integral.
Rational scroll_degree(const ScrollData& data);

/// (cn/k) * ((1/k) C(n+k-1,k-1)^2 cn - top_chern_normal(n,k,l)).
Rational double_point_number(const ScrollData& data);

/// n! * l, the smallest polarization degree with l sections.
BigInt rr_min_degree(int n, int l);

ScrollReport build_report(const ScrollData& data);

}  // namespace abelscroll
