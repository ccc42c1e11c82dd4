// Exact checks of the binomial inequality behind the irregularity bound for
// half-dimensional abelian scrolls, its termwise reduction, and derived
// very-ampleness bounds.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "abelscroll/scroll_invariants.hpp"

namespace abelscroll {

enum class Relation { lt, eq, gt };
std::string to_string(Relation r);

/// lhs = C(n+k-1,k-1) (2n+2k-1) n!, rhs = k C(2n+2k-1,n).
struct InequalityRecord {
  int n = 0;
  int k = 0;
  BigInt lhs;
  BigInt rhs;
  Relation relation = Relation::eq;
};

struct TermwiseTerm {
  int l = 0;
  BigInt lhs;  // (n+k-l+1) l
  BigInt rhs;  // 2n+2k-l
  bool holds = false;
  bool n_plus_k_ge_l = false;
};

struct TermwiseRecord {
  int n = 0;
  int k = 0;
  std::vector<TermwiseTerm> terms;  // l = 2..n, empty for n <= 2

  bool all_hold() const;
};

struct SweepRange {
  int lo = 1;
  int hi = 1;
};

struct SweepResult {
  std::vector<InequalityRecord> records;           // sorted by (n, k)
  std::vector<std::pair<int, int>> equality_set;   // pairs with relation eq
};

InequalityRecord inequality_check(int n, int k);
TermwiseRecord termwise_check(int n, int k);

/// Every (n, k) in the box; grid points may run in parallel, output order is
/// always (n, k) ascending.
SweepResult sweep(SweepRange n_range, SweepRange k_range);

/// Largest odd k with k < l - 2n. Requires n >= 3 and l > 2n + 1.
int very_ample_bound(int n, int l);

struct FamilyReport {
  std::vector<ScrollReport> reports;
  std::vector<std::string> notes;
};

/// Cyclic scrolls over (1, 2k+3)-polarized abelian surfaces in P^{2k+2}, one
/// per torsion order k = 2..k_max, with linearly normal cn = 2(2k+3).
FamilyReport conjecture_family_report(int k_max);

/// Summary of a termwise sweep over n >= 3.
struct TermwiseSweepSummary {
  std::size_t pairs_checked = 0;
  std::size_t terms_checked = 0;
  bool all_terms_hold = true;
  bool equivalence_holds = true;   // holds <=> n+k >= l, every term
  bool reduction_sound = true;     // all terms hold => relation in {eq, gt}
};

TermwiseSweepSummary termwise_sweep(SweepRange n_range, SweepRange k_range);

}  // namespace abelscroll
