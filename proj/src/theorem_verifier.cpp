#include "abelscroll/theorem_verifier.hpp"

#include <stdexcept>

#include "abelscroll/parallel.hpp"

namespace abelscroll {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::lt: return "lt";
    case Relation::eq: return "eq";
    case Relation::gt: return "gt";
  }
  return "?";
}

bool TermwiseRecord::all_hold() const {
  for (const auto& t : terms) {
    if (!t.holds) return false;
  }
  return true;
}

InequalityRecord inequality_check(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("inequality_check requires n, k >= 1");
  InequalityRecord rec;
  rec.n = n;
  rec.k = k;
  rec.lhs = binomial(n + k - 1, k - 1) * (2 * n + 2 * k - 1) * factorial(n);
  rec.rhs = binomial(2 * n + 2 * k - 1, n) * k;
  const int c = cmp(rec.lhs, rec.rhs);
  rec.relation = c < 0 ? Relation::lt : (c == 0 ? Relation::eq : Relation::gt);
  return rec;
}

TermwiseRecord termwise_check(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("termwise_check requires n, k >= 1");
  TermwiseRecord rec;
  rec.n = n;
  rec.k = k;
  if (n < 3) return rec;
  for (int l = 2; l <= n; ++l) {
    TermwiseTerm t;
    t.l = l;
    t.lhs = BigInt(n + k - l + 1) * l;
    t.rhs = BigInt(2 * n + 2 * k - l);
    t.holds = t.lhs >= t.rhs;
    t.n_plus_k_ge_l = n + k >= l;
    rec.terms.push_back(std::move(t));
  }
  return rec;
}

SweepResult sweep(SweepRange n_range, SweepRange k_range) {
  if (n_range.lo < 1 || k_range.lo < 1 || n_range.hi < n_range.lo || k_range.hi < k_range.lo) {
    throw std::invalid_argument("sweep ranges must be nonempty with lower bounds >= 1");
  }
  const auto n_count = static_cast<std::size_t>(n_range.hi - n_range.lo + 1);
  const auto k_count = static_cast<std::size_t>(k_range.hi - k_range.lo + 1);

  SweepResult out;
  out.records = parallel_map(n_count * k_count, [&](std::size_t idx) {
    const int n = n_range.lo + static_cast<int>(idx / k_count);
    const int k = k_range.lo + static_cast<int>(idx % k_count);
    return inequality_check(n, k);
  });
  for (const auto& r : out.records) {
    if (r.relation == Relation::eq) out.equality_set.emplace_back(r.n, r.k);
  }
  return out;
}

TermwiseSweepSummary termwise_sweep(SweepRange n_range, SweepRange k_range) {
  TermwiseSweepSummary s;
  for (int n = std::max(3, n_range.lo); n <= n_range.hi; ++n) {
    for (int k = k_range.lo; k <= k_range.hi; ++k) {
      const TermwiseRecord rec = termwise_check(n, k);
      ++s.pairs_checked;
      for (const auto& t : rec.terms) {
        ++s.terms_checked;
        s.all_terms_hold = s.all_terms_hold && t.holds;
        s.equivalence_holds = s.equivalence_holds && (t.holds == t.n_plus_k_ge_l);
      }
      if (rec.all_hold() && inequality_check(n, k).relation == Relation::lt) {
        s.reduction_sound = false;
      }
    }
  }
  return s;
}

int very_ample_bound(int n, int l) {
  if (n < 3) throw std::invalid_argument("very_ample_bound requires dim A = n >= 3");
  if (l <= 2 * n + 1) throw std::invalid_argument("very_ample_bound requires l > 2n + 1");
  // k < l - 2n, k odd.
  int k = l - 2 * n - 1;
  if (k % 2 == 0) --k;
  return k;
}

FamilyReport conjecture_family_report(int k_max) {
  if (k_max < 2) throw std::invalid_argument("conjecture_family_report requires k_max >= 2");
  FamilyReport out;
  for (int k = 2; k <= k_max; ++k) {
    ScrollData d;
    d.n = 2;
    d.k = k;
    d.l = 2 * k + 3;
    d.cn = BigInt(2 * (2 * k + 3));
    out.reports.push_back(build_report(d));
  }
  out.notes.push_back(
      "family uses cn = 2(2k+3): a linearly normal surface in P^{2N} with N = k+1 has type "
      "(1, 2N+1) and degree 4N+2; a degree of 4N is incompatible with linear normality");
  return out;
}

}  // namespace abelscroll
