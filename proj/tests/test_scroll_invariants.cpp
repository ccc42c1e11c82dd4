#include <doctest.h>

#include "abelscroll/scroll_invariants.hpp"

using namespace abelscroll;

namespace {

BigInt fact(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt choose(unsigned long a, unsigned long b) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), a, b);
  return r;
}

// Coefficient of c^n h^{k-1} in (1+c+h)^l (1+h)^{-k} by expanding both
// factors directly: trinomial coefficients times the signed series of
// (1+h)^{-k}.
BigInt brute_top_chern(int n, int k, int l) {
  BigInt total(0);
  for (int j = 0; j <= k - 1 && n + j <= l; ++j) {
    const BigInt trinomial = fact(static_cast<unsigned long>(l)) /
                             (fact(static_cast<unsigned long>(n)) * fact(static_cast<unsigned long>(j)) *
                              fact(static_cast<unsigned long>(l - n - j)));
    const int t = k - 1 - j;
    BigInt series = choose(static_cast<unsigned long>(k + t - 1), static_cast<unsigned long>(t));
    if (t % 2 == 1) series = -series;
    total += trinomial * series;
  }
  return total;
}

ScrollData data(int n, int k, int l, long cn) { return ScrollData{n, k, l, BigInt(cn)}; }

}  // namespace

TEST_CASE("hyperplane power coefficient") {
  CHECK(hyperplane_power_coefficient(2, 2) == 3);
  CHECK(hyperplane_power_coefficient(1, 2) == 2);
  for (int n = 1; n <= 8; ++n) CHECK(hyperplane_power_coefficient(n, 1) == 1);
  CHECK_THROWS_AS(hyperplane_power_coefficient(0, 2), InvalidScrollData);
}

TEST_CASE("top Chern coefficient of the normal bundle") {
  CHECK(top_chern_normal(1, 2, 5) == 10);
  CHECK(top_chern_normal(2, 2, 7) == 63);
  CHECK(top_chern_normal(3, 2, 9) == 336);
  CHECK_THROWS_AS(top_chern_normal(2, 2, 3), InvalidScrollData);
}

TEST_CASE("top Chern coefficient agrees with direct expansion for general l") {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 1; k <= 6; ++k) {
      for (int l = n + k; l <= 2 * n + 2 * k + 3; ++l) {
        CHECK(top_chern_normal(n, k, l) == brute_top_chern(n, k, l));
      }
    }
  }
}

TEST_CASE("scroll degree") {
  CHECK(scroll_degree(data(1, 2, 5, 5)) == 5);
  CHECK(scroll_degree(data(2, 2, 7, 14)) == 21);
  CHECK(scroll_degree(data(2, 3, 9, 18)) == 36);
  // Non-integral degrees are reported, not rejected.
  CHECK(scroll_degree(data(1, 2, 5, 7)) == 7);
  CHECK(scroll_degree(data(2, 2, 7, 15)) == Rational(45) / 2);
  CHECK(scroll_degree(data(1, 3, 7, 7)) == 7);
}

TEST_CASE("double point numbers") {
  CHECK(double_point_number(data(1, 2, 5, 5)) == 0);
  CHECK(double_point_number(data(2, 2, 7, 14)) == 0);
  CHECK(double_point_number(data(3, 2, 9, 54)) == 2592);
}

TEST_CASE("rr_min_degree") {
  CHECK(rr_min_degree(1, 5) == 5);
  CHECK(rr_min_degree(2, 7) == 14);
  CHECK(rr_min_degree(3, 9) == 54);
  CHECK_THROWS_AS(rr_min_degree(0, 9), InvalidScrollData);
}

TEST_CASE("build_report") {
  const ScrollReport a = build_report(data(2, 2, 7, 14));
  CHECK(a.verdict == Verdict::consistent_with_smooth);
  CHECK(a.deg_y == 21);
  CHECK(a.top_chern_coefficient == 63);
  CHECK(a.top_chern_normal == 63 * 14);
  CHECK(a.linear_system == LinearSystem::complete);
  CHECK(a.warnings.empty());

  const ScrollReport b = build_report(data(3, 2, 9, 54));
  CHECK(b.verdict == Verdict::double_points_forced);
  CHECK(b.double_point == 2592);

  const ScrollReport c = build_report(data(1, 2, 5, 5));
  CHECK(c.verdict == Verdict::consistent_with_smooth);
  CHECK(c.deg_y == 5);
  CHECK(to_string(c.verdict) == "consistent-with-smooth");
}

TEST_CASE("invalid scroll data is rejected") {
  CHECK_THROWS_AS(build_report(data(2, 2, 3, 14)), InvalidScrollData);
  CHECK_THROWS_AS(build_report(data(0, 2, 7, 14)), InvalidScrollData);
  CHECK_THROWS_AS(build_report(data(2, 0, 7, 14)), InvalidScrollData);
  CHECK_THROWS_AS(build_report(data(2, 2, 7, 0)), InvalidScrollData);
}

TEST_CASE("impossible and non-integral configurations are flagged") {
  const ScrollReport r = build_report(data(2, 2, 7, 13));
  CHECK(r.linear_system == LinearSystem::impossible);
  CHECK(!r.degree_integral);
  CHECK(r.warnings.size() >= 2);

  const ScrollReport proj = build_report(data(2, 2, 7, 16));
  CHECK(proj.linear_system == LinearSystem::incomplete);
}

TEST_CASE("k = 1 is the abelian variety itself") {
  const ScrollReport r = build_report(data(2, 1, 5, 10));
  CHECK(r.deg_y == 10);
  // n = 2, l = 5: a (1,5) surface in P^4 has vanishing double point number.
  CHECK(r.double_point == 0);
  CHECK(build_report(data(3, 1, 7, 42)).verdict == Verdict::double_points_forced);
}

TEST_CASE("half-dimensional complete scrolls: zero double points iff n <= 2") {
  for (int n = 1; n <= 7; ++n) {
    for (int k = 1; k <= 7; ++k) {
      const int l = 2 * n + 2 * k - 1;
      const ScrollData d{n, k, l, rr_min_degree(n, l)};
      const Rational dp = double_point_number(d);
      CHECK((dp == 0) == (n <= 2));
      CHECK(dp >= 0);
      // k^2 * [D] clears both 1/k factors.
      const Rational cleared = dp * Rational(k * k);
      CHECK(cleared.get_den() == 1);
    }
  }
}

TEST_CASE("double point number increases with cn above the minimum") {
  for (int n = 1; n <= 4; ++n) {
    for (int k = 1; k <= 4; ++k) {
      const int l = 2 * n + 2 * k - 1;
      const BigInt base = rr_min_degree(n, l);
      Rational previous = double_point_number(ScrollData{n, k, l, base});
      for (int extra = 1; extra <= 6; ++extra) {
        const Rational next = double_point_number(ScrollData{n, k, l, BigInt(base + extra)});
        CHECK(next > previous);
        CHECK(next > 0);
        previous = next;
      }
    }
  }
}
