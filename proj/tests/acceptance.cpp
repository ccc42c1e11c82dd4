// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// runtime next to its budget. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "abelscroll/cli_reports.hpp"
#include "abelscroll/scroll_invariants.hpp"
#include "abelscroll/theorem_verifier.hpp"
#include "abelscroll/theta_geometry.hpp"
#include "abelscroll/trunc_ring.hpp"

using namespace abelscroll;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;  // 0: no runtime limit
  std::function<Outcome()> body;
};

Json run_cli_json(std::vector<std::string> args, int& code) {
  args.insert(args.begin(), "abelscroll");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return Json::parse(out.str());
}

BigInt gmp_binomial(unsigned long a, unsigned long b) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), a, b);
  return r;
}

Outcome degree_21_example() {
  Outcome o;
  int code = -1;
  const Json j = run_cli_json({"invariants", "--n", "2", "--k", "2", "--l", "7", "--cn", "14"}, code);
  const Json& rep = j.at("payload").at("reports").at(0);
  o.require(code == kExitOk, "exit code " + std::to_string(code));
  o.require(rep.at("deg_y") == "21", "deg_Y = " + rep.at("deg_y").get<std::string>());
  o.require(rep.at("double_point") == "0",
            "double point = " + rep.at("double_point").get<std::string>());
  o.detail = o.ok ? "deg_Y = 21, double_point = 0" : o.detail;
  return o;
}

Outcome equality_classification() {
  Outcome o;
  std::size_t checked = 0;
  auto check = [&](SweepRange n, SweepRange k) {
    for (const auto& r : sweep(n, k).records) {
      ++checked;
      const Relation want = r.n <= 2 ? Relation::eq : Relation::gt;
      o.require(r.relation == want,
                "(n,k) = (" + std::to_string(r.n) + "," + std::to_string(r.k) + ") misclassified");
    }
  };
  check({1, 60}, {1, 60});
  check({1, 2}, {1, 200});
  if (o.ok) o.detail = std::to_string(checked) + " pairs, eq exactly at n in {1,2}";
  return o;
}

Outcome engine_closed_form() {
  Outcome o;
  int pairs = 0;
  for (int n = 1; n <= 30; ++n) {
    for (int k = 1; k <= 30; ++k) {
      const int l = 2 * n + 2 * k - 1;
      const RingShape shape(n, k - 1);
      const TruncPoly c = TruncPoly::monomial(shape, 1, 0);
      const TruncPoly h = TruncPoly::monomial(shape, 0, 1);
      const TruncPoly one = TruncPoly::one(shape);
      const TruncPoly total = power_signed(one + c + h, l) * power_signed(one + h, -k);
      const Rational engine = total.coefficient(n, k - 1);
      const BigInt closed = gmp_binomial(static_cast<unsigned long>(n + k - 1),
                                         static_cast<unsigned long>(n)) *
                            gmp_binomial(static_cast<unsigned long>(l), static_cast<unsigned long>(n));
      o.require(engine == Rational(closed),
                "(n,k) = (" + std::to_string(n) + "," + std::to_string(k) + "): ring " +
                    engine.get_str() + " vs " + closed.get_str());
      o.require(top_chern_normal(n, k, l) == closed,
                "top_chern_normal disagrees at (" + std::to_string(n) + "," + std::to_string(k) + ")");
      ++pairs;
    }
  }
  if (o.ok) o.detail = std::to_string(pairs) + " (n,k) pairs agree exactly";
  return o;
}

Outcome double_point_numbers() {
  Outcome o;
  struct Case {
    int n, k, l;
    long cn;
    long expected;
  };
  for (const Case c : {Case{1, 2, 5, 5, 0}, Case{2, 2, 7, 14, 0}, Case{3, 2, 9, 54, 2592}}) {
    const Rational dp = double_point_number(ScrollData{c.n, c.k, c.l, BigInt(c.cn)});
    o.require(dp == Rational(c.expected), "[D](" + std::to_string(c.n) + "," + std::to_string(c.k) +
                                              "," + std::to_string(c.l) + "," +
                                              std::to_string(c.cn) + ") = " + dp.get_str());
  }
  if (o.ok) o.detail = "[D] = 0, 0, 2592";
  return o;
}

Outcome termwise_soundness() {
  Outcome o;
  // Direct arithmetic over every term, independent of the verifier.
  long terms = 0;
  for (long n = 3; n <= 60; ++n) {
    for (long k = 1; k <= 60; ++k) {
      for (long l = 2; l <= n; ++l) {
        ++terms;
        const bool holds = (n + k - l + 1) * l >= 2 * n + 2 * k - l;
        o.require(holds, "term fails at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                             " l=" + std::to_string(l));
        o.require(holds == (n + k >= l), "equivalence fails at n=" + std::to_string(n));
      }
    }
  }
  const TermwiseSweepSummary s = termwise_sweep({3, 60}, {1, 60});
  o.require(s.all_terms_hold, "verifier reports a failing term");
  o.require(s.equivalence_holds, "verifier reports equivalence failure");
  o.require(s.reduction_sound, "verifier reports unsound reduction");
  o.require(static_cast<long>(s.terms_checked) == terms,
            "verifier checked " + std::to_string(s.terms_checked) + " terms, expected " +
                std::to_string(terms));
  if (o.ok) o.detail = std::to_string(terms) + " terms hold, equivalent to n+k >= l";
  return o;
}

Outcome conjecture_family() {
  Outcome o;
  const FamilyReport fam = conjecture_family_report(10);
  o.require(fam.reports.size() == 9, "expected k = 2..10");
  for (const auto& r : fam.reports) {
    const int k = r.data.k;
    o.require(r.double_point == 0, "k=" + std::to_string(k) + ": double point " +
                                       r.double_point.get_str());
    o.require(r.deg_y == Rational((k + 1) * (2 * k + 3)),
              "k=" + std::to_string(k) + ": deg_Y " + r.deg_y.get_str());
  }
  if (o.ok) o.detail = "k = 2..10: [D] = 0, deg_Y = (k+1)(2k+3)";
  return o;
}

Outcome elliptic_probes() {
  Outcome o;
  struct Case {
    int m, order;
    std::size_t samples;
  };
  std::ostringstream summary;
  for (const Case c : {Case{5, 2, 200}, Case{7, 3, 100}, Case{9, 4, 100}}) {
    const ThetaEmbedding emb = ThetaEmbedding::elliptic(Complex(0.0, 1.0), c.m);
    const TorsionSpec gen{{1, 0}, {0, 0}, c.order};
    const auto group = generate_subgroup(emb, std::span<const TorsionSpec>(&gen, 1));
    const ProbeSummary s = scroll_smoothness_probe(emb, group, c.samples, kDefaultSeed);
    const std::string tag = "(m,|G|) = (" + std::to_string(c.m) + "," + std::to_string(c.order) + ")";
    o.require(s.total.fail == 0, tag + ": " + std::to_string(s.total.fail) + " fails");
    o.require(s.total.inconclusive == 0,
              tag + ": " + std::to_string(s.total.inconclusive) + " inconclusive");
    o.require(s.min_margin > 1e-6, tag + ": min margin " + std::to_string(s.min_margin));
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%d:%zu/%.1e", summary.tellp() > 0 ? " " : "", c.m,
                  s.total.pass, s.min_margin);
    summary << buf;
  }
  if (o.ok) o.detail = "m:passes/min margin " + summary.str();
  return o;
}

Outcome theta_numerics() {
  Outcome o;
  constexpr double kPi = std::numbers::pi;
  const Complex i(0.0, 1.0);
  const int m = 5;
  const ThetaEmbedding emb = ThetaEmbedding::elliptic(i, m);
  std::mt19937_64 rng(kDefaultSeed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto scaled = [](const RawEvaluation& e, Complex ref) -> CVector {
    return e.values * std::exp(e.log_scale - ref);
  };
  auto rel = [](const CVector& a, const CVector& b) {
    return (a - b).norm() / std::max(a.norm(), b.norm());
  };
  double worst_period = 0.0;
  double worst_derivative = 0.0;
  const double h = 1e-5;
  for (int sample = 0; sample < 50; ++sample) {
    const Complex z = u(rng) + u(rng) * i;
    const TorusPoint p{{z, 0.0}};
    const RawEvaluation base = emb.evaluate_raw(p, std::array<Complex, 2>{Complex(1.0), 0.0});

    const RawEvaluation shifted1 = emb.evaluate_raw(TorusPoint{{z + 1.0, 0.0}});
    worst_period = std::max(worst_period, rel(shifted1.values, scaled(base, shifted1.log_scale)));

    const RawEvaluation shifted_tau = emb.evaluate_raw(TorusPoint{{z + i, 0.0}});
    const Complex factor = -i * kPi * static_cast<double>(m) * i - 2.0 * i * kPi * double(m) * z;
    worst_period = std::max(worst_period,
                            rel(shifted_tau.values, scaled(base, shifted_tau.log_scale - factor)));

    const CVector plus = scaled(emb.evaluate_raw(TorusPoint{{z + h, 0.0}}), base.log_scale);
    const CVector minus = scaled(emb.evaluate_raw(TorusPoint{{z - h, 0.0}}), base.log_scale);
    worst_derivative = std::max(worst_derivative, rel(*base.derivative, (plus - minus) / (2.0 * h)));
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max periodicity residual %.2e, max derivative error %.2e",
                worst_period, worst_derivative);
  o.require(worst_period < 1e-9, buf);
  o.require(worst_derivative < 1e-6, buf);
  o.detail = buf;
  return o;
}

Outcome ring_properties() {
  Outcome o;
  std::mt19937_64 rng(kDefaultSeed);
  std::uniform_int_distribution<int> cap(0, 4);
  std::uniform_int_distribution<int> count(0, 6);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  auto random_poly = [&](RingShape s, bool unit) {
    std::uniform_int_distribution<int> ci(0, s.c_cap);
    std::uniform_int_distribution<int> hi(0, s.h_cap);
    std::vector<Term> terms;
    const int n = count(rng);
    for (int t = 0; t < n; ++t) terms.push_back(Term{ci(rng), hi(rng), Rational(num(rng), den(rng))});
    if (unit) {
      int c0 = num(rng);
      terms.push_back(Term{0, 0, Rational(c0 == 0 ? 1 : c0, den(rng))});
    }
    TruncPoly p = TruncPoly::make(s, terms);
    if (unit && !p.is_unit()) p = p + TruncPoly::one(s);
    return p;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const RingShape s(cap(rng), cap(rng));
    const TruncPoly a = random_poly(s, false);
    const TruncPoly b = random_poly(s, false);
    const TruncPoly c = random_poly(s, false);
    const TruncPoly u = random_poly(s, true);
    const std::string tag = "case " + std::to_string(trial);
    o.require(a * b == b * a, tag + ": commutativity");
    o.require((a * b) * c == a * (b * c), tag + ": associativity");
    o.require(a * (b + c) == a * b + a * c, tag + ": distributivity");
    o.require(u.is_unit() && u * inverse(u) == TruncPoly::one(s), tag + ": unit inversion");
  }
  if (o.ok) o.detail = "1000 cases exact";
  return o;
}

Outcome very_ample_bound_cli() {
  Outcome o;
  int code13 = -1, code8 = -1;
  const Json a = run_cli_json({"very-ample-bound", "--n", "3", "--l", "13"}, code13);
  const Json b = run_cli_json({"very-ample-bound", "--n", "3", "--l", "8"}, code8);
  const int k13 = a.at("payload").at("max_odd_k").get<int>();
  const int k8 = b.at("payload").at("max_odd_k").get<int>();
  o.require(code13 == kExitOk && code8 == kExitOk, "nonzero exit code");
  o.require(k13 == 5, "(3,13) gave " + std::to_string(k13));
  o.require(k8 == 1, "(3,8) gave " + std::to_string(k8));
  if (o.ok) o.detail = "(3,13) -> 5, (3,8) -> 1";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "degree-21 example via CLI", 1.0, degree_21_example},
      {2, "equality classification sweep", 10.0, equality_classification},
      {3, "ring extraction vs closed form, n,k <= 30", 30.0, engine_closed_form},
      {4, "double point numbers", 0.0, double_point_numbers},
      {5, "termwise reduction soundness", 0.0, termwise_soundness},
      {6, "conjecture family k = 2..10", 0.0, conjecture_family},
      {7, "elliptic scroll probes", 60.0, elliptic_probes},
      {8, "theta quasi-periodicity and derivatives", 0.0, theta_numerics},
      {9, "ring property suite", 5.0, ring_properties},
      {10, "very-ample bound via CLI", 0.0, very_ample_bound_cli},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing;
    char buf[64];
    if (c.budget_s > 0.0) {
      std::snprintf(buf, sizeof buf, "%.2fs / %.0fs", secs, c.budget_s);
      if (secs >= c.budget_s) {
        o.ok = false;
        o.detail += " (over time budget)";
      }
    } else {
      std::snprintf(buf, sizeof buf, "%.2fs", secs);
    }
    timing = buf;
    if (!o.ok) ++failures;
    std::printf("[%s] criterion %2d: %-42s %-16s %s\n", o.ok ? "PASS" : "FAIL", c.id,
                c.title.c_str(), timing.c_str(), o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
