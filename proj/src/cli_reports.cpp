#include "abelscroll/cli_reports.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#ifndef ABELSCROLL_VERSION
#define ABELSCROLL_VERSION "0.0.0"
#endif

namespace abelscroll {

namespace {

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

BigInt bigint_from_json(const Json& j) { return BigInt(j.get<std::string>()); }

Rational rational_from_json(const Json& j) {
  Rational q(j.get<std::string>());
  q.canonicalize();
  return q;
}

std::vector<double> parse_doubles(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view piece(text.data() + start, comma - start);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size() ||
        !std::isfinite(v)) {
      throw UsageError(flag + ": cannot parse '" + std::string(piece) + "' as a number");
    }
    out.push_back(v);
    start = comma + 1;
  }
  return out;
}

std::vector<int> parse_ints(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  for (double v : parse_doubles(text, flag)) {
    if (v != std::floor(v) || std::abs(v) > 1e9) {
      throw UsageError(flag + ": expected integers, got '" + text + "'");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string json_scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::invariants: return "invariants";
    case Command::verify: return "verify";
    case Command::family: return "family";
    case Command::very_ample_bound: return "very-ample-bound";
    case Command::probe_elliptic: return "probe-elliptic";
    case Command::probe_surface: return "probe-surface";
  }
  return "?";
}

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::text: return "text";
  }
  return "?";
}

Eigen::Matrix2cd RunConfig::default_surface_period() {
  Eigen::Matrix2cd omega;
  omega << Complex(0.1113, 1.2071), Complex(0.2659, 0.3187),
           Complex(0.2659, 0.3187), Complex(-0.1731, 1.0843);
  return omega;
}

// ---------------------------------------------------------------------------
// JSON

Json to_json(const ScrollReport& r) {
  Json j;
  j["n"] = r.data.n;
  j["k"] = r.data.k;
  j["l"] = r.data.l;
  j["cn"] = r.data.cn.get_str();
  j["scroll_dimension"] = r.data.scroll_dimension();
  j["deg_y"] = r.deg_y.get_str();
  j["top_chern_coefficient"] = r.top_chern_coefficient.get_str();
  j["top_chern_normal"] = r.top_chern_normal.get_str();
  j["double_point"] = r.double_point.get_str();
  j["verdict"] = to_string(r.verdict);
  j["linear_system"] = to_string(r.linear_system);
  j["degree_integral"] = r.degree_integral;
  j["double_point_integral"] = r.double_point_integral;
  j["warnings"] = r.warnings;
  return j;
}

ScrollReport scroll_report_from_json(const Json& j) {
  ScrollReport r;
  r.data.n = j.at("n").get<int>();
  r.data.k = j.at("k").get<int>();
  r.data.l = j.at("l").get<int>();
  r.data.cn = bigint_from_json(j.at("cn"));
  r.deg_y = rational_from_json(j.at("deg_y"));
  r.top_chern_coefficient = bigint_from_json(j.at("top_chern_coefficient"));
  r.top_chern_normal = bigint_from_json(j.at("top_chern_normal"));
  r.double_point = rational_from_json(j.at("double_point"));
  const std::string verdict = j.at("verdict").get<std::string>();
  if (verdict == "double-points-forced") {
    r.verdict = Verdict::double_points_forced;
  } else if (verdict == "consistent-with-smooth") {
    r.verdict = Verdict::consistent_with_smooth;
  } else {
    throw std::invalid_argument("unknown verdict '" + verdict + "'");
  }
  const std::string system = j.at("linear_system").get<std::string>();
  if (system == "complete") {
    r.linear_system = LinearSystem::complete;
  } else if (system == "incomplete") {
    r.linear_system = LinearSystem::incomplete;
  } else if (system == "impossible") {
    r.linear_system = LinearSystem::impossible;
  } else {
    throw std::invalid_argument("unknown linear system '" + system + "'");
  }
  r.degree_integral = j.at("degree_integral").get<bool>();
  r.double_point_integral = j.at("double_point_integral").get<bool>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

Json to_json(const SweepResult& s) {
  Json records = Json::array();
  for (const auto& r : s.records) {
    records.push_back({{"n", r.n},
                       {"k", r.k},
                       {"lhs", r.lhs.get_str()},
                       {"rhs", r.rhs.get_str()},
                       {"relation", to_string(r.relation)}});
  }
  Json eq = Json::array();
  for (const auto& [n, k] : s.equality_set) eq.push_back(Json::array({n, k}));
  return Json{{"records", records}, {"equality_set", eq}};
}

SweepResult sweep_from_json(const Json& j) {
  SweepResult s;
  for (const auto& r : j.at("records")) {
    InequalityRecord rec;
    rec.n = r.at("n").get<int>();
    rec.k = r.at("k").get<int>();
    rec.lhs = bigint_from_json(r.at("lhs"));
    rec.rhs = bigint_from_json(r.at("rhs"));
    const std::string rel = r.at("relation").get<std::string>();
    if (rel == "lt") {
      rec.relation = Relation::lt;
    } else if (rel == "eq") {
      rec.relation = Relation::eq;
    } else if (rel == "gt") {
      rec.relation = Relation::gt;
    } else {
      throw std::invalid_argument("unknown relation '" + rel + "'");
    }
    s.records.push_back(std::move(rec));
  }
  for (const auto& p : j.at("equality_set")) {
    s.equality_set.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  }
  return s;
}

namespace {

Json counts_json(const ProbeCounts& c) {
  return Json{{"pass", c.pass}, {"fail", c.fail}, {"inconclusive", c.inconclusive}};
}

ProbeCounts counts_from_json(const Json& j) {
  ProbeCounts c;
  c.pass = j.at("pass").get<std::size_t>();
  c.fail = j.at("fail").get<std::size_t>();
  c.inconclusive = j.at("inconclusive").get<std::size_t>();
  return c;
}

}  // namespace

Json to_json(const ProbeSummary& s) {
  return Json{{"samples", s.samples},
              {"seed", std::to_string(s.seed)},
              {"group_order", s.group_order},
              {"fibre", counts_json(s.fibre)},
              {"cluster", counts_json(s.cluster)},
              {"immersion", counts_json(s.immersion)},
              {"total", counts_json(s.total)},
              {"min_margin", s.min_margin}};
}

ProbeSummary probe_summary_from_json(const Json& j) {
  ProbeSummary s;
  s.samples = j.at("samples").get<std::size_t>();
  s.seed = std::stoull(j.at("seed").get<std::string>());
  s.group_order = j.at("group_order").get<int>();
  s.fibre = counts_from_json(j.at("fibre"));
  s.cluster = counts_from_json(j.at("cluster"));
  s.immersion = counts_from_json(j.at("immersion"));
  s.total = counts_from_json(j.at("total"));
  s.min_margin = j.at("min_margin").get<double>();
  return s;
}

Json to_json(const ReportEnvelope& env) {
  return Json{{"version", env.version},     {"command", env.command},
              {"params", env.params},       {"payload", env.payload},
              {"warnings", env.warnings},   {"timestamp", env.timestamp}};
}

ReportEnvelope envelope_from_json(const Json& j) {
  ReportEnvelope env;
  env.version = j.at("version").get<std::string>();
  env.command = j.at("command").get<std::string>();
  env.params = j.at("params");
  env.payload = j.at("payload");
  env.warnings = j.at("warnings").get<std::vector<std::string>>();
  env.timestamp = j.value("timestamp", std::string());
  return env;
}

// ---------------------------------------------------------------------------
// CSV and text

std::string payload_csv(const Json& payload) {
  std::ostringstream os;
  const std::string kind = payload.at("kind").get<std::string>();
  if (kind == "sweep") {
    os << "n,k,lhs,rhs,relation\n";
    for (const auto& r : payload.at("records")) {
      os << r.at("n").get<int>() << ',' << r.at("k").get<int>() << ','
         << r.at("lhs").get<std::string>() << ',' << r.at("rhs").get<std::string>() << ','
         << r.at("relation").get<std::string>() << '\n';
    }
  } else if (kind == "scroll_report") {
    static const std::vector<std::string> cols = {
        "n",      "k",          "l",       "cn",           "deg_y", "top_chern_coefficient",
        "top_chern_normal", "double_point", "verdict", "linear_system"};
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& r : payload.at("reports")) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        os << (i ? "," : "") << csv_escape(json_scalar_text(r.at(cols[i])));
      }
      os << '\n';
    }
  } else if (kind == "probe") {
    const Json& s = payload.at("summary");
    os << "probe,pass,fail,inconclusive,min_margin\n";
    for (const char* name : {"fibre", "cluster", "immersion", "total"}) {
      const Json& c = s.at(name);
      os << name << ',' << c.at("pass").get<std::size_t>() << ','
         << c.at("fail").get<std::size_t>() << ',' << c.at("inconclusive").get<std::size_t>()
         << ',';
      if (std::string(name) == "total") os << Json(s.at("min_margin")).dump();
      os << '\n';
    }
  } else if (kind == "bound") {
    os << "n,l,max_odd_k\n"
       << payload.at("n").get<int>() << ',' << payload.at("l").get<int>() << ','
       << payload.at("max_odd_k").get<int>() << '\n';
  } else {
    throw std::invalid_argument("no CSV layout for payload kind '" + kind + "'");
  }
  return os.str();
}

namespace {

std::string payload_text(const ReportEnvelope& env) {
  std::ostringstream os;
  const Json& p = env.payload;
  const std::string kind = p.at("kind").get<std::string>();
  os << "abelscroll " << env.version << " " << env.command << "\n";
  if (kind == "scroll_report") {
    for (const auto& r : p.at("reports")) {
      os << "n=" << r.at("n") << " k=" << r.at("k") << " l=" << r.at("l")
         << " cn=" << r.at("cn").get<std::string>()
         << "  deg_Y=" << r.at("deg_y").get<std::string>()
         << "  c_top(N)=" << r.at("top_chern_normal").get<std::string>()
         << "  double_point=" << r.at("double_point").get<std::string>() << "  "
         << r.at("verdict").get<std::string>() << "\n";
    }
    if (p.contains("identity_checks")) {
      for (const auto& c : p.at("identity_checks")) {
        os << "  check " << c.at("name").get<std::string>() << ": "
           << (c.at("passed").get<bool>() ? "ok" : "MISMATCH") << "\n";
      }
    }
  } else if (kind == "sweep") {
    const Json& s = p.at("summary");
    os << "pairs: " << s.at("pairs") << "  eq: " << s.at("eq") << "  gt: " << s.at("gt")
       << "  lt: " << s.at("lt") << "\n";
    os << "equality only at n in {1,2}: " << (s.at("equality_matches").get<bool>() ? "yes" : "no")
       << "\n";
    os << "termwise: " << s.at("termwise_terms") << " terms, all hold: "
       << (s.at("termwise_all_hold").get<bool>() ? "yes" : "no") << ", equivalent to n+k>=l: "
       << (s.at("termwise_equivalence").get<bool>() ? "yes" : "no") << "\n";
  } else if (kind == "probe") {
    const Json& s = p.at("summary");
    for (const char* name : {"fibre", "cluster", "immersion", "total"}) {
      const Json& c = s.at(name);
      os << std::setw(10) << std::left << name << " pass " << c.at("pass") << "  fail "
         << c.at("fail") << "  inconclusive " << c.at("inconclusive") << "\n";
    }
    os << "min margin " << s.at("min_margin").dump() << "\n";
  } else if (kind == "bound") {
    os << "n=" << p.at("n") << " l=" << p.at("l") << "  largest odd k with k < l-2n: "
       << p.at("max_odd_k") << "\n";
  }
  for (const auto& w : env.warnings) os << "warning: " << w << "\n";
  return os.str();
}

}  // namespace

std::string render(const ReportEnvelope& env, OutputFormat format) {
  switch (format) {
    case OutputFormat::json: return to_json(env).dump(2) + "\n";
    case OutputFormat::csv: return payload_csv(env.payload);
    case OutputFormat::text: return payload_text(env);
  }
  return {};
}

void write_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << contents;
    f.flush();
    if (!f) throw std::runtime_error("failed writing " + tmp.string());
  }
  fs::rename(tmp, target);
}

// ---------------------------------------------------------------------------
// Commands

namespace {

Json identity_check(const std::string& name, bool passed, const std::string& detail) {
  return Json{{"name", name}, {"passed", passed}, {"detail", detail}};
}

int sign_of(const Rational& q) { return sgn(q); }
int sign_of(const BigInt& z) { return sgn(z); }

Json run_identity_checks(const ScrollData& d, const ScrollReport& report) {
  Json checks = Json::array();
  auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      checks.push_back(fn());
    } catch (const InternalInconsistency& e) {
      checks.push_back(identity_check(name, false, e.what()));
    }
  };

  guarded("hyperplane_power", [&] {
    const BigInt engine = hyperplane_power_coefficient(d.n, d.k);
    const BigInt closed = binomial(d.n + d.k - 1, d.k - 1);
    return identity_check("hyperplane_power", engine == closed,
                          "(c+h)^{n+k-1} = " + engine.get_str() + " c^n h^{k-1}; C(n+k-1,k-1) = " +
                              closed.get_str());
  });
  guarded("top_chern_general", [&] {
    const BigInt engine = top_chern_normal(d.n, d.k, d.l);
    const BigInt closed = binomial(d.l, d.n) * generalized_binomial(d.l - d.n - d.k, d.k - 1);
    return identity_check("top_chern_general", engine == closed,
                          "ring " + engine.get_str() + " vs C(l,n)[h^{k-1}](1+h)^{l-n-k} " +
                              closed.get_str());
  });
  if (d.l == 2 * d.n + 2 * d.k - 1) {
    guarded("top_chern_half_dimensional", [&] {
      const BigInt closed =
          binomial(d.n + d.k - 1, d.n) * binomial(2 * d.n + 2 * d.k - 1, d.n);
      return identity_check("top_chern_half_dimensional",
                            report.top_chern_coefficient == closed,
                            "ring " + report.top_chern_coefficient.get_str() +
                                " vs C(n+k-1,n)C(2n+2k-1,n) " + closed.get_str());
    });
    guarded("double_point_closed_form", [&] {
      const Rational k(d.k);
      const Rational cn(d.cn);
      const Rational h(binomial(d.n + d.k - 1, d.k - 1));
      const Rational t(binomial(d.n + d.k - 1, d.n) * binomial(2 * d.n + 2 * d.k - 1, d.n));
      const Rational closed = cn / k * (h * h * cn / k - t);
      return identity_check("double_point_closed_form", closed == report.double_point,
                            "engine " + report.double_point.get_str() + " vs closed form " +
                                closed.get_str());
    });
    if (d.cn == rr_min_degree(d.n, d.l)) {
      guarded("inequality_sign", [&] {
        const InequalityRecord rec = inequality_check(d.n, d.k);
        const bool agree = sign_of(report.double_point) == sign_of(BigInt(rec.lhs - rec.rhs));
        return identity_check("inequality_sign", agree,
                              "double point " + report.double_point.get_str() + ", lhs-rhs " +
                                  BigInt(rec.lhs - rec.rhs).get_str());
      });
    }
  }
  return checks;
}

RunOutcome run_invariants(const RunConfig& c, ReportEnvelope env) {
  ScrollData d{c.n, c.k, c.l, c.cn};
  env.params = Json{{"n", c.n},
                    {"k", c.k},
                    {"l", c.l},
                    {"cn", c.cn.get_str()},
                    {"paper_check", c.paper_check},
                    {"expect_smooth", c.expect_smooth}};
  ScrollReport report;
  try {
    report = build_report(d);
  } catch (const InvalidScrollData& e) {
    throw UsageError(e.what());
  }
  int exit_code = kExitOk;
  env.payload = Json{{"kind", "scroll_report"}, {"reports", Json::array({to_json(report)})}};
  env.warnings = report.warnings;
  if (c.paper_check) {
    const Json checks = run_identity_checks(d, report);
    env.payload["identity_checks"] = checks;
    for (const auto& chk : checks) {
      if (!chk.at("passed").get<bool>()) {
        exit_code = kExitCheckFailed;
        env.warnings.push_back("identity check failed: " + chk.at("name").get<std::string>());
      }
    }
  }
  if (c.expect_smooth && report.verdict == Verdict::double_points_forced) {
    exit_code = kExitCheckFailed;
    env.warnings.push_back("double points are forced: double point number " +
                           report.double_point.get_str() + " > 0");
  }
  return {std::move(env), exit_code};
}

RunOutcome run_verify(const RunConfig& c, ReportEnvelope env) {
  env.params = Json{{"n_min", c.n_range.lo},
                    {"n_max", c.n_range.hi},
                    {"k_min", c.k_range.lo},
                    {"k_max", c.k_range.hi}};
  const SweepResult s = sweep(c.n_range, c.k_range);
  const TermwiseSweepSummary tw = termwise_sweep(c.n_range, c.k_range);

  std::size_t eq = 0, gt = 0, lt = 0;
  bool matches = true;
  for (const auto& r : s.records) {
    const bool low = r.n <= 2;
    if (r.relation == Relation::eq) ++eq;
    if (r.relation == Relation::gt) ++gt;
    if (r.relation == Relation::lt) ++lt;
    const Relation predicted = low ? Relation::eq : Relation::gt;
    if (r.relation != predicted) matches = false;
  }

  env.payload = to_json(s);
  env.payload["kind"] = "sweep";
  env.payload["summary"] = Json{{"pairs", s.records.size()},
                                {"eq", eq},
                                {"gt", gt},
                                {"lt", lt},
                                {"equality_matches", matches},
                                {"termwise_pairs", tw.pairs_checked},
                                {"termwise_terms", tw.terms_checked},
                                {"termwise_all_hold", tw.all_terms_hold},
                                {"termwise_equivalence", tw.equivalence_holds},
                                {"termwise_sound", tw.reduction_sound}};
  const bool ok = matches && lt == 0 && tw.all_terms_hold && tw.equivalence_holds &&
                  tw.reduction_sound;
  if (!matches) env.warnings.push_back("equality set differs from n in {1,2}");
  if (!tw.all_terms_hold || !tw.equivalence_holds || !tw.reduction_sound) {
    env.warnings.push_back("termwise reduction check failed");
  }
  return {std::move(env), ok ? kExitOk : kExitCheckFailed};
}

RunOutcome run_family(const RunConfig& c, ReportEnvelope env) {
  env.params = Json{{"k_max", c.family_k_max}};
  FamilyReport fam;
  try {
    fam = conjecture_family_report(c.family_k_max);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Json reports = Json::array();
  bool ok = true;
  for (const auto& r : fam.reports) {
    reports.push_back(to_json(r));
    const BigInt expected_degree = BigInt(r.data.k + 1) * (2 * r.data.k + 3);
    if (r.double_point != 0 || r.deg_y != Rational(expected_degree)) {
      ok = false;
      env.warnings.push_back("family member k=" + std::to_string(r.data.k) +
                             " violates double_point = 0 or deg_Y = (k+1)(2k+3)");
    }
  }
  env.payload = Json{{"kind", "scroll_report"}, {"reports", reports}, {"notes", fam.notes}};
  for (const auto& note : fam.notes) env.warnings.push_back(note);
  return {std::move(env), ok ? kExitOk : kExitCheckFailed};
}

RunOutcome run_bound(const RunConfig& c, ReportEnvelope env) {
  env.params = Json{{"n", c.n}, {"l", c.l}};
  int bound = 0;
  try {
    bound = very_ample_bound(c.n, c.l);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  env.payload = Json{{"kind", "bound"}, {"n", c.n}, {"l", c.l}, {"max_odd_k", bound}};
  return {std::move(env), kExitOk};
}

Json torsion_json(const TorsionSpec& t, int genus) {
  if (genus == 1) return Json{{"a", t.a[0]}, {"b", t.b[0]}, {"order", t.order}};
  return Json{{"a", {t.a[0], t.a[1]}}, {"b", {t.b[0], t.b[1]}}, {"order", t.order}};
}

RunOutcome run_probe(const RunConfig& c, ReportEnvelope env) {
  const bool elliptic = c.command == Command::probe_elliptic;
  std::optional<ThetaEmbedding> emb;
  try {
    emb = elliptic ? ThetaEmbedding::elliptic(c.tau, c.m)
                   : ThetaEmbedding::abelian_surface(c.omega, c.d);
    if (c.kernel) emb = emb->with_kernel(*c.kernel);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::vector<TorsionSpec> torsion = c.torsion;
  if (torsion.empty()) {
    if (elliptic) {
      if (c.m % 2 == 0 || c.m < 5) {
        throw UsageError("--torsion is required unless m is odd and at least 5");
      }
      torsion.push_back(TorsionSpec{{1, 0}, {0, 0}, (c.m - 1) / 2});
    } else {
      torsion.push_back(TorsionSpec{{1, 0}, {0, 0}, 2});
    }
  }
  for (const auto& t : torsion) {
    if (t.order <= 0) throw UsageError("torsion order must be positive");
  }

  const std::vector<TorusPoint> group = generate_subgroup(*emb, torsion);
  RankPolicy policy;
  policy.tol = c.tol;

  Json torsion_list = Json::array();
  for (const auto& t : torsion) torsion_list.push_back(torsion_json(t, emb->genus()));
  env.params = Json{{"genus", emb->genus()},
                    {"sections", emb->section_count()},
                    {"torsion", torsion_list},
                    {"samples", c.samples},
                    {"seed", std::to_string(c.seed)},
                    {"tol", c.tol},
                    {"kernel", std::string(to_string(emb->kernel_isa()))}};
  if (elliptic) {
    env.params["m"] = c.m;
    env.params["tau"] = complex_json(c.tau);
  } else {
    env.params["d"] = c.d;
    env.params["omega"] = Json::array({Json::array({complex_json(c.omega(0, 0)),
                                                    complex_json(c.omega(0, 1))}),
                                       Json::array({complex_json(c.omega(1, 0)),
                                                    complex_json(c.omega(1, 1))})});
  }

  const int cluster_length = 2 * static_cast<int>(group.size());
  if (cluster_length > emb->section_count()) {
    throw UsageError("subgroup of order " + std::to_string(group.size()) +
                     " needs clusters of length " + std::to_string(cluster_length) +
                     ", more than the " + std::to_string(emb->section_count()) + " sections");
  }
  if (cluster_length > emb->section_count() - 1) {
    env.warnings.push_back("cluster length " + std::to_string(cluster_length) +
                           " exceeds sections - 1; full rank is not expected on every sample");
  }

  const ProbeSummary summary = scroll_smoothness_probe(*emb, group, c.samples, c.seed, policy);
  env.payload = Json{{"kind", "probe"}, {"summary", to_json(summary)}};
  return {std::move(env), probe_exit_code(summary)};
}

}  // namespace

int probe_exit_code(const ProbeSummary& summary) {
  if (summary.total.fail > 0) return kExitCheckFailed;
  if (summary.total.inconclusive > 0) return kExitInconclusive;
  return kExitOk;
}

RunOutcome run(const RunConfig& config) {
  ReportEnvelope env;
  env.version = ABELSCROLL_VERSION;
  env.command = to_string(config.command);
  env.timestamp = iso_timestamp();
  switch (config.command) {
    case Command::invariants: return run_invariants(config, std::move(env));
    case Command::verify: return run_verify(config, std::move(env));
    case Command::family: return run_family(config, std::move(env));
    case Command::very_ample_bound: return run_bound(config, std::move(env));
    case Command::probe_elliptic:
    case Command::probe_surface: return run_probe(config, std::move(env));
  }
  throw UsageError("unknown command");
}

// ---------------------------------------------------------------------------
// Argument parsing

RunConfig parse_args(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Exact and numerical checks for abelian scrolls in projective space", "abelscroll"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format;
  std::string output;
  app.add_option("--format", format, "Output format: json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output,-o", output, "Output file (default: stdout or $" +
                                            std::string(kOutputDirEnv) + "/<command>.<ext>)");

  std::string cn_text = "14";
  auto* inv = app.add_subcommand("invariants", "Degree, top Chern number and double point number");
  inv->add_option("--n", cfg.n, "Dimension of the abelian variety")->required();
  inv->add_option("--k", cfg.k, "Order of the subgroup")->required();
  inv->add_option("--l", cfg.l, "Number of sections (ambient P^{l-1})")->required();
  inv->add_option("--cn", cn_text, "Degree of the polarization (decimal integer)")->required();
  inv->add_flag("--paper-check", cfg.paper_check,
                "Also assert the closed-form identities for these parameters");
  inv->add_flag("--expect-smooth", cfg.expect_smooth,
                "Exit 1 if the double point number forces double points");

  auto* ver = app.add_subcommand("verify", "Exact sweep of the binomial inequality");
  ver->add_option("--n-min", cfg.n_range.lo)->capture_default_str();
  ver->add_option("--n-max", cfg.n_range.hi)->capture_default_str();
  ver->add_option("--k-min", cfg.k_range.lo)->capture_default_str();
  ver->add_option("--k-max", cfg.k_range.hi)->capture_default_str();

  auto* fam = app.add_subcommand("family", "Invariants of cyclic scrolls over (1,2k+3) surfaces");
  fam->add_option("--k-max", cfg.family_k_max, "Largest torsion order")->capture_default_str();

  auto* bound = app.add_subcommand("very-ample-bound",
                                   "Largest odd k for which an n-fold with l sections can be "
                                   "k-very ample");
  bound->add_option("--n", cfg.n)->required();
  bound->add_option("--l", cfg.l)->required();

  std::string tau_text = "0,1";
  std::vector<std::string> torsion_text;
  std::string omega_text;
  std::string kernel_text = "auto";
  std::size_t samples = 0;

  auto* pe = app.add_subcommand("probe-elliptic", "Rank probes on an elliptic normal curve scroll");
  pe->add_option("--m", cfg.m, "Degree of the elliptic normal curve")->capture_default_str();
  pe->add_option("--tau", tau_text, "Period as re,im")->capture_default_str();
  pe->add_option("--torsion", torsion_text,
                 "Torsion generator a,b,order for (a + b tau)/order; repeatable");

  auto* ps = app.add_subcommand("probe-surface", "Rank probes on a (1,d) abelian surface scroll");
  ps->add_option("--d", cfg.d, "Polarization type (1,d)")->capture_default_str();
  ps->add_option("--omega", omega_text, "Period matrix as re11,im11,re12,im12,re22,im22");
  ps->add_option("--torsion", torsion_text,
                 "Torsion generator a1,a2,b1,b2,order for (D a + Omega b)/order; repeatable");

  for (CLI::App* p : {pe, ps}) {
    p->add_option("--samples", samples, "Number of sampled base points");
    p->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
    p->add_option("--tol", cfg.tol, "Rank threshold on sigma_i / sigma_1")->capture_default_str();
    p->add_option("--kernel", kernel_text, "Lattice-sum kernel: auto, scalar or avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    throw UsageError(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n\n" + app.help());
  }

  if (inv->parsed()) {
    cfg.command = Command::invariants;
    if (cn_text.empty() || cfg.cn.set_str(cn_text, 10) != 0) {
      throw UsageError("--cn: '" + cn_text + "' is not a decimal integer");
    }
  } else if (ver->parsed()) {
    cfg.command = Command::verify;
    cfg.format = OutputFormat::csv;
    if (cfg.n_range.lo < 1 || cfg.k_range.lo < 1 || cfg.n_range.hi < cfg.n_range.lo ||
        cfg.k_range.hi < cfg.k_range.lo) {
      throw UsageError("verify ranges must satisfy 1 <= min <= max");
    }
  } else if (fam->parsed()) {
    cfg.command = Command::family;
  } else if (bound->parsed()) {
    cfg.command = Command::very_ample_bound;
  } else if (pe->parsed() || ps->parsed()) {
    const bool elliptic = pe->parsed();
    cfg.command = elliptic ? Command::probe_elliptic : Command::probe_surface;
    cfg.samples = samples > 0 ? samples : (elliptic ? 200 : 100);
    if (!(cfg.tol > 0.0 && cfg.tol < 1.0)) throw UsageError("--tol must lie in (0, 1)");
    if (kernel_text == "scalar") cfg.kernel = KernelIsa::scalar;
    if (kernel_text == "avx2") cfg.kernel = KernelIsa::avx2;
    if (cfg.kernel && !kernel_available(*cfg.kernel)) {
      throw UsageError("kernel '" + kernel_text + "' is not available on this machine");
    }
    if (elliptic) {
      const auto v = parse_doubles(tau_text, "--tau");
      if (v.size() != 2) throw UsageError("--tau expects re,im");
      cfg.tau = Complex(v[0], v[1]);
    } else if (!omega_text.empty()) {
      const auto v = parse_doubles(omega_text, "--omega");
      if (v.size() != 6) throw UsageError("--omega expects re11,im11,re12,im12,re22,im22");
      cfg.omega << Complex(v[0], v[1]), Complex(v[2], v[3]), Complex(v[2], v[3]),
          Complex(v[4], v[5]);
    }
    for (const auto& t : torsion_text) {
      const auto v = parse_ints(t, "--torsion");
      TorsionSpec spec;
      if (elliptic) {
        if (v.size() != 3) throw UsageError("--torsion expects a,b,order");
        spec = TorsionSpec{{v[0], 0}, {v[1], 0}, v[2]};
      } else {
        if (v.size() != 5) throw UsageError("--torsion expects a1,a2,b1,b2,order");
        spec = TorsionSpec{{v[0], v[1]}, {v[2], v[3]}, v[4]};
      }
      if (spec.order <= 0) throw UsageError("--torsion order must be positive");
      cfg.torsion.push_back(spec);
    }
  }

  if (!format.empty()) {
    cfg.format = format == "json" ? OutputFormat::json
                 : format == "csv" ? OutputFormat::csv
                                   : OutputFormat::text;
  }
  if (!output.empty()) cfg.output_path = output;
  return cfg;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(argc, argv);
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  RunOutcome outcome;
  try {
    outcome = run(cfg);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InternalInconsistency& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kExitCheckFailed;
  }

  const std::string text = render(outcome.envelope, cfg.format);
  std::optional<std::string> path = cfg.output_path;
  if (!path) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      const std::string ext = cfg.format == OutputFormat::text ? "txt" : to_string(cfg.format);
      path = (std::filesystem::path(dir) / (to_string(cfg.command) + "." + ext)).string();
    }
  }
  if (path) {
    try {
      write_atomic(*path, text);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  } else {
    out << text;
  }
  for (const auto& w : outcome.envelope.warnings) err << "warning: " << w << "\n";
  return outcome.exit_code;
}

}  // namespace abelscroll
