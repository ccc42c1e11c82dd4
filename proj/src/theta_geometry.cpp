#include "abelscroll/theta_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "abelscroll/parallel.hpp"

namespace abelscroll {

namespace {

using std::numbers::pi;
constexpr Complex kI(0.0, 1.0);

// Terms smaller than e^{-40} times the peak term are dropped.
constexpr double kTailExponent = 40.0;
constexpr double kMaxWindowGenus1 = 256.0;
constexpr double kMaxWindowGenus2 = 48.0;

struct TermBuffers {
  std::vector<double> log_mag, phase, w1, w2;

  void clear() {
    log_mag.clear();
    phase.clear();
    w1.clear();
    w2.clear();
  }
  void push(Complex exponent, double weight1, double weight2) {
    log_mag.push_back(exponent.real());
    phase.push_back(exponent.imag());
    w1.push_back(weight1);
    w2.push_back(weight2);
  }
  LatticeTerms view() const { return LatticeTerms{log_mag, phase, w1, w2}; }
};

bool is_finite(const CVector& v) { return v.allFinite(); }

}  // namespace

ThetaEmbedding ThetaEmbedding::elliptic(Complex tau, int m) {
  if (m < 3) throw ConfigurationError("elliptic embedding needs degree m >= 3");
  if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag())) {
    throw ConfigurationError("tau must lie in the upper half plane");
  }
  ThetaEmbedding e;
  e.genus_ = 1;
  e.degree_ = m;
  e.omega_(0, 0) = tau;
  const double im_scaled = m * tau.imag();
  e.window_ = std::sqrt(kTailExponent / (pi * im_scaled));
  if (e.window_ > kMaxWindowGenus1) {
    std::ostringstream os;
    os << "Im(m*tau) = " << im_scaled << " is too small to truncate the theta series";
    throw ConfigurationError(os.str());
  }
  e.truncation_radius_ = static_cast<int>(std::ceil(e.window_));
  e.isa_ = active_kernel_isa();
  e.kernel_ = active_kernel();
  return e;
}

ThetaEmbedding ThetaEmbedding::abelian_surface(const Eigen::Matrix2cd& omega, int d) {
  if (d < 3) throw ConfigurationError("(1,d) embedding needs d >= 3");
  if (!omega.allFinite()) throw ConfigurationError("period matrix has non-finite entries");
  if (std::abs(omega(0, 1) - omega(1, 0)) > 1e-14 * (1.0 + omega.norm())) {
    throw ConfigurationError("period matrix must be symmetric");
  }
  const Eigen::Matrix2d im = omega.imag();
  const double det = im(0, 0) * im(1, 1) - im(0, 1) * im(1, 0);
  if (!(im(0, 0) > 0.0) || !(det > 0.0)) {
    throw ConfigurationError("imaginary part of the period matrix must be positive definite");
  }
  ThetaEmbedding e;
  e.genus_ = 2;
  e.degree_ = d;
  e.omega_ = omega;
  e.omega_(1, 0) = omega(0, 1);
  e.im_inverse_ = im.inverse();
  const double half_width =
      std::sqrt(kTailExponent / pi * std::max(e.im_inverse_(0, 0), e.im_inverse_(1, 1)));
  e.window_ = half_width;
  if (e.window_ > kMaxWindowGenus2) {
    throw ConfigurationError("Im(Omega) is too small to truncate the theta series");
  }
  e.truncation_radius_ = static_cast<int>(std::ceil(e.window_));
  e.isa_ = active_kernel_isa();
  e.kernel_ = active_kernel();
  return e;
}

ThetaEmbedding ThetaEmbedding::with_kernel(KernelIsa isa) const {
  ThetaEmbedding copy = *this;
  copy.kernel_ = select_kernel(isa);
  copy.isa_ = isa;
  return copy;
}

TorusPoint ThetaEmbedding::from_lattice_coordinates(std::span<const double> s,
                                                    std::span<const double> t) const {
  if (s.size() < static_cast<std::size_t>(genus_) || t.size() < static_cast<std::size_t>(genus_)) {
    throw std::invalid_argument("lattice coordinates shorter than the genus");
  }
  if (genus_ == 1) return TorusPoint{{s[0] + t[0] * tau(), Complex(0.0)}};
  const Eigen::Vector2cd z =
      Eigen::Vector2cd(s[0], s[1] * degree_) + omega_ * Eigen::Vector2cd(t[0], t[1]);
  return TorusPoint{{z(0), z(1)}};
}

std::vector<double> ThetaEmbedding::lattice_coordinates(const TorusPoint& p) const {
  if (genus_ == 1) {
    const double t = p.z[0].imag() / tau().imag();
    return {p.z[0].real() - t * tau().real(), t};
  }
  const Eigen::Vector2d im_z(p.z[0].imag(), p.z[1].imag());
  const Eigen::Vector2d t = im_inverse_ * im_z;
  const Eigen::Vector2d re = Eigen::Vector2d(p.z[0].real(), p.z[1].real()) - omega_.real() * t;
  return {re(0), re(1) / degree_, t(0), t(1)};
}

bool ThetaEmbedding::in_lattice(const TorusPoint& p, double tol) const {
  for (double c : lattice_coordinates(p)) {
    if (std::abs(c - std::round(c)) > tol) return false;
  }
  return true;
}

RawEvaluation ThetaEmbedding::evaluate_raw(const TorusPoint& z,
                                           std::optional<std::array<Complex, 2>> tangent) const {
  const int count = degree_;
  RawEvaluation out;
  out.values = CVector(count);
  if (tangent) out.derivative = CVector(count);

  TermBuffers buf;
  if (genus_ == 1) {
    const Complex mt = static_cast<double>(degree_) * tau();
    const Complex mz = static_cast<double>(degree_) * z.z[0];
    const double x0 = -mz.imag() / mt.imag();
    out.log_scale = kI * pi * (mt * x0 * x0 + 2.0 * mz * x0);
    for (int j = 0; j < count; ++j) {
      const double c = static_cast<double>(j) / degree_;
      const auto r_lo = static_cast<long>(std::ceil(x0 - window_ - c));
      const auto r_hi = static_cast<long>(std::floor(x0 + window_ - c));
      buf.clear();
      for (long r = r_lo; r <= r_hi; ++r) {
        const double x = static_cast<double>(r) + c;
        const double dx = x - x0;
        // exponent relative to the peak: pi i dx (m tau (x + x0) + 2 m z)
        buf.push(kI * pi * dx * (mt * (x + x0) + 2.0 * mz), 2.0 * pi * degree_ * x, 0.0);
      }
      const LatticeSums s = kernel_(buf.view());
      out.values(j) = s.value;
      if (tangent) out.derivative->coeffRef(j) = kI * s.w1 * (*tangent)[0];
      out.magnitude = std::max(out.magnitude, s.magnitude);
    }
  } else {
    const Eigen::Vector2cd zv(z.z[0], z.z[1]);
    const Eigen::Vector2d x0 = -(im_inverse_ * zv.imag());
    const Eigen::Vector2cd x0c = x0.cast<Complex>();
    out.log_scale = kI * pi * (x0c.dot(omega_ * x0c) + 2.0 * x0c.dot(zv));
    const Eigen::Matrix2d im = omega_.imag();
    const double w0 = std::sqrt(kTailExponent / pi * im_inverse_(0, 0));
    const double w1 = std::sqrt(kTailExponent / pi * im_inverse_(1, 1));
    for (int j = 0; j < count; ++j) {
      const double c1 = static_cast<double>(j) / degree_;
      buf.clear();
      const auto a_lo = static_cast<long>(std::ceil(x0(0) - w0));
      const auto a_hi = static_cast<long>(std::floor(x0(0) + w0));
      const auto b_lo = static_cast<long>(std::ceil(x0(1) - w1 - c1));
      const auto b_hi = static_cast<long>(std::floor(x0(1) + w1 - c1));
      for (long a = a_lo; a <= a_hi; ++a) {
        for (long b = b_lo; b <= b_hi; ++b) {
          const Eigen::Vector2d x(static_cast<double>(a), static_cast<double>(b) + c1);
          const Eigen::Vector2d dx = x - x0;
          if (pi * dx.dot(im * dx) > kTailExponent) continue;
          const Eigen::Vector2cd dxc = dx.cast<Complex>();
          const Eigen::Vector2cd sum = (x + x0).cast<Complex>();
          // pi i dx^T Omega (x + x0) + 2 pi i dx^T z
          const Complex e = kI * pi * (dxc.dot(omega_ * sum) + 2.0 * dxc.dot(zv));
          buf.push(e, 2.0 * pi * x(0), 2.0 * pi * x(1));
        }
      }
      const LatticeSums s = kernel_(buf.view());
      out.values(j) = s.value;
      if (tangent) {
        out.derivative->coeffRef(j) = kI * (s.w1 * (*tangent)[0] + s.w2 * (*tangent)[1]);
      }
      out.magnitude = std::max(out.magnitude, s.magnitude);
    }
  }

  if (!is_finite(out.values) || (out.derivative && !is_finite(*out.derivative))) {
    throw EvaluationError("theta evaluation produced a non-finite value");
  }
  return out;
}

EmbeddedPoint theta_basis_eval(const ThetaEmbedding& emb, const TorusPoint& z,
                               std::optional<std::array<Complex, 2>> tangent) {
  RawEvaluation raw = emb.evaluate_raw(z, tangent);
  const double norm = raw.values.norm();
  if (!(norm > 1e-12 * raw.magnitude) || norm == 0.0) {
    throw EvaluationError("all sections vanish at the evaluation point");
  }
  EmbeddedPoint p;
  p.base = z;
  p.coords = raw.values / norm;
  if (raw.derivative) p.derivative = *raw.derivative / norm;
  return p;
}

EmbeddedPoint normalize(EmbeddedPoint p) {
  const double norm = p.coords.norm();
  if (norm == 0.0) throw EvaluationError("cannot normalize the zero vector");
  if (std::abs(norm - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon()) return p;
  p.coords /= norm;
  if (p.derivative) *p.derivative /= norm;
  return p;
}

double chordal_distance(const CVector& a, const CVector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("chordal distance of a zero vector");
  // Norm of the part of b-hat orthogonal to a-hat. The textbook
  // sqrt(1 - |<a,b>|^2) cancels to nothing below about 1e-8.
  const CVector ua = a / na;
  const CVector ub = b / nb;
  const CVector rejection = ub - ua.dot(ub) * ua;
  return std::min(1.0, rejection.norm());
}

// ---------------------------------------------------------------------------
// Torsion

namespace {

int gcd_all(std::initializer_list<int> values) {
  int g = 0;
  for (int v : values) g = std::gcd(g, std::abs(v));
  return g;
}

long mod(long a, long n) { return ((a % n) + n) % n; }

}  // namespace

TorsionPoint torsion_point(const ThetaEmbedding& emb, const TorsionSpec& spec) {
  if (spec.order == 0) throw std::invalid_argument("torsion order must be nonzero");
  if (spec.order < 0) throw std::invalid_argument("torsion order must be positive");
  const double inv = 1.0 / spec.order;
  TorsionPoint out;
  int g = 0;
  if (emb.genus() == 1) {
    const std::array<double, 1> s{spec.a[0] * inv}, t{spec.b[0] * inv};
    out.point = emb.from_lattice_coordinates(s, t);
    g = gcd_all({spec.a[0], spec.b[0], spec.order});
  } else {
    const std::array<double, 2> s{spec.a[0] * inv, spec.a[1] * inv};
    const std::array<double, 2> t{spec.b[0] * inv, spec.b[1] * inv};
    out.point = emb.from_lattice_coordinates(s, t);
    g = gcd_all({spec.a[0], spec.a[1], spec.b[0], spec.b[1], spec.order});
  }
  out.actual_order = spec.order / g;
  out.exact_order = g == 1;
  return out;
}

TorsionPoint torsion_point(const ThetaEmbedding& emb, int a, int b, int order) {
  if (emb.genus() != 1) throw std::invalid_argument("scalar torsion spec needs a genus-1 embedding");
  return torsion_point(emb, TorsionSpec{{a, 0}, {b, 0}, order});
}

std::vector<TorusPoint> generate_subgroup(const ThetaEmbedding& emb,
                                          std::span<const TorsionSpec> generators) {
  long denom = 1;
  for (const auto& g : generators) {
    if (g.order <= 0) throw std::invalid_argument("torsion order must be positive");
    denom = std::lcm(denom, static_cast<long>(g.order));
  }
  const std::size_t dims = emb.genus() == 1 ? 2 : 4;
  using Element = std::array<long, 4>;
  auto to_element = [&](const TorsionSpec& g) {
    const long scale = denom / g.order;
    Element e{};
    if (dims == 2) {
      e = {mod(g.a[0] * scale, denom), mod(g.b[0] * scale, denom), 0, 0};
    } else {
      e = {mod(g.a[0] * scale, denom), mod(g.a[1] * scale, denom), mod(g.b[0] * scale, denom),
           mod(g.b[1] * scale, denom)};
    }
    return e;
  };

  std::vector<Element> gens;
  for (const auto& g : generators) gens.push_back(to_element(g));

  std::vector<Element> elements{Element{}};
  std::map<Element, bool> seen{{Element{}, true}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const Element& g : gens) {
      Element next{};
      for (std::size_t i = 0; i < 4; ++i) next[i] = mod(elements[head][i] + g[i], denom);
      if (seen.emplace(next, true).second) elements.push_back(next);
    }
  }

  std::vector<TorusPoint> out;
  out.reserve(elements.size());
  const double inv = 1.0 / static_cast<double>(denom);
  for (const Element& e : elements) {
    if (dims == 2) {
      const std::array<double, 1> s{e[0] * inv}, t{e[1] * inv};
      out.push_back(emb.from_lattice_coordinates(s, t));
    } else {
      const std::array<double, 2> s{e[0] * inv, e[1] * inv}, t{e[2] * inv, e[3] * inv};
      out.push_back(emb.from_lattice_coordinates(s, t));
    }
  }
  return out;
}

void require_subgroup(const ThetaEmbedding& emb, std::span<const TorusPoint> group, double tol) {
  if (group.empty()) throw std::invalid_argument("subgroup must be nonempty");
  auto difference_in_lattice = [&](const TorusPoint& a, const TorusPoint& b) {
    return emb.in_lattice(TorusPoint{{a.z[0] - b.z[0], a.z[1] - b.z[1]}}, tol);
  };
  const bool has_identity = std::any_of(group.begin(), group.end(), [&](const TorusPoint& g) {
    return emb.in_lattice(g, tol);
  });
  if (!has_identity) throw std::invalid_argument("subgroup does not contain the identity");
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (std::size_t j = i + 1; j < group.size(); ++j) {
      if (difference_in_lattice(group[i], group[j])) {
        throw std::invalid_argument("subgroup lists the same element twice");
      }
    }
  }
  for (const auto& a : group) {
    for (const auto& b : group) {
      const TorusPoint sum = a + b;
      const bool closed = std::any_of(group.begin(), group.end(), [&](const TorusPoint& g) {
        return difference_in_lattice(sum, g);
      });
      if (!closed) throw std::invalid_argument("point set is not closed under addition");
    }
  }
}

// ---------------------------------------------------------------------------
// Rank probes

RankResult span_rank(std::span<const CVector> vectors, double tol) {
  if (vectors.empty()) throw std::invalid_argument("span_rank: empty vector list");
  const Eigen::Index len = vectors.front().size();
  if (len == 0) throw std::invalid_argument("span_rank: zero-length vectors");
  Eigen::MatrixXcd a(len, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != len) throw std::invalid_argument("span_rank: ragged vector lengths");
    const double norm = vectors[i].norm();
    if (!(norm > 0.0)) throw std::invalid_argument("span_rank: zero vector");
    a.col(static_cast<Eigen::Index>(i)) = vectors[i] / norm;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const Eigen::VectorXd sv = svd.singularValues();

  RankResult r;
  r.ratios.resize(static_cast<std::size_t>(sv.size()));
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    r.ratios[static_cast<std::size_t>(i)] = sv(i) / sv(0);
  }
  for (double ratio : r.ratios) {
    if (ratio >= tol) ++r.rank;
  }
  r.margin = r.rank > 0 ? r.ratios[static_cast<std::size_t>(r.rank - 1)] : 0.0;
  return r;
}

std::string to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::pass: return "pass";
    case ProbeVerdict::fail: return "fail";
    case ProbeVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

ProbeVerdict classify_rank(const RankResult& r, int expected_rank, const RankPolicy& policy) {
  if (expected_rank < 1) throw std::invalid_argument("expected rank must be positive");
  if (static_cast<std::size_t>(expected_rank) > r.ratios.size()) return ProbeVerdict::fail;
  const double decisive = r.ratios[static_cast<std::size_t>(expected_rank - 1)];
  if (decisive >= policy.gray_lo && decisive <= policy.gray_hi) return ProbeVerdict::inconclusive;
  if (decisive > policy.gray_hi && r.rank == expected_rank) return ProbeVerdict::pass;
  return ProbeVerdict::fail;
}

namespace {

ClusterProbe finish_probe(std::vector<EmbeddedPoint> points, const std::vector<CVector>& vectors,
                          int expected, const RankPolicy& policy) {
  ClusterProbe probe;
  probe.points = std::move(points);
  probe.vector_count = static_cast<int>(vectors.size());
  probe.expected_rank = expected;
  const RankResult r = span_rank(vectors, policy.tol);
  probe.observed_rank = r.rank;
  probe.margin = r.margin;
  probe.decisive_ratio = static_cast<std::size_t>(expected) <= r.ratios.size()
                             ? r.ratios[static_cast<std::size_t>(expected - 1)]
                             : 0.0;
  probe.verdict = classify_rank(r, expected, policy);
  return probe;
}

}  // namespace

ClusterProbe fibre_independence_probe(const ThetaEmbedding& emb,
                                      std::span<const TorusPoint> group, const TorusPoint& base,
                                      const RankPolicy& policy) {
  require_subgroup(emb, group);
  std::vector<EmbeddedPoint> points;
  std::vector<CVector> vectors;
  for (const auto& g : group) {
    points.push_back(theta_basis_eval(emb, base + g));
    vectors.push_back(points.back().coords);
  }
  return finish_probe(std::move(points), vectors, static_cast<int>(group.size()), policy);
}

ClusterProbe very_ampleness_cluster_probe(const ThetaEmbedding& emb,
                                          std::span<const TorusPoint> points,
                                          bool with_derivatives, std::array<Complex, 2> tangent,
                                          const RankPolicy& policy) {
  if (points.empty()) throw std::invalid_argument("cluster probe needs at least one point");
  const int expected = static_cast<int>(points.size()) * (with_derivatives ? 2 : 1);
  if (expected > emb.section_count()) {
    std::ostringstream os;
    os << "cluster of length " << expected << " exceeds the " << emb.section_count()
       << " available sections";
    throw std::invalid_argument(os.str());
  }

  std::vector<EmbeddedPoint> evaluated;
  std::vector<CVector> vectors;
  std::vector<CVector> tangents;
  for (const auto& p : points) {
    EmbeddedPoint e = with_derivatives ? theta_basis_eval(emb, p, tangent) : theta_basis_eval(emb, p);
    vectors.push_back(e.coords);
    if (with_derivatives) {
      // Only the component transverse to the point matters for the span.
      CVector d = *e.derivative - e.coords.dot(*e.derivative) * e.coords;
      tangents.push_back(d.norm() > 0.0 ? d : *e.derivative);
    }
    evaluated.push_back(std::move(e));
  }
  for (auto& t : tangents) {
    if (t.norm() > 0.0) vectors.push_back(std::move(t));
  }
  return finish_probe(std::move(evaluated), vectors, expected, policy);
}

void ProbeCounts::add(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::pass: ++pass; break;
    case ProbeVerdict::fail: ++fail; break;
    case ProbeVerdict::inconclusive: ++inconclusive; break;
  }
}

namespace {

struct SamplePlan {
  TorusPoint p;
  TorusPoint q;
  std::array<Complex, 2> tangent;
};

struct SampleOutcome {
  ProbeVerdict fibre = ProbeVerdict::inconclusive;
  ProbeVerdict cluster = ProbeVerdict::inconclusive;
  ProbeVerdict immersion = ProbeVerdict::inconclusive;
  double worst = 1.0;
};

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11U) * 0x1.0p-53;
}

constexpr int kGridSide = 8;

}  // namespace

ProbeSummary scroll_smoothness_probe(const ThetaEmbedding& emb, std::span<const TorusPoint> group,
                                     std::size_t samples, std::uint64_t seed,
                                     const RankPolicy& policy) {
  require_subgroup(emb, group);
  const std::size_t k = group.size();

  std::mt19937_64 rng(seed);
  std::vector<SamplePlan> plans(samples);
  const std::size_t dims = emb.genus() == 1 ? 1 : 2;
  for (std::size_t i = 0; i < samples; ++i) {
    std::array<double, 2> ps{}, pt{}, qs{}, qt{};
    for (std::size_t d = 0; d < dims; ++d) {
      ps[d] = uniform01(rng);
      pt[d] = uniform01(rng);
      qs[d] = uniform01(rng);
      qt[d] = uniform01(rng);
    }
    if (i % 4 == 3) {
      // Coarse grid over the fundamental domain, cell centres.
      std::size_t cell = i / 4;
      for (std::size_t d = 0; d < dims; ++d) {
        ps[d] = (static_cast<double>(cell % kGridSide) + 0.5) / kGridSide;
        cell /= kGridSide;
        pt[d] = (static_cast<double>(cell % kGridSide) + 0.5) / kGridSide;
        cell /= kGridSide;
      }
    }
    SamplePlan& plan = plans[i];
    plan.p = emb.from_lattice_coordinates(std::span(ps).first(dims), std::span(pt).first(dims));
    plan.q = emb.from_lattice_coordinates(std::span(qs).first(dims), std::span(qt).first(dims));
    plan.tangent = {Complex(1.0), Complex(0.0)};
    if (emb.genus() == 2) {
      const Complex v0(2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0);
      const Complex v1(2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0);
      const double norm = std::sqrt(std::norm(v0) + std::norm(v1));
      plan.tangent = {v0 / norm, v1 / norm};
    }
  }

  const auto outcomes = parallel_map(samples, [&](std::size_t i) {
    const SamplePlan& plan = plans[i];
    SampleOutcome out;
    auto record = [&](const ClusterProbe& probe) {
      out.worst = std::min(out.worst, probe.decisive_ratio);
      return probe.verdict;
    };
    try {
      out.fibre = record(fibre_independence_probe(emb, group, plan.p, policy));
    } catch (const EvaluationError&) {
    }
    std::vector<TorusPoint> cluster;
    std::vector<TorusPoint> fibre;
    for (const auto& g : group) {
      cluster.push_back(plan.p + g);
      fibre.push_back(plan.p + g);
    }
    for (const auto& g : group) cluster.push_back(plan.q + g);
    try {
      out.cluster = record(very_ampleness_cluster_probe(emb, cluster, false, plan.tangent, policy));
    } catch (const EvaluationError&) {
    }
    try {
      out.immersion = record(very_ampleness_cluster_probe(emb, fibre, true, plan.tangent, policy));
    } catch (const EvaluationError&) {
    }
    return out;
  });

  ProbeSummary summary;
  summary.samples = samples;
  summary.seed = seed;
  summary.group_order = static_cast<int>(k);
  for (const auto& o : outcomes) {
    summary.fibre.add(o.fibre);
    summary.cluster.add(o.cluster);
    summary.immersion.add(o.immersion);
    summary.min_margin = std::min(summary.min_margin, o.worst);
  }
  for (const ProbeCounts* c : {&summary.fibre, &summary.cluster, &summary.immersion}) {
    summary.total.pass += c->pass;
    summary.total.fail += c->fail;
    summary.total.inconclusive += c->inconclusive;
  }
  return summary;
}

}  // namespace abelscroll
