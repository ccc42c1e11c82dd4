// Numerical realization of abelian scrolls: theta-function embeddings of
// elliptic curves and (1,d)-polarized abelian surfaces, translates by finite
// torsion subgroups, and singular-value rank probes for the independence and
// immersion conditions that make a scroll smooth.
//
// Probe verdicts are sampled evidence. A pass says the sampled clusters have
// the expected rank with a comfortable singular-value margin; it does not
// certify smoothness.
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "abelscroll/lattice_sum.hpp"

namespace abelscroll {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;

/// Bad embedding parameters (period not in the upper half space, degree too
/// small, series that cannot be truncated).
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A theta evaluation produced the zero vector or a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point of C^g; genus 1 uses only z[0].
struct TorusPoint {
  std::array<Complex, 2> z{};

  friend TorusPoint operator+(const TorusPoint& a, const TorusPoint& b) {
    return TorusPoint{{a.z[0] + b.z[0], a.z[1] + b.z[1]}};
  }
};

/// Unnormalized section values: true value = values * exp(log_scale).
struct RawEvaluation {
  CVector values;
  std::optional<CVector> derivative;
  Complex log_scale;
  double magnitude = 0.0;  // largest per-section sum of |term| in scaled units
};

struct EmbeddedPoint {
  TorusPoint base;
  CVector coords;                     // unit Euclidean norm
  std::optional<CVector> derivative;  // same scaling as coords
};

class ThetaEmbedding {
 public:
  /// Elliptic normal curve of degree m >= 3 in P^{m-1}, E = C/(Z + tau Z),
  /// sections theta[j/m, 0](m z, m tau), j = 0..m-1.
  static ThetaEmbedding elliptic(Complex tau, int m);

  /// Abelian surface C^2/(D Z^2 + Omega Z^2), D = diag(1, d), with the (1,d)
  /// basis theta[(0, j/d), 0](z, Omega), j = 0..d-1.
  static ThetaEmbedding abelian_surface(const Eigen::Matrix2cd& omega, int d);

  int genus() const noexcept { return genus_; }
  int degree() const noexcept { return degree_; }
  int section_count() const noexcept { return degree_; }
  Complex tau() const noexcept { return omega_(0, 0); }
  const Eigen::Matrix2cd& omega() const noexcept { return omega_; }
  /// Half-width (in lattice steps) of the summation window around the peak
  /// term; terms outside are below e^-40 of the largest one.
  int truncation_radius() const noexcept { return truncation_radius_; }

  /// Returns a copy evaluating through a specific kernel.
  ThetaEmbedding with_kernel(KernelIsa isa) const;
  KernelIsa kernel_isa() const noexcept { return isa_; }

  /// z = s + t tau (genus 1) or z = D s + Omega t (genus 2), s, t real.
  TorusPoint from_lattice_coordinates(std::span<const double> s, std::span<const double> t) const;
  /// Inverse of from_lattice_coordinates: {s..., t...}.
  std::vector<double> lattice_coordinates(const TorusPoint& p) const;
  /// True if p lies in the period lattice to within tol in lattice coordinates.
  bool in_lattice(const TorusPoint& p, double tol) const;

  /// Series evaluation; the derivative, if requested, is along `tangent`
  /// (genus 1 uses tangent[0]).
  RawEvaluation evaluate_raw(const TorusPoint& z,
                             std::optional<std::array<Complex, 2>> tangent = std::nullopt) const;

 private:
  ThetaEmbedding() = default;

  int genus_ = 1;
  int degree_ = 3;
  Eigen::Matrix2cd omega_ = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2d im_inverse_ = Eigen::Matrix2d::Zero();  // (Im Omega)^{-1}, genus 2
  double window_ = 0.0;                                   // continuous half-width
  int truncation_radius_ = 0;
  KernelIsa isa_ = KernelIsa::scalar;
  LatticeSumKernel kernel_ = nullptr;
};

/// Normalized section vector at z, optionally with a derivative row.
EmbeddedPoint theta_basis_eval(const ThetaEmbedding& emb, const TorusPoint& z,
                               std::optional<std::array<Complex, 2>> tangent = std::nullopt);

/// Rescales to unit norm. A vector already within rounding of unit norm is
/// returned unchanged, so the operation is idempotent bit for bit.
EmbeddedPoint normalize(EmbeddedPoint p);

/// sqrt(1 - |<a,b>|^2 / (|a|^2 |b|^2)): zero iff a, b are the same projective point.
double chordal_distance(const CVector& a, const CVector& b);

/// a = (a1, a2), b = (b1, b2): the point (D a + Omega b)/order (genus 2) or
/// (a1 + b1 tau)/order (genus 1; second components ignored).
struct TorsionSpec {
  std::array<int, 2> a{};
  std::array<int, 2> b{};
  int order = 1;
};

struct TorsionPoint {
  TorusPoint point;
  int actual_order = 1;
  bool exact_order = false;  // actual_order == requested order (and order > 1)
};

TorsionPoint torsion_point(const ThetaEmbedding& emb, const TorsionSpec& spec);
TorsionPoint torsion_point(const ThetaEmbedding& emb, int a, int b, int order);

/// Subgroup generated by the given torsion points, enumerated exactly on
/// rational lattice coordinates. Element 0 is the identity.
std::vector<TorusPoint> generate_subgroup(const ThetaEmbedding& emb,
                                          std::span<const TorsionSpec> generators);

/// Throws std::invalid_argument unless `group` contains 0 and is closed under
/// addition modulo the lattice (tolerance in lattice coordinates).
void require_subgroup(const ThetaEmbedding& emb, std::span<const TorusPoint> group,
                      double tol = 1e-12);

struct RankResult {
  int rank = 0;
  double margin = 0.0;          // smallest counted sigma / sigma_1
  std::vector<double> ratios;   // sigma_i / sigma_1, descending
};

/// Numerical rank of unit-normalized vectors. Throws std::invalid_argument
/// for an empty list, ragged lengths or a zero vector.
RankResult span_rank(std::span<const CVector> vectors, double tol = 1e-8);

enum class ProbeVerdict { pass, fail, inconclusive };
std::string to_string(ProbeVerdict v);

struct RankPolicy {
  double tol = 1e-8;
  double gray_lo = 1e-10;
  double gray_hi = 1e-6;
};

struct ClusterProbe {
  std::vector<EmbeddedPoint> points;
  int vector_count = 0;
  int expected_rank = 0;
  int observed_rank = 0;
  double margin = 0.0;
  double decisive_ratio = 0.0;  // sigma_expected / sigma_1
  ProbeVerdict verdict = ProbeVerdict::fail;
};

/// Verdict from singular-value ratios: inconclusive if the expected-th ratio
/// falls in the gray zone, pass if it is above the zone and the observed rank
/// is the expected one, fail otherwise.
ProbeVerdict classify_rank(const RankResult& r, int expected_rank, const RankPolicy& policy);

/// Rank of {theta(P + g) : g in group} against |group|.
ClusterProbe fibre_independence_probe(const ThetaEmbedding& emb,
                                      std::span<const TorusPoint> group, const TorusPoint& base,
                                      const RankPolicy& policy = {});

/// Without derivatives: rank of the points' images against their count.
/// With derivatives: each point contributes its image and its derivative
/// along `tangent`, and the rank is compared with twice the count; a rank
/// drop is exactly a kernel of the immersion matrix along that direction.
ClusterProbe very_ampleness_cluster_probe(const ThetaEmbedding& emb,
                                          std::span<const TorusPoint> points,
                                          bool with_derivatives,
                                          std::array<Complex, 2> tangent = {Complex(1.0), Complex(0.0)},
                                          const RankPolicy& policy = {});

struct ProbeCounts {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t inconclusive = 0;

  void add(ProbeVerdict v);
  std::size_t total() const noexcept { return pass + fail + inconclusive; }
  friend bool operator==(const ProbeCounts&, const ProbeCounts&) = default;
};

struct ProbeSummary {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  int group_order = 0;
  ProbeCounts fibre;
  ProbeCounts cluster;
  ProbeCounts immersion;
  ProbeCounts total;
  double min_margin = 1.0;

  friend bool operator==(const ProbeSummary&, const ProbeSummary&) = default;
};

/// Runs, per sample, a fibre-independence probe at P, a reduced-cluster probe
/// on (P + G) u (Q + G), and a derivative probe on P + G along a tangent
/// direction. Base points come from a seeded generator, every fourth one from
/// a fixed coarse grid. Evaluation errors count as inconclusive.
ProbeSummary scroll_smoothness_probe(const ThetaEmbedding& emb, std::span<const TorusPoint> group,
                                     std::size_t samples, std::uint64_t seed,
                                     const RankPolicy& policy = {});

}  // namespace abelscroll
