#pragma once

#include <span>
#include <string>
#include <vector>

#include "weil/derivations.hpp"
#include "weil/nearpoints.hpp"

namespace weil {

/// Vector field d* on the chart of (R^n)^A induced by a derivation d:
/// d*(f) = (-d) o f^A. In chart coordinates it is linear, xi_i -> -D xi_i.
class InducedField {
 public:
  InducedField(Derivation d, std::size_t n);

  const WeilAlgebra& algebra() const noexcept { return derivation_.algebra(); }
  const Derivation& derivation() const noexcept { return derivation_; }
  std::size_t n() const noexcept { return n_; }

  /// Block-diagonal matrix with n copies of -D.
  Matrix<Rational> chart_matrix() const;
  ChartVectorField chart_field() const;

 private:
  Derivation derivation_;
  std::size_t n_;
};

InducedField induced_field(const WeilAlgebra& a, const Derivation& d, std::size_t n);

/// d*(f)(xi) = -D(xi(f)).
Element field_apply(const InducedField& field, const Polynomial& f, const NearPoint& xi);
RealElement field_apply(const InducedField& field, const Polynomial& f, const RealNearPoint& xi);

/// Chart coordinates of d* at xi: concatenation of -D xi_i.
template <class T>
std::vector<T> chart_flatten(const InducedField& field, const BasicNearPoint<T>& xi) {
  if (!(xi.algebra() == field.algebra()) || xi.n() != field.n())
    throw Error(ErrorKind::DimensionMismatch, "near point and field live on different charts");
  std::vector<T> out;
  for (const auto& c : xi.components()) {
    const auto v = field.derivation()(c);
    for (const auto& x : v.coeffs()) out.push_back(-x);
  }
  return out;
}

/// Generators of the canonical distribution at one point, with its rank.
template <class T>
struct BasicDistributionSample {
  BasicNearPoint<T> point;
  std::vector<std::vector<T>> generators;
  std::size_t rank = 0;
  double tolerance = 0.0;  ///< 0 means exact rank
};

using DistributionSample = BasicDistributionSample<Rational>;
using RealDistributionSample = BasicDistributionSample<double>;

/// Exact rank when `tol` is 0, otherwise floating rank with that threshold.
DistributionSample distribution_at(const WeilAlgebra& a, const std::vector<Derivation>& basis, const NearPoint& xi,
                                   double tol = 0.0);
RealDistributionSample distribution_at(const WeilAlgebra& a, const std::vector<Derivation>& basis,
                                       const RealNearPoint& xi, double tol = 1e-9);

/// Ranks at many points; chunks run concurrently, results are in input order.
std::vector<std::size_t> rank_scan(const WeilAlgebra& a, const std::vector<Derivation>& basis,
                                   std::span<const NearPoint> points, double tol = 0.0);

struct PairCheck {
  std::size_t i = 0;
  std::size_t j = 0;
  bool passed = false;
};

struct InvolutivityReport {
  std::vector<PairCheck> pairs;
  bool all_passed() const;
};

/// For each pair i < j checks [d_i*, d_j*] = sum_k gamma_ijk d_k* as an
/// exact identity of chart matrices, using [X_U, X_V] = X_{VU - UV}.
InvolutivityReport involutivity_check(const LieStructure& lie, std::size_t n);

/// [d1*, d2*] = [d1, d2]* on the chart, exact.
bool bracket_law_holds(const Derivation& d1, const Derivation& d2, std::size_t n);

/// Flow of d* for time t: xi_i -> exp(-tD) xi_i.
RealNearPoint flow(const WeilAlgebra& a, const Derivation& d, double t, const RealNearPoint& xi);

struct FlowStep {
  std::size_t derivation = 0;
  double t = 0.0;
};

/// Points visited by successive flows; the first entry is xi itself.
std::vector<RealNearPoint> leaf_sample(const WeilAlgebra& a, const std::vector<Derivation>& basis,
                                       const RealNearPoint& xi, const std::vector<FlowStep>& schedule);

/// Relative error between the central difference of the flow at t = 0 and
/// the field value; 0 when both vanish.
double flow_derivative_error(const InducedField& field, const RealNearPoint& xi, double h = 1e-5);

/// Largest |scalar part change| between two near points.
double base_drift(const RealNearPoint& before, const RealNearPoint& after);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RankSample {
  NearPoint point;
  std::size_t rank = 0;
  bool zero_section = false;
};

/// Tangent-bundle specialization: A = D, the canonical foliation is the
/// one generated by the Liouville field.
struct LiouvilleReport {
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<Derivation> basis;
  ChartVectorField chart;
  std::vector<PolyElement> coordinate_values;  ///< d0*(x_i)
  std::vector<RankSample> ranks;
  std::vector<Check> checks;

  bool all_passed() const;
};

LiouvilleReport liouville_demo(std::size_t n);

}  // namespace weil
