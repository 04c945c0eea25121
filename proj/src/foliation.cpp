#include "weil/foliation.hpp"

#include <cmath>
#include <future>
#include <sstream>
#include <thread>

#include "weil/linalg.hpp"

namespace weil {

InducedField::InducedField(Derivation d, std::size_t n) : derivation_(std::move(d)), n_(n) {
  if (n_ == 0) throw Error(ErrorKind::ArityMismatch, "induced field on R^0");
}

Matrix<Rational> InducedField::chart_matrix() const { return block_diagonal(Matrix<Rational>(-derivation_.matrix()), n_); }

ChartVectorField InducedField::chart_field() const {
  const Matrix<Rational> u = chart_matrix();
  const std::size_t dim = u.rows();
  std::vector<Polynomial> comps;
  for (std::size_t v = 0; v < dim; ++v) {
    Polynomial p(dim);
    for (std::size_t w = 0; w < dim; ++w)
      if (u(v, w) != 0) p.add_term(Monomial::variable(dim, w), u(v, w));
    comps.push_back(std::move(p));
  }
  return ChartVectorField(algebra(), n_, std::move(comps));
}

InducedField induced_field(const WeilAlgebra& a, const Derivation& d, std::size_t n) {
  if (!(d.algebra() == a)) throw Error(ErrorKind::AlgebraMismatch, "derivation of another algebra");
  return InducedField(d, n);
}

Element field_apply(const InducedField& field, const Polynomial& f, const NearPoint& xi) {
  return -field.derivation()(eval_fA(f, xi));
}

RealElement field_apply(const InducedField& field, const Polynomial& f, const RealNearPoint& xi) {
  return -field.derivation()(eval_fA(f, xi));
}

namespace {

template <class T>
std::vector<std::vector<T>> generators_at(const std::vector<Derivation>& basis, const BasicNearPoint<T>& xi) {
  std::vector<std::vector<T>> gens;
  for (const auto& d : basis) gens.push_back(chart_flatten(InducedField(d, xi.n()), xi));
  return gens;
}

Matrix<double> to_matrix(const std::vector<std::vector<double>>& rows, std::size_t cols) {
  Matrix<double> m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

std::size_t rank_of(const std::vector<std::vector<Rational>>& gens, std::size_t cols, double tol) {
  if (gens.empty()) return 0;
  if (tol == 0.0) return rank(rows_to_matrix(gens, cols));
  std::vector<std::vector<double>> approx;
  for (const auto& g : gens) {
    std::vector<double> row;
    for (const auto& q : g) row.push_back(q.get_d());
    approx.push_back(std::move(row));
  }
  return numeric_rank(to_matrix(approx, cols), tol);
}

void check_basis(const WeilAlgebra& a, const std::vector<Derivation>& basis) {
  for (const auto& d : basis)
    if (!(d.algebra() == a)) throw Error(ErrorKind::AlgebraMismatch, "derivation of another algebra");
}

}  // namespace

DistributionSample distribution_at(const WeilAlgebra& a, const std::vector<Derivation>& basis, const NearPoint& xi,
                                   double tol) {
  check_basis(a, basis);
  auto gens = generators_at(basis, xi);
  const std::size_t r = rank_of(gens, chart_dimension(a, xi.n()), tol);
  return {xi, std::move(gens), r, tol};
}

RealDistributionSample distribution_at(const WeilAlgebra& a, const std::vector<Derivation>& basis,
                                       const RealNearPoint& xi, double tol) {
  check_basis(a, basis);
  auto gens = generators_at(basis, xi);
  const std::size_t r = gens.empty() ? 0 : numeric_rank(to_matrix(gens, chart_dimension(a, xi.n())), tol);
  return {xi, std::move(gens), r, tol};
}

std::vector<std::size_t> rank_scan(const WeilAlgebra& a, const std::vector<Derivation>& basis,
                                   std::span<const NearPoint> points, double tol) {
  std::vector<std::size_t> ranks(points.size(), 0);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 8));
  const std::size_t chunk = (points.size() + workers - 1) / std::max<std::size_t>(workers, 1);
  std::vector<std::future<void>> jobs;
  for (std::size_t start = 0; start < points.size(); start += chunk) {
    const std::size_t stop = std::min(points.size(), start + chunk);
    jobs.push_back(std::async(std::launch::async, [&, start, stop] {
      for (std::size_t k = start; k < stop; ++k) ranks[k] = distribution_at(a, basis, points[k], tol).rank;
    }));
  }
  for (auto& j : jobs) j.get();
  return ranks;
}

bool InvolutivityReport::all_passed() const {
  for (const auto& p : pairs)
    if (!p.passed) return false;
  return true;
}

InvolutivityReport involutivity_check(const LieStructure& lie, std::size_t n) {
  const std::size_t r = lie.dim();
  std::vector<Matrix<Rational>> u;
  for (const auto& d : lie.basis()) u.push_back(InducedField(d, n).chart_matrix());
  InvolutivityReport report;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      const Matrix<Rational> lhs = u[j] * u[i] - u[i] * u[j];
      Matrix<Rational> rhs(lhs.rows(), lhs.cols());
      for (std::size_t k = 0; k < r; ++k)
        if (lie.constant(i, j, k) != 0) rhs += lie.constant(i, j, k) * u[k];
      report.pairs.push_back({i, j, lhs == rhs});
    }
  return report;
}

bool bracket_law_holds(const Derivation& d1, const Derivation& d2, std::size_t n) {
  const Matrix<Rational> u = InducedField(d1, n).chart_matrix();
  const Matrix<Rational> v = InducedField(d2, n).chart_matrix();
  const Matrix<Rational> w = InducedField(bracket(d1, d2), n).chart_matrix();
  return v * u - u * v == w;
}

RealNearPoint flow(const WeilAlgebra& a, const Derivation& d, double t, const RealNearPoint& xi) {
  if (!(d.algebra() == a) || !(xi.algebra() == a)) throw Error(ErrorKind::AlgebraMismatch, "flow across algebras");
  const Automorphism phi = exp_flow(d, -t);
  std::vector<RealElement> comps;
  for (const auto& c : xi.components()) {
    comps.push_back(phi(c));
  }
  return RealNearPoint(a, std::move(comps));
}

std::vector<RealNearPoint> leaf_sample(const WeilAlgebra& a, const std::vector<Derivation>& basis,
                                       const RealNearPoint& xi, const std::vector<FlowStep>& schedule) {
  for (const auto& step : schedule)
    if (step.derivation >= basis.size())
      throw Error(ErrorKind::IndexOutOfRange, "derivation index " + std::to_string(step.derivation) + " with r = " +
                                                  std::to_string(basis.size()));
  std::vector<RealNearPoint> points{xi};
  for (const auto& step : schedule) points.push_back(flow(a, basis[step.derivation], step.t, points.back()));
  return points;
}

double flow_derivative_error(const InducedField& field, const RealNearPoint& xi, double h) {
  const auto fwd = flow(field.algebra(), field.derivation(), h, xi).chart_coordinates();
  const auto bwd = flow(field.algebra(), field.derivation(), -h, xi).chart_coordinates();
  const auto exact = chart_flatten(field, xi);
  double err = 0.0, norm = 0.0;
  for (std::size_t k = 0; k < exact.size(); ++k) {
    const double fd = (fwd[k] - bwd[k]) / (2.0 * h);
    err = std::max(err, std::abs(fd - exact[k]));
    norm = std::max(norm, std::abs(exact[k]));
  }
  if (norm == 0.0) return err;
  return err / norm;
}

double base_drift(const RealNearPoint& before, const RealNearPoint& after) {
  const auto p = before.base();
  const auto q = after.base();
  if (p.size() != q.size()) throw Error(ErrorKind::ArityMismatch, "near points over different R^n");
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) worst = std::max(worst, std::abs(p[i] - q[i]));
  return worst;
}

bool LiouvilleReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

LiouvilleReport liouville_demo(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::ArityMismatch, "Liouville demo needs n >= 1");
  const WeilAlgebra dual = dual_numbers();
  const std::size_t dim = 2 * n;
  std::vector<Check> checks;

  // d0 with d0(ε) = -ε spans Der(D).
  std::vector<Derivation> basis = derivation_basis(dual);
  const Element eps = Element::basis(dual, 1);
  const bool generator_ok = basis.size() == 1 && basis[0](eps) == -eps;
  checks.push_back({"generator", generator_ok,
                    "r = " + std::to_string(basis.size()) +
                        (basis.empty() ? std::string() : ", d0(ε) = " + to_string(basis[0](eps)))});
  const Derivation d0 = basis.empty() ? Derivation::zero(dual) : basis[0];

  // Chart form: C(x_i) = 0, C(y_i) = y_i.
  const InducedField field(d0, n);
  ChartVectorField chart = field.chart_field();
  std::vector<Polynomial> liouville(dim, Polynomial(dim));
  for (std::size_t i = 0; i < n; ++i)
    liouville[chart_index(2, i, 1)] = Polynomial::variable(dim, chart_index(2, i, 1));
  const ChartVectorField expected(dual, n, liouville);
  checks.push_back({"chart form", chart == expected, chart.to_string()});

  // Derivation form on the coordinate functions: d0*(x_i) = ε·y_i.
  std::vector<PolyElement> values;
  bool form_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    PolyElement v = derivation_form(chart, Polynomial::variable(n, i));
    PolyElement want(dual, {Polynomial(dim), Polynomial::variable(dim, chart_index(2, i, 1))});
    form_ok = form_ok && v == want;
    values.push_back(std::move(v));
  }
  const auto names = chart_variable_names(dual, n);
  std::string form_detail;
  for (std::size_t i = 0; i < n; ++i)
    form_detail += (i ? "; " : "") + std::string("d0*(x") + std::to_string(i + 1) + ") = " + to_string(values[i], names);
  checks.push_back({"derivation form", form_ok, form_detail});

  // Rank 1 off the zero section, 0 on it.
  std::vector<RankSample> ranks;
  auto sample = [&](const std::vector<Rational>& base, const std::vector<Rational>& fiber) {
    std::vector<Element> nil;
    for (const auto& y : fiber) nil.push_back(y * eps);
    NearPoint xi = make_near_point(dual, base, nil);
    const auto ds = distribution_at(dual, basis, xi);
    ranks.push_back({xi, ds.rank, xi.on_zero_section()});
  };
  std::vector<Rational> base, zero(n, Rational(0)), ones(n, Rational(1)), last(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) base.push_back(Rational(static_cast<long>(i) + 1, 2));
  last[n - 1] = Rational(-3, 2);
  sample(base, zero);
  sample(base, ones);
  sample(zero, last);
  sample(zero, zero);
  bool rank_ok = true;
  std::string rank_detail;
  for (const auto& rs : ranks) {
    rank_ok = rank_ok && rs.rank == (rs.zero_section ? 0u : 1u);
    rank_detail += (rank_detail.empty() ? "" : ", ") + std::string(rs.zero_section ? "zero section: " : "off: ") +
                   std::to_string(rs.rank);
  }
  checks.push_back({"rank stratification", rank_ok, rank_detail});

  // Flow of d0* scales the fibre by e^t and fixes the base.
  double worst = 0.0;
  for (double t : {-1.0, 0.5, std::log(2.0), 2.0}) {
    std::vector<double> p, y;
    std::vector<RealElement> nil;
    for (std::size_t i = 0; i < n; ++i) {
      p.push_back(0.25 * static_cast<double>(i) - 1.0);
      y.push_back(1.0 + 0.5 * static_cast<double>(i));
      nil.push_back(RealElement(dual, {0.0, y.back()}));
    }
    const RealNearPoint xi = make_near_point(dual, p, nil);
    const RealNearPoint moved = flow(dual, d0, t, xi);
    worst = std::max(worst, base_drift(xi, moved));
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(moved.component(i)[1] - std::exp(t) * y[i]));
  }
  std::ostringstream fd;
  fd.precision(3);
  fd << "max |y(t) - e^t y| = " << worst;
  checks.push_back({"flow", worst <= 1e-9, fd.str()});

  return LiouvilleReport{n, basis.size(), std::move(basis), std::move(chart), std::move(values), std::move(ranks),
                         std::move(checks)};
}

}  // namespace weil
