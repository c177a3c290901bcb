#include "mdrc/plant.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace mdrc {

namespace {

constexpr double kStructuralTol = 1e-12;
constexpr double kRankPivotTol = 1e-10;
constexpr double kControllabilityTol = 1e-12;

void check_shapes(const PlantSpec& p) {
  if (p.A.rows() != 2 || p.A.cols() != 2) throw ShapeMismatch("plant: A must be 2x2");
  if (p.b_u.rows() != 2 || p.b_u.cols() != 1) throw ShapeMismatch("plant: b_u must be 2x1");
  if (p.b_d.rows() != 2 || p.b_d.cols() != 1) throw ShapeMismatch("plant: b_d must be 2x1");
  if (p.C_m.cols() != 2 || p.C_m.rows() < 1 || p.C_m.rows() > 2)
    throw ShapeMismatch("plant: C_m must be 1x2 or 2x2");
  if (p.c_o.rows() != 1 || p.c_o.cols() != 2) throw ShapeMismatch("plant: c_o must be 1x2");
}

// Row-echelon rank of a small row-major matrix, pivots compared against
// the largest entry of the original matrix.
std::size_t rank_eliminate(std::array<std::array<double, 3>, 6>& m,
                           std::size_t rows, std::size_t cols) {
  double scale = 0.0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) scale = std::max(scale, std::abs(m[i][j]));
  if (scale == 0.0) return 0;

  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    for (std::size_t i = rank + 1; i < rows; ++i)
      if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
    if (std::abs(m[piv][col]) <= kRankPivotTol * scale) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const double f = m[i][col] / m[rank][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

ValidationReport validate_plant(const PlantSpec& p) {
  check_shapes(p);
  ValidationReport rep;

  rep.b_u_nonzero = p.b_u.max_abs() > 0.0;
  rep.b_d_nonzero = p.b_d.max_abs() > 0.0;

  // Controllability: det [b_u, A b_u] relative to the entry scale.
  const Mat ab = p.A * p.b_u;
  Mat ctrb(2, 2);
  ctrb(0, 0) = p.b_u(0, 0);
  ctrb(1, 0) = p.b_u(1, 0);
  ctrb(0, 1) = ab(0, 0);
  ctrb(1, 1) = ab(1, 0);
  const double scale = ctrb.max_abs();
  const double d = det(ctrb);
  rep.controllability_margin = scale > 0.0 ? std::abs(d) / (scale * scale) : 0.0;
  rep.controllable = scale > 0.0 && std::abs(d) > kControllabilityTol * scale * scale;

  // Structural equalities, normalized by the largest entry magnitude of
  // the vectors involved: these are modeling statements, not measurements.
  const double dot_ou = (p.c_o * p.b_u)(0, 0);
  const double norm_ou = std::max(p.c_o.max_abs() * p.b_u.max_abs(), 1e-300);
  rep.decoupling_residual = std::abs(dot_ou) / norm_ou;
  rep.output_decoupled = rep.decoupling_residual <= kStructuralTol;

  const double dot_ud = (p.b_u.transpose() * p.b_d)(0, 0);
  const double norm_ud = std::max(p.b_u.max_abs() * p.b_d.max_abs(), 1e-300);
  rep.mismatch_residual = std::abs(dot_ud) / norm_ud;
  rep.mismatched = rep.mismatch_residual <= kStructuralTol;

  return rep;
}

ExtendedSystem extend(const PlantSpec& p) {
  const ValidationReport rep = validate_plant(p);
  if (!rep.required_pass()) {
    std::string why;
    if (!rep.controllable) why += " (A, b_u) not controllable;";
    if (!rep.output_decoupled) why += " c_o . b_u != 0;";
    if (!rep.b_u_nonzero) why += " b_u is zero;";
    if (!rep.b_d_nonzero) why += " b_d is zero;";
    throw InvalidPlant("extend: required plant checks failed:" + why);
  }

  ExtendedSystem es{Mat(3, 3), Mat(3, 1), Mat(3, 1), Mat(p.r(), 3)};
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) es.A_bar(i, j) = p.A(i, j);
    es.A_bar(i, 2) = p.b_d(i, 0);
    es.b_u_bar(i, 0) = p.b_u(i, 0);
  }
  es.A_bar(2, 2) = 1.0;
  es.E(2, 0) = 1.0;
  for (std::size_t i = 0; i < p.r(); ++i)
    for (std::size_t j = 0; j < 2; ++j) es.C_bar(i, j) = p.C_m(i, j);
  return es;
}

bool is_observable(const ExtendedSystem& es) {
  const std::size_t r = es.r();
  const Mat ca = es.C_bar * es.A_bar;
  const Mat caa = ca * es.A_bar;

  std::array<std::array<double, 3>, 6> stack{};
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      stack[i][j] = es.C_bar(i, j);
      stack[r + i][j] = ca(i, j);
      stack[2 * r + i][j] = caa(i, j);
    }
  }
  return rank_eliminate(stack, 3 * r, 3) == 3;
}

}  // namespace mdrc
