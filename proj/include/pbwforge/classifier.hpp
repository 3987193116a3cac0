#pragma once

// Staged classification of the deformations φ = φ_{N-1} + ... + φ_0 of a
// presentation that have the PBW property.
//
// The conditions are bilinear in (φ_{N-1}, φ_j), so the engine never solves
// over symbolic parameters. It computes
//   stage 1: every φ_{N-1} with X_k = D_{N-1}(w_k) ∈ R, a linear condition
//            once the R-coordinates y_k of X_k are added as unknowns and then
//            projected away;
//   lower stages: for one concrete φ_{N-1} the remaining conditions are
//            affine in (φ_{N-2}, ..., φ_0) and are solved cumulatively, one
//            new level per stage, with an infeasibility certificate when the
//            system has no solution.
//
// Coordinates of φ_j are the row-major entries of its matrix: index t*m + a
// for the V^{⊗j} word index t and relation a (m = dim R). For the Yang-Mills
// builders this is exactly the current index tidx(d, ..., ρ).

#include "pbw.hpp"
#include "super_ym.hpp"
#include "yang_mills.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pbwforge {

struct StageSolution {
  std::string stage;                  // "top", "level j=2", ..., "constant"
  std::vector<std::size_t> levels;    // φ levels of the unknown blocks, in order
  bool feasible = false;
  Vector particular;                  // a solution (zero for the homogeneous stage 1)
  Subspace parameters;                // homogeneous solutions; zero-dimensional if infeasible
  std::optional<Vector> certificate;  // y with yᵀM = 0, yᵀrhs = 1 when infeasible
  std::size_t equations = 0;
  std::size_t unknowns = 0;
  Matrix system;  // the stage's linear system M x = rhs
  Vector rhs;
};

/// Number of coordinates of φ_j.
inline std::size_t level_size(const AlgebraPresentation& a, std::size_t j) { return power(a.dim_v(), j) * a.relation_count(); }

inline Vector phi_coords(const Matrix& phi) {
  Vector out;
  out.reserve(phi.rows() * phi.cols());
  for (std::size_t t = 0; t < phi.rows(); ++t)
    for (std::size_t a = 0; a < phi.cols(); ++a) out.push_back(phi(t, a));
  return out;
}

inline Matrix phi_matrix(const AlgebraPresentation& a, std::size_t j, std::span<const Scalar> coords) {
  const std::size_t rows = power(a.dim_v(), j);
  const std::size_t m = a.relation_count();
  if (coords.size() != rows * m) throw input_error("φ_" + std::to_string(j) + " coordinates have the wrong length");
  Matrix out(rows, m);
  for (std::size_t t = 0; t < rows; ++t)
    for (std::size_t c = 0; c < m; ++c) out(t, c) = coords[t * m + c];
  return out;
}

namespace detail {

// Adds the coefficients of D_j(w_k) in the unknowns of φ_j to the rows
// row0 .. row0 + d^{j+1} − 1, unknown (t, a) sitting at column col0 + t*m + a.
inline void add_lifted_difference(Matrix& sys, std::size_t row0, std::size_t col0, const PbwChecker& checker,
                                  std::size_t k, std::size_t j, const Scalar& factor = 1) {
  const AlgebraPresentation& a = checker.algebra();
  const std::size_t d = a.dim_v();
  const std::size_t m = a.relation_count();
  const std::size_t rows = power(d, j);
  const Vector& right = checker.right_coords(k);
  const Vector& left = checker.left_coords(k);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t l = 0; l < d; ++l) {
      const Scalar& cr = right[r * d + l];
      const Scalar& cl = left[l * m + r];
      for (std::size_t t = 0; t < rows; ++t) {
        if (sgn(cr) != 0) sys(row0 + t * d + l, col0 + t * m + r) += factor * cr;
        if (sgn(cl) != 0) sys(row0 + l * rows + t, col0 + t * m + r) -= factor * cl;
      }
    }
}

}  // namespace detail

/// All φ_{N-1} for which every X_k lies in R.
inline StageSolution solve_stage1(const PbwChecker& checker) {
  const AlgebraPresentation& a = checker.algebra();
  const std::size_t n = a.degree();
  const std::size_t m = a.relation_count();
  const std::size_t phi_dim = level_size(a, n - 1);
  const std::size_t block = power(a.dim_v(), n);
  const std::size_t overlaps = checker.overlap_dim();
  guard_dimension(phi_dim + overlaps * m, "stage-1 unknowns");
  guard_dimension(overlaps * block, "stage-1 equations");

  // X_k(φ) − Σ_a y_{ka} r_a = 0, y_{ka} at column phi_dim + k*m + a.
  Matrix sys(overlaps * block, phi_dim + overlaps * m);
  for (std::size_t k = 0; k < overlaps; ++k) {
    detail::add_lifted_difference(sys, k * block, 0, checker, k, n - 1);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t i = 0; i < block; ++i) sys(k * block + i, phi_dim + k * m + r) = -a.relation_basis()[r][i];
  }

  StageSolution s;
  s.stage = "top";
  s.levels = {n - 1};
  s.feasible = true;
  s.particular = Vector(phi_dim);
  s.equations = sys.rows();
  s.unknowns = sys.cols();
  s.rhs = Vector(sys.rows());
  std::vector<std::size_t> coords(phi_dim);
  for (std::size_t i = 0; i < phi_dim; ++i) coords[i] = i;
  s.parameters = overlaps == 0 ? Subspace::full(phi_dim) : project(kernel(sys), coords);
  s.system = std::move(sys);
  return s;
}

inline StageSolution solve_stage1(const AlgebraPresentation& a) { return solve_stage1(PbwChecker(a)); }

/// Lower stages for a fixed φ_{N-1}. Result i (i = 0 .. N-1) holds the
/// cumulative system after adding level N-2-i; the last entry adds the
/// condition φ_0(X_k) = 0 and introduces no new level. Unknown blocks are
/// φ_{N-2}, φ_{N-3}, ... in that order. Solving stops at the first
/// infeasible stage, which is the last entry returned.
inline std::vector<StageSolution> solve_stage2plus(const PbwChecker& checker, const Matrix& phi_top) {
  const AlgebraPresentation& a = checker.algebra();
  const std::size_t n = a.degree();
  const std::size_t m = a.relation_count();
  const std::size_t d = a.dim_v();
  const std::size_t overlaps = checker.overlap_dim();
  if (phi_top.rows() != power(d, n - 1) || phi_top.cols() != m) throw input_error("φ_{N-1} has the wrong shape");

  DeformationMap top(a);
  top.set_phi(n - 1, phi_top);
  std::vector<Vector> ys;
  for (const auto& x : checker.top_images(top)) {
    auto y = checker.relation_coords(x);
    if (!y) throw input_error("φ_{N-1} does not satisfy the stage-1 condition");
    ys.push_back(std::move(*y));
  }

  // Column offset of each lower level inside the cumulative unknown vector.
  std::vector<std::size_t> offset(n, 0);
  std::size_t total = 0;
  for (std::size_t j = n - 1; j-- > 0;) {
    offset[j] = total;
    total += level_size(a, j);
  }
  guard_dimension(total, "lower-stage unknowns");

  Matrix sys(0, total);
  Vector rhs;
  std::vector<StageSolution> out;
  for (std::size_t step = 0; step < n; ++step) {
    const bool final_step = step + 1 == n;
    const std::size_t j = n - 1 - step;  // φ_j(y_k) + D_{j-1}(w_k) = 0, or φ_0(y_k) = 0 when final
    const std::size_t eq_dim = final_step ? 1 : power(d, j);
    for (std::size_t k = 0; k < overlaps; ++k) {
      Matrix block(eq_dim, total);
      Vector b(eq_dim);
      if (final_step) {
        for (std::size_t r = 0; r < m; ++r) block(0, offset[0] + r) = ys[k][r];
      } else {
        // φ_j(y_k) + D_{j-1}(w_k) = 0
        if (j == n - 1) {
          const Vector known = phi_top * ys[k];
          for (std::size_t t = 0; t < eq_dim; ++t) b[t] = -known[t];
        } else {
          for (std::size_t t = 0; t < eq_dim; ++t)
            for (std::size_t r = 0; r < m; ++r) block(t, offset[j] + t * m + r) += ys[k][r];
        }
        detail::add_lifted_difference(block, 0, offset[j - 1], checker, k, j - 1);
      }
      for (std::size_t t = 0; t < eq_dim; ++t) {
        sys.append_row(block.row(t));
        rhs.push_back(b[t]);
      }
    }

    std::size_t used = 0;
    StageSolution s;
    for (std::size_t l = n - 1; l-- > (final_step ? 0 : j - 1);) {
      s.levels.push_back(l);
      used += level_size(a, l);
    }
    s.stage = final_step ? "constant" : "level j=" + std::to_string(j);
    s.equations = sys.rows();
    s.unknowns = used;
    Matrix trimmed(sys.rows(), used);
    for (std::size_t r = 0; r < sys.rows(); ++r)
      for (std::size_t c = 0; c < used; ++c) trimmed(r, c) = sys(r, c);
    const AffineSolution sol = solve_affine(trimmed, rhs);
    s.system = trimmed;
    s.rhs = rhs;
    s.feasible = sol.feasible;
    if (sol.feasible) {
      s.particular = sol.particular;
      s.parameters = sol.homogeneous;
    } else {
      s.particular = Vector(used);
      s.parameters = Subspace::zero(used);
      s.certificate = sol.certificate;
    }
    out.push_back(std::move(s));
    if (!out.back().feasible) break;
  }
  return out;
}

inline std::vector<StageSolution> solve_stage2plus(const AlgebraPresentation& a, const Matrix& phi_top) {
  return solve_stage2plus(PbwChecker(a), phi_top);
}

/// Affine slice {p + h} of a stage solution restricted to the block of φ_level.
struct LevelSlice {
  Vector particular;
  Subspace directions;
};

inline LevelSlice level_slice(const AlgebraPresentation& a, const StageSolution& s, std::size_t level) {
  std::size_t start = 0;
  bool found = false;
  for (std::size_t l : s.levels) {
    if (l == level) {
      found = true;
      break;
    }
    start += level_size(a, l);
  }
  if (!found) throw input_error("stage does not contain φ_" + std::to_string(level));
  const std::size_t len = level_size(a, level);
  std::vector<std::size_t> coords(len);
  for (std::size_t i = 0; i < len; ++i) coords[i] = start + i;
  LevelSlice out;
  out.particular.assign(s.particular.begin() + static_cast<std::ptrdiff_t>(start),
                        s.particular.begin() + static_cast<std::ptrdiff_t>(start + len));
  out.directions = project(s.parameters, coords);
  return out;
}

/// Deformation with the given φ_{N-1} and the lower levels read from a
/// cumulative unknown vector (layout of solve_stage2plus).
inline DeformationMap assemble(const AlgebraPresentation& a, const Matrix& phi_top, const Vector& lower) {
  DeformationMap d(a);
  d.set_phi(a.degree() - 1, phi_top);
  std::size_t start = 0;
  for (std::size_t j = a.degree() - 1; j-- > 0;) {
    const std::size_t len = level_size(a, j);
    if (start + len > lower.size()) throw input_error("lower-level vector is too short");
    d.set_phi(j, phi_matrix(a, j, std::span<const Scalar>(lower).subspan(start, len)));
    start += len;
  }
  return d;
}

struct FamilyComparison {
  std::size_t family_dim = 0;
  std::size_t solution_dim = 0;
  bool family_in_solutions = false;   // every generator satisfies the stage-1 condition
  bool solutions_in_family = false;   // dimension match and every solution basis vector in the family span
  bool equal() const { return family_in_solutions && solutions_in_family; }
};

/// Two-sided comparison of a closed-form family of φ_{N-1} (generators in
/// φ_{N-1} coordinates) with the stage-1 solution space. Family membership
/// is tested directly on the condition X ∈ R, independent of the kernel.
inline FamilyComparison family_equals_solutions(const PbwChecker& checker, const std::vector<Vector>& family) {
  const AlgebraPresentation& a = checker.algebra();
  const std::size_t top = a.degree() - 1;
  const StageSolution s1 = solve_stage1(checker);
  const Subspace fam = Subspace::span(family, level_size(a, top));
  FamilyComparison c;
  c.family_dim = fam.dim();
  c.solution_dim = s1.parameters.dim();
  c.family_in_solutions = true;
  for (const Vector& g : family) {
    DeformationMap d(a);
    d.set_phi(top, phi_matrix(a, top, g));
    if (checker.check_j1(d).holds != true) c.family_in_solutions = false;
  }
  c.solutions_in_family = c.family_dim == c.solution_dim;
  for (std::size_t i = 0; i < s1.parameters.dim() && c.solutions_in_family; ++i)
    c.solutions_in_family = fam.contains(s1.parameters.basis_vector(i));
  return c;
}

inline FamilyComparison family_equals_solutions(const AlgebraPresentation& a, const std::vector<Vector>& family) {
  return family_equals_solutions(PbwChecker(a), family);
}

/// Generators of the regular Yang-Mills top-level family
/// j^{αβγ} = (g^{αρ}g^{βγ} − g^{αγ}g^{βρ}) b_ρ + ω^{αβγ} + s^{αβγ},
/// one per b_ρ, per antisymmetric and per symmetric basis tensor.
inline std::vector<Vector> ym_top_family(const Metric& g) {
  const std::size_t d = g.dim();
  std::vector<Vector> out;
  for (std::size_t r = 0; r < d; ++r) {
    ym::CurrentParameters p = ym::CurrentParameters::zero(d);
    p.b[r] = 1;
    out.push_back(ym::current_from_parameters(p, g).j3);
  }
  for (auto& t : symmetric3_basis(d, -1)) out.push_back(std::move(t));
  for (auto& t : symmetric3_basis(d, 1)) out.push_back(std::move(t));
  return out;
}

/// Generators of the regular super Yang-Mills top-level family
/// j̃^{αβγ} = (g^{αγ}g^{βρ} − g^{βγ}g^{αρ}) b_ρ, as φ̃_2 = −j̃ coordinates.
inline std::vector<Vector> sym_top_family(const Metric& g) {
  const std::size_t d = g.dim();
  std::vector<Vector> out;
  for (std::size_t r = 0; r < d; ++r) {
    Vector b(d);
    b[r] = 1;
    out.push_back(scaled(sym::super_current_from_parameters(b, Vector(d * d), g).jt3, -1));
  }
  return out;
}

}  // namespace pbwforge
