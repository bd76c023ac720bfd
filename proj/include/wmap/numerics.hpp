#pragma once
/**
 * @file numerics.hpp
 * @brief Small dense symmetric eigensolver and low-degree real root finding.
 *
 * Everything in the project runs through the primitives here: symmetric
 * matrices up to 9x9 (Choi matrices), their eigendecompositions, a PSD test,
 * and real roots of polynomials up to degree 4 (boundary-curve equations).
 * Matrices are tiny, so a cyclic Jacobi sweep is both simple and accurate;
 * roots come from closed forms with a Newton polish on top.
 */

#include <array>
#include <vector>

namespace wmap {

/// Tolerance bundle used across the library.
///
/// eps_psd  : eigenvalue slack for "positive semidefinite" (absolute).
/// eps_eq   : slack for scalar equalities/inequalities on matrix entries.
/// eps_root : admissible residual when validating polynomial/curve roots.
struct Tolerance {
    double eps_psd = 1e-9;
    double eps_eq = 1e-9;
    double eps_root = 1e-6;

    static Tolerance strict() { return {1e-12, 1e-12, 1e-9}; }
    static Tolerance loose() { return {1e-6, 1e-6, 1e-4}; }
};

/// Builds the default tolerance from the environment:
/// WMAP_TOL_PROFILE = default | strict | loose selects a preset, and
/// WMAP_EPS_PSD / WMAP_EPS_EQ / WMAP_EPS_ROOT override individual entries.
Tolerance tolerance_from_env();

/// Dense real symmetric matrix, dimension 2..9, row-major storage.
/// Only the used n*n prefix of the backing array is meaningful.
class SymMatrix {
  public:
    static constexpr int kMaxN = 9;

    explicit SymMatrix(int n);

    int n() const { return n_; }
    double& at(int i, int j) { return a_[i * kMaxN + j]; }
    double at(int i, int j) const { return a_[i * kMaxN + j]; }

    /// Sets entries (i,j) and (j,i) together.
    void set_sym(int i, int j, double v) {
        at(i, j) = v;
        at(j, i) = v;
    }

    /// Largest absolute entry (0 for the zero matrix).
    double max_abs() const;

    /// Replaces the matrix by its symmetric part (A + A^T)/2.
    void symmetrize();

    static SymMatrix identity(int n);

  private:
    int n_;
    std::array<double, kMaxN * kMaxN> a_{};
};

/// Eigendecomposition of a symmetric matrix: values ascending, vectors[k]
/// is the orthonormal eigenvector for values[k].
struct EigResult {
    std::vector<double> values;
    std::vector<std::array<double, SymMatrix::kMaxN>> vectors;
};

/// Cyclic Jacobi diagonalization. Convergence: every off-diagonal entry
/// falls below 1e-12 * max|m_ij|. The input is symmetrized first, so tiny
/// asymmetries from accumulated rounding are harmless.
EigResult eig_sym(const SymMatrix& m);

/// True when all eigenvalues are >= -tol.eps_psd (absolute slack).
bool is_psd(const SymMatrix& m, const Tolerance& tol = {});

/// Polynomial with ascending coefficients: p(x) = sum coeffs[k] * x^k.
/// Degree at most 4.
struct Poly {
    std::vector<double> coeffs;
};

/// Evaluates p at x (Horner).
double poly_eval(const Poly& p, double x);

/// Real roots of p, ascending. Near-zero leading coefficients (below
/// 1e-14 * max|coeff|) are stripped so the effective degree drops instead of
/// producing spurious huge roots. Complex pairs are discarded with the
/// realness cut |Im| <= 1e-9 * (1 + |Re|); surviving roots are polished by
/// Newton iteration against the original polynomial. Multiple roots may be
/// reported once per closed-form branch.
std::vector<double> real_roots(const Poly& p, const Tolerance& tol = {});

}  // namespace wmap
