#pragma once
/**
 * @file map_model.hpp
 * @brief The linear maps under study and their parameterizations.
 *
 * A map is described by a 3x3 entrywise-nonnegative matrix W whose row and
 * column sums all equal the same value w ("scaled doubly stochastic").  It
 * acts on 3x3 Hermitian matrices as
 *
 *     Phi_W(X) = diag(z) - X,   z_i = sum_j W_ij * X_jj.
 *
 * Alternative coordinates: the circulant triple (a,b,c) and the Birkhoff
 * parameters (a,b,c,d,e,f) with gauge d+e+f = 0,
 *
 *     W = [ a+f  b+d  c+e ]
 *         [ c+d  a+e  b+f ]
 *         [ b+e  c+f  a+d ].
 */

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include "wmap/numerics.hpp"

namespace wmap {

/// Invalid input: an invariant of the requested object is violated.  The
/// message names the invariant.
class domain_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Two redundant internal computations disagree beyond tolerance; indicates
/// a defect, surfaced instead of silently picking one answer.
class consistency_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Validated map matrix.
struct WMatrix {
    std::array<std::array<double, 3>, 3> m{};
    double w = 0;               ///< common row/column sum
    bool block_diagonal = false;  ///< an index decouples from the other two

    double at(int i, int j) const { return m[i][j]; }
    double trace() const { return m[0][0] + m[1][1] + m[2][2]; }
};

/// Validates entries (nonnegative within tol.eps_eq; all six row/column sums
/// equal within tol.eps_eq relative slack; common sum positive) and flags
/// block-diagonal structure: index i decouples when every off-diagonal entry
/// of row i and column i is below tol.eps_eq * max(1, w).  Throws
/// domain_error naming the violated invariant.
WMatrix make_wmatrix(const std::array<std::array<double, 3>, 3>& entries,
                     const Tolerance& tol = {});

/// Same representation, no validation.  For diagnostics that evaluate
/// map-derived quantities at points outside the admissible entry set
/// (e.g. Hessian spectra along boundary curves).
WMatrix wmatrix_unchecked(const std::array<std::array<double, 3>, 3>& entries);

/// Circulant matrix with first row (a, b, c).
WMatrix circulant_wmatrix(double a, double b, double c, const Tolerance& tol = {});

/// Birkhoff-basis coordinates; the gauge d+e+f = 0 makes them unique.
struct BirkhoffParams {
    double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;
};

/// Builds W from Birkhoff parameters (the gauge is enforced: |d+e+f| must be
/// below tol.eps_eq) and validates the result.
WMatrix w_from_birkhoff(const BirkhoffParams& p, const Tolerance& tol = {});

/// Unique gauge-fixed inverse: a = tr(W)/3, f = W00 - a, e = W11 - a,
/// d = W22 - a, b = W01 - d, c = W02 - e.
BirkhoffParams birkhoff_from_w(const WMatrix& W);

/// Average of W over the cyclic index shifts; always circulant, preserves
/// the common sum w and the trace.
WMatrix circulant_average(const WMatrix& W);

/// The common asymmetry |W_ij - W_ji| (equal for all three pairs whenever
/// the row/column sums match; checked, consistency_error on disagreement).
double delta(const WMatrix& W, const Tolerance& tol = {});

using Cplx = std::complex<double>;

/// Dense 3x3 complex Hermitian matrix.
struct Hermitian3 {
    std::array<std::array<Cplx, 3>, 3> x{};
};

/// psi psi^dagger for a complex 3-vector psi.
Hermitian3 rank_one(const std::array<Cplx, 3>& psi);

/// Applies the map: diag(W * diag(X)) - X.
Hermitian3 apply_map(const WMatrix& W, const Hermitian3& X);

/// Choi matrix sum_ij E_ij (x) Phi_W(E_ij), a real symmetric 9x9 matrix:
/// block (i,j) holds Phi_W(E_ij).
SymMatrix choi_matrix(const WMatrix& W);

/// Serialization of a map description.  Accepted JSON shapes:
///   {"matrix": [[...],[...],[...]]}, {"circulant": [a,b,c]},
///   {"birkhoff": [a,b,c,d,e,f]}.
WMatrix wmatrix_from_json_text(const std::string& text, const Tolerance& tol = {});
std::string wmatrix_to_json_text(const WMatrix& W);

}  // namespace wmap
