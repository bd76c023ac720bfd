#pragma once
/**
 * @file positivity.hpp
 * @brief Complete positivity and positivity classification.
 *
 * On rank-one projectors with amplitudes x_i = |psi_i|^2 the map gives
 * Phi_W(psi psi*) = diag(z) - psi psi*,  z_i = sum_j W_ij x_j, and (for
 * vanishing phases) positivity reduces to the principal minors of
 * diag(z) - sqrt(x) sqrt(x)^T, or equivalently to
 *
 *     f(x) = sum_i x_i / z_i <= 1
 *
 * wherever z > 0.  The classifier combines four closed-form conditions:
 *  - vertex:   W_ii >= 1 for each i (pure basis states),
 *  - edge:     sqrt((W_ii-1)(W_jj-1)) + sqrt(W_ij W_ji) >= 1 per pair,
 *  - interior: w >= 3 (the uniform state),
 *  - a Hessian gate: concavity of the boundary data at the uniform state,
 *    decided by the matrix  What = w (W + W^T) - 2 W^T W  restricted to the
 *    plane orthogonal to (1,1,1).
 *
 * When the gate holds, vertex+edge+interior are exactly equivalent to
 * positivity; without the gate they remain necessary, and the classifier
 * falls back to a certified "no" (explicit witness) or "unknown".
 */

#include <array>
#include <optional>

#include "wmap/map_model.hpp"
#include "wmap/numerics.hpp"

namespace wmap {

enum class Verdict { yes, no, unknown };
const char* to_string(Verdict v);

struct PositivityConditions {
    std::array<bool, 3> vertex{};  ///< W_ii >= 1
    std::array<bool, 3> edge{};    ///< pairs (0,1), (0,2), (1,2)
    bool interior = false;         ///< w >= 3
    bool hessian = false;          ///< gate: concavity at the uniform state
};

struct PositivityVerdict {
    bool cp = false;
    Verdict positive = Verdict::unknown;
    PositivityConditions conditions;
    /// Amplitudes |psi_i| of a state with Phi_W(psi psi*) not PSD (phases
    /// are all zero); present exactly when positive == no.
    std::optional<std::array<double, 3>> witness;
    /// Smallest eigenvalue of Phi_W at the witness (when present).
    double witness_eigenvalue = 0;
};

/// Complete positivity: all W_ii > 0 and sum_i 1/W_ii <= 1.  Equivalent to
/// the Choi matrix being PSD (the off-diagonal Choi blocks only contribute
/// the nonnegative entries W_ij on the diagonal).
bool is_completely_positive(const WMatrix& W, const Tolerance& tol = {});

std::array<bool, 3> vertex_conditions(const WMatrix& W, const Tolerance& tol = {});

/// Edge conditions per pair; a pair whose vertex conditions fail is
/// reported false (the square roots would leave the real line).
std::array<bool, 3> edge_conditions(const WMatrix& W, const Tolerance& tol = {});

bool interior_condition(const WMatrix& W, const Tolerance& tol = {});

/// What = w (W + W^T) - 2 W^T W.  Always annihilates (1,1,1).
SymMatrix hessian_matrix(const WMatrix& W);

/// Gate test.  Algebraic form: with g = sqrt((tr W - 2w)^2 + 3 delta^2),
/// requires w >= g and
///   (W00-W11)^2 + (W11-W22)^2 + (W22-W00)^2 <= (w - g)^2 / 2.
/// Cross-checked against PSD of What restricted to the plane orthogonal to
/// (1,1,1); disagreement beyond noise raises consistency_error.
bool hessian_condition(const WMatrix& W, const Tolerance& tol = {});

/// Thrown by f_value when z_i <= 0 with x_i > 0 (the map is then certainly
/// not positive in that direction).
class singularity_error : public domain_error {
  public:
    singularity_error(const std::string& msg, int index)
        : domain_error(msg), index(index) {}
    int index;
};

/// f(x) = sum over {i : x_i > 0} of x_i / z_i (scale invariant; x need not
/// be normalized).  Indices with x_i = 0 are skipped, so the value is also
/// defined on the simplex boundary.
double f_value(const WMatrix& W, const std::array<double, 3>& x);

/// Principal minor of diag(z) - sqrt(x) sqrt(x)^T over the index subset
/// encoded in mask (bit i = index i):
///   prod_{i in I} z_i - sum_{i in I} x_i prod_{j in I, j != i} z_j.
double principal_minor(const WMatrix& W, const std::array<double, 3>& x,
                       unsigned mask);

/// Full positivity classification.  Throws domain_error for block-diagonal
/// W (the boundary analysis degenerates there).  "no" verdicts always carry
/// an eigenvalue-verified witness.
PositivityVerdict classify_positivity(const WMatrix& W, const Tolerance& tol = {});

}  // namespace wmap
