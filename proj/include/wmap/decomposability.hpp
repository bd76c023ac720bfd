#pragma once
/**
 * @file decomposability.hpp
 * @brief Decomposability of the maps: explicit decompositions, a trace
 *        witness against partial-transpose-invariant states, and the
 *        circulant-average reduction.
 *
 * A positive map is decomposable when it splits as CP1 + CP2 o T.  On the
 * Choi matrix C this means C = A + (id (x) T)(B) with A, B both PSD.  The
 * candidate split used here puts the diagonal block entries W_ii - 1 with
 * couplings -sqrt((W_ii-1)(W_jj-1))/2 into A and the off-diagonal weights
 * with couplings sqrt((W_ii-1)(W_jj-1))/2 - 1 into B; A is automatically
 * PSD under the vertex conditions and B is PSD iff
 *
 *     W_ij W_ji >= ( (sqrt((W_ii-1)(W_jj-1)) - 2) / 2 )^2   for i != j.
 *
 * In the other direction, pairing C with the PSD, partial-transpose-PSD
 * family X(eps) gives the necessary condition
 *
 *     sum_i W_ii + 2 sum_{i<j} sqrt(W_ij W_ji) >= 9,
 *
 * and averaging over the cyclic symmetry reduces some undecided cases to
 * the circulant classification.
 */

#include <optional>
#include <utility>

#include "wmap/positivity.hpp"

namespace wmap {

/// An explicit split of the Choi matrix: choi = A + blockwise-transpose(B).
struct Decomposition {
    SymMatrix A{9};
    SymMatrix B{9};
    double residual = 0;  ///< max-abs error of the reconstruction
};

struct DecomposabilityVerdict {
    bool applicable = true;  ///< false when the map is not positive
    Verdict decomposable = Verdict::unknown;
    bool sufficient_holds = false;
    bool necessary_holds = true;
    /// Value of the trace bound minus its threshold; negative refutes
    /// decomposability.
    double necessary_value = 0;
    bool circulant_route = false;  ///< circulant-average argument decided "no"
    /// False when some W_ij = 0 with W_ji > 0: the witness infimum over eps
    /// is approached but not attained.
    bool infimum_attained = true;
    std::optional<Decomposition> decomposition;
};

/// Pairwise PSD conditions for the candidate split above.  False whenever a
/// vertex condition fails (the construction needs W_ii >= 1).
bool sufficient_condition(const WMatrix& W, const Tolerance& tol = {});

/// Builds the candidate split.  The reconstruction residual is computed
/// against the actual Choi matrix; callers should require
/// residual <= 1e-12 * (1 + |choi|_max) and check PSD of both parts.
Decomposition build_decomposition(const WMatrix& W);

/// Trace bound: returns (holds, value) with
/// value = sum_i W_ii + 2 sum_{i<j} sqrt(W_ij W_ji) - 9.
std::pair<bool, double> necessary_condition(const WMatrix& W,
                                            const Tolerance& tol = {});

/// Tr(choi * X(eps)) for the witness family
///   X = diag(1, e1, 1/e2, 1/e1, 1, e3, e2, 1/e3, 1) plus ones at the
///   (0,4), (0,8), (4,8) symmetric slots.
/// All eps_i must be positive (domain_error otherwise).  The closed-form
/// value is cross-checked against the literal 9x9 trace to 1e-12;
/// disagreement raises consistency_error.
double witness_trace(const WMatrix& W, double eps1, double eps2, double eps3);

/// True when the circulant average is positive but sits strictly inside the
/// non-decomposable circulant region (a < 3 and bc < ((3-a)/2)^2); since
/// averaging preserves decomposability, this certifies the original map
/// non-decomposable.
bool circulant_reduction(const WMatrix& W, const Tolerance& tol = {});

/// Combined verdict.  Precedence: not positive -> not applicable; CP ->
/// trivially decomposable (B = 0); sufficient -> yes with decomposition;
/// violated trace bound or circulant reduction -> no; otherwise unknown.
DecomposabilityVerdict classify_decomposability(const WMatrix& W,
                                                const PositivityVerdict& pv,
                                                const Tolerance& tol = {});

}  // namespace wmap
