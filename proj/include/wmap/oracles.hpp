#pragma once
/**
 * @file oracles.hpp
 * @brief Independent brute-force checks used to validate the closed-form
 *        classification: simplex maximization of f, Monte-Carlo rank-one
 *        probing, and a finite-difference Hessian.
 *
 * These are deliberately dumb and slow; they share no algebra with the
 * classifier beyond the definition of the map itself.
 */

#include <array>
#include <cstdint>
#include <random>

#include "wmap/map_model.hpp"
#include "wmap/numerics.hpp"

namespace wmap {

struct MaxFResult {
    double max_value = 0;  ///< largest support-restricted f value found
    std::array<double, 3> argmax{};
    bool singular = false;  ///< hit x with x_i > 0 but z_i = 0 (certain refutation)
    std::array<double, 3> singular_witness{};
};

/// Maximizes the support-restricted boundary function
///   f_S(x) = sum_{i: x_i > 0} x_i / z_i,   z = W x,
/// over the closed probability simplex: all lattice points (i,j,k)/depth
/// (about depth^2/2 evaluations) followed by 50 rounds of shrinking-step
/// coordinate-pair descent from the best grid point.  f_S > 1 anywhere, or
/// a singular point, certifies that the map is not positive; the converse
/// direction is only as good as the grid.  Deterministic.
MaxFResult max_f_on_simplex(const WMatrix& W, int depth = 200);

struct ProbeReport {
    double min_eigenvalue = 0;
    std::array<double, 3> argmin{};  ///< amplitudes of the worst state seen
    int samples = 0;
    std::uint64_t seed = 0;
};

/// Samples rank-one projectors psi psi* with amplitudes drawn uniformly
/// from the simplex (|psi_i|^2 simplex-uniform, phases zero) and reports
/// the smallest eigenvalue of Phi_W(psi psi*) encountered.  Deterministic
/// for a fixed seed.
ProbeReport rank_one_probe(const WMatrix& W, int samples = 10000,
                           std::uint64_t seed = 0x77a5);

/// Central-difference Hessian of f at an interior point (all x_i > 0,
/// all z_i > 0); f is evaluated unconstrained (it is scale invariant, no
/// simplex projection is involved).
SymMatrix fd_hessian_f(const WMatrix& W, const std::array<double, 3>& x,
                       double step = 1e-4);

/// Rejection-samples a valid map matrix through the Birkhoff coordinates
/// (a in [0.8, 4], b, c in [0, 2], a traceless diagonal part within the
/// entrywise-nonnegative set).  Never returns a block-diagonal matrix.
/// With vertex_admissible, additionally requires all W_ii >= 1.
WMatrix random_wmatrix(std::mt19937_64& rng, bool vertex_admissible = false);

}  // namespace wmap
