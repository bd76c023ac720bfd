/**
 * @file decomposability.cpp
 * @brief Decomposition construction, trace witness, circulant reduction.
 */

#include "wmap/decomposability.hpp"

#include <cmath>

namespace wmap {

namespace {

/// Coupling sqrt((W_ii-1)(W_jj-1))/2 with negative products clamped (they
/// only occur within validation slack of a vanishing factor).
double half_root(const WMatrix& W, int i, int j) {
    double p = (W.at(i, i) - 1) * (W.at(j, j) - 1);
    return 0.5 * std::sqrt(std::max(0.0, p));
}

/// Transposes each 3x3 block of a 9x9 matrix in place: (id (x) T).
SymMatrix blockwise_transpose(const SymMatrix& m) {
    SymMatrix out(9);
    for (int bi = 0; bi < 3; ++bi)
        for (int bj = 0; bj < 3; ++bj)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    out.at(3 * bi + k, 3 * bj + l) = m.at(3 * bi + l, 3 * bj + k);
    return out;
}

}  // namespace

bool sufficient_condition(const WMatrix& W, const Tolerance& tol) {
    auto vert = vertex_conditions(W, tol);
    if (!vert[0] || !vert[1] || !vert[2]) return false;
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    double scale = std::max(1.0, W.w * W.w);
    for (const auto& pr : pairs) {
        int i = pr[0], j = pr[1];
        double b = half_root(W, i, j) - 1;
        if (W.at(i, j) * W.at(j, i) < b * b - tol.eps_eq * scale) return false;
    }
    return true;
}

Decomposition build_decomposition(const WMatrix& W) {
    Decomposition d;
    // A: diagonal-block data at slots 0, 4, 8 with the negative couplings.
    const int diag_slot[3] = {0, 4, 8};
    for (int i = 0; i < 3; ++i) d.A.at(diag_slot[i], diag_slot[i]) = W.at(i, i) - 1;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            d.A.set_sym(diag_slot[i], diag_slot[j], -half_root(W, i, j));

    // B: off-diagonal weights; after blockwise transposition its couplings
    // land on the slots where the Choi matrix holds its -1 entries.
    d.B.at(1, 1) = W.at(1, 0);
    d.B.at(2, 2) = W.at(2, 0);
    d.B.at(3, 3) = W.at(0, 1);
    d.B.at(5, 5) = W.at(2, 1);
    d.B.at(6, 6) = W.at(0, 2);
    d.B.at(7, 7) = W.at(1, 2);
    d.B.set_sym(1, 3, half_root(W, 0, 1) - 1);
    d.B.set_sym(2, 6, half_root(W, 0, 2) - 1);
    d.B.set_sym(5, 7, half_root(W, 1, 2) - 1);

    SymMatrix choi = choi_matrix(W);
    SymMatrix bt = blockwise_transpose(d.B);
    double res = 0;
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j)
            res = std::max(res, std::abs(d.A.at(i, j) + bt.at(i, j) - choi.at(i, j)));
    d.residual = res;
    return d;
}

std::pair<bool, double> necessary_condition(const WMatrix& W, const Tolerance& tol) {
    double value = W.trace() - 9;
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& pr : pairs) {
        double p = W.at(pr[0], pr[1]) * W.at(pr[1], pr[0]);
        value += 2 * std::sqrt(std::max(0.0, p));
    }
    return {value >= -tol.eps_eq * std::max(1.0, W.w), value};
}

double witness_trace(const WMatrix& W, double eps1, double eps2, double eps3) {
    if (eps1 <= 0 || eps2 <= 0 || eps3 <= 0)
        throw domain_error("witness parameters eps must be positive");

    double value = W.trace() - 9;
    value += eps1 * W.at(1, 0) + W.at(0, 1) / eps1;
    value += eps2 * W.at(0, 2) + W.at(2, 0) / eps2;
    value += eps3 * W.at(2, 1) + W.at(1, 2) / eps3;

    // Literal pairing with the 9x9 witness as a cross-check.
    SymMatrix X(9);
    const double diag[9] = {1, eps1, 1 / eps2, 1 / eps1, 1, eps3, eps2, 1 / eps3, 1};
    for (int i = 0; i < 9; ++i) X.at(i, i) = diag[i];
    X.set_sym(0, 4, 1);
    X.set_sym(0, 8, 1);
    X.set_sym(4, 8, 1);
    SymMatrix choi = choi_matrix(W);
    double literal = 0;
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) literal += choi.at(i, j) * X.at(j, i);
    double scale = std::max({1.0, std::abs(value), choi.max_abs() * X.max_abs()});
    if (std::abs(literal - value) > 1e-12 * scale)
        throw consistency_error("witness trace: closed form and literal 9x9 "
                                "pairing disagree");
    return value;
}

bool circulant_reduction(const WMatrix& W, const Tolerance& tol) {
    WMatrix C = circulant_average(W);
    double a = C.at(0, 0), b = C.at(0, 1), c = C.at(0, 2);
    double s = a + b + c;

    // Positivity of the circulant map, closed form.
    bool positive = a >= 1 - tol.eps_eq && s >= 3 - tol.eps_eq;
    if (positive && a <= 2 + tol.eps_eq) {
        double gap = (2 - a) * (2 - a);
        positive = b * c >= gap - tol.eps_eq * std::max(1.0, s);
    }
    if (!positive) return false;

    // Certify "strictly inside the non-decomposable circulant region".
    double margin = tol.eps_eq * std::max(1.0, s * s);
    if (a >= 3 - tol.eps_eq) return false;
    double bound = (3 - a) * (3 - a) / 4;
    return b * c < bound - margin;
}

DecomposabilityVerdict classify_decomposability(const WMatrix& W,
                                                const PositivityVerdict& pv,
                                                const Tolerance& tol) {
    DecomposabilityVerdict d;
    auto [nec_ok, nec_val] = necessary_condition(W, tol);
    d.necessary_holds = nec_ok;
    d.necessary_value = nec_val;
    d.sufficient_holds = sufficient_condition(W, tol);

    const double cut = tol.eps_eq * std::max(1.0, W.w);
    for (int i = 0; i < 3 && d.infimum_attained; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            if (W.at(i, j) <= cut && W.at(j, i) > cut) d.infimum_attained = false;
        }

    if (pv.positive == Verdict::no) {
        d.applicable = false;
        return d;
    }

    if (pv.cp) {
        // CP maps decompose trivially: all of the Choi matrix goes into the
        // CP part.
        d.decomposable = Verdict::yes;
        Decomposition trivial;
        trivial.A = choi_matrix(W);
        trivial.residual = 0;
        d.decomposition = trivial;
        return d;
    }

    if (d.sufficient_holds) {
        d.decomposable = Verdict::yes;
        d.decomposition = build_decomposition(W);
        return d;
    }

    if (!d.necessary_holds) {
        d.decomposable = Verdict::no;
        return d;
    }

    if (circulant_reduction(W, tol)) {
        d.decomposable = Verdict::no;
        d.circulant_route = true;
        return d;
    }

    return d;  // unknown
}

}  // namespace wmap
