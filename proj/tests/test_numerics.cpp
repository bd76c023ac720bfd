/**
 * @file test_numerics.cpp
 * @brief Unit and property tests for the eigensolver and root finder.
 *
 * Properties checked:
 *  - eig_sym reconstructs A = V diag(w) V^T to 1e-10 * |A|_max with
 *    orthonormal V and ascending eigenvalues;
 *  - every reported eigenvalue brackets a sign change of det(A - t I)
 *    within 1e-8 (bisection oracle, LU determinant);
 *  - is_psd is invariant under orthogonal conjugation;
 *  - real_roots recovers planted roots to 1e-7 and honors the residual
 *    contract, including degraded leading coefficients.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wmap/numerics.hpp"

using wmap::EigResult;
using wmap::Poly;
using wmap::SymMatrix;
using wmap::Tolerance;

namespace {

SymMatrix random_sym(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set_sym(i, j, u(rng));
    return m;
}

/// det(A - t I) via LU with partial pivoting.
double shifted_det(const SymMatrix& m, double t) {
    int n = m.n();
    double a[9][9];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j) - (i == j ? t : 0.0);
    double det = 1;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        if (a[col][col] == 0) return 0;
        det *= a[col][col];
        for (int r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            for (int k = col; k < n; ++k) a[r][k] -= f * a[col][k];
        }
    }
    return det;
}

/// Gram-Schmidt orthonormalization of a random matrix -> orthogonal Q.
void random_orthogonal(int n, std::mt19937_64& rng, double q[9][9]) {
    std::uniform_real_distribution<double> u(-1, 1);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) q[i][j] = u(rng);
        for (int k = 0; k < j; ++k) {
            double dot = 0;
            for (int i = 0; i < n; ++i) dot += q[i][j] * q[i][k];
            for (int i = 0; i < n; ++i) q[i][j] -= dot * q[i][k];
        }
        double norm = 0;
        for (int i = 0; i < n; ++i) norm += q[i][j] * q[i][j];
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) q[i][j] /= (norm > 0 ? norm : 1);
    }
}

Poly from_roots(const std::vector<double>& roots, double lead = 1.0) {
    std::vector<double> c{lead};
    for (double r : roots) {
        c.push_back(0);
        for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k)
            c[k] = c[k - 1] - r * c[k];
        c[0] *= -r;
    }
    return Poly{c};
}

}  // namespace

TEST_CASE("eig_sym on matrices with known spectra") {
    SymMatrix a(2);
    a.at(0, 0) = 2;
    a.at(1, 1) = 2;
    a.set_sym(0, 1, 1);
    EigResult e = wmap::eig_sym(a);
    CHECK(e.values[0] == doctest::Approx(1).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(3).epsilon(1e-12));

    // All-ones off-diagonal 3x3: eigenvalues -1, -1, 2.
    SymMatrix b(3);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) b.set_sym(i, j, 1);
    e = wmap::eig_sym(b);
    CHECK(e.values[0] == doctest::Approx(-1).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(-1).epsilon(1e-12));
    CHECK(e.values[2] == doctest::Approx(2).epsilon(1e-12));

    SymMatrix z(5);
    e = wmap::eig_sym(z);
    for (double v : e.values) CHECK(v == 0);
}

TEST_CASE("eig_sym reconstruction, orthonormality, ordering") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 8);
        SymMatrix m = random_sym(n, rng);
        EigResult e = wmap::eig_sym(m);

        for (int k = 0; k + 1 < n; ++k) CHECK(e.values[k] <= e.values[k + 1]);

        double scale = std::max(m.max_abs(), 1e-30);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double rec = 0;
                for (int k = 0; k < n; ++k)
                    rec += e.values[k] * e.vectors[k][i] * e.vectors[k][j];
                CHECK(std::abs(rec - m.at(i, j)) <= 1e-10 * scale);
            }

        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                double dot = 0;
                for (int i = 0; i < n; ++i) dot += e.vectors[k][i] * e.vectors[l][i];
                CHECK(std::abs(dot - (k == l ? 1 : 0)) <= 1e-10);
            }
    }
}

TEST_CASE("eigenvalues bracket sign changes of the shifted determinant") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng() % 8);
        SymMatrix m = random_sym(n, rng);
        EigResult e = wmap::eig_sym(m);
        for (int k = 0; k < n; ++k) {
            // Skip (near-)multiple eigenvalues: no sign change to bracket.
            double gap = 1e300;
            if (k > 0) gap = std::min(gap, e.values[k] - e.values[k - 1]);
            if (k + 1 < n) gap = std::min(gap, e.values[k + 1] - e.values[k]);
            if (gap < 1e-6) continue;
            double h = 1e-8 * std::max(1.0, std::abs(e.values[k]));
            double lo = shifted_det(m, e.values[k] - h);
            double hi = shifted_det(m, e.values[k] + h);
            CHECK(lo * hi <= 0);
        }
    }
}

TEST_CASE("is_psd basic and under orthogonal conjugation") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng() % 8);

        // B^T B is PSD by construction.
        double b[9][9];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b[i][j] = u(rng);
        SymMatrix g(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0;
                for (int k = 0; k < n; ++k) s += b[k][i] * b[k][j];
                g.at(i, j) = s;
            }
        CHECK(wmap::is_psd(g));

        // Shift just below the smallest eigenvalue: no longer PSD.
        EigResult e = wmap::eig_sym(g);
        SymMatrix shifted = g;
        for (int i = 0; i < n; ++i) shifted.at(i, i) -= e.values[0] + 1e-6;
        CHECK(!wmap::is_psd(shifted));

        // Conjugation by a random orthogonal matrix preserves the verdict.
        SymMatrix m = random_sym(n, rng);
        double q[9][9];
        random_orthogonal(n, rng, q);
        SymMatrix conj(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0;
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) s += q[i][k] * m.at(k, l) * q[j][l];
                conj.at(i, j) = s;
            }
        conj.symmetrize();
        // Exclude verdict flips caused by an eigenvalue sitting on the
        // tolerance edge itself.
        double margin = std::abs(wmap::eig_sym(m).values.front() + 1e-9);
        if (margin > 1e-11) CHECK(wmap::is_psd(conj) == wmap::is_psd(m));
    }
}

TEST_CASE("real_roots recovers planted roots") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int trial = 0; trial < 300; ++trial) {
        int deg = 1 + static_cast<int>(rng() % 4);
        std::vector<double> planted;
        for (int k = 0; k < deg; ++k) planted.push_back(u(rng));
        std::sort(planted.begin(), planted.end());
        Poly p = from_roots(planted, u(rng) >= 0 ? 2.5 : -2.5);

        std::vector<double> got = wmap::real_roots(p);
        REQUIRE(got.size() == planted.size());
        double maxc = 0;
        for (double c : p.coeffs) maxc = std::max(maxc, std::abs(c));
        for (size_t k = 0; k < planted.size(); ++k) {
            CHECK(std::abs(got[k] - planted[k]) <= 1e-7 * (1 + std::abs(planted[k])));
            CHECK(std::abs(wmap::poly_eval(p, got[k])) <= 1e-6 * (1 + maxc));
        }
    }
}

TEST_CASE("real_roots corner cases") {
    // Complex pair only.
    CHECK(wmap::real_roots(Poly{{1, 0, 1}}).empty());
    // Constant and zero polynomials.
    CHECK(wmap::real_roots(Poly{{4}}).empty());
    CHECK(wmap::real_roots(Poly{{0, 0, 0}}).empty());
    // Linear.
    auto r = wmap::real_roots(Poly{{-6, 2}});
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(3).epsilon(1e-12));

    // Double root x^2 - 2x + 1: reported once or twice, value 1.
    r = wmap::real_roots(Poly{{1, -2, 1}});
    REQUIRE(!r.empty());
    for (double x : r) CHECK(x == doctest::Approx(1).epsilon(1e-6));

    // Degraded leading coefficient: effectively cubic with roots 1, 2, 3.
    Poly q{{-6, 11, -6, 1, 1e-18}};
    r = wmap::real_roots(q);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(1).epsilon(1e-7));
    CHECK(r[1] == doctest::Approx(2).epsilon(1e-7));
    CHECK(r[2] == doctest::Approx(3).epsilon(1e-7));

    // Mixed real/complex quartic: (x^2+1)(x-1)(x+2).
    Poly mix{{-2, 1, -1, 1, 1}};
    r = wmap::real_roots(mix);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(-2).epsilon(1e-7));
    CHECK(r[1] == doctest::Approx(1).epsilon(1e-7));
}
