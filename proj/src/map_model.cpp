/**
 * @file map_model.cpp
 * @brief Validation, coordinate changes, map action, Choi matrix, JSON I/O.
 */

#include "wmap/map_model.hpp"

#include <cmath>
#include <json.hpp>

namespace wmap {

namespace {

using json = nlohmann::json;

double entry_scale(const std::array<std::array<double, 3>, 3>& e) {
    double s = 1;
    for (const auto& row : e)
        for (double v : row) s = std::max(s, std::abs(v));
    return s;
}

}  // namespace

WMatrix wmatrix_unchecked(const std::array<std::array<double, 3>, 3>& entries) {
    WMatrix W;
    W.m = entries;
    double w = 0;
    for (int j = 0; j < 3; ++j) w += entries[0][j];
    W.w = w;
    W.block_diagonal = false;
    return W;
}

WMatrix make_wmatrix(const std::array<std::array<double, 3>, 3>& entries,
                     const Tolerance& tol) {
    const double scale = entry_scale(entries);
    const double slack = tol.eps_eq * scale;

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (entries[i][j] < -slack)
                throw domain_error("entry (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") is negative");

    double sums[6];
    for (int i = 0; i < 3; ++i) {
        sums[i] = entries[i][0] + entries[i][1] + entries[i][2];
        sums[3 + i] = entries[0][i] + entries[1][i] + entries[2][i];
    }
    double w = 0;
    for (double s : sums) w += s / 6;
    for (int k = 0; k < 6; ++k)
        if (std::abs(sums[k] - w) > 3 * slack)
            throw domain_error(std::string(k < 3 ? "row" : "column") + " sum " +
                               std::to_string(k % 3) +
                               " differs from the common row/column sum");
    if (w <= slack) throw domain_error("common row/column sum must be positive");

    WMatrix W;
    W.m = entries;
    W.w = w;

    // Index i decouples when row i and column i have no off-diagonal weight;
    // the map then splits into a 1x1 and a 2x2 block and the admissible
    // region treatment below does not apply.
    const double zero_cut = tol.eps_eq * std::max(1.0, w);
    for (int i = 0; i < 3; ++i) {
        bool decoupled = true;
        for (int j = 0; j < 3; ++j) {
            if (j == i) continue;
            if (entries[i][j] > zero_cut || entries[j][i] > zero_cut) decoupled = false;
        }
        if (decoupled) W.block_diagonal = true;
    }
    return W;
}

WMatrix circulant_wmatrix(double a, double b, double c, const Tolerance& tol) {
    return make_wmatrix({{{a, b, c}, {c, a, b}, {b, c, a}}}, tol);
}

WMatrix w_from_birkhoff(const BirkhoffParams& p, const Tolerance& tol) {
    if (std::abs(p.d + p.e + p.f) > tol.eps_eq * std::max(1.0, std::abs(p.a)))
        throw domain_error("gauge violated: d + e + f must vanish");
    return make_wmatrix({{{p.a + p.f, p.b + p.d, p.c + p.e},
                          {p.c + p.d, p.a + p.e, p.b + p.f},
                          {p.b + p.e, p.c + p.f, p.a + p.d}}},
                        tol);
}

BirkhoffParams birkhoff_from_w(const WMatrix& W) {
    BirkhoffParams p;
    p.a = W.trace() / 3;
    p.f = W.at(0, 0) - p.a;
    p.e = W.at(1, 1) - p.a;
    p.d = W.at(2, 2) - p.a;
    p.b = W.at(0, 1) - p.d;
    p.c = W.at(0, 2) - p.e;
    return p;
}

WMatrix circulant_average(const WMatrix& W) {
    std::array<std::array<double, 3>, 3> c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) c[i][j] += W.at((i + k) % 3, (j + k) % 3) / 3;
    WMatrix C = wmatrix_unchecked(c);
    C.w = W.w;
    return C;
}

double delta(const WMatrix& W, const Tolerance& tol) {
    double d01 = std::abs(W.at(0, 1) - W.at(1, 0));
    double d02 = std::abs(W.at(0, 2) - W.at(2, 0));
    double d12 = std::abs(W.at(1, 2) - W.at(2, 1));
    // Equality of the three asymmetries follows from the matching row and
    // column sums; a disagreement beyond the validation slack means the
    // matrix was corrupted after construction.
    double band = 4 * tol.eps_eq * std::max(1.0, W.w);
    if (std::abs(d01 - d02) > band || std::abs(d01 - d12) > band)
        throw consistency_error("pairwise asymmetries |W_ij - W_ji| disagree");
    return (d01 + d02 + d12) / 3;
}

Hermitian3 rank_one(const std::array<Cplx, 3>& psi) {
    Hermitian3 X;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) X.x[i][j] = psi[i] * std::conj(psi[j]);
    return X;
}

Hermitian3 apply_map(const WMatrix& W, const Hermitian3& X) {
    Hermitian3 Y;
    for (int i = 0; i < 3; ++i) {
        double z = 0;
        for (int j = 0; j < 3; ++j) z += W.at(i, j) * X.x[j][j].real();
        for (int j = 0; j < 3; ++j) Y.x[i][j] = -X.x[i][j];
        Y.x[i][i] += z;
    }
    return Y;
}

SymMatrix choi_matrix(const WMatrix& W) {
    SymMatrix C(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            // Block (i,j) = Phi_W(E_ij).  For i == j this is
            // diag(W_0j, W_1j, W_2j) - E_jj; otherwise just -E_ij.
            if (i == j) {
                for (int k = 0; k < 3; ++k) C.at(3 * i + k, 3 * j + k) = W.at(k, j);
                C.at(3 * i + i, 3 * j + j) -= 1;
            } else {
                C.at(3 * i + i, 3 * j + j) = -1;
            }
        }
    return C;
}

WMatrix wmatrix_from_json_text(const std::string& text, const Tolerance& tol) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw domain_error(std::string("invalid JSON: ") + e.what());
    }
    if (j.contains("matrix")) {
        const auto& m = j["matrix"];
        if (!m.is_array() || m.size() != 3)
            throw domain_error("\"matrix\" must be a 3x3 array of numbers");
        std::array<std::array<double, 3>, 3> e{};
        for (int i = 0; i < 3; ++i) {
            if (!m[i].is_array() || m[i].size() != 3)
                throw domain_error("\"matrix\" must be a 3x3 array of numbers");
            for (int k = 0; k < 3; ++k) e[i][k] = m[i][k].get<double>();
        }
        return make_wmatrix(e, tol);
    }
    if (j.contains("circulant")) {
        const auto& v = j["circulant"];
        if (!v.is_array() || v.size() != 3)
            throw domain_error("\"circulant\" must be [a, b, c]");
        return circulant_wmatrix(v[0].get<double>(), v[1].get<double>(),
                                 v[2].get<double>(), tol);
    }
    if (j.contains("birkhoff")) {
        const auto& v = j["birkhoff"];
        if (!v.is_array() || v.size() != 6)
            throw domain_error("\"birkhoff\" must be [a, b, c, d, e, f]");
        BirkhoffParams p{v[0].get<double>(), v[1].get<double>(), v[2].get<double>(),
                         v[3].get<double>(), v[4].get<double>(), v[5].get<double>()};
        return w_from_birkhoff(p, tol);
    }
    throw domain_error("expected one of \"matrix\", \"circulant\", \"birkhoff\"");
}

std::string wmatrix_to_json_text(const WMatrix& W) {
    json j;
    j["matrix"] = {{W.at(0, 0), W.at(0, 1), W.at(0, 2)},
                   {W.at(1, 0), W.at(1, 1), W.at(1, 2)},
                   {W.at(2, 0), W.at(2, 1), W.at(2, 2)}};
    j["w"] = W.w;
    BirkhoffParams p = birkhoff_from_w(W);
    j["birkhoff"] = {p.a, p.b, p.c, p.d, p.e, p.f};
    return j.dump();
}

}  // namespace wmap
