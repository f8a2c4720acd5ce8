#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fpolab/core.hpp"

namespace fpolab::quantum {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

inline Vec kron_vec(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j)
            out(i * b.size() + j) = a(i) * b(j);
    return out;
}

inline Mat pauli(char p) {
    Mat m(2, 2);
    switch (p) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw UnknownName(std::string("unknown Pauli: ") + p);
    }
    return m;
}

inline Mat cnot_gate() {
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    return m;
}

inline Mat swap_gate() {
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
    return m;
}

inline Mat cz_gate() {
    Mat m = Mat::Identity(4, 4);
    m(3, 3) = -1;
    return m;
}

inline Mat t1_gate() {
    Mat m = Mat::Identity(2, 2);
    m(1, 1) = std::polar(1.0, M_PI / 4.0);
    return m;
}

// Named two-qubit gates accepted by the command line.
inline Mat named_gate(const std::string& name) {
    if (name == "identity" || name == "id") return Mat::Identity(4, 4);
    if (name == "cnot") return cnot_gate();
    if (name == "swap") return swap_gate();
    if (name == "cz") return cz_gate();
    if (name == "t") return kron(t1_gate(), Mat::Identity(2, 2));
    throw UnknownName("unknown gate: " + name);
}

inline Vec ket0() {
    Vec v(2);
    v << 1, 0;
    return v;
}

inline Vec ket1() {
    Vec v(2);
    v << 0, 1;
    return v;
}

inline Vec ket_plus() {
    Vec v(2);
    v << 1, 1;
    return v / std::sqrt(2.0);
}

inline Vec phi_plus() {
    Vec v = Vec::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return v;
}

inline void require_two_qubit_unitary(const Mat& u, double tol = 1e-10) {
    if (u.rows() != 4 || u.cols() != 4)
        throw DimensionError("expected a 4x4 matrix");
    if ((u.adjoint() * u - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() > tol)
        throw DimensionError("matrix is not unitary within 1e-10");
}

// Z^i X^j.
inline Mat pauli_zx(int i, int j) {
    Mat m = Mat::Identity(2, 2);
    for (int k = 0; k < i; ++k) m = pauli('Z') * m;
    Mat r = m;
    for (int k = 0; k < j; ++k) r = r * pauli('X');
    return r;
}

inline Vec bell_vec(int i, int j) {
    return kron(pauli_zx(i, j), Mat::Identity(2, 2)) * phi_plus();
}

// Characteristic polynomial (descending coefficients, monic) of the first
// output qubit's reduced state of U(psi ⊗ phi).
inline std::array<double, 3> reduced_char_poly(const Mat& u, const Vec& psi,
                                               const Vec& phi) {
    if (u.rows() != 4 || u.cols() != 4 || psi.size() != 2 || phi.size() != 2)
        throw DimensionError("reduced_char_poly expects 4x4 and two qubits");
    Vec out = u * kron_vec(psi, phi);
    Mat rho = out * out.adjoint();
    Mat red = Mat::Zero(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c)
            for (int b = 0; b < 2; ++b) red(a, c) += rho(2 * a + b, 2 * c + b);
    double tr = red.trace().real();
    double det = (red(0, 0) * red(1, 1) - red(0, 1) * red(1, 0)).real();
    return {1.0, -tr, det};
}

inline std::array<double, 5> poly_product(const std::array<double, 3>& a,
                                          const std::array<double, 3>& b) {
    std::array<double, 5> c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) c[i + j] += a[i] * b[j];
    return c;
}

struct EvcondResult {
    bool holds = true;
    double worst_dev = 0.0;
    std::array<std::string, 4> witness{};  // (a, a2, b, b2), empty when exact
    bool has_witness = false;
};

// Pairwise factorization identity over products of reduced characteristic
// polynomials; the basis order fixes which witness is reported first.
inline EvcondResult evcond_check(
    const Mat& u, const std::vector<std::pair<std::string, Vec>>& basis,
    double tol = 1e-8) {
    require_two_qubit_unitary(u);
    const size_t n = basis.size();
    std::vector<std::array<double, 3>> polys(n * n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            polys[a * n + b] =
                reduced_char_poly(u, basis[a].second, basis[b].second);
    EvcondResult res;
    for (size_t a = 0; a < n; ++a)
        for (size_t a2 = 0; a2 < n; ++a2)
            for (size_t b = 0; b < n; ++b)
                for (size_t b2 = 0; b2 < n; ++b2) {
                    auto lhs = poly_product(polys[a * n + b], polys[a2 * n + b2]);
                    auto rhs = poly_product(polys[a2 * n + b], polys[a * n + b2]);
                    double dev = 0.0;
                    for (int i = 0; i < 5; ++i)
                        dev = std::max(dev, std::abs(lhs[i] - rhs[i]));
                    if (dev > res.worst_dev) {
                        res.worst_dev = dev;
                        res.witness = {basis[a].first, basis[a2].first,
                                       basis[b].first, basis[b2].first};
                        res.has_witness = true;
                    }
                }
    res.holds = res.worst_dev <= tol;
    return res;
}

inline std::vector<std::pair<std::string, Vec>> default_evcond_basis() {
    return {{"0", ket0()}, {"+", ket_plus()}};
}

struct PauliTerm {
    char a = 'I';
    char b = 'I';
    cplx phase{1.0, 0.0};
};

// Match w against phase * (sigma_a ⊗ sigma_b) with |phase| = 1.
inline std::optional<PauliTerm> pauli_decompose_2q(const Mat& w,
                                                   double tol = 1e-9) {
    static const char names[] = {'I', 'X', 'Y', 'Z'};
    for (char a : names)
        for (char b : names) {
            Mat m = kron(pauli(a), pauli(b));
            cplx c = (m.adjoint() * w).trace() / 4.0;
            if (std::abs(std::abs(c) - 1.0) < tol &&
                (w - c * m).cwiseAbs().maxCoeff() < tol)
                return PauliTerm{a, b, c};
        }
    return std::nullopt;
}

inline std::string format_phase(cplx c, double tol = 1e-9) {
    if (std::abs(c - cplx(1, 0)) < tol) return "+";
    if (std::abs(c + cplx(1, 0)) < tol) return "-";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(%.3f%+.3fj)", c.real(), c.imag());
    return buf;
}

struct CliffordResult {
    bool clifford = false;
    std::map<std::string, std::string> tableau;  // generator -> signed image
    std::string witness;  // first generator whose image is not Pauli
};

// Conjugate the four Pauli generators; a two-qubit unitary is Clifford iff
// every image is again a signed Pauli string.
inline CliffordResult is_clifford_22(const Mat& u) {
    require_two_qubit_unitary(u);
    static const std::array<std::pair<const char*, std::pair<char, char>>, 4>
        gens{{{"XI", {'X', 'I'}},
              {"ZI", {'Z', 'I'}},
              {"IX", {'I', 'X'}},
              {"IZ", {'I', 'Z'}}}};
    CliffordResult res;
    res.clifford = true;
    for (const auto& [name, pq] : gens) {
        Mat g = kron(pauli(pq.first), pauli(pq.second));
        Mat w = u * g * u.adjoint();
        auto dec = pauli_decompose_2q(w);
        if (!dec) {
            res.clifford = false;
            res.witness = name;
            res.tableau.clear();
            return res;
        }
        res.tableau[name] =
            format_phase(dec->phase) + std::string(1, dec->a) + dec->b;
    }
    return res;
}

// Choi matrix sum_ik |i><k| ⊗ Λ(|i><k|) of the channel with the given Kraus
// operators.
inline Mat choi(const std::vector<Mat>& kraus, int din = 4) {
    Mat j = Mat::Zero(din * din, din * din);
    for (int i = 0; i < din; ++i)
        for (int k = 0; k < din; ++k) {
            Mat e = Mat::Zero(din, din);
            e(i, k) = 1.0;
            Mat lam = Mat::Zero(din, din);
            for (const auto& kop : kraus) lam += kop * e * kop.adjoint();
            j += kron(e, lam);
        }
    return j;
}

inline double choi_distance(const Mat& a, const Mat& b) {
    return (a - b).norm();
}

// Gate teleportation of a two-qubit gate u through two Bell pairs: sixteen
// Kraus operators, one per pair of Bell-measurement outcomes, each followed
// by the Pauli correction extracted from u (P_ij ⊗ P_kl) u†.
inline std::vector<Mat> zigzag1_kraus(const Mat& u) {
    require_two_qubit_unitary(u);
    const double r = 1.0 / std::sqrt(2.0);
    // r1[a1][c'][b1][d'] = sum_{c,d} u[(c',d'),(c,d)] * PHI[a1,c] * PHI[b1,d]
    // with PHI the normalized identity.
    cplx r1[2][2][2][2];
    for (int a = 0; a < 2; ++a)
        for (int x = 0; x < 2; ++x)
            for (int b = 0; b < 2; ++b)
                for (int y = 0; y < 2; ++y) {
                    cplx acc = 0;
                    for (int c = 0; c < 2; ++c)
                        for (int d = 0; d < 2; ++d)
                            acc += u(2 * x + y, 2 * c + d) *
                                   (a == c ? r : 0.0) * (b == d ? r : 0.0);
                    r1[a][x][b][y] = acc;
                }
    std::vector<Mat> kraus;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    Vec vij = bell_vec(i, j).conjugate();
                    Vec vkl = bell_vec(k, l).conjugate();
                    Mat m(4, 4);
                    for (int cc = 0; cc < 2; ++cc)
                        for (int dd = 0; dd < 2; ++dd)
                            for (int A = 0; A < 2; ++A)
                                for (int B = 0; B < 2; ++B) {
                                    cplx acc = 0;
                                    for (int x = 0; x < 2; ++x)
                                        for (int y = 0; y < 2; ++y)
                                            acc += vij(2 * A + x) *
                                                   vkl(2 * B + y) *
                                                   r1[x][cc][y][dd];
                                    m(2 * cc + dd, 2 * A + B) = acc;
                                }
                    Mat w = u * kron(pauli_zx(i, j), pauli_zx(k, l)) *
                            u.adjoint();
                    auto dec = pauli_decompose_2q(w);
                    if (!dec)
                        throw NotCliffordError(
                            "teleportation correction is not Pauli");
                    kraus.push_back(kron(pauli(dec->a), pauli(dec->b)) * m);
                }
    return kraus;
}

inline double zigzag1_choi_distance(const Mat& u) {
    return choi_distance(choi(zigzag1_kraus(u)), choi({u}));
}

}  // namespace fpolab::quantum
