"""NumPy reference for the quantum verification values.

Everything is computed from explicit state vectors / matrices; no shortcuts
through the algebraic identities under test.
"""

import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = {"I": I2, "X": X, "Y": Y, "Z": Z}

CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
                dtype=complex)
SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
                dtype=complex)
CZ = np.diag([1, 1, 1, -1]).astype(complex)
T1 = np.diag([1, np.exp(1j * np.pi / 4)]).astype(complex)

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)

PHI_PLUS = (np.kron(KET0, KET0) + np.kron(KET1, KET1)) / np.sqrt(2)


def pauli_zx(i, j):
    """Z^i X^j."""
    return np.linalg.matrix_power(Z, i) @ np.linalg.matrix_power(X, j)


def bell_vec(i, j):
    return np.kron(pauli_zx(i, j), I2) @ PHI_PLUS


def reduced_char_poly(u, psi, phi):
    """Coefficients (descending) of charpoly of tr_second(U(psi⊗phi))."""
    out = u @ np.kron(psi, phi)
    rho = np.outer(out, out.conj())
    t = rho.reshape(2, 2, 2, 2)
    red = np.einsum("abcb->ac", t)  # trace out the second output qubit
    tr = np.trace(red)
    det = np.linalg.det(red)
    return [1.0, float(-tr.real), float(det.real)]


def evcond_check(u, basis):
    """Pairwise factorization identity over poly products; returns
    (holds, worst_deviation, witness_quadruple)."""
    polys = {}
    for a, psi in basis.items():
        for b, phi in basis.items():
            polys[(a, b)] = np.array(reduced_char_poly(u, psi, phi))
    worst, wit = 0.0, None
    for a in basis:
        for a2 in basis:
            for b in basis:
                for b2 in basis:
                    lhs = np.convolve(polys[(a, b)], polys[(a2, b2)])
                    rhs = np.convolve(polys[(a2, b)], polys[(a, b2)])
                    dev = float(np.max(np.abs(lhs - rhs)))
                    if dev > worst:
                        worst, wit = dev, (a, a2, b, b2)
    return worst <= 1e-8, worst, wit


def pauli_decompose_2q(w):
    """Match w to phase * (sigma_a ⊗ sigma_b); returns (a, b, phase) or None."""
    for a, pa in PAULIS.items():
        for b, pb in PAULIS.items():
            m = np.kron(pa, pb)
            c = np.trace(m.conj().T @ w) / 4.0
            if abs(abs(c) - 1.0) < 1e-9:
                if np.max(np.abs(w - c * m)) < 1e-9:
                    return a, b, c
    return None


def clifford_tableau_22(u):
    """Images of X⊗I, Z⊗I, I⊗X, I⊗Z under conjugation, or None."""
    tab = {}
    for name, g in (("XI", np.kron(X, I2)), ("ZI", np.kron(Z, I2)),
                    ("IX", np.kron(I2, X)), ("IZ", np.kron(I2, Z))):
        w = u @ g @ u.conj().T
        dec = pauli_decompose_2q(w)
        if dec is None:
            return None
        a, b, c = dec
        sign = "+" if abs(c - 1) < 1e-9 else (
            "-" if abs(c + 1) < 1e-9 else f"{c:.3f}")
        tab[name] = sign + a + b
    return tab


def choi(kraus_ops, din=4):
    j = np.zeros((din * din, din * din), dtype=complex)
    for i in range(din):
        for k in range(din):
            e = np.zeros((din, din), dtype=complex)
            e[i, k] = 1.0
            lam = sum(kop @ e @ kop.conj().T for kop in kraus_ops)
            j += np.kron(e, lam)
    return j


def zigzag1_kraus(u):
    """Gate teleportation of a two-qubit Clifford u via two Bell pairs.

    Resource on slots (a1, c, b1, d) = (I⊗u applied to halves c,d of two
    Bell pairs). Bell measurements on (A,a1) and (B,b1) with outcomes
    (i,j),(k,l); correction = Pauli part of u (P_ij ⊗ P_kl) u†."""
    res = np.einsum("ac,bd->acbd", PHI_PLUS.reshape(2, 2),
                    PHI_PLUS.reshape(2, 2))
    ut = u.reshape(2, 2, 2, 2)  # [c', d', c, d]
    res = np.einsum("xycd,acbd->axby", ut, res)  # u on slots (c, d)
    kraus = []
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    bij = bell_vec(i, j).reshape(2, 2).conj()
                    bkl = bell_vec(k, l).reshape(2, 2).conj()
                    # m[(c,d),(A,B)] from projecting the resource
                    m = np.einsum("ax,by,xcyd->cdab", bij, bkl, res)
                    m = m.reshape(4, 4)
                    w = u @ np.kron(pauli_zx(i, j), pauli_zx(k, l)) @ u.conj().T
                    dec = pauli_decompose_2q(w)
                    assert dec is not None, "correction not Pauli"
                    a, b, _ = dec
                    corr = np.kron(PAULIS[a], PAULIS[b])
                    kraus.append(corr @ m)
    return kraus


def zigzag1_choi_distance(u):
    jt = choi(zigzag1_kraus(u))
    jd = choi([u])
    return float(np.linalg.norm(jt - jd))
