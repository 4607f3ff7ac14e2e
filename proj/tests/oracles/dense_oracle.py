#!/usr/bin/env python3
"""Independent dense-matrix oracle for the frozen golden values in the C++ tests.

Builds every operator explicitly with numpy and evaluates expectation values by
plain 4x4 matrix-vector products. Shares no code with the library.

Run: python3 tests/oracles/dense_oracle.py
"""
import numpy as np

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


def spin(theta, phi=0.0):
    n = (np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta))
    return n[0] * SX + n[1] * SY + n[2] * SZ


def dot_sigma(m):
    return m[0] * SX + m[1] * SY + m[2] * SZ


def ev(psi, op):
    return np.vdot(psi, op @ psi)


def tilt_observable(theta, m, beta):
    """Returns (J, Jp, J_gup, j_gup_normalized, beta_prime)."""
    J = spin(theta)
    Jp = dot_sigma(m)
    Jg = J + beta * Jp
    w = np.linalg.eigvalsh(Jg)
    lam_gup = abs(w[-1])
    # first-order eigenvalue correction on the +1 branch
    vals, vecs = np.linalg.eigh(J)
    plus = vecs[:, 1]
    lam_p = np.real(np.vdot(plus, Jp @ plus))
    return J, Jp, Jg, Jg / lam_gup, beta * lam_p / 1.0


def bell(a, ap, b, bp):
    return np.kron(a, b + bp) + np.kron(ap, b - bp)


def scenario1(psi, thetas, m, beta):
    obs = [tilt_observable(t, m, beta) for t in thetas]
    (_, _, A, a, bpa), (_, _, Ap, ap, bpap), (_, _, B, b, bpb), (_, _, Bp, bp, bpbp) = obs
    value = np.real(ev(psi, bell(a, ap, b, bp)))
    t1 = -np.real(ev(psi, bpa * np.kron(a, b + bp) + bpap * np.kron(ap, b - bp)))
    t2 = -np.real(ev(psi, np.kron(a, bpb * b + bpbp * bp) + np.kron(ap, bpb * b - bpbp * bp)))
    t3 = beta * np.real(ev(psi, np.kron(A, b + bp) + np.kron(Ap, b - bp)))
    t4 = beta * np.real(ev(psi, np.kron(a, B + Bp) + np.kron(ap, B - Bp)))
    return value, (t1, t2, t3, t4), 2 + t1 + t2 + t3 + t4


def default_hams(m):
    h0 = -(np.kron(SX, SX) + np.kron(SZ, SZ))
    M = dot_sigma(m)
    hp = -(np.kron(M, SX) + np.kron(SX, M) + np.kron(M, SZ) + np.kron(SZ, M))
    return h0, hp


def ground(h):
    w, v = np.linalg.eigh(h)
    g = v[:, 0]
    k = np.argmax(np.abs(g))
    return g * (np.conj(g[k]) / abs(g[k]))


def first_order(h0, hp):
    w, v = np.linalg.eigh(h0)
    xi = v[:, 0]
    corr = np.zeros(4, dtype=complex)
    for k in range(1, 4):
        corr += (np.vdot(v[:, k], hp @ xi) / (w[0] - w[k])) * v[:, k]
    # express in the phase of ground(h0)
    k = np.argmax(np.abs(xi))
    ph = np.conj(xi[k]) / abs(xi[k])
    return xi * ph, corr * ph


def aligned(v, ref):
    return v * (np.conj(np.vdot(ref, v)) / abs(np.vdot(ref, v)))


CANON = (0.0, np.pi / 2, np.pi / 4, -np.pi / 4)

if __name__ == "__main__":
    np.set_printoptions(precision=17)
    print("Tsirelson", 2 * np.sqrt(2))

    # scenario 1, tilt m=z, beta=0.1, canonical settings, PhiPlus
    v, t, bound = scenario1(PHI_PLUS, CANON, (0, 0, 1), 0.1)
    print("S1 tilt z beta0.1 value %.17g" % v)
    print("S1 terms", ["%.17g" % x for x in t], "bound %.17g" % bound)

    # sweep family a=0, a'=2th, b=th, b'=3th at th=pi/8, beta=0.5, scenario 1
    th = np.pi / 8
    v, t, bound = scenario1(PHI_PLUS, (0.0, 2 * th, th, 3 * th), (0, 0, 1), 0.5)
    print("sweep S1 beta0.5 theta=pi/8 %.17g" % v)

    # scenario 2, default hamiltonians, tilt m=z and m=y
    for name, m in (("z", (0, 0, 1)), ("y", (0, 1, 0))):
        h0, hp = default_hams(m)
        xi, xip = first_order(h0, hp)
        B = bell(*[spin(x) for x in CANON])
        c = np.real(np.vdot(xi, B @ xip))
        print("S2 m=%s xi_p" % name, xip, "cross %.17g" % c,
              "value(beta=0.1) %.17g" % (np.real(ev(xi, B)) + 0.2 * c))
        beta = 1e-4
        v0 = ground(h0)
        fwd = (aligned(ground(h0 + beta * hp), v0) - v0) / beta
        ctr = (aligned(ground(h0 + beta * hp), v0) - aligned(ground(h0 - beta * hp), v0)) / (2 * beta)
        print("  forward FD err %.3g central FD err %.3g" %
              (np.max(np.abs(fwd - xip)), np.max(np.abs(ctr - xip))))

    # two-angle landscape family a=0, a'=t1, b=t2, b'=-t2
    for hi in (np.pi, 2 * np.pi):
        ax = np.linspace(0, hi, 201)
        T1, T2 = np.meshgrid(ax, ax, indexing="ij")
        S = 2 * np.cos(T2) + 2 * np.sin(T1) * np.sin(T2)
        from scipy.ndimage import label
        _, n = label(S > 2)
        print("scan [0,%.4g]: max %.12g regions %d" % (hi, S.max(), n))

    # scenario 2/3 with a non-trivial Hp and off-optimal settings
    OFF = (0.0, np.pi / 3, np.pi / 5, -np.pi / 7)
    h0, _ = default_hams((0, 0, 1))
    hp = np.kron(SX, SZ) + np.kron(SZ, I2)
    xi, xip = first_order(h0, hp)
    B = bell(*[spin(x) for x in OFF])
    qm = np.real(ev(xi, B))
    c = np.real(np.vdot(xi, B @ xip))
    print("S2 custom hp off-settings qm %.17g cross %.17g value(beta=0.1) %.17g" % (qm, c, qm + 0.2 * c))
    xg = xi + 0.1 * xip
    print("  xi_p", xip)
    # scenario 3 with tilt m=z, beta=0.1 on the same perturbed state
    ops = [tilt_observable(t, (0, 0, 1), 0.1)[3] for t in OFF]
    Bg = bell(*ops)
    print("S3 tilt z beta0.1 custom hp off-settings %.17g norm %.17g" %
          (np.real(ev(xg, Bg)) / np.vdot(xg, xg).real, np.vdot(xg, xg).real))

    # symbolic expansion of the scenario-1 brackets for J_p = J^3 (= J on qubits):
    # J_GUP = (1 + beta) J, beta' = beta'' = beta, j_GUP = J.
    import sympy as sp
    b, E = sp.symbols("beta B")
    brackets = -b * E - b * E + b * (1 + b) * E + b * (1 + b) * E
    print("SelfCubic bracket sum:", sp.factor(sp.expand(brackets)))
