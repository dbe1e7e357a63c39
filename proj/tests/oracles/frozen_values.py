#!/usr/bin/env python3
"""Independent numpy/scipy oracle for the frozen expected values in the C++ tests.

Nothing here touches the C++ code path: generators are rebuilt from textbook
formulas, traces and exponentials come from numpy/scipy.
"""
import itertools

import numpy as np
from scipy.linalg import expm

np.set_printoptions(precision=17)


def spin(two_j):
    j = two_j / 2.0
    m = j - np.arange(two_j + 1)
    jp = np.zeros((two_j + 1, two_j + 1))
    for k in range(1, two_j + 1):
        jp[k - 1, k] = np.sqrt(j * (j + 1) - m[k] * (m[k] + 1))
    jx = (jp + jp.T) / 2
    jy = (jp - jp.T) / 2j
    jz = np.diag(m)
    return [jx.astype(complex), jy, jz.astype(complex)]


def gell_mann():
    l = np.zeros((8, 3, 3), dtype=complex)
    l[0][0, 1] = l[0][1, 0] = 1
    l[1][0, 1], l[1][1, 0] = -1j, 1j
    l[2][0, 0], l[2][1, 1] = 1, -1
    l[3][0, 2] = l[3][2, 0] = 1
    l[4][0, 2], l[4][2, 0] = -1j, 1j
    l[5][1, 2] = l[5][2, 1] = 1
    l[6][1, 2], l[6][2, 1] = -1j, 1j
    l[7] = np.diag([1, 1, -2]) / np.sqrt(3)
    return [m / 2 for m in l]


def comm(a, b):
    return a @ b - b @ a


def c_adj(xs):
    x0 = xs[0]
    acc = sum(comm(x, comm(x, x0)) for x in xs)
    return (np.trace(acc @ x0) / np.trace(x0 @ x0)).real


def fconst(xs, lam):
    k = len(xs)
    f = np.zeros((k, k, k))
    for a, b, c in itertools.product(range(k), repeat=3):
        f[a, b, c] = (-1j / lam * np.trace(comm(xs[a], xs[b]) @ xs[c])).real
    return f


def expvals(xs, psi):
    return np.array([np.vdot(psi, x @ psi).real for x in xs])


def covariance(xs, psi):
    m = expvals(xs, psi)
    k = len(xs)
    cov = np.zeros((k, k))
    for a in range(k):
        for b in range(k):
            anti = xs[a] @ xs[b] + xs[b] @ xs[a]
            cov[a, b] = np.vdot(psi, anti @ psi).real - 2 * m[a] * m[b]
    return cov


print("spin-1/2 c_adj:", c_adj(spin(1)))
print("spin-1/2 f:", fconst(spin(1), 0.5)[0, 1, 2], fconst(spin(1), 0.5)[1, 2, 0])
print("spin-1 c_adj:", c_adj(spin(2)), " c_H:", np.trace(sum(x @ x for x in spin(2))).real / 3)

g = gell_mann()
print("su3 c_H:", np.trace(sum(x @ x for x in g)).real / 3)
gram = np.array([[np.trace(a @ b).real for b in g] for a in g])
print("su3 gram diag/offmax:", gram[0, 0], np.abs(gram - np.diag(np.diag(gram))).max())
f = fconst(g, 0.5)
print("su3 f123:", f[0, 1, 2], " f147:", f[0, 3, 6], " f458:", f[3, 4, 7])
print("su3 c_adj (commutator):", c_adj(g), " (f contraction):", np.einsum("ikl,ikl->", f, f) / 8)

# spin-1 maximally uncertain state
xs = spin(2)
psi = np.array([1, 0, 1], dtype=complex) / np.sqrt(2)
m = expvals(xs, psi)
print("j=1 (1,0,1)/sqrt2 purity:", (m ** 2).sum(), " delta:", 2 - (m ** 2).sum())
print("j=1 (1,0,1)/sqrt2 M:\n", covariance(xs, psi))
print("j=1 (1,0,1)/sqrt2 TrM2:", (covariance(xs, psi) ** 2).sum())

for two_j in (1, 2, 3, 4):
    xs = spin(two_j)
    top = np.zeros(two_j + 1, dtype=complex)
    top[0] = 1
    print(f"two_j={two_j} |j,j> M diag:", np.diag(covariance(xs, top)), " TrM2:", (covariance(xs, top) ** 2).sum())

# pi rotation about J_x
for two_j in (2, 3):
    xs = spin(two_j)
    top = np.zeros(two_j + 1, dtype=complex)
    top[0] = 1
    out = expm(1j * np.pi * xs[0]) @ top
    print(f"two_j={two_j} exp(i pi Jx)|j,j> |amplitudes|:", np.abs(out))

# Lindblad spin-1/2, H = 0, gamma = 0.1, rho0 = |+x><+x|, t = 1
xs = spin(1)
d = 2
ident = np.eye(d)
gamma = 0.1
lsup = np.zeros((d * d, d * d), dtype=complex)
for x in xs:
    # column-major vec: vec(A rho B) = (B^T kron A) vec(rho)
    lsup -= gamma * (np.kron(ident, x @ x) + np.kron((x @ x).T, ident) - 2 * np.kron(x.T, x))
plus = np.array([1, 1], dtype=complex) / np.sqrt(2)
rho0 = np.outer(plus, plus.conj())
rho1 = (expm(lsup * 1.0) @ rho0.reshape(-1, order="F")).reshape(d, d, order="F")
print("spin-1/2 purity at t=1:", np.trace(rho1 @ rho1).real, " closed form:", (1 + np.exp(-0.4)) / 2)

# su(2) sub-triple weight formula values j + j^2 - m^2
for two_j in (1, 2, 3, 4, 5, 6):
    j = two_j / 2
    ms = [j - k for k in range(two_j + 1)]
    xs = spin(two_j)
    ep = (xs[0] + 1j * xs[1]) / np.sqrt(2)
    em = ep.conj().T
    lhs = np.real(np.diag(em @ ep + ep @ em))
    rhs = np.array([j + j * j - mm * mm for mm in ms])
    assert np.allclose(lhs, rhs), (two_j, lhs, rhs)
print("weight formula j+j^2-m^2 verified on su(2) j<=3 with E = J+/sqrt2")
