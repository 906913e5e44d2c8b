"""Shared test utilities: independent oracles and random generators."""

import numpy as np

from progchan import PAULI, kron, theta_from_alpha


def brute_partial_trace(m, subsystem):
    """Index-sum partial trace, independent of the library implementation."""
    m = np.asarray(m, dtype=complex)
    out = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                if subsystem == 2:
                    out[i, j] += m[2 * i + k, 2 * j + k]
                else:
                    out[i, j] += m[2 * k + i, 2 * k + j]
    return out


def random_chamber_alpha(rng, interior=False):
    """Uniform draw from pi/4 >= a1 >= a2 >= |a3|."""
    pad = 0.02 if interior else 0.0
    a1 = rng.uniform(pad, np.pi / 4 - pad)
    a2 = rng.uniform(pad, a1)
    a3 = rng.uniform(-a2 + pad, a2 - pad) if interior else rng.uniform(-a2, a2)
    return np.array([a1, a2, a3])


def random_bloch(rng):
    n = rng.normal(size=4)
    return n / np.linalg.norm(n)


def controlled_device(v1, v2, basis=None):
    """Assemble sum_k V_k (x) |psi_k><psi_k| with the ancilla as control."""
    if basis is None:
        basis = np.eye(2, dtype=complex)
    p1 = np.outer(basis[:, 0], basis[:, 0].conj())
    p2 = np.outer(basis[:, 1], basis[:, 1].conj())
    return kron(v1, p1) + kron(v2, p2)


def spectral_kraus_family(alpha, sigma):
    """The eigenbasis Kraus construction for a canonical device.

    C_nm = sum_k e^{i theta_k} Psi_k |u_n*><u_m*| Psi_k^dag sqrt(lam_m) with
    Psi_k = sigma_k / sqrt(2) and (lam, u) the spectrum of the program state.
    """
    theta = theta_from_alpha(alpha)
    lam, vecs = np.linalg.eigh(np.asarray(sigma, dtype=complex))
    ops = []
    for n in range(2):
        for m in range(2):
            un = np.conj(vecs[:, n])
            um = np.conj(vecs[:, m])
            acc = np.zeros((2, 2), dtype=complex)
            for k in range(4):
                psi = PAULI[k] / np.sqrt(2.0)
                acc += np.exp(1j * theta[k]) * psi @ np.outer(un, um.conj()) @ psi.conj().T
            ops.append(acc * np.sqrt(max(lam[m], 0.0)))
    return ops
