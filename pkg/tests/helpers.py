"""Shared independent oracles and parameter factories for the test suite."""

import numpy as np

from superlaser import PhysParams
from superlaser.hilbert import HilbertSpace


def bloch_steady_population(omega: float, delta_a: float, gamma: float = 1.0) -> float:
    """Steady excited population of a pinned, classically driven atom from
    the 3x3 optical Bloch linear system in (Re<s->, Im<s->, pop):

        du/dt = -g/2 u - d v
        dv/dt =  d u - g/2 v + 2 W n - W
        dn/dt = -2 W v - g n

    solved directly with numpy; independent of every solver under test.
    """
    a = np.array([
        [-0.5 * gamma, -delta_a, 0.0],
        [delta_a, -0.5 * gamma, 2.0 * omega],
        [0.0, -2.0 * omega, -gamma],
    ])
    b = np.array([0.0, -omega, 0.0])
    return float(np.linalg.solve(a, -b)[2])


def fig5(**kw) -> PhysParams:
    base = dict(kappa=20.0, g=4.0, omega_drive=10.0, delta_a=-20.0, delta_c=-20.0,
                eta=8.0, delta_eta=-25.0, omega_r=6.0, n_max=3, n_atoms=1)
    base.update(kw)
    return PhysParams(**base)


def fig3(**kw) -> PhysParams:
    return fig5(eta=0.0, delta_eta=0.0, **kw)


def liouvillian_matrix(space: HilbertSpace, h, kappa: float, gamma: float = 1.0) -> np.ndarray:
    """Dense superoperator L with vec(drho/dt) = L @ vec(rho) in row-major
    vec convention, built from the textbook Kronecker identities
    vec(A X B) = (A kron B^T) vec(X).  Entirely independent of the package's
    right-hand-side implementation; usable as an oracle for small spaces.
    """
    d = space.dim
    eye = np.eye(d)
    h = np.asarray(h.toarray() if hasattr(h, "toarray") else h)

    def sandwich(c):
        c = np.asarray(c.toarray() if hasattr(c, "toarray") else c)
        cd = c.conj().T
        return (2.0 * np.kron(c, cd.T)
                - np.kron(cd @ c, eye)
                - np.kron(eye, (cd @ c).T))

    lmat = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    lmat = lmat + 0.5 * kappa * sandwich(space.a)
    for m in range(space.n_atoms):
        lmat = lmat + 0.5 * gamma * sandwich(space.sm[m])
    return lmat
