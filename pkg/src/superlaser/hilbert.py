"""Tensor-product Hilbert space of N two-level atoms and one truncated
field mode, with cached sparse operators.

Basis ordering: atom 1 (slowest index) ... atom N, then the Fock index
(fastest).  Atom basis is (|g>, |e>) with g = 0.  The flat basis index is
therefore sum_m b_m 2^(N-m) (n_max+1) + n for atomic bits b_m and photon
number n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np
import scipy.sparse as sp

__all__ = ["HilbertSpace", "DimensionBudgetError", "build_space", "expect"]

DEFAULT_DIM_BUDGET = 4096


class DimensionBudgetError(ValueError):
    """Requested space exceeds the configured dimension budget."""


def _kron_chain(ops) -> sp.csr_matrix:
    return reduce(lambda a, b: sp.kron(a, b, format="csr"), ops)


def expect(op, rho: np.ndarray) -> complex:
    """trace(op @ rho) without forming the product; op sparse or dense."""
    if sp.issparse(op):
        return complex(op.multiply(rho.T).sum())
    return complex(np.einsum("ij,ji->", op, rho))


@dataclass
class HilbertSpace:
    """Cached sparse operators on (C^2)^(tensor N) x Fock(n_max).

    All operators are csr and immutable after construction; the cache is
    safe to share across threads and simulations.
    """

    n_atoms: int
    n_max: int
    dim: int
    a: sp.csr_matrix
    adag: sp.csr_matrix
    n_op: sp.csr_matrix
    sm: list[sp.csr_matrix]      # sigma^-_m
    sp_: list[sp.csr_matrix]     # sigma^+_m
    sx: list[sp.csr_matrix]      # sigma^+_m + sigma^-_m
    sy: list[sp.csr_matrix]      # i(sigma^+_m - sigma^-_m)
    proj_e: list[sp.csr_matrix]  # sigma^+_m sigma^-_m
    adag_sm: list[sp.csr_matrix]  # a^dag sigma^-_m
    jc: list[sp.csr_matrix]       # a^dag sigma^-_m + a sigma^+_m
    n_diag: np.ndarray = field(repr=False, default=None)
    pe_diag: list[np.ndarray] = field(repr=False, default=None)

    def dense_ops(self) -> "HilbertSpace":
        """Mirror of the operator cache with dense ndarrays.

        scipy sparse products carry ~50 us of per-call overhead, which
        dominates the right-hand side for small spaces; the solvers switch
        to this mirror below ~64 dimensions.  Built once and cached.
        """
        mirror = getattr(self, "_dense", None)
        if mirror is None:
            mirror = HilbertSpace(
                n_atoms=self.n_atoms,
                n_max=self.n_max,
                dim=self.dim,
                a=self.a.toarray(),
                adag=self.adag.toarray(),
                n_op=self.n_op.toarray(),
                sm=[op.toarray() for op in self.sm],
                sp_=[op.toarray() for op in self.sp_],
                sx=[op.toarray() for op in self.sx],
                sy=[op.toarray() for op in self.sy],
                proj_e=[op.toarray() for op in self.proj_e],
                adag_sm=[op.toarray() for op in self.adag_sm],
                jc=[op.toarray() for op in self.jc],
                n_diag=self.n_diag,
                pe_diag=self.pe_diag,
            )
            self._dense = mirror
        return mirror

    def ground_state(self) -> np.ndarray:
        """Density matrix of all atoms in |g> and the field in vacuum."""
        rho = np.zeros((self.dim, self.dim), dtype=complex)
        rho[0, 0] = 1.0
        return rho

    def product_state(self, excited: set[int] | list[int] = (), n_photons: int = 0) -> np.ndarray:
        """Pure product density matrix with the listed atoms (0-based)
        excited and a Fock state of the field."""
        if n_photons > self.n_max:
            raise ValueError("n_photons exceeds the Fock truncation")
        idx = 0
        for m in range(self.n_atoms):
            idx = 2 * idx + (1 if m in set(excited) else 0)
        idx = idx * (self.n_max + 1) + n_photons
        rho = np.zeros((self.dim, self.dim), dtype=complex)
        rho[idx, idx] = 1.0
        return rho


def build_space(n_atoms: int, n_max: int, dim_budget: int = DEFAULT_DIM_BUDGET) -> HilbertSpace:
    """Build the operator cache; raises DimensionBudgetError when
    2^n_atoms * (n_max + 1) exceeds dim_budget."""
    if n_atoms < 1 or n_max < 1:
        raise ValueError("need n_atoms >= 1 and n_max >= 1")
    dim = 2**n_atoms * (n_max + 1)
    if dim > dim_budget:
        raise DimensionBudgetError(
            f"dimension 2^{n_atoms}*({n_max}+1) = {dim} exceeds budget {dim_budget}"
        )

    id2 = sp.identity(2, format="csr", dtype=complex)
    idf = sp.identity(n_max + 1, format="csr", dtype=complex)
    sm2 = sp.csr_matrix(np.array([[0, 1], [0, 0]], dtype=complex))   # |g><e|
    a_f = sp.csr_matrix(np.diag(np.sqrt(np.arange(1, n_max + 1)), k=1).astype(complex))

    def atom_op(m: int, op: sp.spmatrix) -> sp.csr_matrix:
        ops = [id2] * n_atoms + [idf]
        ops[m] = op
        return _kron_chain(ops)

    # the number operator is built directly so its diagonal is exact
    # (adag @ a would carry sqrt(k)**2 != k roundoff)
    n_f = sp.csr_matrix(np.diag(np.arange(n_max + 1).astype(complex)))

    a = _kron_chain([id2] * n_atoms + [a_f])
    adag = a.conj().T.tocsr()
    n_op = _kron_chain([id2] * n_atoms + [n_f])

    sm = [atom_op(m, sm2) for m in range(n_atoms)]
    sp_ = [op.conj().T.tocsr() for op in sm]
    sx = [(p + m).tocsr() for p, m in zip(sp_, sm)]
    sy = [(1j * (p - m)).tocsr() for p, m in zip(sp_, sm)]
    proj_e = [(p @ m).tocsr() for p, m in zip(sp_, sm)]
    adag_sm = [(adag @ m).tocsr() for m in sm]
    jc = [(ds + ds.conj().T).tocsr() for ds in adag_sm]

    return HilbertSpace(
        n_atoms=n_atoms,
        n_max=n_max,
        dim=dim,
        a=a,
        adag=adag,
        n_op=n_op,
        sm=sm,
        sp_=sp_,
        sx=sx,
        sy=sy,
        proj_e=proj_e,
        adag_sm=adag_sm,
        jc=jc,
        n_diag=np.real(n_op.diagonal()),
        pe_diag=[np.real(p.diagonal()) for p in proj_e],
    )
