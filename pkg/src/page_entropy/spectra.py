"""Small exact diagonalization in fixed-charge sectors.

Two periodic chains are built densely inside one symmetry sector, both in
an occupation basis (site occupations n_i >= 0, sum fixed):

* a spin-1 XXZ chain with a tunable integrability-breaking extension,
  specified in magnetization M and stored at N = M + V (occupations
  n_i = s_i + 1), and
* a Bose-Hubbard chain with optional per-site occupation cap.

`mid_spectrum_entropies` takes the bundle of eigenstates around the middle
of the spectrum (window centered on the median index, never splitting a
degenerate multiplet) and returns mean/std of their entanglement entropies
per cut position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InfeasibleSizeError
from .haar_sampler import SectorBlock, entropy_of_block_vector

# Dense diagonalization bound on the sector dimension.
MAX_DENSE_DIM = 4000

_DEGENERACY_TOL = 1e-10


@dataclass(frozen=True)
class SectorHamiltonian:
    """Dense sector Hamiltonian plus its occupation basis."""
    kind: str
    V: int
    N: int
    couplings: dict
    basis: tuple[tuple[int, ...], ...]
    matrix: np.ndarray


@dataclass(frozen=True)
class CutEntropies:
    """Entropy statistics of the window states at one cut position."""
    V_A: int
    f: float
    mean: float
    std: float


@dataclass(frozen=True)
class MidSpectrumReport:
    """Mid-spectrum entanglement panel for one sector Hamiltonian."""
    kind: str
    V: int
    N: int
    dim: int
    window_lo: int
    window_hi: int
    cuts: tuple[CutEntropies, ...]


def _occupation_basis(V: int, N: int, cap: int) -> list[tuple[int, ...]]:
    """All occupation tuples of length V summing to N with n_i <= cap."""
    states = []

    def grow(prefix, remaining, sites_left):
        if sites_left == 0:
            if remaining == 0:
                states.append(tuple(prefix))
            return
        # leave enough capacity for the remaining sites
        lo = max(0, remaining - cap * (sites_left - 1))
        hi = min(cap, remaining)
        for k in range(lo, hi + 1):
            prefix.append(k)
            grow(prefix, remaining - k, sites_left - 1)
            prefix.pop()

    grow([], N, V)
    return states


def _spin1_bond_matrix(lam: float, delta: float) -> np.ndarray:
    """9x9 two-site operator of the extended spin-1 XXZ chain.

    Occupation order n = s + 1; the single-site 2(S^z)^2 piece of the
    extension is folded onto the left site of each bond (periodic chain:
    every site is a left end exactly once).
    """
    sz = np.diag([-1.0, 0.0, 1.0])
    sp = np.zeros((3, 3))
    sp[1, 0] = sp[2, 1] = math.sqrt(2.0)
    sm = sp.T
    eye = np.eye(3)

    hxy = 0.5 * (np.kron(sp, sm) + np.kron(sm, sp))
    hzz = np.kron(sz, sz)
    h0 = -(hxy + delta * hzz)
    if lam == 0.0:
        return h0

    mu = delta - 1.0
    nu = 2.0 - math.sqrt(2.0 * (1.0 + delta))
    ss = hxy + hzz
    sz2 = sz @ sz
    cross = hxy @ hzz
    h1 = (ss @ ss
          - mu * (2.0 * np.kron(sz2, eye) - np.kron(sz2, sz2))
          - nu * (cross + cross.T))
    return h0 + lam * h1


def build_spin1_xxz(V: int, M: int, lam: float, delta: float) -> SectorHamiltonian:
    """Extended spin-1 XXZ chain in the magnetization-M sector, periodic.

    lam = 0 is the bare XXZ chain (nonintegrable); lam = 1 turns on the
    biquadratic extension with couplings mu = Delta - 1 and
    nu = 2 - sqrt(2 (1 + Delta)) that make the chain integrable.
    """
    if V < 2:
        raise DomainError("need at least 2 sites for a periodic chain")
    if abs(M) > V:
        raise DomainError(f"magnetization M={M} impossible for spin-1 on "
                          f"{V} sites")
    N = M + V  # occupations n_i = s_i + 1
    basis = _occupation_basis(V, N, cap=2)
    if not basis:
        raise DomainError(f"empty sector: V={V}, M={M}")
    if len(basis) > MAX_DENSE_DIM:
        raise InfeasibleSizeError(f"sector dimension {len(basis)} exceeds "
                                  f"dense limit {MAX_DENSE_DIM}")
    index = {occ: i for i, occ in enumerate(basis)}
    bond = _spin1_bond_matrix(lam, delta)

    dim = len(basis)
    matrix = np.zeros((dim, dim))
    for col, occ in enumerate(basis):
        for i in range(V):
            j = (i + 1) % V
            pair = occ[i] * 3 + occ[j]
            for new_pair in np.nonzero(bond[:, pair])[0]:
                amp = bond[new_pair, pair]
                new_occ = list(occ)
                new_occ[i], new_occ[j] = new_pair // 3, new_pair % 3
                matrix[index[tuple(new_occ)], col] += amp
    return SectorHamiltonian(kind="spin1_xxz", V=V, N=N,
                             couplings={"lambda": lam, "Delta": delta,
                                        "M": M},
                             basis=tuple(basis), matrix=matrix)


def build_bose_hubbard(V: int, N: int, U: float,
                       n_max=None) -> SectorHamiltonian:
    """Bose-Hubbard chain at fixed N, periodic, optional occupation cap."""
    if V < 2:
        raise DomainError("need at least 2 sites for a periodic chain")
    if N < 0:
        raise DomainError(f"N must be nonnegative, got {N}")
    cap = N if n_max is None else min(int(n_max), N)
    if N > 0 and cap < 1:
        raise DomainError("occupation cap leaves no room for any particle")
    basis = _occupation_basis(V, N, cap=max(cap, 0))
    if not basis:
        raise DomainError(f"empty sector: V={V}, N={N}, n_max={n_max}")
    if len(basis) > MAX_DENSE_DIM:
        raise InfeasibleSizeError(f"sector dimension {len(basis)} exceeds "
                                  f"dense limit {MAX_DENSE_DIM}")
    index = {occ: i for i, occ in enumerate(basis)}

    dim = len(basis)
    matrix = np.zeros((dim, dim))
    for col, occ in enumerate(basis):
        matrix[col, col] = 0.5 * U * sum(k * (k - 1) for k in occ)
        for i in range(V):
            j = (i + 1) % V
            for src, dst in ((j, i), (i, j)):  # b+_dst b_src + h.c. halves
                if occ[src] > 0 and occ[dst] < cap:
                    amp = -math.sqrt((occ[dst] + 1) * occ[src])
                    new_occ = list(occ)
                    new_occ[src] -= 1
                    new_occ[dst] += 1
                    matrix[index[tuple(new_occ)], col] += amp
    return SectorHamiltonian(kind="bose_hubbard", V=V, N=N,
                             couplings={"U": U, "n_max": n_max},
                             basis=tuple(basis), matrix=matrix)


def mid_spectrum_entropies(ham: SectorHamiltonian, window: int,
                           v_a_list) -> MidSpectrumReport:
    """Entanglement statistics of the mid-spectrum eigenstate window.

    The window of `window` states is centered on the median eigenvalue
    index and grown (only) as needed so its edges never split a multiplet
    degenerate within 1e-10.  Entropies use contiguous cuts [0, V_A).
    """
    if window < 1:
        raise DomainError("window must be >= 1")
    energies, states = np.linalg.eigh(ham.matrix)
    dim = len(energies)
    lo = max(0, dim // 2 - window // 2)
    hi = min(dim, lo + window)
    while lo > 0 and energies[lo] - energies[lo - 1] < _DEGENERACY_TOL:
        lo -= 1
    while hi < dim and energies[hi] - energies[hi - 1] < _DEGENERACY_TOL:
        hi += 1

    cuts = []
    for v_a in v_a_list:
        if not 0 <= v_a <= ham.V:
            raise DomainError(f"cut position {v_a} outside [0, {ham.V}]")
        blocks, perm = _cut_blocks(ham.basis, v_a)
        entropies = [
            entropy_of_block_vector(blocks, states[perm, k])
            for k in range(lo, hi)
        ]
        mean = float(np.mean(entropies))
        std = float(np.std(entropies, ddof=1)) if len(entropies) > 1 else 0.0
        cuts.append(CutEntropies(V_A=v_a, f=v_a / ham.V, mean=mean, std=std))
    return MidSpectrumReport(kind=ham.kind, V=ham.V, N=ham.N, dim=dim,
                             window_lo=lo, window_hi=hi, cuts=tuple(cuts))


def _cut_blocks(basis, v_a: int):
    """Block layout of a basis cut at site v_a, plus the index permutation.

    Returns (blocks, perm) such that reordering an eigenvector by `perm`
    makes it a flat block vector: entry offset + row * d_b + col is the
    amplitude of (A-state row, B-state col) inside the N_A block.
    """
    groups: dict[int, tuple[dict, dict, list]] = {}
    for idx, occ in enumerate(basis):
        a, b = occ[:v_a], occ[v_a:]
        n_a = sum(a)
        rows, cols, members = groups.setdefault(n_a, ({}, {}, []))
        rows.setdefault(a, len(rows))
        cols.setdefault(b, len(cols))
        members.append((idx, a, b))

    blocks = []
    perm = np.empty(len(basis), dtype=np.intp)
    offset = 0
    for n_a in sorted(groups):
        rows, cols, members = groups[n_a]
        d_a, d_b = len(rows), len(cols)
        for idx, a, b in members:
            perm[offset + rows[a] * d_b + cols[b]] = idx
        blocks.append(SectorBlock(n_a=n_a, d_a=d_a, d_b=d_b, offset=offset))
        offset += d_a * d_b
    return tuple(blocks), perm


def beta_spin1(n: float) -> float:
    """Closed-form growth rate beta(n) of the spin-1 sector dimensions.

    Valid on 0 < n < 2 with beta(1) = ln 3 at the peak; agrees with the
    numerical saddle family of the three-state local model.
    """
    n = float(n)
    if not 0.0 < n < 2.0:
        raise DomainError(f"spin-1 filling must lie in (0, 2), got {n}")
    root = math.sqrt(1.0 - 3.0 * n * (n - 2.0))
    return ((n - 2.0) * math.log(2.0 - n) + (n - 1.0) * math.log(2.0)
            + math.log(7.0 - 3.0 * n + root) - n * math.log(n - 1.0 + root))
