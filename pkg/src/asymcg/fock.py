"""Polarized blocks of finitary symplectic operators and determinant cocycles.

The complexified homology splits as H+ ⊕ H- with orthonormal bases

    e_k = (a_k - i b_k) / sqrt(2),    f_k = (a_k + i b_k) / sqrt(2).

A real operator T reads ``[[Phi, Psi], [conj(Psi), conj(Phi)]]`` in the
basis (e, f).  Phi is the H+ part of the J-linear half (T - JTJ)/2 and Psi
is the H+ part of the J-antilinear half (T + JTJ)/2 applied to f.  The
sqrt(2) factors cancel in the change of basis, so integer blocks give
entries in (1/2)Z[i].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from . import gaussian as gm
from .errors import BranchAmbiguityError, InvalidInput
from .gaussian import GaussianRational
from .homology import FinSymplectic, compose_ops
from .thompson import TreePair, is_identity, serialize

HALF = Fraction(1, 2)

# eigenvalues this close to the negative real axis make the principal root ambiguous
BRANCH_TOLERANCE = 1e-12


@dataclass(frozen=True)
class BlockPair:
    support: tuple  # wrists indexing the columns
    range: tuple  # wrists indexing the rows
    phi: tuple
    psi: tuple
    end_map: TreePair

    def to_json(self) -> dict:
        return {
            "support": list(self.support),
            "range": list(self.range),
            "phi": [[x.to_json() for x in row] for row in self.phi],
            "psi": [[x.to_json() for x in row] for row in self.psi],
            "endMap": serialize(self.end_map),
        }


def split_linear_parts(f: FinSymplectic):
    """J-linear and J-antilinear halves of the finite block, as per-wrist
    2x2 Fraction blocks keyed by (range wrist, support wrist)."""
    t1, t2 = {}, {}
    for d in f.support.wrists():
        col_a = f.columns[("a", d)]
        col_b = f.columns[("b", d)]
        for r in f.range_tree.wrists():
            p, q = col_a[("a", r)], col_b[("a", r)]
            rr, s = col_a[("b", r)], col_b[("b", r)]
            # JTJ has 2x2 block [[-s, rr], [q, -p]]
            t1[r, d] = (HALF * (p + s), HALF * (q - rr), HALF * (rr - q), HALF * (s + p))
            t2[r, d] = (HALF * (p - s), HALF * (q + rr), HALF * (rr + q), HALF * (s - p))
    return t1, t2


def to_blocks(f: FinSymplectic) -> BlockPair:
    t1, t2 = split_linear_parts(f)
    rows = f.range_tree.wrists()
    cols = f.support.wrists()
    phi, psi = [], []
    for r in rows:
        phi_row, psi_row = [], []
        for d in cols:
            p, q, rr, s = t1[r, d]
            # e_r component of T1 e_d
            phi_row.append(GaussianRational(HALF * (p + s), HALF * (rr - q)))
            p, q, rr, s = t2[r, d]
            # e_r component of T2 f_d
            psi_row.append(GaussianRational(HALF * (p - s), HALF * (q + rr)))
        phi.append(tuple(phi_row))
        psi.append(tuple(psi_row))
    return BlockPair(tuple(cols), tuple(rows), tuple(phi), tuple(psi), f.end_map)


def _mat(rows) -> list:
    return [list(r) for r in rows]


def check_relations(b: BlockPair) -> bool:
    """Both restricted-symplectic relations, exactly:

    conj(Phi)^T Phi - Psi^T conj(Psi) = 1  and  conj(Phi)^T Psi = Psi^T conj(Phi).
    """
    n = len(b.support)
    phi, psi = _mat(b.phi), _mat(b.psi)
    phi_h = gm.adjoint(phi, n)
    psi_t = gm.transpose(psi, n)
    first = gm.sub(gm.matmul(phi_h, phi), gm.matmul(psi_t, gm.conj(psi)))
    if n and not gm.is_identity(first):
        return False
    second_l = gm.matmul(phi_h, psi)
    second_r = gm.matmul(psi_t, gm.conj(phi))
    return second_l == second_r


def hs_norm_sq(b: BlockPair) -> Fraction:
    return sum((x.norm() for row in b.psi for x in row), Fraction(0))


def psi_rank(b: BlockPair) -> int:
    return gm.rank(_mat(b.psi))


# vectors of the complexified space: {("e" | "f", wrist): GaussianRational}

def omega_c(x: Mapping, y: Mapping) -> GaussianRational:
    """Complex-bilinear intersection form: omega(e_k, f_l) = i delta_kl."""
    out = gm.ZERO
    for (letter, k), c in x.items():
        c = GaussianRational.coerce(c)
        if letter == "e":
            out = out + c * GaussianRational.coerce(y.get(("f", k), 0)) * gm.I
        elif letter == "f":
            out = out - c * GaussianRational.coerce(y.get(("e", k), 0)) * gm.I
        else:
            raise InvalidInput(f"bad basis symbol {(letter, k)!r}")
    return out


def conjugate_vector(y: Mapping) -> dict:
    """Complex conjugation swaps e_k and f_k."""
    swap = {"e": "f", "f": "e"}
    return {(swap[l], k): GaussianRational.coerce(c).conj() for (l, k), c in y.items()}


def b_form(x: Mapping, y: Mapping) -> GaussianRational:
    """Indefinite hermitian form B(v, w) = omega_c(v, conj(w)) / i."""
    return omega_c(x, conjugate_vector(y)) / gm.I


def _aligned(g: FinSymplectic, h: FinSymplectic):
    """Versions of g, h, gh whose Phi blocks chain: h1 maps D to M, g1 maps M
    to R, gh1 maps D to R."""
    from .tree import common_refinement

    middle = common_refinement(h.range_tree, g.support)
    h1 = h.extend_range(middle)
    g1 = g.extend(middle)
    return g1, h1, compose_ops(g1, h1)


def _phi(f: FinSymplectic) -> list:
    return _mat(to_blocks(f).phi)


def cocycle_operator(g: FinSymplectic, h: FinSymplectic) -> list:
    """Finite block of Phi(g) Phi(h) Phi(gh)^-1; the identity elsewhere."""
    g1, h1, gh1 = _aligned(g, h)
    phi_gh = _phi(gh1)
    try:
        inv = gm.inverse(phi_gh)
    except ZeroDivisionError:
        raise AssertionError("Phi of a symplectic operator is invertible") from None
    return gm.matmul(gm.matmul(_phi(g1), _phi(h1)), inv)


def _moved_indices(x: list) -> list[int]:
    n = len(x)
    out = set()
    for i in range(n):
        for j in range(n):
            if x[i][j] != (gm.ONE if i == j else gm.ZERO):
                out.add(i)
                out.add(j)
    return sorted(out)


def c1_cocycle(g: FinSymplectic, h: FinSymplectic) -> GaussianRational:
    """det(Phi(g) Phi(h) Phi(gh)^-1) as the principal minor where it moves."""
    x = cocycle_operator(g, h)
    idx = _moved_indices(x)
    return gm.det([[x[i][j] for j in idx] for i in idx])


def c1_by_determinants(g: FinSymplectic, h: FinSymplectic) -> GaussianRational:
    """det Phi(g) det Phi(h) / det Phi(gh) on chained supports."""
    g1, h1, gh1 = _aligned(g, h)
    return gm.det(_phi(g1)) * gm.det(_phi(h1)) / gm.det(_phi(gh1))


def _principal_log_det(x: np.ndarray) -> complex:
    """Sum of principal logarithms of the eigenvalues of x."""
    if x.size == 0:
        return 0j
    eig = np.linalg.eigvals(x)
    for lam in eig:
        if lam.real < 0 and abs(lam.imag) < BRANCH_TOLERANCE:
            raise BranchAmbiguityError(f"eigenvalue {lam} lies on the branch cut")
        if abs(lam) < BRANCH_TOLERANCE:
            raise BranchAmbiguityError("singular cocycle operator")
    phase = float(np.sum(np.angle(eig)))
    sign, logabs = np.linalg.slogdet(x)
    # keep the branch count from the eigenvalues and the accuracy of the LU phase
    base = cmath.phase(complex(sign))
    phase = base + 2 * math.pi * round((phase - base) / (2 * math.pi))
    return complex(logabs, phase)


def cn_cocycle(g: FinSymplectic, h: FinSymplectic, n) -> complex:
    """det((Phi(g) Phi(h) Phi(gh)^-1)^(1/n)) on the principal branch."""
    n = Fraction(n)
    if n == 0:
        raise InvalidInput("n must be nonzero")
    x = cocycle_operator(g, h)
    idx = _moved_indices(x)
    minor = gm.to_complex([[x[i][j] for j in idx] for i in idx]) if idx else np.zeros((0, 0))
    return cmath.exp(_principal_log_det(minor) / float(n))


def metaplectic_cocycle(g: FinSymplectic, h: FinSymplectic) -> complex:
    """Complex conjugate of the n = -1/2 cocycle."""
    return cn_cocycle(g, h, Fraction(-1, 2)).conjugate()


def det_phi(g: FinSymplectic) -> GaussianRational:
    if not is_identity(g.end_map):
        raise InvalidInput("det Phi is only defined when the end map is trivial")
    return gm.det(_phi(g))


def ell(g: FinSymplectic) -> complex:
    d = complex(det_phi(g))
    return d / abs(d)
