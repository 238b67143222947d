"""Finite-dimensional Lie algebra data: structure constants, invariant forms,
the modular character, and an exact Chevalley-Eilenberg cohomology oracle.

Everything is over the rationals (Fraction scalars); no floating point enters
anywhere.  Structure constants are stored as sc[a][b][c] with
[v_a, v_b] = sum_c sc[a][b][c] * v_c.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .linalg import rank
from .ring import Rat, ratnorm, to_rat

Rat = Fraction


@dataclass(frozen=True)
class LieAlgebraData:
    dim: int
    labels: tuple
    struct_const: tuple  # sc[a][b][c] as nested tuples of Fraction

    @staticmethod
    def from_table(labels, table):
        n = len(labels)
        sc = tuple(
            tuple(tuple(to_rat(table[a][b][c]) for c in range(n)) for b in range(n))
            for a in range(n)
        )
        return LieAlgebraData(n, tuple(labels), sc)

    def bracket_coeff(self, a, b, c):
        return self.struct_const[a][b][c]

    def ad_matrix(self, a):
        """Matrix of ad_{v_a}: entry [row c][col b] = coefficient of v_c in [v_a, v_b]."""
        n = self.dim
        return [[self.struct_const[a][b][c] for b in range(n)] for c in range(n)]


@dataclass(frozen=True)
class BilinearForm:
    entries: tuple  # n x n Fractions

    @staticmethod
    def from_rows(rows):
        return BilinearForm(tuple(tuple(to_rat(x) for x in row) for row in rows))

    def __call__(self, a, b):
        return self.entries[a][b]

    def scale(self, c):
        c = to_rat(c)
        return BilinearForm(tuple(tuple(x * c for x in row) for row in self.entries))

    def add(self, other):
        return BilinearForm(
            tuple(
                tuple(x + y for x, y in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            )
        )

    def neg(self):
        return self.scale(-1)

    def is_zero(self):
        return all(all(x == 0 for x in row) for row in self.entries)


@dataclass(frozen=True)
class Covector:
    entries: tuple

    def __call__(self, a):
        return self.entries[a]

    def is_zero(self):
        return all(x == 0 for x in self.entries)


def validate_lie_algebra(L):
    """Report every violated antisymmetry or Jacobi instance; empty iff valid."""
    n = L.dim
    sc = L.struct_const
    report = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if sc[a][b][c] != -sc[b][a][c]:
                    report.append(
                        ("antisymmetry", (L.labels[a], L.labels[b], L.labels[c]))
                    )
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for e in range(n):
                    s = sum(
                        sc[a][b][d] * sc[d][c][e]
                        + sc[b][c][d] * sc[d][a][e]
                        + sc[c][a][d] * sc[d][b][e]
                        for d in range(n)
                    )
                    if s != 0:
                        report.append(
                            (
                                "jacobi",
                                (L.labels[a], L.labels[b], L.labels[c], L.labels[e]),
                            )
                        )
    return report


def killing_form(L):
    """Trace form of the adjoint representation, Q0(a,b) = tr(ad_a ad_b)."""
    n = L.dim
    sc = L.struct_const
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            tr = 0
            for x in range(n):
                for y in range(n):
                    tr += sc[a][y][x] * sc[b][x][y]
            row.append(tr)
        rows.append(tuple(row))
    return BilinearForm(tuple(rows))


def modular_character(L):
    """rho(v) = tr(ad_v); vanishes on brackets, which is checked."""
    n = L.dim
    sc = L.struct_const
    rho = Covector(tuple(sum(sc[a][b][b] for b in range(n)) for a in range(n)))
    for a in range(n):
        for b in range(n):
            val = sum(sc[a][b][c] * rho(c) for c in range(n))
            if val != 0:
                raise ValueError("modular character does not kill brackets; invalid input")
    return rho


def check_invariance(L, Q):
    """Violations of Q([a,b],c) + Q(b,[a,c]) = 0 over all basis triples."""
    n = L.dim
    sc = L.struct_const
    bad = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                s = sum(sc[a][b][d] * Q(d, c) + sc[a][c][d] * Q(b, d) for d in range(n))
                if s != 0:
                    bad.append((L.labels[a], L.labels[b], L.labels[c]))
    return bad


def validate_form(L, Q):
    report = []
    n = L.dim
    for a in range(n):
        for b in range(n):
            if Q(a, b) != Q(b, a):
                report.append(("symmetry", (L.labels[a], L.labels[b])))
    for triple in check_invariance(L, Q):
        report.append(("invariance", triple))
    return report


def dual_form(Q, L):
    """The involution Q -> -Q - Q0 on invariant forms."""
    return Q.neg().add(killing_form(L).neg())


# -- Chevalley-Eilenberg cohomology ------------------------------------------


@dataclass(frozen=True)
class ModuleData:
    """Finite-dimensional module given by one action matrix per basis element."""

    dim: int
    actions: tuple  # actions[a][i][j], matrix acting on column vectors

    @staticmethod
    def trivial(L):
        return ModuleData(1, tuple(((0,),) for _ in range(L.dim)))

    @staticmethod
    def from_matrices(mats):
        return ModuleData(
            len(mats[0]),
            tuple(tuple(tuple(to_rat(x) for x in row) for row in m) for m in mats),
        )


def validate_module(L, M):
    """Check [rho_a, rho_b] = sum_c f^c_ab rho_c; return violating pairs."""
    n, m = L.dim, M.dim
    bad = []
    for a in range(n):
        for b in range(n):
            for i in range(m):
                for j in range(m):
                    comm = sum(
                        M.actions[a][i][k] * M.actions[b][k][j]
                        - M.actions[b][i][k] * M.actions[a][k][j]
                        for k in range(m)
                    )
                    expect = sum(
                        L.struct_const[a][b][c] * M.actions[c][i][j] for c in range(n)
                    )
                    if comm != expect:
                        bad.append((L.labels[a], L.labels[b]))
                        break
                else:
                    continue
                break
    return bad


def _ce_differential_columns(L, M, k):
    """Columns of d: C^k -> C^{k+1} on the basis (subset, module index)."""
    n, m = L.dim, M.dim
    sc = L.struct_const
    subsets_k = list(combinations(range(n), k))
    subsets_k1 = list(combinations(range(n), k + 1))
    sub_index = {s: i for i, s in enumerate(subsets_k)}
    columns = []
    for S, mi in ((S, mi) for S in subsets_k for mi in range(m)):
        col = {}

        def put(row, val):
            if val == 0:
                return
            cur = col.get(row, Fraction(0)) + val
            if cur == 0:
                col.pop(row, None)
            else:
                col[row] = cur

        for T in subsets_k1:
            # action part: sum_i (-1)^i x_{t_i} . omega(T \ t_i)
            for pos, x in enumerate(T):
                rest = T[:pos] + T[pos + 1 :]
                if rest != S:
                    continue
                sign = (-1) ** pos
                for mj in range(m):
                    put((T, mj), sign * M.actions[x][mj][mi])
            # bracket part: sum_{i<j} (-1)^{i+j} omega([x_i,x_j] ^ rest)
            for pi, pj in combinations(range(k + 1), 2):
                xi, xj = T[pi], T[pj]
                rest = tuple(t for q, t in enumerate(T) if q not in (pi, pj))
                base_sign = (-1) ** (pi + pj)
                for c in range(n):
                    coeff = sc[xi][xj][c]
                    if coeff == 0 or c in rest:
                        continue
                    merged = tuple(sorted(rest + (c,)))
                    if merged != S:
                        continue
                    pos_c = merged.index(c)
                    sign = base_sign * ((-1) ** pos_c)
                    put((T, mi), sign * coeff)
        columns.append(col)
    return columns


def ce_cohomology(L, M=None):
    """Dimensions of H^k(g, M) for k = 0..dim g, by exact rank computation."""
    if M is None:
        M = ModuleData.trivial(L)
    bad = validate_module(L, M)
    if bad:
        raise ValueError(f"action matrices fail the representation property at {bad[0]}")
    n, m = L.dim, M.dim
    from math import comb

    dims_c = [comb(n, k) * m for k in range(n + 1)]
    ranks = []
    for k in range(n):
        ranks.append(rank(_ce_differential_columns(L, M, k)))
    ranks.append(0)
    out = []
    for k in range(n + 1):
        prev = ranks[k - 1] if k > 0 else 0
        out.append(dims_c[k] - ranks[k] - prev)
    return out
