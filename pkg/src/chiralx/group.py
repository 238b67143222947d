"""Algebraic group data: coordinate ring, invariant vector fields, adjoint
coefficients, coframe, and the two finite-dimensional anomaly identities
(the divergence identity for the modular character and the Killing-form
identity for the adjoint trace).

Sign conventions (fixed once, validated at the unit point): the stored left
field for basis element v takes the value -v at the identity and the stored
right field takes +v; concretely, on a matrix group the left field acts by
g -> -g*A and the right field by g -> A*g.  With these conventions both
stored families bracket as [x_a, x_b] = -sum_c f^c_ab x_c, they commute with
each other, and the adjoint coefficients g_{ia} defined by
v_a^r = sum_i g_{ia} v_i^l satisfy g(1) = -identity.  The Fock engine uses
the negated (homomorphism-normalized) actions; see jets.prolonged_action.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .liealg import LieAlgebraData, killing_form, modular_character, validate_lie_algebra
from .ring import PolyRing


@dataclass
class GroupData:
    name: str
    ring: PolyRing
    lie: LieAlgebraData
    left: list  # left[a][k]: polynomial Lie_{v_a^l}(x_k)
    right: list  # right[a][k]
    ad: list  # ad[i][a]: g_{ia} with v_a^r = sum_i g_{ia} v_i^l
    coframe: list  # coframe[j][k]: c_{jk} with theta^j = sum_k c_{jk} dx_k
    unit_point: dict  # generator name -> Fraction
    relations: list  # defining polynomials of the coordinate ring

    def left_derive(self, a, p):
        return self.ring.derive(p, self.left[a])

    def right_derive(self, a, p):
        return self.ring.derive(p, self.right[a])

    def left_action(self, a, p):
        """Homomorphism-normalized left action (negated stored field)."""
        return self.ring.scale(self.left_derive(a, p), -1)

    def right_action(self, a, p):
        """Homomorphism-normalized commuting action (negated stored field)."""
        return self.ring.scale(self.right_derive(a, p), -1)

    @property
    def dim(self):
        return self.lie.dim


def _bracket_fields(gd, fa, fb):
    """[X,Y] applied to each generator, for fields given by generator images."""
    R = gd.ring
    out = []
    for k in range(R.n):
        xy = R.derive(fb[k], fa)
        yx = R.derive(fa[k], fb)
        out.append(R.sub(xy, yx))
    return out


def validate_group(gd):
    """Check every structural invariant; returns a list of violations."""
    R = gd.ring
    L = gd.lie
    n = L.dim
    report = list(validate_lie_algebra(L))

    # relations reduce to zero and are killed by all fields
    relations = gd.relations
    for ridx, rel in enumerate(relations):
        if R.nf(rel) != {}:
            report.append(("relation-not-reduced", ridx))
        for a in range(n):
            if R.nf(gd.left_derive(a, rel)) != {}:
                report.append(("left-field-breaks-relation", (L.labels[a], ridx)))
            if R.nf(gd.right_derive(a, rel)) != {}:
                report.append(("right-field-breaks-relation", (L.labels[a], ridx)))

    # frame relations: stored fields bracket with -f on both sides
    for a in range(n):
        for b in range(n):
            lhs = _bracket_fields(gd, gd.left[a], gd.left[b])
            for k in range(R.n):
                expect = R.zero()
                for c in range(n):
                    expect = R.add(
                        expect, R.scale(gd.left[c][k], -L.struct_const[a][b][c])
                    )
                if not R.equal(lhs[k], expect):
                    report.append(
                        ("left-frame-relation", (L.labels[a], L.labels[b], R.names[k]))
                    )
            rhs = _bracket_fields(gd, gd.right[a], gd.right[b])
            for k in range(R.n):
                expect = R.zero()
                for c in range(n):
                    expect = R.add(
                        expect, R.scale(gd.right[c][k], -L.struct_const[a][b][c])
                    )
                if not R.equal(rhs[k], expect):
                    report.append(
                        ("right-frame-relation", (L.labels[a], L.labels[b], R.names[k]))
                    )
            mixed = _bracket_fields(gd, gd.left[a], gd.right[b])
            for k in range(R.n):
                if R.nf(mixed[k]) != {}:
                    report.append(
                        ("left-right-commutation", (L.labels[a], L.labels[b], R.names[k]))
                    )

    # adjoint identity: Lie_{v_a^r}(x_k) = sum_i g_{ia} Lie_{v_i^l}(x_k)
    for a in range(n):
        for k in range(R.n):
            acc = R.zero()
            for i in range(n):
                acc = R.add(acc, R.mul(gd.ad[i][a], gd.left[i][k]))
            if not R.equal(acc, gd.right[a][k]):
                report.append(("adjoint-identity", (L.labels[a], R.names[k])))

    # coframe duality: sum_k c_{jk} Lie_{v_i^l}(x_k) = delta_ij
    for j in range(n):
        for i in range(n):
            acc = R.zero()
            for k in range(R.n):
                acc = R.add(acc, R.mul(gd.coframe[j][k], gd.left[i][k]))
            expect = R.one() if i == j else R.zero()
            if not R.equal(acc, expect):
                report.append(("coframe-duality", (L.labels[j], L.labels[i])))

    # unit-point conventions: left and right fields take opposite values at 1,
    # and the adjoint coefficient matrix is -identity there.
    for a in range(n):
        for k in range(R.n):
            lv = R.evaluate(R.nf(gd.left[a][k]), gd.unit_point)
            rv = R.evaluate(R.nf(gd.right[a][k]), gd.unit_point)
            if lv != -rv:
                report.append(("unit-point-values", (L.labels[a], R.names[k])))
    for i in range(n):
        for a in range(n):
            val = R.evaluate(R.nf(gd.ad[i][a]), gd.unit_point)
            expect = Fraction(-1) if i == a else Fraction(0)
            if val != expect:
                report.append(("unit-point-adjoint", (L.labels[i], L.labels[a])))

    for ridx, rel in enumerate(relations):
        # unit point must lie on the group
        val = R.evaluate(rel, gd.unit_point)
        if val != 0:
            report.append(("unit-point-off-variety", ridx))

    return report


def adjoint_form(gd, Q, u, v):
    """The function g -> Q(Ad_g(u), v), as an element of the coordinate ring.

    Expressed through the adjoint coefficients as -sum_i Q(u, v_i) g_{iv};
    evaluates to Q(u, v) at the unit point.
    """
    R = gd.ring
    acc = R.zero()
    for i in range(gd.dim):
        c = Q(u, i)
        if c != 0:
            acc = R.add(acc, R.scale(gd.ad[i][v], -c))
    return R.nf(acc)


def modular_character_residuals(gd):
    """Residual of the divergence identity sum_i Lie_{v_i^l}(g_{ia}) = rho(v_a).

    Returns one polynomial per basis element; all must be zero.
    """
    R = gd.ring
    rho = modular_character(gd.lie)
    out = []
    for a in range(gd.dim):
        acc = R.zero()
        for i in range(gd.dim):
            acc = R.add(acc, gd.left_derive(i, gd.ad[i][a]))
        acc = R.sub(acc, R.const(rho(a)))
        out.append(R.nf(acc))
    return out


def killing_identity_residual(gd, u, v):
    """Residual of sum_i Lie_{[u,v_i]^l}(g_{iv}) = Q0(Ad_g u, v); zero when valid."""
    R = gd.ring
    L = gd.lie
    q0 = killing_form(L)
    acc = R.zero()
    for i in range(gd.dim):
        # [u, v_i] expanded in the basis, then the stored left fields applied
        for c in range(gd.dim):
            coeff = L.struct_const[u][i][c]
            if coeff != 0:
                acc = R.add(acc, R.scale(gd.left_derive(c, gd.ad[i][v]), coeff))
    acc = R.sub(acc, adjoint_form(gd, q0, u, v))
    return R.nf(acc)
