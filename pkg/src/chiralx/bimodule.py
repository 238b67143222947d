"""Transfer of finite-dimensional integrable modules across a change of form.

A module is given by engine action matrices sigma_a (a homomorphism of the
Lie algebra, normalized like the engine currents) together with a coaction
table h[i][j] of coordinate-ring elements with h(1) = identity and
psi_a(h)(1) = sigma_a, where psi_a is the homomorphism-normalized commuting
action.  The transfer map

    T(m_j (x) s)  =  sum_i m_i (x) (h_ij . s)

multiplies the jet part of the state internally (inside the creation word);
it intertwines all function modes on the nose, intertwines non-positive
left-current modes with the diagonal zero-mode correction sigma, and
exchanges the diagonal and pure right-current structures between the source
form and the shifted target form.  Positive left-current modes cannot be
intertwined by any finite-dimensional module at a nonzero form (the central
term has nowhere to go), so the suite quantifies the left condition over
non-positive modes only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cdo import right_current
from .fock import Cur, Fock, _acc
from .linalg import rank

ZERO = 0
ONE = 1


@dataclass
class ModuleRep:
    name: str
    dim: int
    sigma: list  # sigma[a][i][j] Fractions, engine-normalized action matrices
    coaction: list  # coaction[i][j] polynomials


def validate_module_rep(gd, rep):
    """Bracket, counit and coaction-derivative consistency; list of violations."""
    R = gd.ring
    L = gd.lie
    n, m = L.dim, rep.dim
    report = []
    for a in range(n):
        for b in range(n):
            for i in range(m):
                for j in range(m):
                    comm = sum(
                        rep.sigma[a][i][k] * rep.sigma[b][k][j]
                        - rep.sigma[b][i][k] * rep.sigma[a][k][j]
                        for k in range(m)
                    )
                    expect = sum(
                        L.struct_const[a][b][c] * rep.sigma[c][i][j] for c in range(n)
                    )
                    if comm != expect:
                        report.append(("action-bracket", (L.labels[a], L.labels[b])))
    for i in range(m):
        for j in range(m):
            val = R.evaluate(R.nf(rep.coaction[i][j]), gd.unit_point)
            if val != (1 if i == j else 0):
                report.append(("coaction-counit", (i, j)))
            for a in range(n):
                der = gd.right_action(a, rep.coaction[i][j])
                dval = R.evaluate(R.nf(der), gd.unit_point)
                if dval != rep.sigma[a][i][j]:
                    report.append(("coaction-derivative", (L.labels[a], i, j)))
    return report


# module-valued states: dict[(component index, fock key) -> Fraction]


def module_state(rep, i, state):
    return {(i, key): c for key, c in state.items()}


def internal_multiply(ctx, p, key):
    """Multiply the jet part of a basis key by a ring element, inside the word."""
    word, jkey = key
    jet = ctx.js.mul({jkey: ONE}, ctx.js.from_poly(p))
    return {(word, jk): c for jk, c in jet.items()}


def transfer(rep, ctx_src, ctx_tgt, state):
    """The coaction transfer from M (x) V at the source form to the target."""
    out = {}
    for (j, key), c in state.items():
        for i in range(rep.dim):
            h = rep.coaction[i][j]
            if not ctx_tgt.gd.ring.nf(h):
                continue
            for key2, c2 in internal_multiply(ctx_tgt, h, key).items():
                _acc(out, {(i, key2): c2}, c)
    return out


def _lift_field(ctx, field, n, state):
    out = {}
    for (i, key), c in state.items():
        for key2, c2 in ctx._field(field, n, key).items():
            _acc(out, {(i, key2): c2}, c)
    return out


def _lift_fun(ctx, p, n, state):
    out = {}
    for (i, key), c in state.items():
        for key2, c2 in ctx.apply_fun(p, n, {key: ONE}).items():
            _acc(out, {(i, key2): c2}, c)
    return out


def _sigma_action(rep, a, state):
    out = {}
    for (i, key), c in state.items():
        for k in range(rep.dim):
            v = rep.sigma[a][k][i]
            if v != 0:
                _acc(out, {(k, key): ONE}, c * v)
    return out


def check_intertwining(rep, gd, Q, Qp, wbound=1, dbound=1):
    """Exact intertwining residuals for the transfer at the given forms.

    Source module: M (x) V at form Qp; target: M (x) V at form Qp - Q.
    Checks, on all basis states up to the bounds:
      (a) every function-generator mode with |n| <= 1 commutes with T;
      (b) left currents at modes n in {-1, 0}: T J[n] = (J[n] + [n==0] sigma) T;
      (c) right currents at |n| <= 1: T (R_src[n] + [n==0] sigma) = R_tgt[n] T.
    Returns the failing cases.
    """
    q_src = Qp
    q_tgt = lambda a, b: Qp(a, b) - Q(a, b)
    ctx_src = Fock(gd, q_src)
    ctx_tgt = Fock(gd, q_tgt)
    R = gd.ring
    failures = []
    keys = [
        key for w in range(wbound + 1) for key in ctx_src.basis_states(w, dbound=dbound)
    ]
    states = [module_state(rep, j, {key: ONE}) for j in range(rep.dim) for key in keys]

    def T(x):
        return transfer(rep, ctx_src, ctx_tgt, x)

    for s in states:
        ts = T(s)
        # (a) function modes
        for k in range(R.n):
            f = R.gen(R.names[k])
            for n in (-1, 0, 1):
                lhs = T(_lift_fun(ctx_src, f, n, s))
                rhs = _lift_fun(ctx_tgt, f, n, ts)
                res = dict(lhs)
                _acc(res, rhs, -ONE)
                if res:
                    failures.append(("function-mode", (R.names[k], n)))
        # (b) left currents, non-positive modes
        for a in range(gd.dim):
            for n in (-1, 0):
                lhs = T(_lift_field(ctx_src, Cur(a), n, s))
                rhs = _lift_field(ctx_tgt, Cur(a), n, ts)
                if n == 0:
                    _acc(rhs, _sigma_action(rep, a, ts), ONE)
                res = dict(lhs)
                _acc(res, rhs, -ONE)
                if res:
                    failures.append(("left-current", (gd.lie.labels[a], n)))
        # (c) right currents, diagonal source to pure target
        for u in range(gd.dim):
            r_src = right_current(ctx_src, u)
            r_tgt = right_current(ctx_tgt, u)
            for n in (-1, 0, 1):
                src_side = _lift_field(ctx_src, r_src, n, s)
                if n == 0:
                    _acc(src_side, _sigma_action(rep, u, s), ONE)
                lhs = T(src_side)
                rhs = _lift_field(ctx_tgt, r_tgt, n, ts)
                res = dict(lhs)
                _acc(res, rhs, -ONE)
                if res:
                    failures.append(("right-current", (gd.lie.labels[u], n)))
    return failures


def transfer_block_ranks(rep, gd, Q, Qp, wbound=1, dbound=1):
    """Column ranks of the transfer on weight blocks; full rank = injective."""
    ctx_src = Fock(gd, Qp)
    ctx_tgt = Fock(gd, lambda a, b: Qp(a, b) - Q(a, b))
    out = []
    for w in range(wbound + 1):
        keys = ctx_src.basis_states(w, dbound=dbound)
        cols = []
        for j in range(rep.dim):
            for key in keys:
                cols.append(transfer(rep, ctx_src, ctx_tgt, {(j, key): ONE}))
        out.append((w, len(cols), rank(cols)))
    return out
