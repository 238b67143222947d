"""Fermionic ghost extension and the ghost differential.

Ghost modes: b_a[n] of weight one and c^a[n] of weight zero per Lie-algebra
basis direction, with canonical anticommutation {b_a[m], c^b[n]} =
delta_a^b delta_{m+n,0} and all other anticommutators zero.  The ghost
vacuum is annihilated by b_a[n], n >= 0 and by c^a[n], n >= 1, so the c zero
modes are creation operators and the weight-zero fermionic sector is the
exterior algebra of the dual space, matching the finite-dimensional
Chevalley-Eilenberg shape.

The quadratic ghost currents K_a realize the adjoint action on the ghosts
and form a current algebra whose central term is the Killing form; the
canonical identification reverses the center, so ghost_current_level reports
the negative of the raw vacuum extraction and equals -Q0.  The differential
is assembled from the matter currents (the right currents at form zero,
whose level is automatically -Q0) plus the normally ordered cubic ghost
term; its square vanishing on every computed block is the level certificate.
"""

from __future__ import annotations

from fractions import Fraction

from .cdo import right_current
from .fock import _acc, key_weight
from .liealg import BilinearForm, killing_form

ZERO = 0
ONE = 1

# ghost op: (n, kind, a) with kind 0 = b (weight one), 1 = c (weight zero)


def is_creation(op):
    n, kind, _ = op
    return n <= -1 if kind == 0 else n <= 0


def ghost_word_weight(word):
    return sum(-n for n, _, _ in word)


def ghost_number(word):
    return sum(1 if kind == 1 else -1 for _, kind, _ in word)


def apply_ghost_op(op, word):
    """Apply one ghost mode to a canonical word; returns {word: coefficient}."""
    if is_creation(op):
        if op in word:
            return {}
        pos = 0
        while pos < len(word) and word[pos] < op:
            pos += 1
        sign = -1 if pos % 2 else 1
        return {word[:pos] + (op,) + word[pos:]: sign}
    # annihilation: anticommute through, contracting against the partner
    n, kind, a = op
    out = {}
    sign = 1
    for i, g in enumerate(word):
        gn, gkind, ga = g
        if gkind != kind and ga == a and gn + n == 0:
            rest = word[:i] + word[i + 1 :]
            cur = out.get(rest, ZERO) + sign
            if cur == 0:
                out.pop(rest, None)
            else:
                out[rest] = cur
        sign = -sign
    return out


def apply_ghost_word(ops, word):
    """Apply a product of ghost modes (leftmost acts last)."""
    states = {word: ONE}
    for op in reversed(ops):
        nxt = {}
        for w, c in states.items():
            for w2, c2 in apply_ghost_op(op, w).items():
                nc = nxt.get(w2, ZERO) + c * c2
                if nc == 0:
                    nxt.pop(w2, None)
                else:
                    nxt[w2] = nc
        states = nxt
    return states


def normal_order_ops(ops):
    """Sort annihilators to the right of creations; returns (sign, reordered)."""
    tagged = [(0 if is_creation(op) else 1, i, op) for i, op in enumerate(ops)]
    target = sorted(tagged, key=lambda t: (t[0], t[1]))
    perm = [t[1] for t in target]
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign, [t[2] for t in target]


def ghost_bilinear_apply(sc, n_basis, a, n, gstate):
    """The ghost current mode K_a[n] = sum f^c_ab :b_c c^b:[n] on a ghost state."""
    out = {}
    for word, coeff in gstate.items():
        w = ghost_word_weight(word)
        for b in range(n_basis):
            for c in range(n_basis):
                f = sc[a][b][c]
                if f == 0:
                    continue
                # creation part of b_c: modes k <= -1
                for k in range(n - w, 0):
                    mid = apply_ghost_op((n - k, 1, b), word)
                    for w1, c1 in mid.items():
                        for w2, c2 in apply_ghost_op((k, 0, c), w1).items():
                            _gacc(out, w2, coeff * f * c1 * c2)
                # annihilation part of b_c acts first: modes k >= 0, minus sign
                for k in range(0, w + 1):
                    mid = apply_ghost_op((k, 0, c), word)
                    for w1, c1 in mid.items():
                        for w2, c2 in apply_ghost_op((n - k, 1, b), w1).items():
                            _gacc(out, w2, -coeff * f * c1 * c2)
    return out


def _gacc(dst, key, val):
    if val == 0:
        return
    cur = dst.get(key, ZERO) + val
    if cur == 0:
        dst.pop(key, None)
    else:
        dst[key] = cur


def apply_ghost(kind, a, n, state):
    """Apply b_a[n] (kind 'b') or c^a[n] (kind 'c') to a matter (x) ghost state."""
    kcode = 0 if kind == "b" else 1
    out = {}
    for (mkey, gw), c in state.items():
        for gw2, c2 in apply_ghost_op((n, kcode, a), gw).items():
            _gacc(out, (mkey, gw2), c * c2)
    return out


def raw_ghost_level(L):
    """Vacuum extraction of the ghost current central term (equals +Q0)."""
    sc = L.struct_const
    n = L.dim
    rows = []
    for a in range(n):
        row = []
        for d in range(n):
            created = ghost_bilinear_apply(sc, n, d, -1, {(): ONE})
            back = ghost_bilinear_apply(sc, n, a, 1, created)
            row.append(back.get((), 0))
        rows.append(tuple(row))
    return BilinearForm(tuple(rows))


def ghost_current_level(L):
    """Central term of the ghost current algebra, read through the canonical
    center-reversing identification; equals minus the Killing form."""
    return raw_ghost_level(L).neg()


# -- the differential ------------------------------------------------------------


class BrstComplex:
    """Blockwise ghost differential on matter (x) ghost states.

    Matter is the vacuum module at form zero, acted on by its right currents
    (level is then automatically minus the Killing form); states are keyed by
    (matter key, ghost word).  The differential preserves weight and, on
    graded group rings, coordinate degree, and raises ghost number by one.
    """

    def __init__(self, ctx):
        if not ctx.Q_is_zero():
            raise ValueError("the ghost differential lives over the form-zero module")
        self.ctx = ctx
        self.gd = ctx.gd
        self.n = ctx.gd.dim
        self.sc = ctx.gd.lie.struct_const
        self._delta_cache = {}

    # ghost words ------------------------------------------------------------

    def ghost_words(self, weight, number=None):
        pool = [(0, 1, a) for a in range(self.n)]
        pool += [
            (-m, kind, a)
            for m in range(1, weight + 1)
            for kind in (0, 1)
            for a in range(self.n)
        ]
        pool.sort()
        out = []

        def rec(pos, remaining, current):
            if pos == len(pool):
                if remaining == 0:
                    w = tuple(current)
                    if number is None or ghost_number(w) == number:
                        out.append(w)
                return
            rec(pos + 1, remaining, current)
            op = pool[pos]
            cost = -op[0]
            if cost <= remaining:
                current.append(op)
                rec(pos + 1, remaining - cost, current)
                current.pop()

        rec(0, weight, [])
        return sorted(set(out))

    def block_basis(self, w, d, k):
        """Basis of the (weight, degree, ghost number) block."""
        out = []
        for wg in range(w + 1):
            gws = self.ghost_words(wg, number=k)
            if not gws:
                continue
            for mkey in self.ctx.basis_states(w - wg, degree=d):
                for gw in gws:
                    out.append((mkey, gw))
        return out

    # the differential --------------------------------------------------------

    def delta_key(self, mkey, gword):
        cache_key = (mkey, gword)
        hit = self._delta_cache.get(cache_key)
        if hit is not None:
            return hit
        out = {}
        mweight = key_weight(mkey)
        gweight = ghost_word_weight(gword)
        mstate = {mkey: ONE}
        # matter part: sum_a sum_n c^a[-n] R_a[n]
        for a in range(self.n):
            field = right_current(self.ctx, a)
            for n in range(-gweight, mweight + 1):
                matter = self.ctx._field(field, n, mkey)
                if not matter:
                    continue
                ghost = apply_ghost_op((-n, 1, a), gword)
                if not ghost:
                    continue
                for mk2, mc in matter.items():
                    for gw2, gc in ghost.items():
                        _gacc(out, (mk2, gw2), mc * gc)
        # cubic ghost part: -1/2 f^c_ab sum :c^a[r] c^b[s] b_c[t]:, r+s+t = 0
        bound = 2 * gweight + 2
        half = Fraction(1, 2)
        for a in range(self.n):
            for b in range(self.n):
                for c in range(self.n):
                    f = self.sc[a][b][c]
                    if f == 0:
                        continue
                    for r in range(-bound, gweight + 1):
                        for s in range(-bound, gweight + 1):
                            t = -r - s
                            if t > gweight or t < -bound:
                                continue
                            ops = [(r, 1, a), (s, 1, b), (t, 0, c)]
                            sign, ordered = normal_order_ops(ops)
                            res = apply_ghost_word(ordered, gword)
                            if not res:
                                continue
                            coeff = -half * f * sign
                            for gw2, gc in res.items():
                                _gacc(out, (mkey, gw2), coeff * gc)
        self._delta_cache[cache_key] = out
        return out

    def delta(self, state):
        out = {}
        for (mkey, gword), c in state.items():
            for key2, c2 in self.delta_key(mkey, gword).items():
                _gacc(out, key2, c * c2)
        return out

    def block_matrix(self, w, d, k):
        """Columns of delta on the (w, d, k) block (rows keyed by target keys)."""
        basis = self.block_basis(w, d, k)
        cols = []
        for key in basis:
            cols.append(self.delta_key(*key))
        return basis, cols

    def dsq_residuals(self, w, d, kmin=None, kmax=None):
        """delta-squared on every basis vector of the (w, d) blocks; must be empty."""
        if kmin is None:
            kmin = -self.n - w
        if kmax is None:
            kmax = self.n + w
        bad = []
        for k in range(kmin, kmax + 1):
            for key in self.block_basis(w, d, k):
                res = self.delta(self.delta_key(*key))
                if res:
                    bad.append((w, d, k, key))
        return bad

    def cohomology_dim(self, w, d, k):
        """dim H^k at the (w, d) block: dim ker(delta_k) - rank(delta_{k-1})."""
        from .linalg import rank

        basis_k, cols_k = self.block_matrix(w, d, k)
        _, cols_prev = self.block_matrix(w, d, k - 1)
        rank_k = rank(cols_k)
        rank_prev = rank(cols_prev)
        return len(basis_k) - rank_k - rank_prev


def semi_infinite_cohomology(complex_, w, d, k):
    """Cohomology dimension of one (weight, degree, ghost number) block."""
    return complex_.cohomology_dim(w, d, k)


def semi_infinite_totals(complex_, w, dvalues, krange):
    """Summed cohomology dimensions over a family of degree blocks."""
    out = {}
    for k in krange:
        total = 0
        for d in dvalues:
            total += complex_.cohomology_dim(w, d, k)
        out[k] = total
    return out
