"""Exact Fock-space engine for the vacuum module of the current algebra on an
algebraic group.

States are finite rational combinations of basis vectors (creation word,
jet monomial): the creation word is a multiset of negative current modes in
canonical order, applied to an element of the jet algebra sitting at the
bottom.  Current modes obey

    [J_a[m], J_b[n]] = sum_c f^c_ab J_c[m+n] + m delta_{m+n,0} Q(a,b)

and function modes f[n] (f in the coordinate ring) obey f[-m]|0> =
(d^m f / m!)|0> together with [J_a[m], f[n]] = (phi_a f)[m+n], where phi_a is
the homomorphism-normalized invariant-field action.  Everything is graded by
conformal weight, and by coordinate degree for the graded group rings, which
keeps every computation a finite exact calculation.

Composite fields are expression trees (currents, functions, jets, d, normal
ordering); a field of weight h has modes F[n] shifting weight by -n, with
(dF)[n] = -(n + h) F[n] and the normal ordering split at m <= -wt(A).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb as _comb, factorial as _factorial

from .jets import JetSpace, jkey_weight, zmono_weight
from .ring import Rat

ZERO = 0
ONE = 1


def _genbinom(k, t):
    """Binomial coefficient with integer (possibly negative) top entry."""
    if t < 0:
        return 0
    if k >= 0:
        return _comb(k, t)
    return (-1) ** t * _comb(t - k - 1, t)


# -- field expressions ---------------------------------------------------------
#
# Expression nodes hash by a precomputed structural key; equality shortcuts
# on identity, so reusing the cached node objects keeps cache lookups cheap.


class _Expr:
    __slots__ = ("skey", "_hash")

    def _finish(self, skey):
        self.skey = skey
        self._hash = hash(skey)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        return type(other) is type(self) and self.skey == other.skey

    def __repr__(self):
        return f"{type(self).__name__}{self.skey[1:]}"


class Cur(_Expr):
    __slots__ = ("a",)

    def __init__(self, a):
        self.a = a
        self._finish(("cur", a))


class Fun(_Expr):
    __slots__ = ("p",)

    def __init__(self, p):
        self.p = p  # canonical polynomial items
        self._finish(("fun", p))


class JetF(_Expr):
    __slots__ = ("j",)

    def __init__(self, j):
        self.j = j  # canonical jet items; must be weight-homogeneous
        self._finish(("jet", j))


class Der(_Expr):
    __slots__ = ("f",)

    def __init__(self, f):
        self.f = f
        self._finish(("der", f.skey))


class NO(_Expr):
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self._finish(("no", left.skey, right.skey))


class Lin(_Expr):
    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = tuple(terms)
        self._finish(("lin", tuple((c, f.skey) for c, f in self.terms)))


class CF(_Expr):
    """A current with a coordinate-ring coefficient, :f J_i: (weight one).

    Semantically identical to NO(Fun(p), Cur(i)); carries its own fast
    application path that commutes through creation words via the closed
    bracket rule instead of expanding the normal-ordering mode sum.
    """

    __slots__ = ("p", "i")

    def __init__(self, p, i):
        self.p = p
        self.i = i
        self._finish(("cf", p, i))


def fun_expr(ring, p):
    return Fun(tuple(sorted(ring.nf(p).items())))


def jet_expr(js, jet):
    return JetF(tuple(sorted(jet.items())))


def poly_of(expr):
    return {m: c for m, c in expr.p}


def jet_of(expr):
    return {k: c for k, c in expr.j}


_weight_cache = {}


def expr_weight(expr):
    hit = _weight_cache.get(expr)
    if hit is not None:
        return hit
    if isinstance(expr, (Cur, CF)):
        w = 1
    elif isinstance(expr, Fun):
        w = 0
    elif isinstance(expr, JetF):
        ws = {jkey_weight(k) for k, _ in expr.j}
        if len(ws) > 1:
            raise ValueError("jet field must be weight-homogeneous")
        w = ws.pop() if ws else 0
    elif isinstance(expr, Der):
        w = expr_weight(expr.f) + 1
    elif isinstance(expr, NO):
        w = expr_weight(expr.left) + expr_weight(expr.right)
    elif isinstance(expr, Lin):
        ws = {expr_weight(f) for _, f in expr.terms}
        if len(ws) > 1:
            raise ValueError("linear combination of fields of unequal weight")
        w = ws.pop() if ws else 0
    else:
        raise TypeError(expr)
    _weight_cache[expr] = w
    return w


# -- the engine --------------------------------------------------------------------


def _acc(dst, src, c=ONE):
    if c == 0:
        return
    if c == 1:
        for k, v in src.items():
            nv = dst.get(k, ZERO) + v
            if nv == 0:
                dst.pop(k, None)
            else:
                dst[k] = nv
        return
    for k, v in src.items():
        nv = dst.get(k, ZERO) + v * c
        if nv == 0:
            dst.pop(k, None)
        else:
            dst[k] = nv


def _intify(d):
    """Collapse integral rational coefficients in a state dict to ints, in place."""
    for k, v in d.items():
        if not isinstance(v, int) and v.denominator == 1:
            d[k] = int(v)
    return d


def key_weight(key):
    word, jkey = key
    return sum(-n for n, _ in word) + jkey_weight(jkey)


class Fock:
    """Operator context for one group and one invariant form."""

    def __init__(self, gd, Q):
        self.gd = gd
        self.Q = Q
        self.js = JetSpace(gd)
        self.n = gd.dim
        self._cur_cache = {}
        self._fun_cache = {}
        self._field_cache = {}
        self._jet_tree_cache = {}
        self._zeta_tree_cache = {}
        self._phi_pk_cache = {}
        self._taylor_cache = {}
        self._jshift_cache = {}

    def Q_is_zero(self):
        return all(
            self.Q(a, b) == 0 for a in range(self.n) for b in range(self.n)
        )

    # -- states ----------------------------------------------------------------

    def vacuum(self):
        return {((), ((0,) * self.gd.ring.n, ())): ONE}

    def state_from_jet(self, jet, word=()):
        return {(word, k): c for k, c in jet.items()}

    def state_weight(self, state):
        ws = {key_weight(k) for k in state}
        if not ws:
            return 0
        if len(ws) > 1:
            raise ValueError("state is not weight-homogeneous")
        return ws.pop()

    def basis_states(self, w, degree=None, dbound=None):
        """All canonical basis keys of total weight w in the degree block."""
        out = []
        for ww in range(w + 1):
            for word in words_of_weight(self.n, ww):
                for jk in self.js.mc_basis(w - ww, degree=degree, dbound=dbound):
                    out.append((word, jk))
        return out

    # -- current modes ------------------------------------------------------------

    def apply_current(self, a, n, state):
        out = {}
        for key, c in state.items():
            _acc(out, self._cur(a, n, key), c)
        return out

    def _cur(self, a, n, key):
        memo = self._cur_cache
        mk = (a, n, key)
        hit = memo.get(mk)
        if hit is not None:
            return hit
        if n <= -1:
            res = self._create((n, a), key)
        else:
            word, jkey = key
            if not word:
                jet = self.js.shifted_action(a, n, {jkey: ONE})
                res = self.state_from_jet(jet)
            else:
                (k, b) = word[0]
                rest = (word[1:], jkey)
                res = {}
                # J_a[n] J_b[k] = J_b[k] J_a[n] + [J_a[n], J_b[k]]
                inner = self._cur(a, n, rest)
                for ikey, ic in inner.items():
                    _acc(res, self._cur(b, k, ikey), ic)
                for cc in range(self.n):
                    f = self.gd.lie.struct_const[a][b][cc]
                    if f != 0:
                        _acc(res, self._cur(cc, n + k, rest), f)
                if n + k == 0:
                    q = self.Q(a, b)
                    if q != 0:
                        _acc(res, {rest: ONE}, n * q)
        memo[mk] = _intify(res)
        return res

    def _create(self, op, key):
        """Insert a creation operator, straightening into canonical word order."""
        word, jkey = key
        if not word or op <= word[0]:
            return {((op,) + word, jkey): ONE}
        (k, b) = word[0]
        rest = (word[1:], jkey)
        out = {}
        inner = self._create(op, rest)
        for ikey, ic in inner.items():
            _acc(out, self._cur(b, k, ikey), ic)
        (m, a) = op
        for cc in range(self.n):
            f = self.gd.lie.struct_const[a][b][cc]
            if f != 0:
                _acc(out, self._cur(cc, m + k, rest), f)
        return out

    # -- function modes --------------------------------------------------------------

    def apply_fun(self, p, n, state):
        pk = tuple(sorted(self.gd.ring.nf(p).items()))
        out = {}
        for key, c in state.items():
            _acc(out, self._fun(pk, n, key), c)
        return out

    def _fun(self, pk, n, key):
        if not pk:
            return {}
        memo = self._fun_cache
        mk = (pk, n, key)
        hit = memo.get(mk)
        if hit is not None:
            return hit
        word, jkey = key
        if not word:
            if n > 0:
                res = {}
            else:
                jet = self.js.mul({jkey: 1}, self.js.dnf_pk(pk, -n))
                res = self.state_from_jet(jet)
        else:
            (k, b) = word[0]
            rest = (word[1:], jkey)
            res = {}
            inner = self._fun(pk, n, rest)
            for ikey, ic in inner.items():
                _acc(res, self._cur(b, k, ikey), ic)
            # f[n] J_b[k] = J_b[k] f[n] - (phi_b f)[n+k]
            pbk = self._phi_pk(b, pk)
            if pbk:
                _acc(res, self._fun(pbk, n + k, rest), -1)
        memo[mk] = _intify(res)
        return res

    def _phi_pk(self, b, pk):
        mk = (b, pk)
        hit = self._phi_pk_cache.get(mk)
        if hit is None:
            p = {m: c for m, c in pk}
            hit = tuple(sorted(self.gd.left_action(b, p).items()))
            self._phi_pk_cache[mk] = hit
        return hit

    # -- composite fields ---------------------------------------------------------------

    def _zeta_tree(self, j, m):
        """FieldExpr for the coframe tower generator z_j^(m)."""
        key = (j, m)
        if key not in self._zeta_tree_cache:
            R = self.gd.ring
            terms = []
            for k in range(R.n):
                c = self.gd.coframe[j][k]
                if R.nf(c):
                    terms.append(
                        (ONE, NO(fun_expr(R, c), Der(fun_expr(R, R.gen(R.names[k])))))
                    )
            base = Lin(tuple(terms))
            for _ in range(m - 1):
                base = Der(base)
            self._zeta_tree_cache[key] = base
        return self._zeta_tree_cache[key]

    def _jet_tree(self, jtuple):
        """Expand a jet value into nested normal ordering over its factors."""
        if jtuple not in self._jet_tree_cache:
            R = self.gd.ring
            terms = []
            for (og, z), c in jtuple:
                factors = []
                if any(og):
                    factors.append(Fun(((og, 1),)))
                for (j, m), e in z:
                    factors.extend([self._zeta_tree(j, m)] * e)
                if not factors:
                    expr = Fun(tuple(sorted(R.one().items())))
                else:
                    expr = factors[-1]
                    for f in reversed(factors[:-1]):
                        expr = NO(f, expr)
                terms.append((c, expr))
            self._jet_tree_cache[jtuple] = Lin(tuple(terms))
        return self._jet_tree_cache[jtuple]

    def apply_field(self, expr, n, state):
        out = {}
        for key, c in state.items():
            _acc(out, self._field(expr, n, key), c)
        return out

    def _field(self, expr, n, key):
        tp = type(expr)
        if tp is Cur:
            return self._cur(expr.a, n, key)
        if tp is Fun:
            return self._fun(expr.p, n, key)
        if tp is CF:
            return self._cf(expr.p, expr.i, n, key)
        if tp is JetF:
            return self._jetf(expr.j, n, key)
        mk = (expr, n, key)
        hit = self._field_cache.get(mk)
        if hit is not None:
            return hit
        if tp is Lin:
            res = {}
            for c, f in expr.terms:
                _acc(res, self._field(f, n, key), c)
        elif tp is Der:
            h = expr_weight(expr.f)
            res = {}
            _acc(res, self._field(expr.f, n, key), -(n + h))
        elif tp is NO:
            wa = expr_weight(expr.left)
            wk = key_weight(key)
            res = {}
            # creation part of the left factor
            for m in range(n - wk, -wa + 1):
                mid = self._field(expr.right, n - m, key)
                for ikey, ic in mid.items():
                    _acc(res, self._field(expr.left, m, ikey), ic)
            # annihilation part of the left factor acts first
            for m in range(-wa + 1, wk + 1):
                mid = self._field(expr.left, m, key)
                for ikey, ic in mid.items():
                    _acc(res, self._field(expr.right, n - m, ikey), ic)
        else:
            raise TypeError(expr)
        self._field_cache[mk] = _intify(res)
        return res

    # -- fast paths: jet fields and coefficient currents -----------------------------

    def _jet_taylor(self, jtuple, t):
        """d^t(j)/t! as a jet value, cached."""
        mk = (jtuple, t)
        hit = self._taylor_cache.get(mk)
        if hit is None:
            jet = {k: c for k, c in jtuple}
            for _ in range(t):
                jet = self.js.d(jet)
            if t > 1:
                jet = self.js.scale(jet, Rat(1, _factorial(t)))
            hit = tuple(sorted(jet.items()))
            self._taylor_cache[mk] = hit
        return hit

    def _jet_shift(self, b, t, jtuple):
        """delta(b, t) applied to a jet value, cached as a canonical tuple."""
        mk = (b, t, jtuple)
        hit = self._jshift_cache.get(mk)
        if hit is None:
            jet = {k: c for k, c in jtuple}
            hit = tuple(sorted(self.js.shifted_action(b, t, jet).items()))
            self._jshift_cache[mk] = hit
        return hit

    def _jetf(self, jtuple, n, key):
        """Mode of a commutative-sector (jet) field.

        On the jet bottom this is multiplication by the Taylor component
        d^t(j)/t! with t = -n - wt(j); through a creation operator it commutes
        by [J_b[k], Jet(j)[n]] = sum_t binom(k, t) Jet(delta_b^t j)[k+n].
        """
        if not jtuple:
            return {}
        mk = ("J", jtuple, n, key)
        hit = self._field_cache.get(mk)
        if hit is not None:
            return hit
        word, jkey = key
        h = jkey_weight(jtuple[0][0])
        if not word:
            t = -n - h
            if t < 0:
                res = {}
            else:
                tay = self._jet_taylor(jtuple, t)
                jet = self.js.mul({k: c for k, c in tay}, {jkey: ONE})
                res = self.state_from_jet(jet)
        else:
            (k, b) = word[0]
            rest = (word[1:], jkey)
            res = {}
            for ikey, ic in self._jetf(jtuple, n, rest).items():
                _acc(res, self._cur(b, k, ikey), ic)
            for t in range(0, h + 1):
                coef = _genbinom(k, t)
                if coef == 0:
                    continue
                shifted = self._jet_shift(b, t, jtuple)
                if shifted:
                    _acc(res, self._jetf(shifted, n + k, rest), -coef)
        self._field_cache[mk] = _intify(res)
        return res

    def _cf(self, pk, i, n, key):
        """Mode of :f J_i: via the closed commutation rule through words:

        [J_b[k], :f J_i:[n]] = f^c_bi :f J_c:[k+n] + :(phi_b f) J_i:[k+n]
                               - k (phi_i phi_b f)[k+n] + k Q(b,i) f[k+n].
        """
        if not pk:
            return {}
        mk = ("C", pk, i, n, key)
        hit = self._field_cache.get(mk)
        if hit is not None:
            return hit
        word, jkey = key
        if not word:
            w = jkey_weight(jkey)
            res = {}
            for m in range(n - w, 1):
                inner = self._cur(i, n - m, key)
                for ikey, ic in inner.items():
                    _acc(res, self._fun(pk, m, ikey), ic)
        else:
            (k, b) = word[0]
            rest = (word[1:], jkey)
            res = {}
            for ikey, ic in self._cf(pk, i, n, rest).items():
                _acc(res, self._cur(b, k, ikey), ic)
            # subtract [J_b[k], :fJ_i:[n]] applied to the rest
            for c in range(self.n):
                f = self.gd.lie.struct_const[b][i][c]
                if f != 0:
                    _acc(res, self._cf(pk, c, n + k, rest), -f)
            pb = self._phi_pk(b, pk)
            if pb:
                _acc(res, self._cf(pb, i, n + k, rest), -ONE)
                pib = self._phi_pk(i, pb)
                if pib:
                    _acc(res, self._fun(pib, n + k, rest), k)
            q = self.Q(b, i)
            if q != 0 and k != 0:
                _acc(res, self._fun(pk, n + k, rest), -k * q)
        self._field_cache[mk] = _intify(res)
        return res

    # -- derived operations --------------------------------------------------------------

    def commutator(self, fa, m, fb, n, state):
        x = self.apply_field(fa, m, self.apply_field(fb, n, state))
        y = self.apply_field(fb, n, self.apply_field(fa, m, state))
        out = dict(x)
        _acc(out, y, -ONE)
        return out

    def graded_dimension(self, w, degree=None, dbound=None):
        """Dimension of the (weight, degree) block, by basis enumeration."""
        return len(self.basis_states(w, degree=degree, dbound=dbound))

    def jacobi_residual(self, fa, l, fb, m, fc, n, state):
        """[A[l],[B[m],C[n]]]s + [B[m],[C[n],A[l]]]s + [C[n],[A[l],B[m]]]s."""

        def nested(x, xl, y, yl, z, zl):
            inner = lambda s: self.commutator(y, yl, z, zl, s)
            first = self.apply_field(x, xl, inner(state))
            second = inner(self.apply_field(x, xl, state))
            out = dict(first)
            _acc(out, second, -ONE)
            return out

        out = nested(fa, l, fb, m, fc, n)
        _acc(out, nested(fb, m, fc, n, fa, l))
        _acc(out, nested(fc, n, fa, l, fb, m))
        return out


def words_of_weight(n_basis, w):
    """Canonical creation words of total weight w (multisets of (mode, index))."""
    ops = [(-m, a) for m in range(1, w + 1) for a in range(n_basis)]
    out = []

    def rec(pos, remaining, current):
        if remaining == 0:
            out.append(tuple(sorted(current)))
            return
        if pos == len(ops):
            return
        (m, a) = ops[pos]
        for e in range(remaining // (-m), -1, -1):
            current.extend([(m, a)] * e)
            rec(pos + 1, remaining + e * m, current)
            for _ in range(e):
                current.pop()

    rec(0, w, [])
    return sorted(set(out))
