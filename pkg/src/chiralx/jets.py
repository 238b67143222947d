"""Differential polynomials on the arc space of an algebraic group.

Internally a jet element is written in trivialized coordinates: the group
coordinates x_k (weight 0) together with free generators z_j^(m) of weight
m >= 1, one tower per Lie-algebra basis direction, where z_j^(1) is the jet
of the invariant coframe component theta^j.  Because the arc space of a
group trivializes along its invariant coframe, these coordinates are free:
every jet polynomial has a unique representative, and the prolonged ideal
generated by d^m(relations) is handled once and for all by the conversion
from raw jet variables x_k^(m).

The derivation d raises weight by one.  The current actions come in a
graded family delta(a, n) lowering weight by n; delta(a, 0) is the
homomorphism-normalized invariant-field action and the shifted actions have
constant coefficients on the z-generators:

    delta(a,0) z_j^(m) = -sum_i f^j_{ai} z_i^(m)
    delta(a,n) z_j^(m) = -n! C(m-1,n) sum_i f^j_{ai} z_i^(m-n)   (0 < n < m)
    delta(a,m) z_j^(m) = -m!  when j == a, else 0
    delta(a,n) x_k     = 0 for n >= 1;  delta(a,0) x_k = -Lie_{v_a^l}(x_k)
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .linalg import rank
from .ring import Rat

ZERO = 0
ONE = 1

# Jet = dict[(og_mono, z_mono) -> Fraction]
# z_mono = tuple of ((j, m), exponent), sorted


def zmono_mul(z1, z2):
    acc = dict(z1)
    for key, e in z2:
        acc[key] = acc.get(key, 0) + e
    return tuple(sorted(acc.items()))


def zmono_weight(z):
    return sum(jm[1] * e for jm, e in z)


def jkey_weight(jkey):
    return zmono_weight(jkey[1])


class JetSpace:
    def __init__(self, gd):
        self.gd = gd
        self.R = gd.ring
        self.n = gd.dim
        self._x1 = None  # MC images of first jets x_k^(1)
        self._xcache = {}  # (k, m) -> Jet
        self._phi_og = [
            [self.from_poly(self.R.scale(gd.left[a][k], -1)) for k in range(self.R.n)]
            for a in range(self.n)
        ]
        self._dnf_cache = {}
        self._ogmul_cache = {}

    # -- basic algebra ------------------------------------------------------

    def zero(self):
        return {}

    def one(self):
        return {((0,) * self.R.n, ()): ONE}

    def from_poly(self, p):
        return {(m, ()): c for m, c in self.R.nf(p).items()}

    def zgen(self, j, m=1):
        return {((0,) * self.R.n, (((j, m), 1),)): ONE}

    def add(self, u, v):
        out = dict(u)
        for k, c in v.items():
            nc = out.get(k, ZERO) + c
            if nc == 0:
                out.pop(k, None)
            else:
                out[k] = nc
        return out

    def scale(self, u, c):
        if c == 0:
            return {}
        return {k: v * c for k, v in u.items()}

    def sub(self, u, v):
        return self.add(u, self.scale(v, -1))

    def mul(self, u, v):
        R = self.R
        out = {}
        ogcache = self._ogmul_cache
        for (og1, z1), c1 in u.items():
            for (og2, z2), c2 in v.items():
                ogk = (og1, og2)
                og = ogcache.get(ogk)
                if og is None:
                    og = R.nf({tuple(a + b for a, b in zip(og1, og2)): 1})
                    ogcache[ogk] = og
                z = zmono_mul(z1, z2)
                for m, oc in og.items():
                    key = (m, z)
                    nc = out.get(key, ZERO) + c1 * c2 * oc
                    if nc == 0:
                        out.pop(key, None)
                    else:
                        out[key] = nc
        return out

    def mul_poly(self, u, p):
        return self.mul(u, self.from_poly(p))

    def weight(self, u):
        ws = {jkey_weight(k) for k in u}
        if len(ws) > 1:
            raise ValueError("jet is not weight-homogeneous")
        return ws.pop() if ws else 0

    def degree_vec(self, jkey):
        return self.R.mono_degree(jkey[0])

    # -- derivations ----------------------------------------------------------

    def _derive(self, u, og_image, z_image):
        """Leibniz extension of generator images; images are Jet-valued callables."""
        out = {}
        for (og, z), c in u.items():
            # differentiate a group-coordinate factor
            for k, e in enumerate(og):
                if e == 0:
                    continue
                img = og_image(k)
                if not img:
                    continue
                lowered = list(og)
                lowered[k] -= 1
                base = {(tuple(lowered), z): c * e}
                for kk, vv in self.mul(base, img).items():
                    nc = out.get(kk, ZERO) + vv
                    if nc == 0:
                        out.pop(kk, None)
                    else:
                        out[kk] = nc
            # differentiate a z-generator factor
            for idx, ((j, m), e) in enumerate(z):
                img = z_image(j, m)
                if not img:
                    continue
                rest = list(z)
                if e == 1:
                    rest.pop(idx)
                else:
                    rest[idx] = ((j, m), e - 1)
                base = {(og, tuple(rest)): c * e}
                for kk, vv in self.mul(base, img).items():
                    nc = out.get(kk, ZERO) + vv
                    if nc == 0:
                        out.pop(kk, None)
                    else:
                        out[kk] = nc
        return out

    @property
    def x1(self):
        """MC images of the first jets: x_k^(1) = sum_j Lie_{v_j^l}(x_k) z_j."""
        if self._x1 is None:
            imgs = []
            for k in range(self.R.n):
                acc = {}
                for j in range(self.n):
                    acc = self.add(acc, self.mul_poly(self.zgen(j), self.gd.left[j][k]))
                imgs.append(acc)
            self._x1 = imgs
        return self._x1

    def d(self, u):
        """The total derivative: weight +1 derivation with d(x_k) = x_k^(1)."""
        return self._derive(
            u,
            lambda k: self.x1[k],
            lambda j, m: self.zgen(j, m + 1),
        )

    def xjet(self, k, m):
        """MC form of the raw jet variable x_k^(m)."""
        if m == 0:
            return self.from_poly(self.R.gen(self.R.names[k]))
        key = (k, m)
        if key not in self._xcache:
            if m == 1:
                self._xcache[key] = self.x1[k]
            else:
                self._xcache[key] = self.d(self.xjet(k, m - 1))
        return self._xcache[key]

    def xmono_to_mc(self, xmono):
        """Convert a raw jet monomial {(k,m): exp} into MC coordinates."""
        acc = self.one()
        for (k, m), e in sorted(xmono):
            f = self.xjet(k, m)
            for _ in range(e):
                acc = self.mul(acc, f)
        return acc

    # -- current actions --------------------------------------------------------

    def prolonged_action(self, a, u):
        """Weight-preserving action of basis element a (homomorphism-normalized).

        Extends the invariant-field action on group coordinates to all jets,
        commuting with d.  The stored document fields carry the opposite sign
        (their value at the unit is -v); this action negates them so that
        act_a act_b - act_b act_a = sum_c f^c_ab act_c holds on the nose.
        """
        sc = self.gd.lie.struct_const

        def z_img(j, m):
            acc = {}
            for i in range(self.n):
                c = sc[a][i][j]
                if c != 0:
                    acc = self.add(acc, self.scale(self.zgen(i, m), -c))
            return acc

        return self._derive(u, lambda k: self._phi_og[a][k], z_img)

    def shifted_action(self, a, n, u):
        """delta(a, n): the weight -n component of the current action, n >= 0."""
        if n == 0:
            return self.prolonged_action(a, u)
        sc = self.gd.lie.struct_const

        def z_img(j, m):
            if n > m:
                return {}
            if n == m:
                if j == a:
                    return self.scale(self.one(), -factorial(n))
                return {}
            acc = {}
            coeff = -factorial(n) * comb(m - 1, n)
            for i in range(self.n):
                c = sc[a][i][j]
                if c != 0:
                    acc = self.add(acc, self.scale(self.zgen(i, m - n), coeff * c))
            return acc

        return self._derive(u, lambda k: {}, z_img)

    def dnf(self, p, m):
        """d^m(f)/m! for a ring element f, cached."""
        return self.dnf_pk(tuple(sorted(self.R.nf(p).items())), m)

    def dnf_pk(self, pk, m):
        key = (pk, m)
        if key not in self._dnf_cache:
            acc = {(mono, ()): c for mono, c in pk}
            for _ in range(m):
                acc = self.d(acc)
            self._dnf_cache[key] = self.scale(acc, Rat(1, factorial(m)))
        return self._dnf_cache[key]

    # -- the eta maps -------------------------------------------------------------

    def eta(self, terms):
        """eta(sum_k p_k dx_k) = sum_k p_k x_k^(1); O_G-linear with eta(df) = d f."""
        acc = {}
        for p, k in terms:
            acc = self.add(acc, self.mul(self.from_poly(p), self.x1[k]))
        return acc

    def eta_form(self, Q, v):
        """The weight-one jet of the invariant one-form pairing Q with direction v.

        Equals eta applied to sum_{i,j,k} g_{iv} Q(v_i,v_j) c_{jk} dx_k; in MC
        coordinates this collapses to sum_{i,j} g_{iv} Q(v_i,v_j) z_j.
        """
        acc = {}
        for i in range(self.n):
            for j in range(self.n):
                c = Q(i, j)
                if c == 0:
                    continue
                term = self.mul_poly(self.zgen(j), self.gd.ad[i][v])
                acc = self.add(acc, self.scale(term, c))
        return acc

    # -- block enumeration ---------------------------------------------------------

    def zmonos_of_weight(self, w):
        """All z-monomials of total weight w (multisets of towers (j, m))."""
        vars_ = [(j, m) for m in range(1, w + 1) for j in range(self.n)]
        out = []

        def rec(pos, remaining, current):
            if remaining == 0:
                out.append(tuple(sorted(current)))
                return
            if pos == len(vars_):
                return
            (j, m) = vars_[pos]
            max_e = remaining // m
            for e in range(max_e, -1, -1):
                if e:
                    current.append(((j, m), e))
                rec(pos + 1, remaining - e * m, current)
                if e:
                    current.pop()

        rec(0, w, [])
        return sorted(set(out))

    def og_monomials(self, dbound):
        cap = dbound * max(1, self.R.degree_rank)
        return self.R.nf_monomials(cap)

    def mc_basis(self, w, degree=None, dbound=None):
        """Basis keys of the (weight, degree) block, or the filtered block."""
        zs = self.zmonos_of_weight(w)
        ogs = []
        if degree is not None:
            dv = tuple(degree) if isinstance(degree, (list, tuple)) else (degree,)
            cap = max(abs(x) for x in dv) if any(dv) else 0
            for m in self.og_monomials(max(cap, 1)):
                if self.R.mono_degree(m) == dv:
                    ogs.append(m)
        else:
            for m in self.og_monomials(max(dbound, 1)):
                if all(abs(x) <= dbound for x in self.R.mono_degree(m)):
                    ogs.append(m)
        return [(og, z) for og in sorted(ogs) for z in zs]

    # -- raw-variable side: independent rank oracle ---------------------------------

    def xmonomials(self, w, dbound):
        """Raw jet monomials of weight w with degree within the bound.

        The weight-zero part ranges over rewrite-reduced ring monomials; jet
        variables x_k^(m) (m >= 1) carry the degree of x_k.
        """
        jet_vars = [(k, m) for m in range(1, w + 1) for k in range(self.R.n)]
        jet_parts = []

        def rec(pos, remaining, current):
            if remaining == 0:
                jet_parts.append(tuple(current))
                return
            if pos == len(jet_vars):
                return
            (k, m) = jet_vars[pos]
            for e in range(remaining // m, -1, -1):
                if e:
                    current.append(((k, m), e))
                rec(pos + 1, remaining - e * m, current)
                if e:
                    current.pop()

        rec(0, w, [])
        cap = (dbound + w) * max(1, self.R.degree_rank)
        out = []
        for og in self.R.nf_monomials(cap):
            og_deg = self.R.mono_degree(og)
            for jp in jet_parts:
                deg = list(og_deg)
                for (k, m), e in jp:
                    for t in range(self.R.degree_rank):
                        deg[t] += e * self.R.degrees[k][t]
                if all(abs(x) <= dbound for x in deg):
                    full = tuple(sorted(jp + tuple(((k, 0), e) for k, e in enumerate(og) if e)))
                    out.append((full, tuple(deg)))
        return out

    def jet_block_rank(self, w, degree=None, dbound=None):
        """Dimension of the jet block, computed from raw variables by exact rank."""
        if degree is not None:
            dv = tuple(degree) if isinstance(degree, (list, tuple)) else (degree,)
            bound = max((abs(x) for x in dv), default=0)
            monos = [m for m, dg in self.xmonomials(w, max(bound, 0)) if dg == dv]
        else:
            monos = [m for m, dg in self.xmonomials(w, dbound)]
        cols = []
        for xm in monos:
            img = self.xmono_to_mc(dict(xm))
            cols.append(img)
        return rank(cols)

    def leadfree_count(self, w, degree=None, dbound=None):
        """Combinatorial prediction for the jet block dimension.

        Counts raw monomials avoiding the leading patterns p * q^(m) of the
        prolonged relations, where (p, q) are the two generators of each
        quadratic rewrite rule and q is the later generator in ring order.
        """
        pairs = []
        for pat, _ in self.R.rules:
            support = [k for k, e in enumerate(pat) if e]
            if len(support) == 2 and all(pat[k] == 1 for k in support):
                pairs.append((min(support), max(support)))
        if degree is not None:
            dv = tuple(degree) if isinstance(degree, (list, tuple)) else (degree,)
            bound = max((abs(x) for x in dv), default=0)
            monos = [m for m, dg in self.xmonomials(w, max(bound, 0)) if dg == dv]
        else:
            monos = [m for m, dg in self.xmonomials(w, dbound)]
        count = 0
        for xm in monos:
            exp = dict(xm)
            ok = True
            for p, q in pairs:
                has_p = exp.get((p, 0), 0) >= 1
                has_qjet = any(k == q for (k, m), e in exp.items() if e)
                if has_p and has_qjet:
                    ok = False
                    break
            if ok:
                count += 1
        return count

    # -- raw prolongation of relations (integrity oracle) -----------------------

    def _raw_d(self, rawpoly):
        """Free prolongation on raw jet monomials: d(x_k^(m)) = x_k^(m+1)."""
        out = {}
        for xm, c in rawpoly.items():
            exp = dict(xm)
            for (k, m), e in exp.items():
                if e == 0:
                    continue
                nxt = dict(exp)
                nxt[(k, m)] = e - 1
                if nxt[(k, m)] == 0:
                    del nxt[(k, m)]
                nxt[(k, m + 1)] = nxt.get((k, m + 1), 0) + 1
                key = tuple(sorted(nxt.items()))
                nc = out.get(key, ZERO) + c * e
                if nc == 0:
                    out.pop(key, None)
                else:
                    out[key] = nc
        return out

    def raw_to_mc(self, rawpoly):
        acc = {}
        for xm, c in rawpoly.items():
            acc = self.add(acc, self.scale(self.xmono_to_mc(dict(xm)), c))
        return acc

    def prolonged_relation_residuals(self, max_weight):
        """MC images of the freely prolonged relations d^m(r); all must vanish.

        The prolongation happens on raw jet variables before any reduction, so
        a nonzero residual would mean the trivialized coordinates do not model
        the differential ideal.
        """
        out = []
        for ridx, rel in enumerate(self.gd.relations):
            raw = {
                tuple(sorted(((k, 0), e) for k, e in enumerate(m) if e)): c
                for m, c in rel.items()
            }
            for m in range(max_weight + 1):
                out.append(((ridx, m), self.raw_to_mc(raw)))
                raw = self._raw_d(raw)
        return out
