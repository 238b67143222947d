"""Coordinate rings presented by generators and a confluent rewrite system.

Polynomials are dicts mapping exponent tuples to Fractions.  A ring carries a
small list of rewrite rules (monomial pattern -> replacement polynomial); the
normal form repeatedly replaces any divisible monomial.  The shipped group
rings (tori, SL2, the Borel) come with complete rewriting systems, and the
test suite checks idempotence and the ring-morphism property of nf on random
products, which is the working certificate of confluence.

Degrees are vectors (a torus factor gets its own component), so that graded
blocks stay finite even when single variables carry negative degree.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import product as _iproduct

try:  # gmpy2 rationals are an order of magnitude faster than fractions
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Rat = Fraction

ZERO = 0
ONE = 1

_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(\+)|(-))")


def ratnorm(c):
    """Collapse integral rationals to plain ints (much faster arithmetic)."""
    if isinstance(c, int):
        return c
    if c.denominator == 1:
        return int(c)
    return c


def to_rat(x):
    """Coerce ints, strings, Fractions or rationals into the scalar type."""
    if isinstance(x, int):
        return x
    return ratnorm(Rat(x))


def mono_mul(m1, m2):
    return tuple(a + b for a, b in zip(m1, m2))


def mono_divisible(m, pat):
    return all(a >= b for a, b in zip(m, pat))


def mono_quotient(m, pat):
    return tuple(a - b for a, b in zip(m, pat))


class PolyRing:
    def __init__(self, names, degrees=None, graded=True, degree_rank=1):
        self.names = list(names)
        self.n = len(self.names)
        self.index = {nm: i for i, nm in enumerate(self.names)}
        self.degree_rank = degree_rank
        if degrees is None:
            degrees = [1] * self.n
        self.degrees = []
        for d in degrees:
            if isinstance(d, (list, tuple)):
                self.degrees.append(tuple(int(x) for x in d))
            else:
                vec = [0] * degree_rank
                vec[0] = int(d)
                self.degrees.append(tuple(vec))
        for d in self.degrees:
            if len(d) != degree_rank:
                raise ValueError("degree vector length mismatch")
        self.graded = graded
        self.rules = []  # (pattern Mono, replacement Poly)

    # -- construction -----------------------------------------------------

    def add_rule(self, pattern, replacement):
        self.rules.append((pattern, dict(replacement)))

    def zero(self):
        return {}

    def one(self):
        return {(0,) * self.n: ONE}

    def const(self, c):
        c = to_rat(c)
        return {} if c == 0 else {(0,) * self.n: c}

    def gen(self, name):
        e = [0] * self.n
        e[self.index[name]] = 1
        return {tuple(e): ONE}

    # -- arithmetic --------------------------------------------------------

    def add(self, p, q):
        out = dict(p)
        for m, c in q.items():
            nc = out.get(m, ZERO) + c
            if nc == 0:
                out.pop(m, None)
            else:
                out[m] = nc
        return out

    def scale(self, p, c):
        if not isinstance(c, int):
            c = to_rat(c)
        if c == 0:
            return {}
        return {m: v * c for m, v in p.items()}

    def sub(self, p, q):
        return self.add(p, self.scale(q, -1))

    def mul(self, p, q, normalize=True):
        out = {}
        for m1, c1 in p.items():
            for m2, c2 in q.items():
                m = mono_mul(m1, m2)
                nc = out.get(m, ZERO) + c1 * c2
                if nc == 0:
                    out.pop(m, None)
                else:
                    out[m] = nc
        return self.nf(out) if normalize else out

    def equal(self, p, q):
        return self.nf(self.sub(p, q)) == {}

    # -- normal form --------------------------------------------------------

    def nf(self, p):
        """Reduce every monomial by the rewrite rules until none applies."""
        if not self.rules:
            return dict(p)
        work = dict(p)
        guard = 0
        while True:
            target = None
            for m in sorted(work.keys(), reverse=True):
                for pat, rep in self.rules:
                    if mono_divisible(m, pat):
                        target = (m, pat, rep)
                        break
                if target:
                    break
            if target is None:
                return work
            m, pat, rep = target
            c = work.pop(m)
            q = mono_quotient(m, pat)
            for rm, rc in rep.items():
                nm = mono_mul(q, rm)
                nc = work.get(nm, ZERO) + c * rc
                if nc == 0:
                    work.pop(nm, None)
                else:
                    work[nm] = nc
            guard += 1
            if guard > 100000:
                raise RuntimeError("rewrite system does not terminate on input")

    def is_nf_mono(self, m):
        return not any(mono_divisible(m, pat) for pat, _ in self.rules)

    # -- degrees -------------------------------------------------------------

    def mono_degree(self, m):
        vec = [0] * self.degree_rank
        for i, e in enumerate(m):
            if e:
                for j in range(self.degree_rank):
                    vec[j] += e * self.degrees[i][j]
        return tuple(vec)

    def poly_degree_bounded(self, p, bound):
        """True if every monomial degree lies within |d_j| <= bound componentwise."""
        return all(
            all(abs(x) <= bound for x in self.mono_degree(m)) for m in p.keys()
        )

    # -- calculus -------------------------------------------------------------

    def derive(self, p, images):
        """Extend x_k -> images[k] as a derivation; result is nf-reduced."""
        out = {}
        for m, c in p.items():
            for k, e in enumerate(m):
                if e == 0:
                    continue
                img = images[k]
                if not img:
                    continue
                lowered = list(m)
                lowered[k] -= 1
                base = tuple(lowered)
                for im, ic in img.items():
                    nm = mono_mul(base, im)
                    nc = out.get(nm, ZERO) + c * e * ic
                    if nc == 0:
                        out.pop(nm, None)
                    else:
                        out[nm] = nc
        return self.nf(out)

    def partial(self, p, k):
        """Formal partial derivative with respect to the k-th generator."""
        images = [self.one() if i == k else self.zero() for i in range(self.n)]
        return self.derive(p, images)

    def evaluate(self, p, point):
        """Evaluate at a point given as {generator name: Fraction}."""
        vals = [to_rat(point[nm]) for nm in self.names]
        total = ZERO
        for m, c in p.items():
            term = c
            for k, e in enumerate(m):
                if e:
                    term *= vals[k] ** e
            total += term
        return total

    # -- enumeration -----------------------------------------------------------

    def nf_monomials(self, expsum_cap):
        """All rewrite-reduced monomials with total exponent sum <= cap."""
        out = []

        def rec(pos, remaining, current):
            if pos == self.n:
                m = tuple(current)
                if self.is_nf_mono(m):
                    out.append(m)
                return
            for e in range(remaining + 1):
                current.append(e)
                rec(pos + 1, remaining - e, current)
                current.pop()

        rec(0, expsum_cap, [])
        return out

    def nf_monomials_of_degree(self, degree, expsum_cap):
        dv = tuple(degree) if isinstance(degree, (list, tuple)) else (degree,)
        return [m for m in self.nf_monomials(expsum_cap) if self.mono_degree(m) == dv]

    # -- io ----------------------------------------------------------------------

    def parse(self, text):
        """Parse '2*a*b - 1/3*c^2 + 1' into a polynomial (nf applied)."""
        if isinstance(text, (int, Fraction)):
            return self.const(text)
        pos = 0
        out = {}
        sign = 1
        expect_term = True
        cur_coef = None
        cur_mono = None

        def flush():
            nonlocal cur_coef, cur_mono, sign, out
            if cur_mono is None and cur_coef is None:
                return
            c = sign * (cur_coef if cur_coef is not None else ONE)
            m = cur_mono if cur_mono is not None else (0,) * self.n
            nc = out.get(m, ZERO) + c
            if nc == 0:
                out.pop(m, None)
            else:
                out[m] = nc
            cur_coef = None
            cur_mono = None
            sign = 1

        pending_pow = False
        last_var = None
        while pos < len(text):
            match = _TOKEN.match(text, pos)
            if not match or match.end() == pos:
                if text[pos:].strip() == "":
                    break
                raise ValueError(f"cannot parse polynomial at: {text[pos:]!r}")
            pos = match.end()
            num, name, caret, star, plus, minus = match.groups()
            if num is not None:
                if pending_pow:
                    e = int(num)
                    i = self.index[last_var]
                    mono = list(cur_mono)
                    mono[i] += e - 1
                    cur_mono = tuple(mono)
                    pending_pow = False
                else:
                    val = to_rat(Rat(num))
                    cur_coef = val if cur_coef is None else cur_coef * val
                expect_term = False
            elif name is not None:
                if name not in self.index:
                    raise ValueError(f"unknown generator {name!r}")
                i = self.index[name]
                if cur_mono is None:
                    cur_mono = (0,) * self.n
                mono = list(cur_mono)
                mono[i] += 1
                cur_mono = tuple(mono)
                last_var = name
                expect_term = False
            elif caret is not None:
                pending_pow = True
            elif star is not None:
                pass
            elif plus is not None:
                flush()
                expect_term = True
            elif minus is not None:
                if expect_term or (cur_coef is None and cur_mono is None):
                    sign *= -1
                else:
                    flush()
                    sign = -1
                expect_term = True
        flush()
        return self.nf(out)

    def tostr(self, p):
        if not p:
            return "0"
        parts = []
        for m in sorted(p.keys(), reverse=True):
            c = p[m]
            factors = []
            for k, e in enumerate(m):
                if e == 1:
                    factors.append(self.names[k])
                elif e > 1:
                    factors.append(f"{self.names[k]}^{e}")
            body = "*".join(factors)
            if not body:
                term = str(c)
            elif c == 1:
                term = body
            elif c == -1:
                term = f"-{body}"
            else:
                term = f"{c}*{body}"
            parts.append(term)
        s = " + ".join(parts)
        return s.replace("+ -", "- ")
