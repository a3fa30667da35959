"""Exact arithmetic in the field Q(i)(u), where u is a formal fourth root of q.

A Scalar is

    value = r * num(u) / prod_k factor_k(u)^mult_k

with r a positive rational, num an integer Gaussian Laurent polynomial and
the denominator kept as a multiset of interned irreducible-enough factors.
Arithmetic is lazy: no polynomial gcd runs during add/mul; denominators
merge by multiset union (lcm on addition) and cancellation happens only in
`canonical()`, which computes the unique reduced fraction used for display,
hashing, equality of printed forms and the q-integrality predicates.

Zero detection is exact and cheap (the numerator is a genuine expanded
polynomial), so semantic equality is decided by subtraction.  The bar
operation is the field automorphism u |-> u^-1 and i |-> -i; it restricts
to q |-> q^-1 on the q-lattice (u-exponents divisible by 4).

Polynomials are frozen tuples of (exponent, re, im) with integer re, im.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


# ---------------------------------------------------------------------------
# integer Gaussian polynomial helpers ({exp: (a, b)} dicts, frozen as tuples)

def _freeze(p):
    return tuple(sorted((e, c[0], c[1]) for e, c in p.items()))


def _thaw(t):
    return {e: (a, b) for e, a, b in t}


def _padd(p, q):
    r = dict(p)
    for e, (a, b) in q.items():
        if e in r:
            a0, b0 = r[e]
            a0 += a
            b0 += b
            if a0 or b0:
                r[e] = (a0, b0)
            else:
                del r[e]
        else:
            r[e] = (a, b)
    return r


def _pmul(p, q):
    r = {}
    for e1, (a1, b1) in p.items():
        for e2, (a2, b2) in q.items():
            e = e1 + e2
            a = a1 * a2 - b1 * b2
            b = a1 * b2 + a2 * b1
            if e in r:
                a0, b0 = r[e]
                a += a0
                b += b0
                if a or b:
                    r[e] = (a, b)
                else:
                    del r[e]
            elif a or b:
                r[e] = (a, b)
    return r


def _pscale_int(p, a, b):
    if not (a or b):
        return {}
    if b == 0:
        return {e: (x * a, y * a) for e, (x, y) in p.items()}
    return {e: (x * a - y * b, x * b + y * a) for e, (x, y) in p.items()}


def _content(p):
    g = 0
    for a, b in p.values():
        g = gcd(g, a)
        g = gcd(g, b)
        if g == 1:
            return 1
    return g or 1


def _unit_for_lp(c):
    """Power of i that rotates the coefficient into the first quadrant."""
    a, b = c
    if a > 0 and b >= 0:
        return 0
    if b > 0 and a <= 0:
        return 3  # multiply by -i
    if a < 0 and b <= 0:
        return 2
    return 1


_UNIT = ((1, 0), (0, 1), (-1, 0), (0, -1))


def _apply_unit(p, t):
    if t == 0:
        return dict(p)
    a, b = _UNIT[t]
    return _pscale_int(p, a, b)


def _lead(p):
    return p[max(p)]


def _prem(a, b):
    """Pseudo-remainder of integer Gaussian polynomials (deg a >= deg b)."""
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        r2 = _pscale_int(r, lb[0], lb[1])
        for e, (x, y) in b.items():
            ee = e + dr - db
            a2 = x * lr[0] - y * lr[1]
            b2 = x * lr[1] + y * lr[0]
            if ee in r2:
                x0, y0 = r2[ee]
                x0 -= a2
                y0 -= b2
                if x0 or y0:
                    r2[ee] = (x0, y0)
                else:
                    del r2[ee]
            elif a2 or b2:
                r2[ee] = (-a2, -b2)
        r = r2
        c = _content(r)
        if c > 1:
            r = {e: (x // c, y // c) for e, (x, y) in r.items()}
    return r


def _pgcd(a, b):
    """Primitive gcd of integer Gaussian polynomials (ordinary exponents)."""
    a = dict(a)
    b = dict(b)
    while b:
        if not a or (b and max(b) > max(a)):
            a, b = b, a
            continue
        r = _prem(a, b)
        a, b = b, r
    if not a:
        return {0: (1, 0)}
    c = _content(a)
    if c > 1:
        a = {e: (x // c, y // c) for e, (x, y) in a.items()}
    return _apply_unit(a, _unit_for_lp(_lead(a)))


def _pdiv_exact(a, b):
    """Exact division of integer Gaussian polys (b | a in Q(i)[u]).

    Returns (out, c) with a/b == out/c, out integer Gaussian and c a
    positive integer, via all-integer pseudo-division.
    """
    db = max(b)
    lb = b[db]
    r = dict(a)
    q = {}
    sa, sb = 1, 0
    while r:
        dr = max(r)
        if dr < db:
            raise ArithmeticError("inexact polynomial division")
        lr = r[dr]
        if q:
            q = _pscale_int(q, lb[0], lb[1])
        e0 = dr - db
        if e0 in q:
            x0, y0 = q[e0]
            q[e0] = (x0 + lr[0], y0 + lr[1])
        else:
            q[e0] = lr
        r = _pscale_int(r, lb[0], lb[1])
        for e, (x, y) in b.items():
            ee = e + e0
            a2 = x * lr[0] - y * lr[1]
            b2 = x * lr[1] + y * lr[0]
            if ee in r:
                x0, y0 = r[ee]
                x0 -= a2
                y0 -= b2
                if x0 or y0:
                    r[ee] = (x0, y0)
                else:
                    del r[ee]
            elif a2 or b2:
                r[ee] = (-a2, -b2)
        sa, sb = sa * lb[0] - sb * lb[1], sa * lb[1] + sb * lb[0]
    nrm = sa * sa + sb * sb
    if (sa, sb) != (1, 0):
        q = _pscale_int(q, sa, -sb)
    c = _content(q)
    g = gcd(c, nrm)
    if g > 1:
        q = {e: (x // g, y // g) for e, (x, y) in q.items()}
        nrm //= g
    return q, nrm


_P = (1 << 31) - 1  # prime, 3 mod 4, so Z[i]/P is the field F_{P^2}


def _probe_coprime(a, b):
    """True when a, b are certainly coprime in Q(i)[u] (mod-P Euclid)."""
    fa = _modpoly(a)
    fb = _modpoly(b)
    if fa is None or fb is None:
        return False
    while fb:
        if len(fb) > len(fa):
            fa, fb = fb, fa
            continue
        fa, fb = fb, _modrem(fa, fb)
    return len(fa) == 1


def _modpoly(p):
    d = max(p)
    out = [(0, 0)] * (d + 1)
    for e, (x, y) in p.items():
        out[e] = (x % _P, y % _P)
    if out[-1] == (0, 0):
        return None
    return out


def _cinv_mod(c):
    x, y = c
    n = (x * x + y * y) % _P
    ninv = pow(n, _P - 2, _P)
    return (x * ninv % _P, (-y) * ninv % _P)


def _modrem(a, b):
    a = list(a)
    db = len(b) - 1
    lbinv = _cinv_mod(b[-1])
    while len(a) - 1 >= db:
        la = a[-1]
        if la != (0, 0):
            cx = (la[0] * lbinv[0] - la[1] * lbinv[1]) % _P
            cy = (la[0] * lbinv[1] + la[1] * lbinv[0]) % _P
            off = len(a) - 1 - db
            for k in range(db + 1):
                bx, by = b[k]
                if bx or by:
                    ax, ay = a[off + k]
                    a[off + k] = ((ax - (cx * bx - cy * by)) % _P,
                                  (ay - (cx * by + cy * bx)) % _P)
        a.pop()
    while a and a[-1] == (0, 0):
        a.pop()
    return a


def _stride_of(p, s0=0):
    s = s0
    for e in p:
        s = gcd(s, e)
        if s == 1:
            return 1
    return s


# ---------------------------------------------------------------------------
# interned denominator factors

_FACTORS = []          # fid -> frozen poly (primitive, LP, min-exp 0)
_FACTOR_IDS = {}       # frozen poly -> fid
_FACTOR_BAR = {}       # fid -> (fid', exp shift, unit)
_DEN_EXPAND = {}       # den tuple -> expanded poly dict


def _intern_factor(frozen):
    fid = _FACTOR_IDS.get(frozen)
    if fid is None:
        fid = len(_FACTORS)
        _FACTORS.append(frozen)
        _FACTOR_IDS[frozen] = fid
    return fid


def _factor_of_poly(p):
    """Normalize dict poly to (fid, content, expshift, unit) with
    p == content * u^expshift * i^(-unit) * factor[fid]."""
    v = min(p)
    q = {e - v: c for e, c in p.items()} if v else dict(p)
    c = _content(q)
    if c > 1:
        q = {e: (x // c, y // c) for e, (x, y) in q.items()}
    t = _unit_for_lp(_lead(q))
    if t:
        q = _apply_unit(q, t)
    return _intern_factor(_freeze(q)), c, v, t


def _den_expand(den):
    """Expanded polynomial of a denominator multiset."""
    if not den:
        return {0: (1, 0)}
    hit = _DEN_EXPAND.get(den)
    if hit is not None:
        return hit
    out = {0: (1, 0)}
    for fid, m in den:
        f = _thaw(_FACTORS[fid])
        for _ in range(m):
            out = _pmul(out, f)
    if len(_DEN_EXPAND) < 40_000:
        _DEN_EXPAND[den] = out
    return out


def _den_mul(d1, d2):
    if not d1:
        return d2
    if not d2:
        return d1
    out = dict(d1)
    for fid, m in d2:
        out[fid] = out.get(fid, 0) + m
    return tuple(sorted(out.items()))


def _den_lcm(d1, d2):
    """(lcm, missing-from-1, missing-from-2) as factor multisets."""
    m1 = dict(d1)
    m2 = dict(d2)
    lcm = {}
    for fid in set(m1) | set(m2):
        lcm[fid] = max(m1.get(fid, 0), m2.get(fid, 0))
    miss1 = tuple(sorted((f, m - m1.get(f, 0)) for f, m in lcm.items()
                         if m - m1.get(f, 0) > 0))
    miss2 = tuple(sorted((f, m - m2.get(f, 0)) for f, m in lcm.items()
                         if m - m2.get(f, 0) > 0))
    return tuple(sorted(lcm.items())), miss1, miss2


_ADD_CACHE = {}
_MUL_CACHE = {}
_CACHE_LIMIT = 600_000


class Scalar:
    """Element of Q(i)(u) with lazy factored denominator.

    Structural hashing only: two Scalars may be semantically equal with
    different representations; == is semantic (subtraction test).  Do not
    use Scalars as dict keys for value-identity.
    """

    __slots__ = ("r", "num", "den", "_canon", "_hash")

    def __init__(self, r, num, den):
        self.r = r
        self.num = num
        self.den = den
        self._canon = None
        self._hash = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def _mk(r, numdict, den):
        if not numdict or not r:
            return ZERO
        c = _content(numdict)
        if c > 1:
            numdict = {e: (a // c, b // c) for e, (a, b) in numdict.items()}
            r = r * c
        return Scalar(r, _freeze(numdict), den)

    @staticmethod
    def from_pair(re, im=0):
        re = Fraction(re)
        im = Fraction(im)
        if not (re or im):
            return ZERO
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        return Scalar._mk(Fraction(1, d), {0: (int(re * d), int(im * d))}, ())

    @staticmethod
    def u_power(k, coeff=1):
        c = Fraction(coeff)
        if not c:
            return ZERO
        sign = 1
        if c < 0:
            c = -c
            sign = -1
        return Scalar._mk(c, {k: (sign, 0)}, ())

    @staticmethod
    def q_power(k):
        """q^k for integer or Fraction k with 4k integral."""
        e = Fraction(k) * 4
        if e.denominator != 1:
            raise ValueError(f"q^{k} is not in the u-lattice")
        return Scalar.u_power(int(e))

    # -- canonical form -------------------------------------------------------

    def canonical(self):
        """The unique reduced form (r, unit, num, den) with r > 0 rational,
        num/den primitive coprime integer Gaussian polys, den min-exp 0 with
        leading coefficient in the first quadrant."""
        if self._canon is not None:
            return self._canon
        if not self.num:
            self._canon = (Fraction(0), 0, (), ((0, 1, 0),))
            return self._canon
        num = _thaw(self.num)
        den = _den_expand(self.den)
        fac = self.r
        vn = min(num)
        vd = min(den)
        shift = vn - vd
        if vn or vd:
            num = {e - vn: c for e, c in num.items()}
            den = {e - vd: c for e, c in den.items()}
        cn = _content(num)
        cd = _content(den)
        if cn > 1:
            num = {e: (a // cn, b // cn) for e, (a, b) in num.items()}
        if cd > 1:
            den = {e: (a // cd, b // cd) for e, (a, b) in den.items()}
        fac = fac * Fraction(cn, cd)
        if len(den) > 1 and len(num) > 1:
            s = _stride_of(num, _stride_of(den))
            if s > 1:
                num = {e // s: c for e, c in num.items()}
                den = {e // s: c for e, c in den.items()}
            if not _probe_coprime(num, den):
                g = _pgcd(num, den)
                if len(g) > 1:
                    num, c1 = _pdiv_exact(num, g)
                    den, c2 = _pdiv_exact(den, g)
                    fac = fac * Fraction(c2, c1)
                    cn = _content(num)
                    cd = _content(den)
                    if cn > 1:
                        num = {e: (a // cn, b // cn) for e, (a, b) in num.items()}
                    if cd > 1:
                        den = {e: (a // cd, b // cd) for e, (a, b) in den.items()}
                    fac = fac * Fraction(cn, cd)
            if s > 1:
                num = {e * s: c for e, c in num.items()}
                den = {e * s: c for e, c in den.items()}
        if len(den) == 1 and den != {0: (1, 0)}:
            (da, db), = den.values()
            nd = da * da + db * db
            num = {e: (a * da + b * db, b * da - a * db)
                   for e, (a, b) in num.items()}
            fac = fac / nd
            den = {0: (1, 0)}
            cn = _content(num)
            if cn > 1:
                num = {e: (a // cn, b // cn) for e, (a, b) in num.items()}
                fac = fac * cn
        t = 0
        un = _unit_for_lp(_lead(num))
        if un:
            num = _apply_unit(num, un)
            t = (t - un) % 4
        ud = _unit_for_lp(_lead(den))
        if ud:
            den = _apply_unit(den, ud)
            t = (t + ud) % 4
        if fac < 0:
            fac = -fac
            t = (t + 2) % 4
        if shift:
            num = {e + shift: c for e, c in num.items()}
        self._canon = (fac, t, _freeze(num), _freeze(den))
        return self._canon

    # -- predicates -------------------------------------------------------------

    def is_zero(self):
        return not self.num

    def is_monomial(self):
        if not self.den:
            return len(self.num) == 1
        r, t, num, den = self.canonical()
        return len(num) == 1 and den == ((0, 1, 0),)

    def monomial_parts(self):
        """Return ((re, im), exponent) for a monomial scalar."""
        r, t, num, den = self.canonical()
        if len(num) != 1 or den != ((0, 1, 0),):
            raise ValueError(f"not a monomial: {self}")
        e, a, b = num[0]
        ua, ub = _UNIT[t]
        return ((r * (a * ua - b * ub), r * (a * ub + b * ua)), e)

    def u_exponents(self):
        _, _, num, den = self.canonical()
        return [e for e, _, _ in num] + [e for e, _, _ in den]

    def is_q_integral(self):
        """True when the value lies in Z[q, q^-1]."""
        r, t, num, den = self.canonical()
        if den != ((0, 1, 0),) or t % 2 != 0:
            return False
        if any(e % 4 for e, _, _ in num) or any(b for _, _, b in num):
            return False
        return r.denominator == 1

    def is_q_rational(self):
        """True when the value lies in Q(q)."""
        r, t, num, den = self.canonical()
        if t % 2 != 0:
            return False
        if any(e % 4 for e, _, _ in num) or any(e % 4 for e, _, _ in den):
            return False
        return not (any(b for _, _, b in num) or any(b for _, _, b in den))

    # -- arithmetic ----------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        key = (self.r, self.num, self.den, other.r, other.num, other.den)
        hit = _ADD_CACHE.get(key)
        if hit is not None:
            return hit
        p1, q1 = self.r.numerator, self.r.denominator
        p2, q2 = other.r.numerator, other.r.denominator
        if self.den == other.den:
            num = _padd(_pscale_int(_thaw(self.num), p1 * q2, 0),
                        _pscale_int(_thaw(other.num), p2 * q1, 0))
            out = Scalar._mk(Fraction(1, q1 * q2), num, self.den)
        else:
            lcm, miss1, miss2 = _den_lcm(self.den, other.den)
            n1 = _thaw(self.num)
            n2 = _thaw(other.num)
            if miss1:
                n1 = _pmul(n1, _den_expand(miss1))
            if miss2:
                n2 = _pmul(n2, _den_expand(miss2))
            num = _padd(_pscale_int(n1, p1 * q2, 0), _pscale_int(n2, p2 * q1, 0))
            out = Scalar._mk(Fraction(1, q1 * q2), num, lcm)
        if len(_ADD_CACHE) < _CACHE_LIMIT:
            _ADD_CACHE[key] = out
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        if not self.num:
            return self
        return Scalar(self.r, tuple((e, -a, -b) for e, a, b in self.num), self.den)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if self.num == _ONEP and not self.den:
            if self.r == 1:
                return other
            return Scalar(self.r * other.r, other.num, other.den)
        if other.num == _ONEP and not other.den:
            if other.r == 1:
                return self
            return Scalar(self.r * other.r, self.num, self.den)
        key = (self.r, self.num, self.den, other.r, other.num, other.den)
        hit = _MUL_CACHE.get(key)
        if hit is not None:
            return hit
        num = _pmul(_thaw(self.num), _thaw(other.num))
        out = Scalar._mk(self.r * other.r, num, _den_mul(self.den, other.den))
        if len(_MUL_CACHE) < _CACHE_LIMIT:
            _MUL_CACHE[key] = out
        return out

    def inv(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero scalar")
        r, t, num, den = self.canonical()
        # 1/(r i^t num/den) = (1/r) i^{-t} den/num
        dend = _thaw(den)
        newnum = _apply_unit(dend, (-t) % 4)
        if len(num) == 1:
            e, a, b = num[0]
            nd = a * a + b * b
            newnum = _pmul(newnum, {-e: (a, -b)})
            return Scalar._mk(1 / (r * nd), newnum, ())
        fid, c, v, ut = _factor_of_poly(_thaw(num))
        # num = c * u^v * i^{-ut} * F  =>  1/num = (1/c) u^{-v} i^{ut} / F
        newnum = _pmul(newnum, {-v: _UNIT[ut]})
        return Scalar._mk(1 / (r * c), newnum, ((fid, 1),))

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, n):
        if n == 0:
            return ONE
        base = self if n > 0 else self.inv()
        n = abs(n)
        r = ONE
        while True:
            if n & 1:
                r = r * base
            n >>= 1
            if not n:
                return r
            base = base * base

    def bar(self):
        """Field automorphism u |-> u^-1, i |-> -i."""
        if not self.num:
            return self
        num = {-e: (a, -b) for e, a, b in self.num}
        den = ()
        for fid, m in self.den:
            bfid, shift, ut = _factor_bar(fid)
            # bar(1/f^m) = u^{-shift*m} i^{ut*m} / fbar^m
            num = _pmul(num, {-shift * m: _UNIT[(ut * m) % 4]})
            den = _den_mul(den, ((bfid, m),))
        return Scalar._mk(self.r, num, den)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.r == other.r and self.num == other.num and self.den == other.den:
            return True
        return (self - other).is_zero()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.canonical())
        return self._hash

    # -- rendering ------------------------------------------------------------------

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self.num:
            return "0"
        r, t, num, den = self.canonical()
        ua, ub = _UNIT[t]
        ns = _poly_str([(e, r * (a * ua - b * ub), r * (a * ub + b * ua))
                        for e, a, b in num])
        if den == ((0, 1, 0),):
            return ns
        ds = _poly_str([(e, Fraction(a), Fraction(b)) for e, a, b in den])
        if len(num) > 1:
            ns = f"({ns})"
        if len(den) > 1:
            ds = f"({ds})"
        return f"{ns} / {ds}"


def _factor_bar(fid):
    hit = _FACTOR_BAR.get(fid)
    if hit is not None:
        return hit
    f = _FACTORS[fid]
    barred = {-e: (a, -b) for e, a, b in f}
    bfid, c, v, ut = _factor_of_poly(barred)
    assert c == 1, "factors are primitive so bars stay primitive"
    # bar(f) = u^v * i^{-ut} * F'
    _FACTOR_BAR[fid] = (bfid, v, ut)
    return _FACTOR_BAR[fid]


def _coeff_str(c, lone):
    re, im = c
    if im == 0:
        s = str(re)
    elif re == 0:
        s = "i" if im == 1 else ("-i" if im == -1 else f"{im}i")
    else:
        s = f"({re}{'+' if im > 0 else '-'}{abs(im)}i)"
    if lone:
        return s
    if s == "1":
        return ""
    if s == "-1":
        return "-"
    return s + "*"


def _exp_str(e):
    if e % 4 == 0:
        k = e // 4
        return "q" if k == 1 else f"q^{k}"
    return f"q^({e}/4)"


def _poly_str(entries):
    terms = []
    for e, re, im in sorted(entries, reverse=True):
        if e == 0:
            terms.append(_coeff_str((re, im), lone=True))
        else:
            terms.append(_coeff_str((re, im), lone=False) + _exp_str(e))
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


_ONEP = ((0, 1, 0),)

ZERO = Scalar(Fraction(0), (), ())
ONE = Scalar(Fraction(1), _ONEP, ())
I_UNIT = Scalar(Fraction(1), ((0, 0, 1),), ())
U = Scalar.u_power(1)
Q = Scalar.u_power(4)
QINV = Scalar.u_power(-4)


def from_int(n):
    return Scalar.from_pair(n)


_QINT_CACHE = {}


def q_int(n, t=Q):
    """The balanced integer (t^n - t^-n)/(t - t^-1)."""
    if n < 0:
        return -q_int(-n, t)
    key = (n, t.r, t.num, t.den)
    hit = _QINT_CACHE.get(key)
    if hit is None:
        hit = ZERO
        for k in range(n):
            hit = hit + t ** (n - 1 - 2 * k)
        _QINT_CACHE[key] = hit
    return hit


def q_fact(n, t=Q):
    if n < 0:
        raise ValueError("factorial of a negative integer")
    r = ONE
    for k in range(2, n + 1):
        r = r * q_int(k, t)
    return r


def q_binom(m, r, t=Q):
    if r < 0:
        raise ValueError("binomial with negative lower index")
    num = ONE
    for k in range(r):
        num = num * q_int(m - k, t)
    return num / q_fact(r, t)


def sqrt_monomial(s):
    """Square root of a monomial scalar +-u^k: defined for sign +-1, k even.

    sqrt(u^k) = u^(k/2) and sqrt(-u^k) = i*u^(k/2); any other sign part (or
    odd k) is rejected, which suffices for every catalog parameter.
    """
    (re, im), e = s.monomial_parts()
    if e % 2 != 0:
        raise ValueError(f"square root of {s}: odd u-exponent")
    if im != 0 or re * re != 1:
        raise ValueError(f"square root of {s}: sign part must be +-1")
    root = Scalar.u_power(e // 2)
    return root if re == 1 else I_UNIT * root


# ---------------------------------------------------------------------------
# Textual serialization: round-trippable rendering of a Scalar.

def scalar_to_text(s):
    return str(s)


def scalar_from_text(text):
    """Parse the output of scalar_to_text back into a Scalar."""
    text = text.strip()
    if text == "0":
        return ZERO
    parts = _split_fraction(text)
    if parts is not None:
        n, d = parts
        return _parse_poly(n) / _parse_poly(d)
    return _parse_poly(text)


def _split_fraction(text):
    depth = 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            return text[:k].strip(), text[k + 1:].strip()
    return None


def _strip_parens(t):
    t = t.strip()
    while t.startswith("(") and t.endswith(")"):
        depth = 0
        ok = True
        for k, ch in enumerate(t):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0 and k != len(t) - 1:
                    ok = False
                    break
        if not ok:
            break
        t = t[1:-1].strip()
    return t


def _parse_poly(text):
    text = _strip_parens(text)
    terms = []
    cur = ""
    depth = 0
    sign = 1
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur.strip() and \
                not cur.rstrip().endswith(("*", "^", "(")):
            terms.append((sign, cur.strip()))
            sign = 1 if ch == "+" else -1
            cur = ""
        else:
            cur += ch
    terms.append((sign, cur.strip()))
    total = ZERO
    for sg, term in terms:
        total = total + Scalar.from_pair(sg) * _parse_term(term)
    return total


def _parse_term(term):
    term = term.strip()
    if term.startswith("-"):
        return -_parse_term(term[1:])
    if "*" in term:
        c, p = term.split("*", 1)
        return _parse_coeff(c) * _parse_term(p)
    if term.startswith("q"):
        rest = term[1:]
        if not rest:
            return Q
        assert rest.startswith("^")
        rest = _strip_parens(rest[1:])
        if "/" in rest:
            a, b = rest.split("/")
            return Scalar.u_power(int(a) * 4 // int(b))
        return Scalar.q_power(int(rest))
    return _parse_coeff(term)


def _parse_coeff(c):
    c = _strip_parens(c.strip())
    if c == "i":
        return I_UNIT
    if c == "-i":
        return -I_UNIT
    if c.endswith("i"):
        body = c[:-1]
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-":
                re = Fraction(body[:k])
                imtxt = body[k:]
                im = Fraction(imtxt) if imtxt not in ("+", "-") else Fraction(imtxt + "1")
                return Scalar.from_pair(re, im)
        return Scalar.from_pair(0, Fraction(body) if body else 1)
    return Scalar.from_pair(Fraction(c))
