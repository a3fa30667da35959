"""The Drinfeld double (and its central quotient) as a rewriting engine.

A monomial is a triple (fword, kvec, eword): a word in F-letters, an exact
exponent vector for the Cartan letters, and a word in E-letters.  kvec has
length 2n: entries 0..n-1 are K-exponents, entries n..2n-1 are K'-exponents.
In the centrally reduced algebra the K'-exponents are folded away via
K'_i = a_i K_i^{-1} and stay identically zero.

Straightening moves every word into F-K-E order; the remaining reductions
happen inside the pure E- and F-blocks through a Knuth-Bendix completion of
the Serre relations, certified degree by degree against the PBW dimension
of each weight space.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .scalars import ONE, ZERO, Scalar, q_binom, q_fact


class UncertifiedDegreeError(RuntimeError):
    """A reduction needed words beyond the certified completion bound."""


class CompletionError(RuntimeError):
    pass


def _deglex_key(word):
    return (len(word), word)


class SerreSystem:
    """Bounded Knuth-Bendix completion of the quantum Serre relations.

    Operates on one-type words (tuples of node indices); the same rules
    serve the E-block and the F-block since the relations match letterwise.
    """

    def __init__(self, cartan, bound=12, max_rules=4000):
        self.cartan = cartan
        self.bound = 0
        self.max_rules = max_rules
        self.rules = {}
        self._reduce_cache = {}
        self._base_rules()
        self.complete(bound)

    def _base_rules(self):
        n = self.cartan.n
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                r = 1 - self.cartan.cartan[i][j]
                qi = Scalar.q_power(self.cartan.sym[i])
                rel = {}
                for s in range(r + 1):
                    word = (i,) * s + (j,) + (i,) * (r - s)
                    coeff = Scalar.from_pair((-1) ** s) * q_binom(r, s, qi)
                    rel[word] = rel.get(word, ZERO) + coeff
                self._orient_and_add(rel)

    def _orient_and_add(self, rel):
        rel = {w: c for w, c in rel.items() if not c.is_zero()}
        if not rel:
            return False
        lead = max(rel, key=_deglex_key)
        lc = rel[lead]
        rhs = {w: -(c / lc) for w, c in rel.items() if w != lead}
        if lead in self.rules:
            # keep the first orientation; fold difference back as a relation
            diff = dict(self.rules[lead])
            for w, c in rhs.items():
                diff[w] = diff.get(w, ZERO) - c
            diff = {w: c for w, c in diff.items() if not c.is_zero()}
            if diff:
                return self._orient_and_add(diff)
            return False
        self.rules[lead] = rhs
        self._reduce_cache.clear()
        if len(self.rules) > self.max_rules:
            raise CompletionError("rule ceiling exceeded; system may not terminate")
        return True

    def complete(self, bound):
        """Resolve all critical pairs of combined degree <= bound."""
        if bound <= self.bound:
            return self
        # rules are weight-homogeneous, so reductions never grow words and
        # the bound can be raised before resolving pairs
        self.bound = bound
        changed = True
        while changed:
            changed = False
            leads = sorted(self.rules, key=_deglex_key)
            for u in leads:
                for v in leads:
                    if u not in self.rules or v not in self.rules:
                        continue
                    for w in self._overlaps(u, v, bound):
                        if self._resolve(w, u, v):
                            changed = True
        return self

    @staticmethod
    def _overlaps(u, v, bound):
        out = []
        # suffix of u equals prefix of v
        for k in range(1, min(len(u), len(v))):
            if u[-k:] == v[:k]:
                w = u + v[k:]
                if len(w) <= bound:
                    out.append(w)
        # v contained in u
        if len(v) < len(u):
            for p in range(len(u) - len(v) + 1):
                if u[p:p + len(v)] == v:
                    out.append(u)
                    break
        return out

    def _resolve(self, w, u, v):
        a = self._apply_at(w, u, self._find(w, u))
        b = self._apply_at(w, v, self._find_from_right(w, v))
        ra = self.reduce_poly(a)
        rb = self.reduce_poly(b)
        diff = dict(ra)
        for word, c in rb.items():
            diff[word] = diff.get(word, ZERO) - c
        diff = {word: c for word, c in diff.items() if not c.is_zero()}
        if diff:
            return self._orient_and_add(diff)
        return False

    @staticmethod
    def _find(w, u):
        for p in range(len(w) - len(u) + 1):
            if w[p:p + len(u)] == u:
                return p
        raise AssertionError

    @staticmethod
    def _find_from_right(w, u):
        for p in range(len(w) - len(u), -1, -1):
            if w[p:p + len(u)] == u:
                return p
        raise AssertionError

    def _apply_at(self, w, lead, p):
        rhs = self.rules[lead]
        out = {}
        for body, c in rhs.items():
            word = w[:p] + body + w[p + len(lead):]
            out[word] = out.get(word, ZERO) + c
        return out

    def _find_redex(self, word):
        """Leftmost, then shortest, match of a rule lead inside word."""
        best = None
        for p in range(len(word)):
            for lead in self.rules:
                L = len(lead)
                if word[p:p + L] == lead:
                    if best is None or p < best[0] or (p == best[0] and L < len(best[1])):
                        if best is None or p <= best[0]:
                            best = (p, lead)
            if best is not None and best[0] == p:
                break
        return best

    def reduce_word(self, word):
        """Normal form of a single word, as {word: Scalar}."""
        if len(word) > self.bound:
            raise UncertifiedDegreeError(
                f"word of length {len(word)} exceeds certified bound {self.bound}")
        cached = self._reduce_cache.get(word)
        if cached is not None:
            return cached
        redex = self._find_redex(word)
        if redex is None:
            result = {word: ONE}
        else:
            p, lead = redex
            result = {}
            for w, c in self._apply_at(word, lead, p).items():
                for w2, c2 in self.reduce_word(w).items():
                    s = result.get(w2, ZERO) + c * c2
                    if s.is_zero():
                        result.pop(w2, None)
                    else:
                        result[w2] = s
        self._reduce_cache[word] = result
        return result

    def reduce_poly(self, poly):
        out = {}
        for w, c in poly.items():
            for w2, c2 in self.reduce_word(w).items():
                s = out.get(w2, ZERO) + c * c2
                if s.is_zero():
                    out.pop(w2, None)
                else:
                    out[w2] = s
        return out

    def is_irreducible(self, word):
        return self._find_redex(word) is None


class NCPoly:
    """Scalar-weighted combination of straightened monomials."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = terms

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return NCPoly(self.alg, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return NCPoly(self.alg, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        return self.alg.mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        if c.is_zero():
            return self.alg.zero()
        return NCPoly(self.alg, {m: c * v for m, v in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return (self - other).is_zero()

    def weights(self):
        return {self.alg.weight(m) for m in self.terms}

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=self.alg.mono_sort_key):
            c = self.terms[m]
            bits.append(f"({c})*{self.alg.mono_str(m)}")
        return " + ".join(bits)


class DoubleAlgebra:
    """The double (kp_fold=None) or its central quotient (kp_fold given).

    kp_fold maps node -> Scalar a_i, realizing K'_i = a_i K_i^{-1}.
    """

    def __init__(self, cartan, bound=12, kp_fold=None, serre=None):
        self.cartan = cartan
        self.n = cartan.n
        self.serre = serre if serre is not None else SerreSystem(cartan, bound)
        self.kp_fold = tuple(kp_fold) if kp_fold is not None else None
        self._kzero = (0,) * (2 * self.n)
        self._pull_cache = {}

    # -- constructors ---------------------------------------------------------

    def zero(self):
        return NCPoly(self, {})

    def one(self):
        return NCPoly(self, {((), self._kzero, ()): ONE})

    def monomial(self, fword=(), kvec=None, eword=(), coeff=ONE):
        kvec = self._kzero if kvec is None else tuple(kvec)
        if self.kp_fold is not None:
            kvec, extra = self._fold(kvec)
            coeff = coeff * extra
        if coeff.is_zero():
            return self.zero()
        return NCPoly(self, {(tuple(fword), kvec, tuple(eword)): coeff})

    def E(self, i):
        return self.monomial(eword=(i,))

    def F(self, i):
        return self.monomial(fword=(i,))

    def K(self, i, exp=1):
        k = [0] * (2 * self.n)
        k[i] = exp
        return self.monomial(kvec=k)

    def Kp(self, i, exp=1):
        k = [0] * (2 * self.n)
        k[self.n + i] = exp
        return self.monomial(kvec=k)

    def K_weight(self, mu, prime=False):
        """K_mu (or K'_mu): the Cartan monomial with exponent vector mu."""
        k = [0] * (2 * self.n)
        for i, m in enumerate(mu):
            k[self.n + i if prime else i] = m
        return self.monomial(kvec=k)

    def scalar(self, c):
        return self.one().scale(c)

    def _fold(self, kvec):
        """Eliminate K'-exponents via K'_i = a_i K_i^{-1}."""
        extra = ONE
        k = list(kvec)
        for i in range(self.n):
            b = k[self.n + i]
            if b:
                extra = extra * (self.kp_fold[i] ** b)
                k[i] -= b
                k[self.n + i] = 0
        return tuple(k), extra

    # -- gradings -------------------------------------------------------------

    def weight(self, mono):
        f, _, e = mono
        out = [0] * self.n
        for i in f:
            out[i] -= 1
        for i in e:
            out[i] += 1
        return tuple(out)

    def eweight(self, word):
        out = [0] * self.n
        for i in word:
            out[i] += 1
        return tuple(out)

    def _k_pairing(self, kvec, mu):
        """Exponent phi with K^kvec X_mu = q^phi X_mu K^kvec."""
        tot = 0
        for i in range(self.n):
            a = kvec[i] - kvec[self.n + i]
            if a:
                for j in range(self.n):
                    if mu[j]:
                        tot += a * mu[j] * self.cartan.bil(i, j)
        return tot

    # -- multiplication ---------------------------------------------------------

    def mul(self, p1, p2):
        out = {}
        for m1, c1 in p1.terms.items():
            for m2, c2 in p2.terms.items():
                self._mul_mono(m1, m2, c1 * c2, out)
        out = {m: c for m, c in out.items() if not c.is_zero()}
        return NCPoly(self, out)

    def _mul_mono(self, m1, m2, coeff, out):
        f1, k1, e1 = m1
        f2, k2, e2 = m2
        for cr, fA, kA, eA in self._cross(e1, f2):
            c = coeff * cr
            if k1 != self._kzero and fA:
                c = c * Scalar.q_power(self._k_pairing(k1, self._neg_wt(fA)))
            if k2 != self._kzero and eA:
                c = c * Scalar.q_power(-self._k_pairing(k2, self.eweight(eA)))
            kv = tuple(k1[t] + kA[t] + k2[t] for t in range(2 * self.n))
            if self.kp_fold is not None:
                kv, extra = self._fold(kv)
                c = c * extra
            fword = f1 + fA
            eword = eA + e2
            fred = self.serre.reduce_word(fword) if len(fword) > 1 else {fword: ONE}
            ered = self.serre.reduce_word(eword) if len(eword) > 1 else {eword: ONE}
            for fw, cf in fred.items():
                cf2 = c * cf
                for ew, ce in ered.items():
                    mono = (fw, kv, ew)
                    s = out.get(mono)
                    s = cf2 * ce if s is None else s + cf2 * ce
                    if s.is_zero():
                        out.pop(mono, None)
                    else:
                        out[mono] = s

    def _neg_wt(self, fword):
        out = [0] * self.n
        for i in fword:
            out[i] -= 1
        return tuple(out)

    def _cross(self, eword, fword):
        """Straighten E-word times F-word into F-K-E terms.

        Returns a list of (coeff, fword, kvec, eword).
        """
        if not eword or not fword:
            return [(ONE, fword, self._kzero, eword)]
        key = (eword, fword)
        cached = self._pull_cache.get(key)
        if cached is not None:
            return cached
        # pull the first F-letter through the whole E-word, then recurse
        j, rest = fword[0], fword[1:]
        acc = []
        for c, fpart, kv, ew in self._pull(eword, j):
            # now multiply (fpart, kv, ew) by remaining F-letters `rest`
            for c2, f2, kv2, ew2 in self._cross(ew, rest):
                if kv != self._kzero and f2:
                    c2 = c2 * Scalar.q_power(self._k_pairing(kv, self._neg_wt(f2)))
                kv3 = tuple(kv[t] + kv2[t] for t in range(2 * self.n))
                acc.append((c * c2, fpart + f2, kv3, ew2))
        self._pull_cache[key] = acc
        return acc

    def _pull(self, eword, j):
        """Move one F_j from the right of an E-word to the left.

        Returns (coeff, fpart in {(), (j,)}, kvec, eword) terms.
        """
        key = (eword, j)
        cached = self._pull_cache.get(key)
        if cached is not None:
            return cached
        if not eword:
            out = [(ONE, (j,), self._kzero, ())]
        else:
            head, i = eword[:-1], eword[-1]
            out = []
            for c, fpart, kv, ew in self._pull(head, j):
                # append E_i on the right; commute it past kv (kv is K_i or K'_i of
                # weight zero; E appended after k stays right of it, no factor)
                out.append((c, fpart, kv, ew + (i,)))
            if i == j:
                eps = self.cartan.sym[j]
                denom = Scalar.q_power(eps) - Scalar.q_power(-eps)
                mu = self.eweight(head)
                phi = self._k_pairing(self._kbasis(j, 0), mu)
                kplus = self._kbasis(j, 0)
                kminus = self._kbasis(j, 1)
                cK = Scalar.q_power(-phi) / denom
                cKp = -(Scalar.q_power(phi)) / denom
                out.append((cK, (), kplus, head))
                out.append((cKp, (), kminus, head))
        self._pull_cache[key] = out
        return out

    @lru_cache(maxsize=None)
    def _kbasis(self, i, prime):
        k = [0] * (2 * self.n)
        k[i + (self.n if prime else 0)] = 1
        return tuple(k)

    # -- derived operations ------------------------------------------------------

    def q_comm(self, x, y, t):
        """[x, y]_t = xy - t yx."""
        return self.mul(x, y) - self.mul(y, x).scale(t)

    def comm(self, x, y):
        return self.mul(x, y) - self.mul(y, x)

    def epower_divided(self, i, m):
        """Divided power of E_i."""
        qi = Scalar.q_power(self.cartan.sym[i])
        return self.monomial(eword=(i,) * m, coeff=q_fact(m, qi).inv())

    def fpower_divided(self, i, m):
        qi = Scalar.q_power(self.cartan.sym[i])
        return self.monomial(fword=(i,) * m, coeff=q_fact(m, qi).inv())

    # -- U+ bases and the dimension oracle ----------------------------------------

    def uplus_basis(self, mu):
        """All irreducible E-words of weight mu, sorted deg-lex."""
        if any(m < 0 for m in mu):
            return []
        total = sum(mu)
        if total > self.serre.bound:
            raise UncertifiedDegreeError(
                f"weight height {total} exceeds certified bound {self.serre.bound}")
        words = []

        def extend(word, remaining):
            if sum(remaining) == 0:
                words.append(word)
                return
            for i in range(self.n):
                if remaining[i]:
                    w2 = word + (i,)
                    if self._suffix_irreducible(w2):
                        rem = list(remaining)
                        rem[i] -= 1
                        extend(w2, tuple(rem))

        extend((), tuple(mu))
        return sorted(words, key=_deglex_key)

    def _suffix_irreducible(self, word):
        for lead in self.serre.rules:
            if len(lead) <= len(word) and word[-len(lead):] == lead:
                return False
        return True

    def kostant_dimension(self, mu):
        """PBW dimension of the weight space: the number of ways to write mu
        as a multiset of positive roots (independent combinatorial oracle)."""
        roots = self.cartan.positive_roots()

        @lru_cache(maxsize=None)
        def count(idx, remaining):
            if all(c == 0 for c in remaining):
                return 1
            if idx == len(roots):
                return 0
            beta = roots[idx]
            total = 0
            rem = remaining
            while all(c >= 0 for c in rem):
                total += count(idx + 1, rem)
                rem = tuple(rem[k] - beta[k] for k in range(self.n))
            return total

        return count(0, tuple(mu))

    def certify_dimensions(self, height):
        """Check |uplus_basis| against the PBW dimension through a height."""
        for mu in self._weights_up_to(height):
            got = len(self.uplus_basis(mu))
            want = self.kostant_dimension(mu)
            if got != want:
                raise CompletionError(
                    f"dimension mismatch at weight {mu}: {got} irreducible words, "
                    f"PBW dimension {want}; completion bound too low")
        return True

    def _weights_up_to(self, height):
        def rec(prefix, left, idx):
            if idx == self.n:
                yield tuple(prefix)
                return
            for c in range(left + 1):
                yield from rec(prefix + [c], left - c, idx + 1)
        for h in range(1, height + 1):
            for mu in rec([], h, 0):
                if sum(mu) == h:
                    yield mu

    # -- serialization -------------------------------------------------------------

    def letter_names(self, mono):
        f, k, e = mono
        out = [f"F{i+1}" for i in f]
        for i in range(self.n):
            if k[i]:
                out.append(f"K{i+1}" + (f"^{k[i]}" if k[i] != 1 else ""))
        for i in range(self.n):
            if k[self.n + i]:
                out.append(f"Kp{i+1}" + (f"^{k[self.n+i]}" if k[self.n+i] != 1 else ""))
        out.extend(f"E{i+1}" for i in e)
        return out

    def mono_str(self, mono):
        names = self.letter_names(mono)
        return "*".join(names) if names else "1"

    def mono_sort_key(self, mono):
        f, k, e = mono
        return (len(f), f, k, len(e), e)

    def to_json(self, poly):
        out = []
        for m in sorted(poly.terms, key=self.mono_sort_key):
            out.append({"coeff": str(poly.terms[m]), "word": self.letter_names(m)})
        return out

    def from_json(self, data):
        from .scalars import scalar_from_text
        total = self.zero()
        for entry in data:
            coeff = scalar_from_text(entry["coeff"])
            term = self.one()
            for name in entry["word"]:
                term = self.mul(term, self._letter_from_name(name))
            total = total + term.scale(coeff)
        return total

    def _letter_from_name(self, name):
        exp = 1
        if "^" in name:
            name, e = name.split("^")
            exp = int(e)
        kind = "Kp" if name.startswith("Kp") else name[0]
        idx = int(name[len(kind):]) - 1
        if kind == "E":
            return self.monomial(eword=(idx,) * exp)
        if kind == "F":
            return self.monomial(fword=(idx,) * exp)
        if kind == "K":
            return self.K(idx, exp)
        if kind == "Kp":
            return self.Kp(idx, exp)
        raise ValueError(f"bad letter: {name}")
