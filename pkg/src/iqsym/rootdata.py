"""Finite-type Cartan data, Weyl group combinatorics and Satake diagrams.

Node indices are 0-based throughout.  Weights are integer (or Fraction)
tuples in the simple-root basis.  Weyl group elements are stored as the
tuple of images of the simple roots; words are tuples of node indices and
denote s_{i1} ... s_{ir} acting left to right on the far right, i.e. the
word (i, j) acts on a weight by s_i(s_j(mu)).
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from .scalars import ONE, Scalar, sqrt_monomial


class CartanDatum:
    """Cartan matrix with a fixed symmetrizer."""

    def __init__(self, cartan, sym):
        self.cartan = tuple(tuple(row) for row in cartan)
        self.sym = tuple(sym)
        self.n = len(self.sym)
        self._check()

    def _check(self):
        C = self.cartan
        n = self.n
        assert all(len(row) == n for row in C)
        assert all(C[i][i] == 2 for i in range(n))
        for i in range(n):
            for j in range(n):
                assert self.sym[i] * C[i][j] == self.sym[j] * C[j][i], \
                    "symmetrizer does not symmetrize the Cartan matrix"
                if i != j:
                    assert C[i][j] <= 0
        # positive definiteness of the symmetrized matrix (finite type)
        m = [[Fraction(self.sym[i] * C[i][j]) for j in range(n)] for i in range(n)]
        for k in range(n):
            if m[k][k] <= 0:
                raise ValueError("Cartan matrix is not of finite type")
            for i in range(k + 1, n):
                f = m[i][k] / m[k][k]
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]

    def bil(self, i, j):
        """Normalized symmetric form (alpha_i, alpha_j)."""
        return self.sym[i] * self.cartan[i][j]

    def bil_wt(self, mu, nu):
        return sum(mu[i] * nu[j] * self.bil(i, j)
                   for i in range(self.n) for j in range(self.n)
                   if mu[i] and nu[j])

    def alpha(self, i):
        return tuple(1 if k == i else 0 for k in range(self.n))

    def reflect(self, i, mu):
        """s_i(mu) = mu - <alpha_i^vee, mu> alpha_i."""
        pairing = sum(self.cartan[i][j] * mu[j] for j in range(self.n))
        return tuple(mu[k] - pairing if k == i else mu[k] for k in range(self.n))

    # -- Weyl elements as tuples of simple-root images ----------------------

    def identity_elt(self):
        return tuple(self.alpha(i) for i in range(self.n))

    def elt_from_word(self, word):
        w = self.identity_elt()
        for i in reversed(word):
            w = tuple(self.reflect(i, col) for col in w)
        # built as s_{i1} ( s_{i2} ( ... )) acting on each alpha_j
        return w

    def act(self, w, mu):
        out = [0] * self.n
        for j, m in enumerate(mu):
            if m:
                for k in range(self.n):
                    out[k] += m * w[j][k]
        return tuple(out)

    def act_word(self, word, mu):
        for i in reversed(word):
            mu = self.reflect(i, mu)
        return mu

    def compose(self, w1, w2):
        """The element w1 w2 (w2 applied first)."""
        return tuple(self.act(w1, col) for col in w2)

    def word_of_element(self, w):
        """A canonical reduced word for the element w."""
        word = []
        cur = tuple(w)
        ident = self.identity_elt()
        while cur != ident:
            i = next(k for k in range(self.n)
                     if all(c <= 0 for c in cur[k]))
            word.append(i)
            cur = self.compose(cur, self.elt_from_word((i,)))
        return tuple(reversed(word))

    def reduce_word(self, word):
        """A reduced word for the element of the given word."""
        return self.word_of_element(self.elt_from_word(word))

    def length(self, word):
        return len(self.reduce_word(word))

    def positive_roots(self, subset=None):
        if subset is None:
            subset = range(self.n)
        subset = tuple(sorted(subset))
        roots = {self.alpha(i) for i in subset}
        frontier = set(roots)
        while frontier:
            new = set()
            for beta in frontier:
                for i in subset:
                    g = self.reflect(i, beta)
                    if all(c >= 0 for c in g) and g not in roots:
                        new.add(g)
            roots |= new
            frontier = new
        return sorted(roots)

    def longest_element_word(self, subset):
        """Reduced word of the longest element of the parabolic on `subset`.

        Repeatedly applies the smallest available descent; the result sends
        every simple root of the subset to a negative root.
        """
        subset = tuple(sorted(subset))
        word = []
        w = self.identity_elt()
        while True:
            i = next((i for i in subset
                      if any(c > 0 for c in w[i])), None)
            if i is None:
                break
            word.append(i)
            w = self.compose(w, self.elt_from_word((i,)))
        return tuple(word)


def _is_diagram_involution(cartan, tau):
    n = cartan.n
    if sorted(tau) != list(range(n)):
        return False
    for i in range(n):
        if tau[tau[i]] != i:
            return False
        for j in range(n):
            if cartan.cartan[i][j] != cartan.cartan[tau[i]][tau[j]]:
                return False
            if cartan.sym[i] != cartan.sym[tau[i]]:
                return False
    return True


class SatakeDiagram:
    """Cartan datum with a black subset and a diagram involution tau."""

    def __init__(self, cartan, black, tau, name=None):
        self.cartan = cartan
        self.black = frozenset(black)
        self.tau = tuple(tau)
        self.name = name
        self.n = cartan.n
        self.white = tuple(i for i in range(self.n) if i not in self.black)
        if not _is_diagram_involution(cartan, self.tau):
            raise ValueError("tau is not a diagram involution")
        if any(self.tau[j] not in self.black for j in self.black):
            raise ValueError("tau does not preserve the black subset")
        self._check_admissible()

    # -- admissibility -------------------------------------------------------

    def _check_admissible(self):
        for j in self.black:
            img = self.cartan.act(self.w_bullet, self.cartan.alpha(j))
            want = tuple(-1 if k == self.tau[j] else 0 for k in range(self.n))
            if img != want:
                raise ValueError(
                    f"not admissible: w_bullet(alpha_{j}) != -alpha_tau({j})")
        for j in self.white:
            if self.tau[j] == j:
                val = self.pair_rho_bullet_vee(self.cartan.alpha(j))
                if val.denominator != 1:
                    raise ValueError(
                        f"not admissible: alpha_{j}(rho_bullet^vee) not integral")

    # -- derived Weyl data ----------------------------------------------------

    @cached_property
    def w_bullet_word(self):
        return self.cartan.longest_element_word(self.black)

    @cached_property
    def w_bullet(self):
        return self.cartan.elt_from_word(self.w_bullet_word)

    @cached_property
    def pos_roots_black(self):
        return self.cartan.positive_roots(self.black) if self.black else []

    def pair_rho_bullet_vee(self, mu):
        """mu(2 rho_bullet^vee)/2 as an exact Fraction."""
        total = Fraction(0)
        for beta in self.pos_roots_black:
            bb = self.cartan.bil_wt(beta, beta)
            total += Fraction(2 * self.cartan.bil_wt(beta, mu), bb)
        return total / 2

    def pair_two_rho_bullet(self, mu):
        """(mu, 2 rho_bullet), an integer."""
        return sum(self.cartan.bil_wt(beta, mu) for beta in self.pos_roots_black)

    def theta(self, mu):
        """theta = -w_bullet o tau acting on weights."""
        img = self.cartan.act(self.w_bullet, self._tau_wt(mu))
        return tuple(-c for c in img)

    def _tau_wt(self, mu):
        out = [0] * self.n
        for j, m in enumerate(mu):
            out[self.tau[j]] = m
        return tuple(out)

    def balpha(self, i):
        """Restricted root (alpha_i - theta(alpha_i))/2 as Fractions."""
        a = self.cartan.alpha(i)
        t = self.theta(a)
        return tuple(Fraction(a[k] - t[k], 2) for k in range(self.n))

    def bil_frac(self, mu, nu):
        return sum(mu[i] * nu[j] * self.cartan.bil(i, j)
                   for i in range(self.n) for j in range(self.n)
                   if mu[i] and nu[j])

    @cached_property
    def white_reps(self):
        """Smallest index in each tau-orbit of white nodes."""
        return tuple(sorted({min(i, self.tau[i]) for i in self.white}))

    def nodes_bullet_i(self, i):
        return tuple(sorted(self.black | {i, self.tau[i]}))

    def w_bullet_i_word(self, i):
        return self.cartan.longest_element_word(self.nodes_bullet_i(i))

    def bs_word(self, i):
        """Reduced word for the relative simple reflection of white node i."""
        if i in self.black:
            raise ValueError(f"node {i} is black")
        return self.cartan.reduce_word(self.w_bullet_i_word(i) + self.w_bullet_word)

    def bs_elt(self, i):
        return self.cartan.elt_from_word(self.bs_word(i))

    def tau_bullet_i(self, i):
        """Diagram involution of the parabolic I_bullet + {i, tau i}."""
        nodes = self.nodes_bullet_i(i)
        w = self.cartan.elt_from_word(self.w_bullet_i_word(i))
        out = {}
        for j in nodes:
            img = self.cartan.act(w, self.cartan.alpha(j))
            neg = tuple(-c for c in img)
            k = next(k for k in nodes if self.cartan.alpha(k) == neg)
            out[j] = k
        return out

    @cached_property
    def w0_word(self):
        return self.cartan.longest_element_word(range(self.n))

    @cached_property
    def tau0(self):
        w0 = self.cartan.elt_from_word(self.w0_word)
        out = [0] * self.n
        for j in range(self.n):
            neg = tuple(-c for c in self.cartan.act(w0, self.cartan.alpha(j)))
            out[j] = next(k for k in range(self.n) if self.cartan.alpha(k) == neg)
        return tuple(out)

    def relative_order(self, i, j):
        """Order of bs_i bs_j acting on the weight lattice."""
        prod = self.cartan.compose(self.bs_elt(i), self.bs_elt(j))
        w = prod
        m = 1
        ident = self.cartan.identity_elt()
        while w != ident:
            w = self.cartan.compose(w, prod)
            m += 1
            if m > 6:
                raise AssertionError("relative order exceeds 6")
        return m

    @cached_property
    def w_circ_word(self):
        """A reduced expression of the longest relative element, in bs-letters."""
        reps = self.white_reps
        if not reps:
            return ()
        if len(reps) == 1:
            return (reps[0],)
        if len(reps) == 2:
            i, j = reps
            m = self.relative_order(i, j)
            return tuple(i if k % 2 == 0 else j for k in range(m))
        raise ValueError("longest relative word implemented for rank <= 2")

    # -- distinguished parameters ---------------------------------------------

    def varsigma_diamond(self, i):
        """-q^{-(balpha_i, balpha_i)} for white i; 1 for black."""
        if i in self.black:
            return ONE
        b = self.balpha(i)
        return -Scalar.q_power(-self.bil_frac(b, b))

    def varsigma_star(self, i):
        if i in self.black:
            return ONE
        a = self.cartan.alpha(i)
        sign = (-1) ** int(2 * self.pair_rho_bullet_vee(a))
        wexp = self.cartan.bil_wt(
            a, self.cartan.act(self.w_bullet, self.cartan.alpha(self.tau[i])))
        exp = wexp + self.pair_two_rho_bullet(a)
        return Scalar.from_pair(sign) * Scalar.q_power(exp)

    def param_diamond(self):
        return ParameterTuple(self, {i: self.varsigma_diamond(i) for i in self.white})

    def param_star(self):
        return ParameterTuple(self, {i: self.varsigma_star(i) for i in self.white})

    def param_star_diamond(self):
        return ParameterTuple(self, {
            i: self.varsigma_star(i) * self.varsigma_diamond(i) for i in self.white})

    # -- subdiagrams ------------------------------------------------------------

    def subdiagram(self, nodes, name=None):
        """Restriction to a node subset; keeps the parent symmetrizer.

        Returns (diagram, embed) where embed maps sub-indices to parent indices.
        """
        nodes = tuple(sorted(nodes))
        pos = {g: k for k, g in enumerate(nodes)}
        cartan = CartanDatum(
            [[self.cartan.cartan[a][b] for b in nodes] for a in nodes],
            [self.cartan.sym[a] for a in nodes])
        black = [pos[a] for a in nodes if a in self.black]
        tau = [pos[self.tau[a]] for a in nodes]
        return SatakeDiagram(cartan, black, tau, name=name), nodes

    def rank1_subdiagram(self, i):
        return self.subdiagram(self.nodes_bullet_i(i), name=f"rk1({i})")

    def __repr__(self):
        return f"SatakeDiagram({self.name or ''} n={self.n} black={sorted(self.black)})"


class ParameterTuple:
    """A tuple of monomial scalars indexed by the white nodes."""

    def __init__(self, diagram, values):
        self.diagram = diagram
        self.values = dict(values)
        for i, v in self.values.items():
            if not v.is_monomial():
                raise ValueError(f"parameter at node {i} is not a monomial: {v}")

    def __getitem__(self, i):
        if i in self.diagram.black:
            return ONE
        return self.values[i]

    def validate(self):
        """The constraint vs_i = vs_{tau i} when tau i != i and (alpha_i, w. alpha_{tau i}) = 0."""
        d = self.diagram
        for i in d.white:
            ti = d.tau[i]
            if ti != i:
                pairing = d.cartan.bil_wt(
                    d.cartan.alpha(i),
                    d.cartan.act(d.w_bullet, d.cartan.alpha(ti)))
                if pairing == 0 and self[i] != self[ti]:
                    raise ValueError(
                        f"invalid parameter: vs_{i} != vs_{d.tau[i]} is not allowed here")
        return self

    def is_balanced(self):
        return all(self[i] == self[self.diagram.tau[i]] for i in self.diagram.white)

    def balanced_version(self):
        """The balanced tuple with entries sqrt(vs_i vs_{tau i})."""
        d = self.diagram
        return ParameterTuple(d, {
            i: sqrt_monomial(self[i] * self[d.tau[i]]) for i in d.white})

    def sqrt(self):
        return ParameterTuple(self.diagram,
                              {i: sqrt_monomial(v) for i, v in self.values.items()})

    def inv(self):
        return ParameterTuple(self.diagram, {i: v.inv() for i, v in self.values.items()})

    def bar(self):
        return ParameterTuple(self.diagram, {i: v.bar() for i, v in self.values.items()})

    def mul(self, other):
        return ParameterTuple(self.diagram,
                              {i: v * other[i] for i, v in self.values.items()})

    def full(self):
        """Extension to all nodes (1 on black), as a plain dict."""
        out = {i: ONE for i in range(self.diagram.n)}
        out.update(self.values)
        return out


# -----------------------------------------------------------------------------
# Catalog of named Satake diagrams (Cartan matrices use standard chain
# numbering; node indices are 0-based).

def _chain_cartan(n, bonds=None):
    """Cartan matrix of a chain 0-1-...-(n-1); bonds overrides entries."""
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        C[i][i + 1] = -1
        C[i + 1][i] = -1
    for (i, j), v in (bonds or {}).items():
        C[i][j] = v
    return C


def cartan_A(n):
    return CartanDatum(_chain_cartan(n), [1] * n)


def cartan_B(n):
    # nodes 0..n-2 long, node n-1 short; double edge points at n-1
    C = _chain_cartan(n, bonds={(n - 1, n - 2): -2})
    return CartanDatum(C, [2] * (n - 1) + [1])


def cartan_C(n):
    # nodes 0..n-2 short, node n-1 long
    C = _chain_cartan(n, bonds={(n - 2, n - 1): -2})
    return CartanDatum(C, [1] * (n - 1) + [2])


def cartan_C2_first_short():
    """Rank 2 type C with node 0 short (arrow pointing at node 0)."""
    return CartanDatum([[2, -2], [-1, 2]], [1, 2])


def cartan_D(n):
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 3):
        C[i][i + 1] = C[i + 1][i] = -1
    C[n - 3][n - 2] = C[n - 2][n - 3] = -1
    C[n - 3][n - 1] = C[n - 1][n - 3] = -1
    return CartanDatum(C, [1] * n)


def cartan_G2_first_short():
    """Type G2 with node 0 short (triple arrow pointing at node 0)."""
    return CartanDatum([[2, -3], [-1, 2]], [1, 3])


def cartan_E6():
    """ Chain 0-1-2-3-4 with node 5 attached to node 2."""
    C = [[2 if i == j else 0 for j in range(6)] for i in range(6)]
    for i in range(4):
        C[i][i + 1] = C[i + 1][i] = -1
    C[2][5] = C[5][2] = -1
    return CartanDatum(C, [1] * 6)


def cartan_F4():
    """Chain 0-1=>2-3 with nodes 0,1 long and 2,3 short."""
    C = _chain_cartan(4, bonds={(2, 1): -2})
    return CartanDatum(C, [2, 2, 1, 1])


def _diag(name, cartan, black, tau):
    return SatakeDiagram(cartan, black, tau, name=name)


def catalog():
    """Named Satake diagram constructors: rank 1 and rank 2 families."""
    entries = {}

    # rank 1
    entries["AI.1"] = lambda: _diag("AI.1", cartan_A(1), [], [0])
    entries["AII.3"] = lambda: _diag("AII.3", cartan_A(3), [0, 2], [0, 1, 2])
    entries["AIII11"] = lambda: _diag(
        "AIII11", CartanDatum([[2, 0], [0, 2]], [1, 1]), [], [1, 0])

    def aiv(n):
        tau = [n - 1 - i for i in range(n)]
        return _diag(f"AIV.{n}", cartan_A(n), range(1, n - 1), tau)
    entries["AIV.n"] = aiv

    def bii(n):
        return _diag(f"BII.{n}", cartan_B(n), range(1, n), range(n))
    entries["BII.n"] = bii

    def cii_rank1(n):
        black = [0] + list(range(2, n))
        return _diag(f"CII.{n}", cartan_C(n), black, range(n))
    entries["CII.n"] = cii_rank1

    def dii(n):
        return _diag(f"DII.{n}", cartan_D(n), range(1, n), range(n))
    entries["DII.n"] = dii

    entries["FII"] = lambda: _diag("FII", cartan_F4(), [0, 1, 2], range(4))

    # rank 2
    entries["AI.2"] = lambda: _diag("AI.2", cartan_A(2), [], [0, 1])
    entries["CI.2"] = lambda: _diag("CI.2", cartan_C2_first_short(), [], [0, 1])
    entries["G2"] = lambda: _diag("G2", cartan_G2_first_short(), [], [0, 1])

    def bi(n):
        return _diag(f"BI.{n}", cartan_B(n), range(2, n), range(n))
    entries["BI.n"] = bi

    def di(n):
        return _diag(f"DI.{n}", cartan_D(n), range(2, n), range(n))
    entries["DI.n"] = di

    entries["DIII.4"] = lambda: _diag("DIII.4", cartan_D(4), [2, 3], range(4))
    entries["AII.5"] = lambda: _diag("AII.5", cartan_A(5), [0, 2, 4], range(5))

    def cii_rank2(n):
        black = [0, 2] + list(range(4, n))
        return _diag(f"CII.2.{n}", cartan_C(n), black, range(n))
    entries["CII.2.n"] = cii_rank2

    entries["CII.4"] = lambda: _diag("CII.4", cartan_C(4), [0, 2], range(4))
    entries["EIV"] = lambda: _diag("EIV", cartan_E6(), [1, 2, 3, 5], range(6))
    entries["AIII.3"] = lambda: _diag("AIII.3", cartan_A(3), [], [2, 1, 0])

    def aiii(n):
        tau = [n - 1 - i for i in range(n)]
        return _diag(f"AIII.{n}", cartan_A(n), range(2, n - 2), tau)
    entries["AIII.n"] = aiii

    entries["DIII.5"] = lambda: _diag(
        "DIII.5", cartan_D(5), [0, 2], [0, 1, 2, 4, 3])
    entries["EIII"] = lambda: _diag(
        "EIII", cartan_E6(), [1, 2, 3], [4, 3, 2, 1, 0, 5])
    return entries


_FAMILY_RANGES = {
    "AIV.n": 2, "BII.n": 2, "CII.n": 3, "DII.n": 4,
    "BI.n": 3, "DI.n": 5, "CII.2.n": 5, "AIII.n": 4,
}


def get_diagram(name):
    """Construct a catalog diagram from a name like "AI.2" or "BI.4"."""
    entries = catalog()
    if name in entries and name not in _FAMILY_RANGES:
        return entries[name]()
    for fam, lo in _FAMILY_RANGES.items():
        stem = fam[:-2]  # strip ".n"
        if name.startswith(stem + "."):
            try:
                n = int(name[len(stem) + 1:])
            except ValueError:
                continue
            if name == f"AIII.{n}" and n == 3:
                return entries["AIII.3"]()
            if n < lo:
                raise ValueError(f"{fam}: size {n} below family minimum {lo}")
            return entries[fam](n)
    raise KeyError(f"unknown diagram name: {name}")


def diagram_from_dict(data):
    """Build a diagram from the JSON input schema.

    {"name"?, "cartan": [[..]], "symmetrizer": [..], "black": [..], "tau": [..]}
    """
    try:
        cartan = CartanDatum(data["cartan"], data["symmetrizer"])
        return SatakeDiagram(cartan, data.get("black", []),
                             data.get("tau", list(range(cartan.n))),
                             name=data.get("name"))
    except (KeyError, AssertionError, ValueError) as exc:
        raise ValueError(f"invalid diagram input: {exc}") from exc
