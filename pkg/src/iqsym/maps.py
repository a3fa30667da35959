"""Algebra (anti)homomorphisms of the double given by generator images.

Every map used here is determined by its images on E_i, F_i, K_i, K'_i, a
multiplicativity flag and a bar flag (bar maps conjugate every coefficient
through u |-> u^-1, i |-> -i).  Images of Cartan letters must be invertible
monomials so that negative exponents make sense.
"""

from __future__ import annotations

from .scalars import ONE, Scalar, q_binom, sqrt_monomial


class GenMap:
    def __init__(self, dom, cod, images, anti=False, bar=False, name=None):
        self.dom = dom
        self.cod = cod
        self.images = images
        self.anti = anti
        self.bar = bar
        self.name = name
        self._k_images = {}
        for kind in ("K", "Kp"):
            for i in range(dom.n):
                img = images[(kind, i)]
                if len(img.terms) != 1:
                    raise ValueError(f"image of {kind}{i} is not a monomial")
                (f, k, e), c = next(iter(img.terms.items()))
                if f or e:
                    raise ValueError(f"image of {kind}{i} is not a Cartan monomial")
                self._k_images[(kind, i)] = (c, k)

    # -- application ----------------------------------------------------------

    def _k_image(self, kvec):
        n = self.dom.n
        coeff = ONE
        out = [0] * (2 * self.cod.n)
        for i in range(n):
            for kind, exp in (("K", kvec[i]), ("Kp", kvec[n + i])):
                if exp:
                    c, k = self._k_images[(kind, i)]
                    coeff = coeff * c ** exp
                    for t in range(2 * self.cod.n):
                        out[t] += exp * k[t]
        return self.cod.monomial(kvec=out, coeff=coeff)

    def apply(self, poly):
        cod = self.cod
        total = cod.zero()
        for (f, k, e), c in poly.terms.items():
            if self.bar:
                c = c.bar()
            factors = []
            factors.extend(self.images[("F", i)] for i in f)
            if k != self.dom._kzero:
                factors.append(self._k_image(k))
            factors.extend(self.images[("E", i)] for i in e)
            if self.anti:
                factors.reverse()
            term = cod.one()
            for fac in factors:
                term = cod.mul(term, fac)
            total = total + term.scale(c)
        return total

    def compose_after(self, inner):
        """self o inner as a new generator map."""
        images = {}
        for key, img in inner.images.items():
            out = self.apply(img)
            images[key] = out
        return GenMap(inner.dom, self.cod, images,
                      anti=self.anti ^ inner.anti, bar=self.bar ^ inner.bar)

    # -- certification ----------------------------------------------------------

    def check_relations(self):
        """Images satisfy every defining relation of the domain."""
        dom, cod = self.dom, self.cod
        n = dom.n
        E = {i: self.apply(dom.E(i)) for i in range(n)}
        F = {i: self.apply(dom.F(i)) for i in range(n)}
        K = {i: self.apply(dom.K(i)) for i in range(n)}
        Kp = {i: self.apply(dom.Kp(i)) for i in range(n)}
        Kinv = {i: self.apply(dom.K(i, -1)) for i in range(n)}
        Kpinv = {i: self.apply(dom.Kp(i, -1)) for i in range(n)}
        for i in range(n):
            assert cod.mul(K[i], Kinv[i]) == cod.one()
            assert cod.mul(Kp[i], Kpinv[i]) == cod.one()
            qmqi = Scalar.q_power(dom.cartan.sym[i]) - Scalar.q_power(-dom.cartan.sym[i])
            for j in range(n):
                cij = dom.cartan.cartan[i][j]
                qi = Scalar.q_power(dom.cartan.sym[i])
                lhs = cod.comm(E[i], F[j])
                rhs = (K[i] - Kp[i]).scale(qmqi.inv()) if i == j else cod.zero()
                assert lhs == rhs, f"[E{i},F{j}] fails"
                assert cod.mul(K[i], E[j]) == cod.mul(E[j], K[i]).scale(qi ** cij)
                assert cod.mul(K[i], F[j]) == cod.mul(F[j], K[i]).scale(qi ** (-cij))
                assert cod.mul(Kp[i], E[j]) == cod.mul(E[j], Kp[i]).scale(qi ** (-cij))
                assert cod.mul(Kp[i], F[j]) == cod.mul(F[j], Kp[i]).scale(qi ** cij)
                assert cod.comm(K[i], K[j]).is_zero()
                assert cod.comm(K[i], Kp[j]).is_zero()
                if i != j:
                    r = 1 - cij
                    for X in (E, F):
                        acc = cod.zero()
                        for s in range(r + 1):
                            term = cod.one()
                            for _ in range(s):
                                term = cod.mul(term, X[i])
                            term = cod.mul(term, X[j])
                            for _ in range(r - s):
                                term = cod.mul(term, X[i])
                            acc = acc + term.scale(
                                Scalar.from_pair((-1) ** s) * q_binom(r, s, qi))
                        assert acc.is_zero(), f"Serre({i},{j}) fails"
        return True


# -- elementary named maps -------------------------------------------------------


def _letter_images(alg, emap, fmap, kmap, kpmap):
    images = {}
    for i in range(alg.n):
        images[("E", i)] = emap(i)
        images[("F", i)] = fmap(i)
        images[("K", i)] = kmap(i)
        images[("Kp", i)] = kpmap(i)
    return images


def identity_map(alg):
    return GenMap(alg, alg, _letter_images(alg, alg.E, alg.F, alg.K, alg.Kp),
                  name="id")


def bar_psi(alg):
    """Anti-linear involution fixing E, F and swapping K <-> K'."""
    return GenMap(alg, alg,
                  _letter_images(alg, alg.E, alg.F, alg.Kp, alg.K),
                  bar=True, name="psi")


def sigma_anti(alg):
    """Anti-involution fixing E, F and swapping K <-> K'."""
    return GenMap(alg, alg,
                  _letter_images(alg, alg.E, alg.F, alg.Kp, alg.K),
                  anti=True, name="sigma")


def omega_chevalley(alg):
    """Involution swapping E <-> F and K <-> K'."""
    return GenMap(alg, alg,
                  _letter_images(alg, alg.F, alg.E, alg.Kp, alg.K),
                  name="omega")


def tau_hat(alg, perm):
    """Relabeling along a diagram involution."""
    return GenMap(alg, alg,
                  _letter_images(alg,
                                 lambda i: alg.E(perm[i]),
                                 lambda i: alg.F(perm[i]),
                                 lambda i: alg.K(perm[i]),
                                 lambda i: alg.Kp(perm[i])),
                  name="tau-hat")


def psi_scale(alg, avals):
    """K_i -> a_i^{1/2} K_i, K'_i -> a_i^{1/2} K'_i, E_i -> a_i^{1/2} E_i, F_i -> F_i."""
    root = {i: sqrt_monomial(avals[i]) for i in range(alg.n)}
    return GenMap(alg, alg,
                  _letter_images(alg,
                                 lambda i: alg.E(i).scale(root[i]),
                                 alg.F,
                                 lambda i: alg.K(i).scale(root[i]),
                                 lambda i: alg.Kp(i).scale(root[i])),
                  name="Psi-scale")


def phi_scale(alg, avals):
    """K_i -> K_i, E_i -> a_i^{1/2} E_i, F_i -> a_i^{-1/2} F_i (on the quotient)."""
    root = {i: sqrt_monomial(avals[i]) for i in range(alg.n)}
    return GenMap(alg, alg,
                  _letter_images(alg,
                                 lambda i: alg.E(i).scale(root[i]),
                                 lambda i: alg.F(i).scale(root[i].inv()),
                                 alg.K, alg.Kp),
                  name="Phi-scale")


def pi_reduction(dom, cod, avals):
    """Central reduction: F -> F, E -> sqrt(a) E, K -> sqrt(a) K, K' -> sqrt(a) K^{-1}."""
    root = {i: sqrt_monomial(avals[i]) for i in range(dom.n)}
    return GenMap(dom, cod,
                  _letter_images(dom,
                                 lambda i: cod.E(i).scale(root[i]),
                                 cod.F,
                                 lambda i: cod.K(i).scale(root[i]),
                                 lambda i: cod.K(i, -1).scale(root[i])),
                  name="pi")


# -- braid operators ---------------------------------------------------------------


def _braid_images(alg, i, variant, vs=None):
    """Images for a single braid operator on the double.

    variant is one of "T2p" (T''_{i,+1}) or "T1m" (T'_{i,-1}).  vs is the
    distinguished-parameter value at i for the rescaled version, or None
    for the plain operator.
    """
    n = alg.n
    C = alg.cartan.cartan
    qi = Scalar.q_power(alg.cartan.sym[i])
    vsi = vs if vs is not None else ONE
    vs_root = sqrt_monomial(vsi)
    imgs = {}
    for j in range(n):
        cij = C[i][j]
        kfac = vs_root ** cij
        kv = [0] * (2 * n)
        kv[j] += 1
        kv[i] += -cij
        imgs[("K", j)] = alg.monomial(kvec=kv, coeff=kfac)
        kvp = [0] * (2 * n)
        kvp[n + j] += 1
        kvp[n + i] += -cij
        imgs[("Kp", j)] = alg.monomial(kvec=kvp, coeff=kfac)
    # node i
    if variant == "T2p":
        imgs[("E", i)] = alg.mul(alg.F(i), alg.Kp(i, -1)).scale(-vsi)
        imgs[("F", i)] = alg.mul(alg.K(i, -1), alg.E(i)).scale(-ONE)
    elif variant == "T1m":
        imgs[("E", i)] = alg.mul(alg.K(i, -1), alg.F(i)).scale(-vsi)
        imgs[("F", i)] = alg.mul(alg.E(i), alg.Kp(i, -1)).scale(-ONE)
    else:
        raise ValueError(variant)
    for j in range(n):
        if j == i:
            continue
        r = -C[i][j]
        accE = alg.zero()
        accF = alg.zero()
        for s in range(r + 1):
            sgn = Scalar.from_pair((-1) ** s)
            if variant == "T2p":
                accE = accE + alg.mul(
                    alg.mul(alg.epower_divided(i, r - s), alg.E(j)),
                    alg.epower_divided(i, s)).scale(sgn * qi ** (-s))
                accF = accF + alg.mul(
                    alg.mul(alg.fpower_divided(i, s), alg.F(j)),
                    alg.fpower_divided(i, r - s)).scale(sgn * qi ** s)
            else:
                accE = accE + alg.mul(
                    alg.mul(alg.epower_divided(i, s), alg.E(j)),
                    alg.epower_divided(i, r - s)).scale(sgn * qi ** (-s))
                accF = accF + alg.mul(
                    alg.mul(alg.fpower_divided(i, r - s), alg.F(j)),
                    alg.fpower_divided(i, s)).scale(sgn * qi ** s)
        imgs[("E", j)] = accE.scale(vs_root ** (-r)) if vs is not None else accE
        imgs[("F", j)] = accF
    return imgs


class MapFactory:
    """Caching factory for braid operators and their word composites.

    The rescaled operators use the diagram's distinguished parameter; the
    plain operators are obtained with diamond=False.
    """

    def __init__(self, alg, diagram=None):
        self.alg = alg
        self.diagram = diagram
        self._single = {}
        self._words = {}
        self._psi_star = None

    def braid(self, i, variant="T2p", diamond=True):
        key = (i, variant, diamond)
        if key in self._single:
            return self._single[key]
        vs = None
        if diamond:
            if self.diagram is None:
                raise ValueError("rescaled braid operators need a Satake diagram")
            vs = self.diagram.varsigma_diamond(i)
        if variant in ("T2p", "T1m"):
            m = GenMap(self.alg, self.alg,
                       _braid_images(self.alg, i, variant, vs),
                       name=f"{variant}:{i}{'*' if diamond else ''}")
        elif variant == "T2m":
            psi = self.conjugator(diamond)
            m = psi.compose_after(self.braid(i, "T2p", diamond).compose_after(psi))
        elif variant == "T1p":
            psi = self.conjugator(diamond)
            m = psi.compose_after(self.braid(i, "T1m", diamond).compose_after(psi))
        else:
            raise ValueError(variant)
        self._single[key] = m
        return m

    def conjugator(self, diamond):
        """psi for the plain variants, psi_star for the rescaled ones."""
        if not diamond:
            return bar_psi(self.alg)
        if self._psi_star is None:
            star = {i: (self.diagram.varsigma_star(i) if self.diagram is not None
                        else ONE) for i in range(self.alg.n)}
            self._psi_star = psi_scale(self.alg, star).compose_after(bar_psi(self.alg))
        return self._psi_star

    def braid_word(self, word, variant="T2p", diamond=True, signs=None):
        """Composite along a word; signs flips individual letters to the
        inverse variant (so mixed words such as T4^-1 T3^-1 T2^-1 exist)."""
        inv = {"T2p": "T1m", "T1m": "T2p", "T2m": "T1p", "T1p": "T2m"}
        signs = tuple(signs) if signs is not None else (1,) * len(word)
        key = (tuple(word), variant, diamond, signs)
        if key in self._words:
            return self._words[key]
        m = identity_map(self.alg)
        for i, s in zip(word, signs):
            v = variant if s > 0 else inv[variant]
            m = m.compose_after(self.braid(i, v, diamond))
        self._words[key] = m
        return m

    def braid_word_inverse(self, word, variant="T2p", diamond=True):
        """Inverse of the word composite."""
        return self.braid_word(tuple(reversed(word)), variant, diamond,
                               signs=(-1,) * len(word))
