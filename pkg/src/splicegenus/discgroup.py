"""The discriminant group H = L*/L and its character theory.

H is presented as Z^n / I Z^n via the basis {E*_v} of L*; Smith normal form
gives invariant-factor coordinates.  The theta pairing is the rational
intersection form reduced mod 1, and it identifies H with its character
group: a character with coordinates c acts by
chi(h) = exp(2 pi i * sum_i c_i h_i / d_i).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .errors import NotInDualLattice
from .graph import QCycle, ResolutionGraph, unit_cycle


def mod1(x) -> Fraction:
    """Reduce an exact rational into [0, 1)."""
    x = Fraction(x)
    return Fraction(x.numerator % x.denominator, x.denominator)


@dataclass(frozen=True)
class HElement:
    coords: tuple  # coords[i] in [0, d_i)


@dataclass(frozen=True)
class Character:
    coords: tuple  # same coordinate convention via invariant factors


class GroupData:
    """Invariant-factor presentation of H = L*/L for one graph."""

    def __init__(self, graph: ResolutionGraph):
        graph.require_valid()
        self.graph = graph
        self.dual = graph.dual_data()
        I = graph.intersection_matrix()
        U, S, _V = exact.smith_normal_form(I)
        n = len(graph.ids)
        diag = [S[i][i] for i in range(n)]
        assert all(d > 0 for d in diag)
        self._U = U
        self._Uinv = exact.unimodular_inverse(U)
        self._diag = diag
        self._kept = [i for i in range(n) if diag[i] > 1]
        self.invariant_factors = [diag[i] for i in self._kept]
        self.order = 1
        for d in self.invariant_factors:
            self.order *= d
        assert self.order == self.dual.det_abs, "|H| must equal |det I|"
        self.exponent = self.invariant_factors[-1] if self.invariant_factors else 1
        # generator i of H lifts to the L*-element with alpha-vector
        # equal to column kept[i] of U^{-1}
        self._gen_alphas = [
            [self._Uinv[r][i] for r in range(n)] for i in self._kept
        ]
        self._pairing = None
        self._char_lookup = None

    # -- element bookkeeping ----------------------------------------------

    @property
    def rank(self):
        return len(self.invariant_factors)

    def reduce(self, coords) -> HElement:
        return HElement(tuple(c % d for c, d in zip(coords, self.invariant_factors)))

    def elements(self):
        for tup in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield HElement(tup)

    def characters(self):
        for tup in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield Character(tup)

    @property
    def trivial_character(self):
        return Character((0,) * self.rank)

    def char_mul(self, a: Character, b: Character) -> Character:
        return Character(tuple((x + y) % d for x, y, d in
                               zip(a.coords, b.coords, self.invariant_factors)))

    def char_inv(self, a: Character) -> Character:
        return Character(tuple((-x) % d for x, d in
                               zip(a.coords, self.invariant_factors)))

    def char_value_exponent(self, chi: Character, h: HElement) -> Fraction:
        """Exponent r in chi(h) = exp(2 pi i r), as a rational in [0,1)."""
        return mod1(sum(Fraction(c * x, d) for c, x, d in
                        zip(chi.coords, h.coords, self.invariant_factors)))

    # -- classes of dual-lattice elements ---------------------------------

    def alpha_of(self, D: QCycle):
        """Coordinates of D in the E*-basis: alpha_w = -D . E_w (must be integral)."""
        g = self.graph
        alphas = []
        for w in g.ids:
            a = -g.intersect(D, unit_cycle(w))
            if a.denominator != 1:
                raise NotInDualLattice(
                    f"cycle is not in L*: -D.E_{w} = {a} is not an integer")
            alphas.append(int(a))
        return alphas

    def class_of(self, D: QCycle) -> HElement:
        alpha = self.alpha_of(D)
        coords = [sum(self._U[i][j] * alpha[j] for j in range(len(alpha)))
                  for i in self._kept]
        return self.reduce(coords)

    def lift(self, h: HElement) -> QCycle:
        """A representative of h in L*, as a QCycle in the E-basis."""
        n = len(self.graph.ids)
        alpha = [0] * n
        for c, gen in zip(h.coords, self._gen_alphas):
            for r in range(n):
                alpha[r] += c * gen[r]
        coeffs = {}
        for j, w in enumerate(self.graph.ids):
            coeffs[w] = sum(
                alpha[v] * self.dual.inverse[(self.graph.ids[v], w)]
                for v in range(n))
        return QCycle(coeffs)

    # -- theta pairing -----------------------------------------------------

    def pair(self, x, y) -> Fraction:
        """Exponent of theta(x, y) as a rational mod 1.

        Arguments may be HElements or QCycles in L*.
        """
        if isinstance(x, HElement):
            x = self.lift(x)
        if isinstance(y, HElement):
            y = self.lift(y)
        self.alpha_of(x)  # membership check
        self.alpha_of(y)
        return mod1(self.graph.intersect(x, y))

    def pairing_table(self):
        if self._pairing is None:
            gens = [self.lift(HElement(tuple(int(i == k) for i in range(self.rank))))
                    for k in range(self.rank)]
            self._pairing = [
                [mod1(self.graph.intersect(a, b)) for b in gens] for a in gens
            ]
        return self._pairing

    def theta(self, x) -> Character:
        """The character theta(h): h' -> exp(2 pi i h.h')."""
        if isinstance(x, QCycle):
            x = self.class_of(x)
        P = self.pairing_table()
        coords = []
        for j, d in enumerate(self.invariant_factors):
            val = d * mod1(sum(x.coords[i] * P[i][j] for i in range(self.rank)))
            assert val.denominator == 1
            coords.append(int(val))
        return Character(tuple(coords))

    def character_to_element(self, chi: Character) -> HElement:
        """Invert theta (nondegeneracy makes this a bijection)."""
        if self._char_lookup is None:
            self._char_lookup = {self.theta(h): h for h in self.elements()}
            assert len(self._char_lookup) == self.order, "theta is not bijective"
        return self._char_lookup[chi]

    # -- fractional representatives and branch maps ------------------------

    def fractional_representative(self, chi: Character) -> QCycle:
        """c_1(L_chi): the unique L*-representative with coefficients in [0,1)."""
        h = self.character_to_element(chi)
        D = self.lift(h)
        rep = D - D.floor()
        assert all(0 <= c < 1 for c in rep.coeffs.values())
        assert self.theta(self.class_of(rep)) == chi
        return rep


def phi_branch(parent: ResolutionGraph, branch, D: QCycle) -> QCycle:
    """phi_i: rewrite D in the E*-basis, keep the branch part, reinterpret
    with the branch's own dual cycles."""
    gd_alpha = []
    for w in parent.ids:
        a = -parent.intersect(D, unit_cycle(w))
        if a.denominator != 1:
            raise NotInDualLattice(f"-D.E_{w} = {a} is not an integer")
        gd_alpha.append((w, int(a)))
    sub = branch.subgraph
    out = QCycle()
    for w, a in gd_alpha:
        if a != 0 and w in sub.weight:
            out = out + sub.dual_cycle(w).scale(a)
    return out


def psi_branch(parent_gd: GroupData, branch, chi: Character,
               branch_gd: GroupData | None = None) -> Character:
    """psi_i(chi) = theta_i(phi_i(c_1(L_chi)))."""
    if branch_gd is None:
        branch_gd = GroupData(branch.subgraph)
    c1 = parent_gd.fractional_representative(chi)
    phi = phi_branch(parent_gd.graph, branch, c1)
    return branch_gd.theta(branch_gd.class_of(phi))


def nef_shift_cycle(parent_gd: GroupData, branch, chi: Character) -> QCycle:
    """D_{chi,i} = -[phi_i(c_1(L_chi))]; effective and integral."""
    c1 = parent_gd.fractional_representative(chi)
    phi = phi_branch(parent_gd.graph, branch, c1)
    D = -(phi.floor())
    assert D.is_integral() and D.is_effective()
    return D
