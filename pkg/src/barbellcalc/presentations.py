r"""
Module presentations of pi_2 of complements and their invariants.

The handle data of a geometry (attaching spheres of 3-handles, belt
disks of 2-handles) turns a barbell scenario into a presentation matrix
over the deck group ring: entry (r, s) is the equivariant intersection
polynomial of the barbell-acted attaching sphere s against disk r.
Heegaard-genus-1 scenarios give the 1x1 matrix (f); the genus-2 family
gives a zero-diagonal 2x2 over Z[t, t^-1].

There is deliberately no Smith normal form over Z[t, t^-1] (not a PID):
cokernel normal forms are computed only for the shapes that actually
arise (1x1 and zero-diagonal 2x2), and Fitting ideal generators cover
everything else.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

from .deckgroup import DeckElement, DeckGroup, free_group
from .equivariant import (
    BarbellSpec,
    Geometry,
    action_sequence,
    intersection_polynomial,
)
from .groupring import (
    F2,
    BrunnianCoordinates,
    RingElement,
    apply_hom,
    are_associates,
    is_monomial_unit,
    laurent_span,
    normalize_monomial,
)


class PresentationError(ValueError):
    """Matrix shape or ring outside an operation's domain."""


@dataclass
class PresentationMatrix:
    """Rows indexed by belt disks, columns by attaching spheres."""

    group: DeckGroup
    coeffs: str
    entries: list[list[RingElement]]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def entry(self, r: int, s: int) -> RingElement:
        return self.entries[r][s]


def present_from_scenario(
    geometry: Geometry,
    barbells: list[BarbellSpec],
    attaching: list[str] | None = None,
    disks: list[str] | None = None,
) -> PresentationMatrix:
    """Presentation of pi_2 (tensored with the geometry's coefficients)
    for the complement built from the geometry's handle roles: push each
    attaching sphere through the barbell actions, then pair against each
    belt disk."""
    attaching = attaching if attaching is not None else geometry.attaching
    disks = disks if disks is not None else geometry.disks
    if not attaching or not disks:
        raise PresentationError("scenario needs attaching spheres and belt disks")
    columns = []
    for name in attaching:
        moved = action_sequence(geometry.basis_class(name), barbells)
        columns.append(intersection_polynomial(moved, disks))
    entries = [[columns[s][r] for s in range(len(attaching))] for r in range(len(disks))]
    return PresentationMatrix(geometry.group, geometry.coeffs, entries)


def f2_quotient_dim(matrix: PresentationMatrix) -> int | None:
    """dim_F2 of the cokernel of a 1x1 matrix over F2[t, t^-1]: the
    degree span of the single entry (None = infinite).  F2[t, t^-1] is
    Euclidean for the span, which justifies reading the dimension off."""
    if matrix.shape != (1, 1):
        raise PresentationError(f"expected a 1x1 matrix, got shape {matrix.shape}")
    if matrix.coeffs != F2:
        raise PresentationError("quotient dimension is computed over F2")
    return laurent_span(matrix.entry(0, 0))


def antidiagonal_cokernel(matrix: PresentationMatrix) -> list[RingElement]:
    """Cyclic factors of the cokernel of a zero-diagonal 2x2 matrix over
    Z[t, t^-1], normalized by monomial units and sign.

    Any other shape is an error: the scenarios that call this are
    expected to produce exactly this matrix, so a violation means the
    computation went somewhere new.
    """
    if matrix.shape != (2, 2):
        raise PresentationError(f"expected a 2x2 matrix, got shape {matrix.shape}")
    if not matrix.entry(0, 0).is_zero() or not matrix.entry(1, 1).is_zero():
        raise PresentationError("diagonal entries are nonzero; not the expected shape")
    g1, g2 = matrix.entry(0, 1), matrix.entry(1, 0)
    if g1.is_zero() or g2.is_zero():
        raise PresentationError("antidiagonal entries vanish; not the expected shape")
    return [normalize_monomial(g1), normalize_monomial(g2)]


def _determinant(rows: list[list[RingElement]], group: DeckGroup, coeffs: str) -> RingElement:
    n = len(rows)
    out = RingElement.zero(group, coeffs)
    for perm in permutations(range(n)):
        sign = 1
        seen = [False] * n
        # permutation parity by cycle counting
        for i in range(n):
            if seen[i]:
                continue
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        prod = RingElement.one(group, coeffs)
        for i in range(n):
            prod = prod.mul(rows[i][perm[i]])
        out = out.add(prod.scale(sign))
    return out


def fitting_generators(matrix: PresentationMatrix, level: int) -> list[RingElement]:
    """Generators of the level-th Fitting ideal: all (n - level)-minors,
    n the number of generators (columns), each normalized by a monomial
    unit.  Empty minors are 1 (whole ring); too-large minors give the
    zero ideal (empty generator list)."""
    if matrix.group.kind == "free":
        raise PresentationError("Fitting ideals need a commutative group ring")
    if level < 0:
        raise PresentationError("Fitting level must be >= 0")
    rows, cols = matrix.shape
    size = cols - level
    if size <= 0:
        return [RingElement.one(matrix.group, matrix.coeffs)]
    if size > rows:
        return []
    gens = []
    for row_idx in combinations(range(rows), size):
        for col_idx in combinations(range(cols), size):
            minor = [[matrix.entry(r, c) for c in col_idx] for r in row_idx]
            det = _determinant(minor, matrix.group, matrix.coeffs)
            if not det.is_zero():
                det = normalize_monomial(det)
            if det not in gens:
                gens.append(det)
    return gens


# ---------------------------------------------------------------------------
# The Brunnian-link module family and its distinctness test.


@lru_cache(maxsize=None)
def brunnian_relator(k: int, l: int, n: int) -> RingElement:
    """The single relator 1 + (xn^-1 + 1)(w^-k + w^k)(1 + xn)(w^-l + w^l)
    of the n-component Brunnian link module, in F2[F_n], where w is the
    iterated commutator word."""
    from .deckgroup import brunnian_word

    if k < 1 or l < 1:
        raise PresentationError(f"winding numbers must be >= 1, got k={k}, l={l}")
    if n < 2:
        raise PresentationError(f"need n >= 2 components, got n={n}")
    group = free_group(n)
    w = brunnian_word(n)
    rho_n = group.generator(n)

    def binom(a: DeckElement, b: DeckElement) -> RingElement:
        return RingElement(group, F2, {a: 1, b: 1})

    product = binom(rho_n.inv(), group.identity())
    product = product.mul(binom(w.pow(-k), w.pow(k)))
    product = product.mul(binom(group.identity(), rho_n))
    product = product.mul(binom(w.pow(-l), w.pow(l)))
    return RingElement.one(group, F2).add(product)


@lru_cache(maxsize=None)
def brunnian_image(k: int, l: int, n: int) -> RingElement:
    """The relator pushed into F2[s^{±1}, t^{±1}] by the unitriangular
    coordinates (s = image of w, t = image of xn)."""
    return apply_hom(brunnian_relator(k, l, n), BrunnianCoordinates(n))


def distinguish_brunnian_modules(k: int, l: int, kp: int, lp: int, n: int) -> bool:
    """True = the two Brunnian-link modules are provably non-isomorphic:
    their pushed-forward relators are non-associate in F2[s^{±1},t^{±1}]
    (and each is certifiably non-trivial: not a monomial unit).

    False means "not distinguished by this test", never "isomorphic";
    in particular unordered-equal parameter pairs return False.
    """
    for value in (k, l, kp, lp):
        if value < 1:
            raise PresentationError("winding numbers must be >= 1")
    if {k, l} == {kp, lp}:
        return False
    a = brunnian_image(k, l, n)
    b = brunnian_image(kp, lp, n)
    if is_monomial_unit(a) or is_monomial_unit(b):
        # would contradict nontriviality of the modules; refuse to distinguish
        return False
    return not are_associates(a, b)


# ---------------------------------------------------------------------------
# Brunnian 2-disk links: the homology constraint intersection.


def brunnian_disk_obstruction(n: int, vanishing_sets: dict[int, set[int]] | None = None) -> bool:
    """Model the difference class of two n-component disk fillings as an
    unknown vector (a_2, ..., a_n) of meridian coordinates.  Removing
    component k >= 2 forces the coordinates in vanishing_sets[k] to zero
    (default: every coordinate except a_k).  True iff the constraints
    force the whole vector to zero, i.e. the disks must be isotopic."""
    if n < 2:
        raise PresentationError(f"need n >= 2 components, got n={n}")
    coords = set(range(2, n + 1))
    if vanishing_sets is None:
        vanishing_sets = {key: coords - {key} for key in coords}
    forced: set[int] = set()
    for key, zeros in vanishing_sets.items():
        if key not in coords:
            raise PresentationError(f"removed component {key} out of range 2..{n}")
        forced |= zeros & coords
    return forced >= coords
