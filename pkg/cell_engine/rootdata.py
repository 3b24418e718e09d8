"""
Root data module for the affine cell engine.
Builds immutable root-system data (roots, coroots, weights, finite Weyl group)
for the supported irreducible types from their Cartan matrices.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('rootdata')

# Bourbaki numbering; row i pairs with the simple coroot of α_i
CARTAN_MATRICES = {
    ("A", 1): ((2,),),
    ("A", 2): ((2, -1), (-1, 2)),
    ("A", 3): ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    ("B", 2): ((2, -1), (-2, 2)),
    ("B", 3): ((2, -1, 0), (-1, 2, -1), (0, -2, 2)),
    ("C", 3): ((2, -1, 0), (-1, 2, -2), (0, -1, 2)),
    ("G", 2): ((2, -3), (-1, 2)),
}


class UnsupportedTypeError(ValueError):
    """Raised for a (series, rank) pair outside the supported table."""


def supported_types():
    """Names of the supported types, e.g. ["A1", "A2", ...]."""
    return [f"{series}{rank}" for series, rank in sorted(CARTAN_MATRICES)]


def parse_type(name):
    """
    Split a type name such as "G2" into its series letter and rank.

    Args:
        name (str): Type name

    Returns:
        tuple: (series, rank)
    """
    name = name.strip().upper()
    if len(name) < 2 or not name[1:].isdigit():
        raise UnsupportedTypeError(
            f"Malformed type '{name}'. Supported types: {', '.join(supported_types())}"
        )
    return name[0], int(name[1:])


@dataclass(frozen=True)
class WeylElt:
    """Element of the finite Weyl group, identified by its matrix on root coordinates."""
    matrix: tuple
    word: tuple = field(compare=False)
    index: int = field(compare=False, default=-1)

    @property
    def length(self):
        return len(self.word)

    @property
    def key(self):
        return "".join(str(i) for i in self.word) or "e"

    def apply(self, vec):
        """Act on a vector given in simple-root coordinates."""
        return tuple(sum(row[j] * vec[j] for j in range(len(vec))) for row in self.matrix)


@dataclass(frozen=True)
class RootDatum:
    """Immutable root-system context; all vectors are in simple-root coordinates."""
    series: str
    rank: int
    cartan: tuple
    symmetrizer: tuple
    positive_roots: tuple
    coroots: tuple
    pairings: tuple
    fundamental_weights: tuple
    rho: tuple
    N: int
    h: int
    weyl_order: int
    exponents: tuple
    highest_root: int
    highest_short_root: int
    weyl_group: tuple = field(repr=False, compare=False, default=())
    root_index: dict = field(repr=False, compare=False, default_factory=dict)

    @property
    def name(self):
        return f"{self.series}{self.rank}"

    @property
    def simple_roots(self):
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    def pair(self, x, root):
        """
        Pairing ⟨x, β∨⟩ of a vector with the coroot of a positive root.

        Args:
            x (tuple): Vector in simple-root coordinates (ints or Fractions)
            root (int): Index into positive_roots

        Returns:
            int or Fraction: Exact pairing
        """
        row = self.pairings[root]
        return sum(row[j] * x[j] for j in range(self.rank))

    def pair_simple(self, x, i):
        """Pairing ⟨x, α_i∨⟩ with the i-th simple coroot (0-based)."""
        row = self.cartan[i]
        return sum(row[j] * x[j] for j in range(self.rank))

    def signed_root(self, vec):
        """
        Locate a root by its coordinates.

        Returns:
            tuple: (index of the positive root ±vec, +1 or -1)
        """
        vec = tuple(vec)
        if vec in self.root_index:
            return self.root_index[vec], 1
        return self.root_index[tuple(-c for c in vec)], -1

    def simple_reflection(self, i):
        """WeylElt of the simple reflection s_i, with i in 1..rank."""
        return self.weyl_group[i]

    @property
    def identity(self):
        return self.weyl_group[0]

    @property
    def longest(self):
        return max(self.weyl_group, key=lambda w: w.length)

    def negated_roots(self, w):
        """Indices of positive roots β with wβ < 0; their number is ℓ(w)."""
        out = []
        for idx, beta in enumerate(self.positive_roots):
            if self.signed_root(w.apply(beta))[1] < 0:
                out.append(idx)
        return frozenset(out)

    def to_dict(self):
        """JSON-serializable form of the datum."""
        def frac(vec):
            return [str(c) for c in vec]
        return {
            "type": self.name,
            "cartan": [list(r) for r in self.cartan],
            "symmetrizer": list(self.symmetrizer),
            "positive_roots": [list(r) for r in self.positive_roots],
            "coroots": [list(r) for r in self.coroots],
            "fundamental_weights": [frac(w) for w in self.fundamental_weights],
            "rho": frac(self.rho),
            "N": self.N,
            "h": self.h,
            "weyl_order": self.weyl_order,
            "exponents": list(self.exponents),
        }


def _symmetrizer(cartan):
    """Half squared lengths d_i with d_i a_ij = d_j a_ji, scaled to coprime integers."""
    rank = len(cartan)
    d = [None] * rank
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(rank):
            if j != i and cartan[i][j] != 0 and d[j] is None:
                d[j] = d[i] * cartan[i][j] / cartan[j][i]
                stack.append(j)
    denominators = np.lcm.reduce([x.denominator for x in d])
    ints = [int(x * int(denominators)) for x in d]
    divisor = int(np.gcd.reduce(ints))
    return tuple(x // divisor for x in ints)


def _positive_roots(cartan):
    """Close the simple roots under simple reflections that keep them positive."""
    rank = len(cartan)
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(rank):
                c = sum(cartan[i][j] * beta[j] for j in range(rank))
                image = tuple(beta[j] - (c if j == i else 0) for j in range(rank))
                if all(x >= 0 for x in image) and any(image) and image not in found:
                    found.add(image)
                    nxt.append(image)
        frontier = nxt
    return tuple(sorted(found))


def _exponents(roots):
    """Exponents read off the partition of positive roots by height."""
    heights = [sum(r) for r in roots]
    top = max(heights)
    counts = [heights.count(k) for k in range(1, top + 2)]
    exps = []
    for k in range(1, top + 1):
        exps.extend([k] * (counts[k - 1] - counts[k]))
    return tuple(exps)


def _enumerate_weyl(cartan):
    """Breadth-first enumeration of W by right multiplication with simple reflections."""
    rank = len(cartan)
    eye = np.eye(rank, dtype=np.int64)
    gens = []
    for i in range(rank):
        m = eye.copy()
        m[i, :] -= np.array(cartan[i], dtype=np.int64)
        gens.append(m)

    def freeze(m):
        return tuple(tuple(int(x) for x in row) for row in m)

    elements = [(eye, ())]
    seen = {freeze(eye)}
    frontier = [(eye, ())]
    while frontier:
        nxt = []
        for m, word in frontier:
            for i, g in enumerate(gens):
                prod = m @ g
                key = freeze(prod)
                if key not in seen:
                    seen.add(key)
                    nxt.append((prod, word + (i + 1,)))
        elements.extend(nxt)
        frontier = nxt
    return elements


@lru_cache(maxsize=None)
def build_root_datum(series, rank):
    """
    Construct the root datum of an irreducible type.

    Args:
        series (str): Type letter (A, B, C, G)
        rank (int): Rank

    Returns:
        RootDatum: Fully populated, immutable datum
    """
    series = series.upper()
    if (series, rank) not in CARTAN_MATRICES:
        raise UnsupportedTypeError(
            f"Unsupported type {series}{rank}. Supported types: {', '.join(supported_types())}"
        )

    cartan = CARTAN_MATRICES[(series, rank)]
    sym = _symmetrizer(cartan)
    roots = _positive_roots(cartan)

    coroots = []
    pairings = []
    for beta in roots:
        norm = sum(beta[i] * beta[j] * sym[i] * cartan[i][j]
                   for i in range(rank) for j in range(rank))
        half = Fraction(norm, 2)
        co = tuple(int(Fraction(beta[j] * sym[j]) / half) for j in range(rank))
        coroots.append(co)
        pairings.append(tuple(sum(co[i] * cartan[i][j] for i in range(rank))
                              for j in range(rank)))

    inverse = sympy.Matrix(cartan).inv()
    weights = tuple(
        tuple(Fraction(int(inverse[j, i].p), int(inverse[j, i].q)) for j in range(rank))
        for i in range(rank)
    )
    rho = tuple(sum(w[j] for w in weights) for j in range(rank))

    heights = [sum(r) for r in roots]
    highest = heights.index(max(heights))
    co_heights = [sum(c) for c in coroots]
    highest_short = co_heights.index(max(co_heights))

    raw = _enumerate_weyl(cartan)
    weyl = tuple(
        WeylElt(matrix=tuple(tuple(int(x) for x in row) for row in m), word=word, index=k)
        for k, (m, word) in enumerate(raw)
    )

    datum = RootDatum(
        series=series,
        rank=rank,
        cartan=cartan,
        symmetrizer=sym,
        positive_roots=roots,
        coroots=tuple(coroots),
        pairings=tuple(pairings),
        fundamental_weights=weights,
        rho=rho,
        N=len(roots),
        h=max(heights) + 1,
        weyl_order=len(weyl),
        exponents=_exponents(roots),
        highest_root=highest,
        highest_short_root=highest_short,
        weyl_group=weyl,
        root_index={r: k for k, r in enumerate(roots)},
    )
    logger.info(f"Built root datum {datum.name}: N={datum.N}, h={datum.h}, |W|={datum.weyl_order}")
    return datum


def enumerate_weyl(datum):
    """
    All elements of the finite Weyl group.

    Args:
        datum (RootDatum): Root datum

    Returns:
        tuple: WeylElt values, identity first, in breadth-first order
    """
    return datum.weyl_group


def weyl_element(datum, matrix):
    """Look up the WeylElt with the given matrix."""
    for w in datum.weyl_group:
        if w.matrix == matrix:
            return w
    raise ValueError("Matrix does not belong to the Weyl group")


def weyl_multiply(datum, a, b):
    """Product of two WeylElt values."""
    rows = tuple(
        tuple(sum(a.matrix[i][k] * b.matrix[k][j] for k in range(datum.rank))
              for j in range(datum.rank))
        for i in range(datum.rank)
    )
    return weyl_element(datum, rows)


def weight_from_fundamental(datum, coords):
    """
    Convert fundamental-weight coordinates to simple-root coordinates.

    Args:
        datum (RootDatum): Root datum
        coords (sequence): Integers m_i of λ = Σ m_i ω_i

    Returns:
        tuple: Fractions in simple-root coordinates
    """
    return tuple(
        sum(Fraction(coords[i]) * datum.fundamental_weights[i][j] for i in range(datum.rank))
        for j in range(datum.rank)
    )


def fundamental_from_weight(datum, lam):
    """Fundamental-weight coordinates ⟨λ, α_i∨⟩ of a vector in root coordinates."""
    return tuple(datum.pair_simple(lam, i) for i in range(datum.rank))


def dot_action(datum, w, lam):
    """
    Dot action w·λ = w(λ+ρ) − ρ.

    Args:
        datum (RootDatum): Root datum
        w (WeylElt or AffineElt): Group element; an affine element acts by x ↦ wx + t
        lam (tuple): Weight in simple-root coordinates

    Returns:
        tuple: Fractions in simple-root coordinates
    """
    shifted = tuple(Fraction(lam[j]) + datum.rho[j] for j in range(datum.rank))
    if isinstance(w, WeylElt):
        image = w.apply(shifted)
    else:
        image = datum.weyl_group[w.w].apply(shifted)
        image = tuple(image[j] + w.translation[j] for j in range(datum.rank))
    return tuple(image[j] - datum.rho[j] for j in range(datum.rank))
