"""
Affine Weyl group module for the affine cell engine.
Elements of W_a = W ⋉ Q are stored as pairs (finite part, translation) acting by
x ↦ w·x + t. Provides lengths, descents, reduced words, balls, the Bruhat order
and the element ↔ alcove dictionary.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

import config
from rootdata import build_root_datum, parse_type

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('affine')


class DatumMismatchError(ValueError):
    """Raised when elements of different affine Weyl groups are combined."""


class IncompatibleAlcoveError(ValueError):
    """Raised for coordinate vectors that do not describe an alcove."""


class NotSpecialPointError(ValueError):
    """Raised for points where the root hyperplane translates do not all meet."""


class BallCapExceeded(ValueError):
    """Raised when a ball would exceed the configured element cap."""


@dataclass(frozen=True)
class AffineElt:
    """Element x ↦ w·x + t of W_a; w indexes the finite Weyl group of the datum."""
    w: int
    translation: tuple
    length: int = field(compare=False, default=-1)
    datum: str = field(compare=False, default="")

    @property
    def finite_part(self):
        return build_root_datum(*parse_type(self.datum)).weyl_group[self.w]


@dataclass(frozen=True)
class Alcove:
    """Integer coordinates k_α with k_α < ⟨x, α∨⟩ < k_α + 1, one per positive root."""
    coords: tuple

    def as_dict(self, datum):
        return {"".join(str(c) for c in root): k
                for root, k in zip(datum.positive_roots, self.coords)}


@dataclass(frozen=True)
class SpecialPoint:
    """Point where translates of all root hyperplanes meet; root coordinates."""
    point: tuple

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.point) + ")"


class AffineWeylGroup:
    """Affine Weyl group of a root datum with tables for the finite part."""

    def __init__(self, datum):
        """
        Initialize the group tables.

        Args:
            datum (RootDatum): Root datum
        """
        self.datum = datum
        self.name = datum.name
        self.rank = datum.rank
        weyl = datum.weyl_group
        self._matrices = [w.matrix for w in weyl]
        by_matrix = {w.matrix: w.index for w in weyl}

        n = len(weyl)
        self._mult = [[0] * n for _ in range(n)]
        for a in weyl:
            for b in weyl:
                rows = tuple(
                    tuple(sum(a.matrix[i][k] * b.matrix[k][j] for k in range(self.rank))
                          for j in range(self.rank))
                    for i in range(self.rank)
                )
                self._mult[a.index][b.index] = by_matrix[rows]
        self._inv = [row.index(0) for row in self._mult]

        # flag[w][r] = 1 when w⁻¹ sends the r-th positive root to a negative root
        self._neg_inv = []
        for w in weyl:
            negated = datum.negated_roots(weyl[self._inv[w.index]])
            self._neg_inv.append(tuple(int(r in negated) for r in range(datum.N)))
        self._chamber_by_pattern = {pattern: w for w, pattern in enumerate(self._neg_inv)}

        self.identity = self._make(0, (0,) * self.rank)
        beta = datum.positive_roots[datum.highest_short_root]
        reflection = self._root_reflection(beta)
        self.generators = [self._make(reflection, beta)]
        for i in range(1, self.rank + 1):
            self.generators.append(self._make(i, (0,) * self.rank))

        self._key_memo = {self.identity: ()}
        self._interval_memo = {self.identity: frozenset([self.identity])}
        logger.info(f"Affine Weyl group of type {self.name} ready ({self.rank + 1} generators)")

    def _root_reflection(self, beta):
        row = self.datum.pairings[self.datum.root_index[beta]]
        matrix = tuple(
            tuple(int(i == j) - beta[i] * row[j] for j in range(self.rank))
            for i in range(self.rank)
        )
        return next(w.index for w in self.datum.weyl_group if w.matrix == matrix)

    def _apply(self, w, vec):
        return tuple(sum(row[j] * vec[j] for j in range(self.rank)) for row in self._matrices[w])

    def _make(self, w, translation):
        translation = tuple(int(c) for c in translation)
        return AffineElt(w, translation, self._length(w, translation), self.name)

    def _length(self, w, translation):
        flags = self._neg_inv[w]
        total = 0
        for r, row in enumerate(self.datum.pairings):
            k = sum(row[j] * translation[j] for j in range(self.rank)) - flags[r]
            total += abs(k)
        return total

    def _check(self, *elements):
        for g in elements:
            if g.datum != self.name:
                raise DatumMismatchError(f"Element of type {g.datum} used in group {self.name}")

    # Group law

    def multiply(self, a, b):
        """
        Product a·b under (w₁, t₁)(w₂, t₂) = (w₁w₂, t₁ + w₁t₂).

        Args:
            a (AffineElt): Left factor
            b (AffineElt): Right factor

        Returns:
            AffineElt: Product with its length
        """
        self._check(a, b)
        moved = self._apply(a.w, b.translation)
        return self._make(self._mult[a.w][b.w],
                          tuple(a.translation[j] + moved[j] for j in range(self.rank)))

    def inverse(self, a):
        self._check(a)
        w_inv = self._inv[a.w]
        moved = self._apply(w_inv, a.translation)
        return self._make(w_inv, tuple(-c for c in moved))

    def length(self, a):
        """Length as the number of hyperplanes separating A₀ from a·A₀."""
        return self._length(a.w, a.translation)

    def from_finite(self, w):
        """Embed a WeylElt (or its index) into W_a."""
        index = w if isinstance(w, int) else w.index
        return self._make(index, (0,) * self.rank)

    def translation(self, vec):
        """Translation by an element of the root lattice Q."""
        return self._make(0, vec)

    def from_word(self, word):
        """
        Evaluate a word in the generators.

        Args:
            word (str or sequence): Generator indices (0 is s₀), or an element key

        Returns:
            AffineElt: Product of the generators
        """
        if isinstance(word, str):
            word = [] if word in ("e", "") else [int(c) for c in word]
        result = self.identity
        for s in word:
            if not 0 <= s <= self.rank:
                raise ValueError(f"Generator index {s} outside 0..{self.rank}")
            result = self.multiply(result, self.generators[s])
        return result

    def is_involution(self, a):
        return self.multiply(a, a) == self.identity

    # Descents and words

    def left_descents(self, a):
        return frozenset(s for s, g in enumerate(self.generators)
                         if self.multiply(g, a).length < a.length)

    def right_descents(self, a):
        return frozenset(s for s, g in enumerate(self.generators)
                         if self.multiply(a, g).length < a.length)

    def descents(self, a):
        """
        Left and right descent sets.

        Returns:
            tuple: (left, right) frozensets of generator indices
        """
        return self.left_descents(a), self.right_descents(a)

    def reduced_word(self, a):
        """Lexicographically smallest reduced word, built by stripping the smallest left descent."""
        self._check(a)
        path = []
        current = a
        while current not in self._key_memo:
            s = min(self.left_descents(current))
            path.append((current, s))
            current = self.multiply(self.generators[s], current)
        word = self._key_memo[current]
        for element, s in reversed(path):
            word = (s,) + word
            self._key_memo[element] = word
        return word

    def key(self, a):
        return "".join(str(s) for s in self.reduced_word(a)) or "e"

    # Balls

    def predicted_ball_size(self, radius):
        """
        Number of elements of length ≤ radius from the Poincaré series
        ∏ (1 + q + … + q^e) / (1 − q^e) over the exponents e.
        """
        series = np.zeros(radius + 1, dtype=np.int64)
        series[0] = 1
        for e in self.datum.exponents:
            series = np.convolve(series, np.ones(e + 1, dtype=np.int64))[:radius + 1]
            geometric = np.zeros(radius + 1, dtype=np.int64)
            geometric[::e] = 1
            series = np.convolve(series, geometric)[:radius + 1]
        return int(sum(series))

    def ball(self, radius):
        """
        All elements of length ≤ radius, sorted by (length, key).

        Args:
            radius (int): Length bound L ≥ 0

        Returns:
            list: AffineElt values
        """
        if radius < 0:
            raise ValueError("Ball radius must be nonnegative")
        predicted = self.predicted_ball_size(radius)
        if predicted > config.BALL_CAP:
            raise BallCapExceeded(
                f"Ball of radius {radius} in type {self.name} has {predicted} elements, "
                f"above the cap {config.BALL_CAP}. Lower the radius or raise CELLS_BALL_CAP."
            )

        layer = [self.identity]
        elements = [self.identity]
        for k in range(radius):
            seen = set()
            nxt = []
            for g in layer:
                for s in self.generators:
                    h = self.multiply(g, s)
                    if h.length == k + 1 and h not in seen:
                        seen.add(h)
                        nxt.append(h)
            elements.extend(nxt)
            layer = nxt

        elements.sort(key=lambda g: (g.length, self.reduced_word(g)))
        logger.info(f"Ball of radius {radius} in type {self.name}: {len(elements)} elements")
        return elements

    # Bruhat order

    def lower_interval(self, y):
        """
        Bruhat interval [e, y], via [e, y] = [e, sy] ∪ s·[e, sy] for a left descent s.

        Returns:
            frozenset: Elements x ≤ y
        """
        self._check(y)
        path = []
        current = y
        while current not in self._interval_memo:
            s = min(self.left_descents(current))
            path.append((current, s))
            current = self.multiply(self.generators[s], current)
        interval = self._interval_memo[current]
        for element, s in reversed(path):
            gen = self.generators[s]
            interval = interval | frozenset(self.multiply(gen, x) for x in interval)
            self._interval_memo[element] = interval
        return interval

    def bruhat_leq(self, x, y):
        if x.length > y.length:
            return False
        if x.length == y.length:
            return x == y
        return x in self.lower_interval(y)

    # Alcoves

    def action_alcove(self, a):
        """Coordinates of a·A₀: k_α = ⟨t, α∨⟩ − [w⁻¹α < 0]."""
        flags = self._neg_inv[a.w]
        return Alcove(tuple(
            sum(row[j] * a.translation[j] for j in range(self.rank)) - flags[r]
            for r, row in enumerate(self.datum.pairings)
        ))

    def alcove_of(self, a):
        """Alcove attached to a by the dictionary a ↦ a⁻¹·A₀."""
        return self.action_alcove(self.inverse(a))

    def element_of_alcove(self, alcove):
        """
        Inverse of alcove_of.

        Args:
            alcove (Alcove): Alcove coordinates in positive-root order

        Returns:
            AffineElt: The unique g with g⁻¹·A₀ equal to the alcove
        """
        coords = tuple(alcove.coords)
        if len(coords) != self.datum.N:
            raise IncompatibleAlcoveError(f"Expected {self.datum.N} coordinates, got {len(coords)}")
        simple_idx = [self.datum.root_index[r] for r in self.datum.simple_roots]
        weights = self.datum.fundamental_weights
        for w in range(len(self._matrices)):
            flags = self._neg_inv[w]
            rhs = [coords[simple_idx[i]] + flags[simple_idx[i]] for i in range(self.rank)]
            t = [sum(weights[i][j] * rhs[i] for i in range(self.rank)) for j in range(self.rank)]
            if any(Fraction(c).denominator != 1 for c in t):
                continue
            candidate = self._make(w, t)
            if self.action_alcove(candidate).coords == coords:
                return self.inverse(candidate)
        raise IncompatibleAlcoveError(f"Coordinates {coords} violate the alcove compatibility conditions")

    def chamber_of(self, alcove):
        """The w ∈ W whose chamber w·C⁺ contains the alcove."""
        pattern = tuple(int(k < 0) for k in alcove.coords)
        if pattern not in self._chamber_by_pattern:
            raise IncompatibleAlcoveError(f"Coordinates {alcove.coords} lie in no Weyl chamber")
        return self.datum.weyl_group[self._chamber_by_pattern[pattern]]

    def is_dominant(self, alcove):
        return all(k >= 0 for k in alcove.coords)

    def interior_point(self, alcove):
        """The point g(ρ/h) of the alcove g·A₀; exact rationals."""
        h = self.inverse(self.element_of_alcove(alcove))
        base = tuple(c / self.datum.h for c in self.datum.rho)
        image = self._apply(h.w, base)
        return tuple(image[j] + h.translation[j] for j in range(self.rank))

    def alcove_vertices(self, alcove):
        """Vertices of the alcove: images of 0 and ω_i / m_i where β∨ = Σ m_i α_i∨."""
        h = self.inverse(self.element_of_alcove(alcove))
        marks = self.datum.coroots[self.datum.highest_short_root]
        base = [tuple(Fraction(0) for _ in range(self.rank))]
        for i in range(self.rank):
            base.append(tuple(c / marks[i] for c in self.datum.fundamental_weights[i]))
        out = []
        for vertex in base:
            image = self._apply(h.w, vertex)
            out.append(tuple(Fraction(image[j]) + h.translation[j] for j in range(self.rank)))
        return out

    def special_point(self, point):
        """
        Validate a special point.

        Args:
            point (sequence): Root coordinates (ints, Fractions or strings)

        Returns:
            SpecialPoint: Validated point
        """
        point = tuple(Fraction(c) for c in point)
        if len(point) != self.rank:
            raise NotSpecialPointError(f"Point {point} does not have {self.rank} coordinates")
        for i in range(self.rank):
            if self.datum.pair_simple(point, i).denominator != 1:
                raise NotSpecialPointError(
                    f"Point ({', '.join(str(c) for c in point)}) pairs non-integrally with α{i + 1}∨"
                )
        return SpecialPoint(point)

    def alcoves_around(self, v):
        """
        The |W| alcoves whose closures contain v, labelled by w ↦ v + w·A₀.

        Args:
            v (SpecialPoint or sequence): Special point

        Returns:
            list: (WeylElt, Alcove) pairs in Weyl-group order
        """
        if not isinstance(v, SpecialPoint):
            v = self.special_point(v)
        pairings = [self.datum.pair(v.point, r) for r in range(self.datum.N)]
        out = []
        for w in self.datum.weyl_group:
            flags = self._neg_inv[w.index]
            coords = tuple(int(pairings[r]) - flags[r] for r in range(self.datum.N))
            out.append((w, Alcove(coords)))
        return out

    # Parabolic subgroups

    def parabolic_subgroup(self, subset):
        """
        Elements of the finite standard parabolic subgroup W_J, J ⊊ {0, …, rank}.

        Returns:
            list: Elements sorted by length
        """
        subset = sorted(set(subset))
        if len(subset) > self.rank:
            raise ValueError("A proper subset of the generators is required")
        gens = [self.generators[s] for s in subset]
        found = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = self.multiply(g, s)
                    if h not in found:
                        found.add(h)
                        nxt.append(h)
            frontier = nxt
        return sorted(found, key=lambda g: (g.length, g.w, g.translation))

    def longest_in(self, subset):
        return self.parabolic_subgroup(subset)[-1]

    @property
    def full_rank_parabolics(self):
        """Subsets J of size rank with W_J isomorphic to W, i.e. |W_J| = |W|."""
        out = []
        for subset in combinations(range(self.rank + 1), self.rank):
            if len(self.parabolic_subgroup(subset)) == self.datum.weyl_order:
                out.append(frozenset(subset))
        return out

    # Serialization

    def element_record(self, a):
        """JSON-ready description of an element (one ball-dump line)."""
        left, right = self.descents(a)
        return {
            "word": self.key(a),
            "finite_part": self.datum.weyl_group[a.w].key,
            "translation": list(a.translation),
            "length": a.length,
            "left_descents": sorted(left),
            "right_descents": sorted(right),
            "alcove_coords": list(self.alcove_of(a).coords),
        }


@lru_cache(maxsize=None)
def affine_group(type_name):
    """Shared AffineWeylGroup for a type name such as "A2"."""
    return AffineWeylGroup(build_root_datum(*parse_type(type_name)))


def group_of(datum):
    return affine_group(datum.name)


def multiply(a, b):
    if a.datum != b.datum:
        raise DatumMismatchError(f"Cannot multiply elements of types {a.datum} and {b.datum}")
    return affine_group(a.datum).multiply(a, b)


def inverse(a):
    return affine_group(a.datum).inverse(a)


def length(a):
    return affine_group(a.datum).length(a)


def descents(a):
    return affine_group(a.datum).descents(a)


def ball(datum, radius):
    return group_of(datum).ball(radius)


def bruhat_leq(x, y):
    if x.datum != y.datum:
        raise DatumMismatchError(f"Cannot compare elements of types {x.datum} and {y.datum}")
    return affine_group(x.datum).bruhat_leq(x, y)


def alcove_of(a):
    return affine_group(a.datum).alcove_of(a)


def element_of_alcove(datum, alcove):
    return group_of(datum).element_of_alcove(alcove)


def chamber_of(datum, alcove):
    return group_of(datum).chamber_of(alcove)


def alcoves_around(datum, v):
    return group_of(datum).alcoves_around(v)
