"""
Hecke algebra module for the affine cell engine.
Computes Kazhdan-Lusztig polynomials P_{x,y} (in q), μ-coefficients, products of
canonical basis elements C′ (in v with v^2 = q), a-invariants and the
distinguished-involution test.

Normalization: C′_w = v^{-ℓ(w)} Σ_{x ≤ w} P_{x,w}(v^2) T_x, with
T_s^2 = (v^2 - 1) T_s + v^2. Structure constants h_{x,y,z} then have
nonnegative coefficients.
"""

import logging
from dataclasses import dataclass, field

from laurent import LaurentPoly

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('hecke')

ONE = LaurentPoly.one("q")
ZERO = LaurentPoly.zero("q")
V_PLUS_V_INV = LaurentPoly({1: 1, -1: 1}, "v")


class KLResourceError(RuntimeError):
    """Raised when a Kazhdan-Lusztig computation exceeds its resources."""


class KLInvariantError(ValueError):
    """Raised when a computed polynomial violates the degree bound or positivity."""


@dataclass(frozen=True)
class StructureConstant:
    """Coefficient h of C′_z in C′_x C′_y."""
    x: object
    y: object
    z: object
    h: LaurentPoly


@dataclass
class ProductExpansion:
    """Expansion of C′_x C′_y; partial when terms beyond the window were dropped."""
    terms: dict
    partial: bool = False
    dropped: int = 0

    def coefficient(self, z):
        return self.terms[z].h if z in self.terms else LaurentPoly.zero("v")


@dataclass
class AInvariantStages:
    """Maximal v-degrees of structure constants per element, for each product-length stage."""
    radius: int
    stages: tuple
    values: dict = field(default_factory=dict)

    def value(self, z, stage=None):
        stage = self.radius if stage is None else stage
        return self.values.get(stage, {}).get(z)


class KLTable:
    """
    Memoized Kazhdan-Lusztig polynomials for one affine Weyl group.

    Pairs are computed on demand by the descent recursion; fill() computes a
    whole window bottom-up.
    """

    def __init__(self, group):
        """
        Initialize an empty table.

        Args:
            group (AffineWeylGroup): Group the elements belong to
        """
        self.group = group
        self.datum = group.datum
        self.memo = {}
        self._mu_below = {}
        self._products = {}

    def __len__(self):
        return len(self.memo)

    # Polynomials

    def kl_polynomial(self, x, y):
        """
        P_{x,y} as a polynomial in q.

        Args:
            x (AffineElt): Lower element
            y (AffineElt): Upper element

        Returns:
            LaurentPoly: P_{x,y}, zero unless x ≤ y
        """
        if x == y:
            return ONE
        if x.length >= y.length:
            return ZERO
        found = self.memo.get((x, y))
        if found is not None:
            return found
        if not self.group.bruhat_leq(x, y):
            return ZERO
        try:
            return self._compute(x, y)
        except RecursionError:
            raise KLResourceError(
                f"Recursion limit reached computing P({self.group.key(x)}, {self.group.key(y)})"
            )

    def _compute(self, x, y):
        group = self.group
        s = min(group.left_descents(y))
        gen = group.generators[s]
        v = group.multiply(gen, y)
        sx = group.multiply(gen, x)
        c = 1 if sx.length < x.length else 0

        result = self.kl_polynomial(sx, v).shift(1 - c) + self.kl_polynomial(x, v).shift(c)
        for z, m in self.mu_below(v):
            if z.length < x.length:
                continue
            if group.multiply(gen, z).length > z.length:
                continue
            p_xz = self.kl_polynomial(x, z)
            if p_xz:
                result = result - p_xz.shift((y.length - z.length) // 2).scale(m)

        self._validate(x, y, result)
        self.memo[(x, y)] = result
        return result

    def _validate(self, x, y, poly):
        gap = y.length - x.length
        bound = (gap - 1) // 2
        if poly.coeff(0) != 1 or not poly.is_nonnegative() or poly.degree() > bound:
            raise KLInvariantError(
                f"P({self.group.key(x)}, {self.group.key(y)}) = {poly} violates "
                f"degree bound {bound} or positivity"
            )

    def mu(self, x, y):
        """
        μ(x, y): coefficient of q^{(ℓ(y)-ℓ(x)-1)/2} in P_{x,y} for x < y.

        The function is extended symmetrically (μ(x, y) = μ(y, x)) and is 0 for
        equal or incomparable elements.
        """
        if x.length > y.length:
            x, y = y, x
        gap = y.length - x.length
        if gap % 2 == 0:
            return 0
        return self.kl_polynomial(x, y).coeff((gap - 1) // 2)

    def mu_below(self, y):
        """Pairs (z, μ(z, y)) with z < y and μ nonzero."""
        found = self._mu_below.get(y)
        if found is None:
            found = []
            for z in self.group.lower_interval(y):
                if (y.length - z.length) % 2 == 1:
                    m = self.mu(z, y)
                    if m:
                        found.append((z, m))
            found.sort(key=lambda item: (item[0].length, item[0].w, item[0].translation))
            self._mu_below[y] = found
        return found

    def delta(self, w):
        """Degree of P_{1,w}."""
        return self.kl_polynomial(self.group.identity, w).degree()

    def fill(self, elements):
        """
        Compute P_{x,y} for every y in elements and every x ≤ y, by increasing ℓ(y).

        Args:
            elements (iterable): AffineElt values

        Returns:
            int: Number of stored pairs
        """
        ordered = sorted(elements, key=lambda g: g.length)
        for y in ordered:
            for x in sorted(self.group.lower_interval(y), key=lambda g: g.length):
                self.kl_polynomial(x, y)
            self.mu_below(y)
        logger.info(f"KL table for {self.group.name}: {len(self.memo)} pairs over {len(ordered)} elements")
        return len(self.memo)

    # Persistence rows

    def rows(self):
        """Rows [x_key, y_key, coefficients] sorted by keys."""
        out = [[self.group.key(x), self.group.key(y), poly.coefficients()]
               for (x, y), poly in self.memo.items()]
        out.sort(key=lambda row: (len(row[1]), row[1], len(row[0]), row[0]))
        return out

    def load_rows(self, rows):
        """Seed the memo from stored rows; returns the number loaded."""
        loaded = 0
        for x_key, y_key, coeffs in rows:
            x = self.group.from_word(x_key)
            y = self.group.from_word(y_key)
            self.memo[(x, y)] = LaurentPoly(list(coeffs), "q")
            loaded += 1
        return loaded

    # Canonical basis products

    def generator_times(self, s, vector):
        """
        Left multiplication of a C′-combination by C′_s.

        Args:
            s (int): Generator index
            vector (dict): element -> LaurentPoly in v

        Returns:
            dict: element -> LaurentPoly in v
        """
        group = self.group
        gen = group.generators[s]
        out = {}

        def add(key, poly):
            total = out.get(key)
            total = poly if total is None else total + poly
            if total:
                out[key] = total
            else:
                out.pop(key, None)

        for w, coef in vector.items():
            sw = group.multiply(gen, w)
            if sw.length > w.length:
                add(sw, coef)
                for z, m in self.mu_below(w):
                    if group.multiply(gen, z).length < z.length:
                        add(z, coef.scale(m))
            else:
                add(w, coef * V_PLUS_V_INV)
        return out

    def _product(self, x, y):
        found = self._products.get((x, y))
        if found is not None:
            return found
        if x.length == 0:
            result = {y: LaurentPoly.one("v")}
        else:
            group = self.group
            s = min(group.left_descents(x))
            shorter = group.multiply(group.generators[s], x)
            result = self.generator_times(s, self._product(shorter, y))
            for z, m in self.mu_below(shorter):
                if group.multiply(group.generators[s], z).length < z.length:
                    for w, coef in self._product(z, y).items():
                        total = result.get(w, LaurentPoly.zero("v")) - coef.scale(m)
                        if total:
                            result[w] = total
                        else:
                            result.pop(w, None)
        self._products[(x, y)] = result
        return result

    def kl_product(self, x, y, radius=None):
        """
        Expansion of C′_x C′_y in the canonical basis.

        Args:
            x (AffineElt): Left factor
            y (AffineElt): Right factor
            radius (int, optional): Window radius; terms beyond it are dropped
                and the result is flagged partial

        Returns:
            ProductExpansion: Structure constants keyed by z
        """
        raw = self._product(x, y)
        terms = {}
        dropped = 0
        for z, h in raw.items():
            if radius is not None and z.length > radius:
                dropped += 1
                continue
            terms[z] = StructureConstant(x, y, z, h)
        partial = radius is not None and x.length + y.length > radius
        if partial:
            logger.warning(
                f"Product of {self.group.key(x)} and {self.group.key(y)} leaves the window "
                f"of radius {radius}; {dropped} terms dropped"
            )
        return ProductExpansion(terms, partial, dropped)

    # a-invariants

    def a_stages(self, radius):
        """
        Maximal deg_v h_{x,y,z} over products with ℓ(x)+ℓ(y) ≤ stage, for the
        stages radius-4, radius-2 and radius.

        Args:
            radius (int): Largest total length of the factors

        Returns:
            AInvariantStages: Per-stage maxima keyed by z
        """
        stages = tuple(r for r in (radius - 4, radius - 2, radius) if r >= 0)
        result = AInvariantStages(radius, stages, {r: {} for r in stages})
        elements = self.group.ball(radius)
        count = 0
        for x in elements:
            for y in elements:
                total = x.length + y.length
                if total > radius:
                    break
                count += 1
                for z, h in self._product(x, y).items():
                    degree = h.degree()
                    for r in stages:
                        if total <= r:
                            table = result.values[r]
                            if degree > table.get(z, -1):
                                table[z] = degree
        logger.info(f"a-invariant stages {stages} for {self.group.name} from {count} products")
        return result

    def a_invariant(self, z, radius, stages=None):
        """
        a(z) from the products of total length ≤ radius.

        Returns:
            tuple: (value, certified); certified when value is N or all stages agree
        """
        if stages is None:
            stages = self.a_stages(radius)
        values = [stages.value(z, r) for r in stages.stages]
        value = values[-1] if values[-1] is not None else 0
        certified = value == self.datum.N or (
            len(values) == 3 and all(v == value for v in values)
        )
        if not certified:
            logger.warning(f"a({self.group.key(z)}) = {value} is not certified")
        return value, certified

    def is_distinguished(self, w, a_value, certified=True):
        """
        Distinguished test a(w) = ℓ(w) - 2δ(w).

        Args:
            w (AffineElt): Candidate element
            a_value (int): a-invariant of w (or of its cell)
            certified (bool): Whether a_value is certified

        Returns:
            tuple: (flag, certified)
        """
        flag = a_value == w.length - 2 * self.delta(w)
        if flag and certified and not self.group.is_involution(w):
            raise KLInvariantError(f"Distinguished element {self.group.key(w)} is not an involution")
        return flag, certified


def kl_polynomial(table, x, y):
    return table.kl_polynomial(x, y)


def mu(table, x, y):
    return table.mu(x, y)


def delta(table, w):
    return table.delta(w)


def kl_product(table, x, y, radius=None):
    return table.kl_product(x, y, radius)


def a_invariant(table, z, radius):
    return table.a_invariant(z, radius)


def is_distinguished(table, w, radius):
    """
    Distinguished test for w with a(w) taken from the products inside the window.

    Args:
        table (KLTable): Table filled on a ball containing w
        w (AffineElt): Candidate element
        radius (int): Window bound on ℓ(x) + ℓ(y) for the a-invariant

    Returns:
        tuple: (flag, certified); certified follows the a-invariant
    """
    value, certified = table.a_invariant(w, radius)
    return table.is_distinguished(w, value, certified)
