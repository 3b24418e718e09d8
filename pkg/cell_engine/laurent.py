"""
Integer Laurent polynomials in one variable.
Used for Kazhdan-Lusztig polynomials (variable q) and for canonical-basis
structure constants (variable v with v^2 = q).
"""


class LaurentPoly:
    """
    Finitely supported map exponent -> nonzero integer coefficient.

    Instances are treated as immutable values; arithmetic returns new objects.
    """

    __slots__ = ("_coeffs", "var")

    def __init__(self, coeffs=None, var="q"):
        """
        Args:
            coeffs (dict or list, optional): exponent -> coefficient mapping, or a
                coefficient list starting at exponent 0
            var (str): Variable name used for printing
        """
        if coeffs is None:
            coeffs = {}
        elif isinstance(coeffs, (list, tuple)):
            coeffs = dict(enumerate(coeffs))
        self._coeffs = {int(e): int(c) for e, c in coeffs.items() if c != 0}
        self.var = var

    @classmethod
    def one(cls, var="q"):
        return cls({0: 1}, var)

    @classmethod
    def monomial(cls, exponent, coeff=1, var="q"):
        return cls({exponent: coeff}, var)

    @classmethod
    def zero(cls, var="q"):
        return cls({}, var)

    def items(self):
        return sorted(self._coeffs.items())

    def coeff(self, exponent):
        return self._coeffs.get(exponent, 0)

    def is_zero(self):
        return not self._coeffs

    def degree(self):
        """Highest exponent, or None for the zero polynomial."""
        return max(self._coeffs) if self._coeffs else None

    def valuation(self):
        """Lowest exponent, or None for the zero polynomial."""
        return min(self._coeffs) if self._coeffs else None

    def coefficients(self):
        """Coefficient list from exponent 0 to the degree; requires no negative exponents."""
        if not self._coeffs:
            return []
        if self.valuation() < 0:
            raise ValueError("coefficient list undefined for negative exponents")
        return [self._coeffs.get(e, 0) for e in range(self.degree() + 1)]

    def shift(self, k):
        """Multiply by var**k."""
        return LaurentPoly({e + k: c for e, c in self._coeffs.items()}, self.var)

    def scale(self, k):
        return LaurentPoly({e: c * k for e, c in self._coeffs.items()}, self.var)

    def bar(self):
        """Substitute var -> var**-1."""
        return LaurentPoly({-e: c for e, c in self._coeffs.items()}, self.var)

    def substitute_square(self, var="v"):
        """Rewrite a polynomial in q as one in v with q = v**2."""
        return LaurentPoly({2 * e: c for e, c in self._coeffs.items()}, var)

    def truncate_below(self, bound):
        """Keep the terms with exponent <= bound."""
        return LaurentPoly({e: c for e, c in self._coeffs.items() if e <= bound}, self.var)

    def is_nonnegative(self):
        return all(c > 0 for c in self._coeffs.values())

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.var)
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.var)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        out = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = LaurentPoly.one(self.var)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(sorted(self._coeffs.items())))

    def __bool__(self):
        return bool(self._coeffs)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        terms = []
        for e, c in sorted(self._coeffs.items(), reverse=True):
            if e == 0:
                mono = ""
            elif e == 1:
                mono = self.var
            else:
                mono = f"{self.var}^{e}"
            if mono == "":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text
