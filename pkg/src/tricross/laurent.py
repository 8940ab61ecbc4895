"""Integer-coefficient Laurent polynomials in a single variable A.

This is the value type of the verification oracle: exact arithmetic,
no floating point anywhere.  Polynomials are stored as sparse maps
from exponent to coefficient with zero coefficients never stored.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class Laurent:
    """A Laurent polynomial sum(c_e * A^e) with integer coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            if c:
                acc[e] = acc.get(e, 0) + c
                if not acc[e]:
                    del acc[e]
        self._terms = acc

    @classmethod
    def zero(cls) -> "Laurent":
        return cls()

    @classmethod
    def one(cls) -> "Laurent":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "Laurent":
        return cls({exponent: coefficient})

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def min_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return min(self._terms)

    def max_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return max(self._terms)

    def shifted(self, k: int) -> "Laurent":
        """Multiply by A^k."""
        return Laurent({e + k: c for e, c in self._terms.items()})

    def __add__(self, other: "Laurent") -> "Laurent":
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
            if not acc[e]:
                del acc[e]
        out = Laurent.__new__(Laurent)
        out._terms = acc
        return out

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __neg__(self) -> "Laurent":
        out = Laurent.__new__(Laurent)
        out._terms = {e: -c for e, c in self._terms.items()}
        return out

    def __mul__(self, other) -> "Laurent":
        if isinstance(other, int):
            if other == 0:
                return Laurent()
            out = Laurent.__new__(Laurent)
            out._terms = {e: c * other for e, c in self._terms.items()}
            return out
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
                if not acc[e]:
                    del acc[e]
        out = Laurent.__new__(Laurent)
        out._terms = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            raise ValueError("negative powers of a general Laurent polynomial")
        result = Laurent.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Laurent) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items()):
            if e == 0:
                parts.append(f"{c:+d}")
            elif e == 1:
                parts.append(f"{c:+d}*A")
            else:
                parts.append(f"{c:+d}*A^{e}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Laurent({dict(sorted(self._terms.items()))!r})"

    def key(self) -> tuple[tuple[int, int], ...]:
        """Deterministic hashable key, sorted by exponent."""
        return tuple(sorted(self._terms.items()))


#: The loop value delta = -A^2 - A^(-2) of the bracket state sum.
DELTA = Laurent({2: -1, -2: -1})


def kink_normalized(p: Laurent) -> Laurent:
    """Canonical representative of p modulo multiplication by (-A^3)^k.

    Twisting a diagram by a Reidemeister I move multiplies its bracket
    by (-A^3)^(+-1); comparing normalized values ignores exactly that.
    The representative shifts the minimum exponent into {0, 1, 2} and
    applies the matching sign.
    """
    if p.is_zero():
        return p
    m = p.min_exponent()
    k, r = divmod(m, 3)
    shifted = p.shifted(-(m - r))
    if k % 2:
        shifted = -shifted
    return shifted
