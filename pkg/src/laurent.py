from __future__ import annotations

from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union


Scalar = int


class LaurentPoly:
    """
    Exact Laurent polynomial in A with Python integer coefficients.

    Immutable; zero coefficients are never stored.
    """
    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[int, int]] = None) -> None:
        clean: Dict[int, int] = {}
        if terms:
            for exp, coeff in terms.items():
                if coeff:
                    clean[int(exp)] = int(coeff)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    def __reduce__(self):
        return (LaurentPoly, (dict(self._terms),))

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, value: int) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def loop_value(cls) -> "LaurentPoly":
        """The value -A^2 - A^-2 of a crossingless circle."""
        return cls({2: -1, -2: -1})

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, Union[int, str]]]) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in pairs})

    def terms(self) -> List[Tuple[int, int]]:
        """(exponent, coefficient) pairs in ascending exponent order."""
        return sorted(self._terms.items())

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def max_degree(self) -> Optional[int]:
        return max(self._terms) if self._terms else None

    @property
    def min_degree(self) -> Optional[int]:
        return min(self._terms) if self._terms else None

    @property
    def span(self) -> Optional[int]:
        """Degree spread; None for the zero polynomial."""
        if not self._terms:
            return None
        return max(self._terms) - min(self._terms)

    def reflect(self) -> "LaurentPoly":
        """Substitute A -> A^-1."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by A^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def __add__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        return _coerce(other) - self

    def __mul__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        other = _coerce(other)
        out: Dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("only non-negative powers of a Laurent polynomial are supported")
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"

    def to_text(self) -> str:
        """Human form, highest power first, e.g. `-1*A^5 + -1*A^-3 + 1*A^-7`."""
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*A^{e}" for e, c in sorted(self._terms.items(), reverse=True))

    def to_json(self) -> List[List[Union[int, str]]]:
        """Ascending `[[exp, "coeff"], ...]`; coefficients as decimal strings."""
        return [[e, str(c)] for e, c in self.terms()]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[Union[int, str]]]) -> "LaurentPoly":
        return cls.from_pairs((int(e), int(c)) for e, c in data)


def _coerce(value: Union[LaurentPoly, int]) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.constant(value)
    raise TypeError(f"cannot combine LaurentPoly with {type(value).__name__}")


def loop_power(k: int) -> LaurentPoly:
    """(-A^2 - A^-2)^k, cached for the small k that state sums need."""
    if k < len(_LOOP_POWERS):
        return _LOOP_POWERS[k]
    return LaurentPoly.loop_value() ** k


_LOOP_POWERS: List[LaurentPoly] = [LaurentPoly.loop_value() ** k for k in range(64)]
