"""Exact arithmetic in Z[L, 1/L], Laurent polynomials in the Lefschetz symbol L.

A class is stored as a map from exponent to nonzero integer coefficient.
Values are immutable and hashable, and every operation is exact over Z;
division raises NotDivisible instead of ever returning an approximation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import NotDivisible, SingvalError

# hard cap on |exponent| so runaway loops fail loudly instead of eating RAM
MAX_EXPONENT = 10**6


def _check_exponent(e: int) -> int:
    if not isinstance(e, int) or isinstance(e, bool):
        raise TypeError(f"exponent must be int, got {type(e).__name__}")
    if abs(e) > MAX_EXPONENT:
        raise SingvalError(f"exponent {e} exceeds the safety cap {MAX_EXPONENT}")
    return e


class GrothendieckClass:
    """An element of Z[L, 1/L] in canonical form (no zero coefficients)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            _check_exponent(e)
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"coefficient must be int, got {type(c).__name__}")
            if c:
                acc[e] = acc.get(e, 0) + c
                if not acc[e]:
                    del acc[e]
        self._terms = dict(sorted(acc.items(), reverse=True))

    # -- basic queries ----------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def min_exp(self) -> int:
        if not self._terms:
            raise SingvalError("zero class has no minimal exponent")
        return min(self._terms)

    def max_exp(self) -> int:
        if not self._terms:
            raise SingvalError("zero class has no maximal exponent")
        return max(self._terms)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GrothendieckClass):
            return self._terms == other._terms
        if isinstance(other, int) and not isinstance(other, bool):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    # -- arithmetic (delegates to the functional API below) ----------------

    def __add__(self, other: "GrothendieckClass | int") -> "GrothendieckClass":
        return gc_add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self) -> "GrothendieckClass":
        return GrothendieckClass({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "GrothendieckClass | int") -> "GrothendieckClass":
        return gc_add(self, -_coerce(other))

    def __rsub__(self, other: int) -> "GrothendieckClass":
        return gc_add(_coerce(other), -self)

    def __mul__(self, other: "GrothendieckClass | int") -> "GrothendieckClass":
        return gc_mul(self, _coerce(other))

    __rmul__ = __mul__

    # -- text form ----------------------------------------------------------

    def __repr__(self) -> str:
        return f"GrothendieckClass({self._terms!r})"

    def __str__(self) -> str:
        return gc_to_text(self)


def _coerce(x: "GrothendieckClass | int") -> GrothendieckClass:
    if isinstance(x, GrothendieckClass):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return GrothendieckClass({0: x})
    raise TypeError(f"cannot treat {type(x).__name__} as a class in Z[L,1/L]")


GC_ZERO = GrothendieckClass()
GC_ONE = GrothendieckClass({0: 1})
GC_L = GrothendieckClass({1: 1})


def gc_int(n: int) -> GrothendieckClass:
    return GrothendieckClass({0: n})


def gc_monomial(e: int, c: int = 1) -> GrothendieckClass:
    """c * L^e"""
    return GrothendieckClass({e: c})


def gc_add(a: GrothendieckClass, b: GrothendieckClass) -> GrothendieckClass:
    out = dict(a._terms)
    for e, c in b._terms.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return GrothendieckClass(out)


def gc_mul(a: GrothendieckClass, b: GrothendieckClass) -> GrothendieckClass:
    out: dict[int, int] = {}
    for ea, ca in a._terms.items():
        for eb, cb in b._terms.items():
            e = ea + eb
            _check_exponent(e)
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return GrothendieckClass(out)


def gc_div_exact(a: GrothendieckClass, b: GrothendieckClass) -> GrothendieckClass:
    """Exact quotient a / b in Z[L, 1/L].

    Long division by descending exponent over Q; raises NotDivisible if a
    remainder survives, any quotient coefficient is non-integral, or the
    quotient would need exponents below min_exp(a) - min_exp(b) (i.e. the
    division does not terminate inside Laurent polynomials).
    """
    if b.is_zero():
        raise NotDivisible("division by zero class")
    if a.is_zero():
        return GC_ZERO
    lead_e = b.max_exp()
    lead_c = b._terms[lead_e]
    floor_e = a.min_exp() - b.min_exp()
    rem: dict[int, Fraction] = {e: Fraction(c) for e, c in a._terms.items()}
    quo: dict[int, Fraction] = {}
    while rem:
        e = max(rem)
        qe = e - lead_e
        if qe < floor_e:
            raise NotDivisible(f"{a} is not divisible by {b}")
        qc = rem[e] / lead_c
        quo[qe] = qc
        for be, bc in b._terms.items():
            k = qe + be
            s = rem.get(k, Fraction(0)) - qc * bc
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    out: dict[int, int] = {}
    for e, c in quo.items():
        if c.denominator != 1:
            raise NotDivisible(f"{a} is not divisible by {b} over Z")
        if c.numerator:
            out[e] = c.numerator
    return GrothendieckClass(out)


def gc_invert_L(a: GrothendieckClass) -> GrothendieckClass:
    """Substitute L -> 1/L (exponent sign flip)."""
    return GrothendieckClass({-e: c for e, c in a._terms.items()})


def gc_eval_rational(a: GrothendieckClass, q: int) -> Fraction:
    """Evaluate at L = q for an integer q >= 2, exactly."""
    if not isinstance(q, int) or isinstance(q, bool) or q < 2:
        raise SingvalError(f"evaluation point must be an integer >= 2, got {q!r}")
    total = Fraction(0)
    for e, c in a._terms.items():
        total += c * Fraction(q) ** e
    return total


# -- text and JSON forms ----------------------------------------------------


def _term_text(e: int, c: int, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    if e == 0:
        body = str(mag)
    else:
        pw = "L" if e == 1 else f"L^{e}"
        body = pw if mag == 1 else f"{mag}*{pw}"
    if first:
        return f"{sign}{body}"
    return f" {sign} {body}"


def gc_to_text(a: GrothendieckClass) -> str:
    """Readable form, terms by decreasing exponent, e.g. '3*L^2 - L^-1 + 7'."""
    if a.is_zero():
        return "0"
    parts = []
    for i, (e, c) in enumerate(a._terms.items()):
        parts.append(_term_text(e, c, i == 0))
    return "".join(parts)


def gc_to_json(a: GrothendieckClass) -> list[list]:
    """JSON form: [[exponent, coefficient-as-string], ...], decreasing exponent.

    Coefficients go through str so arbitrarily large integers survive JSON
    readers that parse numbers as doubles.
    """
    return [[e, str(c)] for e, c in a._terms.items()]


def gc_from_json(data: object) -> GrothendieckClass:
    if not isinstance(data, list):
        raise SingvalError(f"class JSON must be a list, got {type(data).__name__}")
    out: dict[int, int] = {}
    for item in data:
        if not (isinstance(item, list) and len(item) == 2):
            raise SingvalError(f"class JSON term must be [exp, coeff], got {item!r}")
        e, c = item
        if not isinstance(e, int) or isinstance(e, bool):
            raise SingvalError(f"class JSON exponent must be int, got {e!r}")
        try:
            ci = int(c)
        except (TypeError, ValueError):
            raise SingvalError(f"class JSON coefficient must be an integer string, got {c!r}")
        if e in out:
            raise SingvalError(f"class JSON repeats exponent {e}")
        if ci:
            out[e] = ci
    return GrothendieckClass(out)
