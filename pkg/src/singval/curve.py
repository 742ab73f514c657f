"""Branchwise power series, ring and ideal presentations for curve germs.

The ambient object is a product of r formal power series lines over Q.
A BranchSeries is one coordinate: exact rational coefficients plus an
optional precision bound (coefficients of t^e are known only for e < prec;
prec None means the series is known exactly and has finite support).
An element of the product is a plain tuple of r BranchSeries.

CurvePresentation holds normalized algebra generators for the local ring;
FracIdeal holds module generators inside the product, together with a
monomial shift so that modules with poles still have a nonnegative model.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    BoundSearchExceeded,
    PrecisionExhausted,
    SchemaError,
    SingvalError,
    ZeroDivisor,
)
from .lattice import Vec, vec_add, vec_check, vec_min

_INF = None  # precision None reads as "known exactly"


class BranchSeries:
    """One branch coordinate: sum of c_e t^e with exact Fraction c_e.

    Coefficients with e >= prec are unknown and never stored.  prec None
    means exact: the stored support is the whole series.
    """

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs: Mapping[int, Fraction | int] | Iterable[tuple[int, Fraction | int]] = (), prec: int | None = None):
        if prec is not None and (not isinstance(prec, int) or isinstance(prec, bool)):
            raise TypeError("prec must be int or None")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean: dict[int, Fraction] = {}
        for e, c in items:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError(f"exponent must be int, got {e!r}")
            q = Fraction(c)
            if q and (prec is None or e < prec):
                clean[e] = clean.get(e, Fraction(0)) + q
                if not clean[e]:
                    del clean[e]
        self.coeffs = clean
        self.prec = prec

    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.prec is None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BranchSeries):
            return NotImplemented
        return self.coeffs == other.coeffs and self.prec == other.prec

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.coeffs.items())), self.prec))

    def __repr__(self) -> str:
        if not self.coeffs:
            body = "0"
        else:
            body = " + ".join(f"{c}*t^{e}" for e, c in sorted(self.coeffs.items()))
        tail = "" if self.prec is None else f" + O(t^{self.prec})"
        return f"<{body}{tail}>"


BS_ZERO = BranchSeries()
BS_ONE = BranchSeries({0: 1})


def bs_monomial(e: int, c: Fraction | int = 1) -> BranchSeries:
    return BranchSeries({e: c})


def _prec_min(p: int | None, q: int | None) -> int | None:
    if p is None:
        return q
    if q is None:
        return p
    return min(p, q)


def bs_add(a: BranchSeries, b: BranchSeries) -> BranchSeries:
    prec = _prec_min(a.prec, b.prec)
    out = dict(a.coeffs)
    for e, c in b.coeffs.items():
        out[e] = out.get(e, Fraction(0)) + c
    return BranchSeries(out, prec)


def bs_scale(a: BranchSeries, q: Fraction | int) -> BranchSeries:
    q = Fraction(q)
    if not q:
        # scaling by 0 yields an exact zero regardless of missing tail
        return BS_ZERO
    return BranchSeries({e: c * q for e, c in a.coeffs.items()}, a.prec)


def bs_sub(a: BranchSeries, b: BranchSeries) -> BranchSeries:
    return bs_add(a, bs_scale(b, -1))


def _ord_lower(a: BranchSeries) -> int:
    """A certified lower bound for the order (exact when coeffs exist)."""
    if a.coeffs:
        return min(a.coeffs)
    if a.prec is None:
        raise ZeroDivisor("exact zero has no finite order")
    return a.prec


def bs_mul(a: BranchSeries, b: BranchSeries) -> BranchSeries:
    if a.is_exact_zero() or b.is_exact_zero():
        return BS_ZERO
    cands = []
    if a.prec is not None:
        cands.append(a.prec + _ord_lower(b))
    if b.prec is not None:
        cands.append(b.prec + _ord_lower(a))
    prec = min(cands) if cands else None
    out: dict[int, Fraction] = {}
    for ea, ca in a.coeffs.items():
        for eb, cb in b.coeffs.items():
            e = ea + eb
            if prec is None or e < prec:
                out[e] = out.get(e, Fraction(0)) + ca * cb
    return BranchSeries(out, prec)


def bs_shift(a: BranchSeries, k: int) -> BranchSeries:
    prec = None if a.prec is None else a.prec + k
    return BranchSeries({e + k: c for e, c in a.coeffs.items()}, prec)


def bs_trunc(a: BranchSeries, n: int) -> BranchSeries:
    return BranchSeries(a.coeffs, _prec_min(a.prec, n))


def bs_order(a: BranchSeries) -> int:
    if a.coeffs:
        return min(a.coeffs)
    if a.prec is None:
        raise ZeroDivisor("exact zero has no order")
    raise PrecisionExhausted(f"series is 0 to precision {a.prec}; order undecidable")


def bs_coeff(a: BranchSeries, e: int) -> Fraction:
    if a.prec is not None and e >= a.prec:
        raise PrecisionExhausted(f"coefficient of t^{e} unknown at precision {a.prec}")
    return a.coeffs.get(e, Fraction(0))


# -- elements of the product of branches -------------------------------------

Element = tuple[BranchSeries, ...]


def el_zero(r: int) -> Element:
    return (BS_ZERO,) * r


def el_one(r: int) -> Element:
    return (BS_ONE,) * r


def el_unit_monomial(r: int, i: int, e: int, c: Fraction | int = 1) -> Element:
    """c * t^e on branch i, zero elsewhere."""
    return tuple(bs_monomial(e, c) if j == i else BS_ZERO for j in range(r))


def el_add(a: Element, b: Element) -> Element:
    return tuple(bs_add(x, y) for x, y in zip(a, b, strict=True))


def el_sub(a: Element, b: Element) -> Element:
    return tuple(bs_sub(x, y) for x, y in zip(a, b, strict=True))


def el_scale(a: Element, q: Fraction | int) -> Element:
    return tuple(bs_scale(x, q) for x in a)


def el_mul(a: Element, b: Element) -> Element:
    return tuple(bs_mul(x, y) for x, y in zip(a, b, strict=True))


def el_shift(a: Element, k: Vec) -> Element:
    return tuple(bs_shift(x, ki) for x, ki in zip(a, k, strict=True))


def el_trunc(a: Element, n: Vec) -> Element:
    return tuple(bs_trunc(x, ni) for x, ni in zip(a, n, strict=True))


def el_is_exact_zero(a: Element) -> bool:
    return all(x.is_exact_zero() for x in a)


def value_of(a: Element) -> Vec:
    """The order vector.  Raises ZeroDivisor on an exactly zero component and
    PrecisionExhausted when a component is zero only as far as it is known."""
    return tuple(bs_order(x) for x in a)


def el_min_orders(gens: Sequence[Element], r: int) -> Vec:
    """Componentwise minimum order over the generators; every branch must be
    seen by at least one generator."""
    mins: list[int | None] = [None] * r
    for g in gens:
        for i, x in enumerate(g):
            if x.is_exact_zero():
                continue
            o = bs_order(x)
            if mins[i] is None or o < mins[i]:
                mins[i] = o
    for i, m in enumerate(mins):
        if m is None:
            raise SchemaError(f"no generator is nonzero on branch {i}; "
                              "the module contains no nonzerodivisor")
    return tuple(mins)  # type: ignore[arg-type]


class CurvePresentation:
    """The local algebra of a reduced curve germ with r smooth branches,
    presented by finitely many exact elements of the product of branch lines.

    Generators are normalized on construction: a generator that is a unit
    must have one and the same constant term on every branch (otherwise no
    local ring contains it); the constant is subtracted, zero generators are
    dropped, and what remains has order >= 1 on every branch it touches.
    """

    __slots__ = ("r", "gens", "z0", "z0_order")

    def __init__(self, r: int, raw_gens: Sequence[Element]):
        if not isinstance(r, int) or r < 1:
            raise SchemaError(f"branch count must be a positive int, got {r!r}")
        gens: list[Element] = []
        for k, g in enumerate(raw_gens):
            if len(g) != r:
                raise SchemaError(f"generator {k} has {len(g)} components, expected {r}")
            for x in g:
                if x.prec is not None:
                    raise SchemaError(f"generator {k} is truncated; ring generators must be exact")
            consts = {bs_coeff(x, 0) for x in g}
            if len(consts) > 1:
                raise SchemaError(
                    f"generator {k} has different constant terms across branches; "
                    "it cannot lie in a local ring with a diagonal residue field")
            c = consts.pop()
            if c:
                g = tuple(BranchSeries({e: q for e, q in x.coeffs.items() if e != 0}) for x in g)
            if not el_is_exact_zero(g):
                gens.append(g)
        if not gens:
            raise SchemaError("the ring presentation has no nonconstant generator")
        self.r = r
        self.gens = tuple(gens)
        # a branch no generator touches would make the normalization infinite over the ring
        el_min_orders(self.gens, r)
        self.z0, self.z0_order = self._find_nonzerodivisor()

    def _find_nonzerodivisor(self) -> tuple[Element, Vec]:
        """A ring element with finite positive order on every branch.

        Combinations sum(l^(j-1) g_j) fail only when l is a common root of
        finitely many coefficient polynomials of degree < #gens, so scanning
        r * #gens + 1 values of l must succeed.
        """
        for lam in range(1, self.r * len(self.gens) + 2):
            z = el_zero(self.r)
            w = 1
            for g in self.gens:
                z = el_add(z, el_scale(g, w))
                w *= lam
            if all(not x.is_exact_zero() for x in z):
                return z, value_of(z)
        raise BoundSearchExceeded("no ring nonzerodivisor found; presentation is degenerate")


class FracIdeal:
    """A nonzero fractional ideal, stored as t^(-shift) * (span of gens).

    The generators themselves always live inside the product of power series
    rings (all orders >= 0), so jet computations can use one fixed coordinate
    system; the monomial shift carries any poles.
    """

    __slots__ = ("curve", "gens", "shift", "vmin", "_cond")

    def __init__(self, curve: CurvePresentation, gens: Sequence[Element], shift: Vec | None = None):
        self.curve = curve
        self._cond = None  # conductor cache, filled by algebra.conductor_bound
        if shift is None:
            shift = (0,) * curve.r
        self.shift = vec_check(shift, curve.r)
        kept: list[Element] = []
        for k, g in enumerate(gens):
            if len(g) != curve.r:
                raise SchemaError(f"ideal generator {k} has {len(g)} components, expected {curve.r}")
            if el_is_exact_zero(g):
                continue
            for i, x in enumerate(g):
                if x.prec is not None:
                    raise SchemaError(f"ideal generator {k} is truncated; generators must be exact")
                if not x.is_exact_zero() and bs_order(x) < 0:
                    raise SingvalError(
                        f"ideal generator {k} has a pole on branch {i}; "
                        "use the shift argument for denominators")
            kept.append(g)
        if not kept:
            raise SchemaError("a fractional ideal needs at least one nonzero generator")
        self.gens = tuple(kept)
        # minimal generator orders; also verifies every branch is reached
        self.vmin = el_min_orders(self.gens, curve.r)

    @property
    def r(self) -> int:
        return self.curve.r

    def values_offset(self) -> Vec:
        """Actual minimal values of the module are vmin - shift."""
        return tuple(v - s for v, s in zip(self.vmin, self.shift))

    def rebase(self, new_shift: Vec) -> "FracIdeal":
        """Represent the same module with a larger shift."""
        new_shift = vec_check(new_shift, self.r)
        d = tuple(n - s for n, s in zip(new_shift, self.shift))
        if any(x < 0 for x in d):
            raise SingvalError("rebase only to a componentwise larger shift")
        if all(x == 0 for x in d):
            return self
        return FracIdeal(self.curve, [el_shift(g, d) for g in self.gens], new_shift)

    def __repr__(self) -> str:
        return f"FracIdeal(r={self.r}, {len(self.gens)} gens, shift={list(self.shift)})"


def ring_ideal(curve: CurvePresentation) -> FracIdeal:
    """The ring itself as a module over itself: generated by 1."""
    return FracIdeal(curve, [el_one(curve.r)])


def common_shift(a: FracIdeal, b: FracIdeal) -> tuple[FracIdeal, FracIdeal]:
    s = tuple(max(x, y) for x, y in zip(a.shift, b.shift))
    return a.rebase(s), b.rebase(s)


def ideal_sum(a: FracIdeal, b: FracIdeal) -> FracIdeal:
    a2, b2 = common_shift(a, b)
    return FracIdeal(a2.curve, list(a2.gens) + list(b2.gens), a2.shift)


def ideal_product(a: FracIdeal, b: FracIdeal) -> FracIdeal:
    gens = [el_mul(x, y) for x in a.gens for y in b.gens]
    return FracIdeal(a.curve, gens, vec_add(a.shift, b.shift))


def monomial_scale(a: FracIdeal, k: Vec) -> FracIdeal:
    """Multiply the module by the monomial vector t^k (any sign)."""
    k = vec_check(k, a.r)
    pos = tuple(max(x, 0) for x in k)
    neg = tuple(max(-x, 0) for x in k)
    gens = [el_shift(g, pos) for g in a.gens] if any(pos) else list(a.gens)
    return FracIdeal(a.curve, gens, vec_add(a.shift, neg))
