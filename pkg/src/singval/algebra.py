"""Jet-space linear algebra over the branch model.

Everything here reduces questions about fractional ideals (membership,
conductors, colon ideals, quotient dimensions, value sets) to exact rank
computations on truncations.  The correctness backbone: if an ideal's
generator module G contains the full monomial band t^m * (product of power
series rings), then truncating at N = m + (order of a nonzerodivisor) loses
nothing -- membership, dimensions and colon systems at that precision are
exact, not approximate.  Conductor bounds are always *certified* by checking
band containment at jet level before they are used.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from typing import Iterable, Sequence

from .curve import (
    CurvePresentation,
    Element,
    FracIdeal,
    common_shift,
    el_add,
    el_is_exact_zero,
    el_mul,
    el_scale,
    el_shift,
    el_trunc,
    el_unit_monomial,
    el_zero,
    ideal_product,
    ideal_sum,
    monomial_scale,
    ring_ideal,
    value_of,
)
from .errors import (
    BadReduction,
    BoundSearchExceeded,
    ClipRuleViolation,
    EnumerationTooLarge,
    NotContained,
    SingvalError,
)
from .lattice import Vec, vec_add, vec_check, vec_max, vec_neg, vec_sub
from .valuemodule import ValueModule

_ZERO = Fraction(0)


# -- exact row reduction ------------------------------------------------------


class RowSpaceQ:
    """A row space over the rationals kept in reduced echelon form.

    Column order is fixed by the caller; pivots are the first nonzero
    columns, so echelon rows sort by leading column and every question
    (rank, membership, residual) is a single reduction pass.
    """

    __slots__ = ("ncols", "rows", "pivots")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def residual(self, row: Sequence[Fraction]) -> list[Fraction]:
        v = list(row)
        if len(v) != self.ncols:
            raise SingvalError(f"row has {len(v)} entries, space has {self.ncols} columns")
        for p, r in zip(self.pivots, self.rows):
            c = v[p]
            if c:
                for j in range(p, self.ncols):
                    v[j] -= c * r[j]
        return v

    def contains(self, row: Sequence[Fraction]) -> bool:
        return not any(self.residual(row))

    def add(self, row: Sequence[Fraction]) -> bool:
        """Insert a row; returns True when the rank grew."""
        v = self.residual(row)
        p = next((j for j, c in enumerate(v) if c), None)
        if p is None:
            return False
        inv = v[p]
        v = [c / inv for c in v]
        for r in self.rows:
            c = r[p]
            if c:
                for j in range(p, self.ncols):
                    r[j] -= c * v[j]
        k = next((idx for idx, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(k, v)
        self.pivots.insert(k, p)
        return True


def _rank_of(rows: Iterable[Sequence[Fraction]], ncols: int) -> int:
    sp = RowSpaceQ(ncols)
    for row in rows:
        sp.add(row)
    return sp.rank


# -- jets ---------------------------------------------------------------------


@dataclass(frozen=True)
class JetLayout:
    """Branch-major coordinates for the truncation at N: column (i, e) with
    0 <= e < N_i sits at offset_i + e."""

    N: Vec

    @property
    def r(self) -> int:
        return len(self.N)

    @property
    def offsets(self) -> tuple[int, ...]:
        out = []
        acc = 0
        for n in self.N:
            out.append(acc)
            acc += n
        return tuple(out)

    @property
    def ncols(self) -> int:
        return sum(self.N)

    def element_row(self, z: Element) -> list[Fraction]:
        row: list[Fraction] = []
        for i, x in enumerate(z):
            for e in range(self.N[i]):
                if x.prec is not None and e >= x.prec:
                    raise SingvalError(
                        f"element only known to precision {x.prec} on branch {i}, need {self.N[i]}")
                row.append(x.coeffs.get(e, _ZERO))
        return row

    def unit_row(self, i: int, e: int) -> list[Fraction]:
        row = [_ZERO] * self.ncols
        row[self.offsets[i] + e] = Fraction(1)
        return row


class JetSpace:
    """Row-reduced image of a generator module inside the truncation at N.

    Built by closing the generator rows under multiplication by the curve's
    algebra generators.  Dropping rows that do not grow the rank is sound:
    truncation commutes with multiplication by elements of nonnegative
    order, so a dependent truncated element contributes nothing new.
    """

    __slots__ = ("layout", "space")

    def __init__(self, curve: CurvePresentation, gens: Sequence[Element], N: Vec):
        N = vec_check(N, curve.r)
        if any(n < 1 for n in N):
            raise SingvalError(f"jet precision must be positive on every branch, got {N}")
        layout = JetLayout(N)
        space = RowSpaceQ(layout.ncols)
        queue: list[Element] = []
        for g in gens:
            t = el_trunc(g, N)
            if space.add(layout.element_row(t)):
                queue.append(t)
        while queue:
            x = queue.pop()
            for m in curve.gens:
                y = el_trunc(el_mul(x, m), N)
                if space.add(layout.element_row(y)):
                    queue.append(y)
        self.layout = layout
        self.space = space

    @property
    def rank(self) -> int:
        return self.space.rank

    def contains_element(self, z: Element) -> bool:
        return self.space.contains(self.layout.element_row(el_trunc(z, self.layout.N)))

    def dim_at_least(self, w: Vec) -> int:
        """Dimension of the subspace of rows supported on columns (i, e) with
        e >= w_i: rank minus the rank of the projection onto the rest."""
        w = vec_check(w, self.layout.r)
        if any(x > n for x, n in zip(w, self.layout.N)):
            raise SingvalError(f"support cut {w} exceeds the jet precision {self.layout.N}")
        low_cols = [
            self.layout.offsets[i] + e
            for i in range(self.layout.r)
            for e in range(max(0, min(w[i], self.layout.N[i])))
        ]
        proj = [[row[j] for j in low_cols] for row in self.space.rows]
        return self.space.rank - _rank_of(proj, len(low_cols))


def jet_span(a: FracIdeal, N: Vec) -> JetSpace:
    """Jets of the generator module of a (the monomial shift is ignored here;
    callers rebase to a common shift before comparing two ideals)."""
    return JetSpace(a.curve, a.gens, N)


# -- certified conductors -----------------------------------------------------


def _band_contained(a: FracIdeal, m: Vec) -> bool:
    """Does the generator module contain every element of order >= m?

    Checked at jets of precision m + p, where p is the order vector of the
    curve's distinguished nonzerodivisor: if the one band of monomials
    [m, m + p) lies in the truncated span, successive approximation by
    powers of the nonzerodivisor lifts the containment to the full module.
    """
    m = vec_check(m, a.r)
    if any(x < 0 for x in m):
        return False
    N = vec_add(m, a.curve.z0_order)
    space = jet_span(a, N)
    for i in range(a.r):
        for e in range(m[i], N[i]):
            if not space.space.contains(space.layout.unit_row(i, e)):
                return False
    return True


def _gen_conductor(a: FracIdeal, kmax: int = 64) -> Vec:
    """Minimal m with t^m * (full product ring) inside the generator module.

    The set of working bounds is closed upward and under componentwise min,
    so it has a unique minimum: climb the diagonal until containment holds,
    then shrink each coordinate independently by binary search.
    """
    if a._cond is not None:
        return a._cond
    base = a.vmin
    hi = None
    for k in range(kmax + 1):
        cand = tuple(x + k for x in base)
        if _band_contained(a, cand):
            hi = list(cand)
            break
    if hi is None:
        raise BoundSearchExceeded(
            f"no full monomial band found below {tuple(x + kmax for x in base)}; "
            "the presented module is too thin to contain one (is the curve reduced "
            "and every branch genuinely separate?)")
    for i in range(a.r):
        lo, up = base[i], hi[i]
        while lo < up:
            mid = (lo + up) // 2
            probe = tuple(mid if j == i else hi[j] for j in range(a.r))
            if _band_contained(a, probe):
                up = mid
            else:
                lo = mid + 1
        hi[i] = lo
    out = tuple(hi)
    a._cond = out
    return out


def conductor_bound(a: FracIdeal, kmax: int = 64) -> Vec:
    """Certified minimal m such that every element with orders >= m lies in
    the fractional ideal (in actual value coordinates, shift included)."""
    return vec_sub(_gen_conductor(a, kmax), a.shift)


# -- membership, containment, dimensions --------------------------------------


def exact_member(a: FracIdeal, z: Element, z_shift: Vec | None = None) -> bool:
    """Is t^(-z_shift) * z in the fractional ideal a?  Decided exactly."""
    if z_shift is None:
        z_shift = (0,) * a.r
    z_shift = vec_check(z_shift, a.r)
    if el_is_exact_zero(z):
        return True
    d = vec_sub(a.shift, z_shift)
    for i, x in enumerate(z):
        if not x.coeffs:
            continue
        if min(x.coeffs) + d[i] < 0:
            # the candidate has a pole the module cannot reach
            return False
    zz = el_shift(z, d)
    N = _gen_conductor(a)
    for i, x in enumerate(zz):
        if x.prec is not None and x.prec < N[i]:
            raise SingvalError(
                f"candidate element is only known to precision {x.prec} on branch {i}, "
                f"membership needs {N[i]}")
    return jet_span(a, vec_max(N, (1,) * a.r)).contains_element(zz)


def contains_module(a: FracIdeal, b: FracIdeal) -> bool:
    """Generator-by-generator containment b inside a."""
    return all(exact_member(a, g, b.shift) for g in b.gens)


def module_equal(a: FracIdeal, b: FracIdeal) -> bool:
    return contains_module(a, b) and contains_module(b, a)


def dim_quotient(a: FracIdeal, b: FracIdeal, N: Vec | None = None) -> int:
    """Length of a/b (equal to the k-dimension here).  b must sit inside a."""
    if not contains_module(a, b):
        raise NotContained("the second module is not contained in the first")
    a2, b2 = common_shift(a, b)
    bound = vec_max(_gen_conductor(a2), _gen_conductor(b2))
    if N is None:
        N = bound
    else:
        N = vec_check(N, a.r)
        if any(n < m for n, m in zip(N, bound)):
            raise SingvalError(f"precision {N} is below the certified bound {bound}")
    N = vec_max(N, (1,) * a.r)
    dim = jet_span(a2, N).rank - jet_span(b2, N).rank
    collar = tuple(n + 2 for n in N)
    again = jet_span(a2, collar).rank - jet_span(b2, collar).rank
    if dim != again:
        raise SingvalError(
            f"quotient dimension did not stabilize: {dim} at {N} vs {again} at {collar}")
    return dim


def degree(a: FracIdeal) -> int:
    """Degree normalized so the ring itself has degree 0."""
    o = ring_ideal(a.curve)
    s = ideal_sum(a, o)
    return dim_quotient(s, o) - dim_quotient(s, a)


# -- distinguished ideals -------------------------------------------------------


def normalization_ideal(curve: CurvePresentation) -> FracIdeal:
    """The full product of power series rings as a module over the curve:
    generated by the monomial band below the distinguished nonzerodivisor."""
    p = curve.z0_order
    gens = [
        el_unit_monomial(curve.r, i, e)
        for i in range(curve.r)
        for e in range(p[i])
    ]
    return FracIdeal(curve, gens)


def monomial_ideal(curve: CurvePresentation, v: Vec) -> FracIdeal:
    """The shifted full module t^v * (product of power series rings)."""
    v = vec_check(v, curve.r)
    return monomial_scale(normalization_ideal(curve), v)


def max_ideal(curve: CurvePresentation) -> FracIdeal:
    """The maximal ideal: every ring element without constant term is a
    series in the algebra generators, so they generate it as a module."""
    return FracIdeal(curve, curve.gens)


def _min_value_nonzerodivisor(gens: Sequence[Element], r: int, vmin: Vec) -> tuple[Element, Vec]:
    """A single element of the span realizing the componentwise minimal order.

    Scans z = sum lambda^(j-1) g_j over small integer lambda; per branch the
    leading coefficient is a nonzero polynomial in lambda of degree below the
    generator count, so r*(count-1) values at most can fail.
    """
    s = len(gens)
    for lam in range(1, r * s + 2):
        z = el_zero(r)
        scale = Fraction(1)
        for g in gens:
            z = el_add(z, el_scale(g, scale))
            scale *= lam
        try:
            v = value_of(z)
        except SingvalError:
            continue
        if v == vmin:
            return z, v
    raise BoundSearchExceeded("no generator combination realizes the minimal order vector")


# -- colon ideals ---------------------------------------------------------------


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right nullspace of the given constraint matrix."""
    sp = RowSpaceQ(ncols)
    for row in rows:
        sp.add(row)
    pivot_set = set(sp.pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [_ZERO] * ncols
        v[f] = Fraction(1)
        for p, r in zip(sp.pivots, sp.rows):
            v[p] = -r[f]
        basis.append(v)
    return basis


def colon(a: FracIdeal, b: FracIdeal) -> FracIdeal:
    """The transporter {x : x*b inside a}, computed exactly.

    Any such x has order at least vmin(a) - v(z_b) for a minimal-order
    nonzerodivisor z_b of b, and everything of order at least
    cond(a) - vmin(b) belongs outright.  In between, membership of x*g_j in
    a is a finite linear system on jet residuals; its nullspace plus the
    guaranteed tail band generate the transporter.
    """
    if a.curve is not b.curve:
        raise SingvalError("colon of ideals over different curve presentations")
    a2, b2 = common_shift(a, b)
    curve = a.curve
    r = curve.r
    zb, vb = _min_value_nonzerodivisor(b2.gens, r, b2.vmin)
    conda = _gen_conductor(a2)
    xlo = vec_sub(a2.vmin, vb)
    xhi = vec_sub(conda, b2.vmin)  # from here on, x*b lands beyond cond(a)
    neg = tuple(max(0, -x) for x in xlo)
    lo = vec_add(xlo, neg)
    hi = vec_add(xhi, neg)
    a_shift = FracIdeal(curve, [el_shift(g, neg) for g in a2.gens]) if any(neg) else a2
    M = vec_add(conda, neg)
    M = vec_max(M, (1,) * r)
    space = jet_span(a_shift, M)
    unknowns = [(i, e) for i in range(r) for e in range(lo[i], max(lo[i], hi[i]))]
    sol_rows: list[list[Fraction]] = []
    if unknowns:
        cols: list[list[Fraction]] = []
        for (i, e) in unknowns:
            stacked: list[Fraction] = []
            for g in b2.gens:
                w = el_mul(el_unit_monomial(r, i, e), g)
                stacked.extend(space.space.residual(space.layout.element_row(el_trunc(w, M))))
            cols.append(stacked)
        nrows = len(cols[0])
        constraint = [[cols[u][k] for u in range(len(unknowns))] for k in range(nrows)]
        sol_rows = _nullspace(constraint, len(unknowns))
    gens: list[Element] = []
    for v in sol_rows:
        z = el_zero(r)
        for coeff, (i, e) in zip(v, unknowns):
            if coeff:
                z = el_add(z, el_unit_monomial(r, i, e, coeff))
        gens.append(z)
    for i in range(r):
        for e in range(curve.z0_order[i]):
            gens.append(el_unit_monomial(r, i, hi[i] + e))
    out = FracIdeal(curve, gens, neg)
    for g in out.gens:
        for h in b.gens:
            if not exact_member(a, el_mul(g, h), vec_add(out.shift, b.shift)):
                raise SingvalError("internal: a computed transporter generator fails re-verification")
    return out


def dual(b: FracIdeal, c: FracIdeal) -> FracIdeal:
    """Dual with respect to the supplied canonical ideal: c : b."""
    return colon(c, b)


def normalize_ideal(b: FracIdeal) -> FracIdeal:
    """Scale by a monomial so the minimal value vector becomes zero."""
    return monomial_scale(b, vec_neg(b.values_offset()))


def self_dual_direct(
    b: FracIdeal, canonical: FracIdeal, seeds: int = 8, seed: int = 0
) -> tuple[str, str]:
    """Module-level self-duality probe: is the dual a monomial-unit multiple?

    Returns ("yes", why) with a certified multiplier, ("no", why) when an
    invariant (normalized value set, conductor, or degree) separates b from
    its dual, or ("undetermined", why) when the invariants agree but no
    certificate was found among the transporter generators of value zero
    and `seeds` pseudo-random integer combinations of them.  The counting
    criteria on the value module are the decision procedure of record; this
    probe exists to cross-check them on concrete inputs.
    """
    bs = dual(b, canonical)
    bn = normalize_ideal(b)
    sn = normalize_ideal(bs)
    vb = value_set(bn)
    vs = value_set(sn)
    if vb.gamma != vs.gamma or vb.members != vs.members:
        return ("no", "normalized value sets differ")
    if vb.deg_offset != vs.deg_offset:
        return ("no", "normalized degrees differ")
    trans = colon(sn, bn)
    zero = (0,) * b.r
    candidates = []
    for g in trans.gens:
        try:
            if vec_sub(value_of(g), trans.shift) == zero:
                candidates.append(g)
        except SingvalError:
            continue

    def certifies(z: Element) -> bool:
        prod = FracIdeal(
            b.curve,
            [el_mul(z, g) for g in bn.gens],
            vec_add(bn.shift, trans.shift),
        )
        return module_equal(prod, sn)

    for z in candidates:
        if certifies(z):
            return ("yes", "a transporter generator carries the module onto its dual")
    rng = random.Random(seed)
    combos = [tuple(1 for _ in trans.gens)]
    combos += [tuple(rng.randint(0, 5) for _ in trans.gens) for _ in range(seeds)]
    for lam in combos:
        z = el_zero(b.r)
        for coeff, g in zip(lam, trans.gens):
            if coeff:
                z = el_add(z, el_scale(g, coeff))
        if el_is_exact_zero(z):
            continue
        try:
            if vec_sub(value_of(z), trans.shift) == zero and certifies(z):
                return ("yes", "a transporter combination carries the module onto its dual")
        except SingvalError:
            continue
    return ("undetermined", "value-set invariants agree but no multiplier was certified")


def verify_canonical(c: FracIdeal, family: Sequence[FracIdeal] | None = None) -> tuple[bool, list[str]]:
    """Check the defining property of a canonical ideal on a test family.

    Requires a nonzerodivisor in c and double-colon stability c:(c:a) = a
    for every family member.  The default family is the ring, the full
    module, and the shifted full modules with shifts in {0,1}^r.
    """
    curve = c.curve
    _min_value_nonzerodivisor(c.gens, curve.r, c.vmin)
    if family is None:
        family = [ring_ideal(curve), normalization_ideal(curve)] + [
            monomial_ideal(curve, v)
            for v in iter_product(range(2), repeat=curve.r)
            if any(v)
        ]
    failures = []
    for k, a in enumerate(family):
        back = colon(c, colon(c, a))
        if not module_equal(back, a):
            failures.append(f"member {k}: double colon against the candidate does not return it")
    return (not failures, failures)


# -- value sets -----------------------------------------------------------------


def value_set(b: FracIdeal, margin: int = 2, ambient: ValueModule | None = None) -> ValueModule:
    """Extract the normalized value set of b as a ValueModule.

    Normalizes by the minimal order vector, certifies the conductor, fills
    the membership table on [0, gamma] through jet dimension jumps, and
    verifies the clip rule on a collar of width margin + 2 before trusting
    the box.  The module's deg_offset is the degree of the normalized ideal.
    """
    if margin < 1:
        raise SingvalError("margin must be at least 1")
    bn = monomial_scale(b, vec_neg(b.values_offset()))
    r = bn.r
    svec = bn.vmin  # equals bn.shift componentwise after normalization
    gamma = vec_sub(_gen_conductor(bn), svec)
    collar = margin + 2
    top = tuple(g + collar for g in gamma)
    N = vec_add(vec_add(top, svec), (2,) * r)
    space = jet_span(bn, N)
    dim_cache: dict[Vec, int] = {}

    def dim_at(v: Vec) -> int:
        w = tuple(min(max(x + s, 0), n) for x, s, n in zip(v, svec, N))
        if w not in dim_cache:
            dim_cache[w] = space.dim_at_least(w)
        return dim_cache[w]

    def jump(v: Vec, i: int) -> int:
        return dim_at(v) - dim_at(tuple(x + (1 if j == i else 0) for j, x in enumerate(v)))

    def extracted_member(v: Vec) -> bool:
        return all(jump(v, i) == 1 for i in range(r))

    members = []
    table: dict[Vec, bool] = {}
    for v in iter_product(*[range(0, t + 1) for t in top]):
        table[v] = extracted_member(v)
        if table[v] and all(x <= g for x, g in zip(v, gamma)):
            members.append(v)
    for v, got in table.items():
        clipped = tuple(min(x, g) for x, g in zip(v, gamma))
        if got != table[clipped]:
            raise ClipRuleViolation(
                f"extracted membership at {v} is {got} but the box value at {clipped} "
                f"is {table[clipped]}")
    offset = degree(bn)
    return ValueModule(r, gamma, members, deg_offset=offset, ambient=ambient)


# -- length bookkeeping -----------------------------------------------------------


@dataclass(frozen=True)
class LengthsReport:
    inside: int  # length of b / (b : full module)
    total: int  # length of b*full / (b : full module)
    outside: int  # length of b*full / b
    doubled_equals_total: bool
    doubled_leq_total: bool
    dual_match: bool | None  # length of (dual*full)/dual == inside, when canonical given


def lengths_report(b: FracIdeal, canonical: FracIdeal | None = None) -> LengthsReport:
    """The three lengths tying b to its trace inside the full module."""
    nm = normalization_ideal(b.curve)
    btrace = colon(b, nm)
    bfull = ideal_product(b, nm)
    inside = dim_quotient(b, btrace)
    total = dim_quotient(bfull, btrace)
    outside = dim_quotient(bfull, b)
    dual_match = None
    if canonical is not None:
        d = dual(b, canonical)
        dfull = ideal_product(d, nm)
        dual_match = dim_quotient(dfull, d) == inside
    return LengthsReport(
        inside=inside,
        total=total,
        outside=outside,
        doubled_equals_total=2 * inside == total,
        doubled_leq_total=2 * inside <= total,
        dual_match=dual_match,
    )


def gorenstein_by_lengths(curve: CurvePresentation) -> bool:
    """Does the ring's conductor quotient split in half exactly?"""
    return lengths_report(ring_ideal(curve)).doubled_equals_total


# -- finite-field counting oracle --------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _modp_gen_coeffs(curve: CurvePresentation, p: int, N: Vec) -> list[list[dict[int, int]]]:
    """Curve generators reduced mod p, as per-branch exponent->residue maps.

    Conservative rejection: any nonzero exact coefficient that reduces to 0
    would silently change the ring, so it raises BadReduction.
    """
    out = []
    for g in curve.gens:
        comps = []
        for i, x in enumerate(g):
            red: dict[int, int] = {}
            for e, c in x.coeffs.items():
                if e >= N[i]:
                    continue
                if c.denominator % p == 0:
                    raise BadReduction(f"coefficient {c} has denominator divisible by {p}")
                num = c.numerator % p
                den = pow(c.denominator % p, p - 2, p)
                v = (num * den) % p
                if v == 0:
                    raise BadReduction(
                        f"nonzero coefficient {c} vanishes mod {p}; the reduction would "
                        "change the curve")
                red[e] = v
            comps.append(red)
        out.append(comps)
    return out


def _modp_rref_add(rows: list[list[int]], pivots: list[int], vec: list[int], p: int) -> bool:
    v = vec[:]
    n = len(v)
    for pc, r in zip(pivots, rows):
        c = v[pc]
        if c:
            for j in range(pc, n):
                v[j] = (v[j] - c * r[j]) % p
    piv = next((j for j, c in enumerate(v) if c), None)
    if piv is None:
        return False
    inv = pow(v[piv], p - 2, p)
    v = [(c * inv) % p for c in v]
    for r in rows:
        c = r[piv]
        if c:
            for j in range(piv, n):
                r[j] = (r[j] - c * v[j]) % p
    k = next((idx for idx, q in enumerate(pivots) if q > piv), len(pivots))
    rows.insert(k, v)
    pivots.insert(k, piv)
    return True


def _modp_jet_basis(curve: CurvePresentation, p: int, N: Vec) -> tuple[list[list[int]], JetLayout]:
    """Row basis of the curve ring's jets at N over the prime field."""
    layout = JetLayout(N)
    gens = _modp_gen_coeffs(curve, p, N)
    offsets = layout.offsets

    def mul_gen(row: list[int], g: list[dict[int, int]]) -> list[int]:
        out = [0] * layout.ncols
        for i in range(curve.r):
            base = offsets[i]
            comp = g[i]
            for e, c in comp.items():
                for k in range(N[i] - e):
                    a = row[base + k]
                    if a:
                        out[base + e + k] = (out[base + e + k] + c * a) % p
        return out

    one = [0] * layout.ncols
    for i in range(curve.r):
        one[offsets[i]] = 1
    rows: list[list[int]] = []
    pivots: list[int] = []
    queue = []
    if _modp_rref_add(rows, pivots, one, p):
        queue.append(one)
    while queue:
        x = queue.pop()
        for g in gens:
            y = mul_gen(x, g)
            if _modp_rref_add(rows, pivots, y, p):
                queue.append(y)
    return rows, layout


def jet_rank_mod_q(curve: CurvePresentation, p: int, level: int | Vec) -> int:
    """Dimension of the enumerated jet span used by count_points_mod_q."""
    if not _is_prime(p):
        raise SingvalError(f"the specialization oracle needs a prime, got {p}")
    if isinstance(level, int):
        level = (level,) * curve.r
    N = tuple(x + 1 for x in vec_check(level, curve.r))
    rows, _ = _modp_jet_basis(curve, p, N)
    return len(rows)


def count_points_mod_q(
    curve: CurvePresentation,
    p: int,
    v: Vec,
    level: int | Vec,
    ceiling: int = 2 ** 24,
) -> int:
    """Brute-force cylinder count over the prime field.

    Enumerates every element of the ring's jet span at truncation level + 1
    and counts those whose exact order vector is v.  Deliberately naive: it
    is the independent oracle the motivic series are checked against.
    """
    if not _is_prime(p):
        raise SingvalError(f"the specialization oracle needs a prime, got {p}")
    v = vec_check(v, curve.r)
    if isinstance(level, int):
        level = (level,) * curve.r
    level = vec_check(level, curve.r)
    if any(x < 0 for x in v):
        raise SingvalError(f"order vector must be nonnegative, got {v}")
    if not all(x < l for x, l in zip(v, level)):
        raise SingvalError(f"level {level} must exceed the order vector {v} componentwise")
    N = tuple(x + 1 for x in level)
    rows, layout = _modp_jet_basis(curve, p, N)
    rank = len(rows)
    if p ** rank > ceiling:
        raise EnumerationTooLarge(
            f"{p}^{rank} vectors exceed the enumeration ceiling {ceiling}")
    offsets = layout.offsets
    count = 0
    for combo in iter_product(range(p), repeat=rank):
        vec = [0] * layout.ncols
        for c, row in zip(combo, rows):
            if c:
                for j, x in enumerate(row):
                    if x:
                        vec[j] = (vec[j] + c * x) % p
        ok = True
        for i in range(curve.r):
            base = offsets[i]
            ordv = next((e for e in range(N[i]) if vec[base + e]), None)
            if ordv != v[i]:
                ok = False
                break
        if ok:
            count += 1
    return count
