"""Finite-dimensional linear algebra over the ring: quotients, colons, duals,
value tables and finite-field point counts, all against frozen corpus facts."""

from fractions import Fraction

import pytest

from singval.algebra import (
    LengthsReport,
    colon,
    conductor_bound,
    contains_module,
    count_points_mod_q,
    degree,
    dim_quotient,
    dual,
    exact_member,
    gorenstein_by_lengths,
    jet_rank_mod_q,
    lengths_report,
    max_ideal,
    module_equal,
    monomial_ideal,
    normalization_ideal,
    self_dual_direct,
    value_set,
    verify_canonical,
)
from singval.curve import BranchSeries, CurvePresentation, FracIdeal, ring_ideal
from singval.errors import (
    BadReduction,
    EnumerationTooLarge,
    NotContained,
    SingvalError,
)


def series(*pairs, prec=None):
    return BranchSeries(dict(pairs), prec=prec)


# ---------------------------------------------------------------- conductors

CONDUCTORS = {
    "cusp": (2,),
    "e8": (8,),
    "semigroup345": (3,),
    "node": (1, 1),
    "tacnode": (2, 2),
}


def test_ring_conductors(curves):
    for name, want in CONDUCTORS.items():
        assert conductor_bound(ring_ideal(curves[name])) == want, name


def test_ideal_conductor(corpus):
    b = corpus["e8"].curve_input.ideals["nonprincipal"]
    assert conductor_bound(b) == (6,)


# ---------------------------------------------------------------- membership

def test_exact_member_cusp(curves):
    ring = ring_ideal(curves["cusp"])
    t = lambda e: (series((e, 1)),)
    assert exact_member(ring, t(0))
    assert exact_member(ring, t(2))
    assert exact_member(ring, t(5))
    assert not exact_member(ring, t(1))
    # linear combinations, not just monomials
    assert exact_member(ring, (series((2, 1), (3, -4), (7, Fraction(1, 3))),))


def test_exact_member_node(curves):
    ring = ring_ideal(curves["node"])
    assert exact_member(ring, (series((1, 1)), series((1, -2))))
    # branch values must agree at order zero
    assert not exact_member(ring, (series((0, 1)), series((0, 2))))
    assert exact_member(ring, (series((0, 3)), series((0, 3))))


def test_containment_chain(curves):
    for curve in curves.values():
        ring = ring_ideal(curve)
        nm = normalization_ideal(curve)
        m = max_ideal(curve)
        assert contains_module(nm, ring)
        assert contains_module(ring, m)
        assert not contains_module(m, ring)
        assert not contains_module(ring, nm)
        assert module_equal(ring, ring)
        assert not module_equal(ring, nm)


def test_named_ideals_match_constructions(corpus):
    for name, inp in corpus.items():
        if inp.mode != "concrete":
            continue
        ci = inp.curve_input
        assert module_equal(ci.ideals["max"], max_ideal(ci.curve)), name
        if "normalization" in ci.ideals:
            got = module_equal(ci.ideals["normalization"], normalization_ideal(ci.curve))
            assert got, name


# ----------------------------------------------------------------- quotients

DELTAS = {"cusp": 1, "e8": 4, "semigroup345": 2, "node": 1, "tacnode": 2}


def test_delta_invariants(curves):
    for name, want in DELTAS.items():
        curve = curves[name]
        assert dim_quotient(normalization_ideal(curve), ring_ideal(curve)) == want


def test_dim_quotient_requires_containment(curves):
    curve = curves["cusp"]
    with pytest.raises(NotContained):
        dim_quotient(ring_ideal(curve), normalization_ideal(curve))


def test_degree_of_normalization_is_delta(curves):
    for name, want in DELTAS.items():
        assert degree(normalization_ideal(curves[name])) == want, name


def test_degree_of_max_ideal(curves):
    # dim((m + O)/O) = 0 and dim(O/m) = 1, so the degree is -1
    assert degree(max_ideal(curves["cusp"])) == -1
    assert degree(max_ideal(curves["node"])) == -1


def test_ring_types(curves):
    # dim of (O : m)/O, the Cohen-Macaulay type
    for name, want in [("cusp", 1), ("node", 1), ("semigroup345", 2)]:
        curve = curves[name]
        ring = ring_ideal(curve)
        typ = dim_quotient(colon(ring, max_ideal(curve)), ring)
        assert typ == want, name


# -------------------------------------------------------------------- colons

def test_colon_ring_by_normalization_is_conductor(curves):
    # O : Obar is the largest common ideal, a monomial module at the conductor
    for name, c in CONDUCTORS.items():
        curve = curves[name]
        got = colon(ring_ideal(curve), normalization_ideal(curve))
        assert module_equal(got, monomial_ideal(curve, c)), name


def test_colon_ring_by_max_ideal_cusp(curves):
    curve = curves["cusp"]
    got = colon(ring_ideal(curve), max_ideal(curve))
    assert module_equal(got, normalization_ideal(curve))


def test_colon_is_contained_in_first_argument_quotient(curves):
    curve = curves["tacnode"]
    ring = ring_ideal(curve)
    c = colon(ring, normalization_ideal(curve))
    assert contains_module(ring, c)
    assert contains_module(normalization_ideal(curve), c)


# ------------------------------------------------------------------- lengths

RING_LENGTHS = {
    "cusp": (1, 2, 1),
    "e8": (4, 8, 4),
    "semigroup345": (1, 3, 2),
    "node": (1, 2, 1),
    "tacnode": (2, 4, 2),
}


def test_ring_length_reports(corpus):
    for name, (inside, total, outside) in RING_LENGTHS.items():
        ci = corpus[name].curve_input
        canonical = None
        if ci.canonical == "ring":
            canonical = ring_ideal(ci.curve)
        elif ci.canonical is not None:
            canonical = ci.ideals[ci.canonical]
        rep = lengths_report(ring_ideal(ci.curve), canonical)
        assert isinstance(rep, LengthsReport)
        assert (rep.inside, rep.total, rep.outside) == (inside, total, outside), name
        assert rep.doubled_equals_total == (2 * inside == total)
        assert rep.doubled_leq_total == (2 * inside <= total)
        assert rep.dual_match is True, name


def test_canonical_ideal_length_report(corpus):
    # the module where doubling the inside length overshoots the total
    ci = corpus["semigroup345"].curve_input
    can = ci.ideals["can"]
    rep = lengths_report(can, can)
    assert (rep.inside, rep.total, rep.outside) == (2, 3, 1)
    assert not rep.doubled_equals_total
    assert not rep.doubled_leq_total
    assert rep.dual_match is True


def test_gorenstein_by_lengths(curves):
    for name in ["cusp", "e8", "node", "tacnode"]:
        assert gorenstein_by_lengths(curves[name]), name
    assert not gorenstein_by_lengths(curves["semigroup345"])


# --------------------------------------------------------------------- duals

def test_dual_swaps_ring_and_canonical(corpus):
    ci = corpus["semigroup345"].curve_input
    can = ci.ideals["can"]
    ring = ring_ideal(ci.curve)
    assert module_equal(dual(ring, can), can)
    assert module_equal(dual(can, can), ring)


def test_dual_of_max_ideal_cusp(corpus):
    ci = corpus["cusp"].curve_input
    ring = ring_ideal(ci.curve)
    got = dual(max_ideal(ci.curve), ring)
    assert module_equal(got, normalization_ideal(ci.curve))


def test_dual_is_involutive_on_corpus_ideals(corpus):
    for name, inp in corpus.items():
        if inp.mode != "concrete":
            continue
        ci = inp.curve_input
        if ci.canonical == "ring":
            canonical = ring_ideal(ci.curve)
        else:
            canonical = ci.ideals[ci.canonical]
        for iname, b in ci.ideals.items():
            bb = dual(dual(b, canonical), canonical)
            assert module_equal(bb, b), (name, iname)


def test_verify_canonical_positive(corpus):
    for name in ["cusp", "e8", "node", "tacnode"]:
        ci = corpus[name].curve_input
        ok, failures = verify_canonical(ring_ideal(ci.curve), list(ci.ideals.values()))
        assert ok, (name, failures)
    ci = corpus["semigroup345"].curve_input
    ok, failures = verify_canonical(ci.ideals["can"], list(ci.ideals.values()))
    assert ok, failures


def test_verify_canonical_negative(corpus):
    # a non-Gorenstein ring is not its own canonical module
    ci = corpus["semigroup345"].curve_input
    ok, failures = verify_canonical(ring_ideal(ci.curve), list(ci.ideals.values()))
    assert not ok
    assert failures


# ------------------------------------------------------------- self-duality

def test_self_dual_direct_verdicts(corpus):
    cases = [
        ("cusp", "ring", "yes"),
        ("cusp", "max", "yes"),
        ("cusp", "normalization", "yes"),
        ("e8", "ring", "yes"),
        ("node", "ring", "yes"),
        ("node", "max", "yes"),
        ("tacnode", "max", "yes"),
        ("semigroup345", "ring", "no"),
        ("semigroup345", "can", "no"),
        ("semigroup345", "normalization", "yes"),
    ]
    for name, iname, want in cases:
        ci = corpus[name].curve_input
        if ci.canonical == "ring":
            canonical = ring_ideal(ci.curve)
        else:
            canonical = ci.ideals[ci.canonical]
        b = ring_ideal(ci.curve) if iname == "ring" else ci.ideals[iname]
        verdict, why = self_dual_direct(b, canonical)
        assert verdict == want, (name, iname, verdict, why)


def test_self_dual_direct_is_deterministic(corpus):
    ci = corpus["semigroup345"].curve_input
    can = ci.ideals["can"]
    first = self_dual_direct(ring_ideal(ci.curve), can, seed=7)
    second = self_dual_direct(ring_ideal(ci.curve), can, seed=7)
    assert first == second


# ------------------------------------------------------------- value tables

RING_MEMBERS = {
    "cusp": {(0,), (2,)},
    "e8": {(0,), (3,), (5,), (6,), (8,)},
    "semigroup345": {(0,), (3,)},
    "node": {(0, 0), (1, 1)},
    "tacnode": {(0, 0), (1, 1), (2, 2)},
}


def test_ring_value_tables(ring_vms, curves):
    for name, want in RING_MEMBERS.items():
        vm = ring_vms[name]
        assert set(vm.members) == want, name
        assert vm.gamma == CONDUCTORS[name]
        assert vm.deg_offset == 0
        assert vm.weights == (1,) * vm.r
        assert vm.is_good()


def test_value_table_of_shifted_ideal(corpus):
    # values are reported relative to the minimum, the offset keeps the shift
    b = corpus["e8"].curve_input.ideals["nonprincipal"]
    assert b.values_offset() == (3,)
    vm = value_set(b)
    assert set(vm.members) == {(0,), (1,), (3,)}
    assert vm.gamma == (3,)


def test_value_table_degree_offsets(corpus):
    ci = corpus["cusp"].curve_input
    assert value_set(max_ideal(ci.curve)).deg_offset == 1
    assert value_set(normalization_ideal(ci.curve)).deg_offset == 1
    ci = corpus["semigroup345"].curve_input
    assert value_set(ci.ideals["can"]).deg_offset == 1


# ------------------------------------------------------------- finite fields

def test_jet_ranks(curves):
    assert jet_rank_mod_q(curves["cusp"], 2, 4) == 4
    assert jet_rank_mod_q(curves["cusp"], 3, 4) == 4
    assert jet_rank_mod_q(curves["node"], 2, 3) == 7
    assert jet_rank_mod_q(curves["node"], 2, 4) == 9
    assert jet_rank_mod_q(curves["tacnode"], 2, 3) == 6


COUNTS = {
    ("cusp", 2, 4): {(0,): 8, (1,): 0, (2,): 4, (3,): 2},
    ("cusp", 3, 4): {(0,): 54, (1,): 0, (2,): 18, (3,): 6},
    ("node", 2, 3): {(0, 0): 64, (1, 1): 16, (1, 2): 8, (2, 1): 8, (2, 2): 4, (0, 1): 0},
    ("tacnode", 2, 3): {(0, 0): 32, (1, 1): 16},
}


def test_point_counts(curves):
    for (name, q, level), table in COUNTS.items():
        for v, want in table.items():
            got = count_points_mod_q(curves[name], q, v, level)
            assert got == want, (name, q, v)


def test_count_rejects_composite_modulus(curves):
    with pytest.raises(SingvalError):
        count_points_mod_q(curves["cusp"], 4, (0,), 3)
    with pytest.raises(SingvalError):
        jet_rank_mod_q(curves["cusp"], 6, 3)


def test_count_respects_enumeration_ceiling(curves):
    with pytest.raises(EnumerationTooLarge):
        count_points_mod_q(curves["node"], 2, (0, 0), 4, ceiling=100)


def test_bad_reduction_detected():
    curve = CurvePresentation(1, [(series((2, 1), (3, Fraction(1, 2))),)])
    with pytest.raises(BadReduction):
        jet_rank_mod_q(curve, 2, 4)


def test_reduction_rejects_vanishing_leading_coefficient():
    curve = CurvePresentation(1, [(series((2, 3), (5, 1)),)])
    with pytest.raises(BadReduction):
        jet_rank_mod_q(curve, 3, 4)


# --------------------------------------------------------------- consistency

def test_length_report_is_additive(corpus):
    # b : Obar sits inside b sits inside bObar, so the lengths must add up
    for name, inp in corpus.items():
        if inp.mode != "concrete":
            continue
        ci = inp.curve_input
        for iname, b in list(ci.ideals.items()) + [("ring", ring_ideal(ci.curve))]:
            rep = lengths_report(b, None)
            assert rep.total == rep.inside + rep.outside, (name, iname)


def test_single_branch_gap_count_matches_quotient(corpus, ideal_vms):
    # one branch: dim of bObar/b is the number of non-values below the conductor
    for (name, iname), vm in ideal_vms.items():
        if vm.r != 1:
            continue
        ci = corpus[name].curve_input
        b = ring_ideal(ci.curve) if iname == "ring" else ci.ideals[iname]
        rep = lengths_report(b, None)
        assert rep.outside == vm.gamma[0] - vm.ell(vm.gamma), (name, iname)
