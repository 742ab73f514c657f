"""Shared fixtures: parsed corpus files, their value modules, random staircases."""

from pathlib import Path

import pytest

from singval.algebra import value_set
from singval.curve import ring_ideal
from singval.schemas import load_input

from randmod import random_modules

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
CONCRETE = ["cusp", "e8", "semigroup345", "node", "tacnode"]
GORENSTEIN = ["cusp", "e8", "node", "tacnode"]
ABSTRACT = ["abstract_e8"]


@pytest.fixture(scope="session")
def corpus():
    """name -> InputBundle for every corpus file."""
    return {name: load_input(CORPUS / f"{name}.json") for name in CONCRETE + ABSTRACT}


@pytest.fixture(scope="session")
def curves(corpus):
    return {name: corpus[name].curve_input.curve for name in CONCRETE}


@pytest.fixture(scope="session")
def ring_vms(curves):
    """Value module of each corpus ring."""
    return {name: value_set(ring_ideal(curve)) for name, curve in curves.items()}


@pytest.fixture(scope="session")
def ideal_vms(corpus):
    """(curve name, ideal name) -> value module, over every corpus ideal."""
    out = {}
    for name in CONCRETE:
        ci = corpus[name].curve_input
        out[(name, "ring")] = value_set(ring_ideal(ci.curve))
        for iname, ideal in ci.ideals.items():
            out[(name, iname)] = value_set(ideal)
    return out


@pytest.fixture(scope="session")
def rand_mods():
    """100 random finitely determined staircases, fixed seed, r in {1, 2}."""
    return random_modules(100, seed=20260814)
