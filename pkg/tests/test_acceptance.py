"""Acceptance gate: the ten numbered checks, one test and one printed
PASS/FAIL line per criterion.

Profile defaults to "standard"; set HILBLOC_ACCEPT_PROFILE=quick|standard|long
to change it.
"""

import os

import pytest

from hilbloc.verify import CHECKS, PROFILES

PROFILE = os.environ.get("HILBLOC_ACCEPT_PROFILE", "standard")

_results = {}


def _run(number, capsys):
    if number not in _results:
        res = CHECKS[number - 1](PROFILES[PROFILE])
        _results[number] = res
        with capsys.disabled():
            print("\n" + res.line(), flush=True)
    return _results[number]


@pytest.mark.parametrize(
    "number,name",
    [
        (1, "twist series vs printed tables"),
        (2, "K3 Chern numbers"),
        (3, "theorem 1: blowup vs P1xP1"),
        (4, "chi(L_n x E^r) binomial lemma"),
        (5, "chi_-y generating series"),
        (6, "phi_N,k generating series"),
        (7, "power-series lemma"),
        (8, "tautological chi"),
        (9, "engine self-consistency"),
        (10, "universal polynomial nonnegativity"),
    ],
)
def test_acceptance_criterion(number, name, capsys):
    res = _run(number, capsys)
    assert res.passed, f"criterion {number} ({name}): {res.detail}"
