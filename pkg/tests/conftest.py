from __future__ import annotations

import warnings

import pytest

from invquandle.families import FamilyParams, reduced_presentation
from invquandle.parser import parse_pd, parse_presentation
from invquandle.winker import Finite, enumerate_quandle

TREFOIL_PD = "X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)"
HOPF_PD = "X(1,3,2,4),X(3,1,4,2)"
FIGURE_EIGHT_PD = "X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)"

TREFOIL_TEXT = """\
gens: x y z;
rels:
  x = y^z;
  y = z^x;
  z = x^y;
"""


def enum(p):
    result = enumerate_quandle(p)
    assert isinstance(result, Finite), result
    return result.table


@pytest.fixture(scope="session")
def trefoil():
    return enum(parse_presentation(TREFOIL_TEXT))


@pytest.fixture(scope="session")
def family_table():
    cache = {}

    def get(k, p, q):
        key = (k, p, q)
        if key not in cache:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                cache[key] = enum(reduced_presentation(FamilyParams(k, p, q)))
        return cache[key]

    return get


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, line = RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {line}")
