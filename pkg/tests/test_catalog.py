from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ainf_bialgebra.algebra import QQ, Z2, exterior
from ainf_bialgebra.catalog import (
    HopfStructure,
    TypeParams,
    classify,
    degree_condition,
    enumerate_types,
    exterior_hopf,
    load_structure,
    make_ex1,
    make_theorem1,
    parse_structure,
    q_of_n,
)
from ainf_bialgebra.errors import (
    HopfStructureError,
    InadmissibleParams,
    NotApplicable,
    StructureParseError,
)
from ainf_bialgebra.ops import Table


def brute_force(m_max, q_max, n_max):
    found = set()
    for m in range(2, m_max + 1):
        for p in range(1, 2 * m - 2):
            for q in range(1, q_max + 1):
                for n in range(1, n_max + 1):
                    if m + n >= 4 and m * (q + 1) == n * (q - 1) + p + 3:
                        found.add((m, n, p, q))
    return found


# degree arithmetic

@pytest.mark.parametrize("mnpq", [(2, 2, 1, 5), (4, 3, 5, 1), (3, 4, 1, 3)])
def test_degree_condition_examples(mnpq):
    assert degree_condition(*mnpq)


def test_degree_condition_negative():
    assert not degree_condition(3, 4, 1, 2)


def test_q_of_n_examples():
    assert q_of_n(3, 1, 5) == 2
    assert q_of_n(3, 1, 4) == 3
    assert q_of_n(4, 1, 6) == Fraction(6, 2) == 3
    assert degree_condition(4, 6, 1, 3)
    with pytest.raises(NotApplicable):
        q_of_n(3, 1, 3)


@pytest.mark.parametrize("m", range(3, 9))
def test_q_of_n_endpoints_and_monotonicity(m):
    for p in range(1, 2 * m - 3):
        assert q_of_n(m, p, m + 1) == 2 * m - p - 2
        assert q_of_n(m, p, 3 * m - p - 3) == 2
        values = [q_of_n(m, p, n) for n in range(m + 1, 3 * m - p - 2)]
        assert all(a > b for a, b in zip(values, values[1:]))


def test_classify_cases():
    assert classify(2, 2, 1, 3) == "i"
    assert classify(4, 3, 5, 1) == "ii"
    assert classify(3, 4, 1, 3) == "iii"
    assert classify(3, 3, 3, 2) == "custom"
    assert classify(3, 4, 1, 2) is None
    assert classify(1, 2, 1, 1) is None


def test_type_params_validation():
    assert TypeParams(3, 4, 1, 3).case == "iii"
    with pytest.raises(InadmissibleParams):
        TypeParams(3, 4, 1, 2)
    with pytest.raises(InadmissibleParams):
        TypeParams(3, 4, 1, 3, case="ii")


# enumeration

def test_enumerate_small_windows():
    two = {t.astuple(): t.case for t in enumerate_types(2, q_cap=3)}
    assert two[(2, 2, 1, 2)] == "i" and two[(2, 2, 1, 3)] == "i"
    assert all(two[(2, n, 1, 1)] == "ii" for n in range(2, 7))
    three = {t.astuple(): t.case for t in enumerate_types(3, q_cap=4)}
    assert three[(3, 4, 1, 3)] == "iii" and three[(3, 5, 1, 2)] == "iii"


def test_enumerate_no_case_i_below_q_two():
    assert not [t for t in enumerate_types(2, q_cap=1) if t.case == "i"]


def test_enumerate_empty_case_iii_window():
    # p = 2m - 4 at m = 3 gives 3m - p - 3 = 4 = m + 1, one value of n only
    rows = [t for t in enumerate_types(3, q_cap=6) if t.case == "iii" and t.p == 2]
    assert [t.astuple() for t in rows] == [(3, 4, 2, 2)]


def test_enumerate_rejects_small_m_max():
    with pytest.raises(ValueError):
        enumerate_types(1)


@pytest.mark.parametrize("m_max", [2, 3, 4, 5, 6])
def test_enumerate_matches_brute_force(m_max):
    n_max = 20
    got = {t.astuple() for t in enumerate_types(m_max, q_cap=12, n_max=n_max)}
    assert got == brute_force(m_max, 12, n_max)


@given(st.integers(2, 7), st.integers(1, 8), st.integers(2, 25))
@settings(max_examples=60, deadline=None)
def test_every_enumerated_type_is_admissible(m_max, q_cap, n_max):
    rows = enumerate_types(m_max, q_cap=q_cap, n_max=n_max)
    assert rows == sorted(rows, key=TypeParams.astuple)
    for t in rows:
        assert degree_condition(*t.astuple())
        assert classify(*t.astuple()) == t.case


# structures

def test_ex1_values(ex1):
    M = ex1.module
    assert ex1.ring == Z2
    assert ex1.omega("y|y") == M.element("y|1|1 + 1|1|y")
    for w in ("1|1", "1|y", "y|1"):
        assert not ex1.omega(w)
    assert ex1.delta("y") == M.element("1|y + y|1")
    assert ex1.omega.degree == 2 and ex1.degree_ok()


def test_make_theorem1_values():
    h = make_theorem1((2, 3, 1, 1))
    M = h.module
    assert h.ring == exterior(QQ, 1)
    assert h.omega("y|y") == M.element("x(y|y|y)")
    assert h.omega("xy|y") == M.zero(3)
    for w in ("1|y", "y|1", "1|1"):
        assert not h.omega(w)
    assert h.degree_ok()


def test_make_theorem1_degree_at_case_ii():
    h = make_theorem1((4, 3, 5, 1))
    image = h.omega("y|y|y|y")
    assert image.degree() - h.module.word_degree(("y",) * 4) == 4


def test_make_theorem1_base_ring_choice():
    assert make_theorem1((2, 2, 1, 3)).ring.base == "Q"
    assert make_theorem1((2, 2, 1, 2)).ring.base == "Z2"
    assert make_theorem1((2, 2, 1, 3), base="Z2").ring.base == "Z2"


def test_make_theorem1_rejects_inadmissible():
    with pytest.raises(InadmissibleParams):
        make_theorem1((3, 4, 1, 2))


def test_hopf_check_rejects_bad_structures():
    h = exterior_hopf(QQ, 3)
    M = h.module
    bad_mu = Table(M, 2, 1, 0, {"1|1": "1", "1|y": "y"}, name="μ")
    with pytest.raises(HopfStructureError):
        HopfStructure(M, bad_mu, h.delta)
    with pytest.raises(HopfStructureError):
        exterior_hopf(QQ, 2)


EX1_TEXT = """\
# the two-cell example
ring Z2
generators 1:0 y:-2
type 2 3
omega y|y = y|1|1 + 1|1|y
"""


def test_parse_structure_reproduces_ex1(ex1):
    h = parse_structure(EX1_TEXT, name="ex1")
    for w in ex1.module.words(2):
        assert h.omega.eval_word(w) == ex1.omega.eval_word(w)
    assert h.omega.degree == 2


def test_parse_structure_with_overrides(tmp_path):
    text = "ring E(Q,1)\ngenerators 1:0 y:1\ntype 2 2\nomega y|y = x(y|y)\nmu y|y = 0\n"
    path = tmp_path / "t.struct"
    path.write_text(text)
    h = load_structure(path)
    assert h.name == "t"
    assert h.omega.degree == 1


@pytest.mark.parametrize("text", [
    "ring Z2\ngenerators 1:0 y:-2\nomega y|y = y|1|1\n",
    "ring Z3\ngenerators 1:0 y:-2\ntype 2 3\n",
    "ring Z2\ngenerators 1:0 y:-2\ntype 2 3\nomega y = y|1|1\n",
    "ring Z2\ngenerators 1:0 y:-2\ntype 2 3\nomega y|y = y|1|1 + 1|1|1\n",
    "ring Z2\ngenerators 1:0 y:-2\ntype 2 3\nbogus\n",
    "ring Q\ngenerators 1:0 y:2\ntype 2 2\nomega y|y = y|y\n",
    "ring Z2\ngenerators 1:0 y:2\ntype 2 3\nomega y|y = y|1|1\ndelta y = y|y\n",
])
def test_parse_structure_errors(text):
    with pytest.raises(StructureParseError):
        parse_structure(text)
