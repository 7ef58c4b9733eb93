import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ainf_bialgebra.algebra import QQ, GradedModule, exterior
from ainf_bialgebra.catalog import (
    hopf_pair,
    make_ex1,
    make_theorem1,
    primitive_coproduct,
    trivial_product,
)
from ainf_bialgebra.errors import ArityMismatch, DegreeError
from ainf_bialgebra.ops import (
    Table,
    bar_component,
    cobar_component,
    compose,
    first_difference,
    fraction,
    identity,
    in_slot,
    is_zero_op,
    iterated_coproduct,
    iterated_product,
    koszul_permutation_sign,
    op_equal,
    sigma,
    tensor,
    tensor_power,
)


@pytest.fixture
def M():
    return GradedModule(exterior(QQ, 1), [("1", 0), ("y", 3), ("z", 2)])


@pytest.fixture
def odd_ops(M):
    f = Table(M, 1, 1, -1, {"y": "z"}, name="f")
    g = Table(M, 1, 1, 1, {"z": "y"}, name="g")
    return f, g


def structures():
    return [make_ex1(), make_theorem1((3, 4, 1, 3)), make_theorem1((2, 2, 1, 2))]


# evaluation conventions

def test_table_rejects_wrong_degree(M):
    with pytest.raises(DegreeError):
        Table(M, 1, 1, 0, {"y": "z"})


def test_table_zero_off_support(M, odd_ops):
    f, _ = odd_ops
    assert not f("z")
    assert f("y") == M.element("z")


def test_koszul_interchange(M, odd_ops):
    f, g = odd_ops
    # (f⊗g)(y|z) = (-1)^{|g||y|} f(y)|g(z)
    assert tensor(f, g)("y|z") == M.element("-z|y")
    assert tensor(g, f)("z|y") == M.element("y|z")


def test_odd_op_passes_x(M, odd_ops):
    f, _ = odd_ops
    op = tensor(f, identity(M, 1))
    assert op("x(y|z)") == M.element("-x(z|z)")


def test_compose_arity_check(M, odd_ops):
    f, _ = odd_ops
    with pytest.raises(ArityMismatch):
        compose(f, identity(M, 2))


def test_sigma_values(M):
    s = sigma(M, 2, 2)
    assert s("1|y|y|1") == M.element("-1|y|y|1")
    assert s("1|y|z|1") == M.element("1|z|y|1")
    assert s("y|z|1|y") == M.element("y|1|z|y")


def test_sigma_block_transpose_shape(M):
    # σ_{q,p} regroups p blocks of length q into q blocks of length p
    s = sigma(M, 3, 2)
    assert (s.inputs, s.outputs) == (6, 6)
    assert s("1|z|1|z|1|1") == M.element("1|z|z|1|1|1")


def test_koszul_permutation_sign(M):
    assert koszul_permutation_sign(M, ("y", "y"), [1, 0]) == -1
    assert koszul_permutation_sign(M, ("y", "z"), [1, 0]) == 1
    assert koszul_permutation_sign(M, ("y", "y", "y"), [2, 0, 1]) == 1


@pytest.mark.parametrize("p,q", [(p, q) for p in range(1, 5) for q in range(1, 5)])
def test_sigma_is_an_involution_pair(p, q):
    for h in structures()[:2]:
        M = h.module
        assert op_equal(compose(sigma(M, p, q), sigma(M, q, p)), identity(M, p * q))


@given(st.lists(st.sampled_from(["1", "y", "z"]), min_size=12, max_size=12),
       st.sampled_from([(3, 4), (4, 3), (2, 6), (6, 2)]))
@settings(max_examples=40, deadline=None)
def test_sigma_inverse_on_graded_words(word, pq):
    M = GradedModule(exterior(QQ, 1), [("1", 0), ("y", 3), ("z", 2)])
    p, q = pq
    w = tuple(word)
    assert compose(sigma(M, p, q), sigma(M, q, p)).on_word(w) == M.word(*w)


# fraction fast path against staged evaluation

def _staged(outer, inner, q, p, word):
    M = outer[0].module
    cur = {(word, 0): M.one()}
    for op in (tensor(*inner), sigma(M, q, p), tensor(*outer)):
        cur = op.apply_raw(cur)
    return cur


def _fraction_cases():
    cases = []
    for h in structures():
        mu, delta, w = h.mu, h.delta, h.omega
        m, n = h.m, h.n
        f, g = iterated_coproduct(delta, n), iterated_product(mu, m)
        cases.append((h, [mu, mu], [delta, delta]))
        cases.append((h, [g, w], [delta] * m))
        cases.append((h, [w, g], [delta] * m))
        cases.append((h, [mu] * n, [f, w]))
        cases.append((h, [mu] * n, [w, f]))
        cases.append((h, [w] + [g] * (n - 1), [f] * (m - 1) + [w]))
    return cases


@pytest.mark.parametrize("case", range(18))
def test_fraction_matches_staged_evaluation(case):
    h, outer, inner = _fraction_cases()[case]
    op = fraction(outer, inner)
    q, p = len(outer), len(inner)
    assert op._fraction
    for word in h.module.words(op.inputs):
        assert op.eval_word(word) == _staged(outer, inner, q, p, word), word


# candidate supports

def test_candidates_cover_the_support():
    for h in structures():
        M = h.module
        ops = [h.mu, h.delta, h.omega, hopf_pair(h.mu, h.delta)[1],
               iterated_product(h.mu, 3), tensor(h.omega, h.mu),
               fraction([h.mu] * h.n, [iterated_coproduct(h.delta, h.n), h.omega])]
        for op in ops:
            cands = op.candidates()
            if cands is None:
                continue
            full = {w for w in M.words(op.inputs) if op.eval_word(w)}
            assert full <= cands, op.name


def test_first_difference_is_canonical(ex1):
    M = ex1.module
    a = ex1.omega
    b = Table(M, 2, 3, 2, {"y|y": "1|1|y"}, name="b")
    assert first_difference(a, b) == ("y", "y")
    assert first_difference(a, a) is None


# the classical structure maps

@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_cobar_squares_to_zero(k):
    for h in structures():
        assert is_zero_op(compose(cobar_component(h.delta, k + 1), cobar_component(h.delta, k)))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("sign", [1, -1])
def test_bar_squares_to_zero(k, sign):
    for h in structures():
        d = compose(bar_component(h.mu, k, sign), bar_component(h.mu, k + 1, sign))
        assert is_zero_op(d)


@pytest.mark.parametrize("k", range(1, 6))
def test_iterated_maps_do_not_depend_on_bracketing(k):
    for h in structures():
        assert op_equal(iterated_coproduct(h.delta, k, "left"), iterated_coproduct(h.delta, k, "right"))
        assert op_equal(iterated_product(h.mu, k, "left"), iterated_product(h.mu, k, "right"))


def test_iterated_coproduct_values(ex1):
    M = ex1.module
    assert iterated_coproduct(ex1.delta, 3)("y") == M.element("1|1|y + 1|y|1 + y|1|1")
    assert iterated_product(ex1.mu, 2)("1|1") == M.element("1")
    assert iterated_product(ex1.mu, 4)("1|y|1|1") == M.element("y")


def test_hopf_compatibility_holds():
    for h in structures():
        assert op_equal(*hopf_pair(h.mu, h.delta))


def test_hopf_compatibility_fails_for_even_y_over_q():
    M = GradedModule(QQ, [("1", 0), ("y", 2)])
    lhs, rhs = hopf_pair(trivial_product(M), primitive_coproduct(M))
    assert rhs("y|y") == M.element("2(y|y)")
    assert not op_equal(lhs, rhs)


def test_operator_sugar(ex1):
    M = ex1.module
    mu, delta = ex1.mu, ex1.delta
    assert op_equal(mu @ mu, tensor(mu, mu))
    assert op_equal(delta * mu, compose(delta, mu))
    assert is_zero_op(mu - mu)
    assert op_equal(tensor_power(mu, 3), tensor(mu, mu, mu))
    assert op_equal(in_slot(mu, 1, 0), tensor(identity(M, 1), mu))
