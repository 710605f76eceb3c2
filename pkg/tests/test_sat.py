import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcsample.logic import Configuration, FeatureModel, complete
from pcsample.sat import ContractError, SatContext, SatTimeout, extend_to_complete, valid

from conftest import B, D, G, P, T


def brute_valid(model, literals):
    for bits in itertools.product((False, True), repeat=model.size):
        a = (False,) + bits
        if all(a[abs(l)] == (l > 0) for l in literals) and all(
            any(a[abs(l)] == (l > 0) for l in c) for c in model.clauses
        ):
            return True
    return False


def test_valid_busybox_chain(busybox_model):
    # TFTP_PUT forces TFTPD forces BUSYBOX_TFTP
    assert not valid([2, -7], busybox_model)
    assert valid([2, 7], busybox_model)


def test_valid_trivial(tftp_model, busybox_model):
    assert valid([], busybox_model)
    assert valid([G, T, -B], tftp_model)


def test_unsat_model():
    m = FeatureModel(("A",), ((1,), (-1,)))
    assert not SatContext(m).satisfiable()
    m = FeatureModel(("A",), ((),))
    assert not SatContext(m).satisfiable()


def test_extend_unconstrained(tftp_model):
    c = extend_to_complete([G, T], tftp_model, seed=3)
    assert {G, T} <= c and complete(c, tftp_model)


def test_extend_complete_is_identity(tftp_model):
    full = Configuration([G, -P, T, B, -D])
    assert extend_to_complete(full, tftp_model, seed=1) == full


def test_extend_forced(busybox_model):
    c = extend_to_complete([2], busybox_model, seed=0)
    assert {2, 6, 7} <= c and len(c) == 7


def test_extend_rejects_invalid(busybox_model):
    with pytest.raises(ContractError):
        extend_to_complete([2, -7], busybox_model, seed=0)


def test_extend_deterministic(busybox_model):
    runs = [extend_to_complete([1], busybox_model, seed=42) for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]
    seeds = {extend_to_complete([], busybox_model, seed=s) for s in range(40)}
    assert len(seeds) > 1


def test_timeout_reported():
    # pigeonhole 9 into 8: hard for plain DPLL, answer must not be guessed
    holes, pigeons = 8, 9
    var = lambda p, h: p * holes + h + 1
    clauses = [tuple(var(p, h) for h in range(holes)) for p in range(pigeons)]
    clauses += [(-var(p, h), -var(q, h)) for h in range(holes)
                for p, q in itertools.combinations(range(pigeons), 2)]
    model = FeatureModel(tuple(f"x{i}" for i in range(1, pigeons * holes + 1)), tuple(clauses))
    with pytest.raises(SatTimeout):
        SatContext(model, timeout=0.02).satisfiable()


@st.composite
def cnf_models(draw, max_vars=8):
    n = draw(st.integers(1, max_vars))
    lit = st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v]))
    clauses = draw(st.lists(st.lists(lit, min_size=1, max_size=3), max_size=3 * n))
    return FeatureModel(tuple(f"F{i}" for i in range(1, n + 1)), tuple(tuple(c) for c in clauses))


@settings(max_examples=200, deadline=None)
@given(cnf_models(), st.data())
def test_valid_agrees_with_enumeration(model, data):
    lits = data.draw(st.lists(st.integers(1, model.size), max_size=model.size, unique=True))
    signs = data.draw(st.lists(st.booleans(), min_size=len(lits), max_size=len(lits)))
    config = [v if s else -v for v, s in zip(lits, signs)]
    ctx = SatContext(model)
    assert ctx.valid(config) == brute_valid(model, config)
    if ctx.valid(config):
        done = ctx.extend_to_complete(config, random.Random(0))
        assert set(config) <= done and complete(done, model) and brute_valid(model, done)
    # monotonicity
    for k in range(len(config)):
        if ctx.valid(config):
            assert ctx.valid(config[:k])
