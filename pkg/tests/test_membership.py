import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzychoice.core_math import DomainError, meiotic_change
from fuzzychoice.membership import DEFAULT_PARAMS, MembershipParams, ParameterError, judge, mu

PARAMS = [
    DEFAULT_PARAMS,
    MembershipParams(alpha=-0.5, beta=0.2),
    MembershipParams(alpha=-3.0, beta=4.0),
    MembershipParams(alpha=-1.0, beta=1.0),
]


def test_boundary_and_reference_values():
    assert mu(DEFAULT_PARAMS, -1.0) == 0.0
    # 50-digit reference: 1 - (1 + 1.001*1.3)**(-1/1.001)
    assert mu(DEFAULT_PARAMS, 0.0) == pytest.approx(0.5651010349448968, rel=1e-13)
    assert round(mu(DEFAULT_PARAMS, 0.0), 4) == 0.5651
    m5, m10 = mu(DEFAULT_PARAMS, 5.0), mu(DEFAULT_PARAMS, 10.0)
    assert 0.9 < m10 < 1.0
    assert m10 > m5


@pytest.mark.parametrize("params", PARAMS)
def test_range_dense(params):
    x = np.concatenate([np.linspace(-1, 10, 20_001), np.geomspace(10, 1e6, 2_000)])
    m = mu(params, x)
    assert np.all(m >= 0) and np.all(m < 1)


@given(
    x1=st.floats(min_value=-1.0, max_value=1e4),
    x2=st.floats(min_value=-1.0, max_value=1e4),
)
def test_monotone(x1, x2):
    if x1 == x2:
        return
    lo, hi = sorted((x1, x2))
    if hi - lo < 1e-9 * max(1.0, abs(hi)):
        return  # below double resolution of the degree
    assert mu(DEFAULT_PARAMS, lo) < mu(DEFAULT_PARAMS, hi)


def test_domain_error():
    with pytest.raises(DomainError):
        mu(DEFAULT_PARAMS, -1.01)


@pytest.mark.parametrize("alpha, beta", [(0.5, 1.3), (0.0, 1.0), (-1.0, 0.0), (-1.0, -2.0), (float("nan"), 1.0)])
def test_invalid_parameters(alpha, beta):
    with pytest.raises(ParameterError):
        MembershipParams(alpha, beta)


def test_judge_examples():
    assert judge(DEFAULT_PARAMS, [("A", 0.1), ("B", 0.2)]) == "B"
    meiotic = meiotic_change(0.5, 0.5)
    assert meiotic == pytest.approx(0.22474487139158905, rel=1e-13)
    assert judge(DEFAULT_PARAMS, [("certain", 0.05), ("meiotic", meiotic)]) == "meiotic"
    assert judge(DEFAULT_PARAMS, [("only", 0.3)]) == "only"


def test_judge_empty():
    with pytest.raises(ValueError):
        judge(DEFAULT_PARAMS, [])


def test_judge_ties():
    assert judge(DEFAULT_PARAMS, [("a", 0.2, 0.5), ("b", 0.2, 0.9)]) == "b"
    assert judge(DEFAULT_PARAMS, [("a", 0.2), ("b", 0.2)]) == "a"


def test_judge_far_tail_follows_change():
    # degrees round to the same double out here; the larger change still wins
    assert judge(DEFAULT_PARAMS, [("a", 1e15), ("b", 1e15 + 1e3)]) == "b"


@given(st.lists(st.floats(min_value=-1.0, max_value=100.0), min_size=1, max_size=8))
def test_judge_argmax_invariant(changes):
    cands = [(f"c{i}", x) for i, x in enumerate(changes)]
    winners = {judge(p, cands) for p in PARAMS}
    assert len(winners) == 1
    best = max(changes)
    assert cands[changes.index(best)][0] in winners
