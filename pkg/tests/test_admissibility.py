"""Admissibility classifier: a fixed truth table plus structural invariants."""
import math
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from kplane.admissibility import (
    INF,
    NECESSARY_VIOLATED,
    OPEN,
    SUFFICIENT,
    ExponentQuery,
    as_exponent,
    check,
    scaling_t,
    sweep,
    sweep_csv,
)

# (d, k, p, q, t) -> (status, first source or required reason, extra sources)
TABLE = [
    ((3, 1, 2, 4, 4), SUFFICIENT, "christ-A", ()),
    ((3, 1, 3, 4, 4), NECESSARY_VIOLATED, "p_range", ()),
    ((3, 2, Fr(4, 3), 4, 4), SUFFICIENT, "oberlin-stein", ()),
    ((2, 1, 1, 3, 1), SUFFICIENT, "fubini", ()),
    ((3, 1, 1, 1, 1), SUFFICIENT, "fubini", ()),
    ((4, 1, Fr(3, 2), Fr(9, 5), Fr(9, 5)), SUFFICIENT, "christ-A", ("drury-x-ray",)),
    ((5, 2, 2, 6, 6), SUFFICIENT, "christ-A", ("drury-k-plane",)),
    ((4, 2, Fr(9, 5), Fr(9, 2), 9), SUFFICIENT, "christ-B", ()),
    ((3, 1, 2, 5, 4), NECESSARY_VIOLATED, "q_bound", ()),
    ((2, 1, 1, 2, 2), NECESSARY_VIOLATED, "scaling", ()),
    ((5, 1, 4, 4, 16), OPEN, None, ()),
    ((2, 1, Fr(3, 2), 3, 3), SUFFICIENT, "oberlin-stein", ("drury-k-plane",)),
]


class TestTruthTable:
    @pytest.mark.parametrize("args,status,tag,extra", TABLE)
    def test_case(self, args, status, tag, extra):
        v = check(ExponentQuery(*args))
        assert v.status == status
        if status == SUFFICIENT:
            assert v.source == tag
            assert v.reasons == ()
        elif status == NECESSARY_VIOLATED:
            assert tag in v.reasons
        else:
            assert v.source is None and v.reasons == ()
        for s in extra:
            assert s in v.sources


class TestExponents:
    def test_parsing(self):
        assert as_exponent("3/2") == Fr(3, 2)
        assert as_exponent("inf") == INF
        assert as_exponent(1.5) == Fr(3, 2)
        assert as_exponent(Fr(7, 3)) == Fr(7, 3)

    def test_scaling_line(self):
        assert scaling_t(3, 1, 2) == 4
        assert scaling_t(2, 1, Fr(3, 2)) == 3
        assert scaling_t(3, 1, 3) is None

    @pytest.mark.parametrize(
        "args",
        [(1, 1, 2, 2, 2), (3, 0, 2, 2, 2), (3, 3, 2, 2, 2), (3, 1, Fr(1, 2), 2, 2), (3, 1, 2, 2, Fr(1, 2))],
    )
    def test_rejects_malformed(self, args):
        with pytest.raises(ValueError):
            ExponentQuery(*args)

    def test_infinite_q(self):
        v = check(ExponentQuery(3, 1, 1, "inf", 1))
        assert v.status == SUFFICIENT and v.source == "fubini"

    def test_strict_xray_endpoint(self):
        # p = (d+1)/2 on the x-ray diagonal: the x-ray source does not fire
        d = 5
        p = Fr(d + 1, 2)
        t = (d - 1) * p / (d - p)
        v = check(ExponentQuery(d, 1, p, t, t))
        assert "drury-x-ray" not in v.sources
        assert any("strict" in n for n in v.notes)

    def test_verdict_json(self):
        doc = check(ExponentQuery(3, 1, 2, 4, 4)).to_dict()
        assert doc["query"]["p"] == "2" and doc["scaling_t"] == "4"
        assert doc["sources"][0] == doc["source"]


@st.composite
def hyperplane_queries(draw):
    d = draw(st.integers(2, 6))
    p = Fr(draw(st.integers(1, 40)), draw(st.integers(1, 40)))
    q = Fr(draw(st.integers(1, 60)), draw(st.integers(1, 20)))
    t = Fr(draw(st.integers(1, 60)), draw(st.integers(1, 20)))
    return d, p, q, t


@st.composite
def scaling_queries(draw):
    d = draw(st.integers(2, 7))
    k = draw(st.integers(1, d - 1))
    # p strictly inside [1, d/k) keeps the scaling exponent finite
    u = Fr(draw(st.integers(0, 99)), 100)
    p = 1 + u * (Fr(d, k) - 1)
    return d, k, p


class TestInvariants:
    @settings(max_examples=300)
    @given(hyperplane_queries())
    def test_hyperplane_never_open(self, args):
        d, p, q, t = args
        if p < 1 or q < 1 or t < 1:
            return
        assert check(ExponentQuery(d, d - 1, p, q, t)).status != OPEN

    @settings(max_examples=200)
    @given(scaling_queries())
    def test_scaling_point_passes_scaling(self, args):
        d, k, p = args
        t = scaling_t(d, k, p)
        v = check(ExponentQuery(d, k, p, t, t))
        assert "scaling" not in v.reasons

    @settings(max_examples=200)
    @given(scaling_queries(), st.integers(1, 5))
    def test_off_scaling_fails(self, args, bump):
        d, k, p = args
        t = scaling_t(d, k, p) + bump
        assert "scaling" in check(ExponentQuery(d, k, p, t, t)).reasons

    def test_exact_arithmetic(self):
        # 1.1 as a float is not 11/10; queries built from strings stay exact
        v = check(ExponentQuery(3, 2, "11/10", "inf", scaling_t(3, 2, Fr(11, 10))))
        assert "scaling" not in v.reasons


class TestSweep:
    def test_rows_and_csv(self):
        rows = sweep(3, 1, grid=5)
        assert len(rows) == 25
        text = sweep_csv(rows)
        assert text.splitlines()[0].startswith("p,")
        assert len(text.strip().splitlines()) == 26

    def test_hyperplane_sweep_has_no_open(self):
        assert all(r["status"] != OPEN for r in sweep(3, 2, grid=8))

    def test_modes(self):
        with pytest.raises(ValueError):
            sweep(3, 1, grid=3, q_mode="bogus")
        assert len(sweep(3, 1, grid=3, q_mode="extremal")) == 9
