import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import EXAMPLE1, EXAMPLE2
from possverify.core import (
    SPC_UNIVERSE,
    Universe,
    conditional_necessity,
    ignorance,
    necessity,
    normalise,
    possibility,
    validate,
)
from possverify.errors import AllZero, EmptyEvent, InvalidCategory, OutOfRange, WrongArity

K = SPC_UNIVERSE.size
OMEGA = range(K)

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@st.composite
def forecasts(draw, k=K):
    pi = draw(st.lists(unit, min_size=k, max_size=k))
    if max(pi) == 0.0:
        pi[draw(st.integers(0, k - 1))] = draw(st.floats(min_value=1e-6, max_value=1.0))
    return validate(pi)


events = st.sets(st.integers(0, K - 1), min_size=1)


def complement_max(pi, event):
    # oracle: enumerate the complement explicitly
    rest = [pi[i] for i in OMEGA if i not in set(event)]
    return max(rest) if rest else 0.0


class TestUniverse:
    def test_spc_default(self):
        assert SPC_UNIVERSE.categories == ("NONE", "MRGL", "SLGT", "ENH", "MDT", "HIGH")
        assert sum(SPC_UNIVERSE.climatology) == pytest.approx(1.0)

    @pytest.mark.parametrize("cats", [("ONLY",), ("A", "A")])
    def test_rejects_bad_labels(self, cats):
        with pytest.raises(ValueError):
            Universe(cats)

    def test_rejects_bad_climatology(self):
        with pytest.raises(OutOfRange):
            Universe(("a", "b"), (0.5, 0.6))
        with pytest.raises(WrongArity):
            Universe(("a", "b"), (1.0,))

    def test_index_resolution(self):
        assert SPC_UNIVERSE.index("MDT") == 4
        assert SPC_UNIVERSE.index(2) == 2
        with pytest.raises(InvalidCategory):
            SPC_UNIVERSE.index("EXTREME")
        with pytest.raises(InvalidCategory):
            SPC_UNIVERSE.index(6)


class TestValidate:
    def test_example1_subnormal(self):
        f = validate(EXAMPLE1)
        assert not f.is_normal
        assert f.commitment == 0.75

    def test_all_zero(self):
        with pytest.raises(AllZero):
            validate([0] * 6)

    def test_point_forecast_is_normal(self):
        f = validate([1, 0, 0, 0, 0, 0])
        assert f.is_normal and f.commitment == 1.0

    def test_arity(self):
        with pytest.raises(WrongArity):
            validate([0.5] * 5)

    @pytest.mark.parametrize("bad", [-0.1, 1.2, float("nan")])
    def test_range(self, bad):
        with pytest.raises(OutOfRange):
            validate([bad, 0.5, 0, 0, 0, 0])


class TestMeasures:
    def test_possibility_examples(self):
        f = validate(EXAMPLE1)
        assert possibility(f, ["MDT"]) == 0.75
        assert possibility(f, OMEGA) == f.commitment
        # brute-force max over members
        assert possibility(f, ["ENH", "MDT"]) == max(EXAMPLE1[3], EXAMPLE1[4]) == 0.75

    def test_possibility_empty_event(self):
        with pytest.raises(EmptyEvent):
            possibility(validate(EXAMPLE1), [])

    def test_necessity_examples(self):
        f1, f2 = validate(EXAMPLE1), validate(EXAMPLE2)
        assert necessity(f1, ["MDT"]) == pytest.approx(1 - complement_max(EXAMPLE1, [4]))
        assert necessity(f1, ["MDT"]) == pytest.approx(0.80)
        assert necessity(f1, OMEGA) == 1.0
        assert necessity(f2, ["MRGL"]) == pytest.approx(0.50)

    def test_ignorance_examples(self):
        assert ignorance(validate(EXAMPLE1)) == pytest.approx(0.25)
        assert ignorance(validate(EXAMPLE2)) == pytest.approx(0.5)
        assert ignorance(validate([0, 1, 0, 0, 0, 0])) == 0.0

    def test_conditional_necessity_examples(self):
        f1, f2 = validate(EXAMPLE1), validate(EXAMPLE2)
        assert conditional_necessity(f1, ["MDT"]) == pytest.approx(0.733, abs=1e-3)
        assert conditional_necessity(f2, ["MRGL"]) == 0.0
        assert conditional_necessity(f2, ["SLGT"]) == 0.0
        uniform = validate([0.4] * 6)
        assert all(conditional_necessity(uniform, [i]) == 0.0 for i in OMEGA)
        with pytest.raises(EmptyEvent):
            conditional_necessity(f1, [])

    def test_normalise_examples(self):
        n1 = normalise(validate(EXAMPLE1))
        assert n1.pi_norm[3] == pytest.approx(0.2 / 0.75)
        assert n1.pi_norm[4] == 1.0
        normal = validate([0.2, 1.0, 0.3, 0, 0, 0])
        assert normalise(normal).pi == normal.pi
        nb = normalise(validate([0.10, 0.10, 0.40, 0.55, 0.30, 0.0]))
        assert nb.pi_norm[2] == pytest.approx(0.7273, abs=1e-4)

    def test_raw_necessity_can_exceed_possibility_when_subnormal(self):
        # documented incoherence of raw N on subnormal forecasts
        f = validate([0.3, 0.1, 0, 0, 0, 0])
        assert necessity(f, [0]) > possibility(f, [0])


class TestProperties:
    @given(forecasts(), events)
    def test_conditional_necessity_bounds(self, f, event):
        nc = conditional_necessity(f, event)
        assert 0.0 <= nc
        assert nc <= possibility(f, event) / f.commitment + 1e-12

    @given(forecasts(), events, events)
    def test_max_additivity(self, f, a, b):
        b = b - a
        if not b:
            return
        assert possibility(f, a | b) == max(possibility(f, a), possibility(f, b))

    @given(forecasts(), events)
    def test_duality_on_normalised(self, f, event):
        assert necessity(normalise(f), event) == pytest.approx(
            conditional_necessity(f, event), abs=1e-12
        )

    @given(forecasts())
    def test_normalise_idempotent(self, f):
        once = normalise(f)
        assert normalise(once) == once
        assert max(once.pi) == 1.0
        assert all(0.0 <= x <= 1.0 for x in once.pi)

    @given(forecasts())
    def test_ignorance_plus_commitment(self, f):
        assert ignorance(f) + f.commitment == 1.0

    @settings(max_examples=50)
    @given(forecasts())
    def test_necessity_matches_enumeration(self, f):
        for r in range(1, K + 1):
            for event in itertools.combinations(OMEGA, r):
                assert necessity(f, event) == 1.0 - complement_max(f.pi, event)
