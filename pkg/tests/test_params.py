from fractions import Fraction

import pytest

from shardsec.params import NetworkParams, ParamError, as_fraction, validate

from conftest import TABLE_ROWS


def test_row1_validates():
    p = validate(TABLE_ROWS[0])
    assert p.committees == 8
    assert p.pool_size == 1199
    assert p.capacity == 33
    assert p.r == Fraction(333, 1000)
    assert p.remainder == 0


def test_row3_gives_four_committees():
    assert validate(TABLE_ROWS[2]).committees == 4


def test_decimal_resiliency_is_literal():
    p = validate(dict(TABLE_ROWS[0], n=3000, K=3000, M=3000, N=1))
    # floor(3000 * 0.333) = 999, whereas floor(3000 / 3) would be 1000
    assert p.capacity == 999
    assert as_fraction(0.333) == Fraction(333, 1000)
    assert as_fraction("1/3") == Fraction(1, 3)


@pytest.mark.parametrize("changes,invariant", [
    (dict(M_sel=300), "M_sel exceeds M"),
    (dict(K=1300), "K exceeds Lambda"),
    (dict(M=200, M_sel=200, K=150, n=100), "M_sel exceeds K"),
    (dict(n=0), "n must be >= 1"),
    (dict(N_s=0), "N_s must be >= 1"),
    (dict(r="1"), "r outside (0,1)"),
    (dict(R="0"), "R outside (0,1)"),
    (dict(K=50, M_sel=40), "K smaller than n"),
    (dict(N=1.5), "N must be an integer"),
    (dict(r="abc"), "r must be rational"),
])
def test_invariant_violations_are_named(changes, invariant):
    with pytest.raises(ParamError) as info:
        validate(dict(TABLE_ROWS[0], **changes))
    assert info.value.invariant == invariant


def test_violation_message_carries_values():
    with pytest.raises(ParamError, match="M_sel=300, M=200"):
        validate(dict(TABLE_ROWS[0], M_sel=300))


def test_missing_field():
    raw = dict(TABLE_ROWS[0])
    del raw["N_s"]
    with pytest.raises(ParamError, match="N_s"):
        validate(raw)


def test_derived_values_not_trusted():
    p = validate(dict(TABLE_ROWS[0], **{"lambda": 3, "Lambda": 5}))
    assert p.committees == 8 and p.pool_size == 1199


def test_remainder_tracked():
    p = validate(dict(TABLE_ROWS[0], n=150))
    assert p.committees == 5
    assert p.remainder == 50


def test_validate_is_idempotent():
    for raw in TABLE_ROWS:
        p = validate(raw)
        assert validate(p) == p
        assert validate(p.as_dict()) == p


def test_direct_construction_checks_invariants():
    with pytest.raises(ParamError):
        NetworkParams(N=10, K=5, M=1, M_sel=2, n=5, r=Fraction(1, 3),
                      R=Fraction(1, 3), N_s=1)


def test_json_dict_round_trips():
    p = validate(TABLE_ROWS[0])
    d = p.to_json_dict()
    assert d["r"] == "0.333" and d["lambda"] == 8 and d["Lambda"] == 1199
    assert validate(d) == p
