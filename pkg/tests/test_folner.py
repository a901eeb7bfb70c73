from fractions import Fraction

import pytest

from meandyn.folner import (BudgetError, Interleaved, LampBox, Subsequence,
                            ZCentered, ZInitial, ZShifted, cardinality,
                            defect, elements, group_of_family, interleave,
                            lamp_defect_bound)
from meandyn.groups import IntShift, Lamp


def shifts(els):
    return [g.a for g in els]


def test_integer_families():
    assert shifts(elements(ZInitial(), 3)) == [0, 1, 2]
    assert shifts(elements(ZCentered(), 2)) == [-2, -1, 0, 1, 2]
    assert shifts(elements(ZShifted(), 3)) == [3, 4, 5, 6]


def test_lamp_box_contents():
    els = elements(LampBox(), 1)
    assert len(els) == 2 * 4
    assert Lamp(1, ()) in els and Lamp(2, (1, 2)) in els
    assert all(set(g.lamps) | {g.a} <= {1, 2} for g in els)


@pytest.mark.parametrize("n", range(1, 9))
def test_lamp_box_cardinality(n):
    assert cardinality(LampBox(), n) == len(elements(LampBox(), n)) \
        == (n + 1) * 2 ** (n + 1)


def test_defect_examples():
    assert defect(ZInitial(), 10, [IntShift(1)]) == Fraction(1, 10)
    assert defect(ZInitial(), 10, [IntShift(0)]) == 0
    assert defect(ZCentered(), 5, [IntShift(2)]) == Fraction(2, 11)
    assert defect(LampBox(), 9, [Lamp(1, ())]) == Fraction(1, 10)


@pytest.mark.parametrize("n", range(1, 8))
def test_shift_defect_closed_form(n):
    assert defect(LampBox(), n, [Lamp(1, ())]) == Fraction(1, n + 1)


def test_defect_monotone_for_toggle():
    vals = [defect(LampBox(), n, [Lamp(0, (-1,))]) for n in range(2, 8)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    assert vals[-1] == Fraction(1, 8)


def test_lamp_defect_bound_examples():
    assert lamp_defect_bound(Lamp(0, (-1,)), 9) == Fraction(1, 10)
    assert lamp_defect_bound(Lamp(1, ()), 9) == Fraction(1, 10)
    assert lamp_defect_bound(Lamp(0, (0,)), 4) == 0  # site 0 shifts stay put
    with pytest.raises(TypeError):
        lamp_defect_bound(IntShift(1), 3)


def test_defect_dominated_by_bound_exhaustive():
    for g in elements(LampBox(), 2):
        assert defect(LampBox(), 3, [g]) <= lamp_defect_bound(g, 3)


def test_interleave():
    fam = interleave([ZInitial(), ZCentered()])
    assert shifts(elements(fam, 3)) == [0]            # block 1, first family
    assert shifts(elements(fam, 4)) == [-1, 0, 1]     # block 1, second family
    assert shifts(elements(fam, 5)) == [0, 1]         # block 2, first family
    assert cardinality(fam, 6) == 5
    with pytest.raises(ValueError):
        interleave([ZInitial(), LampBox()])


def test_subsequence():
    fam = Subsequence(ZInitial(), (2, 4, 8))
    assert shifts(elements(fam, 1)) == [0, 1]
    assert shifts(elements(fam, 3)) == list(range(8))
    assert elements(fam, 2) == elements(ZInitial(), 4)
    assert group_of_family(fam) == "integers"


def test_budget():
    with pytest.raises(BudgetError):
        cardinality(LampBox(), 30)
    with pytest.raises(BudgetError):
        elements(LampBox(), 10, budget=1000)
    assert cardinality(LampBox(), 30, budget=None) == 31 * 2 ** 31


def test_bad_index():
    with pytest.raises(ValueError):
        elements(ZInitial(), 0)
