import pytest

from ellperiods.fixtures import DEMOS, F7, F7_A_NOTE, N1009_A_NOTE, Check, run_f7, run_z101sq
from ellperiods.residue import inv_mod


@pytest.mark.parametrize("name", sorted(DEMOS))
def test_every_row_matches(name):
    rows = DEMOS[name]()
    assert rows
    bad = [(r.name, r.expected, r.got) for r in rows if not r.ok]
    assert bad == []
    assert len({r.name for r in rows}) == len(rows)


def test_z101sq_with_schoolbook():
    assert all(r.ok for r in run_z101sq("schoolbook"))


def test_f7_normalisation_note():
    row = next(r for r in run_f7() if r.name.startswith("a ="))
    assert row.note == F7_A_NOTE
    assert F7["printed_a"] * F7["c"][0] % 7 != 1
    assert inv_mod(F7["c"][0], 7) == row.got == 5


def test_n1009_order_note():
    from ellperiods.fixtures import run_n1009
    row = next(r for r in run_n1009() if r.name.startswith("order of A"))
    assert row.ok and row.note == N1009_A_NOTE


def test_check_row():
    assert Check("x", 1, 1).ok and not Check("x", 1, 2).ok
