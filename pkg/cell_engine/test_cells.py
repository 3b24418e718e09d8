"""
Tests for the cells module.
Rank-two windows are checked against the known structure of their cells:
Ã2 has three two-sided cells with 1, 3 and 6 left cells, and the G2
subregular cell splits into left cells of sizes 8, 8 and 7.
"""
import pytest

import config
from affine import affine_group
from cells import (
    CanonicalCellError,
    cell_partition,
    lowest_cell_left_cells,
    lowest_cell_member,
    shi_lowest_member,
)


@pytest.fixture(scope="module")
def a2_cells():
    return cell_partition(affine_group("A2"), 16, use_cache=False)


@pytest.fixture(scope="module")
def g2_cells():
    return cell_partition(affine_group("G2"), 12, use_cache=False)


def _lowest_cell(partition):
    return partition.two_sided_of(partition.group.from_finite(partition.group.datum.longest))


def assert_one_distinguished_per_left_cell(partition):
    """Every complete left cell holds one certified distinguished involution, unless not evaluable in the lowest cell."""
    for omega in partition.complete_two_sided():
        for left_id in partition.left_cells_in(omega, complete_only=True):
            found = partition.distinguished_involutions(left_id)
            if found is None:
                assert omega == partition.lowest_cell
                continue
            assert len(found) == 1
            element, certified = found[0]
            assert certified
            assert partition.group.is_involution(element)


def test_a1_cells():
    group = affine_group("A1")
    partition = cell_partition(group, 8, use_cache=False)
    complete = partition.complete_two_sided()
    assert complete == [0, 1]
    assert partition.two_sided_members[0] == [group.identity]
    assert partition.a_value(0) == (0, True)
    assert partition.a_value(1) == (1, True)
    assert len(partition.left_cells_in(1, complete_only=True)) == 2
    assert partition.two_sided_order() == [(1, 0)]


def test_a2_cell_counts(a2_cells):
    complete = a2_cells.complete_two_sided()
    assert len(complete) == 3
    counts = sorted(len(a2_cells.left_cells_in(omega, complete_only=True)) for omega in complete)
    assert counts == [1, 3, 6]


def test_a2_identity_cell_and_a_values(a2_cells):
    group = a2_cells.group
    assert a2_cells.two_sided_members[0] == [group.identity]
    values = sorted(a2_cells.a_value(omega) for omega in a2_cells.complete_two_sided())
    assert values == [(0, True), (1, True), (3, True)]
    assert a2_cells.a_value(_lowest_cell(a2_cells)) == (3, True)
    for s in group.generators:
        assert a2_cells.a_value(a2_cells.two_sided_of(s)) == (1, True)


def test_a2_order_is_a_chain(a2_cells):
    complete = a2_cells.complete_two_sided()
    order = set(a2_cells.two_sided_order())
    for omega in complete:
        if omega != 0:
            assert (omega, 0) in order
    middle = a2_cells.two_sided_of(a2_cells.group.generators[1])
    assert (_lowest_cell(a2_cells), middle) in order
    for a, b in order:
        assert (b, a) not in order


def test_a2_lowest_cell_closed_form(a2_cells):
    group = a2_cells.group
    lowest = _lowest_cell(a2_cells)
    for g in a2_cells.elements:
        if g.length > a2_cells.core_radius:
            continue
        in_cell = a2_cells.two_sided_of(g) == lowest
        assert lowest_cell_member(group, group.alcove_of(g)) == in_cell
        assert shi_lowest_member(group, g) == in_cell


def test_a2_lowest_left_cells_are_chambers(a2_cells):
    group = a2_cells.group
    cells = lowest_cell_left_cells(group)
    assert len(cells) == 6
    lowest = _lowest_cell(a2_cells)
    for g in a2_cells.elements:
        if g.length > a2_cells.core_radius or a2_cells.two_sided_of(g) != lowest:
            continue
        alcove = group.alcove_of(g)
        owners = [cell for cell in cells if cell.contains(group, alcove)]
        assert len(owners) == 1
    for cell in cells:
        if cell.distinguished is not None:
            assert a2_cells.two_sided_of(cell.distinguished) == lowest
            assert group.is_involution(cell.distinguished)


def test_a2_inversion_swaps_left_and_right(a2_cells):
    group = a2_cells.group
    core = [g for g in a2_cells.elements if g.length <= a2_cells.core_radius]
    for g in core:
        for h in core:
            same_left = a2_cells.left_cells[g] == a2_cells.left_cells[h]
            same_right = a2_cells.right_cells[group.inverse(g)] == a2_cells.right_cells[group.inverse(h)]
            assert same_left == same_right


def test_a2_canonical_left_cells(a2_cells):
    group = a2_cells.group
    for omega in a2_cells.complete_two_sided():
        left_id = a2_cells.canonical_left_cell(omega)
        assert all(group.is_dominant(group.alcove_of(g)) for g in a2_cells.left_members[left_id])
    assert a2_cells.canonical_left_cell(0) == a2_cells.left_cells[group.identity]
    assert a2_cells.dominant_partition_check()


def test_canonical_cell_requires_complete_cell(a2_cells):
    incomplete = [omega for omega in a2_cells.two_sided_members
                  if not a2_cells.two_sided_complete[omega]]
    for omega in incomplete[:3]:
        with pytest.raises(CanonicalCellError):
            a2_cells.canonical_left_cell(omega)


def test_a2_one_distinguished_involution_per_left_cell(a2_cells):
    for omega in a2_cells.complete_two_sided():
        for left_id in a2_cells.left_cells_in(omega, complete_only=True):
            found = a2_cells.distinguished_involutions(left_id)
            assert found is not None and len(found) == 1
            element, certified = found[0]
            assert certified
            assert a2_cells.group.is_involution(element)


def test_a2_summary_and_export(a2_cells):
    summary = a2_cells.summary()
    assert summary["type"] == "A2"
    assert summary["radius"] == 16
    assert summary["two_sided_cells"][0]["first"] == "e"
    exported = a2_cells.to_dict()
    assert exported["elements"]["e"]["two_sided_cell"] == 0
    assert len(exported["elements"]) == len(a2_cells.elements)


def test_g2_subregular_left_cells(g2_cells):
    group = g2_cells.group
    omega = g2_cells.two_sided_of(group.generators[1])
    assert g2_cells.two_sided_complete[omega]
    assert g2_cells.a_value(omega) == (1, True)
    lefts = g2_cells.left_cells_in(omega, complete_only=True)
    assert sorted(len(g2_cells.left_members[i]) for i in lefts) == [7, 8, 8]
    assert len(g2_cells.two_sided_members[omega]) == 23
    for left_id in lefts:
        assert g2_cells.intersection_with_inverse(left_id) == 3


def test_g2_canonical_subregular_cell_holds_s0(g2_cells):
    group = g2_cells.group
    omega = g2_cells.two_sided_of(group.generators[0])
    canonical = g2_cells.canonical_left_cell(omega)
    assert g2_cells.left_cells[group.generators[0]] == canonical
    assert len(g2_cells.left_members[canonical]) == 8


def test_a2_lowest_cell_from_closed_form(a2_cells):
    group = a2_cells.group
    assert a2_cells.lowest_consistent
    assert a2_cells.lowest_cell == _lowest_cell(a2_cells)
    members = set(a2_cells.two_sided_members[a2_cells.lowest_cell])
    assert members == {g for g in a2_cells.elements if lowest_cell_member(group, group.alcove_of(g))}
    assert a2_cells.two_sided_complete[a2_cells.lowest_cell]
    summary = a2_cells.summary()
    assert summary["lowest_cell"] == a2_cells.lowest_cell
    assert summary["lowest_consistent"] is True


def test_a2_lowest_distinguished_involutions_found(a2_cells):
    for cell in lowest_cell_left_cells(a2_cells.group):
        if cell.distinguished is None:
            continue
        left_id = a2_cells.left_cells[cell.distinguished]
        assert a2_cells.distinguished_involutions(left_id) == [(cell.distinguished, True)]
    assert_one_distinguished_per_left_cell(a2_cells)


def test_g2_a_radius_from_type_table(g2_cells):
    assert g2_cells.a_radius == config.default_a_radius("G2")
    assert g2_cells.a_radius >= 12
    assert g2_cells.a_value(g2_cells.lowest_cell) == (6, True)
    for omega in g2_cells.complete_two_sided():
        value, certified = g2_cells.a_value(omega)
        assert certified
        assert value in {0, 1, 2, 3, 6}


def test_g2_complete_left_cells_hold_their_distinguished_involution(g2_cells):
    for left_id, members in g2_cells.left_members.items():
        if g2_cells.two_sided[members[0]] == g2_cells.lowest_cell or not g2_cells.left_complete[left_id]:
            continue
        found = g2_cells.distinguished_involutions(left_id)
        assert found is not None and len(found) == 1
    assert_one_distinguished_per_left_cell(g2_cells)


def test_g2_lowest_cell_pieces(g2_cells):
    group = g2_cells.group
    assert g2_cells.lowest_consistent
    lowest = g2_cells.lowest_cell
    members = g2_cells.two_sided_members[lowest]
    assert set(members) == {g for g in g2_cells.elements if lowest_cell_member(group, group.alcove_of(g))}
    lefts = g2_cells.left_cells_in(lowest)
    assert 0 < len(lefts) <= group.datum.weyl_order
    for left_id in lefts:
        assert g2_cells.left_complete[left_id]
        chambers = {group.chamber_of(group.alcove_of(g)).key for g in g2_cells.left_members[left_id]}
        assert len(chambers) == 1

    w0 = group.from_finite(group.datum.longest)
    assert g2_cells.distinguished_involutions(g2_cells.left_cells[w0]) == [(w0, True)]
    for cell in lowest_cell_left_cells(group):
        if cell.distinguished is None or cell.distinguished.length <= g2_cells.radius:
            continue
        window_part = [g for g in members if cell.contains(group, group.alcove_of(g))]
        for left_id in {g2_cells.left_cells[g] for g in window_part}:
            assert g2_cells.distinguished_involutions(left_id) is None


def test_uncertified_a_value_is_not_evaluable(g2_cells):
    coarse = cell_partition(g2_cells.group, 12, table=g2_cells.table, a_radius=8)
    assert coarse.a_radius == 8
    value, certified = coarse.a_value(coarse.lowest_cell)
    assert not certified
    for left_id in coarse.left_cells_in(coarse.lowest_cell):
        assert coarse.distinguished_involutions(left_id) is None
    for omega in coarse.two_sided_members:
        if not coarse.a_value(omega)[1]:
            for left_id in coarse.left_cells_in(omega):
                assert coarse.distinguished_involutions(left_id) is None
