"""
Tests for the orbit tables and the cell/orbit matching.
"""
import pytest

from affine import affine_group
from cells import cell_partition
from orbits import (
    MissingOrbitTableError,
    UNKNOWN,
    lc_prediction,
    match_cells_to_orbits,
    orbit_frame,
    orbit_table,
    parabolic_order,
    table_consistency,
)
from rootdata import build_root_datum, parse_type, supported_types


def datum_of(name):
    return build_root_datum(*parse_type(name))


class StubPartition:
    """Minimal partition: complete cells 0..n-1 forming a chain, with given a-values."""

    def __init__(self, name, a_values, left_counts=None):
        self.group = affine_group(name)
        self.values = a_values
        self.left_counts = left_counts or [1] * len(a_values)

    def complete_two_sided(self):
        return list(range(len(self.values)))

    def a_value(self, omega):
        return self.values[omega]

    def two_sided_order(self):
        n = len(self.values)
        return [(b, a) for a in range(n) for b in range(a + 1, n)]

    def left_cells_in(self, omega, complete_only=False):
        return list(range(self.left_counts[omega]))


@pytest.fixture(scope="module")
def a2_cells():
    return cell_partition(affine_group("A2"), 16, use_cache=False)


@pytest.fixture(scope="module")
def b2_cells():
    return cell_partition(affine_group("B2"), 16, use_cache=False)


@pytest.fixture(scope="module")
def g2_cells():
    return cell_partition(affine_group("G2"), 12, use_cache=False)


class MaskedPartition:
    """Real partition with chosen two-sided cells reporting an uncertified a-value."""

    def __init__(self, partition, masked):
        self.partition = partition
        self.masked = masked

    def __getattr__(self, name):
        return getattr(self.partition, name)

    def a_value(self, omega):
        if omega in self.masked:
            return self.masked[omega], False
        return self.partition.a_value(omega)


def test_every_supported_type_has_a_consistent_table():
    for name in supported_types():
        datum = datum_of(name)
        records = orbit_table(datum)
        assert table_consistency(datum, records) == []
        assert records[0].dim_orbit == 2 * datum.N
        assert records[-1].dim_orbit == 0


def test_regular_and_zero_rows():
    for name in ("A1", "A2", "B2", "G2"):
        datum = datum_of(name)
        records = orbit_table(datum)
        regular, zero = records[0], records[-1]
        assert (regular.dim_springer, regular.euler, lc_prediction(regular)) == (0, 1, 1)
        assert zero.dim_springer == datum.N
        assert zero.euler == datum.weyl_order
        assert lc_prediction(zero) == datum.weyl_order
        assert zero.standard_levi == frozenset()


def test_g2_subregular_row():
    records = {r.label: r for r in orbit_table(datum_of("G2"))}
    subregular = records["G2(a1)"]
    assert subregular.dim_orbit == 10
    assert subregular.dim_springer == 1
    assert subregular.euler == 5
    assert subregular.component_group == "S3"
    assert subregular.standard_levi is None
    assert lc_prediction(subregular) == 3


def test_levi_rows_match_weyl_quotients():
    for name in supported_types():
        datum = datum_of(name)
        for record in orbit_table(datum):
            if record.standard_levi is not None:
                assert record.euler * parabolic_order(datum, record.standard_levi) == datum.weyl_order


def test_unknown_prediction_and_unverified_rows():
    records = {r.label: r for r in orbit_table(datum_of("B3"))}
    assert lc_prediction(records["(3^2 1)"]) == UNKNOWN
    assert not records["(3 2^2)"].verified
    assert records["(1^7)"].verified
    for record in records.values():
        if record.trivial_component_group:
            assert lc_prediction(record) == record.euler


def test_missing_table(tmp_path):
    with pytest.raises(MissingOrbitTableError):
        orbit_table(datum_of("A2"), data_dir=str(tmp_path))


def test_inconsistent_table_reported():
    datum = datum_of("A2")
    records = orbit_table(datum)
    broken = [records[0], records[1].__class__(**{**records[1].to_dict(), "euler": 4,
                                                 "standard_levi": frozenset({1})}), records[2]]
    problems = table_consistency(datum, broken)
    assert any("|W|/|W_I|" in p for p in problems)


def test_orbit_frame_columns():
    frame = orbit_frame(orbit_table(datum_of("B2")))
    assert list(frame.columns)[:3] == ["label", "dim_orbit", "dim_springer"]
    assert frame["standard_levi"].tolist() == ["{1,2}", "{2}", "{1}", "{}"]


def test_a2_cells_match_orbits(a2_cells):
    match = match_cells_to_orbits(a2_cells, orbit_table(a2_cells.group.datum))
    group = a2_cells.group
    assert match.mapping[0].label == "(3)"
    lowest = a2_cells.two_sided_of(group.from_finite(group.datum.longest))
    middle = a2_cells.two_sided_of(group.generators[1])
    assert match.mapping[lowest].label == "(1^3)"
    assert match.mapping[middle].label == "(2 1)"
    assert match.order_reversing
    assert not match.unmatched
    assert all(entry["agrees"] for entry in match.lc_comparison.values())


def test_ambiguous_dimension_left_unmatched():
    records = orbit_table(datum_of("C3"))
    stub = StubPartition("C3", [(0, True), (1, True), (2, True)])
    match = match_cells_to_orbits(stub, records)
    assert match.mapping[0].label == "(6)"
    assert match.mapping[1].label == "(4 2)"
    assert 2 not in match.mapping
    assert "several orbits" in match.unmatched[2]


def test_uncertified_value_cross_filled():
    records = orbit_table(datum_of("G2"))
    stub = StubPartition("G2", [(0, True), (1, True), (2, True), (3, True), (4, False)],
                         left_counts=[1, 3, 6, 6, 12])
    match = match_cells_to_orbits(stub, records)
    assert match.mapping[4].label == "0"
    assert match.sources[4] == "cross-filled"
    assert match.a_values[4] == 6
    assert match.sources[1] == "a-value"
    assert match.order_reversing
    assert match.lc_comparison[1]["agrees"]


def test_two_uncertified_cells_paired_along_the_order():
    records = orbit_table(datum_of("G2"))
    stub = StubPartition("G2", [(0, True), (1, True), (2, True), (2, False), (3, False)],
                         left_counts=[1, 3, 6, 6, 12])
    match = match_cells_to_orbits(stub, records)
    assert match.mapping[3].label == "A1"
    assert match.mapping[4].label == "0"
    assert match.sources[3] == match.sources[4] == "cross-filled"
    assert match.a_values[3] == 3
    assert match.order_reversing
    assert not match.unmatched


def test_several_consistent_pairings_left_unmatched():
    records = orbit_table(datum_of("G2"))
    stub = StubPartition("G2", [(0, True), (1, True), (2, False), (2, False)])
    match = match_cells_to_orbits(stub, records)
    assert set(match.mapping) == {0, 1}
    assert "3 order-consistent pairings" in match.unmatched[2]
    assert "3 order-consistent pairings" in match.unmatched[3]


def test_g2_cells_match_orbits(g2_cells):
    records = orbit_table(g2_cells.group.datum)
    match = match_cells_to_orbits(g2_cells, records)
    group = g2_cells.group
    assert match.mapping[0].label == "G2"
    assert match.mapping[g2_cells.two_sided_of(group.generators[1])].label == "G2(a1)"
    assert match.mapping[g2_cells.lowest_cell].label == "0"
    assert all(source == "a-value" for source in match.sources.values())
    assert match.order_reversing
    for omega in (0, g2_cells.two_sided_of(group.generators[1])):
        assert match.lc_comparison[omega]["agrees"]
    lowest_entry = match.lc_comparison[g2_cells.lowest_cell]
    assert 0 < lowest_entry["left_cells"] <= lowest_entry["predicted"] == group.datum.weyl_order


def test_g2_uncertified_lowest_cell_cross_filled(g2_cells):
    records = orbit_table(g2_cells.group.datum)
    lowest = g2_cells.lowest_cell
    masked = MaskedPartition(g2_cells, {lowest: 2})
    match = match_cells_to_orbits(masked, records)
    assert match.order_reversing
    used = {record.label for omega, record in match.mapping.items() if omega != lowest}
    if lowest in match.mapping:
        assert match.mapping[lowest].label == "0"
        assert match.sources[lowest] == "cross-filled"
        assert match.a_values[lowest] == 6
    else:
        assert "order-consistent pairings" in match.unmatched[lowest]
    if {"A1~", "A1"} <= used:
        assert match.mapping[lowest].label == "0"


def test_b2_cells_match_orbits(b2_cells):
    group = b2_cells.group
    datum = group.datum
    match = match_cells_to_orbits(b2_cells, orbit_table(datum))
    subregular = b2_cells.two_sided_of(group.generators[1])
    lowest = b2_cells.lowest_cell
    assert b2_cells.two_sided_complete[subregular]
    assert b2_cells.a_value(subregular) == (1, True)
    assert b2_cells.a_value(lowest) == (datum.N, True)
    assert match.mapping[0].label == "(5)"
    assert match.mapping[subregular].label == "(3 1^2)"
    assert match.mapping[lowest].label == "(1^5)"
    assert match.order_reversing
    assert len(b2_cells.left_cells_in(lowest)) == datum.weyl_order
    for omega in (0, subregular, lowest):
        assert match.lc_comparison[omega]["agrees"]
    for entry in match.lc_comparison.values():
        assert entry["left_cells"] <= entry["predicted"]


def test_b2_one_distinguished_involution_per_left_cell(b2_cells):
    for omega in b2_cells.complete_two_sided():
        for left_id in b2_cells.left_cells_in(omega, complete_only=True):
            found = b2_cells.distinguished_involutions(left_id)
            if found is None:
                assert omega == b2_cells.lowest_cell
                continue
            assert len(found) == 1
            assert found[0][1]
            assert b2_cells.group.is_involution(found[0][0])
    for s in b2_cells.group.generators:
        assert b2_cells.distinguished_involutions(b2_cells.left_cells[s]) == [(s, True)]
