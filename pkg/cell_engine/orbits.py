"""
Orbits module for the affine cell engine.
Loads the audited nilpotent-orbit tables shipped in data/, checks their internal
consistency and matches two-sided cells to orbits through a(Ω) = dim B_e.
"""

import os
import json
import logging
import itertools
from dataclasses import dataclass, field

import pandas as pd

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('orbits')

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")
COLUMNS = ["label", "dim_orbit", "dim_springer", "euler", "component_group",
           "standard_levi", "lc_count", "provenance"]
UNKNOWN = "unknown"


class MissingOrbitTableError(ValueError):
    """Raised when no orbit table ships for a type."""


@dataclass(frozen=True)
class OrbitRecord:
    """One nilpotent orbit with the Springer-fiber data used by the cell checks."""
    label: str
    dim_orbit: int
    dim_springer: int
    euler: int
    component_group: str
    standard_levi: frozenset = None
    lc_count: int = None
    provenance: str = ""

    @property
    def verified(self):
        return not self.provenance.startswith("unverified")

    @property
    def trivial_component_group(self):
        return self.component_group == "trivial"

    def to_dict(self):
        return {
            "label": self.label,
            "dim_orbit": self.dim_orbit,
            "dim_springer": self.dim_springer,
            "euler": self.euler,
            "component_group": self.component_group,
            "standard_levi": None if self.standard_levi is None else sorted(self.standard_levi),
            "lc_count": self.lc_count,
            "provenance": self.provenance,
        }


def _parse_levi(text):
    text = str(text).strip()
    if not text:
        return None
    inner = text.strip("{}").strip()
    if not inner:
        return frozenset()
    return frozenset(int(part) for part in inner.split(","))


def _parse_count(text):
    text = str(text).strip()
    return int(text) if text else None


def table_path(type_name, data_dir=None):
    return os.path.join(data_dir or DATA_DIR, f"orbits_{type_name}.csv")


def orbit_table(datum, data_dir=None):
    """
    Load the orbit table of a type.

    Args:
        datum (RootDatum): Root datum
        data_dir (str, optional): Directory holding orbits_<TYPE>.csv

    Returns:
        list: OrbitRecord values ordered by decreasing orbit dimension
    """
    path = table_path(datum.name, data_dir)
    if not os.path.exists(path):
        raise MissingOrbitTableError(f"No orbit table for {datum.name} at {path}")

    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    missing = [c for c in COLUMNS if c not in frame.columns]
    if missing:
        raise MissingOrbitTableError(f"Orbit table {path} lacks columns {missing}")

    records = []
    for row in frame.to_dict(orient="records"):
        records.append(OrbitRecord(
            label=row["label"].strip(),
            dim_orbit=int(row["dim_orbit"]),
            dim_springer=int(row["dim_springer"]),
            euler=int(row["euler"]),
            component_group=row["component_group"].strip() or "trivial",
            standard_levi=_parse_levi(row["standard_levi"]),
            lc_count=_parse_count(row["lc_count"]),
            provenance=row["provenance"].strip(),
        ))
    records.sort(key=lambda r: -r.dim_orbit)
    logger.info(f"Loaded {len(records)} orbits for {datum.name} from {path}")
    return records


def orbit_frame(records):
    """DataFrame form of an orbit table, for CSV export."""
    rows = []
    for record in records:
        row = record.to_dict()
        levi = row["standard_levi"]
        row["standard_levi"] = "" if levi is None else "{" + ",".join(str(i) for i in levi) + "}"
        row["lc_count"] = "" if row["lc_count"] is None else row["lc_count"]
        rows.append(row)
    return pd.DataFrame(rows, columns=COLUMNS)


def parabolic_order(datum, levi):
    """|W_I| for a subset I of simple roots (1-based indices)."""
    levi = frozenset(levi)
    return sum(1 for w in datum.weyl_group if set(w.word) <= levi)


def table_consistency(datum, records):
    """
    Internal consistency of an orbit table.

    Returns:
        list: Human-readable problems; empty when the table is consistent
    """
    problems = []
    for record in records:
        if not 0 <= record.dim_orbit <= 2 * datum.N or record.dim_orbit % 2:
            problems.append(f"{record.label}: orbit dimension {record.dim_orbit} out of range")
        if record.dim_springer != datum.N - record.dim_orbit // 2:
            problems.append(f"{record.label}: dim B_e {record.dim_springer} != N - dim/2")
        if record.standard_levi is not None:
            expected = datum.weyl_order // parabolic_order(datum, record.standard_levi)
            if record.euler != expected:
                problems.append(f"{record.label}: Euler characteristic {record.euler} != |W|/|W_I| = {expected}")
        if record.trivial_component_group and record.lc_count is not None and record.lc_count != record.euler:
            problems.append(f"{record.label}: trivial A(e) but lc_count {record.lc_count} != euler {record.euler}")

    regular = [r for r in records if r.dim_orbit == 2 * datum.N]
    zero = [r for r in records if r.dim_orbit == 0]
    if len(regular) != 1 or regular[0].euler != 1:
        problems.append("table must contain one regular orbit with Euler characteristic 1")
    if len(zero) != 1 or zero[0].euler != datum.weyl_order:
        problems.append("table must contain one zero orbit with Euler characteristic |W|")
    for problem in problems:
        logger.warning(f"Orbit table {datum.name}: {problem}")
    return problems


def lc_prediction(record):
    """
    Predicted number of left cells in the matching two-sided cell.

    Returns:
        int or str: The tabulated count, or "unknown"
    """
    if record.lc_count is None:
        return UNKNOWN
    return record.lc_count


def component_action(datum, label, data_dir=None):
    """
    Recorded A(e) action on the simple modules of a block, if known.

    Returns:
        dict or None: Entry of data/component_actions.json
    """
    path = os.path.join(data_dir or DATA_DIR, "component_actions.json")
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except Exception as e:
        logger.warning(f"Error reading component actions from {path}: {e}")
        return None
    return data.get(datum.name, {}).get(label)


@dataclass
class BijectionMatch:
    """Two-sided cells matched to orbits, with how each match was reached."""
    mapping: dict = field(default_factory=dict)
    sources: dict = field(default_factory=dict)
    a_values: dict = field(default_factory=dict)
    unmatched: dict = field(default_factory=dict)
    order_violations: list = field(default_factory=list)
    lc_comparison: dict = field(default_factory=dict)

    @property
    def order_reversing(self):
        return not self.order_violations

    def to_dict(self):
        return {
            "mapping": {str(k): v.label for k, v in sorted(self.mapping.items())},
            "sources": {str(k): v for k, v in sorted(self.sources.items())},
            "a_values": {str(k): v for k, v in sorted(self.a_values.items())},
            "unmatched": {str(k): v for k, v in sorted(self.unmatched.items())},
            "order_violations": [list(pair) for pair in self.order_violations],
            "lc_comparison": {str(k): v for k, v in sorted(self.lc_comparison.items())},
        }


def match_cells_to_orbits(partition, records):
    """
    Match complete two-sided cells to orbits by a(Ω) = dim B_e.

    Certified a-values are matched first and only to a unique candidate. Cells
    with an uncertified value are then paired with the remaining orbits: each
    orbit must have dim B_e at least the computed lower bound, and the whole
    mapping must reverse the two-sided order against the orbit closure order.
    The pairing is applied only when exactly one such pairing exists.

    Args:
        partition (CellPartition): Cell partition
        records (list): OrbitRecord values of the same type

    Returns:
        BijectionMatch: Matches, diagnostics and the order check
    """
    match = BijectionMatch()
    by_dim = {}
    for record in records:
        by_dim.setdefault(record.dim_springer, []).append(record)

    deferred = []
    for omega in partition.complete_two_sided():
        value, certified = partition.a_value(omega)
        if not certified:
            deferred.append((omega, value))
            continue
        candidates = by_dim.get(value, [])
        if len(candidates) == 1:
            match.mapping[omega] = candidates[0]
            match.sources[omega] = "a-value"
            match.a_values[omega] = value
        elif not candidates:
            match.unmatched[omega] = f"no orbit with dim B_e = {value}"
        else:
            labels = ", ".join(r.label for r in candidates)
            match.unmatched[omega] = f"several orbits with dim B_e = {value}: {labels}"

    used = {r.label for r in match.mapping.values()}
    order = partition.two_sided_order()
    leftover = [r for r in records if r.label not in used]
    pairings = []
    if deferred:
        for chosen in itertools.permutations(leftover, len(deferred)):
            if any(r.dim_springer < (value or 0) for (_, value), r in zip(deferred, chosen)):
                continue
            trial = dict(match.mapping)
            trial.update({omega: r for (omega, _), r in zip(deferred, chosen)})
            if all(trial[a].dim_orbit < trial[b].dim_orbit
                   for a, b in order if a in trial and b in trial):
                pairings.append(chosen)
    if len(pairings) == 1:
        for (omega, value), record in zip(deferred, pairings[0]):
            match.mapping[omega] = record
            match.sources[omega] = "cross-filled"
            match.a_values[omega] = record.dim_springer
            logger.info(f"a-value of cell {omega} cross-filled as {record.dim_springer} from orbit {record.label}")
    else:
        for omega, value in deferred:
            match.unmatched[omega] = (
                f"uncertified a-value {value} with {len(pairings)} order-consistent pairings"
            )

    for a, b in partition.two_sided_order():
        if a in match.mapping and b in match.mapping:
            if match.mapping[a].dim_orbit >= match.mapping[b].dim_orbit:
                match.order_violations.append((a, b))

    for omega, record in match.mapping.items():
        observed = len(partition.left_cells_in(omega, complete_only=True))
        predicted = lc_prediction(record)
        match.lc_comparison[omega] = {
            "orbit": record.label,
            "left_cells": observed,
            "predicted": predicted,
            "agrees": None if predicted == UNKNOWN else observed == predicted,
        }

    for omega, reason in match.unmatched.items():
        logger.warning(f"Cell {omega} of {partition.group.name} unmatched: {reason}")
    logger.info(
        f"Matched {len(match.mapping)} cells of {partition.group.name} to orbits "
        f"({len(match.order_violations)} order violations)"
    )
    return match
