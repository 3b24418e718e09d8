"""
Conjecture module for the affine cell engine.
Places the simple modules of a regular block on the left cells of the matching
two-sided cell: a module labelled by the alcove of w goes to the left cell of
w⁻¹. Evaluates the checkable consequences (surjectivity, fibers against
A(e)-orbits, the canonical label) and the special cases of the lowest cell and
of the G2 subregular cell.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import config
from affine import affine_group
from cells import lowest_cell_member
from orbits import component_action, match_cells_to_orbits, orbit_table
from repmodel import simple_labels
from rootdata import weyl_multiply

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('conjecture')


@dataclass
class AssignmentReport:
    """Result of placing the labels of one block on the left cells of one two-sided cell."""
    type_name: str
    orbit: str = None
    omega: int = None
    canonical_cell: int = None
    block: object = None
    special_point: tuple = None
    labels: list = field(default_factory=list)
    fixed: dict = field(default_factory=dict)
    component_orbits: list = None
    canonical_label: str = None
    assignment: dict = field(default_factory=dict)
    representatives: dict = field(default_factory=dict)
    consistency: dict = field(default_factory=dict)
    unresolved: dict = field(default_factory=dict)
    search_trace: list = field(default_factory=list)
    obstruction: str = None
    checks: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.obstruction is None and not self.unresolved

    def to_dict(self):
        return {
            "type": self.type_name,
            "orbit": self.orbit,
            "two_sided_cell": self.omega,
            "canonical_cell": self.canonical_cell,
            "special_point": None if self.special_point is None else [str(c) for c in self.special_point],
            "labels": list(self.labels),
            "fixed": {k: ("unknown" if v is None else v) for k, v in self.fixed.items()},
            "component_orbits": self.component_orbits,
            "canonical_label": self.canonical_label,
            "assignment": dict(self.assignment),
            "representatives": dict(self.representatives),
            "consistency": dict(self.consistency),
            "unresolved": dict(self.unresolved),
            "search_trace": list(self.search_trace),
            "obstruction": self.obstruction,
            "checks": {k: ("not evaluable" if v is None else v) for k, v in self.checks.items()},
            "diagnostics": self.diagnostics,
        }


def dominant_points(datum, max_height):
    """Dominant points of the root lattice by increasing height, then coordinates."""
    out = []
    for height in range(max_height + 1):
        layer = [()]
        for i in range(datum.rank):
            rest = datum.rank - i - 1
            layer = [pt + (c,) for pt in layer for c in range(height - sum(pt) + 1)
                     if rest > 0 or sum(pt) + c == height]
        for pt in sorted(layer):
            if all(datum.pair_simple(pt, i) >= 0 for i in range(datum.rank)):
                out.append(pt)
    return out


def _gamma_elements(partition, gamma, label):
    """Elements attached to the alcoves of a label class that lie in the left cell gamma."""
    group = partition.group
    found = []
    for alcove in label.alcoves:
        g = group.element_of_alcove(alcove)
        if partition.left_cells.get(g) == gamma:
            found.append(g)
    found.sort(key=lambda g: (g.length, group.reduced_word(g)))
    return found


def _realizable(block, partition, gamma):
    missing = [label.name for label in block.labels if not _gamma_elements(partition, gamma, label)]
    return missing


def _relabel(block, v):
    model = simple_labels(block.datum, block.levi, v)
    model.orbit = block.orbit
    for old, new in zip(block.labels, model.labels):
        new.fixed_by_component_group = old.fixed_by_component_group
    return model


def find_special_point(block, partition, omega, max_height=None):
    """
    Search dominant points of Q for one whose surrounding alcoves realize every label inside Γ.

    Returns:
        tuple: (BlockModel at the point found or None, search trace)
    """
    max_height = config.SEARCH_HEIGHT if max_height is None else max_height
    gamma = partition.canonical_left_cell(omega)
    trace = []
    for point in dominant_points(block.datum, max_height):
        candidate = _relabel(block, point)
        missing = _realizable(candidate, partition, gamma)
        trace.append({"point": list(point), "ok": not missing, "missing": missing})
        if not missing:
            logger.info(f"Special point {point} realizes all {len(candidate.labels)} labels in cell {gamma}")
            return candidate, trace
    logger.warning(
        f"No special point of height <= {max_height} realizes the labels of {block.datum.name}, "
        f"I = {sorted(block.levi)} in the canonical left cell"
    )
    return None, trace


def assign(block, partition, omega, v=None, max_height=None):
    """
    Place each label of a block on a left cell of the two-sided cell omega.

    A label is represented by its lowest alcove lying in the canonical left
    cell Γ; if that alcove carries the element g⁻¹ = element_of_alcove(X), the
    label goes to the left cell of g.

    Args:
        block (BlockModel): Labels of the block
        partition (CellPartition): Cell partition containing omega
        omega (int): Two-sided cell id
        v (sequence, optional): Special point; searched for when omitted
        max_height (int, optional): Height bound of the search

    Returns:
        AssignmentReport: Assignment, unresolved labels, trace and checks
    """
    group = partition.group
    report = AssignmentReport(partition.group.name, orbit=block.orbit, omega=omega, block=block)
    report.labels = [label.name for label in block.labels]
    report.fixed = {label.name: label.fixed_by_component_group for label in block.labels}
    if all(flag is True for flag in report.fixed.values()):
        report.component_orbits = [[name] for name in report.labels]
    report.canonical_label = block.canonical_label.name

    if not partition.two_sided_complete.get(omega, False):
        report.obstruction = f"two-sided cell {omega} is incomplete at radius {partition.radius}"
        return report
    gamma = partition.canonical_left_cell(omega)
    report.canonical_cell = gamma

    if v is None:
        found, report.search_trace = find_special_point(block, partition, omega, max_height)
        if found is None:
            report.obstruction = "no suitable special point"
            return report
        block = found
    else:
        block = _relabel(block, v)
        missing = _realizable(block, partition, gamma)
        report.search_trace = [{"point": [str(c) for c in block.special_point.point],
                                "ok": not missing, "missing": missing}]
        if missing:
            report.obstruction = f"labels {', '.join(missing)} have no alcove around v in the canonical left cell"
            return report
    report.block = block
    report.special_point = block.special_point.point

    for label in block.labels:
        placed = []
        for g in _gamma_elements(partition, gamma, label):
            target = group.inverse(g)
            cell = partition.left_cells.get(target)
            if cell is None:
                placed.append((g, None, "outside the window"))
            elif not partition.left_complete[cell]:
                placed.append((g, None, f"left cell {cell} is incomplete"))
            else:
                placed.append((g, cell, None))
        rep, cell, reason = placed[0]
        report.representatives[label.name] = group.key(rep)
        if cell is None:
            report.unresolved[label.name] = reason
            logger.warning(f"Label {label.name} unresolved: {reason}")
            continue
        report.assignment[label.name] = cell
        report.consistency[label.name] = all(c == cell for _, c, _ in placed if c is not None)

    report.checks["surjective"] = set(report.assignment.values()) == set(
        partition.left_cells_in(omega, complete_only=True)
    )
    report.checks["inside_omega"] = all(
        partition.two_sided[partition.left_members[c][0]] == omega for c in report.assignment.values()
    )
    report.checks["representatives_consistent"] = all(report.consistency.values())
    report.checks["fibers"] = check_fibers(report)
    report.checks["canonical"] = check_canonical(report)
    logger.info(
        f"Assigned {len(report.assignment)}/{len(report.labels)} labels of {report.type_name} "
        f"to cells of two-sided cell {omega}"
    )
    return report


def check_fibers(report, record=None):
    """
    Compare the fibers of the assignment with the A(e)-orbits on the labels.

    Returns:
        bool or None: None when the A(e) action is unknown or labels are unresolved
    """
    orbits = report.component_orbits
    if orbits is None and record is not None and record.trivial_component_group:
        orbits = [[name] for name in report.labels]
    if orbits is None or report.unresolved or report.obstruction:
        return None
    fibers = {}
    for name, cell in report.assignment.items():
        fibers.setdefault(cell, set()).add(name)
    return {frozenset(f) for f in fibers.values()} == {frozenset(o) for o in orbits}


def check_canonical(report):
    """
    Whether the canonical label reached the canonical left cell.

    Other fixed labels and the cells they reached are recorded as diagnostics.

    Returns:
        bool or None: None when fixedness of the canonical label is unknown
    """
    name = report.canonical_label
    if name is None or report.fixed.get(name) is None or name not in report.assignment:
        return None
    others = {k: report.assignment.get(k) for k, flag in report.fixed.items()
              if flag is True and k != name}
    report.diagnostics["fixed_labels"] = others
    report.diagnostics["literal_fixed_to_canonical"] = all(
        cell == report.canonical_cell for cell in others.values()
    )
    return report.assignment[name] == report.canonical_cell


def assign_over_points(block, partition, omega, points):
    """
    Run assign at several special points and compare the results.

    Returns:
        tuple: (list of AssignmentReport, True iff every realizable point gives the same assignment)
    """
    reports = [assign(block, partition, omega, v=point) for point in points]
    usable = [r.assignment for r in reports if r.ok]
    independent = bool(usable) and all(a == usable[0] for a in usable)
    if not independent:
        logger.warning(f"Assignment for {block.datum.name}, I = {sorted(block.levi)} depends on the special point")
    return reports, independent


def cell_for_orbit(partition, record, match=None):
    """Two-sided cell matched to an orbit, or None."""
    match = match or match_cells_to_orbits(partition, orbit_table(partition.group.datum))
    for omega, matched in match.mapping.items():
        if matched.label == record.label:
            return omega
    return None


def assign_for_orbit(partition, record, v=None, max_height=None, match=None):
    """
    Assignment for the block of a standard-Levi orbit.

    Returns:
        AssignmentReport: With an obstruction when the orbit has no standard Levi
        form or no matched cell
    """
    datum = partition.group.datum
    if record.standard_levi is None:
        return AssignmentReport(datum.name, orbit=record.label,
                                obstruction=f"orbit {record.label} has no standard Levi form")
    omega = cell_for_orbit(partition, record, match)
    if omega is None:
        return AssignmentReport(datum.name, orbit=record.label,
                                obstruction=f"orbit {record.label} is not matched to a complete cell")
    block = simple_labels(datum, record.standard_levi, (0,) * datum.rank, record)
    report = assign(block, partition, omega, v=v, max_height=max_height)
    report.checks["fibers"] = check_fibers(report, record)
    if datum.series in ("A", "B") and datum.rank <= 3 and report.block is not None:
        report.checks["reflected_alcove"] = reflected_alcove_check(datum, record.standard_levi)
    return report


def reflected_alcove_check(datum, levi):
    """
    Whether the reflected lowest alcove, translated back to the origin, carries a label in W_I·w₀.

    Reflecting the lowest alcove in its upper wall gives an alcove labelled by
    s_β, β the highest short root; the check is s_β·w₀ ∈ W_I.
    """
    group = affine_group(datum.name)
    s_beta = datum.weyl_group[group.generators[0].w]
    product = weyl_multiply(datum, s_beta, datum.longest)
    result = set(product.word) <= set(levi)
    logger.info(f"Reflected-alcove check for {datum.name}, I = {sorted(levi)}: {result}")
    return result


@dataclass
class LowestCheck:
    """Label → chamber bijections for the lowest cell at several special points."""
    type_name: str
    points: list = field(default_factory=list)
    independent: bool = False

    @property
    def passed(self):
        accepted = [p for p in self.points if p["accepted"]]
        return bool(accepted) and self.independent and all(p["distinct"] for p in accepted)

    def to_dict(self):
        return {"type": self.type_name, "points": self.points,
                "independent": self.independent, "passed": self.passed}


def default_lowest_points(datum):
    """2ρ, 4ρ and 6ρ in root coordinates."""
    return [tuple(int(k * c) for c in datum.rho) for k in (2, 4, 6)]


def check_lowest(datum, v_choices=None, partition=None):
    """
    Lowest-cell construction: around a deep dominant v ∈ Q the alcove labelled w
    is h·A₀ with h = t_v·w, and the alcoves of h lie in |W| distinct chambers.

    Args:
        datum (RootDatum): Root datum
        v_choices (list, optional): Special points, defaults to 2ρ, 4ρ, 6ρ
        partition (CellPartition, optional): When given, the computed left cells
            of the h are compared as well

    Returns:
        LowestCheck: Per-point bijections and the independence flag
    """
    group = affine_group(datum.name)
    v_choices = v_choices or default_lowest_points(datum)
    result = LowestCheck(datum.name)
    bijections = []
    for v in v_choices:
        entry = {"point": [str(Fraction(c)) for c in v], "accepted": False, "reason": None,
                 "distinct": False, "bijection": {}}
        result.points.append(entry)
        if any(Fraction(c).denominator != 1 for c in v):
            entry["reason"] = "point is not in the root lattice"
            continue
        point = tuple(int(c) for c in v)
        try:
            group.special_point(point)
        except ValueError as e:
            entry["reason"] = str(e)
            continue
        if any(datum.pair_simple(point, i) < 0 for i in range(datum.rank)):
            entry["reason"] = "point is not dominant"
            continue

        translation = group.translation(point)
        chambers = {}
        cells = {}
        for w, alcove in group.alcoves_around(point):
            violated = [i for i in range(datum.rank)
                        if alcove.coords[datum.root_index[datum.simple_roots[i]]] < 1]
            if violated or not lowest_cell_member(group, alcove):
                i = violated[0] if violated else 0
                entry["reason"] = (
                    f"alcove labelled {w.key} lies below the hyperplane <x, a{i + 1}^v> = 1"
                )
                break
            h = group.multiply(translation, group.from_finite(w))
            chambers[w.key] = group.chamber_of(group.alcove_of(h)).key
            if partition is not None:
                cells[w.key] = partition.left_cells.get(h)
        else:
            entry["accepted"] = True
            entry["bijection"] = chambers
            entry["distinct"] = len(set(chambers.values())) == datum.weyl_order
            if partition is not None:
                entry["left_cells"] = cells
                known = [c for c in cells.values() if c is not None]
                entry["distinct_left_cells"] = len(set(known)) == len(known)
            bijections.append(chambers)
        if entry["reason"]:
            logger.warning(f"Special point {point} rejected for {datum.name}: {entry['reason']}")

    result.independent = bool(bijections) and all(b == bijections[0] for b in bijections)
    logger.info(f"Lowest-cell check for {datum.name}: {len(bijections)} points accepted, independent={result.independent}")
    return result


def check_g2(partition, data_dir=None):
    """
    The subregular block of G2: five modules, L₀ on the canonical left cell via
    the reflected lowest alcove, the S₃-triple on the smallest left cell.

    Args:
        partition (CellPartition): G2 partition in which the subregular cell is complete
        data_dir (str, optional): Directory of the orbit data

    Returns:
        AssignmentReport: Assignment of L₀…L₄ with the cell sizes and fiber pattern
    """
    group = partition.group
    datum = group.datum
    if datum.name != "G2":
        raise ValueError(f"The subregular G2 check needs a G2 partition, got {datum.name}")
    record = next(r for r in orbit_table(datum, data_dir) if r.dim_springer == 1)
    action = component_action(datum, record.label, data_dir)
    report = AssignmentReport(datum.name, orbit=record.label)
    if action is None:
        report.obstruction = f"no component-group action recorded for {record.label}"
        return report

    omega = partition.two_sided_of(group.generators[1])
    report.omega = omega
    if not partition.two_sided_complete[omega]:
        report.obstruction = f"subregular cell incomplete at radius {partition.radius}"
        return report
    gamma = partition.canonical_left_cell(omega)
    report.canonical_cell = gamma
    report.labels = list(action["labels"])
    report.component_orbits = [list(o) for o in action["orbits"]]
    report.canonical_label = action["canonical"]
    fixed = {name for orbit in action["orbits"] if len(orbit) == 1 for name in orbit}
    report.fixed = {name: name in fixed for name in report.labels}

    lefts = partition.left_cells_in(omega, complete_only=True)
    sizes = {i: len(partition.left_members[i]) for i in lefts}

    # the lowest alcove reflected in its upper wall is s0·A0
    reflected = group.action_alcove(group.generators[0])
    anchor = group.inverse(group.element_of_alcove(reflected))
    reflected_cell = partition.left_cells.get(anchor)
    smallest = min(lefts, key=lambda i: (sizes[i], i))
    remaining = [i for i in lefts if i not in (reflected_cell, smallest)]

    targets = {
        "reflected-lowest-alcove": reflected_cell,
        "smallest-cell": smallest,
        "remaining-cell": remaining[0] if len(remaining) == 1 else None,
    }
    for name in report.labels:
        cell = targets.get(action["placement"][name])
        if cell is None:
            report.unresolved[name] = f"placement {action['placement'][name]} has no cell"
        else:
            report.assignment[name] = cell

    ordered = [gamma] + sorted((i for i in lefts if i != gamma), key=lambda i: (-sizes[i], i))
    fibers = {}
    for name, cell in report.assignment.items():
        fibers.setdefault(cell, []).append(name)
    report.diagnostics["cell_sizes"] = [sizes[i] for i in ordered]
    report.diagnostics["fiber_pattern"] = [len(fibers.get(i, [])) for i in ordered]
    report.diagnostics["intersections"] = [partition.intersection_with_inverse(i) for i in ordered]
    report.diagnostics["isotropy_orders"] = action.get("isotropy_orders", {})

    report.checks["cell_sizes"] = report.diagnostics["cell_sizes"] == [8, 8, 7]
    report.checks["reflected_alcove_canonical"] = reflected_cell == gamma
    report.checks["triple_on_smallest"] = sizes[smallest] == action.get("triple_cell_size", 7) and all(
        report.assignment.get(n) == smallest for o in action["orbits"] if len(o) == 3 for n in o
    )
    report.checks["surjective"] = set(report.assignment.values()) == set(lefts)
    report.checks["intersections_match_orbits"] = all(
        n == len(action["orbits"]) for n in report.diagnostics["intersections"]
    )
    report.checks["fibers"] = check_fibers(report)
    report.checks["canonical"] = check_canonical(report)
    logger.info(
        f"G2 subregular check: sizes {report.diagnostics['cell_sizes']}, "
        f"fibers {report.diagnostics['fiber_pattern']}"
    )
    return report
