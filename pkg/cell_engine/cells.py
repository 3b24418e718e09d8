"""
Cells module for the affine cell engine.
Left, right and two-sided Kazhdan-Lusztig cells on a ball of W_a, their
completeness flags, a-values, distinguished involutions, canonical left cells,
the partial order on two-sided cells and the closed-form lowest cell.
"""

import logging
from dataclasses import dataclass, field

import networkx as nx

import config
from kl_cache import table_for_window

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('cells')


class CanonicalCellError(ValueError):
    """Raised when a two-sided cell has zero or several all-dominant left cells."""


@dataclass
class CellPartition:
    """Cell data for the ball of a given radius, computed inside a larger outer ball."""
    group: object
    table: object
    radius: int
    outer_radius: int
    core_radius: int
    elements: list
    left_cells: dict = field(default_factory=dict)
    right_cells: dict = field(default_factory=dict)
    two_sided: dict = field(default_factory=dict)
    left_members: dict = field(default_factory=dict)
    right_members: dict = field(default_factory=dict)
    two_sided_members: dict = field(default_factory=dict)
    left_complete: dict = field(default_factory=dict)
    left_bounded: dict = field(default_factory=dict)
    two_sided_complete: dict = field(default_factory=dict)
    order: set = field(default_factory=set)
    a_values: dict = field(default_factory=dict)
    a_radius: int = 0
    lowest_cell: int = None
    lowest_consistent: bool = True

    def key(self, g):
        return self.group.key(g)

    def left_cells_in(self, omega, complete_only=False):
        """Left-cell ids contained in the two-sided cell omega, in id order."""
        ids = sorted({self.left_cells[g] for g in self.two_sided_members[omega]})
        if complete_only:
            ids = [i for i in ids if self.left_complete[i]]
        return ids

    def complete_two_sided(self):
        return [i for i in sorted(self.two_sided_members) if self.two_sided_complete[i]]

    def two_sided_of(self, g):
        return self.two_sided[g]

    def a_value(self, omega):
        """(value, certified) for a two-sided cell; value is None when no product reached it."""
        return self.a_values.get(omega, (None, False))

    def intersection_with_inverse(self, left_id):
        """|Γ ∩ Γ⁻¹| for a left cell Γ."""
        members = self.left_members[left_id]
        return sum(1 for g in members
                   if self.left_cells.get(self.group.inverse(g)) == left_id)

    def distinguished_involutions(self, left_id):
        """
        Distinguished elements of a left cell under the cell a-value.

        Returns:
            list or None: (element, certified) pairs; None (not evaluable) when the
            a-value is uncertified, or when nothing was found in a cell that
            reaches past the window
        """
        omega = self.two_sided[self.left_members[left_id][0]]
        value, certified = self.a_value(omega)
        if value is None or not certified:
            return None
        found = []
        for g in self.left_members[left_id]:
            flag, cert = self.table.is_distinguished(g, value, certified)
            if flag:
                found.append((g, cert))
        if not found and not self.left_bounded.get(left_id, False):
            return None
        return found

    def canonical_left_cell(self, omega):
        """
        The unique complete left cell of omega whose alcoves are all dominant.

        Args:
            omega (int): Two-sided cell id

        Returns:
            int: Left-cell id
        """
        candidates = []
        for left_id in self.left_cells_in(omega, complete_only=True):
            if all(self.group.is_dominant(self.group.alcove_of(g)) for g in self.left_members[left_id]):
                candidates.append(left_id)
        if len(candidates) != 1:
            raise CanonicalCellError(
                f"Two-sided cell {omega} of {self.group.name} has {len(candidates)} "
                f"all-dominant complete left cells"
            )
        return candidates[0]

    def dominant_partition_check(self):
        """True iff every dominant core element lies in the canonical left cell of its two-sided cell."""
        canonical = {}
        for g in self.elements:
            if g.length > self.core_radius or not self.group.is_dominant(self.group.alcove_of(g)):
                continue
            omega = self.two_sided[g]
            if not self.two_sided_complete[omega]:
                continue
            if omega not in canonical:
                try:
                    canonical[omega] = self.canonical_left_cell(omega)
                except CanonicalCellError as e:
                    logger.warning(f"Dominant partition check failed: {e}")
                    return False
            if self.left_cells[g] != canonical[omega]:
                return False
        return True

    def two_sided_order(self):
        """Pairs (a, b) with a < b in the two-sided order, as a sorted list."""
        return sorted(self.order)

    def summary(self):
        """Plain-data summary of the partition."""
        cells = []
        for omega in sorted(self.two_sided_members):
            value, certified = self.a_value(omega)
            lefts = self.left_cells_in(omega)
            cells.append({
                "id": omega,
                "size": len(self.two_sided_members[omega]),
                "complete": self.two_sided_complete[omega],
                "a": value,
                "a_certified": certified,
                "left_cells": [
                    {"id": i, "size": len(self.left_members[i]), "complete": self.left_complete[i],
                     "bounded": self.left_bounded[i]}
                    for i in lefts
                ],
                "complete_left_cells": len([i for i in lefts if self.left_complete[i]]),
                "first": self.key(self.two_sided_members[omega][0]),
            })
        return {
            "type": self.group.name,
            "convention": config.CONVENTION,
            "radius": self.radius,
            "outer_radius": self.outer_radius,
            "core_radius": self.core_radius,
            "a_radius": self.a_radius,
            "elements": len(self.elements),
            "lowest_cell": self.lowest_cell,
            "lowest_consistent": self.lowest_consistent,
            "two_sided_cells": cells,
            "order": [list(pair) for pair in self.two_sided_order()],
        }

    def to_dict(self):
        """Export form: element key -> cell ids and completeness, plus the order edge list."""
        assignment = {}
        for g in self.elements:
            left_id = self.left_cells[g]
            assignment[self.key(g)] = {
                "left_cell": left_id,
                "right_cell": self.right_cells[g],
                "two_sided_cell": self.two_sided[g],
                "complete": self.left_complete[left_id],
            }
        return {
            "type": self.group.name,
            "convention": config.CONVENTION,
            "radius": self.radius,
            "elements": assignment,
            "order": [list(pair) for pair in self.two_sided_order()],
            "summary": self.summary()["two_sided_cells"],
        }


def _descent_graphs(group, table, elements):
    """Directed graphs of the left and right preorders generated by μ-edges."""
    left_desc = {g: group.left_descents(g) for g in elements}
    right_desc = {g: group.right_descents(g) for g in elements}
    left_graph = nx.DiGraph()
    right_graph = nx.DiGraph()
    left_graph.add_nodes_from(elements)
    right_graph.add_nodes_from(elements)
    for y in elements:
        for z, _ in table.mu_below(y):
            if z not in left_desc:
                continue
            if not left_desc[z] <= left_desc[y]:
                left_graph.add_edge(z, y)
            if not left_desc[y] <= left_desc[z]:
                left_graph.add_edge(y, z)
            if not right_desc[z] <= right_desc[y]:
                right_graph.add_edge(z, y)
            if not right_desc[y] <= right_desc[z]:
                right_graph.add_edge(y, z)
    return left_graph, right_graph


def _components(graph, nodes, sort_key):
    """Strongly connected components of the graph induced on nodes, each sorted."""
    return [sorted(c, key=sort_key) for c in nx.strongly_connected_components(graph.subgraph(nodes))]


def _outer_components(graph, nodes):
    """Element -> frozenset of its strongly connected component in the graph induced on nodes."""
    owner = {}
    for comp in nx.strongly_connected_components(graph.subgraph(nodes)):
        frozen = frozenset(comp)
        for g in comp:
            owner[g] = frozen
    return owner


def _chamber_key(group, g):
    return group.chamber_of(group.alcove_of(g)).key


def _lowest_pieces(group, elements, sort_key, inverted=False):
    """Lowest-cell elements grouped by the chamber of their alcove (of the inverse when inverted)."""
    pieces = {}
    for g in elements:
        h = group.inverse(g) if inverted else g
        pieces.setdefault(_chamber_key(group, h), []).append(g)
    return [sorted(piece, key=sort_key) for piece in pieces.values()]


def _lowest_consistent(group, left_graph, two_graph, window, lowest):
    """
    Window components are subsets of true cells, so none may mix closed-form
    lowest elements with others, and no lowest left component may cross a chamber.
    """
    for comp in nx.strongly_connected_components(two_graph.subgraph(window)):
        inside = len(comp & lowest)
        if inside and inside != len(comp):
            return False
    for comp in nx.strongly_connected_components(left_graph.subgraph(lowest)):
        if len({_chamber_key(group, g) for g in comp}) > 1:
            return False
    return True


def cell_partition(group, radius, table=None, growth=None, margin=None, a_radius=None, use_cache=None):
    """
    Compute the cell partition of the ball of the given radius.

    The lowest two-sided cell and its left cells come from the closed form;
    the other cells are strongly connected components of the μ-graph on the
    rest of the window. A component is complete when its component in the
    outer ball meets the window in exactly its members and either lies inside
    the window or, for a left cell, holds its distinguished involution.

    Args:
        group (AffineWeylGroup): Group
        radius (int): Window radius L
        table (KLTable, optional): Table to reuse; filled on the outer ball if given
        growth (int, optional): Outer-ball enlargement, defaults to CELLS_WINDOW_GROWTH
        margin (int, optional): Core margin, defaults to CELLS_CORE_MARGIN
        a_radius (int, optional): Product length bound for a-values, defaults to the per-type value
        use_cache (bool, optional): Use the persistent KL cache

    Returns:
        CellPartition: Partition with completeness flags, order and a-values
    """
    growth = config.WINDOW_GROWTH if growth is None else growth
    margin = config.CORE_MARGIN if margin is None else margin
    a_radius = config.default_a_radius(group.name) if a_radius is None else a_radius
    outer_radius = radius + growth
    core_radius = radius - margin

    outer = group.ball(outer_radius)
    if table is None:
        table = table_for_window(group, outer, outer_radius, use_cache=use_cache)
    else:
        table.fill(outer)

    window = [g for g in outer if g.length <= radius]
    window_set = set(window)
    sort_key = lambda g: (g.length, group.reduced_word(g))

    left_graph, right_graph = _descent_graphs(group, table, outer)
    two_graph = nx.compose(left_graph, right_graph)

    lowest_outer = {g for g in outer if lowest_cell_member(group, group.alcove_of(g))}
    lowest = lowest_outer & window_set
    upper = window_set - lowest
    upper_outer = set(outer) - lowest_outer

    partition = CellPartition(group, table, radius, outer_radius, core_radius, window, a_radius=a_radius)
    partition.lowest_consistent = _lowest_consistent(group, left_graph, two_graph, window_set, lowest)
    if not partition.lowest_consistent:
        logger.warning(f"Closed-form lowest cell of {group.name} disagrees with the μ-graph at radius {radius}")

    left_comps = _components(left_graph, upper, sort_key) + _lowest_pieces(group, lowest, sort_key)
    right_comps = _components(right_graph, upper, sort_key) + _lowest_pieces(group, lowest, sort_key, inverted=True)
    two_comps = _components(two_graph, upper, sort_key) + ([sorted(lowest, key=sort_key)] if lowest else [])
    for comps in (left_comps, right_comps, two_comps):
        comps.sort(key=lambda c: sort_key(c[0]))

    for i, comp in enumerate(left_comps):
        partition.left_members[i] = comp
        for g in comp:
            partition.left_cells[g] = i
    for i, comp in enumerate(right_comps):
        partition.right_members[i] = comp
        for g in comp:
            partition.right_cells[g] = i
    for i, comp in enumerate(two_comps):
        partition.two_sided_members[i] = comp
        for g in comp:
            partition.two_sided[g] = i
    if lowest:
        partition.lowest_cell = partition.two_sided[next(iter(lowest))]

    # x -> y means x ≤ y in the two-sided preorder
    quotient = nx.DiGraph()
    quotient.add_nodes_from(partition.two_sided_members)
    for x, y in two_graph.subgraph(window_set).edges():
        if partition.two_sided[x] != partition.two_sided[y]:
            quotient.add_edge(partition.two_sided[x], partition.two_sided[y])
    closure = nx.transitive_closure(quotient, reflexive=False)
    partition.order = {(a, b) for a, b in closure.edges() if a != b}

    stages = table.a_stages(a_radius)
    for omega, members in partition.two_sided_members.items():
        per_stage = []
        for r in stages.stages:
            values = [stages.values[r][g] for g in members if g in stages.values[r]]
            per_stage.append(max(values) if values else None)
        value = per_stage[-1] if per_stage else None
        certified = value is not None and (
            value == group.datum.N or (len(per_stage) == 3 and all(v == value for v in per_stage))
        )
        partition.a_values[omega] = (value, certified)

    left_outer = _outer_components(left_graph, upper_outer)
    for i, comp in partition.left_members.items():
        partition.left_bounded[i] = False
        if comp[0] in lowest:
            partition.left_complete[i] = True
            continue
        outer_comp = left_outer[comp[0]]
        stable = outer_comp & window_set == set(comp)
        partition.left_bounded[i] = outer_comp <= window_set
        if partition.left_bounded[i]:
            partition.left_complete[i] = stable
        else:
            found = partition.distinguished_involutions(i)
            partition.left_complete[i] = stable and found is not None and len(found) == 1

    two_outer = _outer_components(two_graph, upper_outer)
    for omega, comp in partition.two_sided_members.items():
        if comp[0] in lowest:
            partition.two_sided_complete[omega] = True
            continue
        outer_comp = two_outer[comp[0]]
        stable = outer_comp & window_set == set(comp)
        lefts = partition.left_cells_in(omega)
        if outer_comp <= window_set:
            partition.two_sided_complete[omega] = stable and all(partition.left_complete[i] for i in lefts)
        else:
            # unbounded: every left cell reaching the core must be whole
            reaching = [i for i in lefts if partition.left_members[i][0].length <= core_radius]
            partition.two_sided_complete[omega] = (
                stable and partition.a_values[omega][1] and bool(reaching)
                and all(partition.left_complete[i] for i in reaching)
            )

    for omega in partition.complete_two_sided():
        value, certified = partition.a_values[omega]
        if value is not None and not certified:
            logger.warning(f"a-value {value} of cell {omega} in {group.name} is not certified")

    incomplete = len(two_comps) - len(partition.complete_two_sided())
    logger.info(
        f"Cells of {group.name} at radius {radius}: {len(two_comps)} two-sided "
        f"({incomplete} incomplete), {len(left_comps)} left"
    )
    return partition


def two_sided_order(partition):
    return partition.two_sided_order()


def canonical_left_cell(partition, omega):
    return partition.canonical_left_cell(omega)


def lowest_cell_member(group, alcove):
    """
    Closed-form membership of an alcove in the lowest two-sided cell.

    In the chamber u·C⁺ the alcove must lie beyond the hyperplane ⟨x, γ∨⟩ = 1
    for every wall γ = u·α_i that is a positive root.
    """
    datum = group.datum
    u = group.chamber_of(alcove)
    for simple in datum.simple_roots:
        index, sign = datum.signed_root(u.apply(simple))
        if sign > 0 and alcove.coords[index] < 1:
            return False
    return True


def shi_lowest_member(group, g):
    """
    Factorization test for the lowest cell: g = x·w_J·y with lengths adding and W_J ≅ W.

    Equivalently some right factor h of g (g = x·h, ℓ(g) = ℓ(x) + ℓ(h)) has J ⊆ L(h).
    """
    subsets = group.full_rank_parabolics
    seen = {g}
    frontier = [g]
    while frontier:
        nxt = []
        for h in frontier:
            left = group.left_descents(h)
            if any(subset <= left for subset in subsets):
                return True
            for s in left:
                shorter = group.multiply(group.generators[s], h)
                if shorter not in seen:
                    seen.add(shorter)
                    nxt.append(shorter)
        frontier = nxt
    return False


@dataclass(frozen=True)
class LowestLeftCell:
    """Left cell of the lowest two-sided cell: the part lying in one Weyl chamber."""
    chamber: object
    distinguished: object = None

    def contains(self, group, alcove):
        return group.chamber_of(alcove) == self.chamber and lowest_cell_member(group, alcove)


def lowest_cell_left_cells(group):
    """
    The |W| left cells of the lowest two-sided cell, one per chamber.

    The antidominant cell has distinguished involution w₀; the dominant one has
    (w₀, 2ρ), whose alcove is the lowest alcove around 2ρ.
    """
    datum = group.datum
    w0 = datum.longest
    two_rho = tuple(int(2 * c) for c in datum.rho)
    out = []
    for u in datum.weyl_group:
        distinguished = None
        if u == w0:
            distinguished = group.from_finite(w0)
        elif u == datum.identity:
            distinguished = group.multiply(group.translation(two_rho), group.from_finite(w0))
        out.append(LowestLeftCell(u, distinguished))
    return out
