"""
Representation model module for the affine cell engine.
Combinatorial stand-in for regular blocks of reduced enveloping algebras:
block parameters (dot-action orbits on X/pX) and, for χ in standard Levi form,
simple-module labels as the alcoves around a special point modulo W_I.
"""

import logging
from dataclasses import dataclass, field

import networkx as nx

from affine import affine_group
from rootdata import weyl_multiply

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('repmodel')


class LeviMismatchError(ValueError):
    """Raised when an orbit record is compared with a block of another Levi subset."""


@dataclass
class BlockParameters:
    """W-orbits on X/pX under the dot action, in fundamental-weight coordinates mod p."""
    type_name: str
    p: int
    representatives: list
    orbit_sizes: list

    @property
    def count(self):
        return len(self.representatives)

    def to_dict(self):
        return {
            "type": self.type_name,
            "p": self.p,
            "count": self.count,
            "representatives": [list(r) for r in self.representatives],
            "orbit_sizes": list(self.orbit_sizes),
        }


def block_parameters(datum, p):
    """
    Count the dot-action orbits of W on X/pX.

    A weight Σ m_i ω_i is stored as (m_i mod p); s_j sends m to m − (m_j + 1)·α_j,
    with α_j read off column j of the Cartan matrix.

    Args:
        datum (RootDatum): Root datum
        p (int): Prime

    Returns:
        BlockParameters: One representative per orbit (the smallest tuple) and orbit sizes
    """
    if p <= datum.h:
        logger.warning(f"p = {p} is not larger than the Coxeter number {datum.h} of {datum.name}; regular blocks may not exist")

    rank = datum.rank
    graph = nx.Graph()
    points = [()]
    for _ in range(rank):
        points = [pt + (c,) for pt in points for c in range(p)]
    graph.add_nodes_from(points)
    for m in points:
        for j in range(rank):
            shift = m[j] + 1
            image = tuple((m[i] - shift * datum.cartan[i][j]) % p for i in range(rank))
            graph.add_edge(m, image)

    orbits = sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0])
    params = BlockParameters(datum.name, p, [c[0] for c in orbits], [len(c) for c in orbits])
    logger.info(f"{datum.name}, p = {p}: {params.count} dot-action orbits on X/pX")
    return params


def levi_subgroup(datum, levi):
    """Elements of W_I, I a set of 1-based simple-root indices."""
    levi = frozenset(levi)
    return [w for w in datum.weyl_group if set(w.word) <= levi]


@dataclass
class LabelClass:
    """One simple module: a W_I-coset of labels and the alcoves around v carrying them."""
    index: int
    members: tuple
    alcoves: tuple
    fixed_by_component_group: object = None

    @property
    def name(self):
        return f"L{self.index}"

    @property
    def keys(self):
        return [w.key for w in self.members]


@dataclass
class BlockModel:
    """Simple-module labels of a regular block for χ in standard Levi form."""
    datum: object
    levi: frozenset
    special_point: object
    labels: list = field(default_factory=list)
    orbit: str = None

    def label_of(self, w):
        """Label class containing the Weyl-group element w."""
        for label in self.labels:
            if w in label.members:
                return label
        raise KeyError(w.key)

    @property
    def canonical_label(self):
        """The class of w₀, i.e. of the lowest alcove around the special point."""
        return self.label_of(self.datum.longest)

    def to_dict(self):
        def marker(flag):
            return "unknown" if flag is None else flag
        return {
            "type": self.datum.name,
            "levi": sorted(self.levi),
            "orbit": self.orbit,
            "special_point": [str(c) for c in self.special_point.point],
            "canonical": self.canonical_label.name,
            "labels": [
                {
                    "name": label.name,
                    "members": label.keys,
                    "alcoves": [list(a.coords) for a in label.alcoves],
                    "fixed_by_A": marker(label.fixed_by_component_group),
                }
                for label in self.labels
            ],
        }


def simple_labels(datum, levi, v, record=None):
    """
    Label the simple modules of a standard-Levi block by alcoves around v.

    The alcove v + w·A₀ carries the label w; two labels give the same module
    iff they lie in one coset W_I·w.

    Args:
        datum (RootDatum): Root datum
        levi (iterable): Subset I of simple roots, 1-based
        v (SpecialPoint or sequence): Special point
        record (OrbitRecord, optional): Orbit of the block; a trivial
            component group marks every label fixed

    Returns:
        BlockModel: |W| / |W_I| label classes
    """
    group = affine_group(datum.name)
    levi = frozenset(levi)
    if not levi <= set(range(1, datum.rank + 1)):
        raise ValueError(f"Levi subset {sorted(levi)} is not a set of simple roots of {datum.name}")
    point = group.special_point(v.point if hasattr(v, "point") else v)
    alcove_of_label = dict(group.alcoves_around(point))
    subgroup = levi_subgroup(datum, levi)

    fixed = None
    if record is not None and record.trivial_component_group:
        fixed = True

    model = BlockModel(datum, levi, point, orbit=None if record is None else record.label)
    seen = set()
    for w in datum.weyl_group:
        if w in seen:
            continue
        coset = sorted({weyl_multiply(datum, u, w) for u in subgroup}, key=lambda x: x.index)
        seen.update(coset)
        model.labels.append(LabelClass(
            index=len(model.labels),
            members=tuple(coset),
            alcoves=tuple(alcove_of_label[x] for x in coset),
            fixed_by_component_group=fixed,
        ))
    logger.info(
        f"{datum.name}, I = {sorted(levi)}, v = {point}: {len(model.labels)} simple modules"
    )
    return model


def block_size_check(model, record):
    """
    Compare the number of labels with the Euler characteristic of B_e.

    Returns:
        bool: True iff |labels| equals record.euler
    """
    if record.standard_levi is None or frozenset(record.standard_levi) != model.levi:
        raise LeviMismatchError(
            f"Orbit {record.label} has standard Levi {record.standard_levi}, block uses {sorted(model.levi)}"
        )
    return len(model.labels) == record.euler
