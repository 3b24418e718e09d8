"""
Command-line entry point for the affine cell engine.
Runs group, KL, cell, orbit, block and conjecture computations and writes the
results (JSON, JSON lines, CSV, SVG) together with an export manifest.

Exit codes: 0 success (possibly with flagged partial results), 1 computation
failure, 2 usage error.
"""

import re
import sys
import argparse
import logging
from fractions import Fraction

import config
from affine import affine_group
from cells import cell_partition
from conjecture import assign_for_orbit, check_g2, check_lowest
from exporter import Exporter, ball_summary, kl_rows
from hecke import KLTable
from kl_cache import table_for_window
from orbits import match_cells_to_orbits, orbit_frame, orbit_table, table_consistency
from repmodel import block_parameters, block_size_check, simple_labels
from rootdata import parse_type, supported_types
from svg_render import render_svg

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('main')


def parse_point(text):
    """Parse "2,2" or "1/2,1" into a tuple of Fractions."""
    return tuple(Fraction(part.strip()) for part in text.split(",") if part.strip())


def parse_levi(text):
    """Parse "1,2" into a frozenset of simple-root indices; "" is the empty set."""
    return frozenset(int(part) for part in text.split(",") if part.strip())


def element_key(text):
    """Argparse type for element keys: "e" or a string of generator digits."""
    if not re.fullmatch(r"e|[0-9]+", text):
        raise argparse.ArgumentTypeError(f"invalid element key '{text}', expected e or generator digits such as 0121")
    return text


def _check_keys(parser, args):
    """Reject element keys naming generators beyond the rank of the type."""
    if getattr(args, "x", None) is None:
        return
    rank = parse_type(args.type)[1]
    for name in ("x", "y"):
        key = getattr(args, name)
        if key != "e" and any(int(c) > rank for c in key):
            parser.error(f"--{name} {key}: generators of {args.type} are 0..{rank}")


def build_parser():
    parser = argparse.ArgumentParser(prog="affine-cells", description="Kazhdan-Lusztig cells of affine Weyl groups")
    commands = parser.add_subparsers(dest="command", required=True)

    def common(p, radius=True):
        p.add_argument("--type", required=True, choices=supported_types(), help="Root system type, e.g. A2")
        if radius:
            p.add_argument("--radius", type=int, default=None, help="Ball radius (defaults per type)")
        p.add_argument("--out", default=None, help="Output directory (defaults to CELLS_EXPORT_DIR)")
        p.add_argument("--cap", type=int, default=None, help="Element cap for ball enumeration")
        p.add_argument("--no-cache", action="store_true", help="Do not read or write the KL cache")

    group = commands.add_parser("group").add_subparsers(dest="action", required=True)
    common(group.add_parser("ball", help="Dump the ball of a radius as JSON lines"))
    common(group.add_parser("datum", help="Root datum as JSON"), radius=False)

    kl = commands.add_parser("kl").add_subparsers(dest="action", required=True)
    poly = kl.add_parser("poly", help="Kazhdan-Lusztig polynomial P_{x,y}")
    common(poly)
    poly.add_argument("--x", required=True, type=element_key, help="Element key of x, e.g. 01 or e")
    poly.add_argument("--y", required=True, type=element_key, help="Element key of y")
    poly.add_argument("--table", action="store_true", help="Also export the KL table of the ball as CSV")

    cells = commands.add_parser("cells").add_subparsers(dest="action", required=True)
    common(cells.add_parser("compute", help="Cell partition of a ball"))
    common(cells.add_parser("svg", help="SVG picture of a rank-2 partition"))

    orbits = commands.add_parser("orbits").add_subparsers(dest="action", required=True)
    common(orbits.add_parser("table", help="Orbit table with consistency checks"), radius=False)

    blocks = commands.add_parser("blocks").add_subparsers(dest="action", required=True)
    labels = blocks.add_parser("labels", help="Simple-module labels of a standard-Levi block")
    common(labels, radius=False)
    labels.add_argument("--levi", default=None, help="Simple roots of I, e.g. 1,2")
    labels.add_argument("--orbit", default=None, help="Orbit label; uses its standard Levi")
    labels.add_argument("--point", default=None, help="Special point in root coordinates, e.g. 1,1")
    params = blocks.add_parser("params", help="Dot-action orbits on X/pX")
    common(params, radius=False)
    params.add_argument("--p", type=int, required=True, help="Prime p")

    conj = commands.add_parser("conjecture").add_subparsers(dest="action", required=True)
    assign = conj.add_parser("assign", help="Place the simple modules of a block on left cells")
    common(assign)
    assign.add_argument("--orbit", required=True, help="Orbit label from the orbit table")
    assign.add_argument("--point", default=None, help="Special point; searched for when omitted")
    lowest = conj.add_parser("check-lowest", help="Lowest-cell construction at several special points")
    common(lowest, radius=False)
    lowest.add_argument("--points", default=None, help="Semicolon-separated points, e.g. '2,2;4,4'")
    g2 = conj.add_parser("check-g2", help="Subregular G2 block against the 8/8/7 left cells")
    g2.add_argument("--radius", type=int, default=None)
    g2.add_argument("--out", default=None)
    g2.add_argument("--cap", type=int, default=None)
    g2.add_argument("--no-cache", action="store_true")
    g2.set_defaults(type="G2")
    return parser


def _radius(args):
    return args.radius if args.radius is not None else config.default_radius(args.type)


def _partition(args):
    group = affine_group(args.type)
    return cell_partition(group, _radius(args), use_cache=not args.no_cache)


def cmd_group_ball(args, out):
    group = affine_group(args.type)
    radius = _radius(args)
    elements = group.ball(radius)
    out.write_jsonl(f"ball_{args.type}_r{radius}.jsonl", (group.element_record(g) for g in elements))
    out.write_csv(f"ball_{args.type}_r{radius}_summary.csv", ball_summary(group, elements))
    print(f"{args.type}: {len(elements)} elements of length <= {radius}")
    return {"radius": radius}


def cmd_group_datum(args, out):
    datum = affine_group(args.type).datum
    out.write_json(f"datum_{args.type}.json", datum.to_dict())
    print(f"{args.type}: N = {datum.N}, h = {datum.h}, |W| = {datum.weyl_order}")
    return {}


def cmd_kl_poly(args, out):
    group = affine_group(args.type)
    x = group.from_word(args.x)
    y = group.from_word(args.y)
    table = KLTable(group)
    poly = table.kl_polynomial(x, y)
    print(str(poly))
    result = {"x": group.key(x), "y": group.key(y), "P": str(poly),
              "coefficients": poly.coefficients(), "mu": table.mu(x, y)}
    out.write_json(f"kl_{args.type}_{group.key(x)}_{group.key(y)}.json", result)
    if args.table:
        radius = _radius(args)
        full = table_for_window(group, group.ball(radius), radius, use_cache=not args.no_cache)
        out.write_csv(f"kl_{args.type}_r{radius}.csv", kl_rows(full), columns=["x", "y", "coefficients"])
    return {"x": args.x, "y": args.y}


def cmd_cells_compute(args, out):
    partition = _partition(args)
    payload = partition.to_dict()
    try:
        match = match_cells_to_orbits(partition, orbit_table(partition.group.datum))
        payload["orbits"] = match.to_dict()
    except Exception as e:
        logger.warning(f"Orbit matching skipped: {e}")
    out.write_json(f"cells_{args.type}_r{partition.radius}.json", payload)
    for cell in partition.summary()["two_sided_cells"]:
        if not cell["complete"]:
            continue
        flag = "" if cell["a_certified"] else " (uncertified)"
        print(f"cell {cell['id']}: a = {cell['a']}{flag}, {cell['complete_left_cells']} left cells, "
              f"{cell['size']} elements in window")
    return {"radius": partition.radius, "outer_radius": partition.outer_radius,
            "core_radius": partition.core_radius, "a_radius": partition.a_radius}


def cmd_cells_svg(args, out):
    partition = _partition(args)
    path = out.write_text(f"cells_{args.type}_r{partition.radius}.svg", render_svg(partition))
    print(path)
    return {"radius": partition.radius}


def cmd_orbits_table(args, out):
    datum = affine_group(args.type).datum
    records = orbit_table(datum)
    out.write_csv(f"orbits_{args.type}.csv", orbit_frame(records))
    problems = table_consistency(datum, records)
    for record in records:
        print(f"{record.label}: dim {record.dim_orbit}, dim B_e {record.dim_springer}, "
              f"euler {record.euler}, A(e) {record.component_group}")
    if problems:
        raise ValueError(f"{len(problems)} consistency problems in the {args.type} orbit table")
    return {}


def cmd_blocks_labels(args, out):
    datum = affine_group(args.type).datum
    record = None
    if args.orbit:
        record = next((r for r in orbit_table(datum) if r.label == args.orbit), None)
        if record is None:
            raise ValueError(f"Unknown orbit {args.orbit} for {args.type}")
        if record.standard_levi is None:
            raise ValueError(f"Orbit {args.orbit} has no standard Levi form")
        levi = record.standard_levi
    else:
        levi = parse_levi(args.levi or "")
    point = parse_point(args.point) if args.point else (0,) * datum.rank
    model = simple_labels(datum, levi, point, record)
    payload = model.to_dict()
    if record is not None:
        payload["matches_euler"] = block_size_check(model, record)
    out.write_json(f"labels_{args.type}_I{''.join(str(i) for i in sorted(levi)) or '0'}.json", payload)
    print(f"{len(model.labels)} simple modules")
    return {"levi": sorted(levi), "point": [str(c) for c in point]}


def cmd_blocks_params(args, out):
    datum = affine_group(args.type).datum
    params = block_parameters(datum, args.p)
    out.write_json(f"blocks_{args.type}_p{args.p}.json", params.to_dict())
    print(f"{params.count} blocks")
    return {"p": args.p}


def cmd_conjecture_assign(args, out):
    partition = _partition(args)
    datum = partition.group.datum
    record = next((r for r in orbit_table(datum) if r.label == args.orbit), None)
    if record is None:
        raise ValueError(f"Unknown orbit {args.orbit} for {args.type}")
    point = parse_point(args.point) if args.point else None
    report = assign_for_orbit(partition, record, v=point)
    out.write_json(f"assign_{args.type}_{record.label}.json", report.to_dict())
    if report.obstruction:
        print(f"{record.label}: {report.obstruction}")
    for name, cell in sorted(report.assignment.items()):
        print(f"{name} -> left cell {cell}")
    for name, value in report.checks.items():
        print(f"{name}: {'not evaluable' if value is None else value}")
    return {"radius": partition.radius, "orbit": record.label}


def cmd_conjecture_check_lowest(args, out):
    datum = affine_group(args.type).datum
    points = [parse_point(p) for p in args.points.split(";")] if args.points else None
    result = check_lowest(datum, points)
    out.write_json(f"lowest_{args.type}.json", result.to_dict())
    print(f"{args.type}: passed = {result.passed}, independent = {result.independent}")
    return {"points": [p["point"] for p in result.points]}


def cmd_conjecture_check_g2(args, out):
    partition = _partition(args)
    report = check_g2(partition)
    out.write_json("check_g2.json", report.to_dict())
    print(f"cell sizes {report.diagnostics.get('cell_sizes')}, fibers {report.diagnostics.get('fiber_pattern')}")
    for name, value in report.checks.items():
        print(f"{name}: {'not evaluable' if value is None else value}")
    return {"radius": partition.radius}


HANDLERS = {
    ("group", "ball"): cmd_group_ball,
    ("group", "datum"): cmd_group_datum,
    ("kl", "poly"): cmd_kl_poly,
    ("cells", "compute"): cmd_cells_compute,
    ("cells", "svg"): cmd_cells_svg,
    ("orbits", "table"): cmd_orbits_table,
    ("blocks", "labels"): cmd_blocks_labels,
    ("blocks", "params"): cmd_blocks_params,
    ("conjecture", "assign"): cmd_conjecture_assign,
    ("conjecture", "check-lowest"): cmd_conjecture_check_lowest,
    ("conjecture", "check-g2"): cmd_conjecture_check_g2,
}


def run(argv=None):
    """
    Run one subcommand.

    Args:
        argv (list, optional): Arguments without the program name

    Returns:
        int: Exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _check_keys(parser, args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    if args.cap is not None:
        config.BALL_CAP = args.cap
    if getattr(args, "radius", None) is not None and args.radius < 0:
        logger.error("Radius must be nonnegative")
        return 2
    if not config.validate_config():
        logger.warning("Configuration validation reported problems")

    command = f"{args.command} {args.action}"
    try:
        out = Exporter(args.out)
        settings = HANDLERS[(args.command, args.action)](args, out)
        settings.update({"type": args.type, "ball_cap": config.BALL_CAP, "use_cache": not args.no_cache})
        out.write_manifest(command, settings)
        return 0
    except Exception as e:
        logger.error(f"Error running {command}: {e}")
        return 1


def main():
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
