"""Command-line front end.

Subcommands take a network document (compile, verify, mergers) or an
arrangement document (regions, poset, gp-check, plot) and write a JSON
report, or an SVG for plot, to --output or standard output. Exit codes:
0 success, 1 validation failure, 2 verification found mismatches.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import compiler, geometry, jsonio, svg
from .network import NetworkFormatError, parse_network

COMMANDS = ("compile", "verify", "regions", "poset", "gp-check", "mergers", "plot")

_NETWORK_COMMANDS = {"compile", "verify", "mergers"}


@dataclass
class RunConfig:
    """One resolved invocation of the tool."""

    command: str
    input_path: str
    tol: float = geometry.DEFAULT_TOL
    margin: float = 1e-6
    box: float = geometry.DEFAULT_BOX
    sample_box: float = compiler.DEFAULT_SAMPLE_BOX
    samples: int = 10000
    seed: int = 0
    output_path: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.margin < self.tol:
            raise ValueError("margin must be at least tol")
        if self.box <= 0 or self.sample_box <= 0:
            raise ValueError("box and sample-box must be positive")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")


def _read_input(config):
    with open(config.input_path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(config, text):
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(config):
    """Execute a configured command; returns the process exit code."""
    try:
        text = _read_input(config)
        exit_code = 0
        if config.command in _NETWORK_COMMANDS:
            network = parse_network(text)
            compiled = compiler.compile(
                network, tol=config.tol, box=config.box
            )
            if config.command == "compile":
                obj = jsonio.compiled_to_obj(compiled)
            elif config.command == "verify":
                report = compiler.verify(
                    network,
                    compiled,
                    samples=config.samples,
                    margin=config.margin,
                    seed=config.seed,
                    sample_box=config.sample_box,
                )
                obj = jsonio.report_to_obj(report)
                if report.mismatches:
                    exit_code = 2
            else:
                pairs = compiler.inseparable_pairs(compiled)
                obj = jsonio.pairs_to_obj(pairs)
            out = jsonio.canonical_dumps(obj) + "\n"
        else:
            arrangement = jsonio.parse_arrangement(text)
            if config.command == "regions":
                regions = geometry.enumerate_regions(
                    arrangement, tol=config.tol, box=config.box
                )
                out = jsonio.canonical_dumps(jsonio.regions_to_obj(regions)) + "\n"
            elif config.command == "poset":
                poset = geometry.intersection_poset(arrangement, tol=config.tol)
                edges = geometry.hasse_edges(poset)
                out = jsonio.canonical_dumps(jsonio.poset_to_obj(poset, edges)) + "\n"
            elif config.command == "gp-check":
                flag = geometry.is_general_position(arrangement, tol=config.tol)
                out = jsonio.canonical_dumps({"general_position": bool(flag)}) + "\n"
            else:  # plot
                if arrangement.dimension != 2:
                    raise ValueError("plot requires dimension 2")
                out = svg.render_svg(
                    arrangement, tol=config.tol, box=config.box
                )
        _emit(config, out)
        return exit_code
    except (NetworkFormatError, jsonio.DocumentFormatError, ValueError,
            geometry.DegenerateArrangementError, OSError) as exc:
        print(f"stepregions {config.command}: {exc}", file=sys.stderr)
        return 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="stepregions",
        description=(
            "Compile step-activation networks into hyperplane-arrangement "
            "region selections, and inspect the geometry directly."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("compile", "compile a network document into regions and selections"),
        ("verify", "compile, then check the network against it by sampling"),
        ("regions", "enumerate the regions of an arrangement document"),
        ("poset", "intersection poset and Hasse cover edges"),
        ("gp-check", "test whether an arrangement is in general position"),
        ("mergers", "region pairs the output layer can never separate"),
        ("plot", "render a 2-D arrangement as SVG"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="path to the input JSON document")
        p.add_argument("--tol", type=float, default=geometry.DEFAULT_TOL,
                       help="geometric tolerance (default 1e-9)")
        p.add_argument("--margin", type=float, default=1e-6,
                       help="sample discard distance for verify (default 1e-6)")
        p.add_argument("--box", type=float, default=geometry.DEFAULT_BOX,
                       help="witness search box half-width (default 1e6)")
        p.add_argument("--sample-box", type=float,
                       default=compiler.DEFAULT_SAMPLE_BOX,
                       help="verification sampling box half-width (default 10)")
        p.add_argument("--samples", type=int, default=10000,
                       help="number of verification samples (default 10000)")
        p.add_argument("--seed", type=int, default=0,
                       help="random seed for verification (default 0)")
        p.add_argument("--output", default=None,
                       help="write to this path instead of standard output")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            input_path=args.input,
            tol=args.tol,
            margin=args.margin,
            box=args.box,
            sample_box=args.sample_box,
            samples=args.samples,
            seed=args.seed,
            output_path=args.output,
        )
    except ValueError as exc:
        print(f"stepregions: {exc}", file=sys.stderr)
        sys.exit(1)
    sys.exit(run(config))


if __name__ == "__main__":
    main()
