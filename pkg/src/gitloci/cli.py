"""Batch command-line front end.

Exit status: 0 on success, 2 for an unknown command or bad flags, 3 for
unreadable or malformed input, 4 when a mathematical precondition fails
(the module's error message is printed verbatim on stderr).
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from pathlib import Path
from typing import Sequence, TextIO

from .apartment import (
    apartment_min,
    apartment_min_locus,
    classify_reduction,
    delta_on_apartment,
    normalize_config,
    translate_config,
)
from .convex import ValuedWeightConfig
from .dynamics import GroupElement, ProjEndomorphism, dim_count, hesse_classify, map_config, min_res_locus, ord_res
from .errors import DomainError, ParseError
from .valued_field import NEG_INF, format_rational, parse_element, parse_rational

COMMANDS = ("min-locus", "min-value", "classify", "delta-profile", "ord-res", "mrl", "hesse", "dims")

RAW_CONFIG = "raw_config"
ENDOMORPHISM = "endomorphism"


@dataclass(frozen=True)
class ProblemFile:
    kind: str
    payload: str
    config: ValuedWeightConfig | None = None
    endomorphism: ProjEndomorphism | None = None
    options: dict = field(default_factory=dict)

    def apartment_config(self) -> ValuedWeightConfig:
        """Normalized configuration on the standard apartment."""
        if self.kind == ENDOMORPHISM:
            return map_config(self.endomorphism)
        return normalize_config(self.config)[0]


def parse_problem_file(path: str | Path) -> ProblemFile:
    """Read a raw configuration (``rank r`` header) or a map file (``n d`` header)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read problem file {path}: {exc.strerror or exc}") from None
    first = next((ln.split("#", 1)[0].strip() for ln in text.splitlines() if ln.split("#", 1)[0].strip()), "")
    if first.startswith("rank"):
        return ProblemFile(RAW_CONFIG, text, config=ValuedWeightConfig.from_text(text))
    parts = first.split()
    if len(parts) == 2 and all(p.isdigit() for p in parts):
        return ProblemFile(ENDOMORPHISM, text, endomorphism=ProjEndomorphism.from_text(text))
    raise ParseError(f"{path}: line 1: expected a 'rank r' or 'n d' header, got {first!r}")


def _rational(text: str) -> Fraction:
    q = parse_rational(text)
    if not isinstance(q, Fraction):
        raise ParseError(f"expected a finite rational, got {text!r}")
    return q


def _vector(text: str) -> tuple:
    return tuple(_rational(x) for x in text.split(","))


def _frange(start: Fraction, stop: Fraction, step: Fraction) -> list[Fraction]:
    if step <= 0:
        raise DomainError("--step must be positive")
    out = []
    s = start
    while s <= stop:
        out.append(s)
        s += step
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gitloci", description="Minimal invariant loci on apartments, exactly.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def with_input(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--input", required=True, help="problem file (raw config or map)")
        return p

    with_input("min-locus", "minimum locus of delta on the standard apartment")
    with_input("min-value", "minimum value of delta")
    p = with_input("classify", "torus-relative reduction class of the translated point")
    p.add_argument("--at", default=None, help="apartment coordinate v1,...,vr (default 0)")
    p = with_input("delta-profile", "delta along a ray, as TSV")
    p.add_argument("--ray", required=True, help="direction a1,...,ar")
    p.add_argument("--from", dest="start", required=True)
    p.add_argument("--to", dest="stop", required=True)
    p.add_argument("--step", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p = with_input("ord-res", "ord Res of the conjugated map (P^1 only)")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--group", default=None, help="file with the 2x2 group element, row-major")
    grp.add_argument("--torus", default=None, help="apartment coordinate of a torus element")
    with_input("mrl", "minimal resultant locus on the standard apartment (P^1 only)")
    p = sub.add_parser("hesse", help="classify the quartic Hesse-type map")
    p.add_argument("--alpha", required=True, help="field element, e.g. 't^(-3)'")
    p = sub.add_parser("dims", help="number of coefficients of a degree-d map of P^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    return parser


def _require_map(pf: ProblemFile, command: str) -> ProjEndomorphism:
    if pf.kind != ENDOMORPHISM:
        raise DomainError(f"{command} needs an endomorphism file, got a raw configuration")
    return pf.endomorphism


def _dispatch(args: argparse.Namespace, out: TextIO) -> None:
    cmd = args.command
    if cmd == "dims":
        out.write(f"{dim_count(args.n, args.d)}\n")
        return
    if cmd == "hesse":
        verdict = hesse_classify(parse_element(args.alpha))
        out.write(f"{verdict.reduction.value if verdict.reduction else 'uncertified'}\n# {verdict.note}\n")
        return

    pf = parse_problem_file(args.input)
    if cmd == "min-locus":
        out.write(apartment_min_locus(pf.apartment_config()).minimized().to_text())
    elif cmd == "min-value":
        m = apartment_min(pf.apartment_config())
        out.write("unbounded below\n" if m is NEG_INF else f"{format_rational(m)}\n")
    elif cmd == "classify":
        config = pf.apartment_config()
        if args.at is not None:
            config = translate_config(config, _vector(args.at), renormalize=True)
        out.write(f"{classify_reduction(config).value}\n")
    elif cmd == "delta-profile":
        config = pf.apartment_config()
        ray = _vector(args.ray)
        if len(ray) != config.rank:
            raise DomainError(f"dimension mismatch: ray of length {len(ray)} for rank {config.rank}")
        params = _frange(_rational(args.start), _rational(args.stop), _rational(args.step))
        points = [tuple(s * a for a in ray) for s in params]
        evaluate = partial(delta_on_apartment, config)
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                values = list(pool.map(evaluate, points))
        else:
            values = [evaluate(p) for p in points]
        out.write("# s\tdelta\n")
        for s, val in zip(params, values):
            out.write(f"{format_rational(s)}\t{format_rational(val)}\n")
    elif cmd == "ord-res":
        phi = _require_map(pf, cmd)
        g = None
        if args.group is not None:
            try:
                text = Path(args.group).read_text(encoding="utf-8")
            except OSError as exc:
                raise ParseError(f"cannot read group file {args.group}: {exc.strerror or exc}") from None
            g = GroupElement.from_text(text, size=phi.n + 1)
        elif args.torus is not None:
            g = GroupElement.torus(_vector(args.torus))
        out.write(f"{format_rational(ord_res(phi, g))}\n")
    elif cmd == "mrl":
        out.write(min_res_locus(_require_map(pf, cmd)).minimized().to_text())


def run_command(argv: Sequence[str], stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    """Run one command; returns the exit status."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _dispatch(args, out)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return 3
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return 4
    return 0


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
