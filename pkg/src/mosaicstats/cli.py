"""Command-line entry point: ``mosaicstats {generate,analyze,compare,spectrum,report}``.

Exit status is 0 on success (including tables with some failed rows),
1 on a usage error and 2 on a data error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .analysis import (
    PcfMode,
    PcfParams,
    ReportRow,
    format_report,
    nn_stats,
    pcf,
    pcf_distance,
    radial_spectrum,
)
from .errors import MosaicError
from .formats import read_columns, read_point_set, write_curve, write_point_set, write_spectrum
from .ingest import load_points, normalize
from .samplers import RNG_ALGORITHM, SamplerConfig, SamplerKind, generate

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

SAME_THRESHOLD = 0.1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


def write_manifest(out_path, command, argv, seed, outputs):
    manifest = {
        "command": command,
        "argv": list(argv),
        "seed": seed,
        "versions": {"mosaicstats": __version__, "rng": RNG_ALGORITHM},
        "outputs": [{"path": p, "sha256": sha256_file(p)} for p in outputs],
    }
    path = out_path + ".manifest.json"
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _load_for_analysis(path, scale):
    """Return ``(native_set, normalized_set)`` for a sampler file or a raw mosaic file."""
    header, _, _ = read_columns(path)
    if "domain" in header:
        ps = read_point_set(path)
        return ps, ps
    rec = load_points(path, scale_factor=scale)
    return rec.pointset, normalize(rec)


def _pcf_params(args) -> PcfParams:
    return PcfParams(r_min=args.r_min, r_max=args.r_max, bins=args.bins,
                     sigma_smooth=args.sigma, mode=PcfMode(args.mode))


def cmd_generate(args, argv):
    if args.seed is None:
        raise UsageError("--seed is required; runs are never seeded from the clock")
    config = SamplerConfig(kind=SamplerKind(args.kind), n=args.n, seed=args.seed,
                           min_dist=args.min_dist, iterations=args.iterations,
                           max_attempts=args.max_attempts, round_up=args.round_up)
    t0 = time.perf_counter()
    ps = generate(config)
    elapsed = time.perf_counter() - t0
    if args.label:
        ps = ps.with_points(ps.points, label=args.label)
    write_point_set(args.out, ps)
    manifest = write_manifest(args.out, "generate", argv, args.seed, [args.out])
    flag = " (saturated)" if ps.metadata.get("saturated") else ""
    print(f"{ps.label}\tn={len(ps)}{flag}\t{elapsed:.2f}s\t{args.out}\t{manifest}")
    return EXIT_OK


def _analyze_one(path, args, params):
    try:
        native, unit_set = _load_for_analysis(path, args.scale)
        if not native.label:
            native = native.with_points(native.points, label=os.path.basename(path))
        st = nn_stats(native)
        row = ReportRow(native.label, len(native), st.mu, st.sigma, st.ri)
        curve_path = None
        if params is not None:
            curve = pcf(unit_set, params)
            stem = os.path.splitext(os.path.basename(path))[0]
            curve_path = os.path.join(args.out_dir, stem + ".pcf.txt")
            write_curve(curve_path, curve)
        return row, curve_path
    except (MosaicError, ValueError, OSError) as exc:
        return ReportRow(os.path.basename(path), 0, error=str(exc)), None


def _run_table(args, params):
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(lambda p: _analyze_one(p, args, params), args.inputs))
    rows = [r for r, _ in results]
    return rows, [c for _, c in results if c]


def cmd_analyze(args, argv):
    params = _pcf_params(args)
    os.makedirs(args.out_dir, exist_ok=True)
    rows, curves = _run_table(args, params)
    # rows stay in argument order
    sys.stdout.write(format_report(rows))
    for c in curves:
        print(f"# pcf\t{c}", file=sys.stderr)
    return EXIT_OK if any(r.ok for r in rows) else EXIT_DATA


def cmd_report(args, argv):
    rows, _ = _run_table(args, None)
    good = sorted((r for r in rows if r.ok), key=lambda r: r.ri)
    sys.stdout.write(format_report(good + [r for r in rows if not r.ok]))
    return EXIT_OK if good else EXIT_DATA


def cmd_compare(args, argv):
    params = _pcf_params(args)
    _, a = _load_for_analysis(args.a, args.scale)
    _, b = _load_for_analysis(args.b, args.scale)
    d = pcf_distance(pcf(a, params), pcf(b, params))
    verdict = "SAME" if d < SAME_THRESHOLD else "DIFFERENT"
    print(f"linf\t{d:.6f}\t{verdict}")
    return EXIT_OK


def cmd_spectrum(args, argv):
    ps = read_point_set(args.input)
    spec = radial_spectrum(ps, args.max_freq)
    write_spectrum(args.out, spec)
    print(f"{ps.label}\tn={len(ps)}\tannuli={len(spec.freqs)}\t{args.out}")
    return EXIT_OK


def _add_pcf_flags(p):
    d = PcfParams()
    p.add_argument("--mode", choices=[m.value for m in PcfMode], default=d.mode.value)
    p.add_argument("--r-min", type=float, default=d.r_min)
    p.add_argument("--r-max", type=float, default=d.r_max)
    p.add_argument("--bins", type=int, default=d.bins)
    p.add_argument("--sigma", type=float, default=d.sigma_smooth,
                   help="Gaussian bandwidth, in units of the hexagonal spacing")
    p.add_argument("--scale", type=float, default=1.0,
                   help="um per raw unit for files without a domain header")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mosaicstats", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    g = sub.add_parser("generate", help="write a sampler realization")
    g.add_argument("--kind", required=True, choices=[k.value for k in SamplerKind])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int)
    g.add_argument("--min-dist", type=float)
    g.add_argument("--iterations", type=int, default=100)
    g.add_argument("--max-attempts", type=int, default=10**6)
    g.add_argument("--round-up", action="store_true",
                   help="jittered only: round n up to the next perfect square")
    g.add_argument("--label")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", help="regularity table and one PCF file per input")
    a.add_argument("inputs", nargs="+")
    a.add_argument("--out-dir", default=".")
    a.add_argument("--jobs", type=int, default=1)
    _add_pcf_flags(a)
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("report", help="regularity table sorted by RI")
    r.add_argument("inputs", nargs="+")
    r.add_argument("--scale", type=float, default=1.0)
    r.add_argument("--jobs", type=int, default=1)
    r.set_defaults(func=cmd_report)

    c = sub.add_parser("compare", help="l-infinity PCF distance between two sets")
    c.add_argument("a")
    c.add_argument("b")
    _add_pcf_flags(c)
    c.set_defaults(func=cmd_compare)

    s = sub.add_parser("spectrum", help="radially averaged power spectrum")
    s.add_argument("input")
    s.add_argument("--max-freq", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_spectrum)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"mosaicstats: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MosaicError, ValueError, OSError) as exc:
        print(f"mosaicstats {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
