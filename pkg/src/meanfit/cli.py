"""Command-line surface.

Subcommands::

    mean      central tendency of a value series (single alpha or a grid)
    fit       fit one family model to a histogram with one weight kernel
    sweep     grid-search the power-kernel exponent (optionally the shape)
    dct-hist  8x8 block DCT magnitude histogram of a binary PGM image
    compare   per-kernel win percentages over a directory of histograms
    curves    mean and v-weight curves for a value pair over an exponent grid

Exit codes: 0 success, 1 computation or data failure, 2 usage error.
All numeric output uses full-precision repr, so emitted CSV round-trips.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .errors import DomainError, EmptyDataError, FormatError, NoSolutionError, SweepError
from .expfam import MODEL_NAMES, catalog
from .fitsearch import SweepGrid, beta_mse_profile, compare_kernels, fit_histogram, \
    sweep_beta, sweep_shape
from .ingest import block_dct8, build_histogram, format_histogram_csv, \
    load_histogram_csv, load_pgm, load_values_csv
from .means import holder_mean, kolmogorov_mean, lehmer_mean, v_weights
from .wmle import WeightKernel

__all__ = ["build_parser", "main"]

_SHAPELESS = ("exponential", "std-lognormal", "half-normal")


class _UsageError(Exception):
    """Post-parse invocation problem; reported like an argparse error."""


def _fmt(x) -> str:
    return repr(float(x))


def _grid_type(text: str) -> SweepGrid:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected LO:HI:STEP, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric grid {text!r}") from None
    try:
        return SweepGrid(lo, hi, step)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _kernel_type(text: str) -> WeightKernel:
    if text == "unit":
        return WeightKernel.unit()
    if text == "log1p":
        return WeightKernel.log_shift()
    if text.startswith("power:"):
        try:
            return WeightKernel.power(float(text[len("power:"):]))
        except (ValueError, DomainError):
            raise argparse.ArgumentTypeError(f"bad power kernel {text!r}") from None
    raise argparse.ArgumentTypeError(f"expected unit, power:B, or log1p, got {text!r}")


def _pair_type(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected X1,X2, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric pair {text!r}") from None


def _range_type(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric range {text!r}") from None


def _build_model(name: str, shape_text: str | None):
    """Instantiate a catalog model from the --shape flag (defaults to 1)."""
    if name in _SHAPELESS:
        if shape_text:
            raise _UsageError(f"{name} takes no --shape")
        return catalog(name)
    if name == "gen-gamma":
        parts = (shape_text or "1").split(",")
        if len(parts) not in (1, 2):
            raise _UsageError("gen-gamma --shape must be ALPHA or ALPHA,B")
        try:
            alpha = float(parts[0])
            b = float(parts[1]) if len(parts) == 2 else 1.0
        except ValueError:
            raise _UsageError(f"bad --shape {shape_text!r}") from None
        return catalog("gen-gamma", alpha=alpha, b=b)
    try:
        value = float(shape_text) if shape_text else 1.0
    except ValueError:
        raise _UsageError(f"bad --shape {shape_text!r}") from None
    if name in ("weibull", "gen-half-normal"):
        return catalog(name, alpha=value)
    return catalog(name, k=value)


def _cmd_mean(args) -> int:
    values, file_weights = load_values_csv(args.input)
    weights = None
    if args.weights:
        if file_weights is None:
            raise DomainError(f"{args.input}: --weights given but the file has no weight column")
        weights = file_weights
    if args.family == "kolmogorov":
        if args.alpha is not None or args.alpha_grid is not None:
            raise _UsageError("the kolmogorov subcommand takes no exponent (log transform)")
        if weights is not None:
            raise _UsageError("the kolmogorov f-mean is unweighted")
        print(_fmt(kolmogorov_mean(values, math.log, math.exp)))
        return 0
    mean_fn = holder_mean if args.family == "holder" else lehmer_mean
    if args.alpha is None and args.alpha_grid is None:
        raise _UsageError("--alpha or --alpha-grid is required for holder/lehmer")
    if args.alpha is not None:
        print(_fmt(mean_fn(values, args.alpha, weights)))
    else:
        for alpha in args.alpha_grid.points():
            print(f"{_fmt(alpha)},{_fmt(mean_fn(values, alpha, weights))}")
    return 0


def _cmd_fit(args) -> int:
    model = _build_model(args.model, args.shape)
    hist = load_histogram_csv(args.input)
    report = fit_histogram(model, hist, args.kernel)
    payload = json.dumps(report.to_dict(), indent=2)
    if args.out:
        Path(args.out).write_text(payload + "\n", encoding="ascii")
    else:
        print(payload)
    return 0


def _sidecar_path(input_path) -> Path:
    p = Path(input_path)
    return p.with_name(p.stem + ".sweep.csv")


def _cmd_sweep(args) -> int:
    model = _build_model(args.model, None)
    if args.shape_grid is not None and "alpha" not in model.hyper:
        raise _UsageError(f"--shape-grid does not apply to {args.model}")
    hist = load_histogram_csv(args.input)
    if args.shape_grid is not None:
        best = sweep_shape(model, hist, args.shape_grid, beta_grid=args.beta)
    else:
        best = sweep_beta(model, hist, args.beta)
    profile = beta_mse_profile(model, hist, args.beta, args.shape_grid)
    sidecar = _sidecar_path(args.input)
    sidecar.write_text(
        "".join(f"{_fmt(beta)},{_fmt(mse)}\n" for beta, mse in profile), encoding="ascii"
    )
    print(json.dumps(best.to_dict(), indent=2))
    return 0


def _cmd_dct_hist(args) -> int:
    img = load_pgm(args.input)
    coeffs = block_dct8(img, exclude_dc=args.exclude_dc)
    hist, _ = build_histogram(coeffs, bins=args.bins, value_range=args.range)
    sys.stdout.write(format_histogram_csv(hist))
    return 0


def _cmd_compare(args) -> int:
    names = [n.strip() for n in args.models.split(",") if n.strip()]
    if not names:
        raise _UsageError("--models needs at least one model name")
    unknown = [n for n in names if n not in MODEL_NAMES]
    if unknown:
        raise _UsageError(f"unknown model(s) {', '.join(unknown)}; choose from {', '.join(MODEL_NAMES)}")
    models = [_build_model(n, None) for n in names]
    files = sorted(Path(args.inputs).glob("*.csv"))
    if not files:
        raise EmptyDataError(f"{args.inputs}: no .csv histograms found")
    hists = [load_histogram_csv(p) for p in files]
    rows = compare_kernels(models, hists, args.beta, args.tie_eps)
    print("model,pct_unit,pct_power,pct_log1p,mean_improvement,n_scored,n_failed")
    for row in rows:
        print(
            f"{row.model},{_fmt(row.pct_unit)},{_fmt(row.pct_power)},{_fmt(row.pct_log1p)},"
            f"{_fmt(row.mean_improvement)},{row.n_scored},{len(row.failures)}"
        )
    return 0


def _cmd_curves(args) -> int:
    x1, x2 = args.pair
    if x1 <= 0.0 or x2 <= 0.0:
        raise DomainError("both pair values must be positive")
    pair = [x1, x2]
    print("alpha,holder,lehmer,vh_x1,vl_x1,vh_x2,vl_x2")
    for alpha in args.alpha_grid.points():
        h = holder_mean(pair, alpha)
        le = lehmer_mean(pair, alpha)
        vh = v_weights(pair, alpha, "holder")
        vl = v_weights(pair, alpha, "lehmer")
        print(",".join(_fmt(v) for v in (alpha, h, le, vh[0], vl[0], vh[1], vl[1])))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meanfit",
        description="Weighted generalized means and weighted-likelihood histogram fitting.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("mean", help="central tendency of a value series")
    p.add_argument("--family", required=True, choices=("holder", "lehmer", "kolmogorov"))
    group = p.add_mutually_exclusive_group()
    group.add_argument("--alpha", type=float, help="exponent (inf/-inf allowed)")
    group.add_argument("--alpha-grid", type=_grid_type, metavar="LO:HI:STEP",
                       help="emit alpha,mean rows over this grid")
    p.add_argument("--input", required=True, help="values CSV: value[,weight] per line")
    p.add_argument("--weights", action="store_true", help="use the file's weight column")
    p.set_defaults(handler=_cmd_mean)

    p = sub.add_parser("fit", help="fit one model/kernel pair to a histogram")
    p.add_argument("--model", required=True, choices=MODEL_NAMES)
    p.add_argument("--kernel", required=True, type=_kernel_type, metavar="unit|power:B|log1p")
    p.add_argument("--input", required=True, help="histogram CSV: left,right,count per line")
    p.add_argument("--shape", help="shape hyperparameter, default 1 (gen-gamma: ALPHA[,B])")
    p.add_argument("--out", help="write the report JSON here instead of stdout")
    p.set_defaults(handler=_cmd_fit)

    p = sub.add_parser("sweep", help="grid-search the power-kernel exponent")
    p.add_argument("--model", required=True, choices=MODEL_NAMES)
    p.add_argument("--beta", type=_grid_type, metavar="LO:HI:STEP",
                   default=SweepGrid(-2.0, 2.0, 0.05),
                   help="exponent grid (default -2:2:0.05; keep 0 inside it)")
    p.add_argument("--shape-grid", type=_grid_type, metavar="LO:HI:STEP",
                   help="also sweep the shape hyperparameter of weibull / "
                        "gen-half-normal / gen-gamma (0.2:3:0.05 covers typical tails)")
    p.add_argument("--input", required=True, help="histogram CSV")
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("dct-hist", help="histogram of |DCT| coefficients of a PGM image")
    p.add_argument("--input", required=True, help="binary PGM (P5), maxval <= 255")
    p.add_argument("--bins", type=int, default=100)
    p.add_argument("--range", type=_range_type, metavar="LO:HI",
                   help="histogram range (default 0:max)")
    p.add_argument("--exclude-dc", action="store_true", help="drop the (0,0) coefficients")
    p.set_defaults(handler=_cmd_dct_hist)

    p = sub.add_parser("compare", help="per-kernel win percentages over histograms")
    p.add_argument("--models", required=True, help="comma-separated model names")
    p.add_argument("--inputs", required=True, help="directory of histogram .csv files")
    p.add_argument("--beta", type=_grid_type, metavar="LO:HI:STEP",
                   default=SweepGrid(-2.0, 2.0, 0.05),
                   help="exponent grid (default -2:2:0.05; keep 0 inside it)")
    p.add_argument("--tie-eps", type=float, default=1e-3,
                   help="relative MSE tie tolerance (default 1e-3)")
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("curves", help="mean and v-weight curves for a value pair")
    p.add_argument("--pair", required=True, type=_pair_type, metavar="X1,X2")
    p.add_argument("--alpha-grid", required=True, type=_grid_type, metavar="LO:HI:STEP")
    p.set_defaults(handler=_cmd_curves)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, EmptyDataError, NoSolutionError, SweepError, FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
