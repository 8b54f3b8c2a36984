"""Command-line client for the analysis service.

Each verb builds the same request model the HTTP service accepts and runs
it in-process; pass --server to POST it to a running instance instead.
Reports are written as JSON (numbers at 12 significant digits) or CSV, and
identical invocations produce byte-identical reports.

Exit codes: 0 success, 2 usage/validation/parameter error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from . import graphs
from .errors import (
    NetworkFormatError,
    NetworkInvalidError,
    NoWitnessError,
    NumericalError,
    UnsupportedVariantError,
)
from .regions import region_csv, region_tsv
from .service import handlers
from .service.models import (
    CentralityRequest,
    EquilibriumRequest,
    MarginalRequest,
    PayoffsRequest,
    RegionRequest,
    ReversalRequest,
    ShareRequest,
    SimulateRequest,
    ValidateRequest,
    WelfareRequest,
)

_USAGE_ERRORS = (
    ValidationError,
    ValueError,
    NetworkFormatError,
    NetworkInvalidError,
    UnsupportedVariantError,
    NoWitnessError,
    FileNotFoundError,
)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _round_floats(obj):
    if isinstance(obj, float):
        return float(_fmt(obj))
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_round_floats(v) for v in obj]
    return obj


def _to_json(payload: dict) -> str:
    return json.dumps(_round_floats(payload), indent=2) + "\n"


def _per_agent_csv(columns: dict[str, list]) -> str:
    names = list(columns)
    rows = ["agent," + ",".join(names)]
    for i in range(len(next(iter(columns.values())))):
        cells = [str(i)]
        for name in names:
            value = columns[name][i]
            cells.append(_fmt(value) if isinstance(value, float) else str(value))
        rows.append(",".join(cells))
    return "\n".join(rows) + "\n"


def _network_args(sp: argparse.ArgumentParser) -> None:
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--net", help="path to a network file (.json, or .csv edge list)")
    group.add_argument(
        "--family", help="family spec: empty:n | regular:n,d | abc:a,b | cp:l,m,a,b"
    )


def _signal_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--gamma", type=float, help="relative private precision in (0, 1)")
    sp.add_argument("--tau-x", type=float, dest="tau_x", help="private signal precision")
    sp.add_argument("--tau-y", type=float, dest="tau_y", help="public signal precision")


def _output_args(sp: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
    sp.add_argument("--out", help="write the report to this path instead of stdout")
    sp.add_argument("--format", choices=formats, default=formats[0])
    sp.add_argument("--server", help="base URL of a running service to POST to")


def _intensity_arg(sp: argparse.ArgumentParser) -> None:
    sp.add_argument(
        "--r",
        dest="intensities",
        help="coordination intensities: one value, or comma-separated per agent",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netgame",
        description="Equilibrium and welfare analysis of network beauty-contest games.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("validate", help="report network invariant violations")
    _network_args(sp)
    _output_args(sp, ("json",))

    sp = sub.add_parser("centrality", help="centralities, sensitivities, spectral bound")
    _network_args(sp)
    _signal_args(sp)
    _output_args(sp, ("json", "csv"))

    sp = sub.add_parser("equilibrium", help="linear equilibrium slopes")
    _network_args(sp)
    _signal_args(sp)
    sp.add_argument(
        "--variant",
        choices=["baseline", "i_prime", "i_dagger", "alt", "efficient"],
        default="baseline",
    )
    sp.add_argument("--holder", type=int, default=0, help="signal holder (i_dagger)")
    _intensity_arg(sp)
    _output_args(sp, ("json", "csv"))

    sp = sub.add_parser("payoffs", help="expected equilibrium payoffs")
    _network_args(sp)
    _signal_args(sp)
    sp.add_argument(
        "--variant",
        choices=["baseline", "no_public", "i_dagger", "i_prime", "efficient", "alt"],
        default="baseline",
    )
    sp.add_argument("--holder", type=int, default=0)
    _intensity_arg(sp)
    _output_args(sp, ("json", "csv"))

    sp = sub.add_parser("welfare", help="welfare effect of the public signal")
    _network_args(sp)
    _signal_args(sp)
    _intensity_arg(sp)
    _output_args(sp, ("json", "csv"))

    sp = sub.add_parser("marginal", help="sign of dW/dtau_y and its ingredients")
    _network_args(sp)
    _signal_args(sp)
    _output_args(sp, ("json",))

    sp = sub.add_parser("share", help="information-sharing inefficiency test")
    _network_args(sp)
    _signal_args(sp)
    sp.add_argument("--holder", type=int, default=0, help="agent holding the shareable signal")
    _output_args(sp, ("json",))

    sp = sub.add_parser("region", help="scan a parameter region to a grid")
    sp.add_argument("--kind", required=True, choices=["G", "H", "J", "harm", "welfare", "sharing"])
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--l", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--alpha-min", type=float, dest="alpha_min")
    sp.add_argument("--alpha-max", type=float, dest="alpha_max")
    sp.add_argument("--alpha-step", type=float, dest="alpha_step")
    sp.add_argument("--beta-min", type=float, dest="beta_min")
    sp.add_argument("--beta-max", type=float, dest="beta_max")
    sp.add_argument("--beta-step", type=float, dest="beta_step")
    _output_args(sp, ("csv", "json", "tsv"))

    sp = sub.add_parser("reversal", help="nested networks with opposite welfare signs")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--gamma", type=float, required=True)
    _output_args(sp, ("json",))

    sp = sub.add_parser("simulate", help="Monte Carlo payoff and moment estimates")
    _network_args(sp)
    _signal_args(sp)
    sp.add_argument(
        "--variant",
        choices=["baseline", "i_prime", "i_dagger", "alt", "efficient"],
        default="baseline",
    )
    sp.add_argument("--holder", type=int, default=0)
    _intensity_arg(sp)
    sp.add_argument("--draws", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--audit", action="store_true", help="include the best-response audit")
    sp.add_argument(
        "--batch-out",
        dest="batch_out",
        help="also write a CSV of per-batch payoff means to this path",
    )
    _output_args(sp, ("json", "csv"))

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)

    return parser


def _network_fields(args) -> dict:
    if args.net is not None:
        net = graphs.load(args.net)
        return {"network": handlers.network_to_payload(net)}
    return {"family": args.family}


def _signal_fields(args) -> dict:
    return {"gamma": args.gamma, "tau_x": args.tau_x, "tau_y": args.tau_y}


def _parse_intensities(raw: str | None) -> list[float] | None:
    if raw is None:
        return None
    return [float(part) for part in raw.split(",")]


def _build_request(args):
    verb = args.verb
    if verb == "validate":
        return ValidateRequest(**_network_fields(args))
    if verb == "centrality":
        return CentralityRequest(**_network_fields(args), **_signal_fields(args))
    if verb == "equilibrium":
        return EquilibriumRequest(
            **_network_fields(args),
            **_signal_fields(args),
            variant=args.variant,
            holder=args.holder,
            intensities=_parse_intensities(args.intensities),
        )
    if verb == "payoffs":
        return PayoffsRequest(
            **_network_fields(args),
            **_signal_fields(args),
            variant=args.variant,
            holder=args.holder,
            intensities=_parse_intensities(args.intensities),
        )
    if verb == "welfare":
        return WelfareRequest(
            **_network_fields(args),
            **_signal_fields(args),
            intensities=_parse_intensities(args.intensities),
        )
    if verb == "marginal":
        return MarginalRequest(**_network_fields(args), **_signal_fields(args))
    if verb == "share":
        return ShareRequest(**_network_fields(args), **_signal_fields(args), holder=args.holder)
    if verb == "region":
        return RegionRequest(
            kind=args.kind,
            gamma=args.gamma,
            l=args.l,
            m=args.m,
            alpha_min=args.alpha_min,
            alpha_max=args.alpha_max,
            alpha_step=args.alpha_step,
            beta_min=args.beta_min,
            beta_max=args.beta_max,
            beta_step=args.beta_step,
        )
    if verb == "reversal":
        return ReversalRequest(n=args.n, gamma=args.gamma)
    if verb == "simulate":
        return SimulateRequest(
            **_network_fields(args),
            **_signal_fields(args),
            variant=args.variant,
            holder=args.holder,
            intensities=_parse_intensities(args.intensities),
            draws=args.draws,
            seed=args.seed,
            audit=args.audit,
        )
    raise ValueError(f"unknown verb {verb!r}")


_LOCAL = {
    "validate": handlers.validate_network,
    "centrality": handlers.centrality,
    "equilibrium": handlers.equilibrium,
    "payoffs": handlers.payoffs,
    "welfare": handlers.welfare_report,
    "marginal": handlers.marginal,
    "share": handlers.share,
    "region": handlers.region,
    "reversal": handlers.reversal,
    "simulate": handlers.simulate,
}


def _write_batch_csv(batch_means: list[list[float]], path: str) -> None:
    n = len(batch_means[0]) if batch_means else 0
    lines = ["batch," + ",".join(f"agent{i}" for i in range(n))]
    for k, row in enumerate(batch_means):
        lines.append(f"{k}," + ",".join(_fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def _format_local(args, request) -> str:
    verb, fmt = args.verb, args.format
    if verb == "region" and fmt in ("csv", "tsv"):
        grid = handlers.region_grid(request)
        return region_csv(grid) if fmt == "csv" else region_tsv(grid)
    response = _LOCAL[verb](request)
    if verb == "simulate" and args.batch_out:
        _write_batch_csv(response.batch_means, args.batch_out)
    if fmt == "json":
        return _to_json(response.model_dump())
    if verb == "centrality":
        return _per_agent_csv({"c": response.c, "c_sens": response.c_sens})
    if verb == "equilibrium":
        return _per_agent_csv(
            {"slope_public": response.slopes_public, "slope_private": response.slopes_private}
        )
    if verb == "payoffs":
        return _per_agent_csv({"payoff": response.per_agent})
    if verb == "welfare":
        harmed = set(response.harmed)
        return _per_agent_csv(
            {
                "delta_u": response.delta_u,
                "harmed": [int(i in harmed) for i in range(len(response.delta_u))],
            }
        )
    if verb == "simulate":
        return _per_agent_csv(
            {"payoff_mean": response.payoff_mean, "payoff_se": response.payoff_se}
        )
    raise ValueError(f"format csv is not available for verb {verb!r}")


def _format_remote(args, request) -> str:
    import httpx

    verb, fmt = args.verb, args.format
    path = verb
    if verb == "region" and fmt in ("csv", "tsv"):
        path = f"region.{fmt}"
    url = args.server.rstrip("/") + "/" + path
    reply = httpx.post(url, json=request.model_dump(), timeout=300.0)
    if reply.status_code >= 500:
        raise NumericalError(f"{url} -> {reply.status_code}: {reply.text}")
    if reply.status_code != 200:
        raise ValueError(f"{url} -> {reply.status_code}: {reply.text}")
    if verb == "region" and fmt in ("csv", "tsv"):
        return reply.text
    if verb == "simulate" and args.batch_out:
        _write_batch_csv(reply.json()["batch_means"], args.batch_out)
    if fmt == "json":
        return _to_json(reply.json())
    raise ValueError("csv output for remote runs is available only for region scans")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.verb == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0
    try:
        request = _build_request(args)
        if getattr(args, "server", None):
            text = _format_remote(args, request)
        else:
            text = _format_local(args, request)
    except NumericalError as exc:
        print(f"netgame: numerical failure: {exc}", file=sys.stderr)
        return 3
    except _USAGE_ERRORS as exc:
        print(f"netgame: {exc}", file=sys.stderr)
        return 2
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
