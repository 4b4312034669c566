"""Command-line client for the gupthermo service.

Subcommands mirror the service endpoints: ``sweep`` renders CSV, ``jacobian-verify``
and ``limits`` print pass/fail reports, ``serve`` starts the HTTP service.
Requests run against an in-process service instance unless --server points at
a remote one, so no daemon is needed for one-shot use.

Exit codes: 0 all requested checks passed, 1 numeric or tolerance failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from typing import Dict, List, Optional

import httpx

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

_SWEEP_FLOAT_KEYS = ("beta", "beta_prime", "mass", "omega", "hbar", "volume",
                     "alpha", "exponent", "jacobian_growth", "t_min", "t_max")
_SWEEP_INT_KEYS = ("dimension", "points", "jobs")
_SWEEP_STR_KEYS = ("system", "scale")


def _post(path: str, payload: dict, server: Optional[str]) -> httpx.Response:
    """POST to a remote server when given, otherwise to the in-process app."""
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            return client.post(path, json=payload)

    from .service import app

    async def call() -> httpx.Response:
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://gupthermo") as client:
            return await client.post(path, json=payload)

    return asyncio.run(call())


def _fail(response: httpx.Response) -> int:
    detail = response.json().get("detail", response.text)
    if isinstance(detail, dict):
        message = detail.get("message", str(detail))
    elif isinstance(detail, list):
        # request-schema violations arrive as a list of error records
        message = "; ".join(
            f"{'.'.join(str(part) for part in err.get('loc', []))}: {err.get('msg', err)}"
            for err in detail)
    else:
        message = str(detail)
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE if response.status_code == 422 else EXIT_FAILURE


def _read_config_file(path: str) -> Dict[str, str]:
    """Flat key=value file; blank lines and # comments are ignored."""
    values: Dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def _sweep_payload(args: argparse.Namespace) -> dict:
    payload: dict = {}
    if args.config:
        try:
            raw = _read_config_file(args.config)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            raise SystemExit(EXIT_USAGE)
        for key, value in raw.items():
            if key in _SWEEP_FLOAT_KEYS:
                payload[key] = float(value)
            elif key in _SWEEP_INT_KEYS:
                payload[key] = int(value)
            elif key in _SWEEP_STR_KEYS:
                payload[key] = value
            elif key == "methods":
                payload[key] = [m.strip() for m in value.split(",") if m.strip()]
            else:
                print(f"error: unknown config key {key!r}", file=sys.stderr)
                raise SystemExit(EXIT_USAGE)
    # explicit flags override the file
    for key in _SWEEP_FLOAT_KEYS + _SWEEP_INT_KEYS + _SWEEP_STR_KEYS:
        value = getattr(args, key)
        if value is not None:
            payload[key] = value
    if args.methods is not None:
        payload["methods"] = [m.strip() for m in args.methods.split(",") if m.strip()]
    return payload


def _cmd_sweep(args: argparse.Namespace) -> int:
    response = _post("/sweep", _sweep_payload(args), args.server)
    if response.status_code != 200:
        return _fail(response)
    rows = response.json()["rows"]
    lines = ["T,Z1,E_per_N,C_per_N,method"]
    for row in rows:
        lines.append(f"{row['T']:.12g},{row['Z1']:.12g},{row['E_per_N']:.12g},"
                     f"{row['C_per_N']:.12g},{row['method']}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_jacobian_verify(args: argparse.Namespace) -> int:
    payload = {"dimension": args.dimension, "trials": args.trials,
               "seed": args.seed, "beta": args.beta,
               "beta_prime": args.beta_prime}
    response = _post("/jacobian/verify", payload, args.server)
    if response.status_code != 200:
        return _fail(response)
    report = response.json()
    print(f"dimension            : {report['dimension']}")
    print(f"pairing entries      : {report['pairing_entries']}")
    print(f"trials (seed)        : {report['trials']} ({report['seed']})")
    print(f"max dev vs brute sum : {report['max_deviation_bruteforce']:.3e}")
    if report["max_deviation_closed_form"] is not None:
        print(f"max dev vs closed    : {report['max_deviation_closed_form']:.3e}")
    verdict = "PASS" if report["passed"] else "FAIL"
    print(f"{verdict} (tolerance {report['tolerance']:.1e})")
    return EXIT_OK if report["passed"] else EXIT_FAILURE


def _cmd_limits(args: argparse.Namespace) -> int:
    payload = {"system": args.system, "beta": args.beta,
               "beta_prime": args.beta_prime, "mass": args.mass,
               "omega": args.omega, "hbar": args.hbar, "volume": args.volume}
    response = _post("/limits", payload, args.server)
    if response.status_code != 200:
        return _fail(response)
    report = response.json()
    name_width = max(len(row["name"]) for row in report["rows"])
    print(f"{'check'.ljust(name_width)}  {'numeric':>14}  {'reference':>14}  "
          f"{'deviation':>10}  result")
    for row in report["rows"]:
        verdict = "PASS" if row["passed"] else "FAIL"
        print(f"{row['name'].ljust(name_width)}  {row['numeric']:>14.6g}  "
              f"{row['reference']:>14.6g}  {row['deviation']:>10.2e}  {verdict}")
    print("overall:", "PASS" if report["passed"] else "FAIL")
    return EXIT_OK if report["passed"] else EXIT_FAILURE


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def _add_server_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--server", default=None,
                        help="base URL of a running service; default runs in-process")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gupthermo",
        description="Thermodynamic sweeps and limit checks for systems with "
                    "a minimal length")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="temperature sweep, CSV output")
    _add_server_flag(sweep)
    sweep.add_argument("--config", default=None,
                       help="flat key=value config file; flags override it")
    sweep.add_argument("--system", choices=["ideal_gas", "oscillator", "power_law"])
    for key in _SWEEP_FLOAT_KEYS:
        sweep.add_argument(f"--{key.replace('_', '-')}", dest=key, type=float)
    sweep.add_argument("--dimension", type=int)
    sweep.add_argument("--points", type=int)
    sweep.add_argument("--jobs", type=int)
    sweep.add_argument("--scale", choices=["linear", "log"])
    sweep.add_argument("--methods",
                       help="comma-separated subset of classical,quantum,nondeformed")
    sweep.add_argument("--out", default=None, help="write CSV here instead of stdout")
    sweep.set_defaults(func=_cmd_sweep)

    verify = sub.add_parser("jacobian-verify",
                            help="compare Jacobian evaluations on random phase points")
    _add_server_flag(verify)
    verify.add_argument("--dimension", type=int, choices=[1, 2, 3], default=3)
    verify.add_argument("--trials", type=int, default=100)
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--beta", type=float, default=0.01)
    verify.add_argument("--beta-prime", dest="beta_prime", type=float, default=0.01)
    verify.set_defaults(func=_cmd_jacobian_verify)

    limits = sub.add_parser("limits", help="numeric vs asymptotic limit report")
    _add_server_flag(limits)
    limits.add_argument("--system", choices=["ideal_gas", "oscillator", "power_law"],
                        default="oscillator")
    limits.add_argument("--beta", type=float, default=0.01)
    limits.add_argument("--beta-prime", dest="beta_prime", type=float, default=0.01)
    limits.add_argument("--mass", type=float, default=0.5)
    limits.add_argument("--omega", type=float, default=1.0)
    limits.add_argument("--hbar", type=float, default=1.0)
    limits.add_argument("--volume", type=float, default=1.0)
    limits.set_defaults(func=_cmd_limits)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
