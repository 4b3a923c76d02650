"""Command-line client for the simulation service.

Talks to an in-process application instance by default, so no server needs
to be running; --url points the same commands at a remote service.  Exit
codes: 0 success, 1 config/usage error, 2 completed sweep containing
failed runs.
"""

from __future__ import annotations

import argparse
import json
import sys

from .experiment import sweep_failed

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUN_FAILED = 2


def make_client(url: str | None):
    if url is None:
        from fastapi.testclient import TestClient

        from .service import app

        return TestClient(app)
    import httpx

    return httpx.Client(base_url=url, timeout=None)


def _die_http(resp) -> int:
    try:
        detail = resp.json().get("detail", resp.text)
    except (ValueError, json.JSONDecodeError):
        detail = resp.text
    print(f"error: {detail}", file=sys.stderr)
    return EXIT_CONFIG


def _read_config(path: str) -> str | None:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        print(f"error: cannot read config {path}: {exc}", file=sys.stderr)
        return None


def _write_out(path: str | None, content: str) -> None:
    if path is None:
        sys.stdout.write(content)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(content)


def cmd_run(args, client) -> int:
    config = _read_config(args.config)
    if config is None:
        return EXIT_CONFIG
    body = {
        "config": config,
        "parallelism": args.parallelism,
        "trace": args.trace,
    }
    if args.seed is not None:
        body["seed"] = args.seed
    resp = client.post("/run", json=body)
    if resp.status_code != 200:
        return _die_http(resp)
    result = resp.json()
    if result["trace"]:
        sys.stderr.write(result["trace"])
    _write_out(args.out, result["csv"])
    return EXIT_RUN_FAILED if result["failed"] else EXIT_OK


def cmd_sweep(args, client) -> int:
    config = _read_config(args.config)
    if config is None:
        return EXIT_CONFIG
    body = {"config": config, "parallelism": args.parallelism}
    if args.seed is not None:
        body["seed"] = args.seed
    resp = client.post("/sweep", json=body)
    if resp.status_code != 200:
        return _die_http(resp)
    _write_out(args.out, resp.text)
    return EXIT_RUN_FAILED if sweep_failed(resp.text) else EXIT_OK


def cmd_aggregate(args, client) -> int:
    try:
        with open(args.in_path, encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.in_path}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    resp = client.post("/aggregate", content=raw, headers={"content-type": "text/csv"})
    if resp.status_code != 200:
        return _die_http(resp)
    _write_out(args.out, resp.text)
    return EXIT_OK


def cmd_preset(args, client) -> int:
    if args.name is None:
        resp = client.get("/presets")
        if resp.status_code != 200:
            return _die_http(resp)
        for name in resp.json()["presets"]:
            print(name)
        return EXIT_OK
    resp = client.get(f"/presets/{args.name}")
    if resp.status_code != 200:
        return _die_http(resp)
    sys.stdout.write(resp.text)
    return EXIT_OK


def cmd_topology(args, client) -> int:
    if args.name is None:
        resp = client.get("/topologies")
        if resp.status_code != 200:
            return _die_http(resp)
        for name in resp.json()["topologies"]:
            print(name)
        return EXIT_OK
    resp = client.get(f"/topologies/{args.name}")
    if resp.status_code != 200:
        return _die_http(resp)
    print(json.dumps(resp.json(), indent=2))
    return EXIT_OK


def cmd_serve(args, _client) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eonsim",
        description="Flexible-grid optical network simulator: sweeps of slot "
        "width, load, and bandwidth distribution with blocking and "
        "spectrum-efficiency metrics.",
    )
    parser.add_argument(
        "--url",
        default=None,
        help="base URL of a running service (default: run in-process)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="execute a config and print/write the result CSV")
    p.add_argument("--config", required=True, help="sweep config file")
    p.add_argument("--out", default=None, help="output CSV path (default: stdout)")
    p.add_argument("--seed", type=int, default=None, help="use this single seed instead of the configured list")
    p.add_argument("--parallelism", type=int, default=1)
    p.add_argument("--trace", action="store_true", help="write an event trace to stderr (single-run configs only)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="execute a full sweep into a CSV file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--parallelism", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("aggregate", help="collapse seed replicates into mean/stderr rows")
    p.add_argument("--in", dest="in_path", required=True, metavar="IN")
    p.add_argument("--out", default=None, help="output CSV path (default: stdout)")
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("preset", help="print a bundled config (or list them)")
    p.add_argument("name", nargs="?", default=None)
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser("topology", help="show a builtin topology (or list them)")
    p.add_argument("name", nargs="?", default=None)
    p.set_defaults(func=cmd_topology)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    client = None if args.func is cmd_serve else make_client(args.url)
    try:
        return args.func(args, client)
    finally:
        if client is not None:
            client.close()


if __name__ == "__main__":
    sys.exit(main())
