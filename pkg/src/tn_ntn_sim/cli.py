"""``sim`` command-line front end.

The CLI is a thin client of the FastAPI service: with ``--server`` it talks
to a remote instance over HTTP, otherwise it drives an in-process copy of the
same app. All result files are written client-side, deterministically.

Exit codes: 0 success, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click

from .config import parse_config
from .errors import ConfigurationError
from .records import write_csv, write_json

EXIT_CONFIG = 2
EXIT_IO = 3

THREADS_ENV = "SIM_THREADS"


def _client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=None)
    from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app)


def _post(client, path: str, payload: dict) -> dict:
    resp = client.post(path, json=payload)
    if resp.status_code in (400, 422):
        raise ConfigurationError(str(resp.json().get("detail")))
    resp.raise_for_status()
    return resp.json()


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _load_config(config_path, overrides):
    cfg = parse_config(config_path, tuple(overrides))
    return cfg.model_dump()


_common = [
    click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
                 default=None, help="YAML/JSON configuration file."),
    click.option("--set", "overrides", multiple=True, metavar="KEY=VALUE",
                 help="Override a config key, e.g. --set disaster.p_f=0.8."),
    click.option("--seed", type=int, default=None, help="Master seed override."),
    click.option("--runs", type=int, default=None, help="Monte Carlo runs per point."),
    click.option("--threads", type=int, default=None,
                 help=f"Worker threads (default ${THREADS_ENV} or 1)."),
    click.option("--server", default=None, metavar="URL",
                 help="Remote service URL; default runs the service in-process."),
]


def _with_common(cmd):
    for opt in reversed(_common):
        cmd = opt(cmd)
    return cmd


@click.group()
def main() -> None:
    """System-level TN/NTN disaster-fallback simulator."""


@main.command()
@_with_common
@click.option("--out", "out_path", default="run", show_default=True,
              help="Output base path; writes <out>.csv and <out>.json.")
def run(config_path, overrides, seed, runs, threads, server, out_path) -> None:
    """Execute one operating point and write per-run CSV + JSON summary."""
    try:
        payload = {
            "config": _load_config(config_path, overrides),
            "seed": seed,
            "runs": runs,
            "threads": threads or _default_threads(),
        }
        with _client(server) as client:
            data = _post(client, "/run", payload)
    except ConfigurationError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    try:
        base = Path(out_path)
        if base.suffix == ".csv":
            base = base.with_suffix("")
        write_csv(base.with_suffix(".csv"), data["columns"], data["rows"])
        write_json(base.with_suffix(".json"),
                   {"aggregate": data["aggregate"],
                    "resolved_config": data["resolved_config"]})
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    click.echo(f"wrote {base.with_suffix('.csv')} and {base.with_suffix('.json')}")


@main.command()
@_with_common
@click.option("--preset", default=None, help="Experiment preset: fig2, fig3 or fig4.")
@click.option("--param", "parameter", default=None,
              type=click.Choice(["USERS", "FAILURE_PROB", "FEEDER_CAPACITY", "ETA"]),
              help="Custom sweep parameter.")
@click.option("--values", default=None,
              help="Comma-separated sweep values for --param.")
@click.option("--out", "out_dir", default="results", show_default=True,
              help="Output directory for per-sweep CSVs and the JSON summary.")
def sweep(config_path, overrides, seed, runs, threads, server, preset,
          parameter, values, out_dir) -> None:
    """Run a parameter sweep (preset or custom) and write aggregate + raw CSVs."""
    try:
        payload = {
            "config": _load_config(config_path, overrides),
            "seed": seed,
            "runs": runs,
            "threads": threads or _default_threads(),
        }
        if preset:
            payload["preset"] = preset
        if parameter:
            if not values:
                raise ConfigurationError("--param requires --values")
            payload["parameter"] = parameter
            payload["values"] = [float(v) for v in values.split(",")]
        if not preset and not parameter:
            raise ConfigurationError("either --preset or --param/--values is required")
        with _client(server) as client:
            data = _post(client, "/sweep", payload)
    except (ConfigurationError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    try:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for block in data["sweeps"]:
            agg = out / f"{block['name']}_agg.csv"
            raw = out / f"{block['name']}_raw.csv"
            write_csv(agg, block["agg_columns"], block["agg_rows"])
            write_csv(raw, block["raw_columns"], block["raw_rows"])
            written += [agg, raw]
        write_json(out / "summary.json",
                   {"resolved_config": data["resolved_config"],
                    "sweeps": [{"name": b["name"], "mode": b["mode"],
                                "parameter": b["parameter"]}
                               for b in data["sweeps"]]})
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    for p in written:
        click.echo(f"wrote {p}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host, port) -> None:
    """Start the simulation service."""
    import uvicorn

    uvicorn.run("tn_ntn_sim.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
