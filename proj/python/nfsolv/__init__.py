"""Thin Python layer over the _nfsolv extension module."""

import json

from _nfsolv import (  # noqa: F401
    ConfigError,
    NfsolvError,
    c_hls_default,
    q_bound,
    run_json,
    sphere_surface_measure,
)

__all__ = [
    "ConfigError",
    "NfsolvError",
    "c_hls_default",
    "q_bound",
    "run",
    "run_json",
    "sphere_surface_measure",
]


def run(subcommand, config=None, out_dir=""):
    """Run a pipeline; returns (exit_code, report) with the report decoded."""
    code, report = run_json(subcommand, json.dumps(config or {}), out_dir)
    return code, json.loads(report)
