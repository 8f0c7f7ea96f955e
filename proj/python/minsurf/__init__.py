"""Exact checks for complete minimal surfaces in R^4 and their Gauss maps."""

import json

from ._core import (
    SCHEMA_VERSION,
    MinsurfError,
    UsageError,
    __version__,
    check_conformality,
    exceptional_values,
    format_rational,
    is_complete,
    lagrangian_curvature,
    lift_equivalence,
    min_modulus_on_unit_circle,
    phis,
    run_command,
)


def run(command, config=None, **options):
    """Runs a subcommand. `config` may be a dict or JSON text; returns the parsed report,
    the exit code and the generated files."""
    if isinstance(config, dict):
        config = json.dumps(config)
    out = run_command(command, config or "", **options)
    return {
        "exit_code": out["exit_code"],
        "report": json.loads(out["report"]),
        "files": out["files"],
        "stdout": out["stdout"],
    }


__all__ = [
    "SCHEMA_VERSION",
    "MinsurfError",
    "UsageError",
    "__version__",
    "check_conformality",
    "exceptional_values",
    "format_rational",
    "is_complete",
    "lagrangian_curvature",
    "lift_equivalence",
    "min_modulus_on_unit_circle",
    "phis",
    "run",
    "run_command",
]
