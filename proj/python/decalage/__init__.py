"""Python access to the decalage checks.

Instances and reports are plain dicts in the same JSON format the command-line
tool reads and writes.
"""

import json

from . import _core
from ._core import DecalageError, fixture_dir

__all__ = [
    "DecalageError",
    "bb_filtration",
    "check_theorem",
    "fixture_dir",
    "generate",
    "ht_failure_witness",
    "relative_position",
    "run",
]


def run(command, *inputs, **options):
    """Run a command-line subcommand in process.

    Keyword options mirror the flags (``max_degree=3`` for ``--max-degree 3``).
    Returns ``(exit_code, report, diagnostics)``; with ``format="json"`` the
    report is parsed.
    """
    cfg = _core.RunConfig()
    cfg.command = command
    cfg.inputs = [str(i) for i in inputs]
    for key, value in options.items():
        if not hasattr(cfg, key):
            raise TypeError(f"unknown option {key!r}")
        setattr(cfg, key, value)
    code, out, err = _core.run(cfg)
    if cfg.format == "json" and out:
        out = json.loads(out)
    return code, out, err


def generate(profile, seed=0, *, poset="builtin:point", ring="z", xi="", max_degree=2, max_rank=2, budget=400):
    """A random instance: profile "free", "h1" or "adversarial"."""
    return json.loads(_core.generate(profile, seed, poset, ring, xi, max_degree, max_rank, budget))


def check_theorem(instance):
    """Full comparison report for an instance dict."""
    return json.loads(_core.theorem_report(json.dumps(instance)))


def ht_failure_witness():
    """Instance with torsion-free cohomology on which Hodge-Tate injectivity fails."""
    return json.loads(_core.ht_failure_witness())


def _lattice_args(basis, basis0, shift, shift0, ring, xi):
    def rows(m):
        return json.dumps([[str(x) for x in row] for row in m])

    return _core.ring_json(ring, xi), rows(basis), shift, rows(basis0), shift0


def relative_position(basis, basis0, *, shift=0, shift0=0, ring="z", xi=""):
    """Valuations of L = xi^-shift span(basis) against L0 = xi^-shift0 span(basis0), descending."""
    return _core.relative_position(*_lattice_args(basis, basis0, shift, shift0, ring, xi))


def bb_filtration(basis, basis0, *, shift=0, shift0=0, ring="z", xi=""):
    """The filtration Fil_m of L on the residue of L0, as a dict."""
    return json.loads(_core.bb_filtration(*_lattice_args(basis, basis0, shift, shift0, ring, xi)))
