"""JSON encodings of wedge, one-particle and Fock vectors.

Amplitudes are stored as separate ``re``/``im`` floats. Python's shortest
round-trip float repr makes encode/decode bit-exact.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from seawedge.fock import FockState, FockVector
from seawedge.vectors import OneParticleVector
from seawedge.wedge import BasisLabel, WedgeVector


def _amp(c: complex) -> dict:
    return {"re": float(c.real), "im": float(c.imag)}


def _complex(entry: dict) -> complex:
    return complex(float(entry["re"]), float(entry["im"]))


def wedge_to_json(v: WedgeVector) -> list[dict]:
    return [{"particles": list(k.particles), "holes": list(k.holes), **_amp(c)} for k, c in v.sorted_items()]


def wedge_from_json(data: list[dict]) -> WedgeVector:
    return WedgeVector((BasisLabel(e["particles"], e["holes"]), _complex(e)) for e in data)


def one_particle_to_json(f: OneParticleVector) -> list[dict]:
    return [{"mode": i, **_amp(c)} for i, c in f.sorted_items()]


def one_particle_from_json(data: list[dict]) -> OneParticleVector:
    return OneParticleVector((int(e["mode"]), _complex(e)) for e in data)


def fock_to_json(v: FockVector) -> list[dict]:
    return [
        {"particles": list(k.particles), "antiparticles": list(k.antiparticles), **_amp(c)}
        for k, c in v.sorted_items()
    ]


def fock_from_json(data: list[dict]) -> FockVector:
    return FockVector((FockState(e["particles"], e["antiparticles"]), _complex(e)) for e in data)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_atomic(path: str | Path, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
