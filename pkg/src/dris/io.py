"""JSON and CSV interchange.

JSON carries full double precision and radians; CSV sweeps are rounded to
six significant digits and use degrees.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from .codes import DrisSpec, ElementType, clean_bits, default_types
from .exceptions import DecodeError
from .optics import LayerStack
from .steering import SteeringProblem

__all__ = [
    "spec_from_dict",
    "spec_to_dict",
    "load_spec",
    "dump_spec",
    "stack_from_dict",
    "stack_to_dict",
    "problem_from_dict",
    "read_bits",
    "fmt6",
    "write_csv",
]


def stack_from_dict(d):
    return LayerStack(
        layers=tuple((layer["n"], layer["d"]) if isinstance(layer, dict) else tuple(layer) for layer in d["layers"]),
        n_amb=d.get("n_amb", 1.0),
        back_mirror_reflectance=d.get("back_mirror_reflectance", 1.0),
    )


def stack_to_dict(stack):
    return {
        "layers": [{"n": n, "d": d} for n, d in stack.layers],
        "n_amb": stack.n_amb,
        "back_mirror_reflectance": stack.back_mirror_reflectance,
    }


def spec_from_dict(d):
    """Build a :class:`DrisSpec` from ``{m, n, k, rho_0, types?, stack?}``.

    Without ``types`` the default Gray table is used; a top-level ``betas``
    list may then override its amplitude coefficients.
    """
    try:
        k = int(d["k"])
        if "types" in d and d["types"] is not None:
            types = tuple(
                ElementType(index=u, word=str(t["word"]), theta=float(t["theta_rad"]), beta=float(t.get("beta", 1.0)))
                for u, t in enumerate(d["types"], start=1)
            )
        else:
            types = default_types(k, d.get("betas"))
        stack = stack_from_dict(d["stack"]) if d.get("stack") else None
        return DrisSpec(
            m=int(d["m"]),
            n=int(d["n"]),
            k=k,
            rho_0=float(d["rho_0"]),
            types=types,
            stack=stack,
            polarization=d.get("polarization", "TE"),
        )
    except KeyError as exc:
        raise DecodeError(f"spec is missing field {exc.args[0]!r}") from None


def spec_to_dict(spec):
    out = {
        "m": spec.m,
        "n": spec.n,
        "k": spec.k,
        "rho_0": spec.rho_0,
        "types": [{"word": t.word, "theta_rad": t.theta, "beta": t.beta} for t in spec.types],
    }
    if spec.stack is not None:
        out["stack"] = stack_to_dict(spec.stack)
        out["polarization"] = spec.polarization
    return out


def load_spec(path):
    return spec_from_dict(json.loads(Path(path).read_text()))


def dump_spec(spec, path=None):
    text = json.dumps(spec_to_dict(spec), indent=2)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def problem_from_dict(d, spec):
    return SteeringProblem(
        targets=tuple((t["theta_rad"], t.get("weight", 1.0)) for t in d["targets"]),
        spec=spec,
        theta_i=float(d.get("theta_i_rad", 0.0)),
        lobe_order=float(d.get("lobe_order", 1.0)),
        p_in=float(d.get("p_in_mw", 1.0)),
    )


def read_bits(path):
    """ASCII 0/1 characters from a file, whitespace ignored."""
    return clean_bits(Path(path).read_text())


def fmt6(x):
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return f"{x:.6g}"


def write_csv(fh, header, rows):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else fmt6(v) for v in row])
