"""JSON encodings for fans, classes, divisors and reports."""
from __future__ import annotations

import hashlib
import json
import os
import re
import sys
from dataclasses import dataclass

from . import __version__
from .batyrev import BatyrevParams, FamilyParams, build_batyrev, build_family
from .fan import Fan, hirzebruch, p1_x_p1, projective_space
from .picard import class_group

__all__ = [
    "FanContext",
    "load_json",
    "dumps",
    "config_hash",
    "wrap_report",
    "named_fan",
    "load_fan",
    "fan_to_json",
    "decode_class",
    "encode_class",
    "decode_divisor",
]


def load_json(path):
    """Read JSON from a file, from stdin for ``-``, or inline when the text starts with ``[`` or ``{``."""
    if path == "-":
        return json.load(sys.stdin)
    if not os.path.exists(path) and path.lstrip()[:1] in ("[", "{"):
        return json.loads(path)
    with open(path) as fh:
        return json.load(fh)


def dumps(obj, pretty=False):
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def config_hash(obj) -> str:
    return hashlib.sha256(dumps(obj).encode()).hexdigest()[:16]


def wrap_report(command, inputs, result):
    return {"version": __version__, "command": command, "config_hash": config_hash(inputs), "result": result}


@dataclass(frozen=True)
class FanContext:
    """A fan with the class basis used for its JSON classes."""

    fan: Fan
    basis_rays: tuple | None = None
    family: FamilyParams | None = None
    source: dict | None = None

    @property
    def coord_names(self):
        return ("t", "y", "v") if self.family is not None else None


_NAMED = re.compile(r"^(P(\d+)|P1xP1|F(\d+)|family\((\d+),(\d+),(\d+)\))$")


def named_fan(name: str) -> FanContext | None:
    """``P<n>``, ``P1xP1``, ``F<a>`` or ``family(n,r,b)``; ``None`` if not a recognised name."""
    m = _NAMED.match(name.replace(" ", ""))
    if not m:
        return None
    if m.group(2):
        return FanContext(projective_space(int(m.group(2))))
    if m.group(1) == "P1xP1":
        return FanContext(p1_x_p1())
    if m.group(3):
        return FanContext(hirzebruch(int(m.group(3))))
    return _family_context(FamilyParams(int(m.group(4)), int(m.group(5)), int(m.group(6))))


def _family_context(params):
    var = build_family(params)
    return FanContext(var.fan, (var.t, var.y, var.v[0]), params)


def fan_to_json(fan: Fan, family: FamilyParams | None = None, batyrev: BatyrevParams | None = None):
    out = fan.to_json()
    if family is not None:
        out["family"] = family.to_json()
    if batyrev is not None:
        out["batyrev"] = batyrev.to_json()
    return out


def load_fan(spec) -> FanContext:
    """Fan from a path, a builtin name, or already-parsed JSON."""
    if isinstance(spec, str):
        if not os.path.exists(spec):
            ctx = named_fan(spec)
            if ctx is None:
                raise FileNotFoundError(f"no such fan file or builtin fan: {spec}")
            return ctx
        spec = load_json(spec)
    if "family" in spec and "rays" not in spec:
        return _family_context(FamilyParams.from_json(spec["family"]))
    fan = Fan.from_json(spec)
    if "family" in spec:
        params = FamilyParams.from_json(spec["family"])
        ctx = _family_context(params)
        if ctx.fan != fan:
            raise ValueError("fan does not match its declared family parameters")
        return FanContext(fan, ctx.basis_rays, params, spec)
    if "batyrev" in spec:
        var = build_batyrev(BatyrevParams.from_json(spec["batyrev"]))
        if var.fan != fan:
            raise ValueError("fan does not match its declared Batyrev parameters")
    basis = spec.get("basis_rays")
    return FanContext(fan, tuple(basis) if basis is not None else None, None, spec)


def decode_divisor(ctx: FanContext, data):
    if isinstance(data, dict):
        if "divisor" in data:
            data = data["divisor"]
        else:
            raise ValueError("divisor JSON must be a list or {\"divisor\": [...]}")
    div = [int(x) for x in data]
    if len(div) != ctx.fan.n_rays:
        raise ValueError(f"divisor has {len(div)} coefficients, fan has {ctx.fan.n_rays} rays")
    return div


def decode_class(ctx: FanContext, data):
    """A class from ``[..]`` coordinates, ``{"t","y","v"}`` on family fans, or ``{"divisor": [...]}``."""
    pres = class_group(ctx.fan, ctx.basis_rays)
    if isinstance(data, dict):
        if "divisor" in data:
            return pres.classify(decode_divisor(ctx, data))
        if ctx.coord_names and set(ctx.coord_names) <= set(data):
            return tuple(int(data[k]) for k in ctx.coord_names)
        if "class" in data:
            data = data["class"]
        else:
            raise ValueError("unrecognised class JSON")
    cls = tuple(int(x) for x in data)
    if len(cls) != pres.rank:
        raise ValueError(f"class needs {pres.rank} coordinates, got {len(cls)}")
    return cls


def encode_class(ctx: FanContext, cls):
    cls = [int(x) for x in cls]
    if ctx.coord_names:
        return dict(zip(ctx.coord_names, cls))
    return cls
