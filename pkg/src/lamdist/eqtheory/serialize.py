"""JSON round-trip for derivations.

Schema::

    {"rule": "App",
     "conclusion": {"ctx": [["x", "Real"], ...],
                    "left": "...", "dist": "...", "right": "...",
                    "type": "..."},
     "premises": [ ... ]}

Terms and types are carried in the concrete syntax.
"""

from __future__ import annotations

import json

from ..prims import DEFAULT_REGISTRY, Registry
from ..syntax.parser import ParseError, parse_term, parse_type
from ..syntax.printer import render_term, render_type
from .judgments import Derivation, DistanceJudgment, RULES


class DerivationFormatError(ValueError):
    pass


def derivation_to_dict(d: Derivation) -> dict:
    j = d.conclusion
    return {
        "rule": d.rule,
        "conclusion": {
            "ctx": [[name, render_type(ty)] for name, ty in j.ctx],
            "left": render_term(j.left),
            "dist": render_term(j.dist),
            "right": render_term(j.right),
            "type": render_type(j.ty),
        },
        "premises": [derivation_to_dict(p) for p in d.premises],
    }


def derivation_to_json(d: Derivation) -> str:
    return json.dumps(derivation_to_dict(d), indent=2, sort_keys=True)


def derivation_from_dict(data, registry: Registry = DEFAULT_REGISTRY,
                         path: str = "$") -> Derivation:
    if not isinstance(data, dict):
        raise DerivationFormatError(f"{path}: expected an object")
    for key in ("rule", "conclusion", "premises"):
        if key not in data:
            raise DerivationFormatError(f"{path}: missing {key!r}")
    rule = data["rule"]
    if rule not in RULES:
        raise DerivationFormatError(f"{path}: unknown rule tag {rule!r}")
    c = data["conclusion"]
    if not isinstance(c, dict):
        raise DerivationFormatError(f"{path}.conclusion: expected an object")
    try:
        ctx = tuple((name, parse_type(ty_src, registry))
                    for name, ty_src in c.get("ctx", []))
        judgment = DistanceJudgment(
            ctx,
            parse_term(c["left"], registry),
            parse_term(c["dist"], registry),
            parse_term(c["right"], registry),
            parse_type(c["type"], registry))
    except (KeyError, TypeError, ValueError, ParseError) as e:
        raise DerivationFormatError(f"{path}.conclusion: {e}") from e
    premises = data["premises"]
    if not isinstance(premises, list):
        raise DerivationFormatError(f"{path}.premises: expected a list")
    return Derivation(rule, judgment, tuple(
        derivation_from_dict(p, registry, f"{path}.premises[{i}]")
        for i, p in enumerate(premises)))


def derivation_from_json(text: str,
                         registry: Registry = DEFAULT_REGISTRY) -> Derivation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DerivationFormatError(f"not valid JSON: {e}") from e
    return derivation_from_dict(data, registry)
