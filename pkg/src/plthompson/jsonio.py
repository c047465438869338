"""JSON encodings for maps, reports, specs and traces.

Rationals are always strings ``"num/den"`` in lowest terms with a positive
denominator.  Decoding is strict: a map whose breakpoint list is not already
canonical is rejected unless ``normalize=True``.
"""

from __future__ import annotations

import enum
import json
import re
from fractions import Fraction
from typing import Any, Dict, Optional

from .classify import OrbitalAnalysis, UbiquityWitness, Verdict
from .construct import (
    DecompositionTrace, NicePairSpec, OrbitalChoice, PerturbationStep, StepCase,
)
from .orbitals import Orbital
from .plmap import Interval, PLMap, PLMapError, format_rational, make_plmap

_RATIONAL = re.compile(r"(-?\d+)/(\d+)\Z")


class FormatError(ValueError):
    """Input that does not follow the document formats."""


def encode_rational(q: Fraction) -> str:
    return format_rational(q)


def decode_rational(s: Any, strict: bool = True) -> Fraction:
    if not isinstance(s, str):
        raise FormatError(f"rational must be a string 'num/den', got {s!r}")
    m = _RATIONAL.match(s.strip())
    if not m:
        raise FormatError(f"malformed rational {s!r}")
    num, den = int(m.group(1)), int(m.group(2))
    if den == 0:
        raise FormatError(f"zero denominator in {s!r}")
    q = Fraction(num, den)
    if strict and (q.numerator, q.denominator) != (num, den):
        raise FormatError(f"{s!r} is not in lowest terms")
    return q


# -- maps -------------------------------------------------------------------

def encode_map(f: PLMap) -> Dict[str, Any]:
    return {"breakpoints": [{"x": encode_rational(x), "y": encode_rational(y)}
                            for x, y in f.points]}


def decode_map(obj: Any, normalize: bool = False) -> PLMap:
    """Map from its JSON object; ``{"word": "..."}`` is accepted as well."""
    if isinstance(obj, dict) and "word" in obj:
        from .words import eval_word
        return eval_word(obj["word"])
    if not isinstance(obj, dict) or not isinstance(obj.get("breakpoints"), list):
        raise FormatError("map object needs a 'breakpoints' list")
    try:
        pts = [(decode_rational(b["x"], not normalize), decode_rational(b["y"], not normalize))
               for b in obj["breakpoints"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"breakpoint entries need 'x' and 'y': {exc}") from None
    try:
        f = make_plmap(pts)
    except PLMapError as exc:
        raise FormatError(str(exc)) from None
    if not normalize and list(f.points) != pts:
        raise FormatError("breakpoints are not in canonical form (use normalize)")
    return f


def _is_leaf(v: Any) -> bool:
    items = v.values() if isinstance(v, dict) else v
    return not any(isinstance(x, (dict, list)) for x in items)


def _render(v: Any, level: int) -> str:
    if not isinstance(v, (dict, list)) or not v or _is_leaf(v):
        return json.dumps(v)
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(v, dict):
        body = ",\n".join(f"{inner}{json.dumps(k)}: {_render(x, level + 1)}" for k, x in v.items())
        return "{\n" + body + "\n" + pad + "}"
    body = ",\n".join(inner + _render(x, level + 1) for x in v)
    return "[\n" + body + "\n" + pad + "]"


def dumps(obj: Any) -> str:
    """Indented JSON with flat containers kept on one line."""
    return _render(obj, 0) + "\n"


def load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from None


def read_map(path: str, normalize: bool = False) -> PLMap:
    return decode_map(load_json(path), normalize)


def write_json(path: str, obj: Any) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(obj))


# -- generic values -----------------------------------------------------------

def to_jsonable(v: Any) -> Any:
    """Best-effort JSON form of witnesses and report fields."""
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, Fraction):
        return encode_rational(v)
    if isinstance(v, enum.Enum):
        return v.value
    if isinstance(v, Orbital):
        return encode_orbital(v)
    if isinstance(v, Interval):
        return {"lo": encode_rational(v.lo), "hi": encode_rational(v.hi)}
    if isinstance(v, PLMap):
        return encode_map(v)
    if isinstance(v, dict):
        return {str(k): to_jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [to_jsonable(x) for x in v]
    return str(v)


# -- orbitals and classification ---------------------------------------------

def encode_orbital(o: Orbital) -> Dict[str, str]:
    return {"lo": encode_rational(o.lo), "hi": encode_rational(o.hi), "sign": o.sign.value}


def orbital_report(orbs) -> Dict[str, Any]:
    return {"orbitals": [encode_orbital(o) for o in orbs]}


def encode_analysis(an: OrbitalAnalysis) -> Dict[str, Any]:
    return {
        "orbital": encode_orbital(an.orbital),
        "f1_orbitals": [encode_orbital(b) for b in an.f1_orbitals],
        "p": to_jsonable(an.p_or_rho),
        "r": to_jsonable(an.r),
        "conditions": {k: bool(v) for k, v in an.conditions.items()},
        "categories": [c.value for c in an.categories],
        "nice": an.nice,
    }


def classification_report(v: Verdict, oracle: Optional[bool] = None) -> Dict[str, Any]:
    reason = {"rule": v.reason.rule, "detail": v.reason.detail}
    if v.reason.orbital is not None:
        reason["orbital"] = to_jsonable(v.reason.orbital)
    if v.reason.witness is not None:
        reason["witness"] = to_jsonable(v.reason.witness)
    out = {"decision": v.decision.value, "reason": reason,
           "orbitals": [encode_analysis(a) for a in v.analyses]}
    if oracle is not None:
        out["oracle"] = oracle
    return out


def witness_report(w: UbiquityWitness) -> Dict[str, Any]:
    return {"W": to_jsonable(w.W), "element": w.label,
            "word": [list(l) for l in w.element], "end": w.end.value}


# -- constructor documents ------------------------------------------------------

def encode_step(st: PerturbationStep) -> Dict[str, Any]:
    out = {"orbital": st.orbital, "h": encode_map(st.h), "t": st.t, "k": st.k,
           "case": st.case.value if st.case else None}
    if st.s is not None:
        out["s"] = encode_rational(st.s)
    return out


def _int(obj: Dict[str, Any], key: str, default=None) -> int:
    v = obj.get(key, default)
    if not isinstance(v, int) or isinstance(v, bool):
        raise FormatError(f"'{key}' must be an integer")
    return v


def decode_step(obj: Any, normalize: bool = False) -> PerturbationStep:
    if not isinstance(obj, dict):
        raise FormatError("step must be an object")
    case = obj.get("case")
    try:
        case = StepCase(case) if case is not None else None
    except ValueError:
        raise FormatError(f"unknown step case {case!r}") from None
    s = obj.get("s")
    return PerturbationStep(
        orbital=_int(obj, "orbital"),
        h=decode_map(obj.get("h"), normalize),
        t=_int(obj, "t", 0),
        k=_int(obj, "k", 0),
        case=case,
        s=decode_rational(s, not normalize) if s is not None else None,
    )


def encode_trace(tr: DecompositionTrace) -> Dict[str, Any]:
    return {
        "nice_f1": encode_map(tr.nice_f1),
        "steps": [encode_step(st) for st in tr.steps],
        "orbitals": [{"orbital": o.orbital, "p": encode_rational(o.p),
                      "alpha": encode_rational(o.alpha),
                      "working_set": [{"lo": encode_rational(iv.lo), "hi": encode_rational(iv.hi),
                                       "kind": kind} for iv, kind in o.working_set]}
                     for o in tr.orbitals],
    }


def decode_trace(obj: Any, normalize: bool = False):
    """``(nice_f1, steps)`` from a trace document."""
    if not isinstance(obj, dict) or "nice_f1" not in obj:
        raise FormatError("trace needs 'nice_f1'")
    steps = obj.get("steps", [])
    if not isinstance(steps, list):
        raise FormatError("'steps' must be a list")
    return decode_map(obj["nice_f1"], normalize), [decode_step(s, normalize) for s in steps]


def decode_nice_spec(obj: Any, normalize: bool = False) -> NicePairSpec:
    """``{"f0": map, "choices": [{"orbital", "point", "filler"?}], "powers"?, "extra"?}``."""
    if not isinstance(obj, dict) or "f0" not in obj:
        raise FormatError("nice-pair spec needs 'f0'")
    choices = []
    for c in obj.get("choices", []):
        filler = c.get("filler")
        choices.append(OrbitalChoice(
            index=_int(c, "orbital"),
            point=decode_rational(c.get("point"), not normalize),
            filler=decode_map(filler, normalize) if filler is not None else None,
        ))
    powers = {}
    for k, v in obj.get("powers", {}).items():
        if not isinstance(v, int):
            raise FormatError("powers must map orbital indices to integers")
        powers[int(k)] = v
    extra = obj.get("extra")
    return NicePairSpec(decode_map(obj["f0"], normalize), choices, powers,
                        decode_map(extra, normalize) if extra is not None else None)
