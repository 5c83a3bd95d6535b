"""Canonical JSON documents for instances, solutions, oracles and back-map contexts.

Files are UTF-8 JSON with sorted keys and two-space indentation.  Vertices are
1-based, parts are explicit vertex lists, rationals are ``"p/q"`` strings and
sign vectors are ``"+-0"`` strings, so no float ever reaches a file.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .core import CyclePartitionInstance, PathPartitionInstance, SignVector, StableKSubset
from .errors import UsageError
from .measures import Block, ConHalvInstance, CutLabelSolution, PiecewiseConstantDensity, as_fraction
from .oracles import (
    ColoringOracle,
    FiscColoring,
    FSplitCLambda,
    LambdaOracle,
    RelabelContext,
    SchrijverLambda,
    TableColoring,
    TableLambda,
)
from .problems import IndependentSetSolution, OTuckerInstance, SchrijverInstance, SplitSolution
from .reductions import DiscretizationContext

SCHEMA_VERSION = 1
MAX_TABLE_N = 12
PROBLEM_KINDS = ("fisc", "fsplitc", "fsplitp", "conhalv", "schrijver", "otucker")


def dumps(doc: Any) -> str:
    """Canonical text form of a JSON document."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"not valid JSON: {exc}") from None


def rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: Any) -> Fraction:
    if not isinstance(text, (str, int)) or isinstance(text, bool):
        raise UsageError(f"rationals are stored as 'p/q' strings, got {text!r}")
    return as_fraction(text)


def _field(obj: Mapping[str, Any], name: str) -> Any:
    if not isinstance(obj, Mapping):
        raise UsageError(f"expected an object, got {type(obj).__name__}")
    try:
        return obj[name]
    except KeyError:
        raise UsageError(f"missing field {name!r}") from None


def _int(obj: Mapping[str, Any], name: str) -> int:
    value = _field(obj, name)
    if not isinstance(value, int) or isinstance(value, bool):
        raise UsageError(f"field {name!r} must be an integer")
    return value


def _int_list(value: Any, name: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise UsageError(f"field {name!r} must be a list of integers")
    return value


# --- partitions and measures -------------------------------------------------


def partition_payload(inst: CyclePartitionInstance | PathPartitionInstance) -> dict:
    return {"n": inst.n, "parts": [list(p) for p in inst.parts]}


def _partition(payload: Mapping[str, Any], cls):
    parts = _field(payload, "parts")
    if not isinstance(parts, list):
        raise UsageError("field 'parts' must be a list of vertex lists")
    return cls(_int(payload, "n"), [_int_list(p, "parts") for p in parts])


def density_payload(d: PiecewiseConstantDensity) -> dict:
    return {"blocks": [[rational(b.lo), rational(b.hi), rational(b.value)] for b in d.blocks]}


def _density(payload: Mapping[str, Any]) -> PiecewiseConstantDensity:
    blocks = _field(payload, "blocks")
    if not isinstance(blocks, list) or not all(isinstance(b, list) and len(b) == 3 for b in blocks):
        raise UsageError("each block must be a [lo, hi, value] triple")
    return PiecewiseConstantDensity(tuple(Block(*(parse_rational(c) for c in b)) for b in blocks))


# --- oracles -----------------------------------------------------------------


def coloring_descriptor(c: ColoringOracle) -> dict:
    if isinstance(c, TableColoring):
        if c.n > MAX_TABLE_N:
            raise UsageError(f"explicit tables are only stored for n <= {MAX_TABLE_N}")
        entries = sorted([list(s), v] for s, v in c.table.items())
        return {"kind": "table", "n": c.n, "k": c.k, "entries": entries}
    if isinstance(c, FiscColoring):
        return {
            "kind": c.kind,
            "n": c.n,
            "k": c.k,
            "source": partition_payload(c.source),
            "context": relabel_payload(c.context),
        }
    raise UsageError(f"no descriptor for coloring {type(c).__name__}")


def parse_coloring(doc: Mapping[str, Any]) -> ColoringOracle:
    kind = _field(doc, "kind")
    if kind == "table":
        n, k = _int(doc, "n"), _int(doc, "k")
        if n > MAX_TABLE_N:
            raise UsageError(f"explicit tables are only accepted for n <= {MAX_TABLE_N}")
        entries = _field(doc, "entries")
        if not isinstance(entries, list) or not all(isinstance(e, list) and len(e) == 2 for e in entries):
            raise UsageError("table entries must be [subset, color] pairs")
        return TableColoring(n, k, {tuple(_int_list(s, "entries")): v for s, v in entries})
    if kind == FiscColoring.kind:
        c = FiscColoring(_partition(_field(doc, "source"), CyclePartitionInstance))
        if (c.n, c.k) != (_int(doc, "n"), _int(doc, "k")) or (
            "context" in doc and parse_relabel(doc["context"]) != c.context
        ):
            raise UsageError("descriptor does not match its source instance")
        return c
    raise UsageError(f"unknown coloring kind {kind!r}")


def lambda_descriptor(lam: LambdaOracle) -> dict:
    if isinstance(lam, TableLambda):
        if lam.n > MAX_TABLE_N:
            raise UsageError(f"explicit tables are only stored for n <= {MAX_TABLE_N}")
        return {"kind": "table", "n": lam.n, "entries": {str(x): v for x, v in lam.table.items()}}
    if isinstance(lam, SchrijverLambda):
        return {"kind": lam.kind, "n": lam.n, "coloring": coloring_descriptor(lam.coloring)}
    if isinstance(lam, FSplitCLambda):
        return {"kind": lam.kind, "n": lam.n, "source": partition_payload(lam.source)}
    raise UsageError(f"no descriptor for labeling {type(lam).__name__}")


def parse_lambda(doc: Mapping[str, Any]) -> LambdaOracle:
    kind = _field(doc, "kind")
    if kind == "table":
        n = _int(doc, "n")
        if n > MAX_TABLE_N:
            raise UsageError(f"explicit tables are only accepted for n <= {MAX_TABLE_N}")
        entries = _field(doc, "entries")
        if not isinstance(entries, Mapping):
            raise UsageError("table entries must map sign strings to labels")
        lam: LambdaOracle = TableLambda(n, {SignVector(key): v for key, v in entries.items()})
    elif kind == SchrijverLambda.kind:
        lam = SchrijverLambda(parse_coloring(_field(doc, "coloring")))
    elif kind == FSplitCLambda.kind:
        lam = FSplitCLambda(_partition(_field(doc, "source"), CyclePartitionInstance))
    else:
        raise UsageError(f"unknown labeling kind {kind!r}")
    if lam.n != _int(doc, "n"):
        raise UsageError("descriptor n does not match its source")
    return lam


# --- instances -----------------------------------------------------------------


def instance_document(kind: str, inst: Any, eps: Fraction | None = None) -> dict:
    """Wrap an instance as ``{"schema_version", "kind", "payload"}``."""
    if kind == "fisc":
        payload = partition_payload(inst)
    elif kind in ("fsplitc", "fsplitp"):
        payload = partition_payload(inst)
        payload["eps"] = rational(Fraction(0) if eps is None else eps)
    elif kind == "conhalv":
        payload = {
            "measures": [density_payload(d) for d in inst.measures],
            "eps": rational(inst.eps),
            "cut_budget": inst.cut_budget,
        }
    elif kind == "schrijver":
        payload = {"n": inst.n, "k": inst.k, "coloring": coloring_descriptor(inst.coloring)}
    elif kind == "otucker":
        payload = {"n": inst.n, "lambda": lambda_descriptor(inst.lam)}
    else:
        raise UsageError(f"unknown problem kind {kind!r}")
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "payload": payload}


def _check_header(doc: Any) -> tuple[str, Mapping[str, Any]]:
    if not isinstance(doc, Mapping):
        raise UsageError("a document must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise UsageError(f"unsupported schema_version {doc.get('schema_version')!r}")
    kind = _field(doc, "kind")
    if kind not in PROBLEM_KINDS:
        raise UsageError(f"unknown problem kind {kind!r}")
    payload = _field(doc, "payload")
    if not isinstance(payload, Mapping):
        raise UsageError("payload must be an object")
    return kind, payload


def parse_instance(doc: Any) -> tuple[str, Any, Fraction | None]:
    """Return ``(kind, instance, eps)``; eps is None except for the split problems."""
    kind, payload = _check_header(doc)
    if kind == "fisc":
        return kind, _partition(payload, CyclePartitionInstance), None
    if kind == "fsplitc":
        return kind, _partition(payload, CyclePartitionInstance), parse_rational(_field(payload, "eps"))
    if kind == "fsplitp":
        return kind, _partition(payload, PathPartitionInstance), parse_rational(_field(payload, "eps"))
    if kind == "conhalv":
        measures = _field(payload, "measures")
        if not isinstance(measures, list):
            raise UsageError("field 'measures' must be a list")
        inst = ConHalvInstance(
            tuple(_density(d) for d in measures), parse_rational(_field(payload, "eps")), _int(payload, "cut_budget")
        )
        return kind, inst, None
    if kind == "schrijver":
        return kind, SchrijverInstance(_int(payload, "n"), _int(payload, "k"), parse_coloring(_field(payload, "coloring"))), None
    return kind, OTuckerInstance(_int(payload, "n"), parse_lambda(_field(payload, "lambda"))), None


# --- solutions -----------------------------------------------------------------


def solution_document(kind: str, sol: Any, provenance: Mapping[str, Any] | None = None) -> dict:
    if kind == "fisc":
        payload: dict = {"vertices": sorted(sol.vertices)}
    elif kind in ("fsplitc", "fsplitp"):
        payload = {"s1": sorted(sol.s1), "s2": sorted(sol.s2)}
    elif kind == "conhalv":
        payload = {"cuts": [rational(c) for c in sol.cuts], "labels": ["+" if lab > 0 else "-" for lab in sol.labels]}
    elif kind == "schrijver":
        s1, s2 = sol
        payload = {"s1": list(s1.elements), "s2": list(s2.elements)}
    elif kind == "otucker":
        x, y = sol
        payload = {"x": str(SignVector(x)), "y": str(SignVector(y))}
    else:
        raise UsageError(f"unknown problem kind {kind!r}")
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "payload": payload,
        "provenance": dict(provenance or {}),
    }


def parse_solution(doc: Any, inst: Any = None) -> tuple[str, Any]:
    """Return ``(kind, solution)``; Schrijver solutions need the instance for n and k."""
    kind, payload = _check_header(doc)
    if kind == "fisc":
        return kind, IndependentSetSolution(_int_list(_field(payload, "vertices"), "vertices"))
    if kind in ("fsplitc", "fsplitp"):
        return kind, SplitSolution(_int_list(_field(payload, "s1"), "s1"), _int_list(_field(payload, "s2"), "s2"))
    if kind == "conhalv":
        labels = _field(payload, "labels")
        if not isinstance(labels, list) or any(lab not in ("+", "-") for lab in labels):
            raise UsageError("labels must be '+' or '-' strings")
        cuts = _field(payload, "cuts")
        if not isinstance(cuts, list):
            raise UsageError("field 'cuts' must be a list")
        return kind, CutLabelSolution(
            tuple(parse_rational(c) for c in cuts), tuple(1 if lab == "+" else -1 for lab in labels)
        )
    if kind == "schrijver":
        if inst is None:
            raise UsageError("parsing a Schrijver solution needs its instance")
        s1 = _int_list(_field(payload, "s1"), "s1")
        s2 = _int_list(_field(payload, "s2"), "s2")
        return kind, (StableKSubset(inst.n, inst.k, tuple(s1)), StableKSubset(inst.n, inst.k, tuple(s2)))
    x, y = _field(payload, "x"), _field(payload, "y")
    if not isinstance(x, str) or not isinstance(y, str):
        raise UsageError("sign vectors are stored as '+-0' strings")
    return kind, (SignVector(x), SignVector(y))


# --- back-map contexts -----------------------------------------------------------


def context_document(reduction: str, data: Mapping[str, Any]) -> dict:
    return {"schema_version": SCHEMA_VERSION, "reduction": reduction, "context": dict(data)}


def discretization_payload(ctx: DiscretizationContext) -> dict:
    return {
        "eps": rational(ctx.eps),
        "delta": rational(ctx.delta),
        "m": ctx.m,
        "block_bound": ctx.block_bound,
        "positions": [rational(p) for p in ctx.positions],
        "part_of": list(ctx.part_of),
        "imperfect_vertices": sorted(ctx.imperfect_vertices),
        "parity_extra_vertices": sorted(ctx.parity_extra_vertices),
    }


def parse_discretization(payload: Mapping[str, Any]) -> DiscretizationContext:
    positions = _field(payload, "positions")
    if not isinstance(positions, list):
        raise UsageError("field 'positions' must be a list")
    return DiscretizationContext(
        eps=parse_rational(_field(payload, "eps")),
        delta=parse_rational(_field(payload, "delta")),
        m=_int(payload, "m"),
        block_bound=_int(payload, "block_bound"),
        positions=tuple(parse_rational(p) for p in positions),
        part_of=tuple(_int_list(_field(payload, "part_of"), "part_of")),
        imperfect_vertices=frozenset(_int_list(_field(payload, "imperfect_vertices"), "imperfect_vertices")),
        parity_extra_vertices=frozenset(_int_list(_field(payload, "parity_extra_vertices"), "parity_extra_vertices")),
    )


def relabel_payload(ctx: RelabelContext) -> dict:
    return {
        "removed_vertices": list(ctx.removed_vertices),
        "new_to_old": list(ctx.new_to_old),
        "new_part_of": list(ctx.new_part_of),
        "r": list(ctx.r),
        "k": ctx.k,
    }


def parse_relabel(payload: Mapping[str, Any]) -> RelabelContext:
    removed = _field(payload, "removed_vertices")
    if not isinstance(removed, list) or not all(v is None or isinstance(v, int) for v in removed):
        raise UsageError("field 'removed_vertices' must list vertex ids or nulls")
    return RelabelContext(
        tuple(removed),
        tuple(_int_list(_field(payload, "new_to_old"), "new_to_old")),
        tuple(_int_list(_field(payload, "new_part_of"), "new_part_of")),
        tuple(_int_list(_field(payload, "r"), "r")),
        _int(payload, "k"),
    )
