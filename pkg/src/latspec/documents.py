"""JSON documents: loading, selector resolution and analysis reports."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Any

from . import checks as chk
from . import topology as top
from .errors import CapacityExceeded, LatspecError, SchemaError, UnknownSelector
from .groups import GROUP_KINDS, GroupLattice, GroupTable, builtin_group, group_lattices
from .lattice import Lattice, classify_elements, dualize, strongly_irreducible, validate_lattice
from .modules import COPRIME, FIRST, PRIME, SECOND, FiniteModule, ModuleLattice, ideal_lattice, spec, submodule_lattice
from .spectrum import DUAL, PRIMAL, SpectrumContext

SCHEMA = "latspec/1"
LATTICE_SELECTORS = ("max", "min", "si", "sh")
MODULE_SELECTORS = ("spec_p", "spec_c", "spec_s", "spec_f")
INTRINSICALLY_DUAL = {"min", "sh", "spec_s", "spec_f"}
DEFAULT_SELECTORS = {
    "lattice": ["max", "si", "min", "sh"],
    "ideals": ["max", "si", "spec_p", "spec_c", "spec_s", "spec_f"],
    "module": ["max", "si", "spec_p", "spec_c", "spec_s", "spec_f"],
    "group": ["normal", "center", "finite_center", "max", "si"],
}


def canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(doc: Any) -> str:
    raw = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return "sha256:" + hashlib.sha256(raw.encode()).hexdigest()


@dataclass(eq=False)
class Source:
    """A loaded document: the lattice plus whatever generated it."""

    kind: str
    lattice: Lattice
    doc: dict
    module_lattice: ModuleLattice | None = None
    group: GroupTable | None = None
    description: str = ""

    def group_lattice(self, kind: str) -> GroupLattice:
        cache = self.__dict__.setdefault("_group_cache", {})
        if kind not in cache:
            cache[kind] = group_lattices(self.group, kind)
        return cache[kind]


def parse_text(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, dict):
        raise SchemaError("top-level JSON value must be an object", field="$")
    return doc


def _field(doc: dict, name: str, types, required: bool = True):
    if name not in doc:
        if required:
            raise SchemaError(f"missing field {name!r}", field=name)
        return None
    value = doc[name]
    if not isinstance(value, types) or isinstance(value, bool):
        raise SchemaError(f"field {name!r} has the wrong type", field=name)
    return value


def infer_kind(doc: dict) -> str:
    if "kind" in doc:
        kind = doc["kind"]
        if kind not in DEFAULT_SELECTORS:
            raise SchemaError(f"unknown document kind {kind!r}", field="kind")
        return kind
    if "elements" in doc:
        return "lattice"
    if "invariant_factors" in doc:
        return "module"
    if "table" in doc or "builtin" in doc:
        return "group"
    if "modulus" in doc:
        return "ideals"
    raise SchemaError("cannot tell the document kind; add a 'kind' field", field="kind")


def load_document(doc: dict) -> Source:
    schema = doc.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise SchemaError(f"unsupported schema {schema!r}; expected {SCHEMA!r}", field="schema")
    kind = infer_kind(doc)
    if kind == "lattice":
        elements = _field(doc, "elements", list)
        if any(not isinstance(e, (str, int)) or isinstance(e, bool) for e in elements):
            raise SchemaError("elements must be strings or integers", field="elements")
        labels = [str(e) for e in elements]
        covers = _field(doc, "covers", list, required=False)
        leq = _field(doc, "leq", list, required=False)
        if covers is None and leq is None:
            raise SchemaError("a lattice needs 'covers' or 'leq'", field="covers")
        for name, pairs in (("covers", covers), ("leq", leq)):
            for k, pair in enumerate(pairs or []):
                if not isinstance(pair, list) or len(pair) != 2:
                    raise SchemaError(f"{name}[{k}] must be a two-element list", field=f"{name}[{k}]")
        L = validate_lattice(labels, covers=covers, leq=leq)
        return Source(kind, L, doc, description=f"lattice with {L.n} elements")
    if kind == "ideals":
        n = _field(doc, "modulus", int)
        ml = ideal_lattice(n)
        return Source(kind, ml.lattice, doc, module_lattice=ml, description=ml.description)
    if kind == "module":
        n = _field(doc, "modulus", int)
        factors = _field(doc, "invariant_factors", list)
        M = FiniteModule(n, tuple(factors))
        ml = submodule_lattice(M)
        return Source(kind, ml.lattice, doc, module_lattice=ml, description=ml.description)
    # group
    if "builtin" in doc:
        G = builtin_group(_field(doc, "builtin", str))
        desc = f"builtin group {doc['builtin']}"
    else:
        order = _field(doc, "order", int)
        table = _field(doc, "table", list)
        names = _field(doc, "names", list, required=False)
        G = GroupTable(order, table, tuple(str(x) for x in names) if names else None)
        desc = f"group of order {order}"
    gl = group_lattices(G, "normal")
    src = Source(kind, gl.lattice, doc, group=G, description=desc)
    src.__dict__["_group_cache"] = {"normal": gl}
    return src


def load_text(text: str) -> Source:
    return load_document(parse_text(text))


# -- selectors --------------------------------------------------------------

def resolve(src: Source, x, dual: bool = False) -> SpectrumContext:
    """Build the context for selector or explicit label list ``x``.

    Primal selectors read with ``dual`` are applied to the dual lattice;
    ``min``, ``sh``, ``spec_s`` and ``spec_f`` are dual by nature.
    """
    L = src.lattice
    meta = {"source": src.kind, "module_lattice": src.module_lattice, "group_lattice": None}
    if isinstance(x, list):
        try:
            points = [L.index(str(e)) for e in x]
        except LatspecError as exc:
            raise UnknownSelector(str(exc), **exc.details) from None
        meta["selector"] = "explicit"
        return SpectrumContext(L, points, DUAL if dual else PRIMAL, meta)
    if not isinstance(x, str):
        raise UnknownSelector(f"selector must be a name or a list of labels, got {x!r}")
    meta["selector"] = x
    if x in LATTICE_SELECTORS:
        flip = x in INTRINSICALLY_DUAL
        orientation = DUAL if (dual or flip) else PRIMAL
        work = L if orientation == PRIMAL else dualize(L)
        if x in ("max", "min"):
            pts = classify_elements(work).maximal
        else:
            pts = strongly_irreducible(work)
        return SpectrumContext(L, pts, orientation, meta)
    if x in MODULE_SELECTORS:
        ml = src.module_lattice
        if ml is None:
            raise UnknownSelector(f"selector {x!r} needs a module or ideal-lattice document", selector=x)
        kind = {"spec_p": PRIME, "spec_c": COPRIME, "spec_s": SECOND, "spec_f": FIRST}[x]
        if dual and x not in INTRINSICALLY_DUAL:
            raise UnknownSelector(f"selector {x!r} has no dual reading", selector=x)
        orientation = DUAL if x in INTRINSICALLY_DUAL else PRIMAL
        return SpectrumContext(L, spec(ml, kind), orientation, meta)
    if x in GROUP_KINDS:
        if src.group is None:
            raise UnknownSelector(f"selector {x!r} needs a group document", selector=x)
        if dual:
            raise UnknownSelector(f"selector {x!r} has no dual reading", selector=x)
        gl = src.group_lattice(x)
        meta["group_lattice"] = gl
        return SpectrumContext(L, gl.points, PRIMAL, meta)
    raise UnknownSelector(
        f"unknown selector {x!r}",
        selector=x,
        known=list(LATTICE_SELECTORS + MODULE_SELECTORS + GROUP_KINDS),
    )


def parse_selector(text: str):
    """``--x`` value: a selector name, a JSON list, or comma-separated labels."""
    text = text.strip()
    if text.startswith("["):
        try:
            value = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UnknownSelector(f"bad label list: {exc.msg}") from None
        if not isinstance(value, list):
            raise UnknownSelector("label list must be a JSON array")
        return value
    if "," in text:
        return [t.strip() for t in text.split(",") if t.strip()]
    # a single label needs a trailing comma or the JSON form
    return text


def describe_x(x) -> str:
    return "explicit" if isinstance(x, list) else x


# -- reports ----------------------------------------------------------------

def lattice_stats(L: Lattice) -> dict:
    c = classify_elements(L)
    lab = lambda s: sorted(L.labels[e] for e in s)  # noqa: E731
    return {
        "size": L.n,
        "bottom": L.labels[L.bottom],
        "top": L.labels[L.top],
        "max": lab(c.maximal),
        "min": lab(c.minimal),
        "si_count": len(c.strongly_irreducible),
        "sh_count": len(c.strongly_hollow),
        "is_hollow_lattice": c.is_hollow_lattice,
        "is_uniform_lattice": c.is_uniform_lattice,
        "is_atomic": c.is_atomic,
        "is_coatomic": c.is_coatomic,
    }


def topology_section(T) -> dict:
    rep = top.property_report(T)
    names = [T.name(p) for p in range(T.size)]
    return {
        "flags": rep["flags"],
        "notes": rep["notes"],
        "min_open": {names[p]: sorted(names[q] for q in chk.bits(u)) for p, u in enumerate(T.min_open)},
        "provenance": T.provenance,
    }


def correspondence(ctx: SpectrumContext) -> dict:
    T = ctx.tau_cl
    out: dict = {"radicals": len(ctx.radicals), "points": ctx.m}
    try:
        closed = top.closed_sets(T, chk.CLOSED_SET_LIMIT)
        out["closed_sets"] = len(closed)
        out["irreducible_closed"] = sum(1 for F in closed if top.is_irreducible(T, F))
    except CapacityExceeded:
        out["closed_sets"] = None
        out["irreducible_closed"] = len(top.irreducible_closed_sets(T))
    out["components"] = len(top.irreducible_components(T))
    out["minimal_points"] = len(ctx.elements_of(ctx.intervals.min_points))
    return out


def analysis_report(
    src: Source,
    x,
    dual: bool = False,
    seed: int = 0,
    only=None,
    timings: bool = False,
) -> tuple[dict, list]:
    ctx = resolve(src, x, dual)
    results = chk.run_all(ctx, seed, only)
    T = ctx.tau_cl
    report = {
        "schema": SCHEMA,
        "input_digest": digest(src.doc),
        "source": {"kind": src.kind, "description": src.description},
        "lattice": lattice_stats(src.lattice),
        "x": {
            "selector": describe_x(x),
            "orientation": ctx.orientation,
            "points": ctx.labels_of(ctx.points),
            "size": ctx.m,
        },
        "x_top": ctx.xtop.to_json(ctx),
        "radicals": ctx.labels_of(ctx.radicals),
        "intervals": ctx.intervals.to_json(ctx),
        "topologies": {"classical": topology_section(T), "finer_patch": topology_section(ctx.tau_fp)},
        "irreducible_components": sorted(ctx.point_labels(F) for F in top.irreducible_components(T)),
        "correspondence": correspondence(ctx),
        "seed": seed,
        "checks": [r.to_json(timings) for r in results],
    }
    return report, results


def any_failed(results) -> bool:
    return any(r.status == chk.FAIL for r in results)
