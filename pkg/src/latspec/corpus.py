"""Document generators, the standard corpus, and batch corpus runs."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import checks as chk
from .documents import DEFAULT_SELECTORS, canonical, describe_x, digest, load_text, resolve
from .errors import LatspecError, SchemaError
from .groups import BUILTIN_GROUPS, builtin_group
from .lattice import antichain, boolean, chain, diamond, pentagon

FAMILIES = ("chain", "boolean", "antichain", "n5", "m3", "divisor", "module", "group")


def _int(params, family) -> int:
    if len(params) != 1:
        raise SchemaError(f"family {family!r} takes one integer parameter")
    try:
        return int(params[0])
    except ValueError:
        raise SchemaError(f"family {family!r} needs an integer, got {params[0]!r}") from None


def parse_module_param(text: str) -> tuple[int, list[int]]:
    """``n:[d1,d2]`` or ``n:d1,d2``; a bare ``n`` means the cyclic module ``Z_n``."""
    if ":" not in text:
        n = int(text)
        return n, [n]
    head, tail = text.split(":", 1)
    tail = tail.strip().strip("[]")
    return int(head), [int(t) for t in tail.split(",") if t.strip()]


def generate(family: str, params: list[str]) -> dict:
    """A JSON document for one of the built-in families."""
    if family == "chain":
        return chain(_int(params, family)).to_json()
    if family == "boolean":
        return boolean(_int(params, family)).to_json()
    if family == "antichain":
        return antichain(_int(params, family)).to_json()
    if family == "n5":
        return pentagon().to_json()
    if family == "m3":
        return diamond().to_json()
    if family == "divisor":
        return {"schema": "latspec/1", "kind": "ideals", "modulus": _int(params, family)}
    if family == "module":
        if len(params) != 1:
            raise SchemaError("module takes one parameter of the form n:[d1,...]")
        try:
            n, factors = parse_module_param(params[0])
        except ValueError:
            raise SchemaError(f"cannot parse module parameter {params[0]!r}") from None
        return {"schema": "latspec/1", "kind": "module", "modulus": n, "invariant_factors": factors}
    if family == "group":
        if len(params) != 1 or params[0] not in BUILTIN_GROUPS:
            raise SchemaError(f"group takes one of {sorted(BUILTIN_GROUPS)}")
        return builtin_group(params[0]).to_json()
    raise SchemaError(f"unknown family {family!r}; choose from {FAMILIES}")


def standard_corpus() -> dict[str, dict]:
    """File name -> document for the standard acceptance corpus."""
    out: dict[str, dict] = {}
    for n in range(1, 9):
        out[f"chain_{n}.json"] = generate("chain", [str(n)])
    out["chain_4.json"]["analyses"] = [{"x": ["1", "2"]}]
    for k in range(1, 5):
        out[f"boolean_{k}.json"] = generate("boolean", [str(k)])
    out["boolean_2.json"]["analyses"] = [{"x": ["{1}", "{2}"]}]
    for k in range(1, 7):
        doc = generate("antichain", [str(k)])
        doc["analyses"] = [{"x": ["0"] + [f"a{i + 1}" for i in range(min(k, 2))]}]
        out[f"antichain_{k}.json"] = doc
    out["n5.json"] = generate("n5", [])
    out["n5.json"]["analyses"] = [{"x": ["a", "b"]}, {"x": ["0", "a"]}]
    out["m3.json"] = generate("m3", [])
    for n in (12, 30, 360):
        out[f"divisor_{n}.json"] = generate("divisor", [str(n)])
    out["divisor_12.json"]["analyses"] = [{"x": ["(2)", "(3)"]}, {"x": ["(12)"]}]
    for name, param in (("z12", "12:[12]"), ("z4", "4:[4]"), ("z9", "9:[9]"), ("z2xz2", "2:[2,2]")):
        out[f"module_{name}.json"] = generate("module", [param])
    for g in ("s3", "z4", "d4", "q8"):
        out[f"group_{g}.json"] = generate("group", [g])
    return out


def write_corpus(directory: str | os.PathLike) -> list[str]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    names = []
    for name, doc in sorted(standard_corpus().items()):
        (d / name).write_text(canonical(doc))
        names.append(name)
    return names


def analyses_for(src) -> list[tuple[object, bool]]:
    out = [(x, False) for x in DEFAULT_SELECTORS[src.kind]]
    for k, item in enumerate(src.doc.get("analyses", [])):
        if not isinstance(item, dict) or "x" not in item:
            raise SchemaError(f"analyses[{k}] needs an 'x' entry", field=f"analyses[{k}]")
        out.append((item["x"], bool(item.get("dual", False))))
    return out


def run_file(path: str, seed: int = 0) -> dict:
    """Analyse one corpus file; errors come back as data rather than exceptions."""
    name = os.path.basename(path)
    try:
        text = Path(path).read_text()
        src = load_text(text)
        analyses = []
        for x, dual in analyses_for(src):
            ctx = resolve(src, x, dual)
            results = chk.run_all(ctx, seed)
            analyses.append({
                "x": describe_x(x) if not isinstance(x, list) else x,
                "dual": dual,
                "orientation": ctx.orientation,
                "points": ctx.labels_of(ctx.points),
                "x_top": ctx.xtop.is_x_top,
                "results": [
                    {"check_id": r.check_id, "status": r.status, "witness": r.witness} for r in results
                ],
            })
        return {"file": name, "digest": digest(src.doc), "kind": src.kind, "analyses": analyses}
    except LatspecError as exc:
        return {"file": name, "error": exc.to_dict()}
    except OSError as exc:
        return {"file": name, "error": {"error": "io_error", "message": str(exc)}}


def _run_file_args(args):
    return run_file(*args)


def run_corpus(directory: str | os.PathLike, jobs: int = 1, seed: int = 0) -> dict:
    d = Path(directory)
    if not d.is_dir():
        raise FileNotFoundError(f"corpus directory {str(d)!r} does not exist")
    paths = sorted(str(p) for p in d.glob("*.json"))
    tasks = [(p, seed) for p in paths]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_file_args, tasks))
    else:
        outcomes = [run_file(p, seed) for p in paths]
    files = [o for o in outcomes if "error" not in o]
    errors = [o for o in outcomes if "error" in o]
    per_check = {cid: {chk.PASS: 0, chk.FAIL: 0, chk.NA: 0} for cid in chk.check_ids()}
    totals = {chk.PASS: 0, chk.FAIL: 0, chk.NA: 0}
    failures = []
    n_analyses = 0
    for f in files:
        for a in f["analyses"]:
            n_analyses += 1
            for r in a["results"]:
                per_check[r["check_id"]][r["status"]] += 1
                totals[r["status"]] += 1
                if r["status"] == chk.FAIL:
                    failures.append({"file": f["file"], "x": a["x"], "check_id": r["check_id"],
                                     "witness": r["witness"]})
    return {
        "schema": "latspec/1",
        "seed": seed,
        "files": files,
        "errors": errors,
        "failures": failures,
        "summary": {
            "files": len(files),
            "errored_files": len(errors),
            "analyses": n_analyses,
            "totals": totals,
            "per_check": per_check,
        },
    }
