"""JSON documents for elections, graphs, solutions and reduction instances."""

from __future__ import annotations

import json
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from .axioms import DelegationSolution, TimedStep
from .errors import ProfileError, TLDError
from .graph import SINK, TemporalEdge, TLDGraph, build_graph
from .profile import (
    Abstain,
    Action,
    Approve,
    DeliberationProfile,
    Vote,
    compile_profile,
    validate_profile,
)
from .reductions.restless import RestlessInstance
from .reductions.steiner import SteinerInstance, node_label
from .reductions.tmst import TmstInstance
from .rules.base import RuleResult


class DocumentError(TLDError, ValueError):
    """A JSON document does not have the expected shape."""


def read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc})") from exc


def write_json(doc: Any, path: str | Path | None) -> str:
    text = json.dumps(doc, indent=2, ensure_ascii=False)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text


def _require(doc: Mapping, *keys: str) -> None:
    missing = [k for k in keys if k not in doc]
    if missing:
        raise DocumentError(f"missing key(s): {', '.join(missing)}")


def _edge(raw: Mapping) -> TemporalEdge:
    _require(raw, "id", "tail", "head", "interval")
    s, t = raw["interval"]
    return TemporalEdge(str(raw["id"]), raw["tail"], raw["head"], (int(s), int(t)), raw.get("weight", 0))


def _edge_doc(e: TemporalEdge) -> dict:
    return {"id": e.id, "tail": e.tail, "head": e.head, "interval": list(e.interval), "weight": e.weight}


# elections

def _action(raw: Mapping) -> Action:
    if raw.get("vote"):
        return Vote()
    if raw.get("abstain"):
        return Abstain()
    if "groups" in raw:
        return Approve.of(raw["groups"], raw.get("scores"), raw.get("delta"))
    raise DocumentError(f"unrecognised action {dict(raw)!r}")


def profile_from_doc(doc: Mapping) -> DeliberationProfile:
    _require(doc, "lifespan", "voters", "rounds")
    rounds: dict[int, dict[str, Action]] = {}
    for entry in doc["rounds"]:
        _require(entry, "t", "actions")
        t = int(entry["t"])
        if t in rounds:
            raise ProfileError(f"round {t} listed twice")
        rounds[t] = {v: _action(a) for v, a in entry["actions"].items()}
    p = DeliberationProfile(int(doc["lifespan"]), tuple(doc["voters"]), rounds)
    validate_profile(p)
    return p


def _action_doc(act: Action) -> dict:
    if isinstance(act, Vote):
        return {"vote": True}
    if isinstance(act, Abstain):
        return {"abstain": True}
    out: dict[str, Any] = {"groups": [sorted(g) for g in act.groups]}
    if act.scores is not None:
        out["scores"] = list(act.scores)
    if act.delta is not None:
        out["delta"] = act.delta
    return out


def profile_to_doc(p: DeliberationProfile) -> dict:
    return {
        "lifespan": p.lifespan,
        "voters": list(p.voters),
        "rounds": [
            {"t": t, "actions": {v: _action_doc(a) for v, a in p.rounds[t].items()}}
            for t in sorted(p.rounds)
        ],
    }


# graphs

def graph_from_doc(doc: Mapping) -> TLDGraph:
    _require(doc, "lifespan", "vertices", "edges")
    vertices = [v for v in doc["vertices"] if v != SINK]
    delta = {
        v: {int(t): d for t, d in row.items()} for v, row in (doc.get("delta") or {}).items()
    }
    return build_graph(vertices, [_edge(e) for e in doc["edges"]], int(doc["lifespan"]), delta)


def graph_to_doc(g: TLDGraph) -> dict:
    return {
        "lifespan": g.lifespan,
        "vertices": list(g.voters),
        "edges": [_edge_doc(e) for e in g.edges],
        "delta": {v: {str(t): d for t, d in sorted(row.items())} for v, row in g.delta.items()},
    }


def load_graph(doc_or_path: Mapping | str | Path) -> TLDGraph:
    """Graph from an election or graph document, telling them apart by their keys."""
    doc = read_json(doc_or_path) if isinstance(doc_or_path, (str, Path)) else doc_or_path
    if not isinstance(doc, Mapping):
        raise DocumentError("expected a JSON object")
    if "rounds" in doc:
        return compile_profile(profile_from_doc(doc))
    if "edges" in doc:
        return graph_from_doc(doc)
    raise DocumentError("document has neither 'rounds' nor 'edges'")


# solutions

def solution_to_doc(res: RuleResult, **meta: Any) -> dict:
    sol = res.solution
    doc = {
        "objective": res.objective,
        "journeys": {
            v: [{"edge": s.edge, "time": s.time} for s in j] for v, j in sorted(sol.journeys.items())
        },
        "unresolved": sorted(res.unresolved),
        "rule": res.rule,
        "walks": sol.walks,
        "time_conscious": sol.time_conscious,
    }
    doc.update(meta)
    return doc


def solution_from_doc(doc: Mapping) -> tuple[DelegationSolution, frozenset[str]]:
    _require(doc, "journeys")
    journeys = {
        v: tuple(TimedStep(s["edge"], int(s["time"])) for s in steps)
        for v, steps in doc["journeys"].items()
    }
    sol = DelegationSolution(
        journeys,
        walks=bool(doc.get("walks", False)),
        time_conscious=bool(doc.get("time_conscious", True)),
    )
    return sol, frozenset(doc.get("unresolved", ()))


# reduction instances

def tmst_from_doc(doc: Mapping) -> tuple[TmstInstance, int]:
    _require(doc, "lifespan", "vertices", "root", "edges", "k")
    inst = TmstInstance(
        tuple(doc["vertices"]),
        tuple(_edge(e) for e in doc["edges"]),
        int(doc["lifespan"]),
        doc["root"],
    )
    return inst, int(doc["k"])


def restless_from_doc(doc: Mapping) -> RestlessInstance:
    _require(doc, "lifespan", "vertices", "edges", "source", "target", "max_wait")
    return RestlessInstance(
        tuple(doc["vertices"]),
        tuple(_edge(e) for e in doc["edges"]),
        int(doc["lifespan"]),
        doc["source"],
        doc["target"],
        int(doc["max_wait"]),
    )


def steiner_to_doc(inst: SteinerInstance) -> dict:
    return {
        "root": node_label(inst.root),
        "nodes": [node_label(n) for n in inst.nodes],
        "arcs": [[node_label(a), node_label(b), w] for a, b, w in inst.arcs],
        "terminals": sorted(node_label(t) for t in inst.terminals),
        "offset": inst.offset(),
    }
