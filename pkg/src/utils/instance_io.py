"""
JSON files for instances, cluster graphs, solutions and solver results
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from core.errors import InstanceFormatError
from core.graph import ClusterGraph, Graph
from core.instance import Instance, Measure, Solution, Variant

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

PathLike = Union[str, Path]


def _read_json(path: PathLike) -> Any:
    try:
        with open(path, "r") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e


def _field(data: Dict[str, Any], name: str, kind: type, source: str) -> Any:
    if name not in data:
        raise InstanceFormatError(f"{source}: field '{name}': missing")
    value = data[name]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise InstanceFormatError(f"{source}: field '{name}': expected an integer, got {value!r}")
    if kind is list and not isinstance(value, list):
        raise InstanceFormatError(f"{source}: field '{name}': expected a list")
    if kind is str and not isinstance(value, str):
        raise InstanceFormatError(f"{source}: field '{name}': expected a string")
    return value


def _clusters(value: Any, n: int, source: str, name: str) -> ClusterGraph:
    if not isinstance(value, list) or not all(isinstance(c, list) for c in value):
        raise InstanceFormatError(f"{source}: field '{name}': expected a list of vertex lists")
    try:
        return ClusterGraph.from_clusters(n, value)
    except (TypeError, ValueError) as e:
        raise InstanceFormatError(f"{source}: field '{name}': {e}") from e


def instance_to_dict(inst: Instance) -> Dict[str, Any]:
    return {
        "version": FORMAT_VERSION,
        "variant": inst.variant.value,
        "measure": inst.measure.value,
        "n": inst.n,
        "g_edges": [list(e) for e in sorted(inst.g.edges)],
        "gc_clusters": [sorted(c) for c in inst.gc.clusters],
        "k": inst.k,
        "d": inst.d,
    }


def instance_from_dict(data: Any, source: str = "<instance>") -> Instance:
    """Validate a decoded instance file; k and d must be non-negative."""
    if not isinstance(data, dict):
        raise InstanceFormatError(f"{source}: expected a JSON object")
    version = _field(data, "version", int, source)
    if version != FORMAT_VERSION:
        raise InstanceFormatError(f"{source}: field 'version': unsupported version {version}")
    try:
        variant = Variant(_field(data, "variant", str, source))
    except ValueError as e:
        raise InstanceFormatError(f"{source}: field 'variant': {e}") from e
    try:
        measure = Measure(_field(data, "measure", str, source))
    except ValueError as e:
        raise InstanceFormatError(f"{source}: field 'measure': {e}") from e

    n = _field(data, "n", int, source)
    if n < 0:
        raise InstanceFormatError(f"{source}: field 'n': must be non-negative")
    edges = _field(data, "g_edges", list, source)
    if not all(isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e) for e in edges):
        raise InstanceFormatError(f"{source}: field 'g_edges': expected a list of [u, v] pairs")
    try:
        g = Graph(n, (tuple(e) for e in edges))
    except ValueError as e:
        raise InstanceFormatError(f"{source}: field 'g_edges': {e}") from e
    gc = _clusters(data.get("gc_clusters"), n, source, "gc_clusters")

    budgets = {}
    for name in ("k", "d"):
        budgets[name] = _field(data, name, int, source)
        if budgets[name] < 0:
            raise InstanceFormatError(f"{source}: field '{name}': must be non-negative, got {budgets[name]}")
    return Instance(variant, measure, g, gc, budgets["k"], budgets["d"])


def load_instance(path: PathLike) -> Instance:
    inst = instance_from_dict(_read_json(path), str(path))
    logger.debug(f"Loaded {inst.describe()} from {path}")
    return inst


def write_json(data: Dict[str, Any], path: Optional[PathLike] = None, indent: int = 2) -> str:
    """Serialize `data`; write it to `path` when given and return the text."""
    text = json.dumps(data, indent=indent)
    if path is not None:
        Path(path).write_text(text + "\n")
        logger.info(f"Wrote {path}")
    return text


def save_instance(inst: Instance, path: Optional[PathLike] = None, indent: int = 2) -> str:
    return write_json(instance_to_dict(inst), path, indent)


def load_clusters(path: PathLike, n: Optional[int] = None) -> ClusterGraph:
    """Read a cluster graph given as a list of clusters or as {"n": ..., "clusters": [...]}."""
    data = _read_json(path)
    source = str(path)
    if isinstance(data, dict):
        clusters = data.get("clusters", data.get("witness_clusters"))
        n = data.get("n", n)
    else:
        clusters = data
    if n is None and isinstance(clusters, list):
        n = sum(len(c) for c in clusters if isinstance(c, list))
    return _clusters(clusters, n, source, "clusters")


def load_solution(path: PathLike, inst: Instance) -> Solution:
    """Read a solution for `inst`; explicit edits, when present, are kept as given."""
    data = _read_json(path)
    source = str(path)
    if not isinstance(data, dict):
        raise InstanceFormatError(f"{source}: expected a JSON object")
    gprime = _clusters(data.get("witness_clusters"), inst.n, source, "witness_clusters")
    solution = Solution.from_partition(inst.g, gprime)
    if "edits" not in data or data["edits"] is None:
        return solution

    edits = set()
    for entry in _field(data, "edits", list, source):
        if not (isinstance(entry, list) and len(entry) >= 2 and all(isinstance(x, int) for x in entry[:2])):
            raise InstanceFormatError(f"{source}: field 'edits': expected [u, v, \"ins\"|\"del\"] entries")
        u, v = entry[0], entry[1]
        edits.add((min(u, v), max(u, v)))
    return Solution(gprime, frozenset(edits))


def solution_to_dict(sol: Solution, g: Graph) -> Dict[str, Any]:
    insertions, _ = sol.split_edits(g)
    return {
        "witness_clusters": [sorted(c) for c in sol.gprime.clusters],
        "edits": [[u, v, "ins" if (u, v) in insertions else "del"] for u, v in sorted(sol.edits)],
    }


def result_to_dict(
    decision: bool,
    stats: Dict[str, Any],
    solution: Optional[Solution] = None,
    g: Optional[Graph] = None,
    scope: Optional[str] = None,
    trace: Optional[List[Dict[str, Any]]] = None,
) -> Dict[str, Any]:
    """ResultFile layout: decision, optional witness with its scope, stats, optional trace."""
    result: Dict[str, Any] = {"decision": "yes" if decision else "no"}
    if solution is not None and g is not None:
        result["witness_scope"] = scope
        result.update(solution_to_dict(solution, g))
    result["stats"] = stats
    if trace is not None:
        result["trace"] = trace
    return result
