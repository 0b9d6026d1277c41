"""
Plain-text edge lists and vertex weight files.

Edge list: one "u v" pair per line, whitespace separated, tokens arbitrary.
A line with a single token declares a vertex without edges. '#' starts a
comment. Tokens get dense ids 0..n-1 in order of first appearance.

Weight file: one "v w" pair per line with w a positive number, same comment rule.
"""
from builtins import dict, float, int, len, list, property, range, set, sorted, str, tuple
from dataclasses import dataclass
import logging
import math
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from app.models.graph_model import Graph, WeightAssignment, build_graph
from app.utils.errors import (
    DuplicateEdgeError, EmptyGraphError, MissingVertexWeightError, NonPositiveWeightError,
    ParseError, SelfLoopError,
)

logger = logging.getLogger(__name__)

WEIGHT_MODES = ("deg", "unit", "file")

Row = Tuple[int, List[str]]


@dataclass(frozen=True)
class ParsedGraph:
    """A Graph on dense ids together with the token each id stands for."""
    graph: Graph
    tokens: Tuple[str, ...]

    @property
    def ids(self) -> Dict[str, int]:
        return {token: i for i, token in enumerate(self.tokens)}


def _rows(text: str) -> Iterator[Row]:
    """(line number, fields) for every non-blank line, comments stripped."""
    for number, line in enumerate(text.splitlines(), start=1):
        fields = line.split("#", 1)[0].split()
        if fields:
            yield number, fields


def _assemble(rows: Iterable[Row]) -> ParsedGraph:
    ids: Dict[str, int] = {}
    edges: List[Tuple[int, int]] = []
    seen = set()
    for number, fields in rows:
        if len(fields) > 2:
            logger.error(f"Line {number}: expected 'u v', got {len(fields)} tokens.")
            raise ParseError(f"line {number}: expected 'u v' or a single vertex, got {len(fields)} tokens", line=number)
        for token in fields:
            ids.setdefault(token, len(ids))
        if len(fields) == 1:
            continue
        a, b = fields
        if a == b:
            logger.error(f"Line {number}: self-loop on {a!r}.")
            raise SelfLoopError(f"line {number}: self-loop on {a}", line=number)
        u, v = ids[a], ids[b]
        key = (u, v) if u < v else (v, u)
        if key in seen:
            logger.error(f"Line {number}: duplicate edge {a!r} {b!r}.")
            raise DuplicateEdgeError(f"line {number}: duplicate edge {a} {b}", line=number)
        seen.add(key)
        edges.append((u, v))
    if not ids:
        raise EmptyGraphError("the edge list declares no vertices")
    tokens = tuple(sorted(ids, key=ids.get))
    logger.debug(f"Parsed {len(tokens)} vertices and {len(edges)} edges.")
    return ParsedGraph(graph=build_graph(edges, len(tokens)), tokens=tokens)


def parse_edge_list(text: str) -> ParsedGraph:
    """
    Parses an edge list into a Graph plus the id -> token table.

    Raises:
        ParseError: If a line holds more than two tokens.
        SelfLoopError: If a line joins a token to itself.
        DuplicateEdgeError: If an unordered pair repeats.
        EmptyGraphError: If the text declares no vertex at all.
    """
    return _assemble(_rows(text))


def graph_from_pairs(
    edges: Sequence[Sequence[Union[str, int]]], vertices: Sequence[Union[str, int]] = ()
) -> ParsedGraph:
    """
    Same rules as `parse_edge_list` for already split input.

    `line` in errors is the 1-based position in `edges`; extra `vertices` are
    declared after all edges.
    """
    rows: List[Row] = [(i, [str(x) for x in pair]) for i, pair in enumerate(edges, start=1)]
    rows.extend((len(edges) + i, [str(v)]) for i, v in enumerate(vertices, start=1))
    return _assemble(rows)


def _collect_weights(entries: Iterable[Tuple[Optional[int], str, str]], parsed: ParsedGraph) -> WeightAssignment:
    ids = parsed.ids
    values: Dict[int, float] = {}
    for number, token, raw in entries:
        where = f"line {number}: " if number is not None else ""
        try:
            weight = float(raw)
        except ValueError:
            raise ParseError(f"{where}weight {raw!r} is not a number", line=number)
        if not math.isfinite(weight):
            raise ParseError(f"{where}weight {raw!r} is not finite", line=number)
        if weight <= 0:
            logger.error(f"{where}non-positive weight {weight} for {token!r}.")
            raise NonPositiveWeightError(f"{where}vertex {token} has non-positive weight {raw}", line=number)
        if token not in ids:
            raise ParseError(f"{where}vertex {token!r} is not in the graph", line=number)
        if ids[token] in values:
            raise ParseError(f"{where}vertex {token!r} has a second weight", line=number)
        values[ids[token]] = weight

    missing = [t for t in parsed.tokens if ids[t] not in values]
    if missing:
        logger.error(f"{len(missing)} vertices have no weight, first {missing[0]!r}.")
        raise MissingVertexWeightError(f"vertex {missing[0]} has no weight ({len(missing)} missing)")
    return WeightAssignment.explicit([values[v] for v in range(parsed.graph.n)])


def parse_weights(mode: str, parsed: ParsedGraph, text: Optional[str] = None) -> WeightAssignment:
    """
    Builds the vertex weights for `mode`: "deg", "unit", or "file" (reads `text`).

    Raises:
        ParseError: On malformed lines, unknown or repeated vertices, or an unknown mode.
        NonPositiveWeightError: If a weight is zero or negative.
        MissingVertexWeightError: If some vertex has no weight in file mode.
        IsolatedVertexError: If mode is "deg" and a vertex has no edge.
    """
    if mode == "deg":
        return WeightAssignment.degree(parsed.graph)
    if mode == "unit":
        return WeightAssignment.unit(parsed.graph.n)
    if mode != "file":
        raise ParseError(f"unknown weight mode {mode!r}; expected one of {WEIGHT_MODES}")

    def entries():
        for number, fields in _rows(text or ""):
            if len(fields) != 2:
                raise ParseError(f"line {number}: expected 'v w', got {len(fields)} tokens", line=number)
            yield number, fields[0], fields[1]

    return _collect_weights(entries(), parsed)


def weights_from_mapping(mapping: Mapping[str, float], parsed: ParsedGraph) -> WeightAssignment:
    """File-mode weights given as a token -> weight mapping."""
    return _collect_weights(((None, str(t), str(w)) for t, w in mapping.items()), parsed)


def write_edge_list(graph: Graph, tokens: Optional[Sequence[str]] = None) -> str:
    """
    Canonical text for `graph`: edges in edge order, then isolated vertices one per line.

    Parsing the result gives back the same token pairs and vertex set, although
    ids follow first appearance in the text.
    """
    names = tokens if tokens is not None else [str(v) for v in range(graph.n)]
    lines = [f"{names[u]} {names[v]}" for u, v in graph.edges.tolist()]
    lines.extend(names[v] for v in graph.isolated_vertices().tolist())
    return "\n".join(lines) + "\n"
