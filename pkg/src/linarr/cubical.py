"""Cubical diagram combinatorics and the Gysin-hypothesis checker.

An n-cube diagram assigns a labeled space descriptor to every subset of
{0, ..., n-1} and a morphism label to every covering pair I < I + {j},
with arrows pointing from the larger index down (the functor is
contravariant).  Composites along any two chains between the same
endpoints must agree, which reduces to checking the two-step squares.

Diagrams carry labels, not varieties: dimensions, smoothness and
codimensions are user-declared facts, and the Theorem-2-style checker
validates the logical shape of the hypotheses (codimension one on every
component of the exceptional-divisor side, a constant codimension c in
{0, 1} on the singular-locus side) and reports the Gysin conclusion range.
Building actual hyperresolutions would need resolution of singularities
and is out of scope.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .errors import InputError

Index = frozenset[int]

MORPHISM_KINDS = ("iso", "closed-immersion", "proper-modification", "proper", "other")


@dataclass(frozen=True)
class SpaceDescriptor:
    """A labeled space: named irreducible components with dimensions.

    The empty space has dimension -1 and no components.
    """

    name: str
    dimension: int
    components: tuple[tuple[str, int], ...]
    smooth: bool = True

    def __post_init__(self):
        expected = max((d for _, d in self.components), default=-1)
        if self.dimension != expected:
            raise InputError(
                f"{self.name}: dimension {self.dimension} != max component dimension {expected}"
            )
        names = [nm for nm, _ in self.components]
        if len(set(names)) != len(names):
            raise InputError(f"{self.name}: component names must be distinct")

    @property
    def is_empty(self) -> bool:
        return not self.components

    @staticmethod
    def empty(name: str = "empty") -> "SpaceDescriptor":
        return SpaceDescriptor(name, -1, ())


@dataclass(frozen=True)
class MorphismDescriptor:
    """A morphism label; codimension data only rides on closed immersions."""

    kind: str
    codim: Optional[tuple[tuple[str, int], ...]] = None

    def __post_init__(self):
        if self.kind not in MORPHISM_KINDS:
            raise InputError(f"unknown morphism kind {self.kind!r}")
        if self.codim is not None and self.kind != "closed-immersion":
            raise InputError("codimension data only accompanies closed immersions")


def compose_kinds(later: str, earlier: str) -> str:
    """Kind of the composite (later o earlier).

    Isomorphisms are neutral; immersions and modifications are closed under
    composition with themselves; mixing proper classes stays proper.
    """
    if later == "iso":
        return earlier
    if earlier == "iso":
        return later
    if later == earlier and later in ("closed-immersion", "proper-modification"):
        return later
    proper_kinds = ("closed-immersion", "proper-modification", "proper")
    if later in proper_kinds and earlier in proper_kinds:
        return "proper"
    return "other"


class CubicalDiagram:
    """A contravariant assignment on the subsets of {0, ..., n-1}."""

    def __init__(
        self,
        n: int,
        nodes: Mapping[Index, SpaceDescriptor],
        arrows: Mapping[tuple[Index, Index], MorphismDescriptor],
    ):
        if n < 0:
            raise InputError("cube index must be nonnegative")
        self.n = n
        self.nodes = {frozenset(k): v for k, v in nodes.items()}
        self.arrows = {
            (frozenset(src), frozenset(dst)): v for (src, dst), v in arrows.items()
        }
        expected = {frozenset(s) for s in _subsets(range(n))}
        if set(self.nodes) != expected:
            raise InputError(f"a {n}-cube needs all {2 ** n} subsets as nodes")
        expected_arrows = {
            (I | {j}, I) for I in expected for j in range(n) if j not in I
        }
        if set(self.arrows) != expected_arrows:
            raise InputError("arrows must cover exactly the covering pairs (I+{j} -> I)")
        self._audit_squares()

    def _audit_squares(self):
        for I in _subsets(range(self.n)):
            I = frozenset(I)
            rest = [j for j in range(self.n) if j not in I]
            for j1, j2 in combinations(rest, 2):
                top = I | {j1, j2}
                via1 = compose_kinds(
                    self.arrows[(I | {j1}, I)].kind, self.arrows[(top, I | {j1})].kind
                )
                via2 = compose_kinds(
                    self.arrows[(I | {j2}, I)].kind, self.arrows[(top, I | {j2})].kind
                )
                if via1 != via2:
                    raise InputError(
                        f"composite labels disagree between {sorted(top)} and {sorted(I)}:"
                        f" {via1} vs {via2}"
                    )

    def derived_kind(self, src: Index, dst: Index) -> str:
        """Label kind of the unique arrow X_src -> X_dst for dst <= src,
        composed along the lexicographically smallest chain (the square
        audit makes the choice immaterial)."""
        src, dst = frozenset(src), frozenset(dst)
        if not dst <= src:
            raise InputError("arrows only exist towards subsets")
        if src == dst:
            return "iso"
        kind = None
        current = src
        for j in sorted(src - dst, reverse=True):
            step = self.arrows[(current, current - {j})].kind
            kind = step if kind is None else compose_kinds(step, kind)
            current = current - {j}
        return kind

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CubicalDiagram)
            and self.n == other.n
            and self.nodes == other.nodes
            and self.arrows == other.arrows
        )

    # -- JSON ------------------------------------------------------------

    @staticmethod
    def from_json(obj: dict) -> "CubicalDiagram":
        if not isinstance(obj, dict) or "n" not in obj or "nodes" not in obj:
            raise InputError("cube JSON needs 'n', 'nodes' and 'arrows'")
        n = int(obj["n"])
        nodes = {}
        for key, val in obj["nodes"].items():
            nodes[_parse_subset(key)] = _space_from_json(val)
        arrows = {}
        for key, val in obj.get("arrows", {}).items():
            src, dst = _parse_arrow_key(key)
            arrows[(src, dst)] = _morphism_from_json(val)
        return CubicalDiagram(n, nodes, arrows)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "nodes": {
                _format_subset(I): _space_to_json(sp) for I, sp in sorted(
                    self.nodes.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))
                )
            },
            "arrows": {
                f"{_format_subset(src)}->{_format_subset(dst)}": _morphism_to_json(m)
                for (src, dst), m in sorted(
                    self.arrows.items(), key=lambda kv: (sorted(kv[0][0]), sorted(kv[0][1]))
                )
            },
        }


def _subsets(universe) -> list[frozenset[int]]:
    items = list(universe)
    out = [frozenset()]
    for x in items:
        out += [s | {x} for s in out]
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def _parse_subset(key: str) -> Index:
    key = key.strip()
    if not (key.startswith("{") and key.endswith("}")):
        raise InputError(f"bad subset key {key!r}")
    inner = key[1:-1].strip()
    if not inner:
        return frozenset()
    try:
        return frozenset(int(x) for x in inner.split(","))
    except ValueError as exc:
        raise InputError(f"bad subset key {key!r}") from exc


def _format_subset(I: Index) -> str:
    return "{" + ",".join(str(i) for i in sorted(I)) + "}"


def _parse_arrow_key(key: str) -> tuple[Index, Index]:
    m = re.match(r"^\s*(\{[^}]*\})\s*->\s*(\{[^}]*\})\s*$", key)
    if not m:
        raise InputError(f"bad arrow key {key!r}; expected '{{...}}->{{...}}'")
    return _parse_subset(m.group(1)), _parse_subset(m.group(2))


def _space_from_json(obj) -> SpaceDescriptor:
    if not isinstance(obj, dict) or "name" not in obj:
        raise InputError("space descriptor JSON needs at least a name")
    comps = tuple((str(nm), int(d)) for nm, d in obj.get("components", []))
    dim = int(obj.get("dimension", max((d for _, d in comps), default=-1)))
    return SpaceDescriptor(str(obj["name"]), dim, comps, bool(obj.get("smooth", True)))


def _space_to_json(sp: SpaceDescriptor) -> dict:
    return {
        "name": sp.name,
        "dimension": sp.dimension,
        "components": [[nm, d] for nm, d in sp.components],
        "smooth": sp.smooth,
    }


def _morphism_from_json(obj) -> MorphismDescriptor:
    if isinstance(obj, str):
        return MorphismDescriptor(obj)
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("morphism descriptor JSON needs a kind")
    codim = obj.get("codim")
    if codim is not None:
        codim = tuple(sorted((str(k), int(v)) for k, v in codim.items()))
    return MorphismDescriptor(str(obj["kind"]), codim)


def _morphism_to_json(m: MorphismDescriptor) -> dict:
    out: dict = {"kind": m.kind}
    if m.codim is not None:
        out["codim"] = {k: v for k, v in m.codim}
    return out


# ----------------------------------------------------------------------
# semisimplicial reshaping


@dataclass(frozen=True)
class SemisimplicialDiagram:
    """Levels of blocks (index subset, descriptor) with derived face maps."""

    levels: tuple[tuple[tuple[Index, SpaceDescriptor], ...], ...]
    source: CubicalDiagram = field(compare=False, repr=False)

    def block_count(self, k: int) -> int:
        return len(self.levels[k])

    def face_map(self, beta: Sequence[int], r: int) -> list[tuple[int, int, str]]:
        """The map X_r -> X_s induced by a strictly increasing
        beta: [s] -> [r], as (source block, target block, label kind)."""
        s = len(beta) - 1
        if sorted(set(beta)) != list(beta) or not beta:
            raise InputError("beta must be strictly increasing and nonempty")
        if beta[-1] > r or r >= len(self.levels):
            raise InputError("beta does not map into [r]")
        out = []
        target_index = {I: pos for pos, (I, _) in enumerate(self.levels[s])}
        for pos, (I, _) in enumerate(self.levels[r]):
            ordered = sorted(I)
            J = frozenset(ordered[b] for b in beta)
            out.append((pos, target_index[J], self.source.derived_kind(I, J)))
        return out

    def augmentation(self, k: int) -> list[tuple[int, str]]:
        """Labels of the augmentation maps from level k blocks to X_empty."""
        return [
            (pos, self.source.derived_kind(I, frozenset()))
            for pos, (I, _) in enumerate(self.levels[k])
        ]


def semisimplicialize(diagram: CubicalDiagram) -> SemisimplicialDiagram:
    """Levels X_k = disjoint union of the nodes over |I| = k + 1, blocks in
    lexicographic subset order; level k has C(n, k+1) blocks."""
    if diagram.n < 1:
        raise InputError("semisimplicialization needs n >= 1")
    levels = []
    for k in range(diagram.n):
        blocks = [
            (I, diagram.nodes[I])
            for I in _subsets(range(diagram.n))
            if len(I) == k + 1
        ]
        blocks.sort(key=lambda pair: sorted(pair[0]))
        levels.append(tuple(blocks))
    return SemisimplicialDiagram(tuple(levels), diagram)


def as_morphism_of_cubes(
    diagram: CubicalDiagram,
) -> tuple[CubicalDiagram, CubicalDiagram, dict[Index, MorphismDescriptor]]:
    """Split an (n+1)-cube into (Y, Z, connecting): Z_I = X_I and
    Y_I = X_{I + {n}} over the index subsets of {0, ..., n-1}, with the
    connecting arrows X_{I + {n}} -> X_I."""
    if diagram.n < 1:
        raise InputError("need a cube of index at least 1")
    n = diagram.n - 1
    z_nodes, y_nodes = {}, {}
    z_arrows, y_arrows = {}, {}
    connecting = {}
    for I in _subsets(range(n)):
        z_nodes[I] = diagram.nodes[I]
        y_nodes[I] = diagram.nodes[I | {n}]
        connecting[I] = diagram.arrows[(I | {n}, I)]
        for j in range(n):
            if j not in I:
                z_arrows[(I | {j}, I)] = diagram.arrows[(I | {j}, I)]
                y_arrows[(I | {j}, I)] = diagram.arrows[(I | {j, n}, I | {n})]
    return (
        CubicalDiagram(n, y_nodes, y_arrows),
        CubicalDiagram(n, z_nodes, z_arrows),
        connecting,
    )


def reassemble_morphism_of_cubes(
    y: CubicalDiagram, z: CubicalDiagram, connecting: Mapping[Index, MorphismDescriptor]
) -> CubicalDiagram:
    """Inverse of as_morphism_of_cubes."""
    if y.n != z.n:
        raise InputError("the two cubes must have the same index")
    n = y.n
    nodes, arrows = {}, {}
    for I in _subsets(range(n)):
        nodes[I] = z.nodes[I]
        nodes[I | {n}] = y.nodes[I]
        arrows[(I | {n}, I)] = connecting[frozenset(I)]
        for j in range(n):
            if j not in I:
                arrows[(I | {j}, I)] = z.arrows[(I | {j}, I)]
                arrows[(I | {j, n}, I | {n})] = y.arrows[(I | {j}, I)]
    return CubicalDiagram(n + 1, nodes, arrows)


@dataclass(frozen=True)
class Reshaped2x2:
    """A cube seen as a 2-cube of (m-2)-cubes over the last two indices."""

    quadrants: tuple[tuple[Index, CubicalDiagram], ...]  # keyed by S <= {0, 1}
    connectors: tuple[tuple[tuple[Index, Index, Index], MorphismDescriptor], ...]

    def quadrant(self, S: Iterable[int]) -> CubicalDiagram:
        S = frozenset(S)
        for key, cube in self.quadrants:
            if key == S:
                return cube
        raise InputError(f"no quadrant {sorted(S)}")


def reshape_2x2(diagram: CubicalDiagram) -> Reshaped2x2:
    """Partition the 2^m subsets by their trace on the last two indices
    {m-2, m-1} (m-2 -> 0, m-1 -> 1); each class forms an (m-2)-cube."""
    m = diagram.n
    if m < 2:
        raise InputError("reshaping needs a cube of index at least 2")
    lo_range = range(m - 2)
    hi = {m - 2: 0, m - 1: 1}

    def lift(I_low: Index, S: Index) -> Index:
        return I_low | {m - 2 + s for s in S}

    quadrants = []
    for S in _subsets(range(2)):
        nodes = {}
        arrows = {}
        for I in _subsets(lo_range):
            nodes[I] = diagram.nodes[lift(I, S)]
            for j in lo_range:
                if j not in I:
                    arrows[(I | {j}, I)] = diagram.arrows[(lift(I | {j}, S), lift(I, S))]
        quadrants.append((S, CubicalDiagram(m - 2, nodes, arrows)))
    connectors = []
    for S in _subsets(range(2)):
        for s in (0, 1):
            if s not in S:
                bigger = S | {s}
                for I in _subsets(lo_range):
                    arrow = diagram.arrows[(lift(I, bigger), lift(I, S))]
                    connectors.append(((bigger, S, I), arrow))
    return Reshaped2x2(tuple(quadrants), tuple(connectors))


def reassemble_2x2(reshaped: Reshaped2x2, m: int) -> CubicalDiagram:
    """Inverse of reshape_2x2 for a cube of index m."""
    if m < 2:
        raise InputError("reshaping needs a cube of index at least 2")
    nodes, arrows = {}, {}
    quad = dict(reshaped.quadrants)
    conn = dict(reshaped.connectors)

    def lift(I_low: Index, S: Index) -> Index:
        return I_low | {m - 2 + s for s in S}

    for S, cube in quad.items():
        for I in _subsets(range(m - 2)):
            nodes[lift(I, S)] = cube.nodes[I]
            for j in range(m - 2):
                if j not in I:
                    arrows[(lift(I | {j}, S), lift(I, S))] = cube.arrows[(I | {j}, I)]
    for (bigger, smaller, I), arrow in conn.items():
        arrows[(lift(I, bigger), lift(I, smaller))] = arrow
    return CubicalDiagram(m, nodes, arrows)


# ----------------------------------------------------------------------
# the hypothesis checker


@dataclass(frozen=True)
class Theorem2Verdict:
    holds: bool
    c: Optional[int]
    iso_above: Optional[int]  # isomorphisms for k > iso_above
    surjection_at: Optional[int]
    valid_above: Optional[int]  # for c = 0, conclusions only for k > valid_above
    failures: tuple[tuple[str, str], ...]

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "c": self.c,
            "gysin": self.describe(),
            "failures": [list(f) for f in self.failures],
        }

    def describe(self) -> str:
        if not self.holds:
            return "hypotheses violated"
        parts = [f"iso for k>{self.iso_above}"]
        if self.surjection_at is not None:
            parts.append(f"surjection at k={self.surjection_at}")
        if self.valid_above is not None:
            parts.append(f"(range k>{self.valid_above})")
        return ", ".join(parts)


def _normalize_embeddings(raw: Mapping) -> dict[Index, dict[str, tuple[str, int]]]:
    out: dict[Index, dict[str, tuple[str, int]]] = {}
    for key, record in raw.items():
        index = _parse_subset(key) if isinstance(key, str) else frozenset(key)
        out[index] = {
            str(comp): (str(entry[0]), int(entry[1])) for comp, entry in record.items()
        }
    return out


def _collect_codims(
    y_cube: CubicalDiagram,
    x_cube: CubicalDiagram,
    embeddings: Mapping[Index, Mapping[str, tuple[str, int]]],
    tag: str,
) -> list[tuple[Index, str, int]]:
    """(index, component, codimension) of Y_I -> X_I over all nonempty I.

    Raises when a nonempty Y component has no embedding record; X
    components without a counterpart are the allowed empty branch.
    """
    if y_cube.n != x_cube.n:
        raise InputError(f"{tag}: cube indices disagree")
    seen = []
    for I in _subsets(range(y_cube.n)):
        if not I:
            continue
        y_node = y_cube.nodes[I]
        x_node = x_cube.nodes[I]
        if y_node.is_empty:
            continue
        record = embeddings.get(I)
        if record is None:
            raise InputError(f"{tag}: missing embedding data for index {_format_subset(I)}")
        x_names = {nm for nm, _ in x_node.components}
        for comp_name, _dim in y_node.components:
            if comp_name not in record:
                raise InputError(
                    f"{tag}: missing codimension datum for component {comp_name!r}"
                    f" at {_format_subset(I)}"
                )
            target, codim = record[comp_name]
            if target not in x_names:
                raise InputError(
                    f"{tag}: component {comp_name!r} embeds into unknown {target!r}"
                    f" at {_format_subset(I)}"
                )
            seen.append((I, comp_name, codim))
    return seen


def check_theorem2(
    dx: CubicalDiagram,
    dy: CubicalDiagram,
    sx: CubicalDiagram,
    sy: CubicalDiagram,
    embeddings: Mapping[str, Mapping[Index, Mapping[str, tuple[str, int]]]],
    dim_y: int,
    dim_sigma_x: int,
) -> Theorem2Verdict:
    """Check the codimension hypotheses on labeled hyperresolution data.

    The exceptional-divisor side must embed with codimension one on every
    irreducible component; the singular-locus side must embed with one
    constant codimension c in {0, 1}.  If both hold the Gysin comparison
    maps exist: for c = 1 isomorphisms above dim Y and a surjection at dim
    Y; for c = 0 the same statements restricted to degrees k >
    2 dim Sigma_X + 1.
    """
    failures: list[tuple[str, str]] = []
    d_embed = _normalize_embeddings(embeddings.get("d", {}))
    s_embed = _normalize_embeddings(embeddings.get("sigma", {}))

    for I, comp, codim in _collect_codims(dy, dx, d_embed, "D"):
        if codim != 1:
            failures.append(
                (
                    "(ii)(I)",
                    f"component {comp!r} at {_format_subset(I)} has codimension {codim}, not 1",
                )
            )
    sigma_codims = _collect_codims(sy, sx, s_embed, "Sigma")
    c: Optional[int] = None
    values = {codim for _, _, codim in sigma_codims}
    if not values:
        c = 1  # vacuous: empty singular-locus side; the stronger range holds
    elif len(values) == 1 and values <= {0, 1}:
        c = values.pop()
    else:
        witness = next(
            (I, comp, codim) for I, comp, codim in sigma_codims if len(values) > 1 or codim not in (0, 1)
        )
        failures.append(
            (
                "(ii)(II)",
                f"singular-locus codimensions {sorted(values)} are not a constant in {{0, 1}}"
                f" (e.g. {witness[1]!r} at {_format_subset(witness[0])})",
            )
        )

    if failures:
        return Theorem2Verdict(False, None, None, None, None, tuple(failures))
    if c == 1:
        return Theorem2Verdict(True, 1, dim_y, dim_y, None, ())
    valid_above = 2 * dim_sigma_x + 1
    iso_above = max(dim_y, valid_above)
    surjection_at = dim_y if dim_y > valid_above else None
    return Theorem2Verdict(True, 0, iso_above, surjection_at, valid_above, ())
