"""JSON interchange formats and simplicial-complex ingestion.

All files are JSON with a top-level "format": 1 field and the coefficient
ring carried as a token ("int", "rat", "mod:m"); scalars are decimal strings.
Simplicial input is detected by a "facets" key and expanded to the full
downward closure with the sorted-vertex orientation.
"""

from dataclasses import dataclass, field

from .actions import GroupAction, close_generators, trivial_action
from .chains import ChainComplex
from .errors import EquimorseError
from .matchings import Matching
from .rings import Ring

FORMAT = 1


def _check_format(data, what):
    if not isinstance(data, dict):
        raise EquimorseError(f"{what} file must be a JSON object")
    version = data.get("format", FORMAT)
    if version != FORMAT:
        raise EquimorseError(f"unsupported {what} format {version!r}")


# -- chain complexes -----------------------------------------------------------


def complex_to_json(C):
    basis = {str(n): [b.label for b in C.basis(n)] for n in C.degrees() if C.rank(n)}
    boundary = {}
    for n in C.degrees():
        per = {}
        for b in C.basis(n):
            col = C.boundary(b) if n > C.d_min else None
            if col is not None and col.terms:
                per[b.label] = {
                    t.label: C.ring.format_scalar(c) for t, c in sorted(col.terms.items())
                }
        if per:
            boundary[str(n)] = per
    return {
        "format": FORMAT,
        "ring": C.ring.token(),
        "degrees": [C.d_min, C.d_max],
        "basis": basis,
        "boundary": boundary,
    }


def complex_from_json(data, ring=None):
    """Build a ChainComplex from the complex schema.

    `ring` overrides the file's ring token; the stored scalars are then
    reparsed in that ring (rationals do not fit in the integers or a modular
    ring, so such an override fails cleanly).
    """
    _check_format(data, "complex")
    for key in ("ring", "basis"):
        if key not in data:
            raise EquimorseError(f"complex file is missing {key!r}")
    ring = ring or Ring.from_token(data["ring"])
    basis = {int(n): list(labels) for n, labels in data["basis"].items()}
    boundary = {}
    for n, per in data.get("boundary", {}).items():
        boundary[int(n)] = {
            src: {tgt: ring.parse_scalar(c) for tgt, c in entries.items()}
            for src, entries in per.items()
        }
    degrees = tuple(data["degrees"]) if "degrees" in data else None
    return ChainComplex(ring, basis, boundary, degrees=degrees)


# -- group actions --------------------------------------------------------------


def group_to_json(G):
    gens = []
    for name, mapping in G.generator_maps():
        per_degree = {}
        for src, tgt in sorted(mapping.items()):
            per_degree.setdefault(str(src.degree), {})[src.label] = tgt.label
        gens.append({"name": name, "maps": per_degree})
    return {"format": FORMAT, "generators": gens}


def group_from_json(C, data):
    _check_format(data, "group")
    gens = []
    for entry in data.get("generators", ()):
        if "name" not in entry:
            raise EquimorseError("group generator is missing a name")
        maps = {
            int(n): dict(label_map) for n, label_map in entry.get("maps", {}).items()
        }
        gens.append((entry["name"], maps))
    return close_generators(C, gens)


# -- matchings -------------------------------------------------------------------


def matching_to_json(M):
    return {
        "format": FORMAT,
        "pairs": [[a.label, b.label] for a, b in M.pairs],
    }


def matching_from_json(C, data):
    """Resolve label pairs against the complex, inferring degrees.

    Each ["labelA", "labelB"] must name elements in exactly one pair of
    adjacent degrees (n, n+1); anything else is ambiguous or unknown.
    """
    _check_format(data, "matching")
    pairs = []
    for entry in data.get("pairs", ()):
        if len(entry) != 2:
            raise EquimorseError(f"matching pair {entry!r} must have two labels")
        low_label, high_label = entry
        candidates = []
        for n in C.degrees():
            a = C.find(n, low_label)
            b = C.find(n + 1, high_label)
            if a is not None and b is not None:
                candidates.append((a, b))
        if not candidates:
            raise EquimorseError(
                f"pair ({low_label!r}, {high_label!r}) does not name elements "
                "in adjacent degrees"
            )
        if len(candidates) > 1:
            raise EquimorseError(
                f"pair ({low_label!r}, {high_label!r}) is ambiguous across degrees"
            )
        pairs.append(candidates[0])
    return Matching(pairs)


# -- simplicial ingestion ---------------------------------------------------------


@dataclass
class SimplicialInput:
    """A simplicial complex given by facets, with optional vertex symmetries."""

    vertices: list
    facets: list
    group_generators: list = field(default_factory=list)
    ring: Ring = None

    @classmethod
    def from_json(cls, data, ring=None):
        _check_format(data, "simplicial")
        if "vertices" not in data or "facets" not in data:
            raise EquimorseError("simplicial file needs 'vertices' and 'facets'")
        ring = ring or Ring.from_token(data.get("ring", "int"))
        return cls(
            vertices=list(data["vertices"]),
            facets=[list(f) for f in data["facets"]],
            group_generators=[
                (g["name"], dict(g.get("map", {})))
                for g in data.get("group_generators", ())
            ],
            ring=ring,
        )


def simplex_label(vertex_tuple):
    return "|".join(vertex_tuple)


def ingest_simplicial(S):
    """(ChainComplex, GroupAction) for a SimplicialInput.

    Basis elements in degree n are the n-simplices, labeled by their vertex
    tuple sorted in the order of the vertex list and joined by "|", with the
    alternating-sign boundary of that orientation.  Vertex permutations
    induce the action; over any ring where -1 != 1 a permutation that
    reverses some simplex orientation is rejected (use ring mod:2 for
    unoriented symmetries).
    """
    ring = S.ring
    order = {v: i for i, v in enumerate(S.vertices)}
    if len(order) != len(S.vertices):
        raise EquimorseError("duplicate vertex labels")

    simplices = set()
    for facet in S.facets:
        if not facet:
            raise EquimorseError("empty facet")
        for v in facet:
            if v not in order:
                raise EquimorseError(f"facet vertex {v!r} is not a declared vertex")
        if len(set(facet)) != len(facet):
            raise EquimorseError(f"facet {facet!r} repeats a vertex")
        members = tuple(sorted(facet, key=order.get))
        for mask in range(1, 1 << len(members)):
            face = tuple(v for i, v in enumerate(members) if mask >> i & 1)
            simplices.add(face)

    by_dim = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    basis = {
        n: [simplex_label(s) for s in sorted(faces, key=lambda s: tuple(map(order.get, s)))]
        for n, faces in by_dim.items()
    }
    boundary = {}
    for n, faces in by_dim.items():
        if n == 0:
            continue
        per = {}
        for s in faces:
            entries = {}
            for i in range(len(s)):
                face = s[:i] + s[i + 1 :]
                entries[simplex_label(face)] = ring.elem((-1) ** i)
            per[simplex_label(s)] = entries
        boundary[n] = per
    C = ChainComplex(ring, basis, boundary)

    minus_one_is_one = ring.elem(-1) == ring.one
    gens = []
    for name, vertex_map in S.group_generators:
        images = dict(vertex_map)
        for v in images:
            if v not in order or images[v] not in order:
                raise EquimorseError(f"generator {name!r} uses unknown vertices")
        full = {v: images.get(v, v) for v in S.vertices}
        if sorted(full.values(), key=order.get) != S.vertices:
            raise EquimorseError(f"generator {name!r} is not a vertex bijection")
        mapping = {}
        for s in simplices:
            image_seq = [full[v] for v in s]
            image = tuple(sorted(image_seq, key=order.get))
            if image not in simplices:
                raise EquimorseError(
                    f"generator {name!r} does not map simplex "
                    f"{simplex_label(s)} to a simplex"
                )
            if not minus_one_is_one and _permutation_sign(image_seq, order) < 0:
                raise EquimorseError(
                    f"generator {name!r} reverses the orientation of "
                    f"{simplex_label(s)}; use ring mod:2 for unoriented symmetries"
                )
            if image != s:
                n = len(s) - 1
                mapping[C.element(n, simplex_label(s))] = C.element(
                    n, simplex_label(image)
                )
        gens.append((name, mapping))
    G = GroupAction(C, gens) if gens else trivial_action(C)
    return C, G


def _permutation_sign(seq, order):
    """Sign of the permutation sorting seq by the vertex order."""
    keys = [order[v] for v in seq]
    sign = 1
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            if keys[i] > keys[j]:
                sign = -sign
    return sign


# -- reduction bundles -------------------------------------------------------------


def piece_to_json(piece, ring):
    return {
        "degree": piece.degree,
        "top": [b.label for b in piece.top_basis],
        "bottom": [u.label for u in piece.bottom_basis],
        "block": [[ring.format_scalar(v) for v in row] for row in piece.boundary_block],
        "contraction": [
            [ring.format_scalar(v) for v in row] for row in piece.contraction
        ],
    }


def graded_map_to_json(f):
    ring = f.target.ring
    out = {}
    for b in f.source.all_elements():
        col = f.column(b)
        if not col.terms:
            continue
        out.setdefault(str(b.degree), {})[b.label] = {
            t.label: ring.format_scalar(c) for t, c in sorted(col.terms.items())
        }
    return out


def reduction_to_json(result):
    ring = result.input_complex.ring
    steps = []
    for step in result.steps:
        steps.append(
            {
                "index": step.index,
                "degree": step.piece.degree,
                "orbit": [[a.label, b.label] for a, b in step.eliminated_orbit],
            }
        )
    return {
        "format": FORMAT,
        "morse": complex_to_json(result.morse_complex),
        "pieces": [piece_to_json(p, ring) for p in result.pieces],
        "iso": graded_map_to_json(result.iso),
        "steps": steps,
    }
