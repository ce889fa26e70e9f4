"""Shared complexes, actions, and matchings used across the test suite.

Everything here is small enough to reason about by hand; expected homology
and rank values asserted in the tests were computed independently with the
Smith normal form routine on the unreduced boundary matrices.
"""

from equimorse import (
    ChainComplex,
    Matching,
    SimplicialInput,
    ZZ,
    close_generators,
    ingest_simplicial,
    trivial_action,
)


def point(ring=ZZ):
    return ChainComplex(ring, {0: ["p"]}, {})


def interval(ring=ZZ):
    # v0 --e01--> v1
    return ChainComplex(
        ring,
        {0: ["v0", "v1"], 1: ["e01"]},
        {1: {"e01": {"v1": 1, "v0": -1}}},
    )


def edge_label(i, n):
    return f"e{i}{(i + 1) % n}"


def cycle(n, ring=ZZ):
    """Boundary of an n-gon: vertices v0..v(n-1), edge e{i}{i+1} from vi to v(i+1)."""
    verts = [f"v{i}" for i in range(n)]
    edges = [edge_label(i, n) for i in range(n)]
    boundary = {
        1: {edge_label(i, n): {f"v{(i + 1) % n}": 1, f"v{i}": -1} for i in range(n)}
    }
    return ChainComplex(ring, {0: verts, 1: edges}, boundary)


def triangle(ring=ZZ):
    return cycle(3, ring)


def square(ring=ZZ):
    return cycle(4, ring)


def hexagon(ring=ZZ):
    return cycle(6, ring)


def rotation_generator(n, shift, name=None):
    """(name, per-degree map) tuple rotating an n-cycle by `shift` positions."""
    return (
        name or f"r{shift}",
        {
            0: {f"v{i}": f"v{(i + shift) % n}" for i in range(n)},
            1: {edge_label(i, n): edge_label((i + shift) % n, n) for i in range(n)},
        },
    )


def rotation_action(C, n, shift):
    return close_generators(C, [rotation_generator(n, shift)])


def hexagon_z2(ring=ZZ):
    C = hexagon(ring)
    return C, rotation_action(C, 6, 3)


def hexagon_z3(ring=ZZ):
    C = hexagon(ring)
    return C, rotation_action(C, 6, 2)


def hexagon_z6(ring=ZZ):
    C = hexagon(ring)
    return C, rotation_action(C, 6, 1)


def find_label(C, label):
    for n in C.degrees():
        b = C.find(n, label)
        if b is not None:
            return b
    raise KeyError(label)


def match(C, *label_pairs):
    """Matching from (lower_label, upper_label) pairs; labels must be unique in C."""
    return Matching([(find_label(C, a), find_label(C, b)) for a, b in label_pairs])


# Z2-equivariant matching on the hexagon: two orbits of size two.
HEX_Z2_PAIRS = [("v1", "e01"), ("v4", "e34"), ("v2", "e12"), ("v5", "e45")]

# Z3-equivariant matching: one orbit of size three.
HEX_Z3_PAIRS = [("v1", "e01"), ("v3", "e23"), ("v5", "e45")]


def full_two_simplex(ring=ZZ):
    """Solid triangle: one 2-cell glued onto the 3-cycle."""
    C, _ = simplicial(["a", "b", "c"], [["a", "b", "c"]], ring=ring)
    return C


def simplicial(vertices, facets, generators=(), ring=ZZ):
    S = SimplicialInput(
        vertices=list(vertices),
        facets=[list(f) for f in facets],
        group_generators=[(name, dict(m)) for name, m in generators],
        ring=ring,
    )
    return ingest_simplicial(S)


RP2_FACETS = [
    ["1", "2", "4"], ["1", "3", "4"], ["1", "5", "6"], ["1", "2", "5"],
    ["2", "3", "5"], ["2", "3", "6"], ["1", "3", "6"], ["2", "4", "6"],
    ["3", "4", "5"], ["4", "5", "6"],
]


def rp2(ring=ZZ):
    """Minimal 6-vertex triangulation of the real projective plane."""
    C, _ = simplicial([str(i) for i in range(1, 7)], RP2_FACETS, ring=ring)
    return C


def torus_facets():
    faces = []
    for i in range(7):
        faces.append([str(i), str((i + 1) % 7), str((i + 3) % 7)])
        faces.append([str(i), str((i + 2) % 7), str((i + 3) % 7)])
    return faces


def torus(ring=ZZ):
    """7-vertex triangulation of the torus."""
    C, _ = simplicial([str(i) for i in range(7)], torus_facets(), ring=ring)
    return C


def all_corpus_complexes(ring=ZZ):
    """Name -> complex for every fixed test instance."""
    return {
        "point": point(ring),
        "interval": interval(ring),
        "triangle": triangle(ring),
        "square": square(ring),
        "hexagon": hexagon(ring),
        "two_simplex": full_two_simplex(ring),
        "rp2": rp2(ring),
        "torus": torus(ring),
    }


def corpus_with_actions(ring=ZZ):
    """(name, complex, action) triples: symmetric instances get real actions."""
    out = []
    for name, C in all_corpus_complexes(ring).items():
        out.append((name, C, trivial_action(C)))
    C, G = hexagon_z2(ring)
    out.append(("hexagon_z2", C, G))
    C, G = hexagon_z3(ring)
    out.append(("hexagon_z3", C, G))
    C, G = hexagon_z6(ring)
    out.append(("hexagon_z6", C, G))
    return out
