"""Smallest possible reduction: collapse an interval onto a point.

The complex has two vertices joined by one edge.  Matching the edge with one
of its endpoints eliminates both cells, leaving a Morse complex with a single
vertex — the interval deformation-retracts onto its other endpoint.  The
result also carries the split-off acyclic piece and an explicit isomorphism
between the input and (Morse complex) + (piece), which we inspect column by
column.
"""

from equimorse import (
    ChainComplex,
    Matching,
    ZZ,
    compare,
    homology,
    reduce,
    trivial_action,
)


def main():
    C = ChainComplex(
        ZZ,
        {0: ["v0", "v1"], 1: ["e01"]},
        {1: {"e01": {"v1": 1, "v0": -1}}},
    )
    G = trivial_action(C)
    v1 = C.find(0, "v1")
    e01 = C.find(1, "e01")
    M = Matching([(v1, e01)])

    print("input ranks:", {n: C.rank(n) for n in C.degrees()})
    print("matching:   ", [(a.label, b.label) for a, b in M.pairs])

    result = reduce(C, G, M)
    CM = result.morse_complex

    print("morse ranks:", {n: CM.rank(n) for n in CM.degrees()})
    print("morse basis:", [b.label for b in CM.all_elements()])

    piece = result.pieces[0]
    print("split piece: top", [b.label for b in piece.top_basis],
          "bottom", [u.label for u in piece.bottom_basis],
          "block", [[w.value for w in row] for row in piece.boundary_block])

    print("iso columns (input basis -> morse (+) piece coordinates):")
    for b in C.all_elements():
        col = result.iso.column(b)
        terms = {t.label: c.value for t, c in col.terms.items()}
        print(f"  {b.label} -> {terms}")

    equal, _ = compare(C, CM)
    print("homology of input:", homology(C))
    print("homology of morse:", homology(CM))
    print("profiles equal:   ", equal)


if __name__ == "__main__":
    main()
