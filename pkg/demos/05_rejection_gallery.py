"""What the validator refuses, and the witnesses it hands back.

A matching must survive four checks before the reduction will touch it:
each cell matched at most once, every pair a covering pair, every weight a
unit of the coefficient ring, and the reversed covering relation free of
directed cycles; with a group in play the matched set must also be closed
under the action.  This script triggers the three classic failures on
purpose and prints the witness that comes back with each rejection:

  1. matching every cell of a square cycle — acyclicity fails, witness is
     the directed cycle through all eight cells
  2. matching half of a symmetric pair on the hexagon — equivariance fails,
     witness names the generator and the image pair that is missing
  3. matching across a weight-2 boundary over Z — invertibility fails,
     witness is the pair plus the non-unit weight (the same matching is
     fine over Z/5, where 2 is a unit)
"""

from equimorse import (
    ChainComplex,
    Matching,
    MatchingValidationError,
    ZZ,
    Zmod,
    close_generators,
    reduce,
    trivial_action,
    validate,
)


def cycle(n, ring=ZZ):
    verts = [f"v{i}" for i in range(n)]
    edges = [f"e{i}{(i + 1) % n}" for i in range(n)]
    boundary = {
        1: {
            f"e{i}{(i + 1) % n}": {f"v{(i + 1) % n}": 1, f"v{i}": -1}
            for i in range(n)
        }
    }
    return ChainComplex(ring, {0: verts, 1: edges}, boundary)


def pairs(C, labels):
    return Matching([(C.find(0, a), C.find(1, b)) for a, b in labels])


def show(title, C, G, M):
    print(title)
    report = validate(C, G, M)
    for line in report.summary().splitlines():
        print("  " + line)
    try:
        reduce(C, G, M)
        print("  reduce: accepted")
    except MatchingValidationError:
        print("  reduce: rejected")
    print()


def main():
    # 1. Everything matched on a square: reversing four edges closes a loop.
    square = cycle(4)
    M = pairs(square, [("v1", "e01"), ("v2", "e12"), ("v3", "e23"), ("v0", "e30")])
    show("square with all cells matched:", square, trivial_action(square), M)

    # 2. Half an orbit matched under the half-turn rotation of the hexagon.
    hexagon = cycle(6)
    gen = (
        "r3",
        {
            0: {f"v{i}": f"v{(i + 3) % 6}" for i in range(6)},
            1: {f"e{i}{(i + 1) % 6}": f"e{(i + 3) % 6}{(i + 4) % 6}"
                for i in range(6)},
        },
    )
    G = close_generators(hexagon, [gen])
    M = pairs(hexagon, [("v1", "e01")])  # misses its mirror (v4, e34)
    show("hexagon with half a symmetric pair matched:", hexagon, G, M)

    # 3. A doubled edge: weight 2 is not a unit of Z but is a unit of Z/5.
    for ring in (ZZ, Zmod(5)):
        doubled = ChainComplex(
            ring, {0: ["u", "v"], 1: ["e"]}, {1: {"e": {"v": 2}}}
        )
        M = Matching([(doubled.find(0, "v"), doubled.find(1, "e"))])
        show(
            f"doubled edge over {ring.token()}:",
            doubled,
            trivial_action(doubled),
            M,
        )


if __name__ == "__main__":
    main()
