"""Equivariant reduction: eliminate matched orbits, split off acyclic pieces.

Each step picks a minimal orbit of matched pairs G(a, b) in the quotient
poset, changes basis so that every g.a is replaced by g.boundary(b), and
splits the complex into the span of the surviving elements (the residual)
and a two-term acyclic piece on (Gb, G.boundary(b)).  Iterating over all
orbits yields the Morse complex C^M, the acyclic summand T as the direct sum
of the pieces, and an explicit equivariant isomorphism C -> C^M (+) T
assembled from the per-step basis changes.
"""

from dataclasses import dataclass

from .actions import GroupAction, restrict_action
from .chains import (
    BasisElement,
    Chain,
    ChainComplex,
    GradedMap,
    apply_automorphism,
    direct_sum_many,
    invert_matrix,
    is_identity_matrix,
    mat_mul,
    span_subcomplex,
)
from .errors import (
    EquimorseError,
    MatchingValidationError,
    NotClosedUnderBoundaryError,
)
from .matchings import pair_orbits, validate
from .posets import build_cover_graph, quotient_poset

MORSE_PREFIX = "morse|"


def piece_prefix(k):
    return f"piece{k}|"


@dataclass
class AcyclicPiece:
    """A split-off two-term summand on a matched orbit.

    top_basis is the orbit Gb in degree `degree`; bottom_basis the orbit of
    the new element boundary(b) one degree down, aligned with top_basis by
    matched pair.  boundary_block[i][j] = k_{a_i}(boundary b_j) taken in the
    complex the orbit was eliminated from; contraction is its exact inverse,
    the only nonzero homotopy component.  generator_perms records, per group
    generator, the index permutations of the top and bottom bases.
    """

    degree: int
    top_basis: tuple
    bottom_basis: tuple
    bottom_chains: dict
    boundary_block: list
    contraction: list
    generator_perms: tuple

    def rank(self):
        return len(self.top_basis)

    def rank_in_degree(self, n):
        if n == self.degree:
            return len(self.top_basis)
        if n == self.degree - 1:
            return len(self.bottom_basis)
        return 0

    def to_complex(self, ring):
        n = self.degree
        basis = {
            n: [b.label for b in self.top_basis],
            n - 1: [u.label for u in self.bottom_basis],
        }
        cols = {}
        for j, b in enumerate(self.top_basis):
            entries = {
                self.bottom_basis[i].label: self.boundary_block[i][j]
                for i in range(len(self.bottom_basis))
                if self.boundary_block[i][j]
            }
            cols[b.label] = entries
        return ChainComplex(ring, basis, {n: cols}, degrees=(n - 1, n))


@dataclass
class ReductionStep:
    """Audit record of one orbit elimination."""

    index: int
    eliminated_orbit: tuple
    f_lower: GradedMap
    f_upper: GradedMap
    forward: GradedMap
    backward: GradedMap
    piece: AcyclicPiece
    induced_matching: object
    residual: ChainComplex
    residual_action: GroupAction


@dataclass
class ReductionResult:
    """The full outcome: C is isomorphic to morse_complex (+) pieces."""

    input_complex: ChainComplex
    group: GroupAction
    matching: object
    morse_complex: ChainComplex
    morse_action: GroupAction
    pieces: list
    t_complex: ChainComplex
    decomposition: ChainComplex
    decomposition_action: GroupAction
    iso: GradedMap
    iso_inverse: GradedMap
    steps: list


def select_minimal_orbit(Q, remaining):
    """A pair-orbit whose class is minimal among all matched classes of Q.

    Ties are broken lexicographically by the class representative (its least
    member).  Minimality of one class extends to its whole orbit because the
    group acts by order isomorphisms.
    """
    if not remaining:
        raise EquimorseError("no pair-orbits remain")
    class_to_orbit = {}
    for orb in remaining:
        for a, b in orb:
            class_to_orbit[Q.project(a)] = orb
    for i in sorted(class_to_orbit, key=lambda i: min(Q.fiber(i))):
        if not any(j != i and Q.leq_class(j, i) for j in class_to_orbit):
            return class_to_orbit[i]
    raise EquimorseError("internal: no minimal matched class; order is cyclic")


def eliminate_orbit(C, G, M, orbit, step_index=1):
    """Eliminate one minimal matched orbit by an equivariant basis change.

    The lower change sends each matched g.a to g.boundary(b); the upper
    change corrects every unmatched degree-n element x by the weights of the
    new basis elements inside boundary(x).  Eliminated lower elements are
    relabeled with a generation suffix (label@step) so the permutation data
    stays valid verbatim.  The surviving span must be closed under the new
    boundary (the two structural properties of the elimination); a violation
    is an internal error naming the offending basis element.
    """
    pairs = tuple(sorted(orbit))
    lows = [a for a, _ in pairs]
    tops = [b for _, b in pairs]
    k = len(pairs)
    n = tops[0].degree
    ring = C.ring

    W = [[C.coefficient(a, C.boundary(b)) for b in tops] for a in lows]
    for i in range(k):
        for j in range(k):
            if i != j and W[i][j]:
                raise EquimorseError(
                    "internal: cross-pair weight "
                    f"k_{lows[i].label}(boundary {tops[j].label}) is nonzero; "
                    "the orbit is not minimal"
                )
    Winv = invert_matrix(ring, W)

    low_set = set(lows)
    top_set = set(tops)

    # lower change: a_i -> boundary(b_i); upper change: x -> x - sum_j c_j b_j
    f_lower = GradedMap.identity(C)
    f_upper = GradedMap.identity(C)
    f_cols = dict(GradedMap.identity(C).columns)
    finv_cols = dict(f_cols)

    residues = []  # boundary(b_i) minus its Ga part
    for i, a in enumerate(lows):
        col = C.boundary(tops[i])
        f_lower.columns[a] = col
        f_cols[a] = col
        residues.append(
            Chain(n - 1, {y: c for y, c in col.terms.items() if y not in low_set})
        )
    for l, a in enumerate(lows):
        acc = Chain(n - 1, {})
        for i in range(k):
            w = Winv[i][l]
            if w:
                acc = acc + Chain(n - 1, {lows[i]: w}) + residues[i].scale(-w)
        finv_cols[a] = acc

    for x in C.basis(n):
        if x in top_set:
            continue
        bx = C.boundary(x)
        kappa = [C.coefficient(a, bx) for a in lows]
        if not any(kappa):
            continue
        c = [
            sum((Winv[j][i] * kappa[i] for i in range(k) if kappa[i]), ring.zero)
            for j in range(k)
        ]
        terms = {x: ring.one}
        for j in range(k):
            if c[j]:
                terms[tops[j]] = -c[j]
        f_upper.columns[x] = Chain(n, terms)
        f_cols[x] = f_upper.columns[x]
        finv_cols[x] = Chain(
            n, {x: ring.one, **{tops[j]: c[j] for j in range(k) if c[j]}}
        )

    f = GradedMap(C, C, f_cols)
    f_inv = GradedMap(C, C, finv_cols)
    relabel = {a: f"{a.label}@{step_index}" for a in lows}
    rebased = apply_automorphism(C, f, f_inverse=f_inv, relabel=relabel)

    bottoms = tuple(BasisElement(n - 1, relabel[a]) for a in lows)
    for i, b in enumerate(tops):
        col = rebased.boundary(BasisElement(n, b.label))
        if col.terms != {bottoms[i]: ring.one}:
            raise EquimorseError(
                f"internal: boundary of {b.label} after rebasing is not "
                f"exactly its new partner {bottoms[i].label}"
            )

    piece_labels = top_set | set(bottoms)
    survivors = {}
    for m in rebased.degrees():
        keep = [b.label for b in rebased.basis(m) if b not in piece_labels]
        if keep:
            survivors[m] = keep
    try:
        residual = span_subcomplex(rebased, survivors)
    except NotClosedUnderBoundaryError as exc:
        raise EquimorseError(
            "internal: surviving span is not closed under the new boundary "
            f"at {exc.element}: the elimination's structural properties fail"
        ) from exc

    residual_action = restrict_action(G, residual)

    gen_perms = []
    top_index = {b: j for j, b in enumerate(tops)}
    low_index = {a: i for i, a in enumerate(lows)}
    for name, g in G.generators:
        sigma = tuple(top_index[G.act(g, b)] for b in tops)
        tau = tuple(low_index[G.act(g, a)] for a in lows)
        for j in range(k):
            if W[tau[j]][sigma[j]] != W[j][j]:
                raise EquimorseError(
                    f"internal: boundary block not invariant under {name!r}"
                )
        gen_perms.append((name, sigma, tau))

    piece = AcyclicPiece(
        degree=n,
        top_basis=tuple(tops),
        bottom_basis=bottoms,
        bottom_chains={bottoms[i]: C.boundary(tops[i]) for i in range(k)},
        boundary_block=W,
        contraction=Winv,
        generator_perms=tuple(gen_perms),
    )

    induced = M.without(pairs)

    rename = {
        b: BasisElement(b.degree, relabel.get(b, b.label)) for b in C.all_elements()
    }
    forward = GradedMap(
        C,
        rebased,
        {
            t: Chain(t.degree, {rename[s]: c for s, c in f_inv.column(t).terms.items()})
            for t in C.all_elements()
        },
    )
    backward = GradedMap(
        rebased,
        C,
        {rename[t]: f.column(t) for t in C.all_elements()},
    )

    return ReductionStep(
        index=step_index,
        eliminated_orbit=pairs,
        f_lower=f_lower,
        f_upper=f_upper,
        forward=forward,
        backward=backward,
        piece=piece,
        induced_matching=induced,
        residual=residual,
        residual_action=residual_action,
    )


def verify_weight_preservation(step, C_before, C_after):
    """Violations of 'covering weights between surviving matched elements keep
    their value across the elimination'; empty on success.

    Checked for every ordered pair (x, y) of elements of the induced matching
    in adjacent degrees, which covers all surviving matched pairs.
    """
    elements = sorted(step.induced_matching.elements())
    report = []
    for y in elements:
        for x in elements:
            if y.degree != x.degree + 1:
                continue
            before = C_before.coefficient(x, C_before.boundary(y))
            after = C_after.coefficient(x, C_after.boundary(y))
            if before != after:
                report.append((x, y, before, after))
    return report


def contraction_homotopy(piece):
    """The single nonzero homotopy component of an acyclic piece.

    Checks that the contraction is a two-sided inverse of the boundary block
    and that it commutes with the recorded group permutations, then returns
    the contraction matrix (bottom coordinates to top coordinates).
    """
    if not piece.top_basis:
        return []
    ring = piece.boundary_block[0][0].ring
    W, P = piece.boundary_block, piece.contraction
    if not is_identity_matrix(ring, mat_mul(ring, W, P)):
        raise EquimorseError("contraction is not a right inverse of the block")
    if not is_identity_matrix(ring, mat_mul(ring, P, W)):
        raise EquimorseError("contraction is not a left inverse of the block")
    k = len(W)
    for name, sigma, tau in piece.generator_perms:
        for i in range(k):
            for j in range(k):
                if W[tau[i]][sigma[j]] != W[i][j]:
                    raise EquimorseError(
                        f"boundary block does not commute with {name!r}"
                    )
                if P[sigma[j]][tau[i]] != P[j][i]:
                    raise EquimorseError(
                        f"contraction does not commute with {name!r}"
                    )
    return P


def reduce(C, G, M, check=True):
    """Run the full reduction and assemble the decomposition isomorphism.

    Validates the matching, then repeatedly eliminates a minimal matched
    orbit until none remain.  Returns a ReductionResult whose iso is an
    equivariant chain isomorphism from C onto morse (+) pieces, verified
    exactly (invertibility, chain map, equivariance, rank bookkeeping)
    unless check=False.
    """
    report = validate(C, G, M)
    if not report.all_ok():
        raise MatchingValidationError(report)
    if check:
        bad = C.check()
        if bad:
            raise EquimorseError(f"input complex fails the chain axiom at {bad[0]}")
        violations = G.verify_g_map()
        if violations:
            raise EquimorseError(
                f"group action is not by chain maps: {violations[0]}"
            )

    steps = []
    pieces = []
    cur, cur_G, cur_M = C, G, M
    while cur_M.pairs:
        P = build_cover_graph(cur)
        Q = quotient_poset(P, cur_M)
        orbit = select_minimal_orbit(Q, pair_orbits(cur_G, cur_M))
        step = eliminate_orbit(cur, cur_G, cur_M, orbit, step_index=len(steps) + 1)
        if check:
            _check_step(step, cur, cur_G)
        steps.append(step)
        pieces.append(step.piece)
        cur, cur_G, cur_M = step.residual, step.residual_action, step.induced_matching

    morse, morse_action = cur, cur_G
    summands = [morse] + [p.to_complex(C.ring) for p in pieces]
    prefixes = [MORSE_PREFIX] + [piece_prefix(i) for i in range(len(pieces))]
    decomposition = direct_sum_many(summands, prefixes)
    if pieces:
        t_complex = direct_sum_many(summands[1:], prefixes[1:])
    else:
        t_complex = ChainComplex(C.ring, {}, {}, degrees=(C.d_min, C.d_max))
    decomposition_action = _decomposition_action(
        decomposition, G, morse, morse_action, pieces
    )
    iso, iso_inverse = _assemble_iso(C, decomposition, steps, morse)

    result = ReductionResult(
        input_complex=C,
        group=G,
        matching=M,
        morse_complex=morse,
        morse_action=morse_action,
        pieces=pieces,
        t_complex=t_complex,
        decomposition=decomposition,
        decomposition_action=decomposition_action,
        iso=iso,
        iso_inverse=iso_inverse,
        steps=steps,
    )
    if check:
        _check_result(result)
    return result


def _check_step(step, C_before, G_before):
    """Per-step invariants: equivariant basis changes, valid residual data."""
    n = step.piece.degree
    for name, g in G_before.generators:
        for fmap, deg in ((step.f_lower, n - 1), (step.f_upper, n)):
            for t in C_before.basis(deg):
                lhs = fmap.column(G_before.act(g, t))
                rhs = G_before.act_chain(g, fmap.column(t))
                if lhs != rhs:
                    raise EquimorseError(
                        f"internal: basis change not equivariant under {name!r} "
                        f"at {t.label}"
                    )
    bad = step.residual.check()
    if bad:
        raise EquimorseError(
            f"internal: residual complex fails the chain axiom at {bad[0]}"
        )
    violations = step.residual_action.verify_g_map()
    if violations:
        raise EquimorseError(
            f"internal: residual action is not by chain maps: {violations[0]}"
        )
    rep = validate(step.residual, step.residual_action, step.induced_matching)
    if not rep.all_ok():
        raise EquimorseError(
            "internal: induced matching fails validation on the residual:\n"
            + rep.summary()
        )
    broken = verify_weight_preservation(step, C_before, step.residual)
    if broken:
        x, y, before, after = broken[0]
        raise EquimorseError(
            f"internal: weight of {y.label} over {x.label} changed "
            f"from {before.value} to {after.value}"
        )
    contraction_homotopy(step.piece)


def _decomposition_action(D, G, morse, morse_action, pieces):
    """The action on morse (+) pieces induced by the original generators."""
    morse_gens = {name: g for name, g in morse_action.generators}
    gens = []
    for name, _ in G.generators:
        mapping = {}
        g = morse_gens[name]
        for b in morse.all_elements():
            img = morse_action.act(g, b)
            if img != b:
                mapping[BasisElement(b.degree, MORSE_PREFIX + b.label)] = BasisElement(
                    img.degree, MORSE_PREFIX + img.label
                )
        for idx, piece in enumerate(pieces):
            pre = piece_prefix(idx)
            perms = {pname: (sigma, tau) for pname, sigma, tau in piece.generator_perms}
            sigma, tau = perms[name]
            for j, b in enumerate(piece.top_basis):
                img = piece.top_basis[sigma[j]]
                if img != b:
                    mapping[BasisElement(b.degree, pre + b.label)] = BasisElement(
                        img.degree, pre + img.label
                    )
            for i, u in enumerate(piece.bottom_basis):
                img = piece.bottom_basis[tau[i]]
                if img != u:
                    mapping[BasisElement(u.degree, pre + u.label)] = BasisElement(
                        img.degree, pre + img.label
                    )
        gens.append((name, mapping))
    return GroupAction(D, gens)


def _assemble_iso(C, D, steps, morse):
    """Compose the per-step basis changes and split off piece coordinates.

    Forward: push each original basis element through every step's forward
    map, freezing coordinates that land on a piece (new bottom elements are
    rescaled by the boundary block so the piece summand's block is the block
    recorded in the AcyclicPiece).  Backward: lift every decomposition basis
    element through the steps in reverse.
    """
    ring = C.ring
    splits = []
    for k, step in enumerate(steps):
        piece = step.piece
        top_index = {b: j for j, b in enumerate(piece.top_basis)}
        bottom_index = {u: i for i, u in enumerate(piece.bottom_basis)}
        splits.append((step, piece, top_index, bottom_index, piece_prefix(k)))

    iso_cols = {}
    for t in C.all_elements():
        frozen = {}
        chain = Chain(t.degree, {t: ring.one})
        for step, piece, top_index, bottom_index, pre in splits:
            img = step.forward.apply(chain)
            keep = {}
            for s, coeff in img.terms.items():
                j = top_index.get(s)
                if j is not None:
                    tgt = D.element(s.degree, pre + s.label)
                    frozen[tgt] = frozen.get(tgt, ring.zero) + coeff
                    continue
                i = bottom_index.get(s)
                if i is not None:
                    for l in range(len(piece.bottom_basis)):
                        w = piece.boundary_block[l][i]
                        if w:
                            tgt = D.element(
                                s.degree, pre + piece.bottom_basis[l].label
                            )
                            frozen[tgt] = frozen.get(tgt, ring.zero) + coeff * w
                    continue
                keep[s] = coeff
            chain = Chain(t.degree, keep)
        for s, coeff in chain.terms.items():
            tgt = D.element(s.degree, MORSE_PREFIX + s.label)
            frozen[tgt] = frozen.get(tgt, ring.zero) + coeff
        iso_cols[t] = Chain(t.degree, frozen)
    iso = GradedMap(C, D, iso_cols)

    inv_cols = {}

    def descend(chain, from_step):
        for step in reversed(steps[: from_step + 1]):
            chain = step.backward.apply(chain)
        return chain

    for b in morse.all_elements():
        start = Chain(b.degree, {b: ring.one})
        inv_cols[D.element(b.degree, MORSE_PREFIX + b.label)] = descend(
            start, len(steps) - 1
        )
    for k, (step, piece, top_index, bottom_index, pre) in enumerate(splits):
        for b in piece.top_basis:
            start = Chain(b.degree, {b: ring.one})
            inv_cols[D.element(b.degree, pre + b.label)] = descend(start, k)
        for l, u in enumerate(piece.bottom_basis):
            terms = {}
            for j in range(len(piece.bottom_basis)):
                w = piece.contraction[j][l]
                if w:
                    terms[piece.bottom_basis[j]] = w
            inv_cols[D.element(u.degree, pre + u.label)] = descend(
                Chain(u.degree, terms), k
            )
    iso_inverse = GradedMap(D, C, inv_cols)
    return iso, iso_inverse


def _check_result(result):
    """Exact verification of the decomposition invariants."""
    C, D = result.input_complex, result.decomposition
    iso, inv = result.iso, result.iso_inverse
    ring = C.ring
    one = ring.one
    for t in C.all_elements():
        if inv.apply(iso.column(t)).terms != {t: one}:
            raise EquimorseError(f"internal: iso is not injective at {t.label}")
    for s in D.all_elements():
        if iso.apply(inv.column(s)).terms != {s: one}:
            raise EquimorseError(f"internal: iso is not surjective at {s.label}")
    if not iso.is_chain_map():
        raise EquimorseError("internal: iso does not commute with the boundary")
    d_gens = {name: g for name, g in result.decomposition_action.generators}
    for name, g in result.group.generators:
        gd = d_gens[name]
        for t in C.all_elements():
            lhs = result.decomposition_action.act_chain(gd, iso.column(t))
            rhs = iso.column(result.group.act(g, t))
            if lhs != rhs:
                raise EquimorseError(
                    f"internal: iso does not commute with {name!r} at {t.label}"
                )
    for n in C.degrees():
        total = result.morse_complex.rank(n) + sum(
            p.rank_in_degree(n) for p in result.pieces
        )
        if total != C.rank(n):
            raise EquimorseError(
                f"internal: rank bookkeeping fails in degree {n}: "
                f"{total} != {C.rank(n)}"
            )
    by_degree = {}
    for a, b in result.matching.pairs:
        by_degree[b.degree] = by_degree.get(b.degree, 0) + 1
        by_degree[a.degree] = by_degree.get(a.degree, 0) + 1
    for n in C.degrees():
        forgetful = sum(p.rank_in_degree(n) for p in result.pieces)
        if forgetful != by_degree.get(n, 0):
            raise EquimorseError(
                f"internal: piece ranks in degree {n} disagree with the "
                "matched-element count"
            )
    bad = result.decomposition.check()
    if bad:
        raise EquimorseError(
            f"internal: decomposition fails the chain axiom at {bad[0]}"
        )
