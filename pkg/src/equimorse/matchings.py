"""Equivariant acyclic matchings on the basis of a chain complex.

A matching is a set of disjoint covering pairs (a, b).  It qualifies for
reduction when each pair's weight is invertible, reversing the matched edges
creates no directed cycle, and the pair set is stable under the group action.
"""

from .errors import AcyclicityError, DegreeMismatchError, EquimorseError
from .posets import build_cover_graph, find_alternating_cycle, quotient_poset


class Matching:
    """An immutable set of covering pairs (a, b) with degree(b) = degree(a) + 1."""

    __slots__ = ("pairs", "_partner")

    def __init__(self, pairs):
        seen = set()
        clean = []
        for a, b in pairs:
            if b.degree != a.degree + 1:
                raise DegreeMismatchError(
                    f"pair ({a.label}, {b.label}) spans degrees "
                    f"{a.degree} and {b.degree}"
                )
            if (a, b) not in seen:
                seen.add((a, b))
                clean.append((a, b))
        self.pairs = tuple(sorted(clean))
        partner = {}
        for a, b in self.pairs:
            partner.setdefault(a, []).append(b)
            partner.setdefault(b, []).append(a)
        self._partner = partner

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __eq__(self, other):
        return isinstance(other, Matching) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        inner = ", ".join(f"({a.label}, {b.label})" for a, b in self.pairs)
        return f"Matching([{inner}])"

    def elements(self):
        """All matched basis elements."""
        return frozenset(self._partner)

    def is_matched(self, x):
        return x in self._partner

    def partner(self, x):
        mates = self._partner.get(x)
        if mates is None:
            raise EquimorseError(f"{x.label} is not matched")
        if len(mates) > 1:
            raise EquimorseError(f"{x.label} appears in more than one pair")
        return mates[0]

    def duplicated_elements(self):
        """Elements appearing in more than one pair (empty for a real matching)."""
        return sorted(x for x, mates in self._partner.items() if len(mates) > 1)

    def matched_count(self, degree):
        """Number of matched basis elements in one degree."""
        return sum(1 for x in self._partner if x.degree == degree)

    def without(self, removed):
        """The matching minus the given pairs."""
        removed = set(removed)
        return Matching(p for p in self.pairs if p not in removed)


class ValidationReport:
    """Outcome of the five matching checks, with a witness per failure."""

    FIELDS = ("matching_ok", "covering_ok", "invertible_ok", "acyclic_ok",
              "equivariant_ok")

    def __init__(self, matching_ok, covering_ok, invertible_ok, acyclic_ok,
                 equivariant_ok, witnesses=None):
        self.matching_ok = matching_ok
        self.covering_ok = covering_ok
        self.invertible_ok = invertible_ok
        self.acyclic_ok = acyclic_ok
        self.equivariant_ok = equivariant_ok
        self.witnesses = witnesses or {}

    def all_ok(self):
        return all(getattr(self, f) for f in self.FIELDS)

    def __repr__(self):
        flags = ", ".join(f"{f}={getattr(self, f)}" for f in self.FIELDS)
        return f"ValidationReport({flags})"

    def summary(self):
        lines = []
        for f in self.FIELDS:
            lines.append(f"{f}: {'ok' if getattr(self, f) else 'FAIL'}")
            if not getattr(self, f) and f in self.witnesses:
                lines.append(f"  witness: {self.witnesses[f]}")
        return "\n".join(lines)

    def to_json(self):
        data = {f: getattr(self, f) for f in self.FIELDS}
        data["ok"] = self.all_ok()
        witnesses = {}
        for key, val in self.witnesses.items():
            witnesses[key] = _json_witness(val)
        if witnesses:
            data["witnesses"] = witnesses
        return data


def _json_witness(val):
    # BasisElement is itself a tuple, so the label check must come first.
    if hasattr(val, "label"):
        return val.label
    if isinstance(val, (list, tuple)):
        return [_json_witness(v) for v in val]
    if hasattr(val, "value"):
        return str(val.value)
    return str(val)


def validate(C, G, M):
    """Run the five matching checks and collect witnesses for failures.

    matching_ok: no basis element is in two pairs.
    covering_ok: every pair is a covering pair (nonzero weight).
    invertible_ok: every weight is a unit of the coefficient ring.
    acyclic_ok: the matched digraph has no directed cycle; checked both by
        antisymmetry of the quotient closure (authoritative) and by direct
        cycle search, which must agree.
    equivariant_ok: the pair set is stable under every group generator.
    """
    witnesses = {}
    for a, b in M.pairs:
        if not (C.has_element(a) and C.has_element(b)):
            raise EquimorseError(
                f"pair ({a.label}, {b.label}) references elements outside the complex"
            )

    dups = M.duplicated_elements()
    matching_ok = not dups
    if dups:
        witnesses["matching_ok"] = dups

    zero_pairs = [(a, b) for a, b in M.pairs if not C.coefficient(a, C.boundary(b))]
    covering_ok = not zero_pairs
    if zero_pairs:
        witnesses["covering_ok"] = zero_pairs

    bad_units = []
    for a, b in M.pairs:
        w = C.coefficient(a, C.boundary(b))
        if w.try_invert() is None:
            bad_units.append((a, b, w))
    invertible_ok = not bad_units
    if bad_units:
        witnesses["invertible_ok"] = bad_units

    cycle = find_alternating_cycle(C, M.pairs)
    acyclic_ok = cycle is None
    if cycle is not None:
        witnesses["acyclic_ok"] = cycle
    if matching_ok:
        # cross-validate against the authoritative quotient antisymmetry check
        P = build_cover_graph(C)
        try:
            quotient_poset(P, M)
            quotient_acyclic = True
        except AcyclicityError:
            quotient_acyclic = False
        if quotient_acyclic != acyclic_ok:
            raise EquimorseError(
                "internal: quotient antisymmetry and digraph cycle search disagree"
            )

    missing = []
    pair_set = set(M.pairs)
    for name, g in G.generators:
        for a, b in M.pairs:
            ga, gb = G.act(g, a), G.act(g, b)
            if (ga, gb) not in pair_set:
                missing.append((name, (ga, gb)))
    equivariant_ok = not missing
    if missing:
        witnesses["equivariant_ok"] = missing

    return ValidationReport(matching_ok, covering_ok, invertible_ok,
                            acyclic_ok, equivariant_ok, witnesses)


def pair_orbit(G, pair):
    """The orbit of a matched pair under the whole group, sorted."""
    a, b = pair
    return tuple(sorted({(G.act(g, a), G.act(g, b)) for g in G.elements}))


def pair_orbits(G, M):
    """Partition of the pairs of M into group orbits, sorted by representative."""
    seen = set()
    orbits = []
    for p in M.pairs:
        if p in seen:
            continue
        orb = pair_orbit(G, p)
        seen.update(orb)
        orbits.append(orb)
    return orbits


def greedy_equivariant_match(C, G, policy="lex"):
    """Grow an equivariant acyclic matching orbit by orbit.

    Candidate pair-orbits are taken from covering edges with unit weight; an
    orbit is added whole when none of its elements is already matched, no
    element repeats inside the orbit, and adding it keeps the matched digraph
    acyclic.  policy='lex' scans candidates in lexicographic order of the
    orbit representative; policy='max-orbit' prefers larger orbits first.
    The result can be empty and always passes validate.
    """
    if policy not in ("lex", "max-orbit"):
        raise EquimorseError(f"unknown policy {policy!r}")
    P = build_cover_graph(C)
    candidates = []
    seen_orbits = set()
    for a, b, w in P.edges:
        if w.try_invert() is None:
            continue
        orb = pair_orbit(G, (a, b))
        if orb in seen_orbits:
            continue
        seen_orbits.add(orb)
        touched = [x for p in orb for x in p]
        if len(set(touched)) != 2 * len(orb):
            continue  # some element repeats inside the orbit
        candidates.append(orb)
    if policy == "max-orbit":
        candidates.sort(key=lambda orb: (-len(orb), orb[0]))
    else:
        candidates.sort(key=lambda orb: orb[0])

    chosen = []
    used = set()
    for orb in candidates:
        touched = {x for p in orb for x in p}
        if touched & used:
            continue
        trial = chosen + list(orb)
        deg = orb[0][0].degree
        if find_alternating_cycle(C, trial, degree_pair=(deg, deg + 1)) is not None:
            continue
        chosen = trial
        used |= touched
    return Matching(chosen)


def small_fiber_map(C, M, G=None):
    """The quotient projection of an acyclic matching, with fibers of size <= 2.

    Builds the quotient poset, checks that its two-element fibers recover M
    exactly, and with a group action also checks that classes are permuted by
    every generator and that distinct classes in one orbit are incomparable.
    Raises AcyclicityError when M is not acyclic.
    """
    P = build_cover_graph(C)
    Q = quotient_poset(P, M)
    if tuple(Q.two_fibers()) != M.pairs:
        raise EquimorseError("internal: two-element fibers do not recover the matching")
    if G is not None:
        index_of = {cls: i for i, cls in enumerate(Q.classes)}
        for name, g in G.generators:
            for cls in Q.classes:
                image = frozenset(G.act(g, x) for x in cls)
                if image not in index_of:
                    raise EquimorseError(
                        f"generator {name} does not permute quotient classes"
                    )
        for i, cls in enumerate(Q.classes):
            orbit_classes = set()
            stack = [i]
            while stack:
                j = stack.pop()
                if j in orbit_classes:
                    continue
                orbit_classes.add(j)
                for _, g in G.generators:
                    img = frozenset(G.act(g, x) for x in Q.classes[j])
                    stack.append(index_of[img])
            for j in orbit_classes:
                for k in orbit_classes:
                    if j != k and Q.leq_class(j, k):
                        raise EquimorseError(
                            "distinct classes in one orbit are comparable: "
                            f"{sorted(Q.classes[j])} <= {sorted(Q.classes[k])}"
                        )
    return Q
