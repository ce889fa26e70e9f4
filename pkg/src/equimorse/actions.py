"""Finite group actions on a chain complex by basis-label permutations.

A group is given by named generator permutations (degree-preserving label
bijections); the full element set is the closure of the generators under
composition.  Actions are strict permutations, never signed.
"""

import random
from typing import NamedTuple

from .chains import BasisElement, Chain
from .errors import ClosureOverflowError, EquimorseError, GeneratorError

DEFAULT_CLOSURE_CAP = 10000


class Orbit(NamedTuple):
    representative: BasisElement
    members: frozenset


class GroupAction:
    """Closure of generator permutations acting on a complex's basis.

    Elements are stored as index permutations over the sorted basis; the
    element set always contains the identity and is closed under composition.
    """

    __slots__ = ("complex", "universe", "_index", "generators", "elements", "words")

    def __init__(self, complex_, generators, cap=DEFAULT_CLOSURE_CAP):
        self.complex = complex_
        self.universe = tuple(complex_.all_elements())
        self._index = {b: i for i, b in enumerate(self.universe)}
        self.generators = [
            (name, self._perm_from_mapping(name, mapping))
            for name, mapping in generators
        ]
        self.elements, self.words = self._close(cap)

    def _perm_from_mapping(self, name, mapping):
        """mapping: {BasisElement: BasisElement}, identity omissions allowed."""
        images = list(range(len(self.universe)))
        for src, tgt in mapping.items():
            if src not in self._index:
                raise GeneratorError(f"generator {name!r} moves unknown {src}")
            if tgt not in self._index:
                raise GeneratorError(f"generator {name!r} maps onto unknown {tgt}")
            if src.degree != tgt.degree:
                raise GeneratorError(
                    f"generator {name!r} maps degree {src.degree} to {tgt.degree}"
                )
            images[self._index[src]] = self._index[tgt]
        if sorted(images) != list(range(len(self.universe))):
            raise GeneratorError(f"generator {name!r} is not a bijection")
        return tuple(images)

    def _close(self, cap):
        n = len(self.universe)
        identity = tuple(range(n))
        words = {identity: "e"}
        frontier = [identity]
        while frontier:
            nxt = []
            for name, g in self.generators:
                for h in frontier:
                    gh = tuple(g[i] for i in h)
                    if gh not in words:
                        words[gh] = name if words[h] == "e" else name + "*" + words[h]
                        nxt.append(gh)
                        if len(words) > cap:
                            raise ClosureOverflowError(
                                f"group closure exceeded cap of {cap} elements"
                            )
            frontier = nxt
        elements = sorted(words)
        return elements, words

    def __len__(self):
        return len(self.elements)

    @property
    def identity(self):
        return tuple(range(len(self.universe)))

    def word(self, g):
        return self.words[g]

    def act(self, g, b):
        return self.universe[g[self._index[b]]]

    def act_chain(self, g, x):
        return Chain(x.degree, {self.act(g, b): c for b, c in x.terms.items()})

    def generator_maps(self):
        """Named {BasisElement: BasisElement} dicts, for rebuilding derived actions."""
        out = []
        for name, g in self.generators:
            out.append(
                (name, {b: self.act(g, b) for b in self.universe if self.act(g, b) != b})
            )
        return out

    # -- orbits ----------------------------------------------------------------

    def orbit(self, b):
        if b not in self._index:
            raise EquimorseError(f"{b} is not a basis element of the acted complex")
        members = {self.act(g, b) for g in self.elements}
        return Orbit(min(members), frozenset(members))

    def orbits(self, degree=None):
        """Orbit partition, ordered by representative; optionally one degree only."""
        out = []
        seen = set()
        for b in self.universe:
            if b in seen or (degree is not None and b.degree != degree):
                continue
            orb = self.orbit(b)
            seen |= orb.members
            out.append(orb)
        return out

    # -- equivariance ------------------------------------------------------------

    def verify_g_map(self, spot_checks=5, seed=0):
        """Report of (element word, basis b) where boundary(g b) != g boundary(b).

        Generators are checked exhaustively; a few random closure elements are
        spot-checked on top (the homomorphism property covers the rest).
        """
        C = self.complex
        checks = list(self.generators)
        rng = random.Random(seed)
        pool = [g for g in self.elements if g != self.identity]
        for g in rng.sample(pool, min(spot_checks, len(pool))):
            checks.append((self.words[g], g))
        violations = []
        for name, g in checks:
            for b in self.universe:
                if b.degree == C.d_min:
                    continue
                if C.boundary(self.act(g, b)) != self.act_chain(g, C.boundary(b)):
                    violations.append((name, b))
        return violations


def close_generators(C, generators, cap=DEFAULT_CLOSURE_CAP):
    """Build a GroupAction from named generator label maps.

    generators: list of (name, {degree: {label: label}}).  Labels missing from
    a map are fixed.  Raises GeneratorError / ClosureOverflowError.
    """
    resolved = []
    for name, per_degree in generators:
        mapping = {}
        for degree, label_map in per_degree.items():
            for src_label, tgt_label in label_map.items():
                src = C.element(degree, src_label)
                tgt = C.element(degree, tgt_label)
                mapping[src] = tgt
        resolved.append((name, mapping))
    return GroupAction(C, resolved, cap=cap)


def trivial_action(C):
    return GroupAction(C, [])


def restrict_action(G, S):
    """Restrict an action to a subcomplex S whose basis is closed under it."""
    gens = []
    for name, g in G.generators:
        mapping = {}
        for b in S.all_elements():
            img = G.act(g, b)
            if not S.has_element(img):
                raise EquimorseError(
                    f"subcomplex basis not closed under {name!r}: {b} -> {img}"
                )
            if img != b:
                mapping[b] = img
        gens.append((name, mapping))
    return GroupAction(S, gens)


def verify_g_map(C, G):
    """Module-level convenience mirroring GroupAction.verify_g_map."""
    if G.complex != C:
        raise EquimorseError("action is not defined on this complex")
    return G.verify_g_map()
