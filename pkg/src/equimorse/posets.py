"""The weighted covering structure of a based chain complex.

A covering edge a < b between basis elements of adjacent degrees exists
exactly when the boundary coefficient k_a(boundary b) is nonzero; that
coefficient is the edge weight.  Reachability along covering edges is the
partial order.  Gluing the pairs of a matching yields the quotient poset
whose antisymmetry certifies that the matching is acyclic.
"""

from collections import deque

from .errors import AcyclicityError, EquimorseError


class CoverGraph:
    """All covering relations (a, b, weight) of a complex, with reachability."""

    __slots__ = ("complex", "edges", "_up", "_down")

    def __init__(self, complex_):
        self.complex = complex_
        edges = []
        up = {b: [] for b in complex_.all_elements()}
        down = {b: [] for b in complex_.all_elements()}
        for n in complex_.degrees():
            if n == complex_.d_min:
                continue
            for b in complex_.basis(n):
                for a, w in sorted(complex_.boundary(b).terms.items()):
                    edges.append((a, b, w))
                    up[a].append((b, w))
                    down[b].append((a, w))
        self.edges = sorted(edges, key=lambda e: (e[0], e[1]))
        self._up = {k: sorted(v) for k, v in up.items()}
        self._down = {k: sorted(v) for k, v in down.items()}

    def nodes(self):
        return tuple(self.complex.all_elements())

    def covers_above(self, a):
        """Elements b one degree up with weight(b > a) nonzero, with weights."""
        return self._up[a]

    def covers_below(self, b):
        return self._down[b]

    def weight(self, a, b):
        """w(b > a), zero element if (a, b) is not a covering edge."""
        for cand, w in self._up[a]:
            if cand == b:
                return w
        return self.complex.ring.zero

    def leq(self, x, y):
        """True iff an ascending chain of covering edges joins x to y, or x == y."""
        if x == y:
            return True
        if x.degree >= y.degree:
            return False
        seen = {x}
        queue = deque([x])
        while queue:
            cur = queue.popleft()
            for b, _ in self._up[cur]:
                if b == y:
                    return True
                if b not in seen and b.degree <= y.degree:
                    seen.add(b)
                    queue.append(b)
        return False


def build_cover_graph(C):
    return CoverGraph(C)


class QuotientPoset:
    """The poset obtained by gluing each matched pair to a single class.

    Classes are frozensets of basis elements (size 1 or 2); the order is the
    transitive-reflexive closure of the relations induced by covering edges.
    Construction fails with AcyclicityError when the closure is not
    antisymmetric, which is exactly the matching not being acyclic.
    """

    __slots__ = ("classes", "class_of", "succ", "_reach")

    def __init__(self, classes, class_of, succ):
        self.classes = classes
        self.class_of = class_of
        self.succ = succ
        reach = {}
        for i in range(len(classes)):
            seen = {i}
            queue = deque([i])
            while queue:
                cur = queue.popleft()
                for j in self.succ.get(cur, ()):
                    if j not in seen:
                        seen.add(j)
                        queue.append(j)
            reach[i] = frozenset(seen)
        self._reach = reach

    def project(self, b):
        """The class index of a basis element."""
        return self.class_of[b]

    def fiber(self, idx):
        return self.classes[idx]

    def two_fibers(self):
        """The size-2 classes, as matched (a, b) pairs sorted by degree."""
        out = []
        for cls in self.classes:
            if len(cls) == 2:
                a, b = sorted(cls)
                out.append((a, b))
        return sorted(out)

    def leq_class(self, i, j):
        return j in self._reach[i]

    def leq(self, x, y):
        """Order between basis elements through the projection."""
        return self.leq_class(self.class_of[x], self.class_of[y])

    def upset(self, i):
        return self._reach[i]


def find_alternating_cycle(C, pairs, degree_pair=None):
    """Shortest directed cycle in the matched digraph, or None.

    Matched covering edges point upward (a -> b), every other covering edge
    points downward (b -> a).  Any directed cycle alternates inside a single
    pair of adjacent degrees; the returned witness is the alternating path
    [a, b, ..., a] starting at a matched pair.  Minimal length, ties broken
    lexicographically.
    """
    pair_set = set(pairs)
    matched_up = {}
    for a, b in pair_set:
        matched_up.setdefault(a, []).append(b)
    if degree_pair is not None:
        lo, hi = degree_pair
    best = None
    for a, b in sorted(pair_set):
        if degree_pair is not None and (a.degree, b.degree) != (lo, hi):
            continue
        # BFS from b back to a through down-edges and other matched up-edges
        prev = {b: None}
        queue = deque([b])
        found = False
        while queue and not found:
            cur = queue.popleft()
            if cur.degree == b.degree:
                steps = [
                    (y, w) for y, w in C.boundary(cur).terms.items()
                    if (y, cur) not in pair_set
                ]
                nxt = sorted(y for y, _ in steps)
            else:
                nxt = sorted(matched_up.get(cur, ()))
            for node in nxt:
                if node == a:
                    prev[node] = cur
                    found = True
                    break
                if node not in prev:
                    prev[node] = cur
                    queue.append(node)
        if found:
            chain = []
            cur = a
            while cur is not None:
                chain.append(cur)
                cur = prev[cur]
            chain.reverse()  # walk order [b, x1, ..., a]
            witness = [a] + chain  # [a, b, x1, ..., a]
            key = (len(witness), tuple(witness))
            if best is None or key < best[0]:
                best = (key, witness)
    return None if best is None else best[1]


def quotient_poset(P, matching):
    """Glue matched pairs of the cover graph into classes and close the order.

    Returns a QuotientPoset, or raises AcyclicityError carrying a shortest
    alternating cycle witness when the matching is not acyclic.  Antisymmetry
    of the quotient closure is the authoritative criterion; the directed
    cycle search in the matched digraph is the fast path, and the two must
    agree.
    """
    pairs = matching.pairs if hasattr(matching, "pairs") else tuple(matching)
    C = P.complex
    matched = {}
    for a, b in pairs:
        for x in (a, b):
            if x in matched:
                raise EquimorseError(f"{x} appears in more than one pair")
        matched[a] = b
        matched[b] = a

    classes = []
    class_of = {}
    for x in C.all_elements():
        if x in class_of:
            continue
        if x in matched:
            cls = frozenset((x, matched[x]))
        else:
            cls = frozenset((x,))
        idx = len(classes)
        classes.append(cls)
        for member in cls:
            class_of[member] = idx

    succ = {}
    for a, b, _ in P.edges:
        i, j = class_of[a], class_of[b]
        if i != j:
            succ.setdefault(i, set()).add(j)
    succ = {k: sorted(v) for k, v in succ.items()}

    cyclic = _has_class_cycle(succ, len(classes))
    witness = find_alternating_cycle(C, pairs)
    if cyclic != (witness is not None):
        raise EquimorseError(
            "internal: quotient antisymmetry and digraph cycle search disagree"
        )
    if cyclic:
        raise AcyclicityError(witness)
    return QuotientPoset(tuple(classes), class_of, succ)


def _has_class_cycle(succ, n_classes):
    """Directed cycle detection on the induced class digraph."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = [WHITE] * n_classes
    for start in range(n_classes):
        if color[start] != WHITE:
            continue
        stack = [(start, iter(succ.get(start, ())))]
        color[start] = GRAY
        while stack:
            node, it = stack[-1]
            advanced = False
            for j in it:
                if color[j] == GRAY:
                    return True
                if color[j] == WHITE:
                    color[j] = GRAY
                    stack.append((j, iter(succ.get(j, ()))))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
    return False


def check_orbit_incomparability(P, G):
    """Violations of 'distinct same-orbit elements are incomparable' in P."""
    violations = []
    for orb in G.orbits():
        members = sorted(orb.members)
        for x in members:
            for y in members:
                if x != y and P.leq(x, y):
                    violations.append((x, y))
    return violations


# -- DOT export ----------------------------------------------------------------


def _dot_id(b):
    return f"\"{b.degree}:{b.label}\""


def cover_graph_dot(P):
    lines = ["digraph cover_graph {", "  rankdir=BT;"]
    for b in P.nodes():
        lines.append(f"  {_dot_id(b)} [label=\"{b.label}\"];")
    for a, b, w in P.edges:
        lines.append(f"  {_dot_id(a)} -> {_dot_id(b)} [label=\"{w.value}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quotient_dot(Q):
    lines = ["digraph quotient_poset {", "  rankdir=BT;"]
    for i, cls in enumerate(Q.classes):
        name = "{" + ",".join(e.label for e in sorted(cls)) + "}"
        lines.append(f"  q{i} [label=\"{name}\"];")
    for i in sorted(Q.succ):
        for j in Q.succ[i]:
            lines.append(f"  q{i} -> q{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
