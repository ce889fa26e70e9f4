"""Free chain complexes with labeled bases and sparse boundary columns.

A ChainComplex stores, per degree, an ordered basis of labeled generators and
a sparse boundary column for each generator.  All deterministic orderings are
lexicographic on (degree, label).  Complexes are immutable after construction;
every operation returns a new value.
"""

from fractions import Fraction
from typing import NamedTuple

from .errors import (
    DegreeMismatchError,
    EquimorseError,
    NotClosedUnderBoundaryError,
    RingMismatchError,
    SingularMatrixError,
)
from .rings import INT, MOD, RAT, RingElem


class BasisElement(NamedTuple):
    degree: int
    label: str


class Chain:
    """A formal sum of basis elements of one degree; zero terms are dropped."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree, terms):
        clean = {}
        for b, coeff in terms.items():
            if b.degree != degree:
                raise DegreeMismatchError(f"{b} in a degree-{degree} chain")
            if coeff:
                clean[b] = coeff
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Chain is immutable")

    def is_zero(self):
        return not self.terms

    def coefficient(self, b):
        """k_b of this chain: the coefficient of b, zero if absent."""
        if b.degree != self.degree:
            raise DegreeMismatchError(f"{b} vs degree-{self.degree} chain")
        return self.terms.get(b)

    def __add__(self, other):
        if other.degree != self.degree:
            raise DegreeMismatchError("adding chains of different degrees")
        terms = dict(self.terms)
        for b, c in other.terms.items():
            cur = terms.get(b)
            terms[b] = c if cur is None else cur + c
        return Chain(self.degree, terms)

    def __neg__(self):
        return Chain(self.degree, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        if not coeff:
            return Chain(self.degree, {})
        return Chain(self.degree, {b: coeff * c for b, c in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, Chain)
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"Chain({self.degree}, 0)"
        parts = " + ".join(
            f"{c.value}*{b.label}" for b, c in sorted(self.terms.items())
        )
        return f"Chain({self.degree}, {parts})"

    def support(self):
        return sorted(self.terms)


class ChainComplex:
    """Finitely generated free chain complex over an exact coefficient ring."""

    __slots__ = ("ring", "d_min", "d_max", "_basis", "_by_label", "_boundary")

    def __init__(self, ring, basis, boundary=None, degrees=None):
        """basis: {degree: iterable of labels}; boundary: {degree: {label: {label': coeff}}}.

        Coefficients may be raw ints/Fractions or RingElem values; they are
        canonicalized into `ring`.  Degrees outside the stored range are zero.
        """
        self.ring = ring
        per_degree = {}
        by_label = {}
        for n, labels in basis.items():
            labels = list(labels)
            if len(set(labels)) != len(labels):
                raise EquimorseError(f"duplicate labels in degree {n}")
            elems = tuple(sorted(BasisElement(n, lab) for lab in labels))
            if elems:
                per_degree[n] = elems
                by_label[n] = {e.label: e for e in elems}
        if degrees is not None:
            d_min, d_max = degrees
        elif per_degree:
            d_min, d_max = min(per_degree), max(per_degree)
        else:
            d_min, d_max = 0, 0
        if d_min > d_max:
            raise EquimorseError("empty degree range")
        for n in per_degree:
            if not d_min <= n <= d_max:
                raise EquimorseError(f"basis in degree {n} outside [{d_min}, {d_max}]")
        self.d_min, self.d_max = d_min, d_max
        self._basis = per_degree
        self._by_label = by_label

        cols = {}
        boundary = boundary or {}
        for n, by_src in boundary.items():
            for src_label, entries in by_src.items():
                src = self.element(n, src_label)
                if n == self.d_min:
                    if any(self._coerce(c) for c in entries.values()):
                        raise EquimorseError(
                            f"degree-{n} element {src_label} is at the bottom "
                            "of the range but has a nonzero boundary"
                        )
                    continue
                terms = {}
                for tgt_label, coeff in entries.items():
                    tgt = self.element(n - 1, tgt_label)
                    terms[tgt] = self._coerce(coeff)
                cols[src] = Chain(n - 1, terms)
        self._boundary = cols

    def _coerce(self, coeff):
        if isinstance(coeff, RingElem):
            if coeff.ring != self.ring:
                raise RingMismatchError(f"{coeff!r} not over {self.ring!r}")
            return coeff
        return self.ring.elem(coeff)

    # -- structure queries ----------------------------------------------------

    def degrees(self):
        return range(self.d_min, self.d_max + 1)

    def basis(self, n):
        return self._basis.get(n, ())

    def rank(self, n):
        return len(self.basis(n))

    def ranks(self):
        return {n: self.rank(n) for n in self.degrees()}

    def total_rank(self):
        return sum(len(els) for els in self._basis.values())

    def euler_characteristic(self):
        return sum((-1) ** n * self.rank(n) for n in self.degrees())

    def element(self, degree, label):
        try:
            return self._by_label[degree][label]
        except KeyError:
            raise EquimorseError(f"no basis element {label!r} in degree {degree}")

    def find(self, degree, label):
        """Like element(), but returns None instead of raising."""
        return self._by_label.get(degree, {}).get(label)

    def has_element(self, b):
        return self._by_label.get(b.degree, {}).get(b.label) is not None

    def all_elements(self):
        for n in sorted(self._basis):
            yield from self._basis[n]

    def zero_chain(self, degree):
        return Chain(degree, {})

    def chain(self, degree, mapping):
        """Build a chain from {label: coeff} in the given degree."""
        return Chain(
            degree,
            {self.element(degree, lab): self._coerce(c) for lab, c in mapping.items()},
        )

    # -- boundary -------------------------------------------------------------

    def boundary(self, b):
        if not self.has_element(b):
            raise EquimorseError(f"{b} is not a basis element of this complex")
        col = self._boundary.get(b)
        if col is None:
            return Chain(b.degree - 1, {})
        return col

    def boundary_of_chain(self, x):
        acc = {}
        for b, coeff in x.terms.items():
            for t, c in self.boundary(b).terms.items():
                cur = acc.get(t)
                acc[t] = coeff * c if cur is None else cur + coeff * c
        return Chain(x.degree - 1, acc)

    def coefficient(self, a, x):
        """k_a(x): the coefficient of basis element a inside the chain x."""
        c = x.coefficient(a)
        return self.ring.zero if c is None else c

    def check(self):
        """Chain-complex axiom report: all (n, b) with boundary(boundary(b)) != 0."""
        bad = []
        for n in self.degrees():
            for b in self.basis(n):
                if n - 1 <= self.d_min:
                    continue
                if not self.boundary_of_chain(self.boundary(b)).is_zero():
                    bad.append((n, b))
        return bad

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        if self.ring != other.ring or (self.d_min, self.d_max) != (other.d_min, other.d_max):
            return False
        if self._basis != other._basis:
            return False
        for b in self.all_elements():
            if b.degree > self.d_min and self.boundary(b) != other.boundary(b):
                return False
        return True

    def __repr__(self):
        ranks = ", ".join(f"{n}:{self.rank(n)}" for n in self.degrees())
        return f"ChainComplex({self.ring!r}, ranks {{{ranks}}})"


class GradedMap:
    """A degree-preserving linear map between complexes, stored column-wise.

    columns maps each source basis element to its image chain in the target;
    missing columns are zero.
    """

    __slots__ = ("source", "target", "columns")

    def __init__(self, source, target, columns):
        for b, img in columns.items():
            if img.degree != b.degree:
                raise DegreeMismatchError(f"column {b} has degree {img.degree}")
        self.source = source
        self.target = target
        self.columns = dict(columns)

    @classmethod
    def identity(cls, complex_):
        return cls(
            complex_,
            complex_,
            {b: Chain(b.degree, {b: complex_.ring.one}) for b in complex_.all_elements()},
        )

    def column(self, b):
        col = self.columns.get(b)
        if col is None:
            return Chain(b.degree, {})
        return col

    def apply(self, x):
        acc = {}
        for b, coeff in x.terms.items():
            for t, c in self.column(b).terms.items():
                cur = acc.get(t)
                acc[t] = coeff * c if cur is None else cur + coeff * c
        return Chain(x.degree, acc)

    def compose(self, other):
        """self after other."""
        if other.target is not self.source and other.target != self.source:
            raise EquimorseError("composition targets do not line up")
        return GradedMap(
            other.source,
            self.target,
            {b: self.apply(other.column(b)) for b in other.source.all_elements()},
        )

    def is_identity(self):
        if self.source != self.target:
            return False
        one = self.source.ring.one
        for b in self.source.all_elements():
            if self.column(b).terms != {b: one}:
                return False
        return True

    def is_chain_map(self):
        """True iff boundary(f(b)) == f(boundary(b)) for every source basis b."""
        for b in self.source.all_elements():
            if b.degree > self.target.d_min:
                lhs = self.target.boundary_of_chain(self.column(b))
            else:
                lhs = self.target.zero_chain(b.degree - 1)
            if b.degree > self.source.d_min:
                rhs = self.apply(self.source.boundary(b))
            else:
                rhs = self.source.zero_chain(b.degree - 1)
            if lhs != rhs:
                return False
        return True

    def matrix(self, n):
        """Dense degree-n component: rows = target basis, columns = source basis."""
        rows = self.target.basis(n)
        cols = self.source.basis(n)
        ring = self.target.ring
        idx = {r: i for i, r in enumerate(rows)}
        A = [[ring.zero] * len(cols) for _ in rows]
        for j, c in enumerate(cols):
            for b, coeff in self.column(c).terms.items():
                A[idx[b]][j] = coeff
        return A

    def inverse(self):
        """Exact inverse map, degree-wise.  Raises SingularMatrixError."""
        ring = self.target.ring
        inv_columns = {}
        degrees = set(self.source.degrees()) | set(self.target.degrees())
        for n in sorted(degrees):
            rows = self.target.basis(n)
            cols = self.source.basis(n)
            if len(rows) != len(cols):
                raise SingularMatrixError(
                    f"degree-{n} component is {len(rows)}x{len(cols)}, not square"
                )
            if not rows:
                continue
            B = invert_matrix(ring, self.matrix(n))
            for j, r in enumerate(rows):
                inv_columns[r] = Chain(
                    n, {cols[i]: B[i][j] for i in range(len(cols)) if B[i][j]}
                )
        return GradedMap(self.target, self.source, inv_columns)


# -- exact dense matrix kernel (shared by chain machinery, not by homology) ---


def _fraction_gauss(A):
    """Gauss-Jordan over the rationals.  Returns (det, inverse) or (0, None)."""
    n = len(A)
    M = [
        [Fraction(v) for v in row] + [Fraction(int(i == r)) for i in range(n)]
        for r, row in enumerate(A)
    ]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return Fraction(0), None
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        scale = 1 / M[col][col]
        M[col] = [v * scale for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return det, [row[n:] for row in M]


def invert_matrix(ring, A):
    """Invert a square RingElem matrix exactly, or raise SingularMatrixError.

    Over the integers and Z/m the matrix is lifted to the rationals; the
    inverse exists in the original ring iff the determinant is a unit there.
    """
    n = len(A)
    if n == 0:
        return []
    raw = [[entry.value for entry in row] for row in A]
    det, inv = _fraction_gauss(raw)
    if ring.kind == RAT:
        if inv is None:
            raise SingularMatrixError("matrix is singular over the rationals")
        return [[ring.elem(v) for v in row] for row in inv]
    if ring.kind == INT:
        if inv is None or det not in (1, -1):
            raise SingularMatrixError(
                f"determinant {det} is not a unit of the integers"
            )
        return [[ring.elem(v) for v in row] for row in inv]
    m = ring.modulus
    if inv is None:
        raise SingularMatrixError(f"determinant 0 is not a unit mod {m}")
    det_int = int(det)
    unit = ring.elem(det_int).try_invert()
    if unit is None:
        raise SingularMatrixError(f"determinant {det_int % m} is not a unit mod {m}")
    out = []
    for row in inv:
        out_row = []
        for v in row:
            adj = v * det  # adjugate entry, always integral
            if adj.denominator != 1:
                raise EquimorseError("adjugate entry not integral")
            out_row.append(ring.elem(adj.numerator) * unit)
        out.append(out_row)
    return out


def mat_mul(ring, A, B):
    if not A or not B:
        return []
    zero = ring.zero
    cols_b = len(B[0])
    return [
        [
            sum((A[i][k] * B[k][j] for k in range(len(B)) if A[i][k]), zero)
            for j in range(cols_b)
        ]
        for i in range(len(A))
    ]


def is_identity_matrix(ring, A):
    for i, row in enumerate(A):
        for j, v in enumerate(row):
            want = ring.one if i == j else ring.zero
            if v != want:
                return False
    return True


# -- complex-level operations -------------------------------------------------


def check_complex(C):
    """Report of chain-axiom violations; empty means valid."""
    return C.check()


def apply_automorphism(C, f, f_inverse=None, relabel=None):
    """Rebase C along a degree-wise invertible map f: C -> C.

    The new complex has basis {f(b)}, with b's label kept unless `relabel`
    maps it elsewhere, and boundary columns re-expressed in the new basis
    (conjugation by f).  If `f_inverse` is given it is verified against f
    instead of being recomputed by elimination.
    """
    if f.source != C or f.target != C:
        raise EquimorseError("automorphism must go from C to C")
    if f_inverse is None:
        f_inv = f.inverse()
    else:
        f_inv = f_inverse
        one = C.ring.one
        for b in C.all_elements():
            if f_inv.apply(f.column(b)).terms != {b: one}:
                raise SingularMatrixError(f"supplied inverse fails at {b}")
            if f.apply(f_inv.column(b)).terms != {b: one}:
                raise SingularMatrixError(f"supplied inverse fails at {b}")

    relabel = relabel or {}

    def new_label(b):
        return relabel.get(b, b.label)

    basis = {n: [new_label(b) for b in C.basis(n)] for n in C.degrees() if C.basis(n)}
    boundary = {}
    for n in C.degrees():
        if n == C.d_min:
            continue
        per = {}
        for b in C.basis(n):
            img = C.boundary_of_chain(f.column(b))
            col = f_inv.apply(img)
            per[new_label(b)] = {
                new_label(t): coeff for t, coeff in col.terms.items()
            }
        if per:
            boundary[n] = per
    return ChainComplex(C.ring, basis, boundary, degrees=(C.d_min, C.d_max))


def direct_sum(C1, C2, prefixes=("A|", "B|")):
    """Block direct sum; labels get the given prefixes to stay unique."""
    return direct_sum_many([C1, C2], prefixes=list(prefixes))


def direct_sum_many(complexes, prefixes=None):
    if not complexes:
        raise EquimorseError("direct sum of nothing")
    ring = complexes[0].ring
    for C in complexes[1:]:
        if C.ring != ring:
            raise RingMismatchError("direct summands over different rings")
    if prefixes is None:
        prefixes = [f"S{i}|" for i in range(len(complexes))]
    if len(prefixes) != len(complexes):
        raise EquimorseError("one prefix per summand")
    d_min = min(C.d_min for C in complexes)
    d_max = max(C.d_max for C in complexes)
    basis = {}
    boundary = {}
    for C, pre in zip(complexes, prefixes):
        for n in C.degrees():
            for b in C.basis(n):
                basis.setdefault(n, []).append(pre + b.label)
                if n > C.d_min:
                    col = C.boundary(b)
                    boundary.setdefault(n, {})[pre + b.label] = {
                        pre + t.label: coeff for t, coeff in col.terms.items()
                    }
    return ChainComplex(ring, basis, boundary, degrees=(d_min, d_max))


def span_subcomplex(C, subset):
    """Restrict C to a basis subset; the subset must be closed under boundary.

    subset: {degree: iterable of labels or BasisElements}.
    """
    keep = set()
    for n, items in subset.items():
        for item in items:
            b = item if isinstance(item, BasisElement) else C.element(n, item)
            if not C.has_element(b):
                raise EquimorseError(f"{b} is not in the complex")
            keep.add(b)
    for b in sorted(keep):
        if b.degree == C.d_min:
            continue
        for t in C.boundary(b).terms:
            if t not in keep:
                raise NotClosedUnderBoundaryError(
                    b, f"boundary of {b.label} hits unselected {t.label}"
                )
    basis = {}
    boundary = {}
    for b in sorted(keep):
        basis.setdefault(b.degree, []).append(b.label)
        if b.degree > C.d_min:
            col = C.boundary(b)
            if col.terms:
                boundary.setdefault(b.degree, {})[b.label] = {
                    t.label: coeff for t, coeff in col.terms.items()
                }
    if not basis:
        return ChainComplex(C.ring, {}, {}, degrees=(C.d_min, C.d_max))
    return ChainComplex(C.ring, basis, boundary, degrees=(C.d_min, C.d_max))
