"""Invariant de Rham Betti numbers of torus quotients T^k / W.

W is a finite group of integer matrices acting on H^1(T^k) = Q^k; the
invariant part of H^p = Lambda^p Q^k has dimension equal to the exact
character average (1/|W|) sum_w tr Lambda^p(w).  The traces are read off
characteristic polynomials, so the whole computation is integer
arithmetic.  Component lists model disjoint unions of such quotients;
their even/odd Betti totals are the quantities matched against periodic
homology.
"""

import warnings
from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import (NonIntegerAverage, OrderCapExceeded, ValidationError)
from .linalg import QQ, SparseMatrix, rank

DEFAULT_ORDER_CAP = 10080


@dataclass(frozen=True)
class TorusComponent:
    """A torus T^rank together with integer matrix generators of W."""

    rank: int
    generators: tuple
    label: str = ""

    def __post_init__(self):
        if self.rank < 1:
            raise ValidationError("component rank must be at least 1")
        gens = []
        for g in self.generators:
            rows = tuple(tuple(x for x in row) for row in g)
            if len(rows) != self.rank or \
                    any(len(row) != self.rank for row in rows):
                raise ValidationError(
                    f"generator is not a {self.rank}x{self.rank} matrix")
            if any(not isinstance(x, int) or isinstance(x, bool)
                   for row in rows for x in row):
                raise ValidationError("generator entries must be integers")
            gens.append(rows)
        object.__setattr__(self, "generators", tuple(gens))


def _identity(k):
    return tuple(tuple(1 if i == j else 0 for j in range(k))
                 for i in range(k))


def _mat_mul(a, b):
    k = len(a)
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(k))
                       for j in range(k)) for i in range(k))


def _charpoly(w):
    """Coefficients (c_0, ..., c_k) of det(tI - w), c_p at power t^(k-p).

    Computed by the trace recursion M_1 = w, c_p = -tr(M_p)/p,
    M_{p+1} = w (M_p + c_p I); all divisions are exact and the
    coefficients of an integer matrix are integers.
    """
    k = len(w)
    coeffs = [1]
    m = [[QQ(x) for x in row] for row in w]
    for p in range(1, k + 1):
        c = -sum(m[i][i] for i in range(k)) / p
        if c.denominator != 1:
            raise ValidationError("characteristic coefficient not integral")
        coeffs.append(int(c))
        if p == k:
            break
        shifted = [[m[i][j] + (c if i == j else 0) for j in range(k)]
                   for i in range(k)]
        m = [[sum(QQ(w[i][t]) * shifted[t][j] for t in range(k))
              for j in range(k)] for i in range(k)]
    return tuple(coeffs)


def _det(w):
    cs = _charpoly(w)
    # det(tI - w) at t = 0 is (-1)^k det(w)
    return cs[-1] if len(w) % 2 == 0 else -cs[-1]


def exterior_trace(w, p):
    """tr of the induced action on Lambda^p: the p-th elementary symmetric
    function of the eigenvalues, equal to (-1)^p times the coefficient of
    t^(k-p) in det(tI - w)."""
    if p < 0:
        raise ValidationError("exterior power degree must be nonnegative")
    k = len(w)
    if p > k:
        return 0
    c = _charpoly(w)[p]
    return c if p % 2 == 0 else -c


def enumerate_group(c, order_cap=DEFAULT_ORDER_CAP):
    """The full finite group generated by the component's matrices.

    Breadth-first closure under multiplication, returned in sorted order
    (tuples compare entrywise, so the ordering is canonical).  Exceeding
    order_cap raises OrderCapExceeded; a generator of infinite order is
    caught the same way.
    """
    for g in c.generators:
        if _det(g) not in (1, -1):
            raise ValidationError(
                "generator is not invertible over the integers")
    ident = _identity(c.rank)
    group = {ident}
    frontier = [ident]
    gens = list(c.generators)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _mat_mul(x, g)
                if y not in group:
                    group.add(y)
                    if len(group) > order_cap:
                        raise OrderCapExceeded(
                            f"group closure exceeded {order_cap} elements")
                    nxt.append(y)
        frontier = nxt
    return sorted(group)


def _exterior_power_matrix(w, p):
    """The C(k,p) x C(k,p) matrix of p x p minors acting on Lambda^p.

    Entry (S, T) is det of the submatrix with rows S and columns T; the
    determinants are expanded over permutations, deliberately avoiding the
    characteristic-polynomial route so the two disagree if either is wrong.
    """
    k = len(w)
    subsets = list(combinations(range(k), p))
    entries = {}
    for si, s in enumerate(subsets):
        for ti, t in enumerate(subsets):
            val = 0
            for perm in permutations(range(p)):
                sign = 1
                for i in range(p):
                    for j in range(i + 1, p):
                        if perm[i] > perm[j]:
                            sign = -sign
                term = sign
                for i in range(p):
                    term *= w[s[i]][t[perm[i]]]
                val += term
            if val:
                entries[(si, ti)] = QQ(val)
    n = len(subsets)
    return SparseMatrix(n, n, ((i, j, v) for (i, j), v in entries.items()))


def averaged_projector_rank(elements, p):
    """Rank of (1/|W|) sum_w Lambda^p(w): the invariant dimension.

    Independent of the character-average route; used as a cross-check.
    """
    k = len(elements[0])
    n = 1
    for i in range(p):
        n = n * (k - i) // (i + 1)
    total = SparseMatrix(n, n, ())
    for w in elements:
        total = total + _exterior_power_matrix(w, p)
    return rank(total)


def invariant_betti(c, order_cap=DEFAULT_ORDER_CAP, cross_check=False):
    """Betti numbers (beta_0, ..., beta_k) of the invariant forms on T^k/W.

    beta_p is the character average of tr Lambda^p over the group; a
    non-integer or negative average raises NonIntegerAverage since it is
    impossible for a genuine finite group action.  cross_check additionally
    compares every degree against the averaged-projector rank (supported
    for rank <= 6; larger ranks skip the check since the exterior power
    matrices grow combinatorially).
    """
    elements = enumerate_group(c, order_cap=order_cap)
    order = len(elements)
    polys = [_charpoly(w) for w in elements]
    betti = []
    for p in range(c.rank + 1):
        sign = 1 if p % 2 == 0 else -1
        avg = QQ(sign * sum(cp[p] for cp in polys)) / order
        if avg.denominator != 1 or avg < 0:
            raise NonIntegerAverage(
                f"degree {p} average {avg} is not a nonnegative integer")
        betti.append(int(avg))
    if cross_check and c.rank <= 6:
        for p in range(c.rank + 1):
            got = averaged_projector_rank(elements, p)
            if got != betti[p]:
                raise ValidationError(
                    f"projector rank {got} disagrees with character "
                    f"average {betti[p]} at degree {p}")
    return tuple(betti)


@dataclass(frozen=True)
class BettiTable:
    """Per-component Betti rows and their even/odd totals."""

    labels: tuple
    rows: tuple
    even: int
    odd: int


def even_odd_totals(components, gl_rank=None, order_cap=DEFAULT_ORDER_CAP,
                    cross_check=False):
    """Sum even- and odd-degree invariant Betti numbers across components.

    A component list modeling a reductive group of rank n should have all
    torus ranks at most n; passing gl_rank checks that bound and warns
    (does not fail) on violations.
    """
    if gl_rank is not None:
        for c in components:
            if c.rank > gl_rank:
                warnings.warn(
                    f"component {c.label!r} has rank {c.rank} > {gl_rank}")
    rows = []
    labels = []
    for c in components:
        rows.append(invariant_betti(c, order_cap=order_cap,
                                    cross_check=cross_check))
        labels.append(c.label)
    even = sum(row[p] for row in rows for p in range(0, len(row), 2))
    odd = sum(row[p] for row in rows for p in range(1, len(row), 2))
    return BettiTable(tuple(labels), tuple(rows), even, odd)
