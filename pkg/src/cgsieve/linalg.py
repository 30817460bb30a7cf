"""
Exact integer linear algebra on relation matrices.

HNF here is row-style and upper triangular: the rows of the result span the
same lattice as the input rows, pivots are positive and every entry above a
pivot lies in [0, pivot).  The routines are written for the sizes met at
desk scale (a few hundred rows, tens of columns) with Python integers.
"""

import json
import logging
from dataclasses import dataclass, field
from math import gcd

from .errors import NoSolution, RankDeficient
from .lattice import babai_reduce, lll

log = logging.getLogger(__name__)


def xgcd(a, b):
    """Returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def _axpy(y, q, x):
    # y - q*x for dense lists
    return [a - q * b for a, b in zip(y, x)]


def _sparse_comb(a, u, b, v):
    """a*u + b*v for sparse dict vectors."""
    out = {}
    if a:
        for k, c in u.items():
            out[k] = a * c
    if b:
        for k, c in v.items():
            s = out.get(k, 0) + b * c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


class IncrementalHNF:
    """
    Row HNF maintained under insertion of new rows.

    With ``track=True`` every pivot row carries the integer combination of
    inserted rows producing it, and rows that reduce to zero are kept as a
    basis of the left kernel.
    """

    def __init__(self, ncols, track=False):
        self.ncols = ncols
        self.track = track
        self.pivots = {}  # column -> row
        self.trans = {}  # column -> sparse combination
        self.kernel = []
        self.count = 0
        self._bits = 0

    @property
    def rank(self):
        return len(self.pivots)

    def full_rank(self):
        return self.rank == self.ncols

    def det(self):
        """Product of pivots: the lattice index when full rank."""
        d = 1
        for c, row in self.pivots.items():
            d *= row[c]
        return d

    def insert(self, v):
        """Insert a row; returns True when the lattice changed."""
        v = list(v)
        tv = {self.count: 1} if self.track else None
        self.count += 1
        changed = False
        for c in range(self.ncols):
            b = v[c]
            if b == 0:
                continue
            P = self.pivots.get(c)
            if P is None:
                if b < 0:
                    v = [-x for x in v]
                    if self.track:
                        tv = {k: -x for k, x in tv.items()}
                self.pivots[c] = v
                if self.track:
                    self.trans[c] = tv
                self._grow(v)
                return True
            a = P[c]
            if b % a == 0:
                q = b // a
                v = _axpy(v, q, P)
                if self.track:
                    tv = _sparse_comb(1, tv, -q, self.trans[c])
                continue
            g, s, t = xgcd(a, b)
            ag, bg = a // g, b // g
            newP = [s * x + t * y for x, y in zip(P, v)]
            v = [ag * y - bg * x for x, y in zip(P, v)]
            if self.track:
                tP = self.trans[c]
                self.trans[c] = _sparse_comb(s, tP, t, tv)
                tv = _sparse_comb(ag, tv, -bg, tP)
            self.pivots[c] = newP
            self._grow(newP)
            changed = True
        if self.track:
            self.kernel.append(tv)
        return changed

    def _grow(self, row):
        bits = max(abs(x) for x in row).bit_length()
        if bits > self._bits:
            self._bits = bits
        if self._bits > 256 + 4 * self.ncols:
            self.reduce()

    def reduce(self):
        """Reduce entries above pivots into [0, pivot)."""
        cols = sorted(self.pivots)
        for i, ci in enumerate(cols):
            Pi = self.pivots[ci]
            p = Pi[ci]
            for cj in cols[:i]:
                Pj = self.pivots[cj]
                q = Pj[ci] // p
                if q:
                    self.pivots[cj] = _axpy(Pj, q, Pi)
                    if self.track:
                        self.trans[cj] = _sparse_comb(1, self.trans[cj], -q, self.trans[ci])
        self._bits = max(
            (max(abs(x) for x in r).bit_length() for r in self.pivots.values()), default=0
        )

    def matrix(self):
        self.reduce()
        return [list(self.pivots[c]) for c in sorted(self.pivots)]

    def transforms(self, nrows):
        self.reduce()
        out = []
        for c in sorted(self.pivots):
            u = [0] * nrows
            for k, x in self.trans[c].items():
                u[k] = x
            out.append(u)
        return out

    def kernel_basis(self, nrows):
        out = []
        for kv in self.kernel:
            u = [0] * nrows
            for k, x in kv.items():
                u[k] = x
            out.append(u)
        return out


def _ncols(M):
    if not M:
        raise ValueError("matrix needs at least one row")
    return len(M[0])


def hnf(M):
    """Row Hermite normal form; zero rows are dropped."""
    h = IncrementalHNF(_ncols(M))
    for row in M:
        h.insert(row)
    return h.matrix()


def hnf_with_transform(M):
    """
    Returns (H, U, K): U*M = H with H in HNF, and K a basis of the integer
    left kernel {x : x*M = 0}.
    """
    h = IncrementalHNF(_ncols(M), track=True)
    for row in M:
        h.insert(row)
    return h.matrix(), h.transforms(len(M)), h.kernel_basis(len(M))


def pivot_columns(H):
    cols = []
    for row in H:
        cols.append(next(i for i, x in enumerate(row) if x))
    return cols


def transpose(M):
    return [list(r) for r in zip(*M)]


def _is_diagonal(A):
    return all(A[i][j] == 0 for i in range(len(A)) for j in range(len(A[0])) if i != j)


def snf(M):
    """
    Invariant factors d_1 | d_2 | ... of the lattice spanned by the rows of M,
    one per unit of rank (so leading ones are included).
    """
    if not M or not any(any(r) for r in M):
        raise ValueError("snf of the zero matrix")
    A = hnf(M)
    while not _is_diagonal(A):
        A = hnf(transpose(A))
        if _is_diagonal(A):
            break
        A = hnf(transpose(A))
    d = [abs(A[i][i]) for i in range(min(len(A), len(A[0])))]
    d = [x for x in d if x]
    # enforce the divisibility chain
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return d


# -------------------------------------------------------- class groups


@dataclass
class RelationMatrix:
    rows: list
    ncols: int
    pruned_columns: tuple = ()

    @property
    def active_columns(self):
        pruned = set(self.pruned_columns)
        return [j for j in range(self.ncols) if j not in pruned]

    def projected(self):
        """Rows restricted to active columns; rows touching pruned columns are skipped."""
        act = self.active_columns
        pruned = self.pruned_columns
        out = []
        for r in self.rows:
            if any(r[j] for j in pruned):
                continue
            pr = [r[j] for j in act]
            if any(pr):
                out.append(pr)
        return out


@dataclass
class ClassGroupResult:
    invariants: list
    h: int
    certified: bool = False
    det_history: list = field(default_factory=list)
    pruned_columns: list = field(default_factory=list)
    rank: int = 0
    stabilized: bool = False

    def to_json(self):
        return {
            "h": str(self.h),
            "invariants": list(self.invariants),
            "certified": self.certified,
            "stabilized": self.stabilized,
            "pruned_columns": list(self.pruned_columns),
            "det_history": [str(d) for d in self.det_history],
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


def group_from_hnf(H, active, pruned=(), det_history=None):
    """Class group data from the HNF of the relations over the active columns."""
    ncols = len(active)
    if len(H) < ncols:
        pc = set(pivot_columns(H))
        missing = [active[j] for j in range(ncols) if j not in pc]
        raise RankDeficient(missing, rank=len(H), ncols=ncols)
    h = 1
    for i, row in enumerate(H):
        h *= row[i]
    inv = [d for d in snf(H) if d > 1] if h > 1 else []
    return ClassGroupResult(
        invariants=inv,
        h=h,
        det_history=list(det_history or []),
        pruned_columns=list(pruned),
        rank=len(H),
    )


def class_group(rm, det_history=None):
    """Class group of Z^N / <relations> over the non-pruned columns of ``rm``."""
    act = rm.active_columns
    rows = rm.projected()
    if not act:
        return ClassGroupResult(invariants=[], h=1, pruned_columns=list(rm.pruned_columns))
    if not rows:
        raise RankDeficient(act, rank=0, ncols=len(act))
    return group_from_hnf(hnf(rows), act, rm.pruned_columns, det_history)


# ---------------------------------------------------------------- solve


class RelationLattice:
    """
    Row lattice of a relation matrix prepared for repeated solves x*M = y.

    The kernel basis is LLL-reduced once so that particular solutions can
    be shortened by nearest-plane reduction.
    """

    def __init__(self, rows, ncols=None, reduce_kernel=True):
        self.rows = [list(r) for r in rows]
        self.ncols = ncols if ncols is not None else len(self.rows[0])
        self.H, self.U, K = hnf_with_transform(self.rows)
        self.pivcols = pivot_columns(self.H)
        K = [k for k in K if any(k)]
        self.kernel = lll(K) if (K and reduce_kernel) else K

    def solve(self, y, shorten=True):
        y = list(y)
        if len(y) != self.ncols:
            raise ValueError("target length does not match the matrix")
        z = []
        for row, c in zip(self.H, self.pivcols):
            if y[c] % row[c]:
                raise NoSolution(f"column {c} not divisible by pivot {row[c]}")
            q = y[c] // row[c]
            z.append(q)
            if q:
                y = _axpy(y, q, row)
        if any(y):
            raise NoSolution("target outside the row space")
        x = [0] * len(self.rows)
        for q, u in zip(z, self.U):
            if q:
                x = [a + q * b for a, b in zip(x, u)]
        if shorten and self.kernel:
            x = babai_reduce(self.kernel, x)
        return x


def solve_in_lattice(M, y):
    """Integer x with x*M = y, or NoSolution."""
    if not any(y):
        return [0] * len(M)
    return RelationLattice(M).solve(y)

