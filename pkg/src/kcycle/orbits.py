"""K-orbits on the Grassmannian Gr(k, n) for three symmetric pairs.

Supported groups K acting on Gr(k, C^n):

  * GLpq:  GL(p) x GL(q) for a fixed splitting C^n = C^p (+) C^q;
    orbits are cut out by the intersection dimensions
    s = dim(U cap C^p), t = dim(U cap C^q).
  * Sp:    Sp(n) preserving a symplectic form; orbits are cut out by
    i = dim rad(U), the radical of the restricted form, with i = k (mod 2).
  * SO:    SO(n) preserving a symmetric form; orbits are cut out by
    i = dim rad(U), except that when n = 2k the totally isotropic
    locus splits into two closed orbits (the two ruling families).

The module provides orbit enumeration, closure posets, explicit base
points with adapted bases, orbit dimensions via the rank of the action
differential, and the relabelling maps induced by swapping the summands
or passing to annihilators / orthogonal complements.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional

from .exactla import QMatrix, QQ, Subspace, inverse, rank, solve_homogeneous


class Kind(str, Enum):
    GLPQ = "glpq"
    SP = "sp"
    SO = "so"


@dataclass(frozen=True)
class Setup:
    kind: Kind
    n: int
    k: int
    p: Optional[int] = None
    q: Optional[int] = None

    def __post_init__(self):
        if not (1 <= self.k <= self.n - 1):
            raise ValueError(f"need 1 <= k <= n-1, got k={self.k}, n={self.n}")
        if self.kind == Kind.GLPQ:
            if self.p is None or self.q is None:
                raise ValueError("GLpq setup needs p and q")
            if self.p < 1 or self.q < 1 or self.p + self.q != self.n:
                raise ValueError(f"need p,q >= 1 with p+q=n, got p={self.p}, q={self.q}, n={self.n}")
        else:
            if self.p is not None or self.q is not None:
                raise ValueError(f"{self.kind.value} setup takes no p,q")
            if self.kind == Kind.SP and self.n % 2 != 0:
                raise ValueError("Sp needs n even")

    @property
    def dim_gr(self) -> int:
        return self.k * (self.n - self.k)

    def describe(self) -> str:
        if self.kind == Kind.GLPQ:
            return f"glpq(n={self.n},k={self.k},p={self.p},q={self.q})"
        return f"{self.kind.value}(n={self.n},k={self.k})"


@dataclass(frozen=True, order=True)
class IntersectionOrbit:
    """GLpq orbit: dim(U cap C^p) = s, dim(U cap C^q) = t."""

    s: int
    t: int


@dataclass(frozen=True, order=True)
class RadicalOrbit:
    """Sp/SO orbit: dim rad(U) = i."""

    i: int


@dataclass(frozen=True, order=True)
class SplitOrbit:
    """One of the two closed SO-orbits of maximal isotropics when n = 2k.

    sign +1 is the family of the reference point span{e_1,...,e_k};
    sign -1 the family of its image under the reflection swapping
    e_{n/2} and e_{n/2+1}.
    """

    sign: int


def is_split_setup(setup: Setup) -> bool:
    return setup.kind == Kind.SO and setup.n == 2 * setup.k


def valid_orbit(setup: Setup, orbit) -> bool:
    """True when the label denotes a non-empty orbit of this setup."""
    n, k = setup.n, setup.k
    if isinstance(orbit, IntersectionOrbit):
        if setup.kind != Kind.GLPQ:
            return False
        s, t = orbit.s, orbit.t
        # k-t <= p and k-s <= q make the mixed part fit in both summands
        return s >= 0 and t >= 0 and s + t <= k and k - t <= setup.p and k - s <= setup.q
    if isinstance(orbit, RadicalOrbit):
        if setup.kind == Kind.GLPQ:
            return False
        i = orbit.i
        if not (0 <= i <= min(k, n - k)):
            return False
        if setup.kind == Kind.SP and (k - i) % 2 != 0:
            return False
        if is_split_setup(setup) and i == k:
            return False  # replaced by the two split labels
        return True
    if isinstance(orbit, SplitOrbit):
        return is_split_setup(setup) and orbit.sign in (+1, -1)
    return False


def check_orbit(setup: Setup, orbit) -> None:
    if not valid_orbit(setup, orbit):
        raise ValueError(f"{format_orbit(setup, orbit)} is not a (non-empty) orbit of {setup.describe()}")


def enumerate_orbits(setup: Setup) -> list:
    """All non-empty orbits, open orbit first, deterministic order."""
    n, k = setup.n, setup.k
    if setup.kind == Kind.GLPQ:
        out = []
        for s in range(max(0, k - setup.q), min(k, setup.p) + 1):
            for t in range(max(0, k - setup.p), k - s + 1):
                out.append(IntersectionOrbit(s, t))
        out.sort(key=lambda o: (o.s + o.t, o.s))
        return out
    top = min(k, n - k)
    step = 2 if setup.kind == Kind.SP else 1
    start = k % 2 if setup.kind == Kind.SP else 0
    out = [RadicalOrbit(i) for i in range(start, top + 1, step)]
    if is_split_setup(setup):
        out = out[:-1] + [SplitOrbit(+1), SplitOrbit(-1)]
    return out


def format_orbit(setup: Setup, orbit) -> str:
    if isinstance(orbit, IntersectionOrbit):
        return f"q({orbit.s},{orbit.t})"
    if isinstance(orbit, RadicalOrbit):
        return f"rad{orbit.i}"
    if isinstance(orbit, SplitOrbit):
        return f"rad{setup.k}{'+' if orbit.sign > 0 else '-'}"
    raise ValueError(f"not an orbit label: {orbit!r}")


_Q_RE = re.compile(r"^q\((\d+),(\d+)\)$")
_RAD_RE = re.compile(r"^rad(\d+)([+-]?)$")


def parse_orbit(setup: Setup, text: str):
    text = text.strip()
    m = _Q_RE.match(text)
    if m:
        orbit = IntersectionOrbit(int(m.group(1)), int(m.group(2)))
        check_orbit(setup, orbit)
        return orbit
    m = _RAD_RE.match(text)
    if m:
        i, sgn = int(m.group(1)), m.group(2)
        if sgn:
            if i != setup.k:
                raise ValueError(f"split labels exist only at i=k: {text}")
            orbit = SplitOrbit(+1 if sgn == "+" else -1)
        else:
            orbit = RadicalOrbit(i)
        check_orbit(setup, orbit)
        return orbit
    raise ValueError(f"cannot parse orbit label: {text!r}")


# ---------------------------------------------------------------------------
# normalization

@dataclass(frozen=True)
class NormalizedSetup:
    """A setup together with the relabelling that standardizes it.

    GLpq is brought to p >= q and k <= n-k; Sp/SO to k >= n-k.  The swap
    (if any) is applied before the duality.
    """

    original: Setup
    setup: Setup
    swapped_pq: bool
    dualized: bool

    def to_normalized(self, orbit):
        return relabel_orbit(orbit, self, reverse=False)

    def from_normalized(self, orbit):
        return relabel_orbit(orbit, self, reverse=True)


def normalize(setup: Setup) -> NormalizedSetup:
    cur = setup
    swapped = False
    if setup.kind == Kind.GLPQ and cur.p < cur.q:
        cur = Setup(Kind.GLPQ, cur.n, cur.k, p=cur.q, q=cur.p)
        swapped = True
    if setup.kind == Kind.GLPQ:
        dual = cur.k > cur.n - cur.k
    else:
        dual = cur.k < cur.n - cur.k
    if dual:
        cur = Setup(cur.kind, cur.n, cur.n - cur.k, p=cur.p, q=cur.q)
    return NormalizedSetup(setup, cur, swapped, dual)


def _dual_label(orbit, p: int, q: int, k: int):
    """Label of Ann(U) when U has label orbit in the (p, q, k) setup."""
    if isinstance(orbit, IntersectionOrbit):
        return IntersectionOrbit(p - k + orbit.t, q - k + orbit.s)
    return orbit  # rad(U^perp) = rad(U); split labels never dualize


def relabel_orbit(orbit, normalization: NormalizedSetup, reverse: bool = False):
    norm = normalization
    if not reverse:
        check_orbit(norm.original, orbit)
        cur = orbit
        if norm.swapped_pq:
            cur = IntersectionOrbit(cur.t, cur.s)
        if norm.dualized and norm.original.kind == Kind.GLPQ:
            cur = _dual_label(cur, norm.setup.p, norm.setup.q, norm.original.k)
        check_orbit(norm.setup, cur)
        return cur
    check_orbit(norm.setup, orbit)
    cur = orbit
    if norm.dualized and norm.original.kind == Kind.GLPQ:
        cur = _dual_label(cur, norm.setup.p, norm.setup.q, norm.setup.k)
    if norm.swapped_pq:
        cur = IntersectionOrbit(cur.t, cur.s)
    check_orbit(norm.original, cur)
    return cur


# ---------------------------------------------------------------------------
# closure order and poset

def closure_leq(setup: Setup, a, b) -> bool:
    """True when orbit a lies in the closure of orbit b."""
    check_orbit(setup, a)
    check_orbit(setup, b)
    if isinstance(a, IntersectionOrbit):
        return a.s >= b.s and a.t >= b.t
    ai = a.i if isinstance(a, RadicalOrbit) else setup.k
    bi = b.i if isinstance(b, RadicalOrbit) else setup.k
    if isinstance(b, SplitOrbit):
        return a == b  # split orbits are closed
    return ai >= bi


class ClosurePoset:
    """Closure order on the orbit set, with dimensions and covers."""

    def __init__(self, setup: Setup):
        self.setup = setup
        self.orbits = enumerate_orbits(setup)
        self.dimension = {o: orbit_dimension(setup, o) for o in self.orbits}

    def leq(self, a, b) -> bool:
        return closure_leq(self.setup, a, b)

    def codim(self, orbit) -> int:
        return self.setup.dim_gr - self.dimension[orbit]

    def open_orbit(self):
        tops = [o for o in self.orbits
                if all(o == b or not self.leq(o, b) for b in self.orbits)]
        assert len(tops) == 1, "closure order must have a unique open orbit"
        return tops[0]

    def covers(self) -> list:
        """Pairs (lower, upper): lower maximal among orbits strictly below upper."""
        out = []
        for b in self.orbits:
            below = [a for a in self.orbits if a != b and self.leq(a, b)]
            for a in below:
                if not any(c != a and c != b and self.leq(a, c) and self.leq(c, b) for c in below):
                    out.append((a, b))
        return out


# ---------------------------------------------------------------------------
# bilinear forms and base points

@lru_cache(maxsize=None)
def form_matrix(kind: Kind, n: int) -> QMatrix:
    """The antidiagonal form: symmetric for SO, symplectic for Sp."""
    assert kind in (Kind.SP, Kind.SO)
    rows = [[QQ(0)] * n for _ in range(n)]
    for a in range(n):
        if kind == Kind.SO:
            rows[a][n - 1 - a] = QQ(1)
        else:
            rows[a][n - 1 - a] = QQ(1) if a < n // 2 else QQ(-1)
    return QMatrix.from_rows(rows)


def gram_matrix(setup: Setup, u: QMatrix) -> QMatrix:
    """Restriction of the form to the columns of u."""
    j = form_matrix(setup.kind, setup.n)
    return u.transpose().mul(j).mul(u)


def _e(n: int, idx: int) -> list:
    v = [QQ(0)] * n
    v[idx] = QQ(1)
    return v


@dataclass(frozen=True)
class BasePoint:
    """A marked point of an orbit with an adapted basis of C^n.

    The first k columns of `basis` span U.  `row_groups` partitions
    those k columns (GLpq: the C^p part, the C^q part, the mixed part;
    Sp/SO: the radical, then the rest).  `col_groups` partitions the
    n-k complement columns (GLpq: inside C^p, the overlap block, inside
    C^q; Sp/SO: a single block).
    """

    setup: Setup
    orbit: object
    basis: QMatrix
    row_groups: tuple
    col_groups: tuple

    @property
    def u_matrix(self) -> QMatrix:
        n, k = self.setup.n, self.setup.k
        return self.basis.submatrix(range(n), range(k))

    @property
    def u(self) -> Subspace:
        return Subspace.from_matrix(self.u_matrix)


def _glpq_base_columns(setup: Setup, orbit: IntersectionOrbit):
    n, k, p, q = setup.n, setup.k, setup.p, setup.q
    s, t = orbit.s, orbit.t
    m = k - s - t
    cols = [_e(n, a) for a in range(s)]
    cols += [_e(n, p + b) for b in range(t)]
    for j in range(m):
        v = _e(n, s + j)
        v[p + t + j] = QQ(1)
        cols.append(v)
    comp = [_e(n, a) for a in range(k - t, p)]          # pure p, count p-k+t
    comp += [_e(n, a) for a in range(s, k - t)]         # overlap, count m
    comp += [_e(n, a) for a in range(p + k - s, n)]     # pure q, count q-k+s
    return cols, comp, (s, t, m), (p - k + t, m, q - k + s)


def _radical_base_columns(setup: Setup, i: int):
    n, k = setup.n, setup.k
    f = (k - i) // 2
    used = set()
    cols = []
    for a in range(i):
        cols.append(_e(n, a))
        used.add(a)
    for a in range(i, i + f):
        b = n - 1 - a
        cols.append(_e(n, a))
        cols.append(_e(n, b))
        used.update((a, b))
    if (k - i) % 2:
        if n % 2:
            mid = (n - 1) // 2
            cols.append(_e(n, mid))
            used.add(mid)
        else:
            # anisotropic diagonal vector across the middle pair
            a, b = i + f, n - 1 - (i + f)
            v = _e(n, a)
            v[b] = QQ(1)
            cols.append(v)
            used.add(a)
    comp = [_e(n, a) for a in range(n) if a not in used]
    return cols, comp


def _split_base_columns(setup: Setup, sign: int):
    n, k = setup.n, setup.k
    idx = list(range(k))
    if sign < 0:
        idx[k - 1] = k  # reflection image: swap e_{n/2} for e_{n/2+1}
    cols = [_e(n, a) for a in idx]
    comp = [_e(n, a) for a in range(n) if a not in set(idx)]
    return cols, comp


@lru_cache(maxsize=None)
def base_point(setup: Setup, orbit) -> BasePoint:
    check_orbit(setup, orbit)
    n, k = setup.n, setup.k
    if isinstance(orbit, IntersectionOrbit):
        cols, comp, rg, cg = _glpq_base_columns(setup, orbit)
    elif isinstance(orbit, RadicalOrbit):
        cols, comp = _radical_base_columns(setup, orbit.i)
        rg, cg = (orbit.i, k - orbit.i), (n - k,)
    else:
        cols, comp = _split_base_columns(setup, orbit.sign)
        rg, cg = (k, 0), (n - k,)
    basis = QMatrix.from_cols(n, cols + comp)
    assert rank(basis) == n, "adapted basis must be invertible"
    bp = BasePoint(setup, orbit, basis, rg, cg)
    _check_base_point(bp)
    return bp


def _check_base_point(bp: BasePoint) -> None:
    setup, orbit = bp.setup, bp.orbit
    u = bp.u_matrix
    if isinstance(orbit, IntersectionOrbit):
        got = orbit_of(setup, Subspace.from_matrix(u))
        assert got == orbit, f"constructed point sits on {got}, wanted {orbit}"
    else:
        i = orbit.i if isinstance(orbit, RadicalOrbit) else setup.k
        g = gram_matrix(setup, u)
        assert rank(g) == setup.k - i, "Gram rank must be k - dim rad"
        if isinstance(orbit, SplitOrbit):
            assert split_family(setup, Subspace.from_matrix(u)) == orbit.sign


@lru_cache(maxsize=None)
def _basis_inverse(bp: BasePoint) -> QMatrix:
    return inverse(bp.basis)


# ---------------------------------------------------------------------------
# classifying arbitrary points

def _coordinate_subspace(n: int, idx) -> Subspace:
    return Subspace.span(n, [_e(n, a) for a in idx])


def orbit_of(setup: Setup, u: Subspace):
    """The orbit label of an arbitrary k-plane."""
    n, k = setup.n, setup.k
    assert u.ambient_dim == n and u.dim == k
    if setup.kind == Kind.GLPQ:
        cp = _coordinate_subspace(n, range(setup.p))
        cq = _coordinate_subspace(n, range(setup.p, n))
        return IntersectionOrbit(u.intersection(cp).dim, u.intersection(cq).dim)
    g = gram_matrix(setup, u.basis)
    i = k - rank(g)
    if is_split_setup(setup) and i == k:
        return SplitOrbit(split_family(setup, u))
    return RadicalOrbit(i)


def split_reference(setup: Setup) -> Subspace:
    assert is_split_setup(setup)
    return _coordinate_subspace(setup.n, range(setup.k))


def split_family(setup: Setup, u: Subspace) -> int:
    """Which ruling family a maximal isotropic belongs to (+1 or -1)."""
    ref = split_reference(setup)
    return +1 if (u.intersection(ref).dim - setup.k) % 2 == 0 else -1


def perp(setup: Setup, u: Subspace) -> Subspace:
    """Orthogonal complement with respect to the form (Sp/SO)."""
    j = form_matrix(setup.kind, setup.n)
    return solve_homogeneous(
        [u.basis.transpose().mul(j).row(r) for r in range(u.dim)], setup.n
    )


def annihilator(u: Subspace) -> Subspace:
    """Functionals vanishing on u, in dual coordinates."""
    return solve_homogeneous(
        [u.basis.col(j) for j in range(u.dim)], u.ambient_dim
    )


# ---------------------------------------------------------------------------
# orbit dimension via the action differential

@lru_cache(maxsize=None)
def lie_algebra_basis(setup: Setup) -> tuple:
    """Basis matrices of Lie(K) acting on C^n."""
    n = setup.n
    if setup.kind == Kind.GLPQ:
        out = []
        for block in (range(setup.p), range(setup.p, n)):
            for a in block:
                for b in block:
                    rows = [[QQ(0)] * n for _ in range(n)]
                    rows[a][b] = QQ(1)
                    out.append(QMatrix.from_rows(rows))
        return tuple(out)
    j = form_matrix(setup.kind, n)
    # X^T J + J X = 0, as linear conditions on the n^2 entries of X
    constraints = []
    for a in range(n):
        for b in range(n):
            func = [QQ(0)] * (n * n)
            for c in range(n):
                func[c * n + a] += j[c, b]
                func[c * n + b] += j[a, c]
            constraints.append(func)
    sol = solve_homogeneous(constraints, n * n)
    out = []
    for col in range(sol.dim):
        flat = sol.basis.col(col)
        out.append(QMatrix.from_rows([flat[r * n:(r + 1) * n] for r in range(n)]))
    expected = n * (n + 1) // 2 if setup.kind == Kind.SP else n * (n - 1) // 2
    assert len(out) == expected
    return tuple(out)


def tangent_vector(bp: BasePoint, x: QMatrix) -> QMatrix:
    """Action of a Lie algebra element as a k x (n-k) chart matrix.

    Row j holds the complement coordinates of x . u_j, i.e. the image of
    x in Hom(U, C^n/U) written in the adapted basis.
    """
    n, k = bp.setup.n, bp.setup.k
    coords = _basis_inverse(bp).mul(x).mul(bp.u_matrix)  # n x k
    return coords.submatrix(range(k, n), range(k)).transpose()


def _action_rows(setup: Setup, bp: BasePoint) -> list:
    if setup.kind == Kind.GLPQ:
        # E_ab acts by an outer product; skip the generic n^3 multiply
        binv = _basis_inverse(bp)
        u = bp.u_matrix
        n, k = setup.n, setup.k
        rows = []
        for block in (range(setup.p), range(setup.p, n)):
            for a in block:
                for b in block:
                    rows.append(
                        [binv[k + c, a] * u[b, j] for j in range(k) for c in range(n - k)]
                    )
        return rows
    return [tangent_vector(bp, x).flatten() for x in lie_algebra_basis(setup)]


@lru_cache(maxsize=None)
def orbit_dimension(setup: Setup, orbit) -> int:
    bp = base_point(setup, orbit)
    return rank(QMatrix.from_rows(_action_rows(setup, bp)))
