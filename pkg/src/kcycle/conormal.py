"""Conormal spaces to orbits at base points, in adapted coordinates.

Cotangent vectors at U are k x (n-k) matrices over the adapted basis:
row j and column c give the u_j-coefficient of the image of the c-th
complement vector under a map C^n/U -> U.  Tangent vectors use the same
shape for Hom(U, C^n/U), and the two pair by the entrywise trace form.

For GLpq orbits the conormal space is a pair of literal blocks: the
maps sending C^q/U into U cap C^p and C^p/U into U cap C^q.  For Sp/SO
it is computed as the annihilator of the image of the action
differential.  Both routes are available for GLpq and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from .exactla import QMatrix, QQ, SeedStream, Subspace, rank, solve_homogeneous
from .orbits import (
    BasePoint,
    IntersectionOrbit,
    Kind,
    Setup,
    lie_algebra_basis,
    orbit_dimension,
    tangent_vector,
)


@dataclass(frozen=True)
class AdaptedChart:
    """Index bookkeeping for the block structure of a base point's chart."""

    base: BasePoint

    def row_block(self, g: int) -> range:
        off = sum(self.base.row_groups[:g])
        return range(off, off + self.base.row_groups[g])

    def col_block(self, g: int) -> range:
        off = sum(self.base.col_groups[:g])
        return range(off, off + self.base.col_groups[g])


@dataclass(frozen=True)
class ConormalVector:
    chart: AdaptedChart
    matrix: QMatrix  # k rows, n-k columns

    def block(self, rg: int, cg: int) -> QMatrix:
        return self.matrix.submatrix(self.chart.row_block(rg), self.chart.col_block(cg))

    @property
    def h_block(self) -> QMatrix:
        """Rows U cap C^p, columns C^q/U: the map h of the codifferential."""
        return self.block(0, 2)

    @property
    def l_block(self) -> QMatrix:
        """Rows U cap C^q, columns C^p/U: the map l of the codifferential."""
        return self.block(1, 0)


def _unit(k: int, nk: int, j: int, c: int) -> list:
    v = [QQ(0)] * (k * nk)
    v[j * nk + c] = QQ(1)
    return v


def conormal_space(base: BasePoint) -> Subspace:
    """Conormal directions at the base point, flattened row-major."""
    setup = base.setup
    k, nk = setup.k, setup.n - setup.k
    if setup.kind == Kind.GLPQ:
        chart = AdaptedChart(base)
        vecs = [_unit(k, nk, j, c) for j in chart.row_block(0) for c in chart.col_block(2)]
        vecs += [_unit(k, nk, j, c) for j in chart.row_block(1) for c in chart.col_block(0)]
        return Subspace.span(k * nk, vecs)
    return conormal_space_from_action(base)


def conormal_space_from_action(base: BasePoint) -> Subspace:
    """Annihilator of the action image; the route that needs no block pattern."""
    funcs = [tangent_vector(base, x).flatten() for x in lie_algebra_basis(base.setup)]
    k, nk = base.setup.k, base.setup.n - base.setup.k
    return solve_homogeneous(funcs, k * nk)


def max_conormal_rank(setup: Setup, orbit) -> int:
    """Largest matrix rank attained on the orbit's conormal space (GLpq)."""
    if setup.kind != Kind.GLPQ:
        raise ValueError("rank formula applies to GLpq only")
    s, t = orbit.s, orbit.t
    n, k, p, q = setup.n, setup.k, setup.p, setup.q
    return min(s, n - k - p + s) + min(t, n - k - q + t)


def _matrix_from_flat(flat, k: int, nk: int) -> QMatrix:
    return QMatrix.from_rows([list(flat[r * nk:(r + 1) * nk]) for r in range(k)])


RETRY_BUDGET = 8


def _sample(base: BasePoint, seed: int, height_bound: int) -> Tuple[QMatrix, int]:
    setup = base.setup
    k, nk = setup.k, setup.n - setup.k
    space = conormal_space(base)
    if space.dim == 0:
        raise ValueError("open orbit has no conormal directions to sample")
    rng = SeedStream(seed).derive("conormal-sample")
    if setup.kind != Kind.GLPQ:
        coeffs = [rng.randint(-height_bound, height_bound) for _ in range(space.dim)]
        flat = [
            sum(c * space.basis[i, j] for j, c in enumerate(coeffs))
            for i in range(k * nk)
        ]
        return _matrix_from_flat(flat, k, nk), 0
    chart = AdaptedChart(base)
    hr, hc = len(chart.row_block(0)), len(chart.col_block(2))
    lr, lc = len(chart.row_block(1)), len(chart.col_block(0))
    for attempt in range(RETRY_BUDGET + 1):
        rows = [[QQ(0)] * nk for _ in range(k)]
        for j in chart.row_block(0):
            for c in chart.col_block(2):
                rows[j][c] = QQ(rng.randint(-height_bound, height_bound))
        for j in chart.row_block(1):
            for c in chart.col_block(0):
                rows[j][c] = QQ(rng.randint(-height_bound, height_bound))
        m = QMatrix.from_rows(rows)
        xi = ConormalVector(chart, m)
        if rank(xi.h_block) == min(hr, hc) and rank(xi.l_block) == min(lr, lc):
            return m, attempt
    raise RuntimeError(
        f"no generic covector within {RETRY_BUDGET} resamples; "
        "this indicates a bug, not bad luck"
    )


def sample_conormal(base: BasePoint, seed: int, height_bound: int = 100) -> ConormalVector:
    """Deterministic covector in the conormal space, generic for GLpq.

    GLpq samples are resampled (at most RETRY_BUDGET times) until both
    blocks reach full rank, so the matrix rank equals max_conormal_rank.
    """
    m, _ = _sample(base, seed, height_bound)
    return ConormalVector(AdaptedChart(base), m)


def sampling_retries(base: BasePoint, seed: int, height_bound: int = 100) -> int:
    """How many resamples the genericity loop needed (harness statistic)."""
    _, attempts = _sample(base, seed, height_bound)
    return attempts
