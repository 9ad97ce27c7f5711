"""Characteristic cycles of orbit-closure sheaves, with cross-checks.

The cycle attached to an orbit closure is a nonnegative combination of
conormal varieties of orbits in the closure, with the orbit itself
appearing once.  For the three setup kinds handled here the answer is
known in closed form; this module states it, and independently re-derives
it through the routes the other modules provide: chart pullback of
matrix-stratum cycles, microlocal vanishing on resolution fibers, and
smallness of the resolutions.  Disagreements are collected into a
report rather than raised, so a sweep always runs to completion.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import degeneracy
from .orbits import (
    Kind,
    RadicalOrbit,
    Setup,
    SplitOrbit,
    check_orbit,
    closure_leq,
    enumerate_orbits,
    format_orbit,
    is_split_setup,
    normalize,
)
from .resolutions import (
    ResolutionKind,
    is_small,
    resolution_for,
    verify_microlocal_empty,
)


@dataclass(frozen=True)
class CharacteristicCycle:
    """A cycle supported on conormals of orbits in one closure.

    ``terms`` lists (orbit, multiplicity) pairs, the target orbit first
    with multiplicity one, the rest in label order.
    """

    setup: Setup
    target: object
    terms: tuple

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a cycle has at least its lead term")
        lead, lead_mult = self.terms[0]
        if lead != self.target or lead_mult != 1:
            raise ValueError("lead term must be the target with multiplicity one")
        seen = set()
        for orbit, mult in self.terms:
            check_orbit(self.setup, orbit)
            if orbit in seen:
                raise ValueError("duplicate term")
            seen.add(orbit)
            if not (isinstance(mult, int) and mult > 0):
                raise ValueError("multiplicities are positive integers")
            if not closure_leq(self.setup, orbit, self.target):
                raise ValueError("terms must lie in the closure of the target")

    @classmethod
    def from_multiplicities(cls, setup: Setup, target, mults: dict) -> "CharacteristicCycle":
        # zero entries mean absence, not an invalid term
        rest = sorted(
            (o for o in mults if o != target and mults[o]),
            key=lambda o: format_orbit(setup, o),
        )
        terms = [(target, mults.get(target, 0))]
        terms.extend((o, mults[o]) for o in rest)
        return cls(setup, target, tuple(terms))

    def multiplicity(self, orbit) -> int:
        for o, m in self.terms:
            if o == orbit:
                return m
        return 0

    def as_dict(self) -> dict:
        return dict(self.terms)

    @property
    def irreducible(self) -> bool:
        return len(self.terms) == 1

    def describe(self, setup: Setup | None = None) -> str:
        setup = setup or self.setup
        parts = []
        for o, m in self.terms:
            label = format_orbit(setup, o)
            parts.append(label if m == 1 else f"{m}*{label}")
        return " + ".join(parts)


def characteristic_cycle(setup: Setup, orbit) -> CharacteristicCycle:
    """The known characteristic cycle of the orbit-closure sheaf.

    Splitting-type and symplectic orbit closures always contribute a
    single conormal.  In the orthogonal case reducibility is governed by
    the radical size i relative to m = min(k, n-k): a second term
    rad(i+1) appears exactly for odd i below m.  When that second label
    would be the isotropic radical size in a square setup, it stands for
    both families, giving the unique three-term cycles.
    """
    check_orbit(setup, orbit)
    if setup.kind != Kind.SO or isinstance(orbit, SplitOrbit):
        return CharacteristicCycle.from_multiplicities(setup, orbit, {orbit: 1})
    i = orbit.i
    m = min(setup.k, setup.n - setup.k)
    if i % 2 == 0 or i == m:
        return CharacteristicCycle.from_multiplicities(setup, orbit, {orbit: 1})
    mults = {orbit: 1}
    if is_split_setup(setup) and i + 1 == setup.k:
        mults[SplitOrbit(1)] = 1
        mults[SplitOrbit(-1)] = 1
    else:
        mults[RadicalOrbit(i + 1)] = 1
    return CharacteristicCycle.from_multiplicities(setup, orbit, mults)


@dataclass(frozen=True)
class CheckRow:
    check: str
    subject: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    setup: Setup
    rows: tuple

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def failures(self) -> list:
        return [r for r in self.rows if not r.ok]


def check_cc_agreement(setup: Setup) -> list:
    """Stated cycle against the chart-pullback route, per orbit."""
    if setup.kind == Kind.GLPQ:
        return []
    rows = []
    for orbit in enumerate_orbits(setup):
        stated = characteristic_cycle(setup, orbit)
        pulled = degeneracy.pullback_cc(setup, orbit)
        ok = stated.as_dict() == pulled.as_dict()
        detail = f"stated {stated.describe()}; pullback {pulled.describe()}"
        rows.append(CheckRow("cc-agreement", format_orbit(setup, orbit), ok, detail))
    return rows


def check_microlocal(setup: Setup, trials: int = 20, seed: int = 0) -> list:
    """Sampled vanishing of generic conormals on smaller strata."""
    if setup.kind != Kind.GLPQ:
        return []
    rows = []
    orbits = enumerate_orbits(setup)
    for target in orbits:
        for stratum in orbits:
            if stratum == target or not closure_leq(setup, stratum, target):
                continue
            verdict = verify_microlocal_empty(setup, target, stratum,
                                              trials=trials, seed=seed)
            subject = f"{format_orbit(setup, target)}<-{format_orbit(setup, stratum)}"
            notes = [f"{verdict.kind.value}, {verdict.trials} trials"]
            if verdict.outside_strict_hypothesis:
                notes.append("square case, outside the strict regime")
            if verdict.witness is not None:
                notes.append("witness found")
            rows.append(CheckRow("microlocal-empty", subject,
                                 verdict.empty_in_all_trials, "; ".join(notes)))
    return rows


def check_smallness(setup: Setup) -> list:
    """Smallness of the applicable resolutions, per target orbit.

    For intersection-type setups the applicable side is asserted.  The
    radical-type resolutions are not small in general, so their results
    are recorded without being treated as failures.
    """
    rows = []
    orbits = enumerate_orbits(setup)
    if setup.kind == Kind.GLPQ:
        applicable = resolution_for(setup)
        norm = normalize(setup).setup
        both = norm.n - norm.k == norm.p
        for kind in (ResolutionKind.Z, ResolutionKind.ZTILDE):
            for target in orbits:
                subject = f"{kind.value} {format_orbit(setup, target)}"
                if kind == applicable or both:
                    small = is_small(setup, kind, target)
                    rows.append(CheckRow("smallness", subject, small,
                                         "small" if small else "not small"))
                else:
                    rows.append(CheckRow("smallness", subject, True,
                                         "not the applicable side here"))
        return rows
    for target in orbits:
        if isinstance(target, SplitOrbit):
            continue
        small = is_small(setup, ResolutionKind.ZI, target)
        detail = "small" if small else "not small (recorded, not asserted)"
        rows.append(CheckRow("smallness",
                             f"zi {format_orbit(setup, target)}", True, detail))
    return rows


def check_transversality(setup: Setup, points: int = 100, seed: int = 0) -> list:
    """Sampled transversality of the Gram section to the rank strata."""
    if setup.kind == Kind.GLPQ:
        return []
    result = degeneracy.run_transversality_suite(setup, points=points, seed=seed)
    rows = []
    for chart in result.charts:
        name = "opposite chart" if chart.center_last else "standard chart"
        rows.append(CheckRow("transversality", name, chart.ok,
                             f"{chart.points} points, {chart.failures} failures"))
    return rows


def cross_check(setup: Setup, trials: int = 20, points: int = 100,
                seed: int = 0) -> VerificationReport:
    """Run every verification route that applies to the setup."""
    rows = []
    rows.extend(check_cc_agreement(setup))
    rows.extend(check_microlocal(setup, trials=trials, seed=seed))
    rows.extend(check_smallness(setup))
    rows.extend(check_transversality(setup, points=points, seed=seed))
    return VerificationReport(setup, tuple(rows))
