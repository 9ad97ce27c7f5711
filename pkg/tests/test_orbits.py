import pytest

from kcycle.exactla import Subspace, rank
from kcycle.orbits import (
    ClosurePoset,
    IntersectionOrbit,
    Kind,
    RadicalOrbit,
    Setup,
    SplitOrbit,
    annihilator,
    base_point,
    enumerate_orbits,
    form_matrix,
    format_orbit,
    gram_matrix,
    lie_algebra_basis,
    normalize,
    orbit_dimension,
    orbit_of,
    parse_orbit,
    perp,
    split_family,
    split_reference,
    valid_orbit,
)


def glpq(n, k, p, q):
    return Setup(Kind.GLPQ, n, k, p=p, q=q)


SWEEP = [
    glpq(4, 2, 2, 2),
    glpq(5, 2, 3, 2),
    glpq(5, 3, 3, 2),
    glpq(6, 2, 3, 3),
    glpq(6, 3, 4, 2),
    glpq(6, 3, 5, 1),
    glpq(7, 3, 4, 3),
    Setup(Kind.SP, 4, 2),
    Setup(Kind.SP, 6, 2),
    Setup(Kind.SP, 6, 4),
    Setup(Kind.SP, 8, 4),
    Setup(Kind.SO, 4, 2),
    Setup(Kind.SO, 5, 2),
    Setup(Kind.SO, 6, 3),
    Setup(Kind.SO, 7, 3),
    Setup(Kind.SO, 7, 5),
    Setup(Kind.SO, 8, 4),
    Setup(Kind.SO, 8, 5),
]


def test_setup_validation():
    with pytest.raises(ValueError):
        Setup(Kind.GLPQ, 5, 2, p=2, q=2)
    with pytest.raises(ValueError):
        Setup(Kind.SP, 5, 2)
    with pytest.raises(ValueError):
        Setup(Kind.SO, 4, 0)
    with pytest.raises(ValueError):
        Setup(Kind.SO, 4, 2, p=2, q=2)


def test_enumerate_examples():
    got = set(enumerate_orbits(glpq(4, 2, 2, 2)))
    want = {IntersectionOrbit(s, t) for s, t in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]}
    assert got == want
    assert enumerate_orbits(Setup(Kind.SP, 4, 2)) == [RadicalOrbit(0), RadicalOrbit(2)]
    assert enumerate_orbits(Setup(Kind.SO, 4, 2)) == [
        RadicalOrbit(0), RadicalOrbit(1), SplitOrbit(+1), SplitOrbit(-1)]


def test_enumerate_counts_in_generic_range():
    # closed-form counts hold whenever no label is forced empty
    for n, k, p, q in [(6, 2, 3, 3), (7, 3, 4, 3), (8, 3, 4, 4)]:
        assert k <= min(p, q)
        assert len(enumerate_orbits(glpq(n, k, p, q))) == (k + 1) * (k + 2) // 2
    for n, k in [(6, 2), (8, 2), (8, 4)]:
        assert len(enumerate_orbits(Setup(Kind.SP, n, k))) == k // 2 + 1
    for n, k in [(6, 2), (7, 3), (9, 4)]:
        assert len(enumerate_orbits(Setup(Kind.SO, n, k))) == k + 1
    assert len(enumerate_orbits(Setup(Kind.SO, 8, 4))) == 4 + 2


def test_enumerate_degenerate_ranges():
    # labels that would have empty intersections/radicals are not listed
    got = set(enumerate_orbits(glpq(6, 3, 5, 1)))
    assert got == {IntersectionOrbit(2, 0), IntersectionOrbit(3, 0), IntersectionOrbit(2, 1)}
    assert enumerate_orbits(Setup(Kind.SP, 6, 4)) == [RadicalOrbit(0), RadicalOrbit(2)]
    assert enumerate_orbits(Setup(Kind.SO, 7, 5)) == [RadicalOrbit(i) for i in range(3)]
    assert not valid_orbit(Setup(Kind.SP, 6, 4), RadicalOrbit(4))
    assert not valid_orbit(glpq(6, 3, 5, 1), IntersectionOrbit(0, 0))


def test_orbit_labels_round_trip():
    for setup in SWEEP:
        for orbit in enumerate_orbits(setup):
            assert parse_orbit(setup, format_orbit(setup, orbit)) == orbit
    s = Setup(Kind.SO, 8, 4)
    assert format_orbit(s, SplitOrbit(+1)) == "rad4+"
    assert parse_orbit(s, "rad4-") == SplitOrbit(-1)
    with pytest.raises(ValueError):
        parse_orbit(s, "rad9")
    with pytest.raises(ValueError):
        parse_orbit(glpq(4, 2, 2, 2), "q(9,0)")


def test_normalize_directions():
    norm = normalize(glpq(6, 2, 3, 3))
    assert norm.setup == norm.original and not norm.swapped_pq and not norm.dualized
    norm = normalize(glpq(6, 4, 3, 3))
    assert norm.dualized and norm.setup.k == 2
    norm = normalize(glpq(6, 2, 2, 4))
    assert norm.swapped_pq and norm.setup.p == 4 and norm.setup.q == 2
    # Sp/SO standardize to k >= n-k, the opposite direction
    norm = normalize(Setup(Kind.SO, 7, 2))
    assert norm.dualized and norm.setup.k == 5
    norm = normalize(Setup(Kind.SP, 6, 4))
    assert not norm.dualized


def test_relabel_involution_exhaustive():
    setups = []
    for n in range(2, 9):
        for k in range(1, n):
            for p in range(1, n):
                setups.append(glpq(n, k, p, n - p))
            if n % 2 == 0:
                setups.append(Setup(Kind.SP, n, k))
            setups.append(Setup(Kind.SO, n, k))
    for setup in setups:
        norm = normalize(setup)
        orbits = enumerate_orbits(setup)
        images = [norm.to_normalized(o) for o in orbits]
        assert [norm.from_normalized(o) for o in images] == orbits
        # relabelling is a bijection onto the normalized orbit set
        assert sorted(images, key=str) == sorted(enumerate_orbits(norm.setup), key=str)


def test_glpq_duality_against_annihilators():
    # the label map under U -> Ann(U) computed from scratch at base points
    setup = glpq(5, 3, 3, 2)
    norm = normalize(setup)
    assert norm.dualized and norm.setup.k == 2
    dual_p = Subspace.span(5, [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]])
    dual_q = Subspace.span(5, [[0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    for orbit in enumerate_orbits(setup):
        u = base_point(setup, orbit).u
        ann = annihilator(u)
        assert ann.dim == 2
        got = IntersectionOrbit(ann.intersection(dual_p).dim, ann.intersection(dual_q).dim)
        assert got == norm.to_normalized(orbit)


def test_sp_so_duality_preserves_radical():
    for setup in [Setup(Kind.SO, 6, 2), Setup(Kind.SP, 6, 2)]:
        dual = Setup(setup.kind, 6, 4)
        for orbit in enumerate_orbits(setup):
            u = base_point(setup, orbit).u
            up = perp(setup, u)
            assert up.dim == 4
            assert orbit_of(dual, up) == RadicalOrbit(orbit.i)


def test_duality_preserves_order_and_codim():
    for setup in [glpq(5, 3, 3, 2), glpq(6, 4, 3, 3), Setup(Kind.SO, 6, 2), Setup(Kind.SP, 6, 2)]:
        norm = normalize(setup)
        assert norm.dualized
        pos = ClosurePoset(setup)
        pos2 = ClosurePoset(norm.setup)
        for a in pos.orbits:
            for b in pos.orbits:
                assert pos.leq(a, b) == pos2.leq(norm.to_normalized(a), norm.to_normalized(b))
            assert pos.codim(a) == pos2.codim(norm.to_normalized(a))


def test_closure_order_examples():
    pos = ClosurePoset(glpq(4, 2, 2, 2))
    assert pos.leq(IntersectionOrbit(1, 1), IntersectionOrbit(0, 0))
    assert not pos.leq(IntersectionOrbit(0, 0), IntersectionOrbit(1, 1))
    pos = ClosurePoset(Setup(Kind.SP, 4, 2))
    assert pos.leq(RadicalOrbit(2), RadicalOrbit(0))
    assert not pos.leq(RadicalOrbit(0), RadicalOrbit(2))
    pos = ClosurePoset(Setup(Kind.SO, 4, 2))
    assert pos.leq(SplitOrbit(+1), RadicalOrbit(1))
    assert not pos.leq(SplitOrbit(+1), SplitOrbit(-1))
    assert not pos.leq(SplitOrbit(-1), SplitOrbit(+1))


def test_poset_structure():
    for setup in SWEEP:
        pos = ClosurePoset(setup)
        top = pos.open_orbit()
        assert pos.dimension[top] == setup.dim_gr
        for a, b in pos.covers():
            assert pos.leq(a, b) and a != b
            assert pos.dimension[a] < pos.dimension[b]
        # strict monotonicity everywhere, not only on covers
        for a in pos.orbits:
            for b in pos.orbits:
                if a != b and pos.leq(a, b):
                    assert pos.dimension[a] < pos.dimension[b]


def test_base_point_examples():
    bp = base_point(glpq(6, 2, 3, 3), IntersectionOrbit(1, 0))
    u = bp.u_matrix
    # span{e1, e2+e4}
    assert u.col(0) == tuple([1, 0, 0, 0, 0, 0])
    assert u.col(1) == tuple([0, 1, 0, 1, 0, 0])
    bp = base_point(Setup(Kind.SP, 4, 2), RadicalOrbit(2))
    g = gram_matrix(bp.setup, bp.u_matrix)
    assert g.is_zero()
    assert bp.u_matrix.col(0) == tuple([1, 0, 0, 0])


def test_base_point_invariants_sweep():
    for setup in SWEEP:
        for orbit in enumerate_orbits(setup):
            bp = base_point(setup, orbit)
            assert orbit_of(setup, bp.u) == orbit
            assert sum(bp.row_groups) == setup.k
            assert sum(bp.col_groups) == setup.n - setup.k
            assert rank(bp.basis) == setup.n


def test_split_families():
    setup = Setup(Kind.SO, 8, 4)
    plus = base_point(setup, SplitOrbit(+1)).u
    minus = base_point(setup, SplitOrbit(-1)).u
    assert split_family(setup, plus) == +1
    assert split_family(setup, minus) == -1
    assert plus.intersection(minus).dim == setup.k - 1
    # both totally isotropic
    for u in (plus, minus):
        assert gram_matrix(setup, u.basis).is_zero()
    assert split_reference(setup) == plus


def test_lie_algebra_dimensions():
    assert len(lie_algebra_basis(Setup(Kind.SP, 4, 2))) == 10
    assert len(lie_algebra_basis(Setup(Kind.SO, 4, 2))) == 6
    assert len(lie_algebra_basis(Setup(Kind.SO, 5, 2))) == 10
    assert len(lie_algebra_basis(glpq(4, 2, 2, 2))) == 8
    # every generator preserves the form
    for setup in [Setup(Kind.SP, 6, 2), Setup(Kind.SO, 7, 3)]:
        j = form_matrix(setup.kind, setup.n)
        for x in lie_algebra_basis(setup):
            assert x.transpose().mul(j).add(j.mul(x)).is_zero()


def test_orbit_dimension_examples():
    for setup in SWEEP:
        pos = ClosurePoset(setup)
        assert pos.dimension[pos.open_orbit()] == setup.dim_gr
    assert orbit_dimension(glpq(4, 2, 2, 2), IntersectionOrbit(2, 0)) == 0


def test_glpq_codim_closed_form():
    # codim Q(s,t) = s(q-k+s) + t(p-k+t), an independent count of the
    # conormal directions at the base point
    for setup in [glpq(4, 2, 2, 2), glpq(6, 2, 3, 3), glpq(6, 3, 4, 2), glpq(7, 3, 4, 3)]:
        n, k, p, q = setup.n, setup.k, setup.p, setup.q
        for orbit in enumerate_orbits(setup):
            s, t = orbit.s, orbit.t
            want = s * (q - k + s) + t * (p - k + t)
            assert setup.dim_gr - orbit_dimension(setup, orbit) == want


def test_radical_codim_closed_form():
    # symmetric flavor: i(i+1)/2; alternating flavor: i(i-1)/2
    for setup in [Setup(Kind.SO, 5, 2), Setup(Kind.SO, 7, 3), Setup(Kind.SO, 8, 4)]:
        for orbit in enumerate_orbits(setup):
            i = orbit.i if isinstance(orbit, RadicalOrbit) else setup.k
            assert setup.dim_gr - orbit_dimension(setup, orbit) == i * (i + 1) // 2
    for setup in [Setup(Kind.SP, 6, 2), Setup(Kind.SP, 8, 4)]:
        for orbit in enumerate_orbits(setup):
            i = orbit.i
            assert setup.dim_gr - orbit_dimension(setup, orbit) == i * (i - 1) // 2
