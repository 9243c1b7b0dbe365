import numpy as np
import pytest

from curvefill import (Breakpoints, Constant, ContinuityError, DomainError,
                       HilbertApprox, Polynomial, ScalarMultiple,
                       StructureError, Sum, UNIT_SQUARE, add, concat,
                       cumulative_generator, hilbert, monomial, poly_apply,
                       segment, semigroup_generator, sup_norm,
                       uniform_distance)
from curvefill.polyparse import parse_polynomial

from conftest import random_polygonal


def test_eval_constant():
    assert Constant((1.0, 1.0)).at(0.37) == (1.0, 1.0)


def test_eval_domain_error():
    c = Constant((0.0, 0.0))
    with pytest.raises(DomainError):
        c.at(-0.1)
    with pytest.raises(DomainError):
        c.at(1.1)
    with pytest.raises(DomainError):
        c.values([0.5, 1.5])


def test_scalar_multiple_is_pointwise_scaling():
    f = hilbert(3)
    ts = np.linspace(0.0, 1.0, 257)
    for n in (2, 3, 7):
        got = ScalarMultiple(1.0 / n, f).values(ts)
        expect = (1.0 / n) * f.values(ts)
        assert np.array_equal(got, expect)


def test_uniform_distance_identity():
    f = hilbert(3)
    est, cert = uniform_distance(f, f, 100)
    assert est == 0.0
    assert cert == pytest.approx(2 * f.lipschitz_bound / (2 * 99))


def test_uniform_distance_constants_oracle():
    # hand oracle: d_inf((0,0),(3,-4)) = max(3, 4) = 4
    est, cert = uniform_distance(Constant((0, 0)), Constant((3, -4)), 10)
    assert est == 4.0
    assert cert == 4.0


def test_uniform_distance_shrink_is_half_eps_times_sup():
    f = hilbert(4)
    eps = 0.1
    n = 4097
    est, _ = uniform_distance(f, ScalarMultiple(1.0 - eps / 2.0, f), n)
    ts = np.linspace(0.0, 1.0, n)
    sup = float(np.max(np.abs(f.values(ts))))
    assert est == pytest.approx((eps / 2.0) * sup, rel=1e-12)


def test_uniform_distance_needs_two_samples():
    from curvefill import PreconditionError
    with pytest.raises(PreconditionError):
        uniform_distance(Constant((0, 0)), Constant((0, 0)), 1)


def test_concat_single_piece_is_identity():
    f = hilbert(3)
    glued = concat([((0.0, 1.0), f)])
    ts = np.linspace(0.0, 1.0, 1001)
    assert np.array_equal(glued.values(ts), f.values(ts))


def test_concat_three_piece_gluing_is_continuous():
    f = hilbert(4)
    u, v = (0.3, 0.8), (0.9, 0.1)
    phi = concat([
        ((0.0, 1.0 / 3.0), segment(u, f.at(0.0))),
        ((1.0 / 3.0, 2.0 / 3.0), f),
        ((2.0 / 3.0, 1.0), segment(f.at(1.0), v)),
    ])
    assert phi.at(0.0) == u
    assert phi.at(1.0) == v
    # both sides of each interior breakpoint agree
    for b in (1.0 / 3.0, 2.0 / 3.0):
        left = phi.at(np.nextafter(b, 0.0))
        right = phi.at(np.nextafter(b, 1.0))
        assert max(abs(left[0] - right[0]), abs(left[1] - right[1])) < 1e-9


def test_concat_endpoint_gap_is_an_error():
    with pytest.raises(ContinuityError):
        concat([((0.0, 0.5), Constant((0.0, 0.0))),
                ((0.5, 1.0), Constant((0.0, 1.0)))])


def test_concat_non_partition_is_an_error():
    with pytest.raises(StructureError):
        concat([((0.0, 0.4), Constant((0.0, 0.0))),
                ((0.5, 1.0), Constant((0.0, 0.0)))])
    with pytest.raises(StructureError):
        concat([((0.1, 1.0), Constant((0.0, 0.0)))])


def test_poly_apply_identity_polynomial():
    f = hilbert(3)
    ident = poly_apply(monomial(1, 0), [f])
    ts = np.linspace(0.0, 1.0, 513)
    assert np.array_equal(ident.values(ts), f.values(ts))


def test_poly_apply_product_of_constants():
    xy = parse_polynomial("x*y")
    curve = poly_apply(xy, [Constant((2, 3)), Constant((5, 7))])
    assert curve.at(0.25) == (10.0, 21.0)


def test_poly_apply_arity_mismatch():
    with pytest.raises(StructureError):
        poly_apply(parse_polynomial("x*y"), [Constant((1, 1))])


def test_remark_polynomial_vanishes_on_cumulative_generators():
    bp = Breakpoints.dyadic(4)
    f1 = cumulative_generator(1, bp, 4)
    f2 = cumulative_generator(2, bp, 4)
    p = parse_polynomial("x^2*y - x*y^2", allow_constant_term=False)
    curve = poly_apply(p, [f1, f2])
    for t in (0.0, 0.5, 1.0):
        assert curve.at(t) == (0.0, 0.0)
    ts = np.linspace(0.0, 1.0, 10_001)
    assert np.max(np.abs(curve.values(ts))) < 1e-12


def test_polynomial_rejects_forbidden_constant_term():
    with pytest.raises(StructureError):
        Polynomial(terms=((1.0, (0, 0)),), arity=2, allow_constant_term=False)


def test_polynomial_negative_exponent_rejected():
    with pytest.raises(StructureError):
        Polynomial(terms=((1.0, (-1,)),), arity=1)


@pytest.mark.parametrize("builder", [
    lambda: hilbert(4),
    lambda: hilbert(3, UNIT_SQUARE, orientation=2),
    lambda: ScalarMultiple(-2.5, hilbert(3)),
    lambda: add(hilbert(3), ScalarMultiple(0.5, hilbert(2))),
    lambda: Sum(Constant((0.3, -0.4)), hilbert(2)),
])
def test_lipschitz_bound_is_sound(builder, rng):
    curve = builder()
    lips = curve.lipschitz_bound
    ts = rng.uniform(0.0, 1.0, (1000, 2))
    va = curve.values(ts[:, 0])
    vb = curve.values(ts[:, 1])
    moved = np.max(np.abs(va - vb), axis=1)
    allowed = lips * np.abs(ts[:, 0] - ts[:, 1]) * (1 + 1e-9) + 1e-12
    assert np.all(moved <= allowed)


def test_lipschitz_bound_sound_for_products(rng):
    from curvefill import multiply
    curve = multiply(hilbert(3), hilbert(2), Constant((0.5, 2.0)))
    lips = curve.lipschitz_bound
    ts = rng.uniform(0.0, 1.0, (1000, 2))
    moved = np.max(np.abs(curve.values(ts[:, 0]) - curve.values(ts[:, 1])), axis=1)
    assert np.all(moved <= lips * np.abs(ts[:, 0] - ts[:, 1]) * (1 + 1e-9) + 1e-12)


def test_partial_sums_of_unit_norm_generators_never_go_cauchy():
    # sup-norm-1 family: the Cauchy increment of the partial sums stays >= 1,
    # so the series cannot converge uniformly
    bp = Breakpoints.dyadic(6)
    gens = [semigroup_generator(n, bp, 3) for n in range(1, 6)]
    partial = None
    prev = None
    for g in gens:
        partial = g if partial is None else Sum(partial, g)
        if prev is not None:
            est, _ = uniform_distance(partial, prev, 513)
            assert est >= 1.0
        prev = partial
    for g in gens:
        assert sup_norm(g) == 1.0


def test_restrict_matches_reparametrized_values(rng):
    from curvefill import restrict
    f = hilbert(4)
    r = restrict(f, 0.25, 0.75)
    ts = rng.uniform(0.0, 1.0, 200)
    assert np.allclose(r.values(ts), f.values(0.25 + 0.5 * ts), atol=1e-15)
    assert r.at(0.0) == f.at(0.25)
    assert r.at(1.0) == f.at(0.75)


def test_random_polygonal_lipschitz(rng):
    for _ in range(10):
        p = random_polygonal(rng)
        ts = rng.uniform(0.0, 1.0, (500, 2))
        moved = np.max(np.abs(p.values(ts[:, 0]) - p.values(ts[:, 1])), axis=1)
        bound = p.lipschitz_bound * np.abs(ts[:, 0] - ts[:, 1])
        assert np.all(moved <= bound * (1 + 1e-9) + 1e-12)
