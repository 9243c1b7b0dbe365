"""Parameterized builders for the structured curve families: semigroup
words under coordinatewise product, disjoint-support spanning families,
truncated window constructions accumulating toward t=1, density and
local-constancy perturbations, and the porosity ball witness.

Infinite constructions are truncated at an explicit index; every builder
returns plain combinator trees, so all guarantees can be re-checked by
the verification module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .generators import filler_with_endpoints, segment
from .kernel import (Concat, Constant, Curve, Polygonal, PreconditionError,
                     Rect, Restrict, ScalarMultiple, Sum, UNIT_SQUARE,
                     SYM_SQUARE, add, multiply, power, sample_plan,
                     uniform_distance)

DEFAULT_ORDER = 6


@dataclass(frozen=True)
class Breakpoints:
    """Finite increasing sequence a_1 < ... < a_M in (0,1), with a_0 = 0.

    Truncates the classical a_n -> 1 sequences; dyadic() is the default
    1 - 2^-n, harmonic() n/(n+1) keeps late windows wide enough for deep
    truncations.
    """

    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise PreconditionError("need at least one breakpoint")
        if any(not 0.0 < v < 1.0 for v in vals):
            raise PreconditionError("breakpoints must lie in (0,1)")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise PreconditionError("breakpoints must be strictly increasing")

    @classmethod
    def dyadic(cls, count: int) -> "Breakpoints":
        return cls(tuple(1.0 - 2.0 ** (-i) for i in range(1, count + 1)))

    @classmethod
    def harmonic(cls, count: int) -> "Breakpoints":
        return cls(tuple(i / (i + 1.0) for i in range(1, count + 1)))

    @property
    def count(self) -> int:
        return len(self.values)

    def a(self, i: int) -> float:
        """a_i with the convention a_0 = 0."""
        if i == 0:
            return 0.0
        if not 1 <= i <= self.count:
            raise PreconditionError(f"breakpoint index {i} out of range")
        return self.values[i - 1]

    def interval(self, n: int):
        """[a_{n-1}, a_n], the n-th support window counted from 0."""
        return self.a(n - 1), self.a(n)

    def window(self, j: int):
        """[a_j, a_{j+1}], the j-th window of the tail partition."""
        return self.a(j), self.a(j + 1)


def partition_index(n: int, k: int) -> int:
    """p(n,k) = 2^(n-1) (2k-1): a bijection N x N -> N splitting the
    naturals into disjoint increasing rows."""
    if n < 1 or k < 1:
        raise PreconditionError("indices start at 1")
    return 2 ** (n - 1) * (2 * k - 1)


def partition_index_inverse(j: int):
    if j < 1:
        raise PreconditionError("indices start at 1")
    n = 1
    while j % 2 == 0:
        j //= 2
        n += 1
    return n, (j + 1) // 2


# ---------------------------------------------------------------------------
# Rational sequences
# ---------------------------------------------------------------------------

_ZERO_SLOT = 9  # zero enumerated late so truncated builders keep nonzero plateaus


@lru_cache(maxsize=None)
def _calkin_wilf(m: int) -> Fraction:
    if m == 1:
        return Fraction(1)
    q = _calkin_wilf(m - 1)
    return 1 / (2 * (q.numerator // q.denominator) - q + 1)


def rational_value(i: int) -> Fraction:
    """The i-th rational in (-1,1) (i >= 0): signed Calkin-Wilf values
    mapped through x/(1+x), with zero placed at slot 9."""
    if i < 0:
        raise PreconditionError("index must be >= 0")
    if i == _ZERO_SLOT:
        return Fraction(0)
    j = i if i < _ZERO_SLOT else i - 1
    c = _calkin_wilf(j // 2 + 1)
    v = c / (1 + c)
    return v if j % 2 == 0 else -v


@dataclass(frozen=True)
class RationalSeq:
    """Finitely supported sequence of rationals in (-1,1)."""

    values: tuple
    index: int

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if any(abs(v) >= 1 for v in vals):
            raise PreconditionError("entries must lie in (-1,1)")

    def entry(self, n: int) -> Fraction:
        if n < 1:
            raise PreconditionError("entries are 1-based")
        return self.values[n - 1] if n <= len(self.values) else Fraction(0)


def _index_tuples(total: int, length: int):
    if length == 1:
        if total != _ZERO_SLOT:  # last entry must be nonzero
            yield (total,)
        return
    for first in range(total + 1):
        for rest in _index_tuples(total - first, length - 1):
            yield (first,) + rest


def rational_seq(k: int) -> RationalSeq:
    """The k-th element of a fixed bijective enumeration of all finitely
    supported rational sequences with entries in (-1,1).

    Tuples of value indices are graded by length plus index sum, longest
    first within a grade, then lexicographic; trailing zeros are stripped
    by requiring a nonzero last entry, and k=1 is the zero sequence.
    """
    if k < 1:
        raise PreconditionError("sequence index starts at 1")
    if k == 1:
        return RationalSeq((), 1)
    count = 1
    grade = 1
    while True:
        for length in range(grade, 0, -1):
            for tup in _index_tuples(grade - length, length):
                count += 1
                if count == k:
                    return RationalSeq(tuple(rational_value(i) for i in tup), k)
        grade += 1


def find_rational_seq(values, limit: int = 100_000) -> Optional[int]:
    """Forward search for the index of a sequence; None when not within
    the limit."""
    target = tuple(Fraction(v) for v in values)
    while target and target[-1] == 0:
        target = target[:-1]
    for k in range(1, limit + 1):
        if rational_seq(k).values == target:
            return k
    return None


# ---------------------------------------------------------------------------
# Assembly helpers
# ---------------------------------------------------------------------------

def _fill_gaps(windows, rest_point) -> Curve:
    """Concat the (lo, hi, curve) windows, padding gaps with a constant."""
    rest = Constant(rest_point)
    pieces = []
    cursor = 0.0
    for lo, hi, c in windows:
        if lo > cursor:
            pieces.append((cursor, lo, rest))
        pieces.append((lo, hi, c))
        cursor = hi
    if cursor < 1.0:
        pieces.append((cursor, 1.0, rest))
    return Concat(tuple(pieces))


# ---------------------------------------------------------------------------
# Semigroup under coordinatewise multiplication
# ---------------------------------------------------------------------------

def semigroup_generator(n: int, bp: Breakpoints, k: int = DEFAULT_ORDER) -> Curve:
    """Unit-square filler on [a_{n-1}, a_n] pinned to (1,1) at both ends,
    extended by (1,1) elsewhere; powers and products of these still fill."""
    if not 1 <= n <= bp.count:
        raise PreconditionError(f"generator index {n} needs {n} breakpoints, "
                                f"got {bp.count}")
    lo, hi = bp.interval(n)
    fill = filler_with_endpoints(UNIT_SQUARE, (1.0, 1.0), (1.0, 1.0), k)
    return _fill_gaps([(lo, hi, fill)], (1.0, 1.0))


def semigroup_product(word: Sequence, bp: Breakpoints,
                      k: int = DEFAULT_ORDER) -> Curve:
    """Coordinatewise product of powered generators, word = [(index, power)]."""
    word = list(word)
    if not word:
        raise PreconditionError("empty word")
    factors = []
    for idx, m in word:
        if m < 1:
            raise PreconditionError("powers must be >= 1")
        factors.append(power(semigroup_generator(idx, bp, k), m))
    return multiply(*factors)


# ---------------------------------------------------------------------------
# Disjoint-support spanning family
# ---------------------------------------------------------------------------

def spaceable_basis(n: int, bp: Breakpoints, k: int = DEFAULT_ORDER) -> Curve:
    """[-1,1]^2 filler supported on [a_{n-1}, a_n] with value (0,0) at the
    ends and off the support; distinct members overlap only at breakpoints."""
    if not 1 <= n <= bp.count:
        raise PreconditionError(f"basis index {n} needs {n} breakpoints, "
                                f"got {bp.count}")
    lo, hi = bp.interval(n)
    fill = filler_with_endpoints(SYM_SQUARE, (0.0, 0.0), (0.0, 0.0), k)
    return _fill_gaps([(lo, hi, fill)], (0.0, 0.0))


def spaceable_combination(coefs: Sequence[float], bp: Breakpoints,
                          k: int = DEFAULT_ORDER):
    """Finite combination sum c_n f_n of the disjoint-support family.

    Returns (curve, predicted_image); the image is exactly the square
    [-c*, c*]^2 with c* the largest |c_n|, which the zero combination
    would degenerate, so all-zero coefficients are rejected.
    """
    coefs = [float(c) for c in coefs]
    if not coefs or all(c == 0.0 for c in coefs):
        raise PreconditionError("combination needs a nonzero coefficient")
    parts = [ScalarMultiple(c, spaceable_basis(i + 1, bp, k))
             for i, c in enumerate(coefs) if c != 0.0]
    cstar = max(abs(c) for c in coefs)
    return add(*parts), Rect(-cstar, cstar, -cstar, cstar)


# ---------------------------------------------------------------------------
# Windowed constructions toward t = 1
# ---------------------------------------------------------------------------

def _require_windows(bp: Breakpoints, n: int, trunc: int, who: str) -> None:
    need = partition_index(n, trunc) + 1
    if need > bp.count:
        raise PreconditionError(
            f"{who}(n={n}, K={trunc}) needs {need} breakpoints, got {bp.count}")


def tsf1_generator(n: int, trunc: int, bp: Breakpoints,
                   k: int = DEFAULT_ORDER) -> Curve:
    """Sum of shrinking-square fillers: the j-th stage fills (1/j) I^2 on
    the window [a_{p(n,j)}, a_{p(n,j)+1}], zero elsewhere, truncated at K.

    Any neighborhood of 1 contains a whole window of every stage index
    beyond some point, so images near 1 keep nonempty interior.
    """
    if n < 1 or trunc < 1:
        raise PreconditionError("n and K start at 1")
    _require_windows(bp, n, trunc, "tsf1_generator")
    windows = []
    for j in range(1, trunc + 1):
        lo, hi = bp.window(partition_index(n, j))
        target = Rect(0.0, 1.0 / j, 0.0, 1.0 / j)
        windows.append((lo, hi, filler_with_endpoints(target, (0, 0), (0, 0), k)))
    windows.sort(key=lambda w: w[0])
    return _fill_gaps(windows, (0.0, 0.0))


def tsf1_window(n: int, j: int, bp: Breakpoints):
    return bp.window(partition_index(n, j))


def locally_constant_perturbation(f: Curve, t0: float, eps: float) -> Curve:
    """Replace f near t0 by the constant f(t0), bridging back with straight
    segments; the result stays within eps of f in the uniform metric.

    The flattened window is sized from f's Lipschitz bound so f itself
    moves at most eps/3 across it.
    """
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    if not 0.0 <= t0 <= 1.0:
        raise PreconditionError("t0 must lie in [0,1]")
    lips = f.lipschitz_bound
    if lips == 0.0:
        return f
    w = min(eps / (3.0 * lips), 0.5)
    c = max(0.0, t0 - w)
    d = min(1.0, t0 + w)
    c1 = (c + t0) / 2.0
    d1 = (t0 + d) / 2.0
    value = f.at(t0)
    pieces = []
    if c > 0.0:
        pieces.append((0.0, c, Restrict(f, 0.0, c)))
    if c1 > c:
        pieces.append((c, c1, segment(f.at(c), value)))
    pieces.append((c1, d1, Constant(value)))
    if d > d1:
        pieces.append((d1, d, segment(value, f.at(d))))
    if d < 1.0:
        pieces.append((d, 1.0, Restrict(f, d, 1.0)))
    return Concat(tuple(pieces))


def constant_plateau(curve: Curve):
    """The widest maximal constant piece of a concat tree, as (lo, hi)."""
    if not isinstance(curve, Concat):
        return None
    best = None
    for lo, hi, c in curve.pieces:
        if isinstance(c, Constant) and (best is None or hi - lo > best[1] - best[0]):
            best = (lo, hi)
    return best


def sf_dense_approximation(f: Curve, eps: float, k: int = DEFAULT_ORDER) -> Curve:
    """A curve within eps of f whose image has interior: fill a rectangle
    of side 0.45 eps around f's start on the first partition cell, then
    interpolate f linearly at nodes chosen finer than the oscillation."""
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    n_cells = max(2, int(math.ceil(4.0 * f.lipschitz_bound / eps)))
    nodes = np.linspace(0.0, 1.0, n_cells + 1)
    vals = f.values(nodes)
    p0, p1 = vals[0], vals[1]
    side = 0.45 * eps
    cx, cy = (p0[0] + p1[0]) / 2.0, (p0[1] + p1[1]) / 2.0
    box = Rect(cx - side / 2, cx + side / 2, cy - side / 2, cy + side / 2)
    t1 = float(nodes[1])
    fill = filler_with_endpoints(box, tuple(p0), tuple(p1), k)
    tail_ts = (nodes[1:] - t1) / (1.0 - t1)
    tail_ts[0] = 0.0
    tail_ts[-1] = 1.0
    tail = Polygonal(tuple(tail_ts), tuple(map(tuple, vals[1:])))
    return Concat(((0.0, t1, fill), (t1, 1.0, tail)))


# ---------------------------------------------------------------------------
# Free-family generators and the cumulative (non-free) family
# ---------------------------------------------------------------------------

def _window_count(bp: Breakpoints, trunc: int) -> int:
    m = 0
    while partition_index(m + 1, trunc) + 1 <= bp.count:
        m += 1
    return m


def algebrable_generator(n: int, trunc: int, bp: Breakpoints,
                         k: int = DEFAULT_ORDER) -> Curve:
    """Generator of the free coordinatewise algebra, truncated at K stages.

    On its own windows I_{n,j} the middle third carries the base filler of
    [-1,1]^2 scaled by 1/j and the outer thirds are zero.  On foreign
    windows I_{m,j} it holds the plateau (q_n / j, q_n / j), q_n the n-th
    entry of the j-th rational sequence, with affine ramps from zero on
    the outer thirds.  The which-windows assignment is shared by all
    generators built from the same breakpoints and truncation.

    Deeper stages use a lower filler order (k reduced by log2 of the
    stage), matching the shrinking image scale.
    """
    if n < 1 or trunc < 1:
        raise PreconditionError("n and K start at 1")
    _require_windows(bp, n, trunc, "algebrable_generator")
    members = _window_count(bp, trunc)
    windows = []
    for m in range(1, members + 1):
        for j in range(1, trunc + 1):
            lo, hi = bp.window(partition_index(m, j))
            t1 = lo + (hi - lo) / 3.0
            t2 = lo + 2.0 * (hi - lo) / 3.0
            if m == n:
                order = max(2, k - int(math.floor(math.log2(j))))
                fill = filler_with_endpoints(SYM_SQUARE, (0, 0), (0, 0), order)
                windows.append((lo, t1, Constant((0.0, 0.0))))
                windows.append((t1, t2, ScalarMultiple(1.0 / j, fill)))
                windows.append((t2, hi, Constant((0.0, 0.0))))
            else:
                q = float(rational_seq(j).entry(n)) / j
                plateau = (q, q)
                windows.append((lo, t1, segment((0.0, 0.0), plateau)))
                windows.append((t1, t2, Constant(plateau)))
                windows.append((t2, hi, segment(plateau, (0.0, 0.0))))
    windows.sort(key=lambda w: w[0])
    return _fill_gaps(windows, (0.0, 0.0))


def algebrable_window(n: int, j: int, bp: Breakpoints):
    """The middle third of I_{n,j}, where the n-th generator fills."""
    lo, hi = bp.window(partition_index(n, j))
    return lo + (hi - lo) / 3.0, lo + 2.0 * (hi - lo) / 3.0


def cumulative_generator(n: int, bp: Breakpoints, k: int = DEFAULT_ORDER) -> Curve:
    """f_n equal to the shared unit-square filler g_j on [a_j, a_{j+1}] for
    every j <= n and (0,0) elsewhere; consecutive members agree on all
    earlier windows, which collapses antisymmetric polynomials to zero."""
    if n < 1:
        raise PreconditionError("index starts at 1")
    if n + 1 > bp.count:
        raise PreconditionError(
            f"cumulative_generator(n={n}) needs {n + 1} breakpoints, got {bp.count}")
    fill = filler_with_endpoints(UNIT_SQUARE, (0, 0), (0, 0), k)
    windows = [(bp.a(j), bp.a(j + 1), fill) for j in range(1, n + 1)]
    return _fill_gaps(windows, (0.0, 0.0))


# ---------------------------------------------------------------------------
# Metric witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PorosityWitness:
    """Ball around the shrunk curve that misses every unit-square filler.

    Any g with rho(g, center) <= radius satisfies sup max(|x|,|y|) <= bound
    < 1, so its image cannot reach the far corner of the unit square.
    """

    center: Curve
    radius: float
    bound: float
    eps: float
    alpha: float

    def __post_init__(self):
        if not self.bound < 1.0:
            raise PreconditionError("porosity bound must stay below 1")


def porosity_witness(f: Curve, eps: float, alpha: float,
                     n_samples: int = 4096) -> PorosityWitness:
    """Witness that no curve near (1 - eps/2) f fills the unit square.

    The radius uses the sampled distance between f and its shrinking,
    a lower bound of the true distance, so the guarantee only tightens.
    """
    if not 0.0 < eps <= 1.0:
        raise PreconditionError("eps must lie in (0, 1]")
    if not 0.0 < alpha < 1.0:
        raise PreconditionError("alpha must lie in (0, 1)")
    pts = f.values(sample_plan(f, 1.0 / 128.0))
    if pts.min() < 0.0 or pts.max() > 1.0:
        raise PreconditionError("curve must map into the unit square")
    center = ScalarMultiple(1.0 - eps / 2.0, f)
    rho = uniform_distance(f, center, n_samples).estimate
    return PorosityWitness(center=center, radius=alpha * rho,
                           bound=alpha * eps / 2.0 + 1.0 - eps / 2.0,
                           eps=eps, alpha=alpha)


def nonequicontinuity_witness(delta: float, target: Rect = UNIT_SQUARE,
                              k: int = DEFAULT_ORDER):
    """Filler compressed into [0, delta/2] and frozen afterwards: returns
    (curve, u, v) with |u - v| < delta but far-apart values."""
    if not 0.0 < delta < 1.0:
        raise PreconditionError("delta must lie in (0,1)")
    corner = (target.x_lo, target.y_lo)
    fill = filler_with_endpoints(target, corner, corner, k)
    phi = Concat(((0.0, delta / 2.0, fill), (delta / 2.0, 1.0, Constant(corner))))
    ts = np.linspace(0.0, delta / 2.0, 2 * 4 ** k + 1)
    vals = phi.values(ts)
    gaps = np.max(np.abs(vals - np.array(corner)), axis=1)
    v = float(ts[int(np.argmax(gaps))])
    return phi, 0.0, v
