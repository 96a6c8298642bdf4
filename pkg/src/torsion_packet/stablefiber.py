"""Nodal limit fibers and their differentials, solved by exact linear algebra.

A stable limit fiber here is a projective line with two pairs of points
identified; the limit of the holomorphic 1-form is a rational differential
sum(c_i/(z - p_i)) dz with simple poles at the node preimages.  This
module sets up the linear conditions on the residue coefficients c_i --
total residue zero, matching at nodes, prescribed vanishing orders at
marked points -- and computes the kernel exactly, either over a cyclotomic
field or over the fraction field Q(x, y) when the node positions are
symbolic.

Residue convention at a node (p, q): Res(p) + Res(q) = 0.  The displayed
limit differentials satisfy this anti-symmetric matching (their residues
at a node's two branches are opposite); only the ratio of residues feeds
the downstream exclusion argument, so the orientation convention is
recorded in reports rather than debated.

Vanishing orders at infinity are read off in the coordinate w = 1/z:
regularity requires sum(c_i) = 0 and each further vanishing order adds
one moment condition sum(c_i * p_i^j) = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

from .errors import ArithmeticInconsistencyError
from .exactnum import CyclotomicElem, sign_of_real

Point = Any  # CyclotomicElem, sympy FracElement, Fraction, or INFINITY


class _AtInfinity:
    """Singleton marker for the point at infinity on the projective line."""

    _instance: Optional[_AtInfinity] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _AtInfinity()


@lru_cache(maxsize=1)
def symbolic_xy():
    """The fraction field Q(x, y) and its two generators."""
    from sympy.polys.domains import QQ
    from sympy.polys.fields import field

    return field("x,y", QQ)


def _points_equal(p: Point, q: Point) -> bool:
    if (p is INFINITY) != (q is INFINITY):
        return False
    if p is INFINITY:
        return True
    return bool(p == q)


@dataclass(frozen=True)
class NodalConfig:
    """A projective line with identified point pairs and marked points.

    ``nodes`` lists the identified pairs; ``marked`` labels distinguished
    points (zeros of the limit differential, Weierstrass limits, ...);
    ``zero_orders`` maps marked labels to required vanishing orders of
    the limit differential; ``involution`` optionally names a symmetry
    ("negation" for z -> -z, "inversion" for z -> 1/z) that must map the
    configuration to itself.
    """

    nodes: tuple[tuple[Point, Point], ...]
    marked: tuple[tuple[str, Point], ...] = ()
    zero_orders: tuple[tuple[str, int], ...] = ()
    involution: Optional[str] = None

    def __init__(
        self,
        nodes: Iterable[tuple[Point, Point]],
        marked: Iterable[tuple[str, Point]] = (),
        zero_orders: Union[Mapping[str, int], Iterable[tuple[str, int]]] = (),
        involution: Optional[str] = None,
    ):
        object.__setattr__(self, "nodes", tuple((p, q) for p, q in nodes))
        object.__setattr__(self, "marked", tuple((str(l), p) for l, p in marked))
        if isinstance(zero_orders, Mapping):
            zero_orders = zero_orders.items()
        object.__setattr__(self, "zero_orders", tuple(sorted((str(l), int(k)) for l, k in zero_orders)))
        object.__setattr__(self, "involution", involution)
        self._validate()

    # -- derived views ----------------------------------------------------

    @property
    def poles(self) -> tuple[Point, ...]:
        return tuple(p for node in self.nodes for p in node)

    @property
    def zero_order_map(self) -> dict[str, int]:
        return dict(self.zero_orders)

    def marked_point(self, label: str) -> Point:
        for l, p in self.marked:
            if l == label:
                return p
        raise KeyError(label)

    def all_points(self) -> list[Point]:
        return list(self.poles) + [p for _, p in self.marked]

    # -- validation --------------------------------------------------------

    def _validate(self):
        if not self.nodes:
            raise ValueError("a nodal configuration needs at least one node")
        if self.involution not in (None, "negation", "inversion"):
            raise ValueError(f"unknown involution {self.involution!r}")
        labels = [l for l, _ in self.marked]
        if len(set(labels)) != len(labels):
            raise ValueError("marked labels must be distinct")
        unknown = [l for l, _ in self.zero_orders if l not in labels]
        if unknown:
            raise ValueError(f"zero orders given for unmarked labels {unknown}")
        if any(k < 1 for _, k in self.zero_orders):
            raise ValueError("vanishing orders must be positive")
        pts = self.all_points()
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if _points_equal(pts[i], pts[j]):
                    raise ValueError(
                        f"configuration points must be pairwise distinct; "
                        f"{pts[i]!r} appears twice"
                    )
        if self.involution is not None:
            self._check_involution()

    def _image(self, p: Point, zero: Point) -> Point:
        if self.involution == "negation":
            return p if p is INFINITY else -p
        if p is INFINITY:
            return zero
        if p == zero:
            return INFINITY
        return 1 / p

    def _check_involution(self):
        finite = next(p for p in self.all_points() if p is not INFINITY)
        zero = finite - finite
        node_sets = [frozenset_like(pair) for pair in self.nodes]
        for pair in self.nodes:
            image = frozenset_like(tuple(self._image(p, zero) for p in pair))
            if not any(_pairs_equal(image, s) for s in node_sets):
                raise ValueError(f"involution does not preserve the node pair {pair!r}")
        marked_pts = [p for _, p in self.marked]
        for p in marked_pts:
            img = self._image(p, zero)
            if not any(_points_equal(img, q) for q in marked_pts):
                raise ValueError(f"involution does not preserve the marked point {p!r}")


def encode_point(p: Point) -> Any:
    """JSON-safe encoding of a configuration point.

    Cyclotomic elements become {m, coeffs[]}, rationals "p/q" strings,
    symbolic fraction-field elements their display string, and the point
    at infinity the string "infinity".
    """
    if p is INFINITY:
        return "infinity"
    if isinstance(p, CyclotomicElem):
        return {"m": p.m, "coeffs": [str(c) for c in p.coeffs]}
    if isinstance(p, (int, Fraction)):
        return str(p)
    return str(p)


def config_to_json_dict(config: NodalConfig) -> dict[str, Any]:
    """Serializable record naming node pairs, marked points and zero orders."""
    return {
        "nodes": [[encode_point(p), encode_point(q)] for p, q in config.nodes],
        "marked": [{"label": l, "point": encode_point(p)} for l, p in config.marked],
        "zero_orders": {l: k for l, k in config.zero_orders},
        "involution": config.involution,
    }


def differential_to_json_dict(omega: LimitDifferential) -> dict[str, Any]:
    """Serializable list of (residue, pole) pairs."""
    return {
        "terms": [
            {"residue": encode_point(c), "pole": encode_point(p)} for c, p in omega.terms
        ]
    }


def frozenset_like(pair: Sequence[Point]) -> tuple[Point, Point]:
    # Points are not reliably hashable across field implementations, so
    # unordered pairs are compared structurally instead of via sets.
    return (pair[0], pair[1])


def _pairs_equal(a: tuple[Point, Point], b: tuple[Point, Point]) -> bool:
    return (_points_equal(a[0], b[0]) and _points_equal(a[1], b[1])) or (
        _points_equal(a[0], b[1]) and _points_equal(a[1], b[0])
    )


@dataclass(frozen=True)
class LimitDifferential:
    """sum(c/(z - p)) dz, stored as (residue coefficient, pole) terms."""

    terms: tuple[tuple[Point, Point], ...]

    def __init__(self, terms: Iterable[tuple[Point, Point]]):
        object.__setattr__(self, "terms", tuple((c, p) for c, p in terms))

    @property
    def poles(self) -> tuple[Point, ...]:
        return tuple(p for _, p in self.terms)

    @property
    def residues(self) -> tuple[Point, ...]:
        return tuple(c for c, _ in self.terms)

    def residue_at(self, point: Point) -> Point:
        for c, p in self.terms:
            if _points_equal(p, point):
                return c
        raise KeyError(f"no pole at {point!r}")

    def total_residue(self) -> Point:
        total = None
        for c, _ in self.terms:
            total = c if total is None else total + c
        return total

    def scaled(self, factor) -> LimitDifferential:
        return LimitDifferential((c * factor, p) for c, p in self.terms)


def differentials_proportional(a: LimitDifferential, b: LimitDifferential) -> bool:
    """Whether two differentials with the same poles differ by a scalar."""
    if len(a.terms) != len(b.terms):
        return False
    try:
        pairs = [(ca, b.residue_at(p)) for ca, p in a.terms]
    except KeyError:
        return False
    anchor = next(((ca, cb) for ca, cb in pairs if not _is_zero(ca)), None)
    if anchor is None:
        return all(_is_zero(cb) for _, cb in pairs)
    ca0, cb0 = anchor
    return all(ca * cb0 == cb * ca0 for ca, cb in pairs)


def _is_zero(v) -> bool:
    return bool(v == v - v)


# --------------------------------------------------------------------------
# The linear systems


def _kernel_basis(rows: list[list], ncols: int, zero, one) -> list[list]:
    """Basis of the right kernel, by reduced row echelon form over a field."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if not mat[i][c] == zero), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = one / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][c] == zero:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for i, pc in enumerate(pivots):
            vec[pc] = zero - mat[i][free]
        basis.append(vec)
    return basis


def _condition_rows(config: NodalConfig, poles: Sequence[Point], zero, one) -> list[list]:
    n = len(poles)
    rows = []
    for i, (_, _) in enumerate(config.nodes):
        row = [zero] * n
        row[2 * i] = one
        row[2 * i + 1] = one
        rows.append(row)
    rows.append([one] * n)  # regularity at infinity: total residue zero
    orders = config.zero_order_map
    for label, pt in config.marked:
        k = orders.get(label, 0)
        if k < 1:
            continue
        if pt is INFINITY:
            for j in range(1, k + 1):
                rows.append([p**j for p in poles])
        else:
            for p in poles:
                if _points_equal(pt, p):
                    raise ValueError(f"prescribed zero at {pt!r} coincides with a pole")
            for j in range(1, k + 1):
                rows.append([one / ((pt - p) ** j) for p in poles])
    return rows


def differential_space(config: NodalConfig) -> tuple[int, list[LimitDifferential]]:
    """Dimension and basis of differentials satisfying all exact conditions.

    Unknowns are the residue coefficients at the node preimages; the
    conditions are node matching, total residue zero, and the prescribed
    vanishing orders at marked points (one linear condition per order,
    with infinity handled in the coordinate w = 1/z).
    """
    poles = config.poles
    if any(p is INFINITY for p in poles):
        raise ValueError("nodes at infinity are not supported")
    zero = poles[0] - poles[0]
    one = zero + 1
    rows = _condition_rows(config, poles, zero, one)
    basis = _kernel_basis(rows, len(poles), zero, one)
    diffs = [LimitDifferential(zip(vec, poles)) for vec in basis]
    return len(diffs), diffs


def verify_residue_constraints(omega: LimitDifferential, config: NodalConfig) -> bool:
    """Exact check of total residue zero and node matching Res(p) + Res(q) = 0."""
    poles = config.poles
    if len(omega.terms) != len(poles):
        raise ValueError("differential poles do not match the node points")
    for p in poles:
        hits = sum(1 for _, q in omega.terms if _points_equal(p, q))
        if hits != 1:
            raise ValueError("differential poles do not match the node points")
    if not _is_zero(omega.total_residue()):
        return False
    for p, q in config.nodes:
        if not _is_zero(omega.residue_at(p) + omega.residue_at(q)):
            return False
    return True


def verify_zero_orders(omega: LimitDifferential, config: NodalConfig) -> bool:
    """Exact check of the prescribed vanishing orders at the marked points."""
    orders = config.zero_order_map
    for label, pt in config.marked:
        k = orders.get(label, 0)
        if k < 1:
            continue
        if pt is INFINITY:
            for j in range(1, k + 1):
                total = None
                for c, p in omega.terms:
                    term = c * p**j
                    total = term if total is None else total + term
                if not _is_zero(total):
                    return False
        else:
            for j in range(1, k + 1):
                total = None
                for c, p in omega.terms:
                    term = c / ((pt - p) ** j)
                    total = term if total is None else total + term
                if not _is_zero(total):
                    return False
    return True


def height_ratio(
    omega: LimitDifferential,
    config: NodalConfig,
    numerator_pole: Optional[Point] = None,
    denominator_pole: Optional[Point] = None,
):
    """Ratio of two designated residues of the (unique) limit differential.

    Defaults to Res(first point of first node) / Res(second point of
    second node); for the symbolic two-node configuration in the minimal
    stratum this is exactly y/x.
    """
    if numerator_pole is None:
        numerator_pole = config.nodes[0][0]
    if denominator_pole is None:
        denominator_pole = config.nodes[1][1]
    num = omega.residue_at(numerator_pole)
    den = omega.residue_at(denominator_pole)
    if _is_zero(den):
        raise ZeroDivisionError("designated denominator residue is zero")
    return num / den


# --------------------------------------------------------------------------
# The two concrete configurations


def stratum2_config(x: Point = None, y: Point = None) -> NodalConfig:
    """Nodes (x, -x), (y, -y) and a double zero at infinity.

    With no arguments, x and y are the generators of Q(x, y): the vertical
    degeneration of an L-shaped surface, verified symbolically.
    """
    if x is None or y is None:
        if x is not None or y is not None:
            raise ValueError("pass both x and y or neither")
        _, x, y = symbolic_xy()
    return NodalConfig(
        nodes=((x, -x), (y, -y)),
        marked=(("omega_zero", INFINITY),),
        zero_orders={"omega_zero": 2},
        involution="negation",
    )


def stratum2_limit_differential(x: Point, y: Point) -> LimitDifferential:
    """The closed-form generator: residues (y, -y, -x, x) at (x, -x, y, -y)."""
    return LimitDifferential(((y, x), (-y, -x), (-x, y), (x, -y)))


def decagon_points(m: int = 10) -> tuple[CyclotomicElem, CyclotomicElem]:
    """The node coordinates exp(2*pi*i/5) and exp(4*pi*i/5) in Q(zeta_m)."""
    if m % 10:
        raise ValueError(f"conductor {m} does not contain the tenth roots of unity")
    return CyclotomicElem.zeta(m, 2 * (m // 10)), CyclotomicElem.zeta(m, 4 * (m // 10))


def decagon_config(x: Point = None, y: Point = None) -> NodalConfig:
    """Nodes (x, 1/x), (y, 1/y), simple zeros at 0 and infinity, Weierstrass
    limits at -1 and 1, hyperelliptic involution z -> 1/z.

    Defaults to the decagon values x = zeta_5, y = zeta_5^2.
    """
    if x is None or y is None:
        if x is not None or y is not None:
            raise ValueError("pass both x and y or neither")
        x, y = decagon_points()
    zero = x - x
    one = zero + 1
    return NodalConfig(
        nodes=((x, 1 / x), (y, 1 / y)),
        marked=(
            ("omega_zero_0", zero),
            ("omega_zero_inf", INFINITY),
            ("weierstrass_-1", zero - 1),
            ("weierstrass_+1", one),
        ),
        zero_orders={"omega_zero_0": 1, "omega_zero_inf": 1},
        involution="inversion",
    )


def decagon_limit_differential(x: Point, y: Point) -> LimitDifferential:
    """The closed-form generator with residues +-(y - 1/y) and +-(1/x - x)."""
    c = y - 1 / y
    d = 1 / x - x
    return LimitDifferential(((c, x), (-c, 1 / x), (d, y), (-d, 1 / y)))


# --------------------------------------------------------------------------
# Torsion well-definedness


@dataclass(frozen=True)
class TorsionSolution:
    """Solutions of (x-1)^N = (-x-1)^N with their tangent parametrization.

    ``solutions[i]`` equals i*tan(tangent_indices[i]*pi/N) exactly; the
    lists are sorted by index.  There are N solutions for odd N and N - 1
    for even N (indices A with -N/2 < A < N/2).
    """

    order: int
    solutions: tuple[CyclotomicElem, ...]
    tangent_indices: tuple[int, ...]


def _i_tan(m: int, n: int, a: int) -> CyclotomicElem:
    # i*tan(a*pi/n) = (w - 1)/(w + 1) for w = zeta_n^a; defined while w != -1.
    w = CyclotomicElem.zeta(m, (m // n) * (a % n))
    return (w - 1) / (w + 1)


def solve_torsion_pairs(order: int) -> TorsionSolution:
    """Solve (x-1)^N = (-x-1)^N exactly by brute force over roots of unity.

    Writing u = (x-1)/(x+1), the equation says u^N = (-1)^N, so u runs over
    N-th roots of unity (negated for odd N); u = 1 corresponds to the
    excluded solution at infinity, every other u gives x = (1+u)/(1-u).
    Each solution is verified against the defining equation and matched
    exactly to its i*tan(A*pi/N) form.
    """
    n = order
    if n < 2:
        raise ValueError(f"torsion order must be at least 2, got {n}")
    ambient = math.lcm(4, n)
    solutions = []
    for a in range(n):
        u = CyclotomicElem.zeta(ambient, (ambient // n) * a)
        if n % 2:
            u = -u
        if u == 1:
            continue
        x = (1 + u) / (1 - u)
        if (x - 1) ** n != (-x - 1) ** n:
            raise ArithmeticInconsistencyError(f"solution {x!r} fails the defining equation")
        solutions.append(x)
    if len({x.coeffs for x in solutions}) != len(solutions):
        raise ArithmeticInconsistencyError("duplicate torsion solutions")
    # Exact tangent matching in the field containing zeta_2N.
    m = math.lcm(4, 2 * n)
    lifted = {x.to_conductor(m).coeffs: i for i, x in enumerate(solutions)}
    amax = (n - 1) // 2
    indices: list[Optional[int]] = [None] * len(solutions)
    for a in range(-amax, amax + 1):
        key = _i_tan(m, n, a).coeffs
        if key not in lifted:
            raise ArithmeticInconsistencyError(f"i*tan({a}*pi/{n}) is not a solution")
        indices[lifted[key]] = a
    if any(i is None for i in indices):
        raise ArithmeticInconsistencyError("tangent parametrization misses a solution")
    order_by_index = sorted(range(len(solutions)), key=lambda i: indices[i])
    return TorsionSolution(
        order=n,
        solutions=tuple(solutions[i] for i in order_by_index),
        tangent_indices=tuple(indices[i] for i in order_by_index),
    )


# --------------------------------------------------------------------------
# The decagon analysis


def decagon_node_condition(j: int) -> bool:
    """Whether the node pair (z, 1/z) for z = zeta_10^j admits both
    z^5 = (1/z)^5 and (z+1)^5 = (1/z+1)^5."""
    if j % 10 in (0, 5):
        raise ValueError("node coordinates +-1 are excluded")
    p = CyclotomicElem.zeta(10, j)
    q = CyclotomicElem.zeta(10, -j)
    return p**5 == q**5 and (p + 1) ** 5 == (q + 1) ** 5


def decagon_admissible_assignments() -> tuple[set[tuple[int, int]], set[tuple[int, int]]]:
    """(accepted, expected) ordered assignments (j_x, j_y) of tenth-root
    exponents for the two nodes.

    Accepted means: both node pairs satisfy the fifth-power conditions
    and the pairs are disjoint.  Expected is the symmetry class of
    (zeta_5, zeta_5^2) under inverting either coordinate and swapping.
    """
    usable = [j for j in range(1, 10) if j != 5]
    passing = {j for j in usable if decagon_node_condition(j)}
    accepted = set()
    for jx in usable:
        for jy in usable:
            if {jx, (10 - jx) % 10} == {jy, (10 - jy) % 10}:
                continue
            if jx in passing and jy in passing:
                accepted.add((jx, jy))
    expected = {(a, b) for a in (2, 8) for b in (4, 6)} | {
        (a, b) for a in (4, 6) for b in (2, 8)
    }
    return accepted, expected


def decagon_verify() -> bool:
    """True iff the fifth-power conditions pin the nodes to the class of
    x = zeta_5, y = zeta_5^2 (up to inversion and swap) exactly."""
    accepted, expected = decagon_admissible_assignments()
    return accepted == expected


def _real_part(w: CyclotomicElem) -> CyclotomicElem:
    return (w + w.conjugate()) / 2


def _imag_part(w: CyclotomicElem, i_elem: CyclotomicElem) -> CyclotomicElem:
    return (w - w.conjugate()) * (-i_elem) / 2


def _ray_hits(p: CyclotomicElem, m: int) -> list[CyclotomicElem]:
    """All real r with p - r a positive real multiple of a tenth root of unity.

    For each direction d = zeta_10^k the condition p - r = t*d with real
    t > 0 determines t = Im(p)/Im(d) when Im(d) != 0; the two real
    directions (k = 0, 5) are impossible because p itself is not real
    (asserted, not assumed).
    """
    i_elem = CyclotomicElem.zeta(m, m // 4)
    if p.conjugate() == p:
        raise ArithmeticInconsistencyError(f"{p!r} is unexpectedly real")
    im_p = _imag_part(p, i_elem)
    re_p = _real_part(p)
    hits: list[CyclotomicElem] = []
    for k in range(10):
        d = CyclotomicElem.zeta(m, (m // 10) * k)
        im_d = _imag_part(d, i_elem)
        if im_d.is_zero():
            continue
        t = im_p / im_d
        s = sign_of_real(t)
        if s == 0:
            raise ArithmeticInconsistencyError("degenerate ray multiple t = 0")
        if s < 0:
            continue
        r = re_p - t * _real_part(d)
        if r.conjugate() != r:
            raise ArithmeticInconsistencyError(f"ray intersection {r!r} is not real")
        if not any(r == h for h in hits):
            hits.append(r)
    return hits


def decagon_r_sets() -> tuple[list[CyclotomicElem], list[CyclotomicElem], list[CyclotomicElem]]:
    """(R_x, R_y, R_x intersect R_y) for x = zeta_5, y = zeta_5^2 in Q(zeta_20).

    R_p is the set of real r such that p - r has argument a multiple of
    pi/5; each set is computed exactly direction by direction.
    """
    m = 20
    x, y = decagon_points(m)
    r_x = _ray_hits(x, m)
    r_y = _ray_hits(y, m)
    inter = [r for r in r_x if any(r == s for s in r_y)]
    return r_x, r_y, inter


def decagon_exclude_r() -> list[CyclotomicElem]:
    """The intersection R_x cap R_y, asserted to contain only -1 and 0.

    Both survivors are already accounted for: 0 is a zero of the limit
    differential and -1 a Weierstrass limit, so no new periodic point can
    degenerate to a real position.
    """
    _, _, inter = decagon_r_sets()
    allowed = (CyclotomicElem.from_rational(20, -1), CyclotomicElem.from_rational(20, 0))
    for r in inter:
        if not any(r == a for a in allowed):
            raise ArithmeticInconsistencyError(
                f"ray intersection produced an unexpected real position {r!r}"
            )
    return sorted(inter, key=lambda r: r.complex_embedding().real)
