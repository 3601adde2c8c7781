"""
Brill-Noether Intersection Numbers
Chern numbers on W^r_d(C) for a general curve C of genus rs+s-1 via the
Harris-Tu determinant, the ring H*(C x Pic^d(C)) generated by eta, gamma, theta
and the Chern classes c_i = c_i(E^dual), and the intersection chains that
produce the Koszul and Gieseker-Petri divisor coefficients.

Normalization: theta^(g-1) integrates to (g-1)! over Pic^d(C) and
eta * Q over C x W integrates to the integral of Q over W.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Literal, Tuple, Union

from combinat import Partition, elementary_to_monomials
from errors import DegreeMismatch, ParameterRange
from numeric import binomial, determinant, factorial, inv_factorial_or_zero, solve_linear
from grassmann import castelnuovo_rs

logger = logging.getLogger(__name__)

# (eta exponent, gamma exponent, theta exponent, Chern indices in decreasing order)
Monomial = Tuple[int, int, int, Tuple[int, ...]]
Number = Union[int, Fraction]


@dataclass(frozen=True)
class BNSetup:
    """W^r_d(C) with C of genus rs+s-1 and d = rs+r, so dim W = r"""
    r: int
    s: int

    def __post_init__(self):
        if self.r < 1 or self.s < 1:
            raise ParameterRange(f"BNSetup needs r, s >= 1 (got r={self.r}, s={self.s})", {"r": self.r, "s": self.s})

    @property
    def g_curve(self) -> int:
        return self.r * self.s + self.s - 1

    @property
    def genus(self) -> int:
        """Genus of the curves in the divisor computation, one more than g_curve"""
        return self.r * self.s + self.s

    @property
    def d(self) -> int:
        return self.r * self.s + self.r

    @property
    def dim_w(self) -> int:
        return self.g_curve - (self.r + 1) * (self.g_curve - self.d + self.r)

    @property
    def h(self) -> int:
        """h^1 of the general L in W, equal to s - 1"""
        return self.g_curve + self.r - self.d

    @property
    def theta_top(self) -> int:
        return self.g_curve


class CPicElement:
    """Polynomial in eta, gamma, theta, c_i reduced by eta^2 = gamma*eta = 0, gamma^2 = -2*eta*theta"""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, Number] = None):
        reduced: Dict[Monomial, Fraction] = defaultdict(Fraction)
        for key, coefficient in (terms or {}).items():
            normal = _normal_form(key, Fraction(coefficient))
            if normal is not None:
                reduced[normal[0]] += normal[1]
        self.terms: Dict[Monomial, Fraction] = {k: v for k, v in sorted(reduced.items()) if v != 0}

    # Generators
    @classmethod
    def constant(cls, value: Number) -> "CPicElement":
        return cls({(0, 0, 0, ()): value})

    @classmethod
    def one(cls) -> "CPicElement":
        return cls.constant(1)

    @classmethod
    def eta(cls) -> "CPicElement":
        return cls({(1, 0, 0, ()): 1})

    @classmethod
    def gamma(cls) -> "CPicElement":
        return cls({(0, 1, 0, ()): 1})

    @classmethod
    def theta(cls) -> "CPicElement":
        return cls({(0, 0, 1, ()): 1})

    @classmethod
    def chern(cls, i: int) -> "CPicElement":
        if i < 0:
            return cls()
        if i == 0:
            return cls.one()
        return cls({(0, 0, 0, (i,)): 1})

    # Arithmetic
    def __add__(self, other: Union["CPicElement", Number]) -> "CPicElement":
        other = _lift(other)
        merged: Dict[Monomial, Fraction] = defaultdict(Fraction)
        for source in (self.terms, other.terms):
            for key, value in source.items():
                merged[key] += value
        return CPicElement(merged)

    __radd__ = __add__

    def __neg__(self) -> "CPicElement":
        return CPicElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: Union["CPicElement", Number]) -> "CPicElement":
        return self + (-_lift(other))

    def __rsub__(self, other: Number) -> "CPicElement":
        return _lift(other) - self

    def __mul__(self, other: Union["CPicElement", Number]) -> "CPicElement":
        return cpic_multiply(self, _lift(other))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CPicElement.constant(other)
        return isinstance(other, CPicElement) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "CPicElement(0)"
        return "CPicElement(" + " + ".join(f"{v}*{_monomial_name(k)}" for k, v in self.terms.items()) + ")"

    def reduce(self) -> "CPicElement":
        return CPicElement(self.terms)


def _lift(value: Union[CPicElement, Number]) -> CPicElement:
    return value if isinstance(value, CPicElement) else CPicElement.constant(value)


def _normal_form(key: Monomial, coefficient: Fraction):
    e, c, t, chern = key
    if c >= 3:
        return None
    if c == 2:
        e, c, t, coefficient = e + 1, 0, t + 1, -2 * coefficient
    if e >= 2 or (e >= 1 and c >= 1):
        return None
    chern = tuple(sorted((i for i in chern if i != 0), reverse=True))
    return (e, c, t, chern), coefficient


def _monomial_name(key: Monomial) -> str:
    e, c, t, chern = key
    parts = (["eta"] if e else []) + (["gamma"] if c else []) + ([f"theta^{t}"] if t else [])
    parts += [f"c{i}" for i in chern]
    return "*".join(parts) or "1"


def cpic_multiply(a: CPicElement, b: CPicElement) -> CPicElement:
    product: Dict[Monomial, Fraction] = defaultdict(Fraction)
    for (e1, c1, t1, m1), x in a.terms.items():
        for (e2, c2, t2, m2), y in b.terms.items():
            product[(e1 + e2, c1 + c2, t1 + t2, m1 + m2)] += x * y
    return CPicElement(product)


# Harris-Tu evaluation
@lru_cache(maxsize=65536)
def _harris_tu(exponents: Tuple[int, ...], h: int) -> Fraction:
    n = len(exponents)
    matrix = [[inv_factorial_or_zero(h + exponents[j] - (j + 1) + (l + 1)) for l in range(n)] for j in range(n)]
    return determinant(matrix)


def harris_tu_monomial(exponents: Tuple[int, ...], setup: BNSetup) -> Tuple[int, Fraction]:
    """x^I * [W] = det(1/(h + i_j - j + l)!) * theta^degree, returned as (degree, determinant)"""
    if len(exponents) != setup.r + 1:
        raise ParameterRange(f"expected {setup.r + 1} exponents, got {len(exponents)}")
    degree = (setup.r + 1) * setup.h + sum(exponents)
    return degree, _harris_tu(tuple(exponents), setup.h)


def _w_degree(key: Monomial) -> int:
    e, c, t, chern = key
    return e + c + t + sum(chern)


def chern_number(poly: CPicElement, setup: BNSetup) -> Fraction:
    """Integral over W^r_d(C) of a polynomial in theta and the c_i"""
    total = Fraction(0)
    variables = setup.r + 1
    for key, coefficient in poly.terms.items():
        e, c, t, chern = key
        if e or c:
            raise DegreeMismatch(f"{_monomial_name(key)} is not a class on W", {"term": _monomial_name(key)})
        if _w_degree(key) != setup.dim_w:
            raise DegreeMismatch(
                f"{_monomial_name(key)} has degree {_w_degree(key)}, W has dimension {setup.dim_w}",
                {"term": _monomial_name(key), "dim": setup.dim_w},
            )
        if any(i > variables for i in chern):
            continue
        value = Fraction(0)
        for exponents, count in elementary_to_monomials(Partition(chern), variables).items():
            degree, det = harris_tu_monomial(exponents, setup)
            if degree + t != setup.theta_top:
                raise DegreeMismatch(f"theta degree {degree + t} != {setup.theta_top}")
            value += count * det
        total += coefficient * value
    return total * factorial(setup.theta_top)


def integrate_cw(poly: CPicElement, setup: BNSetup) -> Fraction:
    """Integral over C x W; only eta-terms survive and eta consumes the curve direction"""
    total = Fraction(0)
    for key, coefficient in poly.terms.items():
        if _w_degree(key) != setup.dim_w + 1:
            raise DegreeMismatch(
                f"{_monomial_name(key)} has degree {_w_degree(key)}, C x W has dimension {setup.dim_w + 1}",
                {"term": _monomial_name(key)},
            )
        e, c, t, chern = key
        if e == 1:
            total += coefficient * chern_number(CPicElement({(0, 0, t, chern): 1}), setup)
    return total


# Vandermonde lemma
@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def status(self) -> str:
        if self.lhs == self.rhs:
            return "inconclusive" if self.lhs == 0 else "pass"
        return "fail"


@dataclass(frozen=True)
class VandermondeReport:
    setup: BNSetup
    checks: List[IdentityCheck]

    @property
    def passed(self) -> bool:
        return all(check.status != "fail" for check in self.checks)


def lemma_values(setup: BNSetup) -> Dict[str, Fraction]:
    """Ratios of the degree-r Chern numbers to c_r"""
    r, s = setup.r, setup.s
    return {
        "theta*c[r-1]": Fraction(r * (s + 1), 2),
        "theta^2*c[r-2]": Fraction(r * (r - 1) * (s + 1) * (s + 2), 6),
        "theta*c1*c[r-2]": Fraction(r * (s + 1), 2) * (1 + Fraction((r - 2) * (r + 2) * (s + 2), 3 * (s + r + 1))),
        "c1*c[r-1]": 1 + Fraction((r - 1) * (r + 2) * (s + 1), 2 * (s + r + 1)),
    }


def verify_vandermonde(setup: BNSetup) -> VandermondeReport:
    r = setup.r
    if r < 2:
        raise ParameterRange(f"the Vandermonde identities need r >= 2 (got {r})", {"r": r})
    theta, c = CPicElement.theta(), CPicElement.chern
    top = chern_number(c(r), setup)
    ratios = lemma_values(setup)
    checks = [
        IdentityCheck("theta*c[r-1]", chern_number(theta * c(r - 1), setup), ratios["theta*c[r-1]"] * top),
        IdentityCheck("theta^2*c[r-2]", chern_number(theta * theta * c(r - 2), setup), ratios["theta^2*c[r-2]"] * top),
        IdentityCheck("theta*c1*c[r-2]", chern_number(theta * c(1) * c(r - 2), setup), ratios["theta*c1*c[r-2]"] * top),
        IdentityCheck("c1*c[r-1]", chern_number(c(1) * c(r - 1), setup), ratios["c1*c[r-1]"] * top),
        IdentityCheck("c[r]", top, Fraction(castelnuovo_rs(r, setup.s))),
    ]
    for check in checks:
        logger.debug(f"vandermonde r={setup.r} s={setup.s} {check.name}: {check.status}")
    return VandermondeReport(setup, checks)


# Classes of the ramification loci X and Y in C x W
def _canonical_weight(setup: BNSetup) -> int:
    return 2 * setup.d + 2 * setup.genus - 4


def _require_r2(setup: BNSetup) -> None:
    if setup.r < 2:
        raise ParameterRange(f"the loci X and Y need r >= 2 (got {setup.r})", {"r": setup.r})


def class_X(setup: BNSetup) -> CPicElement:
    """Pairs (y, L) with L ramified at y to order two or more"""
    _require_r2(setup)
    eta, gamma, theta, c = CPicElement.eta(), CPicElement.gamma(), CPicElement.theta(), CPicElement.chern
    r = setup.r
    return c(r) + c(r - 1) * (2 * gamma + _canonical_weight(setup) * eta) - 6 * c(r - 2) * eta * theta


def class_Y(setup: BNSetup) -> CPicElement:
    """Pairs (y, L) with h^0(L(-2y)) >= r, the cusp locus on the elliptic-tail side"""
    _require_r2(setup)
    eta, gamma, theta, c = CPicElement.eta(), CPicElement.gamma(), CPicElement.theta(), CPicElement.chern
    r = setup.r
    return c(r) + c(r - 1) * (gamma + (setup.d - 1) * eta) - 2 * c(r - 2) * eta * theta


def g0b_restriction(b: int, which: Literal["X", "Y"], setup: BNSetup) -> CPicElement:
    """c_1 of H^0(L^b) along X or Y; b = 1 is the tautological bundle itself"""
    if b < 1:
        raise ParameterRange(f"b must be positive (got {b})", {"b": b})
    if which not in ("X", "Y"):
        raise ParameterRange(f"unknown locus {which!r}")
    if b == 1:
        return -CPicElement.chern(1)
    eta, gamma, theta = CPicElement.eta(), CPicElement.gamma(), CPicElement.theta()
    if which == "X":
        return -(b * b) * theta - (2 * setup.genus - 4) * eta - b * (setup.d * eta + gamma)
    return -(b * b) * theta + eta


# Koszul divisor coefficients
@dataclass(frozen=True)
class KoszulCoefficients:
    s: int
    i: int
    A: Fraction
    B0: Fraction
    B1: Fraction

    @property
    def slope(self) -> Fraction:
        return self.A / self.B0


@lru_cache(maxsize=None)
def koszul_ABB(s: int, i: int) -> KoszulCoefficients:
    """Solve the C^0, C^1, R test-curve system for (A, B0, B1) from the Harris-Tu chain"""
    if s < 1 or i < 0:
        raise ParameterRange(f"need s >= 1, i >= 0 (got s={s}, i={i})", {"s": s, "i": i})
    r = 2 * s + s * i + i
    setup = BNSetup(r, s)
    g, d = setup.genus, setup.d

    kappa = Fraction(0)
    along = {"X": CPicElement(), "Y": CPicElement()}
    for l in range(i + 1):
        sign = -1 if l % 2 else 1
        kappa += sign * ((l + 2) * d + 1 - g) * binomial(r, i - l - 1)
        for which in along:
            along[which] = along[which] + sign * binomial(r + 1, i - l) * g0b_restriction(l + 2, which, setup)
    kappa -= binomial(r, i) * (s + 1) * (i + 2)
    c1 = CPicElement.chern(1)

    on_x = integrate_cw((along["X"] - kappa * c1) * class_X(setup), setup)
    on_y = integrate_cw((along["Y"] - kappa * c1) * class_Y(setup), setup)
    A, B0, B1 = solve_linear(
        [[0, 0, 2 * g - 4], [0, 2 * g - 2, -1], [1, -12, 1]],
        [on_x, on_y, 0],
    )
    logger.info(f"koszul_ABB(s={s}, i={i}): r={r}, A/B0 = {A / B0}")
    return KoszulCoefficients(s, i, A, B0, B1)


# Gieseker-Petri divisor coefficients
def _gp_setup(r: int, s: int) -> BNSetup:
    if r < 2 or s < 2:
        raise ParameterRange(f"the Gieseker-Petri chains need r, s >= 2 (got r={r}, s={s})", {"r": r, "s": s})
    return BNSetup(r, s)


def _petri_twist(setup: BNSetup) -> CPicElement:
    # (r+1)(theta - c1) + s*c1
    r, s = setup.r, setup.s
    return (r + 1) * CPicElement.theta() - (r + 1 - s) * CPicElement.chern(1)


def gp_b1(r: int, s: int) -> Fraction:
    setup = _gp_setup(r, s)
    g, d = setup.genus, setup.d
    eta, theta, c = CPicElement.eta(), CPicElement.theta(), CPicElement.chern
    chain = (
        -(2 * g - 4) * c(r) * eta
        + _petri_twist(setup) * class_X(setup)
        + (r + 1) * ((2 * d + 2 * g - 4) * c(r) * eta - 6 * eta * theta * c(r - 1))
    )
    return integrate_cw(chain, setup) / (2 * g - 4)


def gp_b0(r: int, s: int) -> Fraction:
    setup = _gp_setup(r, s)
    g, d = setup.genus, setup.d
    eta, theta, c = CPicElement.eta(), CPicElement.theta(), CPicElement.chern
    chain = (
        c(r) * eta
        + _petri_twist(setup) * class_Y(setup)
        + (r + 1) * (c(r) * (d - 1) - 2 * c(r - 1) * theta) * eta
    )
    return (integrate_cw(chain, setup) + gp_b1(r, s)) / (2 * g - 2)


def gp_b1_closed(r: int, s: int) -> Fraction:
    n = castelnuovo_rs(r, s)
    return Fraction(
        n * r * (s - 1) * (3 * r * s**2 + 2 * s**2 + r**2 * s**2 + 7 * s + 6 * r * s + r**2 * s + 2 * r + 2),
        (s + r + 1) * (r * s + s - 2),
    )


def gp_b0_closed(r: int, s: int) -> Fraction:
    n = castelnuovo_rs(r, s)
    return Fraction(
        n * r * (r + 1) * (r + 2) * (s - 1) * s * (s + 1) * (r * s + s + 4),
        6 * (r + s + 1) * (r * s + s - 2) * (r * s + s - 1),
    )


@dataclass(frozen=True)
class ChainReport:
    r: int
    s: int
    b0_chain: Fraction
    b0_closed: Fraction
    b1_chain: Fraction
    b1_closed: Fraction

    @property
    def agrees(self) -> bool:
        return self.b0_chain == self.b0_closed and self.b1_chain == self.b1_closed


def gp_chain_report(r: int, s: int) -> ChainReport:
    return ChainReport(r, s, gp_b0(r, s), gp_b0_closed(r, s), gp_b1(r, s), gp_b1_closed(r, s))
