"""
Divisor Classes on the Moduli of Curves
Coefficient vectors on M_g-bar and M_{g,n}-bar, test-curve pairings, slopes,
and the Brill-Noether and Weierstrass reference classes on M_{g,1}-bar.

Classes store their literal signed coefficients; b-accessors return the
negated, positive-style value. δ_{j:S} depends only on |S| and δ_{j:S} is
identified with δ_{g-j:S^c}.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from errors import (
    DegenerateDenominator,
    NonpositiveLambda,
    ParameterRange,
    SpaceMismatch,
    UnknownCoefficient,
    UnknownCurve,
    ZeroB0,
)
from grassmann import (
    barC1_lin_pairing,
    barC1_lin_pairing_closed,
    castelnuovo_rs,
    lin_one_total_ramification,
)
from models import CoefficientStatus
from numeric import binomial

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]
StratumKey = Tuple[int, int]


# Coefficients
@dataclass(frozen=True)
class Coefficient:
    """Signed coefficient; `bound` is a lower bound on the positive-style b = -value"""
    value: Optional[Fraction]
    status: CoefficientStatus = CoefficientStatus.EXACT
    bound: Optional[Fraction] = None

    @classmethod
    def exact(cls, value: Number) -> "Coefficient":
        return cls(Fraction(value))

    @classmethod
    def lower_bound(cls, bound: Number) -> "Coefficient":
        return cls(None, CoefficientStatus.LOWER_BOUND_ONLY, Fraction(bound))

    @classmethod
    def unknown(cls) -> "Coefficient":
        return cls(None, CoefficientStatus.UNKNOWN)

    @property
    def is_exact(self) -> bool:
        return self.status is CoefficientStatus.EXACT

    def require(self, label: str) -> Fraction:
        if not self.is_exact:
            raise UnknownCoefficient(f"{label} is {self.status.value}", {"coefficient": label, "status": self.status.value})
        return self.value


# M_g-bar
@dataclass(frozen=True)
class MgClass:
    """lam*λ + Σ delta[j]*δ_j, all times `scale`"""
    g: int
    lam: Fraction
    delta: Tuple[Coefficient, ...]
    scale: Fraction = Fraction(1)
    label: str = ""

    def __post_init__(self):
        if self.g < 2:
            raise ParameterRange(f"M_g-bar needs g >= 2 (got {self.g})", {"g": self.g})
        if len(self.delta) != self.g // 2 + 1:
            raise ParameterRange(f"expected {self.g // 2 + 1} boundary coefficients, got {len(self.delta)}")

    @classmethod
    def from_b(
        cls,
        g: int,
        a: Number,
        b: Mapping[int, Number],
        lower_bound: Optional[Number] = None,
        scale: Number = 1,
        label: str = "",
    ) -> "MgClass":
        """a*λ - Σ b_j δ_j; missing b_j are lower-bound-only when a bound is given, else unknown"""
        delta = []
        for j in range(g // 2 + 1):
            if j in b:
                delta.append(Coefficient.exact(-Fraction(b[j])))
            elif lower_bound is not None:
                delta.append(Coefficient.lower_bound(lower_bound))
            else:
                delta.append(Coefficient.unknown())
        return cls(g, Fraction(a), tuple(delta), Fraction(scale), label)

    @property
    def a(self) -> Fraction:
        return self.lam

    def b(self, j: int) -> Fraction:
        return -self.delta[j].require(f"delta_{j}")


# M_{g,n}-bar
def is_admissible(g: int, n: int, j: int, t: int) -> bool:
    """δ_{j:S} with |S| = t exists on M_{g,n}-bar"""
    if not (0 <= j <= g and 0 <= t <= n):
        return False
    if j == 0 and t < 2:
        return False
    if j == g and n - t < 2:
        return False
    return True


def canonical_stratum(g: int, n: int, j: int, t: int) -> StratumKey:
    return min((j, t), (g - j, n - t))


@dataclass(frozen=True)
class MgnClass:
    """lam*λ + psi*Σψ_i + d_irr*δ_irr + Σ d_jt[(j,t)] Σ_{|S|=t} δ_{j:S}, all times `scale`"""
    g: int
    n: int
    lam: Coefficient
    psi: Coefficient
    d_irr: Coefficient
    d_jt: Mapping[StratumKey, Coefficient] = field(default_factory=dict)
    scale: Fraction = Fraction(1)
    label: str = ""

    @classmethod
    def build(
        cls,
        g: int,
        n: int,
        lam: Union[Number, Coefficient],
        psi: Union[Number, Coefficient],
        d_irr: Union[Number, Coefficient],
        strata: Iterable[Tuple[StratumKey, Union[Number, Coefficient]]] = (),
        scale: Number = 1,
        label: str = "",
    ) -> "MgnClass":
        """Canonicalize stratum keys; the first entry given for a stratum wins"""
        if g < 0 or n < 0:
            raise ParameterRange(f"need g, n >= 0 (got g={g}, n={n})")
        table: Dict[StratumKey, Coefficient] = {}
        for (j, t), value in strata:
            if not is_admissible(g, n, j, t):
                raise ParameterRange(f"delta_{{{j}:{t}}} is not a boundary divisor of M_{{{g},{n}}}", {"j": j, "t": t})
            table.setdefault(canonical_stratum(g, n, j, t), _coefficient(value))
        return cls(g, n, _coefficient(lam), _coefficient(psi), _coefficient(d_irr), table, Fraction(scale), label)

    def delta(self, j: int, t: int) -> Coefficient:
        if not is_admissible(self.g, self.n, j, t):
            raise ParameterRange(f"delta_{{{j}:{t}}} is not a boundary divisor of M_{{{self.g},{self.n}}}", {"j": j, "t": t})
        return self.d_jt.get(canonical_stratum(self.g, self.n, j, t), Coefficient.unknown())

    def b(self, j: int, t: int) -> Fraction:
        return -self.delta(j, t).require(f"delta_{j}:{t}")

    def scaled(self, name: str) -> Fraction:
        """scale times one of lam, psi, d_irr"""
        return self.scale * getattr(self, name).require(name)


def _coefficient(value: Union[Number, Coefficient]) -> Coefficient:
    return value if isinstance(value, Coefficient) else Coefficient.exact(value)


# Test curves
class CurveKind(str, Enum):
    C0 = "C0"
    C1 = "C1"
    CJ = "Cj"
    R = "R"
    C0N = "C0n"
    RN = "Rn"
    CTILDE = "Ctilde_j"
    CBAR = "CbarJT"


_POINTED = {CurveKind.C0N, CurveKind.RN, CurveKind.CTILDE, CurveKind.CBAR}


@dataclass(frozen=True)
class TestCurve:
    kind: CurveKind
    g: int
    n: Optional[int] = None
    j: Optional[int] = None
    t: Optional[int] = None

    __test__ = False

    def __post_init__(self):
        kind, g, n, j, t = self.kind, self.g, self.n, self.j, self.t
        if kind in _POINTED and n is None:
            raise ParameterRange(f"{kind.value} lives on a pointed moduli space")
        if kind not in _POINTED and n is not None:
            raise ParameterRange(f"{kind.value} lives on M_g-bar")
        ok = g >= 2
        if kind is CurveKind.CJ:
            ok = ok and j is not None and 2 <= j <= g - 2
        elif kind is CurveKind.CTILDE:
            ok = ok and n == 1 and j is not None and 1 <= j <= g - 1
        elif kind is CurveKind.CBAR:
            ok = ok and j is not None and t is not None and 1 <= t <= n and 0 <= j <= g - 1
            ok = ok and is_admissible(g, n, j, t) and (t == 1 or is_admissible(g, n, j, t - 1))
        elif kind in (CurveKind.C0N, CurveKind.RN):
            ok = ok and n >= 1
        if not ok:
            raise ParameterRange(f"{kind.value} parameters out of range", {"g": g, "n": n, "j": j, "t": t})

    @property
    def pointed(self) -> bool:
        return self.kind in _POINTED


def _mg_table(curve: TestCurve) -> Dict[object, int]:
    g = curve.g
    if curve.kind is CurveKind.C0:
        return {0: -(2 * g - 2), 1: 1}
    if curve.kind is CurveKind.C1:
        return {1: -(2 * g - 4)}
    if curve.kind is CurveKind.CJ:
        return {min(curve.j, g - curve.j): -(2 * curve.j - 2)}
    if curve.kind is CurveKind.R:
        return {"lam": 1, 0: 12, 1: -1}
    raise UnknownCurve(f"no M_g-bar table for {curve.kind.value}")


def _mgn_table(curve: TestCurve) -> Dict[object, int]:
    g, n, j, t = curve.g, curve.n, curve.j, curve.t
    table: Dict[object, int] = {}

    def add(key, value):
        if isinstance(key, tuple):
            key = canonical_stratum(g, n, *key)
        table[key] = table.get(key, 0) + value

    if curve.kind is CurveKind.C0N:
        add("d_irr", -(2 * g - 2))
        add((1, 0), 1)
        add("psi", n)
    elif curve.kind is CurveKind.RN:
        add("lam", 1)
        add("d_irr", 12)
        add((1, 0), -1)
    elif curve.kind is CurveKind.CTILDE:
        add("psi", 1)
        add((g - j, 1), 1)
        add((j, 1), -(2 * j - 1))
    elif curve.kind is CurveKind.CBAR:
        add("psi", 2 * j + 2 * t - 3)
        if t >= 2:
            add((0, 2), t - 1)
        add((j, t), -1)
        add((j, t - 1), 1)
    else:
        raise UnknownCurve(f"no M_{{g,n}}-bar table for {curve.kind.value}")
    return table


def pair(curve: TestCurve, cls: Union[MgClass, MgnClass]) -> Fraction:
    """Intersection number of a test curve with a class"""
    if isinstance(cls, MgClass):
        if curve.pointed or curve.g != cls.g:
            raise SpaceMismatch(f"{curve.kind.value} on genus {curve.g} against a class on M_{cls.g}-bar")
        total = Fraction(0)
        for key, weight in _mg_table(curve).items():
            if key == "lam":
                total += weight * cls.lam
            else:
                total += weight * cls.delta[key].require(f"delta_{key}")
        return cls.scale * total

    if not curve.pointed or curve.g != cls.g or curve.n != cls.n:
        raise SpaceMismatch(
            f"{curve.kind.value} on (g={curve.g}, n={curve.n}) against a class on M_{{{cls.g},{cls.n}}}-bar"
        )
    total = Fraction(0)
    for key, weight in _mgn_table(curve).items():
        if weight == 0:
            continue
        if isinstance(key, tuple):
            total += weight * cls.delta(*key).require(f"delta_{key[0]}:{key[1]}")
        else:
            total += weight * getattr(cls, key).require(key)
    return cls.scale * total


# Slopes
@dataclass(frozen=True)
class SlopeResult:
    s_b0: Fraction
    s_min: Optional[Fraction]
    undefined_at: Optional[int] = None
    reason: Optional[str] = None


def slope(cls: MgClass) -> SlopeResult:
    """a/b_0 and a/min_j b_j; the latter only when every b_j is exact and positive"""
    if cls.lam <= 0:
        raise NonpositiveLambda(f"lambda coefficient {cls.lam} is not positive", {"lambda": str(cls.lam)})
    b0 = cls.b(0)
    if b0 == 0:
        raise ZeroB0("b_0 vanishes")
    s_b0 = cls.lam / b0
    bs = []
    for j, coefficient in enumerate(cls.delta):
        if not coefficient.is_exact:
            return SlopeResult(s_b0, None, j, coefficient.status.value)
        if -coefficient.value <= 0:
            return SlopeResult(s_b0, None, j, "nonpositive")
        bs.append(-coefficient.value)
    return SlopeResult(s_b0, cls.lam / min(bs))


# Reference classes on M_{g,1}-bar
def _check_pointed_genus(g: int) -> None:
    if g < 2:
        raise ParameterRange(f"need g >= 2 (got {g})", {"g": g})


def bn_class(g: int) -> MgnClass:
    """(g+3)λ - (g+1)/6 δ_irr - Σ j(g-j) δ_{j:1}"""
    _check_pointed_genus(g)
    return MgnClass.build(
        g, 1, g + 3, 0, Fraction(-(g + 1), 6),
        (((j, 1), -j * (g - j)) for j in range(1, g)),
        label="BN",
    )


def w_class(g: int) -> MgnClass:
    """Weierstrass divisor -λ + C(g+1,2)ψ - Σ C(g-j+1,2) δ_{j:1}"""
    _check_pointed_genus(g)
    return MgnClass.build(
        g, 1, -1, binomial(g + 1, 2), 0,
        (((j, 1), -binomial(g - j + 1, 2)) for j in range(1, g)),
        label="W",
    )


def combine(terms: Iterable[Tuple[Number, MgnClass]], label: str = "") -> MgnClass:
    """Exact linear combination of fully exact classes on one space"""
    terms = list(terms)
    g, n = terms[0][1].g, terms[0][1].n
    lam = psi = d_irr = Fraction(0)
    strata: Dict[StratumKey, Fraction] = {}
    for weight, cls in terms:
        if (cls.g, cls.n) != (g, n):
            raise SpaceMismatch("classes on different moduli spaces")
        factor = Fraction(weight) * cls.scale
        lam += factor * cls.lam.require("lam")
        psi += factor * cls.psi.require("psi")
        d_irr += factor * cls.d_irr.require("d_irr")
        for key, coefficient in cls.d_jt.items():
            strata[key] = strata.get(key, Fraction(0)) + factor * coefficient.require(f"delta_{key}")
    return MgnClass.build(g, n, lam, psi, d_irr, strata.items(), label=label)


@dataclass(frozen=True)
class LinOneClass:
    """Lin(1) = μ BN + ν W per Castelnuovo number, with the pointed-count normalization"""
    r: int
    s: int
    mu: Fraction
    nu: Fraction
    cls: MgnClass
    mu_pointed: Fraction
    nu_pointed: Fraction
    n_castelnuovo: int

    @property
    def consistent(self) -> bool:
        return self.mu_pointed == self.n_castelnuovo * self.mu and self.nu_pointed == self.n_castelnuovo * self.nu


def lin_one_class(r: int, s: int) -> LinOneClass:
    if r < 1 or s < 1:
        raise ParameterRange(f"need r, s >= 1 (got r={r}, s={s})", {"r": r, "s": s})
    g, d = r * s + s, r * s + r
    if (g - 2) * (g - 1) * (g + 1) == 0:
        raise DegenerateDenominator(f"rs+s-2 = 0 at r={r}, s={s}", {"r": r, "s": s})
    nu = Fraction(r * (r + 2), (g - 1) * (g + 1))
    mu = Fraction(r * (r + 1) * (r + 2) * (s - 1) * (s + 1) * (g + 4), 2 * (s + r + 1) * (g - 2) * (g - 1) * (g + 1))

    n = castelnuovo_rs(r, s)
    nu_pointed = Fraction(lin_one_total_ramification(g, r, d), (g - 1) * g * (g + 1))
    elliptic_tail = barC1_lin_pairing(r, s) if r >= 2 else barC1_lin_pairing_closed(r, s)
    mu_pointed = (Fraction(elliptic_tail, 2 * g - 4) - binomial(g, 2) * nu_pointed) / (g - 1)

    result = LinOneClass(r, s, mu, nu, combine([(mu, bn_class(g)), (nu, w_class(g))], label="Lin(1)"), mu_pointed, nu_pointed, n)
    if not result.consistent:
        logger.warning(f"lin_one_class(r={r}, s={s}): pointed normalization differs from N*(mu, nu)")
    return result


# Khosla boundary coefficients through the pointed test curve
@dataclass(frozen=True)
class KhoslaBj:
    s: int
    j: int
    via_pairing: Fraction
    closed: Fraction
    literal: Fraction

    @property
    def agrees(self) -> bool:
        return self.via_pairing == self.closed


def khosla_bj_range(s: int) -> range:
    g = s * (2 * s + 1)
    return range(max(2, (g + 1) // 2), s * (2 * s - 1) + 1)


def khosla_bj_closed(s: int, j: int) -> Fraction:
    return Fraction(
        4 * (s - 1) * j * (2 * j * s**3 + j * s**2 - 2 * j * s - 2 * j + 4 * s**3 + 4 * s**2 - 3 * s) * (2 * s**2 + s - j),
        (2 * s**2 + s - 2) * (3 * s + 1) * (2 * s - 1) * (j - 1),
    )


def khosla_bj_via_pairing(s: int, j: int) -> KhoslaBj:
    """B_j per c_r from the pairing of C~_j with Lin(1)"""
    if s < 2 or j not in khosla_bj_range(s):
        raise ParameterRange(f"j={j} outside the Khosla range for s={s}", {"s": s, "j": j})
    g = s * (2 * s + 1)
    lin_one = lin_one_class(2 * s, s)
    paired = pair(TestCurve(CurveKind.CTILDE, g, n=1, j=j), lin_one.cls)
    literal = Fraction(s - 1, j - 1) * paired
    return KhoslaBj(s, j, literal / s, khosla_bj_closed(s, j), literal)


# Pointed-class completions
def complete_from_pencil(cls: MgnClass) -> MgnClass:
    """Fill δ_{1:∅} from Rn·cls = 0 when λ and δ_irr are exact"""
    lam = cls.lam.require("lam")
    d_irr = cls.d_irr.require("d_irr")
    value = lam + 12 * d_irr
    key = canonical_stratum(cls.g, cls.n, 1, 0)
    strata = dict(cls.d_jt)
    strata[key] = Coefficient.exact(value)
    return MgnClass(cls.g, cls.n, cls.lam, cls.psi, cls.d_irr, strata, cls.scale, cls.label)


def symmetrized_pullback(cls: MgnClass, k: int) -> MgnClass:
    """
    Average of the pullbacks along all forgetful maps M_{g,n+k} -> M_{g,n}.
    Keeps λ, δ_irr, Σψ and the two-point δ_{0:2}; other strata are unknown.
    """
    if k < 1:
        raise ParameterRange(f"k must be positive (got {k})", {"k": k})
    n = cls.n
    total = binomial(n + k, k)
    psi = cls.psi.require("psi")
    d02 = cls.delta(0, 2).require("delta_0:2")
    pulled_d02 = Fraction(binomial(n + k - 2, k) * d02 - 2 * binomial(n + k - 2, k - 1) * psi, total)
    return MgnClass.build(
        cls.g, n + k, cls.lam, Fraction(psi * n, n + k), cls.d_irr,
        [((0, 2), pulled_d02)],
        scale=cls.scale, label=f"{cls.label} pulled back",
    )


@dataclass(frozen=True)
class PointedLinCheck:
    r: int
    s: int
    lam_from_bn_w: Fraction
    lam_from_class: Fraction
    irr_from_bn_w: Fraction
    irr_from_class: Fraction

    @property
    def agrees(self) -> bool:
        return self.lam_from_bn_w == self.lam_from_class and self.irr_from_bn_w == self.irr_from_class


def pointed_lin_via_bn_w(r: int, s: int) -> PointedLinCheck:
    """λ and b_irr of Lin from N(μ BN + ν W) against the printed class"""
    from formulas import lin_class

    lin_one = lin_one_class(r, s)
    g = r * s + s
    n = lin_one.n_castelnuovo
    lin = lin_class(r, s)
    return PointedLinCheck(
        r, s,
        lam_from_bn_w=n * (lin_one.mu * (g + 3) - lin_one.nu),
        lam_from_class=lin.scaled("lam"),
        irr_from_bn_w=n * lin_one.mu * (g + 1) / 6,
        irr_from_class=-lin.scaled("d_irr"),
    )
