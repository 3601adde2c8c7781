"""
Slope Command
Evaluate one divisor-class family at a single parameter point.
"""

import argparse
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

from config import get_settings
from errors import EXIT_OK, ParameterRange, SlopeEngineError
from formulas import (
    KoszulSetup,
    gp_class,
    gp_slope,
    harris_morrison_bound,
    khosla_b0,
    khosla_class,
    koszul_slope,
    lin_class,
    logan_check,
    mrc_c0n_check,
    mrc_class,
    nfold_bn_w_check,
    nfold_class,
    pointed2_check,
    rank_identity_check,
    syz_class,
    wahl_class,
)
from grassmann import castelnuovo_rs
from models import OutputRecord, ValueRecord
from moduli import Coefficient, MgnClass, khosla_bj_range, pointed_lin_via_bn_w, slope

logger = logging.getLogger(__name__)

PARAMETER_KEYS = ("s", "i", "r", "g", "n", "j", "t")


@dataclass
class FamilyResult:
    derived: Dict[str, int] = field(default_factory=dict)
    values: List[Tuple[str, Coefficient]] = field(default_factory=list)
    flags: Dict[str, bool] = field(default_factory=dict)

    def add(self, name: str, value) -> None:
        self.values.append((name, Coefficient.exact(value)))

    def add_coefficient(self, name: str, coefficient: Coefficient, negate: bool = False) -> None:
        if negate and coefficient.is_exact:
            coefficient = Coefficient.exact(-coefficient.value)
        self.values.append((name, coefficient))

    def add_pointed(self, cls: MgnClass) -> None:
        """Prefactor, the bracketed λ, ψ, δ_irr and the positive-style b_{j:t}"""
        self.add("prefactor", cls.scale)
        self.add_coefficient("lambda", cls.lam)
        self.add_coefficient("psi", cls.psi)
        self.add_coefficient("delta_irr", cls.d_irr)
        for (j, t), coefficient in sorted(cls.d_jt.items()):
            self.add_coefficient(f"b_{j}:{t}", coefficient, negate=True)


@dataclass(frozen=True)
class Family:
    name: str
    params: Tuple[str, ...]
    derived: Tuple[str, ...]
    headline: Tuple[str, ...]
    flags: Tuple[str, ...]
    evaluate: Callable[..., FamilyResult]
    description: str


# Family evaluators
def _koszul(s: int, i: int) -> FamilyResult:
    setup = KoszulSetup(s, i)
    result = FamilyResult({"g": setup.g, "r": setup.r, "d": setup.d})
    value = koszul_slope(s, i)
    bound = harris_morrison_bound(setup.g)
    result.add("slope", value)
    result.add("bound", bound)
    result.flags["bound_ok"] = 6 < value < bound
    result.flags["rank_identity"] = rank_identity_check(s, i)
    return result


def _khosla(s: int) -> FamilyResult:
    cls = khosla_class(s)
    g = cls.g
    result = FamilyResult({"g": g, "r": 2 * s, "d": 2 * s * s + 2 * s})
    value = slope(cls).s_b0
    result.add("slope", value)
    result.add("a", cls.a)
    for j in range(g // 2 + 1):
        result.add_coefficient(f"b_{j}", cls.delta[j], negate=True)
    b0 = khosla_b0(s)
    result.flags["bound_ok"] = 6 < value < harris_morrison_bound(g)
    result.flags["b_j_ge_b_0"] = all(cls.b(min(j, g - j)) >= b0 for j in khosla_bj_range(s))
    return result


def _gp(r: int, s: int) -> FamilyResult:
    cls = gp_class(r, s)
    g = cls.g
    result = FamilyResult({"g": g, "d": r * s + r})
    value = gp_slope(r, s)
    result.add("slope", value)
    result.add("prefactor", cls.scale)
    result.add("a", cls.a)
    result.add("b_0", cls.b(0))
    result.add("b_1", cls.b(1))
    if g >= 4:
        result.add_coefficient("b_j", cls.delta[2])
    result.flags["slope_identity"] = slope(cls).s_b0 == value
    result.flags["slope_ge_bound"] = value >= harris_morrison_bound(g)
    return result


def _lin(r: int, s: int) -> FamilyResult:
    cls = lin_class(r, s)
    result = FamilyResult({"g": cls.g, "d": r * s + r, "n": cls.n, "N": castelnuovo_rs(r, s)})
    result.add_pointed(cls)
    result.flags["bn_w"] = pointed_lin_via_bn_w(r, s).agrees
    if s == 1:
        result.flags["logan"] = logan_check(r).passed
    if s == 2:
        result.flags["pointed2"] = pointed2_check(r).passed
    return result


def _mrc(g: int, r: int, i: int) -> FamilyResult:
    cls = mrc_class(g, r, i)
    result = FamilyResult({"n": cls.n})
    result.add("prefactor", cls.scale)
    result.add_coefficient("lambda", cls.lam)
    result.add_coefficient("psi", cls.psi)
    result.add_coefficient("delta_irr", cls.d_irr)
    for t in range(2, cls.n + 1):
        result.add(f"b_0:{t}", cls.b(0, t))
    result.flags["c0n"] = mrc_c0n_check(g, r, i).agrees
    return result


def _nfold(g: int, n: int) -> FamilyResult:
    cls = nfold_class(g, n)
    result = FamilyResult({"d": (g + n) // 2})
    result.add_pointed(cls)
    result.flags["bn_w"] = nfold_bn_w_check(g, n).passed
    return result


def _syz(g: int, i: int) -> FamilyResult:
    n, cls = syz_class(g, i)
    result = FamilyResult({"n": n})
    result.add_pointed(cls)
    return result


def _wahl(g: int) -> FamilyResult:
    n, cls = wahl_class(g)
    result = FamilyResult({"n": n})
    result.add_pointed(cls)
    return result


_POINTED_HEADLINE = ("prefactor", "lambda", "psi", "delta_irr")

FAMILIES: Dict[str, Family] = {
    family.name: family
    for family in (
        Family("koszul", ("s", "i"), ("g", "r", "d"), ("slope", "bound"), ("bound_ok", "rank_identity"),
               _koszul, "Koszul divisor on M_g-bar, g = rs+s, r = 2s+si+i"),
        Family("khosla", ("s",), ("g", "r", "d"), ("slope", "a", "b_0", "b_1"), ("bound_ok", "b_j_ge_b_0"),
               _khosla, "Khosla divisor on M_g-bar, g = s(2s+1)"),
        Family("gp", ("r", "s"), ("g", "d"), ("slope", "prefactor", "a", "b_0", "b_1"),
               ("slope_identity", "slope_ge_bound"), _gp, "Gieseker-Petri divisor on M_g-bar, g = rs+s"),
        Family("lin", ("r", "s"), ("g", "d", "n", "N"), _POINTED_HEADLINE + ("b_0:2",),
               ("bn_w", "logan", "pointed2"), _lin, "pointed Brill-Noether divisor on M_{g,r+1}-bar"),
        Family("mrc", ("g", "r", "i"), ("n",), _POINTED_HEADLINE + ("b_0:2",), ("c0n",),
               _mrc, "minimal resolution divisor on M_{g,n}-bar, n = (2r+1)(g-1)-2i"),
        Family("nfold", ("g", "n"), ("d",), _POINTED_HEADLINE + ("b_0:2",), ("bn_w",),
               _nfold, "n-fold points divisor on M_{g,n}-bar, d = (g+n)/2"),
        Family("syz", ("g", "i"), ("n",), _POINTED_HEADLINE, (), _syz, "pointed syzygy divisor on M_{g,n}-bar"),
        Family("wahl", ("g",), ("n",), _POINTED_HEADLINE, (), _wahl, "Gauss-Wahl divisor on M_{g,n}-bar"),
    )
}


def get_family(name: str) -> Family:
    family = FAMILIES.get(name)
    if family is None:
        raise ParameterRange(f"unknown family {name!r}", {"families": sorted(FAMILIES)})
    return family


def check_digits(digits: int) -> int:
    if not 1 <= digits <= 30:
        raise ParameterRange(f"digits must lie in 1..30 (got {digits})", {"digits": digits})
    return digits


def evaluate_family(name: str, parameters: Dict[str, int], digits: int = 12) -> OutputRecord:
    """One record for one point; raises on invalid parameters"""
    family = get_family(name)
    missing = [key for key in family.params if key not in parameters]
    extra = sorted(set(parameters) - set(family.params))
    if missing or extra:
        raise ParameterRange(
            f"{name} takes {', '.join(family.params)}",
            {"missing": missing, "unexpected": extra},
        )
    result = family.evaluate(**{key: parameters[key] for key in family.params})
    merged = {key: parameters[key] for key in family.params}
    merged.update(result.derived)
    values = [ValueRecord.of(label, c.value, c.status, c.bound, digits) for label, c in result.values]
    return OutputRecord(family=name, parameters=merged, values=values, flags=result.flags)


def evaluate_point(name: str, parameters: Dict[str, int], digits: int = 12) -> OutputRecord:
    """Sweep worker: parameter errors become records with `error` set"""
    try:
        record = evaluate_family(name, parameters, digits)
    except SlopeEngineError as e:
        logger.debug(f"{name} {parameters}: {e.error_code} {e.message}")
        return OutputRecord(family=name, parameters=dict(parameters), error=f"{e.error_code}: {e.message}")
    logger.debug(f"{name} {parameters}: {len(record.values)} values")
    return record


def format_text(record: OutputRecord) -> str:
    point = " ".join(f"{key}={value}" for key, value in record.parameters.items())
    lines = [f"{record.family} {point}"]
    width = max((len(v.name) for v in record.values), default=0)
    for value in record.values:
        if value.exact is not None:
            lines.append(f"  {value.name:<{width}}  {value.exact:>24}  {value.approx!r}")
        elif value.bound is not None:
            lines.append(f"  {value.name:<{width}}  {'>= ' + value.bound:>24}  ({value.status.value})")
        else:
            lines.append(f"  {value.name:<{width}}  {'?':>24}  ({value.status.value})")
    if record.flags:
        lines.append("  flags: " + " ".join(f"{k}={str(v).lower()}" for k, v in record.flags.items()))
    return "\n".join(lines)


def run(args: argparse.Namespace) -> int:
    settings = get_settings()
    digits = check_digits(args.digits if args.digits is not None else settings.float_digits)
    parameters = {key: getattr(args, key) for key in PARAMETER_KEYS if getattr(args, key) is not None}
    logger.info(f"slope {args.family} {parameters}")

    record = evaluate_family(args.family, parameters, digits)
    if args.format == "json":
        print(record.model_dump_json(indent=2))
    else:
        print(format_text(record))
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("slope", help="evaluate one family at one parameter point")
    parser.add_argument("family", choices=sorted(FAMILIES))
    for key in PARAMETER_KEYS:
        parser.add_argument(f"--{key}", type=int, default=None)
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--digits", type=int, default=None, help="significant digits of the float rendering")
    parser.set_defaults(handler=run)
