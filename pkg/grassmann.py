"""
Grassmannian Cohomology
Schubert calculus on G(r,d), the Grassmannian of r-planes in P^d, in the
weakly increasing Schubert-index convention.

Products use the Littlewood-Richardson rule (Pieri strips for one-row and
one-column factors, LR tableaux otherwise) with box truncation. The closed
degree formula for sigma_alpha * sigma_cusp^g is the independent oracle.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Dict, Iterator, List, Sequence, Tuple, Union

from combinat import Partition, RamSeq, enumerate_ramseqs, partition_to_ramseq, ramseq_to_partition
from errors import AmbientMismatch, DegreeMismatch, DimensionCondition, NonzeroRho, ParameterRange
from numeric import factorial

logger = logging.getLogger(__name__)

IndexLike = Union[RamSeq, Sequence[int]]


@dataclass(frozen=True)
class GrassmannianAmbient:
    """G(r,d) with its (r+1) x (d-r) partition box"""
    r: int
    d: int
    dim: int = field(init=False, compare=False)

    def __post_init__(self):
        if not 0 <= self.r < self.d:
            raise ParameterRange(f"G({self.r},{self.d}) needs 0 <= r < d", {"r": self.r, "d": self.d})
        object.__setattr__(self, "dim", (self.r + 1) * (self.d - self.r))

    @property
    def rows(self) -> int:
        return self.r + 1

    @property
    def cols(self) -> int:
        return self.d - self.r

    def __str__(self) -> str:
        return f"G({self.r},{self.d})"


@dataclass(frozen=True)
class GrassClass:
    """Integer combination of Schubert classes; treat terms as read-only"""
    ambient: GrassmannianAmbient
    terms: Dict[Partition, int]

    def codims(self) -> List[int]:
        return sorted({p.weight for p in self.terms})

    def codim(self) -> int:
        weights = self.codims()
        if len(weights) != 1:
            raise DegreeMismatch(f"class is not of pure codimension: {weights}")
        return weights[0]

    def coefficient(self, p: Partition) -> int:
        return self.terms.get(p, 0)

    def __add__(self, other: "GrassClass") -> "GrassClass":
        _same_ambient(self, other)
        total = Counter(self.terms)
        total.update(other.terms)
        return GrassClass(self.ambient, _clean(total))

    def __rmul__(self, scalar: int) -> "GrassClass":
        return GrassClass(self.ambient, _clean({p: scalar * c for p, c in self.terms.items()}))

    def __mul__(self, other: "GrassClass") -> "GrassClass":
        return lr_multiply(self, other)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*s{partition_to_ramseq(p, self.ambient.r, self.ambient.cols)}"
                          for p, c in sorted(self.terms.items()))


def _clean(terms: Dict[Partition, int]) -> Dict[Partition, int]:
    return {p: c for p, c in sorted(terms.items()) if c != 0}


def _same_ambient(a: GrassClass, b: GrassClass) -> None:
    if a.ambient != b.ambient:
        raise AmbientMismatch(f"{a.ambient} vs {b.ambient}")


# Constructors
def schubert_class(ambient: GrassmannianAmbient, alpha: IndexLike) -> GrassClass:
    seq = alpha if isinstance(alpha, RamSeq) else RamSeq(tuple(alpha), ambient.cols)
    if seq.r != ambient.r or seq.alpha[-1] > ambient.cols:
        raise ParameterRange(f"{seq} is not a Schubert index of {ambient}")
    return GrassClass(ambient, {ramseq_to_partition(seq): 1})


def unit_class(ambient: GrassmannianAmbient) -> GrassClass:
    return GrassClass(ambient, {Partition(): 1})


def cusp_class(ambient: GrassmannianAmbient) -> GrassClass:
    """sigma_(0,1,...,1), the partition 1^r"""
    return GrassClass(ambient, {Partition((1,) * ambient.r): 1})


def point_class(ambient: GrassmannianAmbient) -> GrassClass:
    return GrassClass(ambient, {Partition((ambient.cols,) * ambient.rows): 1})


# Littlewood-Richardson rule
def _horizontal_strips(shape: Tuple[int, ...], size: int, cols: int) -> Iterator[Tuple[int, ...]]:
    """Row increments n_i of horizontal strips of the given size on shape"""
    rows = len(shape)

    def extend(row: int, remaining: int, prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if row == rows:
            if remaining == 0:
                yield prefix
            return
        room = (cols if row == 0 else shape[row - 1]) - shape[row]
        for n in range(min(room, remaining), -1, -1):
            yield from extend(row + 1, remaining - n, prefix + (n,))

    yield from extend(0, size, ())


def _vertical_strips(shape: Tuple[int, ...], size: int, cols: int) -> Iterator[Tuple[int, ...]]:
    """Shapes obtained by adding a vertical strip (at most one box per row)"""
    rows = len(shape)

    def extend(row: int, remaining: int, prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if row == rows:
            if remaining == 0:
                yield prefix
            return
        for bump in (1, 0):
            if bump > remaining:
                continue
            length = shape[row] + bump
            if length > cols or (row > 0 and length > prefix[row - 1]):
                continue
            yield from extend(row + 1, remaining - bump, prefix + (length,))

    yield from extend(0, size, ())


def _lr_products(lam: Partition, mu: Partition, rows: int, cols: int) -> Dict[Partition, int]:
    """Coefficients of sigma_lam * sigma_mu truncated to the rows x cols box"""
    start = tuple(lam.part(i) for i in range(rows))
    if not mu.parts:
        return {lam: 1}
    if len(mu.parts) == 1 or all(p == 1 for p in mu.parts):
        products: Counter = Counter()
        if len(mu.parts) == 1:
            for increments in _horizontal_strips(start, mu.parts[0], cols):
                products[Partition(tuple(a + n for a, n in zip(start, increments)))] += 1
        else:
            for shape in _vertical_strips(start, len(mu.parts), cols):
                products[Partition(shape)] += 1
        return dict(products)

    products = Counter()
    labels = mu.parts

    def place(label: int, shape: Tuple[int, ...], previous: Tuple[int, ...]) -> None:
        if label == len(labels):
            products[Partition(shape)] += 1
            return
        for increments in _horizontal_strips(shape, labels[label], cols):
            if label > 0 and not _lattice_ok(increments, previous):
                continue
            place(label + 1, tuple(a + n for a, n in zip(shape, increments)), increments)

    place(0, start, ())
    return dict(products)


def _lattice_ok(current: Tuple[int, ...], previous: Tuple[int, ...]) -> bool:
    # Reading rows top to bottom, right to left: label k never outnumbers label k-1
    seen_previous = 0
    seen_current = 0
    for row, count in enumerate(current):
        seen_current += count
        if seen_current > seen_previous:
            return False
        seen_previous += previous[row]
    return True


def lr_multiply(a: GrassClass, b: GrassClass) -> GrassClass:
    """Product in H*(G(r,d)); partitions leaving the box vanish"""
    _same_ambient(a, b)
    rows, cols = a.ambient.rows, a.ambient.cols
    product: Counter = Counter()
    for lam, x in a.terms.items():
        for mu, y in b.terms.items():
            for nu, c in _lr_products(lam, mu, rows, cols).items():
                product[nu] += x * y * c
    return GrassClass(a.ambient, _clean(product))


def pairing(a: GrassClass, b: GrassClass) -> int:
    """Poincare pairing of complementary-degree classes"""
    _same_ambient(a, b)
    ambient = a.ambient
    if not a.terms or not b.terms:
        return 0
    if a.codim() + b.codim() != ambient.dim:
        raise DegreeMismatch(
            f"codimensions {a.codim()} + {b.codim()} != dim {ambient} = {ambient.dim}",
            {"dim": ambient.dim},
        )
    return sum(c * b.coefficient(p.complement(ambient.rows, ambient.cols)) for p, c in a.terms.items())


@lru_cache(maxsize=256)
def cusp_power(ambient: GrassmannianAmbient, k: int) -> GrassClass:
    """sigma_cusp^k by repeated multiplication with truncation"""
    if k < 0:
        raise ParameterRange(f"negative power {k}")
    if k == 0:
        return unit_class(ambient)
    return lr_multiply(cusp_power(ambient, k - 1), cusp_class(ambient))


# Closed-form degrees
def _index(alpha: IndexLike) -> Tuple[int, ...]:
    return alpha.alpha if isinstance(alpha, RamSeq) else tuple(alpha)


def schubert_number_closed(alpha: IndexLike, g: int, ambient: GrassmannianAmbient) -> int:
    """Degree of sigma_alpha * sigma_cusp^g from the closed product formula"""
    a = _index(alpha)
    r, d = ambient.r, ambient.d
    if len(a) != r + 1:
        raise ParameterRange(f"index {a} has {len(a)} entries, {ambient} needs {r + 1}")
    if r * g + sum(a) != ambient.dim:
        raise DimensionCondition(
            f"r*g + |alpha| = {r * g + sum(a)} != {ambient.dim}",
            {"r": r, "d": d, "g": g, "alpha": list(a)},
        )
    if a[0] < 0 or a[-1] > ambient.cols or any(a[i] > a[i + 1] for i in range(r)):
        return 0
    arguments = [g - d + i + a[i] + r for i in range(r + 1)]
    if g < 0 or any(x < 0 for x in arguments):
        return 0
    numerator = factorial(g) * prod(a[j] - a[i] + j - i for i in range(r + 1) for j in range(i + 1, r + 1))
    value = Fraction(numerator, prod(factorial(x) for x in arguments))
    if value.denominator != 1:
        raise ParameterRange(f"non-integral Schubert degree {value} for {a} in {ambient}")
    return value.numerator


def top_degree(ambient: GrassmannianAmbient, alpha: IndexLike, k: int) -> int:
    """Degree of sigma_alpha * sigma_cusp^k, 0 when the product is not top-dimensional"""
    a = _index(alpha)
    if ambient.r * k + sum(a) != ambient.dim:
        return 0
    return schubert_number_closed(a, k, ambient)


def brill_noether_number(g: int, r: int, d: int) -> int:
    return g - (r + 1) * (g - d + r)


def castelnuovo(g: int, r: int, d: int) -> int:
    """Number of g^r_d on a general curve of genus g when rho = 0"""
    rho = brill_noether_number(g, r, d)
    if rho != 0:
        raise NonzeroRho(f"rho({g},{r},{d}) = {rho}", {"g": g, "r": r, "d": d, "rho": rho})
    numerator = factorial(g) * prod(factorial(i) for i in range(1, r + 1))
    denominator = prod(factorial(g - d + r + i) for i in range(r + 1))
    return numerator // denominator


def castelnuovo_rs(r: int, s: int) -> int:
    """N for g = rs+s, d = rs+r"""
    return castelnuovo(r * s + s, r, r * s + r)


# Limit linear series counts
@dataclass(frozen=True)
class LimitLinearSeriesTable:
    r: int
    s: int
    j: int
    n_counts: List[Tuple[RamSeq, int]]
    m_counts: List[Tuple[RamSeq, int]]
    q_counts: List[Tuple[RamSeq, int]]


def _check_rs(r: int, s: int) -> Tuple[int, int]:
    if r < 1 or s < 1:
        raise ParameterRange(f"need r, s >= 1 (got r={r}, s={s})", {"r": r, "s": s})
    return r * s + s, r * s + r


def limitlinj_sets(r: int, s: int, j: int) -> Tuple[List[RamSeq], List[RamSeq], List[RamSeq]]:
    """The three ramification sets at the node for a split of genus j / g-j"""
    first = enumerate_ramseqs(r, 0, s, j)
    second = enumerate_ramseqs(r, 0, s + 1, j + 1, upper_overrides={r - 1: s})
    third = enumerate_ramseqs(r, [0] + [1] * r, s + 1, r + 1 + j, strict_first=True, upper_overrides={0: 0})
    return first, second, third


def limitlinj_counts(r: int, s: int, j: int) -> LimitLinearSeriesTable:
    g, d = _check_rs(r, s)
    if not g // 2 <= j <= g - 2:
        raise ParameterRange(f"j={j} outside [{g // 2}, {g - 2}] for g={g}", {"g": g, "j": j})
    first, second, third = limitlinj_sets(r, s, j)
    big = GrassmannianAmbient(r, d)
    small = GrassmannianAmbient(r, r + j)
    n_counts = [(a, top_degree(big, [j - x for x in reversed(a.alpha)], g - j)) for a in first]
    m_counts = [(b, top_degree(small, b.alpha, j)) for b in second]
    q_counts = [(b, top_degree(big, [j + 1 - x for x in reversed(b.alpha[1:])] + [j + 1], g - j)) for b in third]
    logger.debug(f"limitlinj_counts(r={r}, s={s}, j={j}): {len(first)}/{len(second)}/{len(third)} sequences")
    return LimitLinearSeriesTable(r, s, j, n_counts, m_counts, q_counts)


# Pointed Brill-Noether Schubert sums
def lin_one_total_ramification(g: int, r: int, d: int) -> int:
    """Pairs (L, x) with x a ramification point of L, weighted: N(r+1)(d+r(g-1))"""
    return castelnuovo(g, r, d) * (r + 1) * (d + r * (g - 1))


@dataclass(frozen=True)
class BarC1Contributions:
    cusp_and_two_torsion: int
    total_ramification: int
    base_point: int

    @property
    def total(self) -> int:
        return self.cusp_and_two_torsion + self.total_ramification + self.base_point


def barC1_contributions(r: int, s: int) -> BarC1Contributions:
    """Three degenerations of a total ramification point onto an elliptic tail"""
    g, d = _check_rs(r, s)
    if r < 2 or g < 3:
        raise ParameterRange(f"need r >= 2 and g >= 3 (got r={r}, g={g})", {"r": r, "g": g})
    ambient = GrassmannianAmbient(r, d)
    two_torsion = [0, 1] + [2] * (r - 2) + [3]
    flat = [0] + [2] * r
    based = [0, 0] + [1] * (r - 1)
    return BarC1Contributions(
        cusp_and_two_torsion=3 * (g - 1) * top_degree(ambient, two_torsion, g - 2),
        total_ramification=(g - 1) * ((r + 2) ** 2 - 1) * top_degree(ambient, flat, g - 2),
        base_point=(g - 1) * (r * r - 1) * top_degree(GrassmannianAmbient(r, d - 1), based, g - 2),
    )


def barC1_lin_pairing(r: int, s: int) -> int:
    return barC1_contributions(r, s).total


def barC1_lin_pairing_closed(r: int, s: int) -> Fraction:
    _check_rs(r, s)
    n = castelnuovo_rs(r, s)
    return Fraction(n * r * (r + 1) * (r + 2) * (r * s + 2 * s * s + s - 4), s + r + 1)


@dataclass(frozen=True)
class SchubertSumIdentity:
    lhs: int
    rhs: int
    constraint_used: str

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def _split_terms(r: int, s: int, j: int, total: int, lower: int) -> Iterator[Tuple[RamSeq, int]]:
    g, d = r * s + s, r * s + r
    ambient = GrassmannianAmbient(r, d)
    for alpha in enumerate_ramseqs(r, lower, j, total):
        left = top_degree(ambient, alpha.alpha, g - j)
        if left == 0:
            continue
        right = top_degree(ambient, [r * s - x for x in reversed(alpha.alpha)], j)
        if right:
            yield alpha, left * right


def schubert_sum_identity(r: int, s: int, j: int, t: int, constraint: str = "rj", lower: str = "zero") -> SchubertSumIdentity:
    """
    N against the sum over alpha (alpha_r <= j) of the two aspect counts.

    constraint selects |alpha| = rj or the displayed |alpha| = j; lower selects
    alpha_0 >= 0 or alpha_0 >= max(0, j - t).
    """
    g, d = _check_rs(r, s)
    if not 1 <= t <= r + 1 or not 1 <= j <= g - 1:
        raise ParameterRange(f"need 1 <= t <= {r + 1} and 1 <= j <= {g - 1}", {"j": j, "t": t})
    if constraint not in ("rj", "j") or lower not in ("zero", "proof_text"):
        raise ParameterRange(f"unknown variant constraint={constraint!r} lower={lower!r}")
    total = r * j if constraint == "rj" else j
    floor = 0 if lower == "zero" else max(0, j - t)
    rhs = sum(value for _, value in _split_terms(r, s, j, total, floor))
    used = f"sum(alpha)={'r*j' if constraint == 'rj' else 'j'}, alpha_0>={'0' if lower == 'zero' else 'max(0,j-t)'}"
    return SchubertSumIdentity(lhs=castelnuovo(g, r, d), rhs=rhs, constraint_used=used)


def barCjt_lin_pairing(r: int, s: int, j: int, t: int) -> int:
    """alpha_{t-1}-weighted Schubert sum for the curve moving the node on a genus-j tail"""
    g, _ = _check_rs(r, s)
    if not 1 <= t <= r + 1 or not 0 <= j <= g - 1:
        raise ParameterRange(f"need 1 <= t <= {r + 1} and 0 <= j <= {g - 1}", {"j": j, "t": t})
    return sum(alpha.alpha[t - 1] * value for alpha, value in _split_terms(r, s, j, r * j, 0))


# Oracle sweep: closed formula against the LR product
def schubert_number_lr(alpha: IndexLike, g: int, ambient: GrassmannianAmbient) -> int:
    """Degree of sigma_alpha * sigma_cusp^g through iterated LR products"""
    a = _index(alpha)
    if ambient.r * g + sum(a) != ambient.dim:
        raise DimensionCondition(
            f"r*g + |alpha| = {ambient.r * g + sum(a)} != {ambient.dim}",
            {"r": ambient.r, "d": ambient.d, "g": g, "alpha": list(a)},
        )
    product = lr_multiply(schubert_class(ambient, a), cusp_power(ambient, g))
    return product.coefficient(Partition((ambient.cols,) * ambient.rows))


@dataclass(frozen=True)
class OraclePoint:
    ambient: GrassmannianAmbient
    alpha: RamSeq
    g: int
    closed: int
    lr: int

    @property
    def agrees(self) -> bool:
        return self.closed == self.lr


def ambients_up_to(max_dim: int) -> List[GrassmannianAmbient]:
    """Every G(r,d) with r >= 0 and (r+1)(d-r) <= max_dim"""
    found = []
    for r in range(0, max_dim):
        for d in range(r + 1, r + 1 + max_dim // (r + 1)):
            found.append(GrassmannianAmbient(r, d))
    return found


def _oracle_genera(ambient: GrassmannianAmbient, total: int) -> range:
    # r = 0 leaves g free once |alpha| fills P^d
    r = ambient.r
    if r == 0:
        return range(ambient.dim + 1) if total == ambient.dim else range(0)
    if (ambient.dim - total) % r:
        return range(0)
    g = (ambient.dim - total) // r
    return range(g, g + 1)


def schubert_oracle_sweep(max_dim: int) -> Iterator[OraclePoint]:
    """Closed and LR degrees for every index meeting the dimension condition"""
    for ambient in ambients_up_to(max_dim):
        for total in range(ambient.dim + 1):
            for g in _oracle_genera(ambient, total):
                for alpha in enumerate_ramseqs(ambient.r, 0, ambient.cols, total):
                    yield OraclePoint(
                        ambient, alpha, g,
                        closed=schubert_number_closed(alpha, g, ambient),
                        lr=schubert_number_lr(alpha, g, ambient),
                    )
