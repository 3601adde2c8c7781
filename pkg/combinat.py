"""
Partitions and Ramification Sequences
Bridges between weakly increasing Schubert indices and partitions, bounded
enumeration of index sets, and the elementary-to-monomial transition used by
the Harris-Tu evaluator.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from errors import ParameterRange, PartTooLarge

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing parts with trailing zeros removed"""
    parts: Tuple[int, ...] = ()
    weight: int = field(init=False, compare=False)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts) or any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
            raise ParameterRange(f"not a partition: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "weight", sum(parts))

    def __len__(self) -> int:
        return len(self.parts)

    def part(self, k: int) -> int:
        """k-th part, 0 beyond the length"""
        return self.parts[k] if k < len(self.parts) else 0

    def fits(self, rows: int, cols: int) -> bool:
        return len(self.parts) <= rows and (not self.parts or self.parts[0] <= cols)

    def complement(self, rows: int, cols: int) -> "Partition":
        """Box complement inside rows x cols"""
        if not self.fits(rows, cols):
            raise ParameterRange(f"{self.parts} does not fit a {rows}x{cols} box")
        return Partition(tuple(cols - self.part(rows - 1 - k) for k in range(rows)))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class RamSeq:
    """Schubert index (alpha_0 <= ... <= alpha_r) bounded by box_width"""
    alpha: Tuple[int, ...]
    box_width: int

    def __post_init__(self):
        alpha = tuple(int(a) for a in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if not alpha:
            raise ParameterRange("empty ramification sequence")
        if alpha[0] < 0 or alpha[-1] > self.box_width:
            raise ParameterRange(f"{alpha} leaves the range 0..{self.box_width}")
        if any(alpha[k] > alpha[k + 1] for k in range(len(alpha) - 1)):
            raise ParameterRange(f"{alpha} is not weakly increasing")

    @property
    def r(self) -> int:
        return len(self.alpha) - 1

    @property
    def weight(self) -> int:
        return sum(self.alpha)

    def vanishing(self) -> Tuple[int, ...]:
        """Vanishing sequence a_i = alpha_i + i"""
        return tuple(a + i for i, a in enumerate(self.alpha))

    def complement(self) -> "RamSeq":
        """(w - alpha_r, ..., w - alpha_0)"""
        return RamSeq(tuple(self.box_width - a for a in reversed(self.alpha)), self.box_width)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.alpha)) + ")"


@dataclass(frozen=True)
class ZeroOneMatrixCount:
    """Number of 0/1 matrices with the given row and column sums"""
    row_sums: Partition
    col_sums: Exponents
    count: int


# Convention bridge
def ramseq_to_partition(seq: RamSeq) -> Partition:
    return Partition(tuple(reversed(seq.alpha)))


def partition_to_ramseq(p: Partition, r: int, box_width: int) -> RamSeq:
    if not p.fits(r + 1, box_width):
        raise ParameterRange(f"{p} does not fit a {r + 1}x{box_width} box")
    return RamSeq(tuple(p.part(r - i) for i in range(r + 1)), box_width)


# Enumeration
def enumerate_ramseqs(
    r: int,
    lower: Union[int, Sequence[int]],
    upper: int,
    total: int,
    strict_first: bool = False,
    upper_overrides: Optional[Mapping[int, int]] = None,
) -> List[RamSeq]:
    """
    All weakly increasing (alpha_0, ..., alpha_r) with lower[i] <= alpha_i <= upper
    and sum total, in lexicographic order.

    strict_first asks for alpha_0 < alpha_1; upper_overrides tightens the upper
    bound at single positions (beta_{r-1} <= s for the second limit set).
    """
    if r < 0 or upper < 0 or total < 0:
        raise ParameterRange("enumeration needs r, upper, total >= 0", {"r": r, "upper": upper, "total": total})
    lows = [lower] * (r + 1) if isinstance(lower, int) else list(lower)
    if len(lows) != r + 1:
        raise ParameterRange(f"expected {r + 1} lower bounds, got {len(lows)}")
    highs = [upper] * (r + 1)
    for position, bound in (upper_overrides or {}).items():
        highs[position] = min(highs[position], bound)
    # Weakly increasing sequences never exceed a later cap
    for position in range(r - 1, -1, -1):
        highs[position] = min(highs[position], highs[position + 1])

    found: List[RamSeq] = []

    def extend(prefix: List[int], remaining: int) -> None:
        position = len(prefix)
        if position == r + 1:
            if remaining == 0:
                found.append(RamSeq(tuple(prefix), upper))
            return
        start = lows[position]
        if prefix:
            start = max(start, prefix[-1] + (1 if strict_first and position == 1 else 0))
        slots = r + 1 - position
        for value in range(start, highs[position] + 1):
            if value * slots > remaining:
                break
            if remaining - value > highs[r] * (slots - 1):
                continue
            extend(prefix + [value], remaining - value)

    extend([], total)
    logger.debug(f"enumerate_ramseqs(r={r}, upper={upper}, total={total}) -> {len(found)} sequences")
    return found


def iter_box_partitions(rows: int, cols: int, weight: Optional[int] = None) -> Iterator[Partition]:
    """Partitions inside a rows x cols box, optionally of fixed weight"""

    def extend(prefix: Tuple[int, ...], cap: int, remaining: Optional[int]) -> Iterator[Partition]:
        if len(prefix) == rows:
            if remaining is None or remaining == 0:
                yield Partition(prefix)
            return
        for value in range(cap, -1, -1):
            if remaining is not None and value > remaining:
                continue
            yield from extend(prefix + (value,), value, None if remaining is None else remaining - value)

    yield from extend((), cols, weight)


# Elementary symmetric to monomial transition
@lru_cache(maxsize=4096)
def _e_to_m(parts: Tuple[int, ...], num_vars: int) -> Tuple[Tuple[Exponents, int], ...]:
    table: Counter = Counter({(0,) * num_vars: 1})
    for part in parts:
        step: Counter = Counter()
        for exponents, count in table.items():
            for chosen in combinations(range(num_vars), part):
                bumped = list(exponents)
                for index in chosen:
                    bumped[index] += 1
                step[tuple(bumped)] += count
        table = step
    return tuple(sorted(table.items()))


def elementary_to_monomials(lam: Partition, num_vars: int) -> Dict[Exponents, int]:
    """Expand e_{lambda_1} e_{lambda_2} ... in num_vars variables into monomials"""
    if any(part > num_vars for part in lam.parts):
        raise PartTooLarge(f"part of {lam} exceeds {num_vars} variables", {"partition": list(lam.parts)})
    return dict(_e_to_m(lam.parts, num_vars))


def zero_one_matrix_count(row_sums: Partition, col_sums: Sequence[int]) -> ZeroOneMatrixCount:
    table = elementary_to_monomials(row_sums, len(col_sums))
    return ZeroOneMatrixCount(row_sums, tuple(col_sums), table.get(tuple(col_sums), 0))
