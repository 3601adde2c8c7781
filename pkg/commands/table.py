"""
Table Command
Sweep a family over a parameter grid and emit CSV or JSON.

Records come out in lexicographic order of the family's parameters whatever
the number of worker processes.
"""

import argparse
import csv
import io
import logging
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from commands.slope import FAMILIES, check_digits, evaluate_point, get_family
from config import get_settings
from errors import EXIT_OK, ParameterRange
from models import OutputRecord, TableEnvelope

logger = logging.getLogger(__name__)

_RANGE = re.compile(r"^\s*([a-z])\s*=\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?$")


def parse_range(text: str) -> Tuple[str, range]:
    """'key=a..b' or 'key=a' -> (key, range); a > b gives an empty range"""
    match = _RANGE.match(text)
    if match is None:
        raise ParameterRange(f"invalid range {text!r}, expected key=a..b or key=a", {"range": text})
    key, start, stop = match.group(1), int(match.group(2)), match.group(3)
    end = start if stop is None else int(stop)
    return key, range(start, end + 1)


def parse_ranges(family: str, texts: Sequence[str]) -> Dict[str, range]:
    params = get_family(family).params
    ranges: Dict[str, range] = {}
    for text in texts:
        key, values = parse_range(text)
        if key not in params:
            raise ParameterRange(f"{family} has no parameter {key!r}", {"parameters": list(params)})
        if key in ranges:
            raise ParameterRange(f"parameter {key!r} given twice", {"parameter": key})
        ranges[key] = values
    missing = [key for key in params if key not in ranges]
    if missing:
        raise ParameterRange(f"missing ranges for {', '.join(missing)}", {"missing": missing})
    return ranges


def grid_points(family: str, ranges: Dict[str, range]) -> List[Dict[str, int]]:
    params = get_family(family).params
    return [dict(zip(params, values)) for values in product(*(ranges[key] for key in params))]


def sweep(family: str, points: List[Dict[str, int]], digits: int, jobs: int = 1) -> List[OutputRecord]:
    logger.info(f"Sweeping {family} over {len(points)} points with {jobs} job(s)")
    if jobs <= 1 or len(points) <= 1:
        return [evaluate_point(family, point, digits) for point in points]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(evaluate_point, [family] * len(points), points, [digits] * len(points)))


# Emitters
def csv_header(family: str) -> List[str]:
    spec = get_family(family)
    header = list(spec.params) + list(spec.derived)
    for name in spec.headline:
        header += [name, f"{name}_approx"]
    return header + list(spec.flags) + ["error"]


def csv_row(record: OutputRecord) -> list:
    spec = get_family(record.family)
    row: list = [record.parameters.get(key, "") for key in spec.params + spec.derived]
    for name in spec.headline:
        value = record.value(name)
        if value is None or value.exact is None:
            row += ["", ""]
        else:
            row += [value.exact, value.approx]
    for flag in spec.flags:
        row.append("" if flag not in record.flags else str(record.flags[flag]).lower())
    row.append(record.error or "")
    return row


def render_csv(family: str, records: List[OutputRecord], version: Optional[str] = None) -> str:
    buffer = io.StringIO()
    if version is not None:
        buffer.write(f"# slope-engine {version}\n")
    writer = csv.writer(buffer, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    writer.writerow(csv_header(family))
    for record in records:
        writer.writerow(csv_row(record))
    return buffer.getvalue()


def render_json(family: str, records: List[OutputRecord], version: str) -> str:
    return TableEnvelope(version=version, family=family, records=records).model_dump_json(indent=2) + "\n"


def run(args: argparse.Namespace) -> int:
    settings = get_settings()
    jobs = args.jobs if args.jobs is not None else settings.jobs
    if jobs < 1:
        raise ParameterRange(f"--jobs must be positive (got {jobs})", {"jobs": jobs})
    digits = check_digits(args.digits if args.digits is not None else settings.float_digits)

    ranges = parse_ranges(args.family, args.range or [])
    points = grid_points(args.family, ranges)
    records = sweep(args.family, points, digits, jobs)
    failed = sum(1 for record in records if record.error)
    if failed:
        logger.warning(f"{failed} of {len(records)} points were rejected")

    if args.format == "json":
        text = render_json(args.family, records, settings.output_version)
    else:
        text = render_csv(args.family, records, settings.output_version if args.version_comment else None)

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        logger.info(f"Wrote {len(records)} records to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("table", help="sweep a family over a parameter grid")
    parser.add_argument("family", choices=sorted(FAMILIES))
    parser.add_argument("--range", action="append", metavar="KEY=A..B", help="repeat once per parameter")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", default=None, help="output file, stdout when omitted")
    parser.add_argument("--jobs", type=int, default=None, help="worker processes")
    parser.add_argument("--digits", type=int, default=None, help="significant digits of the float columns")
    parser.add_argument("--version-comment", action="store_true", help="leading '# slope-engine <version>' line")
    parser.set_defaults(handler=run)
