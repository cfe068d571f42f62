"""Election-cycle records: parsing, validation, subgroup filters and summaries."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from approval_seats.errors import DataError

HEADER: tuple[str, ...] = ("year", "president", "party", "approval", "seat_change")

#: Approval threshold separating the two subgroups, in percent.
SPLIT_APPROVAL = 50.0

#: Net seat change of the President's party in the 2014 midterm, as recorded.
RECORDED_2014_SEAT_CHANGE = -28

_REFERENCE_CSV = """\
year,president,party,approval,seat_change
1998,Clinton,Democrat,66,5
1986,Reagan,Republican,63,-5
2002,G. W. Bush,Republican,63,6
1954,Eisenhower,Republican,61,-4
1962,Kennedy,Democrat,61,-4
1970,Nixon,Republican,58,-12
1990,G. H. W. Bush,Republican,58,-8
1958,Eisenhower,Republican,57,-47
1974,Ford,Republican,54,-43
1978,Carter,Democrat,49,-11
1994,Clinton,Democrat,46,-53
2010,Obama,Democrat,45,-63
1966,Johnson,Democrat,44,-47
1982,Reagan,Republican,42,-28
1950,Truman,Democrat,39,-29
2006,G. W. Bush,Republican,38,-30
1946,Truman,Democrat,33,-55
"""


class Group(str, Enum):
    """Approval subgroup selector."""

    ALL = "all"
    ABOVE_50 = "above_50"
    BELOW_50 = "below_50"

    def contains(self, approval: float) -> bool:
        """Whether an approval value belongs to this group."""
        if self is Group.ABOVE_50:
            return approval > SPLIT_APPROVAL
        if self is Group.BELOW_50:
            return approval < SPLIT_APPROVAL
        return True


@dataclass(frozen=True)
class ElectionRecord:
    """One midterm cycle.

    ``approval`` is the President's approval in percent just before the
    election; ``seat_change`` is the net seat gain (negative: loss) of the
    President's party.
    """

    year: int
    president: str
    party: str
    approval: float
    seat_change: int

    def __post_init__(self) -> None:
        if not (0.0 <= self.approval <= 100.0) or math.isnan(self.approval):
            raise DataError(f"approval {self.approval} outside [0, 100]")


@dataclass(frozen=True)
class ElectionDataset:
    """Ordered collection of records with unique years."""

    records: tuple[ElectionRecord, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        seen: set[int] = set()
        for rec in self.records:
            if rec.year in seen:
                raise DataError(f"duplicate year {rec.year}")
            seen.add(rec.year)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[ElectionRecord]:
        return iter(self.records)

    def __getitem__(self, i: int) -> ElectionRecord:
        return self.records[i]

    def by_year(self, year: int) -> ElectionRecord:
        for rec in self.records:
            if rec.year == year:
                return rec
        raise KeyError(year)

    def years(self) -> list[int]:
        return [r.year for r in self.records]

    def approvals(self) -> list[float]:
        return [r.approval for r in self.records]

    def seat_changes(self) -> list[float]:
        return [float(r.seat_change) for r in self.records]

    def pairs(self) -> list[tuple[float, float]]:
        """``(approval, seat_change)`` pairs in record order."""
        return [(r.approval, float(r.seat_change)) for r in self.records]


@dataclass(frozen=True)
class SummaryStats:
    """Sample mean and sample standard deviation (``n - 1`` denominator).

    ``sd`` is ``None`` when ``n < 2``.
    """

    n: int
    mean: float
    sd: float | None


def _parse_int(text: str, name: str, line: int) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise DataError(f"{name} {text!r} is not an integer", line) from None


def parse_dataset(csv_text: str, strict: bool = False) -> ElectionDataset:
    """
    Parse CSV text with header ``year,president,party,approval,seat_change``.

    :param csv_text: the CSV content; LF or CRLF line endings
    :param strict: additionally require even years >= 1900
    :returns: the validated dataset, in file order
    :raises DataError: on any malformed or invalid row; the message names
        the offending line number
    """
    if csv_text.startswith("\ufeff"):
        csv_text = csv_text[1:]
    reader = csv.reader(io.StringIO(csv_text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("missing header", 1) from None
    if tuple(h.strip() for h in header) != HEADER:
        raise DataError(f"expected header {','.join(HEADER)!r}", 1)

    records: list[ElectionRecord] = []
    seen: dict[int, int] = {}
    for row in reader:
        line = reader.line_num
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(HEADER):
            raise DataError(
                f"expected {len(HEADER)} fields, found {len(row)}", line)
        year = _parse_int(row[0], "year", line)
        try:
            approval = float(row[3].strip())
        except ValueError:
            raise DataError(f"approval {row[3]!r} is not a number", line) from None
        seat_change = _parse_int(row[4], "seat_change", line)
        if not (0.0 <= approval <= 100.0):
            raise DataError(
                f"approval {row[3].strip()} violates bound 0 <= approval <= 100",
                line)
        if strict and (year < 1900 or year % 2):
            raise DataError(f"year {year} is not an even year >= 1900", line)
        if year in seen:
            raise DataError(
                f"duplicate year {year} (first seen on line {seen[year]})", line)
        seen[year] = line
        records.append(ElectionRecord(year, row[1].strip(), row[2].strip(),
                                      approval, seat_change))
    return ElectionDataset(tuple(records))


def _format_approval(value: float) -> str:
    return str(int(value)) if value.is_integer() else repr(value)


def render_csv(ds: ElectionDataset) -> str:
    """Serialize a dataset to CSV text that :func:`parse_dataset` reads back."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HEADER)
    for r in ds:
        writer.writerow([r.year, r.president, r.party,
                         _format_approval(r.approval), r.seat_change])
    return out.getvalue()


def reference_dataset() -> ElectionDataset:
    """The 17 midterm cycles from 1946 to 2010, in tabulated order."""
    return parse_dataset(_REFERENCE_CSV, strict=True)


def reference_csv() -> str:
    """The embedded reference data as CSV text."""
    return _REFERENCE_CSV


def filter_by_approval(ds: ElectionDataset, group: Group | str) -> ElectionDataset:
    """
    Select the records of one approval subgroup, preserving order.

    Both subgroups use strict inequalities, so a record with approval of
    exactly 50 is in neither; see :func:`boundary_records`.
    """
    group = Group(group)
    if group is Group.ALL:
        return ds
    return ElectionDataset(tuple(r for r in ds if group.contains(r.approval)))


def boundary_records(ds: ElectionDataset) -> list[ElectionRecord]:
    """Records excluded from both subgroups (approval exactly at the split)."""
    return [r for r in ds if r.approval == SPLIT_APPROVAL]


def summarize(values: Iterable[float]) -> SummaryStats:
    """
    Mean and sample standard deviation of a series.

    >>> summarize([7, 7, 7])
    SummaryStats(n=3, mean=7.0, sd=0.0)
    >>> summarize([2.0]).sd is None
    True
    """
    vals: Sequence[float] = [float(v) for v in values]
    n = len(vals)
    if n == 0:
        raise DataError("cannot summarize an empty series")
    mean = math.fsum(vals) / n
    if n < 2:
        return SummaryStats(n, mean, None)
    ss = math.fsum((v - mean) ** 2 for v in vals)
    return SummaryStats(n, mean, math.sqrt(ss / (n - 1)))
