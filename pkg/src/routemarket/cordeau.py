"""Reader and writer for the classic multi-depot text format.

Layout:

    type m n t
    t lines:  D Q        (per-depot max route duration and capacity; D=0 means unbounded)
    n lines:  id x y service demand freq ncombo combo... tw_open tw_close
    t lines:  same shape as customer lines, for the depots

Parsing is positional over whitespace tokens, one record per nonempty
line, and collects every problem it finds before failing so a bad file is
reported in one pass.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .model import UNBOUNDED, Customer, Depot, Instance, VehicleSpec


class IssueKind(enum.Enum):
    MALFORMED_HEADER = "MalformedHeader"
    BAD_FIELD_COUNT = "BadFieldCount"
    NON_NUMERIC_TOKEN = "NonNumericToken"
    INCONSISTENT_COUNTS = "InconsistentCounts"
    NEGATIVE_VALUE = "NegativeValue"


@dataclass(frozen=True)
class ParseIssue:
    """One problem found in the input, anchored to a 1-based line number."""

    kind: IssueKind
    line: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.kind.value}: {self.message}"


class CordeauFormatError(ValueError):
    """Raised with the full list of issues found while parsing."""

    def __init__(self, issues: list[ParseIssue]):
        self.issues = list(issues)
        head = "; ".join(str(i) for i in self.issues[:3])
        more = f" (+{len(self.issues) - 3} more)" if len(self.issues) > 3 else ""
        super().__init__(f"{len(self.issues)} issue(s): {head}{more}")


def _records(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if tokens:
            out.append((lineno, tokens))
    return out


class _Fields:
    """Positional reader over one record's tokens; logs issues, never raises."""

    def __init__(self, tokens: list[str], line: int, issues: list[ParseIssue]):
        self.tokens = tokens
        self.line = line
        self.issues = issues
        self.pos = 0
        self.broken = False

    def _next(self, what: str) -> str | None:
        if self.pos >= len(self.tokens):
            if not self.broken:
                self.issues.append(
                    ParseIssue(
                        IssueKind.BAD_FIELD_COUNT,
                        self.line,
                        f"record ends before {what}",
                    )
                )
                self.broken = True
            return None
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def take_int(self, what: str) -> int | None:
        tok = self._next(what)
        if tok is None:
            return None
        try:
            return int(tok)
        except ValueError:
            self.issues.append(
                ParseIssue(
                    IssueKind.NON_NUMERIC_TOKEN,
                    self.line,
                    f"{what} must be an integer, got {tok!r}",
                )
            )
            return None

    def take_float(self, what: str) -> float | None:
        tok = self._next(what)
        if tok is None:
            return None
        try:
            value = float(tok)
        except ValueError:
            self.issues.append(
                ParseIssue(
                    IssueKind.NON_NUMERIC_TOKEN,
                    self.line,
                    f"{what} must be a number, got {tok!r}",
                )
            )
            return None
        if not math.isfinite(value):
            self.issues.append(
                ParseIssue(
                    IssueKind.NON_NUMERIC_TOKEN,
                    self.line,
                    f"{what} must be finite, got {tok!r}",
                )
            )
            return None
        return value

    def finish(self, what: str) -> None:
        if self.pos < len(self.tokens) and not self.broken:
            extra = len(self.tokens) - self.pos
            self.issues.append(
                ParseIssue(
                    IssueKind.BAD_FIELD_COUNT,
                    self.line,
                    f"{extra} extra token(s) after {what}",
                )
            )


@dataclass
class _NodeRecord:
    line: int
    id: int | None
    x: float | None
    y: float | None
    service: float | None
    demand: float | None
    tw_open: float | None
    tw_close: float | None


def _parse_node(tokens: list[str], line: int, what: str, issues) -> _NodeRecord:
    f = _Fields(tokens, line, issues)
    node_id = f.take_int(f"{what} id")
    x = f.take_float("x")
    y = f.take_float("y")
    service = f.take_float("service duration")
    demand = f.take_float("demand")
    f.take_int("visit frequency")
    ncombo = f.take_int("combination count")
    if ncombo is not None and ncombo >= 0:
        for k in range(ncombo):
            f.take_int(f"combination {k + 1}")
    elif ncombo is not None:
        issues.append(
            ParseIssue(
                IssueKind.NEGATIVE_VALUE, line, f"combination count is {ncombo}"
            )
        )
    tw_open = f.take_float("window open")
    tw_close = f.take_float("window close")
    f.finish(f"{what} record")

    if service is not None and service < 0:
        issues.append(
            ParseIssue(IssueKind.NEGATIVE_VALUE, line, f"service duration is {service}")
        )
    if demand is not None and demand < 0:
        issues.append(ParseIssue(IssueKind.NEGATIVE_VALUE, line, f"demand is {demand}"))
    for label, value in (("window open", tw_open), ("window close", tw_close)):
        if value is not None and value < 0:
            issues.append(
                ParseIssue(IssueKind.NEGATIVE_VALUE, line, f"{label} is {value}")
            )
    if (
        tw_open is not None
        and tw_close is not None
        and tw_open >= 0
        and tw_close >= 0
        and tw_open > tw_close
    ):
        issues.append(
            ParseIssue(
                IssueKind.NEGATIVE_VALUE,
                line,
                f"window [{tw_open}, {tw_close}] has negative width",
            )
        )
    return _NodeRecord(line, node_id, x, y, service, demand, tw_open, tw_close)


def parse_cordeau(text: str) -> Instance:
    """Parse one instance file; raises CordeauFormatError listing every issue."""
    issues: list[ParseIssue] = []
    records = _records(text)
    if not records:
        raise CordeauFormatError(
            [ParseIssue(IssueKind.MALFORMED_HEADER, 1, "empty input")]
        )

    header_line, header = records[0]
    if len(header) != 4:
        raise CordeauFormatError(
            [
                ParseIssue(
                    IssueKind.MALFORMED_HEADER,
                    header_line,
                    f"expected 4 header fields, got {len(header)}",
                )
            ]
        )
    try:
        _ptype, m, n, t = (int(tok) for tok in header)
    except ValueError:
        raise CordeauFormatError(
            [
                ParseIssue(
                    IssueKind.MALFORMED_HEADER,
                    header_line,
                    f"non-integer header field in {header}",
                )
            ]
        ) from None
    if m < 1 or n < 1 or t < 1:
        raise CordeauFormatError(
            [
                ParseIssue(
                    IssueKind.MALFORMED_HEADER,
                    header_line,
                    f"counts must be positive: m={m} n={n} t={t}",
                )
            ]
        )

    body = records[1:]
    expected = t + n + t
    if len(body) != expected:
        last_line = records[-1][0]
        issues.append(
            ParseIssue(
                IssueKind.INCONSISTENT_COUNTS,
                last_line,
                f"header promises {expected} records "
                f"({t} fleet + {n} customers + {t} depots), found {len(body)}",
            )
        )
        if len(body) < expected:
            raise CordeauFormatError(issues)

    fleet: list[tuple[float, float]] = []
    for line, tokens in body[:t]:
        f = _Fields(tokens, line, issues)
        dur = f.take_float("max route duration")
        cap = f.take_float("vehicle capacity")
        f.finish("fleet record")
        if dur is not None and dur < 0:
            issues.append(
                ParseIssue(
                    IssueKind.NEGATIVE_VALUE, line, f"max route duration is {dur}"
                )
            )
            dur = None
        if cap is not None and cap < 0:
            issues.append(
                ParseIssue(IssueKind.NEGATIVE_VALUE, line, f"capacity is {cap}")
            )
            cap = None
        fleet.append((dur if dur is not None else 0.0, cap if cap is not None else 0.0))

    customer_records = [
        _parse_node(tokens, line, "customer", issues)
        for line, tokens in body[t : t + n]
    ]
    depot_records = [
        _parse_node(tokens, line, "depot", issues)
        for line, tokens in body[t + n : t + n + t]
    ]

    seen: dict[int, int] = {}
    for rec in customer_records + depot_records:
        if rec.id is None:
            continue
        if rec.id in seen:
            issues.append(
                ParseIssue(
                    IssueKind.INCONSISTENT_COUNTS,
                    rec.line,
                    f"node id {rec.id} already used on line {seen[rec.id]}",
                )
            )
        else:
            seen[rec.id] = rec.line
    for rec in customer_records:
        if rec.id is not None and rec.id < 1:
            issues.append(
                ParseIssue(
                    IssueKind.NEGATIVE_VALUE, rec.line, f"customer id is {rec.id}"
                )
            )

    if issues:
        raise CordeauFormatError(issues)

    customers = tuple(
        Customer(
            id=rec.id,
            x=rec.x,
            y=rec.y,
            demand=rec.demand,
            service_time=rec.service,
            tw_open=rec.tw_open,
            tw_close=rec.tw_close,
        )
        for rec in customer_records
    )
    depots = tuple(
        Depot(id=rec.id, x=rec.x, y=rec.y, tw_open=rec.tw_open, tw_close=rec.tw_close)
        for rec in depot_records
    )
    vehicles = []
    for d, depot in enumerate(depots):
        dur, cap = fleet[d]
        for k in range(m):
            vehicles.append(
                VehicleSpec(
                    id=d * m + k + 1,
                    home_depot=depot.id,
                    capacity=cap,
                    max_route_duration=UNBOUNDED if dur == 0 else dur,
                )
            )
    return Instance(customers=customers, depots=depots, vehicles=tuple(vehicles))


def _fmt(value: float) -> str:
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def serialize_cordeau(instance: Instance, problem_type: int = 6) -> str:
    """Render an instance back to the text format.

    Only fleets the format can express are accepted: every depot fields the
    same number of vehicles, and all vehicles of one depot share capacity
    and duration limit.
    """
    per_depot: dict[int, list[VehicleSpec]] = {d.id: [] for d in instance.depots}
    for v in instance.vehicles:
        per_depot[v.home_depot].append(v)
    counts = {len(vs) for vs in per_depot.values()}
    if len(counts) != 1 or counts == {0}:
        raise ValueError(
            "format needs the same positive vehicle count at every depot, "
            f"got {sorted(len(vs) for vs in per_depot.values())}"
        )
    m = counts.pop()
    for depot_id, vs in per_depot.items():
        if len({(v.capacity, v.max_route_duration) for v in vs}) != 1:
            raise ValueError(
                f"depot {depot_id}: vehicles differ in capacity or duration limit"
            )

    lines = [
        f"{problem_type} {m} {len(instance.customers)} {len(instance.depots)}"
    ]
    for depot in instance.depots:
        v = per_depot[depot.id][0]
        dur = 0.0 if not v.duration_bounded else v.max_route_duration
        lines.append(f"{_fmt(dur)} {_fmt(v.capacity)}")
    for c in instance.customers:
        lines.append(
            f"{c.id} {_fmt(c.x)} {_fmt(c.y)} {_fmt(c.service_time)} "
            f"{_fmt(c.demand)} 1 1 1 {_fmt(c.tw_open)} {_fmt(c.tw_close)}"
        )
    for d in instance.depots:
        lines.append(
            f"{d.id} {_fmt(d.x)} {_fmt(d.y)} 0 0 1 1 1 "
            f"{_fmt(d.tw_open)} {_fmt(d.tw_close)}"
        )
    return "\n".join(lines) + "\n"


def load_instance(path) -> Instance:
    """Read and parse an instance file from disk."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_cordeau(fh.read())
