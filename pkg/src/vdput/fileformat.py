"""Text formats: function files and flat verdict reports.

A function file is::

    p <int>
    K <int>
    repr values|coeffs
    <p^K decimal integers in [0, p^K), one per line>

Lines whose first non-blank character is ``#`` are ignored anywhere, as are
blank lines.  The reader also accepts several integers on one data line;
the writer always emits one per line.
"""

from __future__ import annotations

from vdput.analysis import Condition, Verdict, Witness
from vdput.errors import FormatError, InvalidPrime
from vdput.padic import check_domain, check_table_size, is_prime
from vdput.vdp import FunctionTable, VdpSeries

VALUES = "values"
COEFFS = "coeffs"
DISCLAIMER = "certified for all levels k ≤ K"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _header_int(entry, key: str) -> int:
    lineno, line = entry
    parts = line.split()
    if len(parts) != 2 or parts[0] != key:
        raise FormatError(f"expected '{key} <int>', got {line!r}", lineno)
    try:
        return int(parts[1])
    except ValueError:
        raise FormatError(f"{key} must be an integer, got {parts[1]!r}", lineno) from None


def parse_function_file(text: str, max_table: int | None = None) -> FunctionTable | VdpSeries:
    lines = list(_content_lines(text))
    if len(lines) < 3:
        raise FormatError("missing header (need 'p', 'K' and 'repr' lines)", None)
    p = _header_int(lines[0], "p")
    K = _header_int(lines[1], "K")
    if not is_prime(p):
        raise InvalidPrime(f"p={p} is not prime")
    try:
        check_domain(p, K)
    except Exception as exc:
        raise FormatError(str(exc), lines[1][0]) from None
    size = check_table_size(p, K, max_table)
    lineno, line = lines[2]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "repr" or parts[1] not in (VALUES, COEFFS):
        raise FormatError(f"expected 'repr values|coeffs', got {line!r}", lineno)
    repr_tag = parts[1]

    mod = p**K
    entries: list[int] = []
    last_line = lineno
    for lineno, line in lines[3:]:
        last_line = lineno
        for tok in line.split():
            try:
                n = int(tok)
            except ValueError:
                raise FormatError(f"not an integer: {tok!r}", lineno) from None
            if not 0 <= n < mod:
                raise FormatError(f"entry {n} outside [0, {mod})", lineno)
            entries.append(n)
            if len(entries) > size:
                raise FormatError(f"more than p^K = {size} entries", lineno)
    if len(entries) != size:
        raise FormatError(f"expected p^K = {size} entries, got {len(entries)}", last_line)
    if repr_tag == VALUES:
        return FunctionTable(p, K, tuple(entries))
    return VdpSeries(p, K, tuple(entries))


def format_function_file(obj: FunctionTable | VdpSeries) -> str:
    if isinstance(obj, FunctionTable):
        tag, body = VALUES, obj.values
    else:
        tag, body = COEFFS, obj.coeffs
    lines = [f"p {obj.p}", f"K {obj.K}", f"repr {tag}"]
    lines.extend(str(n) for n in body)
    return "\n".join(lines) + "\n"


# -- reports -----------------------------------------------------------------

_WITNESS_KEYS = ("index", "level", "base", "pair", "residues")


def _render_field(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, tuple):
        return ",".join(str(v) for v in value)
    return str(value)


def render_report_line(check: str, verdict: Verdict) -> str:
    """Single ``key=value`` line; :func:`parse_report_line` inverts it."""
    w = verdict.witness or Witness()
    fields = [
        ("check", check),
        ("outcome", "pass" if verdict.outcome else "fail"),
        ("condition", verdict.condition.value if verdict.condition else "-"),
    ]
    fields += [(key, _render_field(getattr(w, key))) for key in _WITNESS_KEYS]
    fields += [
        ("qualifier", verdict.qualifier or "-"),
        ("K", _render_field(verdict.precision)),
    ]
    return "report " + " ".join(f"{k}={v}" for k, v in fields)


def parse_report_line(line: str) -> tuple[str, Verdict]:
    parts = line.split()
    if not parts or parts[0] != "report":
        raise FormatError(f"not a report line: {line!r}")
    kv = dict(part.split("=", 1) for part in parts[1:])

    def opt(key):
        return None if kv[key] == "-" else kv[key]

    def tup(key):
        raw = opt(key)
        return None if raw is None else tuple(int(v) for v in raw.split(",") if v)

    witness = None
    if any(kv[key] != "-" for key in _WITNESS_KEYS):
        witness = Witness(
            index=None if opt("index") is None else int(kv["index"]),
            level=None if opt("level") is None else int(kv["level"]),
            base=None if opt("base") is None else int(kv["base"]),
            pair=tup("pair"),
            residues=tup("residues"),
        )
    verdict = Verdict(
        outcome=kv["outcome"] == "pass",
        condition=None if opt("condition") is None else Condition(kv["condition"]),
        witness=witness,
        precision=None if opt("K") is None else int(kv["K"]),
        qualifier=opt("qualifier"),
    )
    return kv["check"], verdict


def describe_witness(verdict: Verdict) -> str:
    w = verdict.witness
    if w is None:
        return "none"
    c = verdict.condition
    if c is Condition.COMPAT:
        val, need = w.residues
        shown = "0 (all digits)" if val is None else f"v(B_{w.index}) = {val}"
        return f"B_{w.index} not divisible by p^{need}: {shown}"
    if c is Condition.MP_COND1:
        i, j = w.pair
        return f"b_{i} ≡ b_{j} mod p (residues of b_0..b_{{p-1}}: {_render_field(w.residues)})"
    if c is Condition.MP_COND2:
        return (
            f"level k={w.level}, base m={w.base}: residues of b_(m+i p^k), i=1..p-1 "
            f"are {_render_field(w.residues)}"
        )
    x, y = w.pair
    return f"f({x}) ≡ f({y}) mod p^{w.level}"


def render_report(check: str, verdict: Verdict) -> str:
    lines = [
        f"check: {check}",
        f"result: {'PASS' if verdict.outcome else 'FAIL'}",
    ]
    if not verdict.outcome:
        lines.append(f"condition: {verdict.condition.value}")
        lines.append(f"witness: {describe_witness(verdict)}")
    if verdict.qualifier:
        lines.append(f"qualifier: {verdict.qualifier}")
    if verdict.precision is not None:
        lines.append(f"precision: K={verdict.precision} ({DISCLAIMER})")
    lines.append(render_report_line(check, verdict))
    return "\n".join(lines) + "\n"
