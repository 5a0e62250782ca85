"""AlgebraFile: the JSON text format for graded algebra instances.

Layout (keys in this order, one basis entry / structure constant per line)::

    {
     "format": "gradedalg/1",
     "name": "...",                                  (optional)
     "field": {"kind": "Q"} | {"kind": "Fp", "p": 5},
     "grade_group": {"free_rank": 0, "torsion": [2, 2]},
     "basis": [
      {"name": "1", "degree": [0, 0]},
      ...
     ],
     "structure": [
      [i, j, k, numerator, denominator],            (b_i b_j has coefficient n/d on b_k)
      ...
     ],
     "unit": [[n, d], ...],
     "base": [0, 3]  or  [[[n, d], ...], ...],        (optional designated base)
     "provenance": {...}                             (optional construction descriptor)
    }

Structure entries are sorted lexicographically in (i, j, k) and zero entries
are omitted, so emit -> parse -> emit is byte-identical.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any

from .algebra import AlgebraError, GradedAlgebra, validate
from .constructions import from_provenance
from .grade_group import GradeGroup
from .linalg import QQ, Field, GF

FORMAT_TAG = "gradedalg/1"
_KEYS = ("format", "name", "field", "grade_group", "basis", "structure", "unit", "base", "provenance")


class AlgebraFileError(ValueError):
    """Malformed AlgebraFile; ``field`` is a JSON path, ``line`` a 1-based line number when known."""

    def __init__(self, message: str, *, field: str | None = None, line: int | None = None):
        self.message = message
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{': '.join([', '.join(where), message]) if where else message}")

    def to_json(self) -> dict:
        return {"error": "parse", "message": self.message, "field": self.field, "line": self.line}


# ----------------------------------------------------------------- emit

def _dump(x) -> str:
    return json.dumps(x, separators=(", ", ": "), ensure_ascii=False)


def _field_json(F: Field) -> dict:
    return {"kind": "Q"} if F.characteristic == 0 else {"kind": "Fp", "p": F.characteristic}


def _base_json(A: GradedAlgebra):
    if not A.base:
        return None
    F = A.field
    idx = []
    for v in A.base:
        nz = [i for i, c in enumerate(v) if c != 0]
        if len(nz) != 1 or v[nz[0]] != F.one:
            return [[list(F.pair(c)) for c in v] for v in A.base]
        idx.append(nz[0])
    return idx


def to_document(A: GradedAlgebra) -> dict:
    """The AlgebraFile content as a plain JSON-compatible dict (canonical order)."""
    F = A.field
    doc: dict[str, Any] = {"format": FORMAT_TAG}
    if A.name:
        doc["name"] = A.name
    doc["field"] = _field_json(F)
    doc["grade_group"] = A.group.to_json()
    doc["basis"] = [{"name": n, "degree": list(d.coords)} for n, d in zip(A.names, A.degrees)]
    entries = []
    for (i, j), row in A.table.items():
        for k, c in row.items():
            if c != 0:
                num, den = F.pair(c)
                entries.append([i, j, k, num, den])
    entries.sort()
    doc["structure"] = entries
    if A.unit is None:
        raise AlgebraError("algebra has no unit")
    doc["unit"] = [list(F.pair(c)) for c in A.unit]
    base = _base_json(A)
    if base is not None:
        doc["base"] = base
    if A.provenance:
        doc["provenance"] = A.provenance
    return doc


def emit(A: GradedAlgebra) -> str:
    """Canonical AlgebraFile text (ends with a newline)."""
    doc = to_document(A)
    lines = ["{"]
    items = list(doc.items())
    for n, (key, val) in enumerate(items):
        comma = "," if n < len(items) - 1 else ""
        if key in ("basis", "structure") and val:
            lines.append(f" {_dump(key)}: [")
            lines.extend(f"  {_dump(v)}{',' if m < len(val) - 1 else ''}" for m, v in enumerate(val))
            lines.append(f" ]{comma}")
        else:
            lines.append(f" {_dump(key)}: {_dump(val)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_file(A: GradedAlgebra, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit(A))


# ---------------------------------------------------------------- parse

@dataclass
class _Locator:
    text: str

    def line_of(self, key: str, occurrence: int = 0) -> int | None:
        """Line of the ``occurrence``-th item inside the array stored under ``key``
        (or of the key itself when occurrence < 0); best effort."""
        m = re.search(rf'"{re.escape(key)}"\s*:', self.text)
        if not m:
            return None
        start = self.text.count("\n", 0, m.start()) + 1
        if occurrence < 0:
            return start
        # canonical files put one array item per line, right after the key line
        return start + 1 + occurrence


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _scalar(F: Field, pair, where: str, loc: _Locator, key: str, idx: int):
    if not (isinstance(pair, list) and len(pair) == 2 and all(_is_int(v) for v in pair)):
        raise AlgebraFileError("expected [numerator, denominator] integers", field=where,
                               line=loc.line_of(key, -1))
    if pair[1] == 0:
        raise AlgebraFileError("zero denominator", field=where, line=loc.line_of(key, idx))
    if F.characteristic and pair[1] % F.characteristic == 0:
        raise AlgebraFileError("denominator divisible by the characteristic", field=where,
                               line=loc.line_of(key, idx))
    return F((pair[0], pair[1]))


def parse(text: str, *, check: bool = True) -> GradedAlgebra:
    """Parse AlgebraFile text.  With ``check`` the algebra must pass ``validate``
    and any provenance must reproduce the structure constants exactly."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    return from_document(doc, check=check, _text=text)


def from_document(doc: Any, *, check: bool = True, _text: str = "") -> GradedAlgebra:
    loc = _Locator(_text)
    if not isinstance(doc, dict):
        raise AlgebraFileError("top level must be an object", line=1)
    unknown = [k for k in doc if k not in _KEYS]
    if unknown:
        raise AlgebraFileError(f"unknown key {unknown[0]!r}", field=unknown[0], line=loc.line_of(unknown[0], -1))
    for key in ("field", "grade_group", "basis", "structure", "unit"):
        if key not in doc:
            raise AlgebraFileError("missing required key", field=key)
    if doc.get("format", FORMAT_TAG) != FORMAT_TAG:
        raise AlgebraFileError(f"unsupported format {doc['format']!r}", field="format", line=loc.line_of("format", -1))

    fj = doc["field"]
    try:
        if isinstance(fj, dict) and fj.get("kind") == "Q" and set(fj) == {"kind"}:
            F: Field = QQ
        elif isinstance(fj, dict) and fj.get("kind") == "Fp" and set(fj) == {"kind", "p"} and _is_int(fj["p"]):
            F = GF(fj["p"])
        else:
            raise ValueError('expected {"kind": "Q"} or {"kind": "Fp", "p": <prime>}')
    except ValueError as exc:
        raise AlgebraFileError(str(exc), field="field", line=loc.line_of("field", -1)) from None

    gj = doc["grade_group"]
    if not (isinstance(gj, dict) and set(gj) <= {"free_rank", "torsion"} and _is_int(gj.get("free_rank", 0))
            and gj.get("free_rank", 0) >= 0 and isinstance(gj.get("torsion", []), list)
            and all(_is_int(t) and t >= 2 for t in gj.get("torsion", []))):
        raise AlgebraFileError("expected {free_rank: int >= 0, torsion: [int >= 2, ...]}", field="grade_group",
                               line=loc.line_of("grade_group", -1))
    G = GradeGroup.from_json(gj)
    rank = G.free_rank + len(G.torsion)

    basis = doc["basis"]
    if not isinstance(basis, list):
        raise AlgebraFileError("expected a list", field="basis", line=loc.line_of("basis", -1))
    names, degrees = [], []
    for i, b in enumerate(basis):
        where = f"basis[{i}]"
        if not (isinstance(b, dict) and set(b) <= {"name", "degree"} and "degree" in b):
            raise AlgebraFileError("expected {name, degree}", field=where, line=loc.line_of("basis", i))
        d = b["degree"]
        if not (isinstance(d, list) and len(d) == rank and all(_is_int(c) for c in d)):
            raise AlgebraFileError(f"degree must be {rank} integers", field=where + ".degree",
                                   line=loc.line_of("basis", i))
        names.append(str(b.get("name", f"b{i}")))
        degrees.append(G(d))
    n = len(basis)
    if n == 0:
        raise AlgebraFileError("empty basis", field="basis", line=loc.line_of("basis", -1))

    table: dict = {}
    seen = set()
    last = None
    for e, entry in enumerate(doc["structure"] if isinstance(doc["structure"], list) else [None]):
        where = f"structure[{e}]"
        if not (isinstance(entry, list) and len(entry) == 5 and all(_is_int(v) for v in entry)):
            raise AlgebraFileError("expected [i, j, k, numerator, denominator]", field=where,
                                   line=loc.line_of("structure", e))
        i, j, k = entry[:3]
        if not all(0 <= v < n for v in (i, j, k)):
            raise AlgebraFileError(f"index out of range 0..{n - 1}", field=where, line=loc.line_of("structure", e))
        if (i, j, k) in seen:
            raise AlgebraFileError("duplicate entry", field=where, line=loc.line_of("structure", e))
        seen.add((i, j, k))
        if last is not None and (i, j, k) < last:
            raise AlgebraFileError("entries must be sorted by (i, j, k)", field=where,
                                   line=loc.line_of("structure", e))
        last = (i, j, k)
        c = _scalar(F, entry[3:], where, loc, "structure", e)
        if c == 0:
            raise AlgebraFileError("zero coefficients must be omitted", field=where, line=loc.line_of("structure", e))
        table.setdefault((i, j), {})[k] = c

    uj = doc["unit"]
    if not (isinstance(uj, list) and len(uj) == n):
        raise AlgebraFileError(f"unit must list {n} coefficients", field="unit", line=loc.line_of("unit", -1))
    unit = [_scalar(F, c, f"unit[{i}]", loc, "unit", -1) for i, c in enumerate(uj)]

    base = None
    if "base" in doc:
        bj = doc["base"]
        if isinstance(bj, list) and bj and all(_is_int(x) for x in bj):
            if not all(0 <= x < n for x in bj):
                raise AlgebraFileError("base index out of range", field="base", line=loc.line_of("base", -1))
            base = [[F.one if t == x else F.zero for t in range(n)] for x in bj]
        elif isinstance(bj, list) and bj and all(isinstance(v, list) and len(v) == n for v in bj):
            base = [[_scalar(F, c, f"base[{r}][{t}]", loc, "base", -1) for t, c in enumerate(v)]
                    for r, v in enumerate(bj)]
        else:
            raise AlgebraFileError("base must be basis indices or coefficient vectors", field="base",
                                   line=loc.line_of("base", -1))

    prov = doc.get("provenance")
    if prov is not None and not isinstance(prov, dict):
        raise AlgebraFileError("provenance must be an object", field="provenance", line=loc.line_of("provenance", -1))
    A = GradedAlgebra(F, G, degrees, table, unit, base=base, names=names, name=doc.get("name"), provenance=prov)
    if check:
        rep = validate(A)
        if not rep.ok:
            raise AlgebraFileError(f"not a graded algebra: {rep.first}", field="structure",
                                   line=loc.line_of("structure", -1))
        if prov is not None:
            try:
                rebuilt = from_provenance(F, prov)
            except (AlgebraError, KeyError, TypeError, ValueError) as exc:
                raise AlgebraFileError(f"provenance cannot be reconstructed: {exc}", field="provenance",
                                       line=loc.line_of("provenance", -1)) from None
            if not rebuilt.same_table(A):
                raise AlgebraFileError("provenance does not reproduce the structure constants",
                                       field="provenance", line=loc.line_of("provenance", -1))
    return A


def read_file(path: str, *, check: bool = True) -> GradedAlgebra:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), check=check)
