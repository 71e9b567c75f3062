"""Serialise presentations as plain text, GAP, Magma or JSON.

Writers stream one relator at a time. Bodies carry no timestamps, so equal
presentations give byte-identical output.
"""

from __future__ import annotations

import io
import json
from enum import Enum
from typing import IO

from .presentation import Flavor, Presentation, Relator, stats
from .transvections import WordScheme
from .words import parse_word

SCHEMA_VERSION = 1


class ExportFormat(str, Enum):
    TEXT = "text"
    GAP = "gap"
    MAGMA = "magma"
    JSON = "json"

    def __str__(self) -> str:
        return self.value


def _header(P: Presentation) -> str:
    return (
        f"SL_{P.rank}(Z) two-generator presentation: flavor={P.flavor} "
        f"scheme={P.scheme} relators={len(P.relators)}"
    )


def write_text(P: Presentation, out: IO[str]) -> None:
    out.write(f"# {_header(P)}\n")
    out.write(f"# generators: {', '.join(P.generators)}\n")
    for r in P.relators:
        out.write(f"{r.word}\n")


def _cas_word(r: Relator, g: str) -> str:
    # both GAP and Magma need a group element, not the integer 1
    return str(r.word) if r.word else f"{g}^0"


def write_gap(P: Presentation, out: IO[str]) -> None:
    g, h = P.generators
    out.write(f"# {_header(P)}\n")
    out.write(f'F := FreeGroup("{g}", "{h}");;\n')
    out.write(f"{g} := F.1;; {h} := F.2;;\n")
    out.write("rels := [\n")
    last = len(P.relators) - 1
    for i, r in enumerate(P.relators):
        out.write(f"  {_cas_word(r, g)}{',' if i < last else ''}\n")
    out.write("];;\n")
    out.write("G := F / rels;;\n")


def write_magma(P: Presentation, out: IO[str]) -> None:
    g, h = P.generators
    out.write(f"// {_header(P)}\n")
    out.write(f"G<{g},{h}> := Group<{g},{h} |\n")
    last = len(P.relators) - 1
    for i, r in enumerate(P.relators):
        out.write(f"  {_cas_word(r, g)}{',' if i < last else ''}\n")
    out.write(">;\n")


def write_json(P: Presentation, out: IO[str]) -> None:
    s = stats(P)
    head = {
        "schema_version": SCHEMA_VERSION,
        "rank": P.rank,
        "scheme": str(P.scheme),
        "flavor": str(P.flavor),
        "generators": list(P.generators),
    }
    out.write("{\n")
    for key, value in head.items():
        out.write(f"  {json.dumps(key)}: {json.dumps(value)},\n")
    out.write('  "relators": [\n')
    last = len(P.relators) - 1
    for i, r in enumerate(P.relators):
        item = {"kind": r.kind, "indices": list(r.indices), "word": str(r.word), "length": len(r.word)}
        out.write(f"    {json.dumps(item)}{',' if i < last else ''}\n")
    out.write("  ],\n")
    summary = {k: s[k] for k in ("count", "total_length", "max_length")}
    out.write(f'  "stats": {json.dumps(summary)}\n')
    out.write("}\n")


WRITERS = {
    ExportFormat.TEXT: write_text,
    ExportFormat.GAP: write_gap,
    ExportFormat.MAGMA: write_magma,
    ExportFormat.JSON: write_json,
}


def export(P: Presentation, fmt: ExportFormat | str, out: IO[str] | None = None) -> bytes | None:
    """Write ``P`` to ``out``; with no stream, return the UTF-8 bytes."""
    writer = WRITERS[ExportFormat(fmt)]
    if out is not None:
        writer(P, out)
        return None
    buf = io.StringIO(newline="\n")
    writer(P, buf)
    return buf.getvalue().encode("utf-8")


def export_to_path(P: Presentation, fmt: ExportFormat | str, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        export(P, fmt, fh)


class SchemaError(ValueError):
    pass


def presentation_from_json(data: dict | str | bytes) -> Presentation:
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    if data.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {data.get('schema_version')!r}")
    try:
        relators = tuple(
            Relator(r["kind"], tuple(r["indices"]), parse_word(r["word"]))
            for r in data["relators"]
        )
        return Presentation(
            int(data["rank"]),
            tuple(data["generators"]),
            WordScheme(data["scheme"]),
            Flavor(data["flavor"]),
            relators,
        )
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed presentation json: {exc}") from exc


def load_json(path: str) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return presentation_from_json(json.load(fh))
