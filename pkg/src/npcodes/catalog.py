"""Bundled catalog of network protection codes.

Records are one per line: ``n k d_min provenance generator [# note]``.
BCH records are constructed on first use; records without a matrix are
returned as parameter-only :class:`~npcodes.codes.LinearCode` objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .codes import LinearCode, code_from_generator, construct_bch
from .gf2 import BitMatrix, Distance


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogRecord:
    n: int
    k: int
    d_min: int
    kind: str
    tables: tuple[str, ...]
    generator: str
    note: str = ""
    line: int = 0

    @property
    def t(self) -> int:
        return self.d_min - 1

    @property
    def has_matrix(self) -> bool:
        return self.generator != "-"

    @property
    def provenance(self) -> str:
        return f"{self.kind}@{','.join(self.tables)}"

    def to_line(self) -> str:
        out = f"{self.n} {self.k} {self.d_min} {self.provenance} {self.generator}"
        return f"{out} # {self.note}" if self.note else out


def parse_catalog(text: str, source: str = "<catalog>") -> list[CatalogRecord]:
    records = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body, _, note = raw.partition("#")
        body = body.strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 5:
            raise CatalogError(f"{source}:{lineno}: expected 5 fields, got {len(parts)}")
        try:
            n, k, d = (int(x) for x in parts[:3])
        except ValueError:
            raise CatalogError(f"{source}:{lineno}: n, k, d_min must be integers") from None
        kind, sep, tables = parts[3].partition("@")
        if not sep or not kind:
            raise CatalogError(f"{source}:{lineno}: provenance must look like kind@T1,T2")
        if not 1 <= k <= n or d < 1:
            raise CatalogError(f"{source}:{lineno}: invalid parameters [{n},{k},{d}]")
        records.append(CatalogRecord(n, k, d, kind, tuple(tables.split(",")) if tables else (),
                                     parts[4], note.strip(), lineno))
    return records


def bundled_catalog_text() -> str:
    return resources.files("npcodes").joinpath("data/catalog.txt").read_text()


@lru_cache(maxsize=None)
def _build(record: CatalogRecord) -> LinearCode:
    gen = record.generator
    prov = record.provenance
    if gen == "-":
        return LinearCode(record.n, record.k, Distance(record.d_min, True, "table"),
                          provenance=prov, note=record.note)
    if gen.startswith("bch:"):
        try:
            _, n, d = gen.split(":")
            code = construct_bch(int(n), int(d))
        except ValueError as exc:
            raise CatalogError(f"line {record.line}: bad BCH directive {gen!r}: {exc}") from None
        code = LinearCode(code.n, code.k, code.distance, code.generator, code.parity,
                          f"{prov};{code.provenance}", code.perm, record.note)
    else:
        g = BitMatrix.from_rows(gen.split(","))
        code = code_from_generator(g, prov, note=record.note)
    if (code.n, code.k) != (record.n, record.k) or code.d_min != record.d_min:
        raise CatalogError(f"line {record.line}: built {code.label} but record says "
                           f"[{record.n},{record.k},{record.d_min}]")
    return code


class Catalog:
    def __init__(self, records: list[CatalogRecord]):
        self.records = records

    @classmethod
    def load(cls, path: str | Path | None = None) -> "Catalog":
        if path is None:
            return cls(parse_catalog(bundled_catalog_text(), "catalog.txt"))
        p = Path(path)
        return cls(parse_catalog(p.read_text(), str(p)))

    def select(self, n: int | None = None, t: int | None = None, kind: str | None = None,
               with_matrix: bool | None = None) -> list[CatalogRecord]:
        out = []
        for r in self.records:
            if n is not None and r.n != n:
                continue
            if t is not None and r.t != t:
                continue
            if kind is not None and r.kind != kind:
                continue
            if with_matrix is not None and r.has_matrix != with_matrix:
                continue
            out.append(r)
        return out

    def codes(self, **query) -> list[LinearCode]:
        return [_build(r) for r in self.select(**query)]


def catalog(n: int | None = None, t: int | None = None, kind: str | None = None,
            path: str | Path | None = None) -> list[LinearCode]:
    """Catalog entries of length ``n`` tolerating exactly ``t`` failures."""
    return Catalog.load(path).codes(n=n, t=t, kind=kind)
