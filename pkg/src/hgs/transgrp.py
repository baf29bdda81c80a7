"""Transitive-group corpus files and group-spec strings.

Corpus format, one record per line:

    <degree>T<index> | cycle ; cycle ; ...    # optional comment

Cycles are 1-based, whitespace-insensitive; '#' starts a comment (full-line or
trailing, kept as the record's provenance note).  Transitivity is validated on
load.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from . import catalog
from .aut import holomorph
from .errors import BadSpec, NotTransitive, ParseError, UnknownRecord
from .groups import PermGroup, PointedGroup
from .perm import Perm, format_cycles, parse_cycles


@dataclass
class TransitiveGroupRecord:
    degree: int
    index: int
    generators: list
    provenance: str = ""

    @property
    def label(self):
        return f"{self.degree}T{self.index}"

    def pointed_group(self):
        return PointedGroup(PermGroup(list(self.generators)), 0)


_RECORD_RE = re.compile(r"^(\d+)T(\d+)\s*\|\s*(.*)$")


def parse_transitive_file(text):
    """Parse corpus text into validated records (transitivity checked)."""
    records = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line, _, comment = raw.partition("#")
        line = line.strip()
        comment = comment.strip()
        if not line:
            continue
        m = _RECORD_RE.match(line)
        if m is None:
            raise ParseError(f"expected '<d>T<k> | cycles': {line!r}", line=lineno)
        degree, index = int(m.group(1)), int(m.group(2))
        if (degree, index) in seen:
            raise ParseError(f"duplicate record {degree}T{index}", line=lineno)
        seen.add((degree, index))
        gens = []
        for part in m.group(3).split(";"):
            part = part.strip()
            if not part:
                raise ParseError("empty generator", line=lineno)
            try:
                gens.append(parse_cycles(part, degree=degree))
            except ParseError as exc:
                raise ParseError(f"{degree}T{index}: {exc}", line=lineno) from exc
        rec = TransitiveGroupRecord(degree, index, gens, comment)
        if len(PermGroup(gens).orbit(0)) != degree:
            raise NotTransitive(f"{rec.label} (line {lineno}) is not transitive")
        records.append(rec)
    return records


def serialize_records(records):
    lines = []
    for rec in records:
        text = " ; ".join(format_cycles(g) for g in rec.generators)
        note = f"  # {rec.provenance}" if rec.provenance else ""
        lines.append(f"{rec.label} | {text}{note}")
    return "\n".join(lines) + "\n"


def load_corpus(path=None, degree=27):
    """Records from a corpus file, or the bundled degree-27/9 data."""
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = (
            resources.files("hgs.data")
            .joinpath(f"transitive_{degree}.txt")
            .read_text(encoding="utf-8")
        )
    return parse_transitive_file(text)


def corpus_index(records):
    return {rec.label: rec for rec in records}


_SPEC_RES = [
    ("cyclic", re.compile(r"^C(\d+)$")),
    ("product", re.compile(r"^C(\d+)xC(\d+)$")),
    ("power3", re.compile(r"^C(\d+)\^3$")),
    ("power2", re.compile(r"^C(\d+)\^2$")),
    ("heis", re.compile(r"^H(\d+)$")),
    ("exp2", re.compile(r"^G(\d+)$")),
]


def _prime_power(m):
    for p in range(2, m + 1):
        if m % p == 0:
            n = 0
            while m % p == 0:
                m //= p
                n += 1
            return (p, n) if m == 1 else None
    return None


def resolve_type_spec(spec):
    """A LabeledGroup from a type spec like C27, C9xC3, C3^3, H27, G27."""
    spec = spec.strip()
    for kind, rx in _SPEC_RES:
        m = rx.match(spec)
        if not m:
            continue
        if kind == "cyclic":
            pp = _prime_power(int(m.group(1)))
            if not pp:
                raise BadSpec(f"{spec}: order must be a prime power")
            return catalog.build_cyclic(*pp)
        if kind == "product":
            m1, m2 = int(m.group(1)), int(m.group(2))
            pp = _prime_power(m2)
            if not pp or pp[1] != 1:
                raise BadSpec(f"{spec}: second factor must be prime")
            p = pp[0]
            if m1 == p * p:
                return catalog.build_mixed(p)
            if m1 == p:
                return catalog.build_elementary_rank2(p)
            raise BadSpec(f"{spec}: supported products are Cp^2xCp and CpxCp")
        p3 = int(m.group(1)) if kind in ("power3", "power2") else None
        if kind == "power3":
            return catalog.build_elementary(p3)
        if kind == "power2":
            return catalog.build_elementary_rank2(p3)
        pp = _prime_power(int(m.group(1)))
        if not pp or pp[1] != 3:
            raise BadSpec(f"{spec}: order must be p^3")
        if kind == "heis":
            return catalog.build_heisenberg(pp[0])
        return catalog.build_exp_p2(pp[0])
    raise BadSpec(f"unknown group type spec {spec!r}")


_HOL_RE = re.compile(r"^Hol\((.+)\)$")
_SEMI_RE = re.compile(r"^C(\d+):C(\d+)$")
_SYL_RE = re.compile(r"^P([12])@(\d+)$")
_LABEL_RE = re.compile(r"^(\d+)T(\d+)$")


def resolve_spec(spec, corpus=None):
    """A PointedGroup from a spec string.

    Supported: type specs (regular representation), C{p^n}:C{D} semidirect
    products, Hol(<type>), P1@p / P2@p Sylow groups, and dTk corpus labels.
    """
    spec = spec.strip()
    m = _LABEL_RE.match(spec)
    if m:
        degree = int(m.group(1))
        if corpus is None:
            corpus = corpus_index(load_corpus(degree=degree))
        elif not isinstance(corpus, dict):
            corpus = corpus_index(corpus)
        if spec not in corpus:
            raise UnknownRecord(f"{spec} not in the corpus")
        return corpus[spec].pointed_group()
    m = _SEMI_RE.match(spec)
    if m:
        pp = _prime_power(int(m.group(1)))
        if not pp:
            raise BadSpec(f"{spec}: left factor must be a prime power")
        return catalog.build_cpn_semidirect(pp[0], pp[1], int(m.group(2)))
    m = _HOL_RE.match(spec)
    if m:
        return holomorph(resolve_type_spec(m.group(1)))
    m = _SYL_RE.match(spec)
    if m:
        p = int(m.group(2))
        pg = catalog.build_P1(p) if m.group(1) == "1" else catalog.build_P2(p)
        return PointedGroup(pg, 0)
    return catalog.regular_representation(resolve_type_spec(spec))
