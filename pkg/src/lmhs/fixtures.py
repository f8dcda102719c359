"""Fixture file format: JSON with exact rationals serialized as "num/den".

Top level:
    {"format": "lmhs-fixture/1", "kind": ..., "name": ..., "note": ...,
     "payload": {...}}

Kinds: "degeneration", "quiver", "polydisk", "local_system", "tail_strata".
Serialization is canonical (sorted keys, sorted entries), so parse after
serialize is the identity on canonical fixtures.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .degeneration import (
    DegenerationFixture,
    DegreeData,
    Flags,
    LocalSystemData,
    TailStrata,
)
from .hodge import HodgeDeligneDiagram, InvalidString, LmhsSpec, NString
from .polydisk import MultiLmhs, StrataInput, StratumData
from .quiver import DiskQuiverRep
from .ratlin import RationalMatrix

FORMAT = "lmhs-fixture/1"
KINDS = ("degeneration", "quiver", "polydisk", "local_system", "tail_strata")


class FixtureError(ValueError):
    """Schema violation, with a path into the document for diagnostics."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class FixtureFile:
    kind: str
    name: str
    note: str
    payload: object  # DegenerationFixture | DiskQuiverRep | PolydiskFixture | ...

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FixtureError("kind", f"unknown kind {self.kind!r}")


@dataclass(frozen=True)
class LocalSystemFixture:
    data: LocalSystemData
    shioda: tuple | None = None  # (h0_upper, ih1, phantom_total, h0_lower)


@dataclass(frozen=True)
class TailFixture:
    strata: TailStrata
    vanishing: HodgeDeligneDiagram


@dataclass(frozen=True)
class PolydiskFixture:
    r: int
    strata: StrataInput
    invariants: tuple = ()  # ((degree, diagram), ...) expected multi-invariants, optional

    def open_limit(self, degree: int) -> MultiLmhs | None:
        stratum = self.strata.stratum(())
        return stratum.limit_at(degree) if stratum else None


# --------------------------------------------------------------------------
# encoding


def _enc_diagram(d: HodgeDeligneDiagram) -> dict:
    return {"entries": [[p, q, m] for (p, q), m in d.entries]}


def _enc_spec(s: LmhsSpec) -> dict:
    return {
        "degree": s.degree,
        "strings": [
            {
                "top": list(x.top),
                "length": x.length,
                "order": x.order,
                "exponent": x.exponent,
                "multiplicity": x.multiplicity,
            }
            for x in s.strings
        ],
    }


def _enc_frac(x: Fraction) -> str:
    return str(x)


def _enc_matrix(m: RationalMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[_enc_frac(x) for x in row] for row in m.entries],
    }


def _enc_multilmhs(h: MultiLmhs) -> dict:
    return {
        "parameters": h.r,
        "basis": [
            {"pq": list(pq), "ss": [list(t) for t in ss]} for pq, ss in zip(h.labels, h.ss)
        ],
        "logs": [_enc_matrix(m) for m in h.logs],
    }


def encode(fixture: FixtureFile) -> dict:
    p = fixture.payload
    if fixture.kind == "degeneration":
        payload = {
            "relative_dimension": p.n,
            "flags": {
                "total_space_smooth": p.flags.total_space_smooth,
                "total_space_lci": p.flags.total_space_lci,
                "special_fiber_reduced": p.flags.special_fiber_reduced,
                "d_sing": p.flags.d_sing,
                "singularity_class": p.flags.singularity_class,
            },
            "degrees": {
                str(k): {
                    "special_fiber": _enc_diagram(data.special_fiber),
                    "lmhs": _enc_spec(data.lmhs) if data.lmhs is not None else None,
                    "phantom": _enc_diagram(data.phantom) if data.phantom is not None else None,
                    "vanishing": _enc_diagram(data.vanishing) if data.vanishing is not None else None,
                    "intersection": _enc_diagram(data.intersection)
                    if data.intersection is not None
                    else None,
                }
                for k, data in p.degrees
            },
        }
    elif fixture.kind == "quiver":
        payload = {
            "psi_dim": p.psi_dim,
            "phi_dim": p.phi_dim,
            "t_psi": _enc_matrix(p.t_psi),
            "t_phi": _enc_matrix(p.t_phi),
            "can": _enc_matrix(p.can),
            "var": _enc_matrix(p.var),
        }
    elif fixture.kind == "polydisk":
        payload = {
            "parameters": p.r,
            "strata": [
                {
                    "subset": list(subset),
                    "invariants": {str(d): _enc_diagram(diag) for d, diag in data.invariants},
                    "limit": {str(d): _enc_multilmhs(h) for d, h in data.limit},
                }
                for subset, data in p.strata.strata
            ],
            "expected_invariants": {str(d): _enc_diagram(diag) for d, diag in p.invariants},
        }
    elif fixture.kind == "local_system":
        payload = {
            "euler_characteristic": p.data.euler_characteristic,
            "h1": p.data.h1,
            "rank": p.data.rank,
            "fixed_rank": p.data.fixed_rank,
            "local_drops": list(p.data.local_drops),
            "shioda": list(p.shioda) if p.shioda is not None else None,
        }
    else:  # tail_strata
        payload = {
            "dimension": p.strata.n,
            "chi_open": list(p.strata.chi_open),
            "exceptional_diagrams": {str(k): _enc_diagram(d) for k, d in p.strata.exceptional_diagrams},
            "ambient_diagrams": {str(k): _enc_diagram(d) for k, d in p.strata.ambient_diagrams},
            "vanishing": _enc_diagram(p.vanishing),
        }
    return {
        "format": FORMAT,
        "kind": fixture.kind,
        "name": fixture.name,
        "note": fixture.note,
        "payload": payload,
    }


def serialize(fixture: FixtureFile) -> str:
    return json.dumps(encode(fixture), indent=1, sort_keys=True) + "\n"


# --------------------------------------------------------------------------
# decoding


def _need(doc: dict, key: str, path: str):
    if not isinstance(doc, dict) or key not in doc:
        raise FixtureError(path, f"missing field {key!r}")
    return doc[key]


def _dec_diagram(doc, path: str) -> HodgeDeligneDiagram:
    entries = _need(doc, "entries", path)
    table = {}
    for i, entry in enumerate(entries):
        if not (isinstance(entry, list) and len(entry) == 3):
            raise FixtureError(f"{path}.entries[{i}]", "expected [p, q, multiplicity]")
        p, q, m = entry
        if m < 0:
            raise FixtureError(f"{path}.entries[{i}]", f"negative multiplicity {m}")
        table[(p, q)] = table.get((p, q), 0) + m
    return HodgeDeligneDiagram.from_dict(table)


def _dec_spec(doc, path: str) -> LmhsSpec:
    degree = _need(doc, "degree", path)
    strings = []
    for i, s in enumerate(_need(doc, "strings", path)):
        spath = f"{path}.strings[{i}]"
        try:
            strings.append(
                NString(
                    tuple(_need(s, "top", spath)),
                    _need(s, "length", spath),
                    _need(s, "order", spath),
                    _need(s, "exponent", spath),
                    _need(s, "multiplicity", spath),
                )
            )
        except InvalidString as exc:
            raise FixtureError(spath, str(exc))
    try:
        return LmhsSpec(degree, tuple(strings))
    except InvalidString as exc:
        raise FixtureError(path, str(exc))


def _dec_matrix(doc, path: str) -> RationalMatrix:
    rows = _need(doc, "rows", path)
    cols = _need(doc, "cols", path)
    entries = _need(doc, "entries", path)
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise FixtureError(path, "entry grid does not match the declared shape")
    try:
        data = [[Fraction(x) for x in row] for row in entries]
    except (ValueError, ZeroDivisionError) as exc:
        raise FixtureError(path, f"bad rational entry: {exc}")
    if rows == 0 or cols == 0:
        return RationalMatrix.zeros(rows, cols)
    return RationalMatrix.from_rows(data)


def _dec_multilmhs(doc, path: str) -> MultiLmhs:
    r = _need(doc, "parameters", path)
    basis = _need(doc, "basis", path)
    labels = []
    ss = []
    for i, b in enumerate(basis):
        labels.append(tuple(_need(b, "pq", f"{path}.basis[{i}]")))
        ss.append(tuple(tuple(t) for t in _need(b, "ss", f"{path}.basis[{i}]")))
    logs = tuple(_dec_matrix(m, f"{path}.logs[{i}]") for i, m in enumerate(_need(doc, "logs", path)))
    h = MultiLmhs(r, tuple(labels), tuple(ss), logs)
    problems = h.validate()
    if problems:
        raise FixtureError(path, "; ".join(problems))
    return h


def decode(doc: dict, path: str = "$") -> FixtureFile:
    if _need(doc, "format", path) != FORMAT:
        raise FixtureError(f"{path}.format", f"expected {FORMAT!r}")
    kind = _need(doc, "kind", path)
    if kind not in KINDS:
        raise FixtureError(f"{path}.kind", f"unknown kind {kind!r}")
    name = _need(doc, "name", path)
    note = doc.get("note", "")
    p = _need(doc, "payload", path)
    ppath = f"{path}.payload"
    if kind == "degeneration":
        flags_doc = _need(p, "flags", ppath)
        flags = Flags(
            bool(_need(flags_doc, "total_space_smooth", f"{ppath}.flags")),
            bool(flags_doc.get("total_space_lci", False)),
            bool(_need(flags_doc, "special_fiber_reduced", f"{ppath}.flags")),
            int(_need(flags_doc, "d_sing", f"{ppath}.flags")),
            _need(flags_doc, "singularity_class", f"{ppath}.flags"),
        )
        table = {}
        for key, entry in _need(p, "degrees", ppath).items():
            dpath = f"{ppath}.degrees.{key}"
            k = int(key)
            table[k] = DegreeData(
                special_fiber=_dec_diagram(_need(entry, "special_fiber", dpath), f"{dpath}.special_fiber"),
                lmhs=_dec_spec(entry["lmhs"], f"{dpath}.lmhs") if entry.get("lmhs") else None,
                phantom=_dec_diagram(entry["phantom"], f"{dpath}.phantom")
                if entry.get("phantom")
                else None,
                vanishing=_dec_diagram(entry["vanishing"], f"{dpath}.vanishing")
                if entry.get("vanishing")
                else None,
                intersection=_dec_diagram(entry["intersection"], f"{dpath}.intersection")
                if entry.get("intersection")
                else None,
            )
        for k, data in table.items():
            if data.lmhs is not None and data.lmhs.degree != k:
                raise FixtureError(
                    f"{ppath}.degrees.{k}.lmhs", f"labeled degree {data.lmhs.degree}, expected {k}"
                )
        payload = DegenerationFixture.from_dict(
            int(_need(p, "relative_dimension", ppath)), table, flags
        )
    elif kind == "quiver":
        payload = DiskQuiverRep(
            int(_need(p, "psi_dim", ppath)),
            int(_need(p, "phi_dim", ppath)),
            _dec_matrix(_need(p, "t_psi", ppath), f"{ppath}.t_psi"),
            _dec_matrix(_need(p, "t_phi", ppath), f"{ppath}.t_phi"),
            _dec_matrix(_need(p, "can", ppath), f"{ppath}.can"),
            _dec_matrix(_need(p, "var", ppath), f"{ppath}.var"),
        )
    elif kind == "polydisk":
        strata = []
        for i, s in enumerate(_need(p, "strata", ppath)):
            spath = f"{ppath}.strata[{i}]"
            subset = tuple(sorted(_need(s, "subset", spath)))
            invariants = tuple(
                sorted(
                    (int(d), _dec_diagram(diag, f"{spath}.invariants.{d}"))
                    for d, diag in s.get("invariants", {}).items()
                )
            )
            limit = tuple(
                sorted(
                    ((int(d), _dec_multilmhs(h, f"{spath}.limit.{d}")) for d, h in s.get("limit", {}).items()),
                    key=lambda t: t[0],
                )
            )
            strata.append((subset, StratumData(invariants, limit)))
        invariants = tuple(
            sorted(
                (int(d), _dec_diagram(diag, f"{ppath}.expected_invariants.{d}"))
                for d, diag in p.get("expected_invariants", {}).items()
            )
        )
        payload = PolydiskFixture(
            int(_need(p, "parameters", ppath)),
            StrataInput(int(_need(p, "parameters", ppath)), tuple(strata)),
            invariants,
        )
    elif kind == "local_system":
        data = LocalSystemData(
            int(_need(p, "euler_characteristic", ppath)),
            int(_need(p, "h1", ppath)),
            int(_need(p, "rank", ppath)),
            int(p.get("fixed_rank", 0)),
            tuple(p.get("local_drops", ())),
        )
        shioda = tuple(p["shioda"]) if p.get("shioda") is not None else None
        payload = LocalSystemFixture(data, shioda)
    else:
        strata = TailStrata(
            int(_need(p, "dimension", ppath)),
            tuple(_need(p, "chi_open", ppath)),
            tuple(
                sorted(
                    (int(k), _dec_diagram(d, f"{ppath}.exceptional_diagrams.{k}"))
                    for k, d in p.get("exceptional_diagrams", {}).items()
                )
            ),
            tuple(
                sorted(
                    (int(k), _dec_diagram(d, f"{ppath}.ambient_diagrams.{k}"))
                    for k, d in p.get("ambient_diagrams", {}).items()
                )
            ),
        )
        payload = TailFixture(strata, _dec_diagram(_need(p, "vanishing", ppath), f"{ppath}.vanishing"))
    return FixtureFile(kind, name, note, payload)


def parse_fixture(path) -> FixtureFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FixtureError(str(path), f"not valid JSON: {exc}")
    except OSError as exc:
        raise FixtureError(str(path), f"cannot read file: {exc}")
    return decode(doc)


def loads(text: str) -> FixtureFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError("$", f"not valid JSON: {exc}")
    return decode(doc)


def builtin_names() -> list:
    root = resources.files("lmhs").joinpath("data")
    return sorted(p.name[: -len(".json")] for p in root.iterdir() if p.name.endswith(".json"))


def load_builtin(name: str) -> FixtureFile:
    path = resources.files("lmhs").joinpath("data").joinpath(f"{name}.json")
    if not path.is_file():
        raise FixtureError(name, f"no shipped fixture named {name!r}; have {builtin_names()}")
    return loads(path.read_text(encoding="utf-8"))
