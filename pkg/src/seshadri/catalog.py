"""Built-in surfaces and the JSON surface-description format.

A surface is its intersection lattice, an ample class ``L``, optionally the
canonical class ``K``, and a catalog of curve classes.  Each catalog entry
asserts how many general points a member of the class can pass through and
with what multiplicity; these capabilities are taken as axioms of the model
and carried as provenance text, never derived.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .bounds import LatticeContext, MultiplicityVector, xu_floor
from .lattice import (
    DivisorClass,
    IntersectionLattice,
    LatticeError,
    arithmetic_genus,
    check_signature,
    hodge_filter,
    intersect,
)


class SurfaceError(ValueError):
    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True)
class Profile:
    """Members pass through up to ``max_points`` general points with multiplicity ``mult`` at each."""

    max_points: int
    mult: int

    def place(self, r: int) -> Optional[MultiplicityVector]:
        n = min(self.max_points, r)
        if n <= 0 or self.mult <= 0:
            return None
        return MultiplicityVector((self.mult,) * n + (0,) * (r - n))


@dataclass(frozen=True)
class CurveEntry:
    name: str
    cls: DivisorClass
    profile: Profile
    provenance: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "class": list(self.cls.coords),
            "profile": {"max_points": self.profile.max_points, "mult": self.profile.mult},
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    lattice: IntersectionLattice
    L: DivisorClass
    K: Optional[DivisorClass]
    catalog: tuple[CurveEntry, ...] = field(default=())

    @property
    def L2(self) -> int:
        return intersect(self.lattice, self.L, self.L)

    def entry(self, name: str) -> CurveEntry:
        for e in self.catalog:
            if e.name == name:
                return e
        raise KeyError(name)

    def context(self) -> LatticeContext:
        return LatticeContext(self.name, self.lattice.gram, self.L.coords, self.K.coords if self.K else None)

    def to_json(self) -> dict:
        doc = {
            "name": self.name,
            "rank": self.lattice.rank,
            "gram": [list(row) for row in self.lattice.gram],
            "L": list(self.L.coords),
        }
        if self.K is not None:
            doc["K"] = list(self.K.coords)
        doc["catalog"] = [e.to_json() for e in self.catalog]
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"


def _p2() -> SurfaceModel:
    lat = IntersectionLattice([[1]])
    return SurfaceModel(
        "P2",
        lat,
        DivisorClass([1]),
        DivisorClass([-3]),
        (
            CurveEntry("line", DivisorClass([1]), Profile(2, 1), "a line passes through any two points"),
            CurveEntry("conic", DivisorClass([2]), Profile(5, 1), "a conic passes through any five general points"),
        ),
    )


def cubic_lines() -> list[tuple[str, DivisorClass]]:
    """The 27 lines in the basis ``e0, e1..e6`` of the six-point blow-up of the plane."""
    def vec(a, minus):
        return DivisorClass([a] + [-1 if i in minus else 0 for i in range(1, 7)])

    lines = [(f"E{i}", DivisorClass([0] + [int(j == i) for j in range(1, 7)])) for i in range(1, 7)]
    lines += [(f"L{i}{j}", vec(1, {i, j})) for i, j in itertools.combinations(range(1, 7), 2)]
    lines += [(f"C{j}", vec(2, set(range(1, 7)) - {j})) for j in range(1, 7)]
    return lines


def _cubic() -> SurfaceModel:
    lat = IntersectionLattice([[int(i == j) * (1 if i == 0 else -1) for j in range(7)] for i in range(7)])
    H = DivisorClass([3, -1, -1, -1, -1, -1, -1])
    entries = [
        CurveEntry(
            "nodal hyperplane section",
            H,
            Profile(1, 2),
            "tangent hyperplane section: the tangent plane at a general point cuts a curve with a node there",
        )
    ]
    entries += [
        CurveEntry(name, cls, Profile(0, 1), "one of the 27 lines; a general point lies on none of them")
        for name, cls in cubic_lines()
    ]
    return SurfaceModel("cubic", lat, H, -H, tuple(entries))


def _scroll(r: int) -> SurfaceModel:
    if r < 3:
        raise SurfaceError([f"scroll(r) needs r >= 3, got {r}"])
    lat = IntersectionLattice([[r - 1, 1], [1, 0]])
    H = DivisorClass([1, 0])
    F = DivisorClass([0, 1])
    return SurfaceModel(
        f"scroll({r})",
        lat,
        H,
        DivisorClass([-2, r - 3]),
        (
            CurveEntry("fiber", F, Profile(1, 1), "a line of the ruling through one general point"),
            CurveEntry(
                "hyperplane section",
                H,
                Profile(r, 1),
                f"{r} general points span a hyperplane of P^{r}; any other irreducible D through "
                "the points has L.D = L.C >= sum mult, so this section is the only Seshadri curve",
            ),
        ),
    )


_SCROLL = re.compile(r"^scroll[\s(_-]*(\d+)\)?$", re.IGNORECASE)


def builtin(name: str) -> SurfaceModel:
    key = name.strip()
    if key.lower() in ("p2", "p^2"):
        return _p2()
    if key.lower() == "cubic":
        return _cubic()
    m = _SCROLL.match(key)
    if m:
        return _scroll(int(m.group(1)))
    raise SurfaceError([f"unknown built-in surface {name!r}; expected P2, cubic or scroll(r)"])


BUILTIN_NAMES = ("P2", "cubic", "scroll(r)")


def _int_list(value, what: str, errors: list[str]) -> Optional[list[int]]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        errors.append(f"{what} must be a list of integers")
        return None
    return value


def load_surface(document) -> SurfaceModel:
    """Parse and validate a surface description (JSON text, a path, or a dict)."""
    if isinstance(document, Path):
        document = document.read_text()
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SurfaceError([f"not valid JSON: {exc}"]) from None
    if not isinstance(document, dict):
        raise SurfaceError(["surface description must be a JSON object"])

    errors: list[str] = []
    for key in ("name", "rank", "gram", "L", "catalog"):
        if key not in document:
            errors.append(f"missing field {key!r}")
    if errors:
        raise SurfaceError(errors)

    rank = document["rank"]
    gram = document["gram"]
    if not isinstance(rank, int) or rank < 1:
        raise SurfaceError(["rank must be a positive integer"])
    if not isinstance(gram, list) or len(gram) != rank:
        raise SurfaceError([f"gram must have {rank} rows"])
    for i, row in enumerate(gram):
        if _int_list(row, f"gram row {i}", errors) is not None and len(row) != rank:
            errors.append(f"gram row {i} must have {rank} entries")
    if errors:
        raise SurfaceError(errors)
    try:
        lattice = IntersectionLattice(gram)
    except LatticeError as exc:
        raise SurfaceError([str(exc)]) from None
    sig = check_signature(lattice)
    if not sig:
        raise SurfaceError([f"bad signature: {sig.details}; expected (1, {rank - 1})"])

    def as_class(value, what):
        coords = _int_list(value, what, errors)
        if coords is None:
            return None
        if len(coords) != rank:
            errors.append(f"{what} has {len(coords)} coordinates, lattice rank is {rank}")
            return None
        return DivisorClass(coords)

    L = as_class(document["L"], "L")
    K = as_class(document["K"], "K") if document.get("K") is not None else None
    entries = []
    if not isinstance(document["catalog"], list):
        errors.append("catalog must be a list")
    else:
        for i, raw in enumerate(document["catalog"]):
            what = f"catalog[{i}]"
            if not isinstance(raw, dict) or not {"name", "class", "profile"} <= raw.keys():
                errors.append(f"{what} needs name, class and profile")
                continue
            cls = as_class(raw["class"], f"{what}.class")
            prof = raw["profile"]
            if (
                not isinstance(prof, dict)
                or not isinstance(prof.get("max_points"), int)
                or not isinstance(prof.get("mult"), int)
                or prof["max_points"] < 0
                or prof["mult"] < 1
            ):
                errors.append(f"{what}: malformed profile {prof!r}")
                continue
            if cls is None:
                continue
            entries.append(CurveEntry(str(raw["name"]), cls, Profile(prof["max_points"], prof["mult"]), str(raw.get("provenance", ""))))
    if errors:
        raise SurfaceError(errors)

    model = SurfaceModel(str(document["name"]), lattice, L, K, tuple(entries))
    if model.L2 < 1:
        errors.append(f"L^2 = {model.L2} must be positive")
    for e in entries:
        lc = intersect(lattice, L, e.cls)
        if lc < 1:
            errors.append(f"entry {e.name!r} has L.C = {lc} <= 0")
    if errors:
        raise SurfaceError(errors)
    return model


def shipped_path(name: str) -> Path:
    """Path to a golden surface file bundled with the package (``p2``, ``cubic``, ``scroll-5``)."""
    stem = name[:-5] if name.endswith(".json") else name
    return Path(str(resources.files("seshadri") / "data" / f"{stem}.json"))


def resolve_surface(name: str) -> SurfaceModel:
    """A built-in name, a path to a JSON file, or the name of a bundled golden file."""
    p = Path(name)
    if p.suffix == ".json" or p.exists():
        if not p.exists():
            p = shipped_path(p.name)
        return load_surface(p)
    return builtin(name)


@dataclass(frozen=True)
class Diagnostic:
    level: str  # "ok", "warning" or "error"
    check: str
    message: str

    def to_json(self) -> dict:
        return {"level": self.level, "check": self.check, "message": self.message}


def validate(model: SurfaceModel) -> list[Diagnostic]:
    out = []
    sig = check_signature(model.lattice)
    out.append(Diagnostic("ok" if sig else "error", "signature", sig.details))
    L2 = model.L2
    out.append(Diagnostic("ok" if L2 >= 1 else "error", "L^2", f"L^2 = {L2}"))
    if model.K is None:
        out.append(Diagnostic("ok", "canonical class", "K not given; genus diagnostics disabled"))
    for e in model.catalog:
        lc = intersect(model.lattice, model.L, e.cls)
        c2 = intersect(model.lattice, e.cls, e.cls)
        out.append(Diagnostic("ok" if lc >= 1 else "error", f"{e.name}: L.C", f"L.C = {lc}"))
        if L2 >= 1:
            ok = hodge_filter(L2, lc, c2)
            out.append(Diagnostic("ok" if ok else "error", f"{e.name}: Hodge", f"L^2 C^2 = {L2 * c2} <= (L.C)^2 = {lc * lc}"))
        placed = e.profile.place(max(e.profile.max_points, 1))
        if placed is not None and e.profile.max_points >= 1:
            floor = xu_floor(placed)
            lvl = "ok" if c2 >= floor else "warning"
            out.append(Diagnostic(lvl, f"{e.name}: Xu floor", f"C^2 = {c2} vs floor {floor} for profile {placed}"))
        if model.K is not None:
            ck = intersect(model.lattice, e.cls, model.K)
            even = (c2 + ck) % 2 == 0
            out.append(Diagnostic("ok" if even else "error", f"{e.name}: adjunction parity", f"C^2 + C.K = {c2 + ck}"))
            genus = arithmetic_genus(e.cls, model.K, model.lattice)
            mu = e.profile.mult
            nodes = Fraction(mu * (mu - 1), 2) * (e.profile.max_points if mu > 1 else 0)
            lvl = "ok" if nodes <= genus else "warning"
            out.append(Diagnostic(lvl, f"{e.name}: genus", f"p_a = {genus}, singular points need {nodes}"))
    return out
