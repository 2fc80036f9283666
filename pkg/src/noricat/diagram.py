"""Diagrams (quivers) and their representations in free R-modules, R = Z or Q."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .linalg import IntMat, Matrix, RatMat, matrix_from_json


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class Coproduct:
    """Declares ``sum`` = p ⊔ q with inclusions ``i: p -> sum`` and ``i_prime: q -> sum``."""

    p: str
    q: str
    sum: str
    i: str
    i_prime: str


@dataclass(frozen=True)
class Diagram:
    objects: tuple[str, ...] = ()
    arrows: tuple[Arrow, ...] = ()
    coproducts: tuple[Coproduct, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "arrows", tuple(
            a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows))
        object.__setattr__(self, "coproducts", tuple(
            c if isinstance(c, Coproduct) else Coproduct(*c) for c in self.coproducts))
        problems = self.problems()
        if problems:
            raise ValueError("invalid diagram: " + "; ".join(problems))

    def problems(self) -> list[str]:
        out = []
        objs = set(self.objects)
        if len(objs) != len(self.objects):
            out.append("duplicate object identifiers")
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            out.append("duplicate arrow identifiers")
        for a in self.arrows:
            if a.src not in objs or a.dst not in objs:
                out.append(f"arrow {a.id} references an undeclared object")
        arrows = {a.id: a for a in self.arrows}
        for c in self.coproducts:
            i, ip = arrows.get(c.i), arrows.get(c.i_prime)
            if i is None or ip is None:
                out.append(f"coproduct {c.p}+{c.q}: undeclared inclusion arrow")
            elif (i.src, i.dst) != (c.p, c.sum) or (ip.src, ip.dst) != (c.q, c.sum):
                out.append(f"coproduct {c.p}+{c.q}: inclusion arrows have wrong endpoints")
        return out

    def arrow(self, aid: str) -> Arrow:
        for a in self.arrows:
            if a.id == aid:
                return a
        raise KeyError(aid)

    def is_subdiagram_of(self, other: "Diagram") -> bool:
        return set(self.objects) <= set(other.objects) and set(self.arrows) <= set(other.arrows)

    def union(self, other: "Diagram") -> "Diagram":
        objs = list(self.objects) + [o for o in other.objects if o not in set(self.objects)]
        arrows = list(self.arrows) + [a for a in other.arrows if a not in set(self.arrows)]
        cops = list(self.coproducts) + [c for c in other.coproducts
                                        if c not in set(self.coproducts)]
        return Diagram(tuple(objs), tuple(arrows), tuple(cops))

    def sub(self, objects: Iterable[str], arrows: Iterable[str] | None = None) -> "Diagram":
        """Subdiagram on ``objects``; with ``arrows=None`` it is the full subdiagram."""
        keep = set(objects)
        objs = tuple(o for o in self.objects if o in keep)
        if arrows is None:
            arr = tuple(a for a in self.arrows if a.src in keep and a.dst in keep)
        else:
            wanted = set(arrows)
            unknown = wanted - {a.id for a in self.arrows}
            if unknown:
                raise ValueError(f"unknown arrows {sorted(unknown)}")
            arr = tuple(a for a in self.arrows if a.id in wanted)
        ids = {a.id for a in arr}
        cops = tuple(c for c in self.coproducts
                     if {c.p, c.q, c.sum} <= keep and {c.i, c.i_prime} <= ids)
        return Diagram(objs, arr, cops)

    def to_json(self) -> dict:
        return {"objects": list(self.objects),
                "arrows": [{"id": a.id, "src": a.src, "dst": a.dst} for a in self.arrows]}


@dataclass(frozen=True)
class Representation:
    """A diagram with a free module ``R^value(p)`` per object and a matrix per arrow.

    Construction does not enforce shape/ring consistency; call :func:`validate`
    for a report or :meth:`check` to raise.
    """

    diagram: Diagram
    ring: str
    _values: tuple[tuple[str, int], ...] = field(repr=False)
    _matrices: tuple[tuple[str, Matrix], ...] = field(repr=False)

    def __init__(self, diagram: Diagram, ring: str, values: Mapping[str, int],
                 matrices: Mapping[str, Matrix]):
        object.__setattr__(self, "diagram", diagram)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_values", tuple((o, int(values[o])) for o in diagram.objects
                                                  if o in values))
        object.__setattr__(self, "_matrices", tuple((a.id, matrices[a.id]) for a in diagram.arrows
                                                    if a.id in matrices))

    @property
    def values(self) -> dict[str, int]:
        return dict(self._values)

    @property
    def matrices(self) -> dict[str, Matrix]:
        return dict(self._matrices)

    def value(self, p: str) -> int:
        return self.values[p]

    def matrix(self, aid: str) -> Matrix:
        return self.matrices[aid]

    def check(self) -> "Representation":
        problems = validate(self)
        if problems:
            raise ValueError("invalid representation: " + "; ".join(problems))
        return self

    def to_json(self) -> dict:
        out = self.diagram.to_json()
        out["ring"] = self.ring
        out["values"] = self.values
        out["matrices"] = {k: m.to_json() for k, m in self.matrices.items()}
        out["coproducts"] = [{"p": c.p, "q": c.q, "sum": c.sum, "i": c.i, "iPrime": c.i_prime}
                             for c in self.diagram.coproducts]
        return out


def validate(T: Representation) -> list[str]:
    """Shape and ring violations of T; empty iff T is well formed."""
    out = []
    if T.ring not in ("Z", "Q"):
        out.append(f"unknown ring {T.ring!r}")
    values, mats = T.values, T.matrices
    for p in T.diagram.objects:
        if p not in values:
            out.append(f"object {p} has no value")
        elif values[p] < 0:
            out.append(f"object {p} has negative rank")
    for a in T.diagram.arrows:
        m = mats.get(a.id)
        if m is None:
            out.append(f"arrow {a.id} has no matrix")
            continue
        want = (values.get(a.dst), values.get(a.src))
        if m.shape != want:
            out.append(f"arrow {a.id}: matrix shape {m.shape} != expected {want}")
        if T.ring == "Z" and not isinstance(m, IntMat):
            out.append(f"arrow {a.id}: matrix over Q in a representation over Z")
        if T.ring == "Q" and not isinstance(m, RatMat):
            out.append(f"arrow {a.id}: matrix over Z in a representation over Q")
    return out


def restrict(T: Representation, E: Diagram) -> Representation:
    """T|_E."""
    if not E.is_subdiagram_of(T.diagram):
        raise ValueError("restrict: E is not a subdiagram of T's diagram")
    values, mats = T.values, T.matrices
    return Representation(E, T.ring, {p: values[p] for p in E.objects},
                          {a.id: mats[a.id] for a in E.arrows})


def base_change_Q(T: Representation) -> Representation:
    """T ⊗ Q: the same shapes with matrices reinterpreted over Q."""
    if T.ring != "Z":
        raise ValueError("base_change_Q: representation is already over Q")
    return Representation(T.diagram, "Q", T.values,
                          {k: m.to_rat() for k, m in T.matrices.items()})


@dataclass(frozen=True)
class SubdiagramChain:
    """Increasing chain E1 ⊆ E2 ⊆ ... of finite subdiagrams."""

    stages: tuple[Diagram, ...]

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        for k, (a, b) in enumerate(zip(self.stages, self.stages[1:])):
            if not a.is_subdiagram_of(b):
                raise ValueError(f"chain is not increasing at position {k + 1}")

    def __len__(self):
        return len(self.stages)

    def __iter__(self):
        return iter(self.stages)

    def __getitem__(self, i):
        return self.stages[i]

    def check_within(self, D: Diagram):
        for k, E in enumerate(self.stages):
            if not E.is_subdiagram_of(D):
                raise ValueError(f"chain stage {k} is not a subdiagram of the diagram")


# ---------------------------------------------------------------------------
# JSON


def representation_from_json(obj: Mapping) -> Representation:
    arrows = [Arrow(str(a["id"]), str(a["src"]), str(a["dst"])) for a in obj.get("arrows", [])]
    cops = [Coproduct(str(c["p"]), str(c["q"]), str(c["sum"]), str(c["i"]), str(c["iPrime"]))
            for c in obj.get("coproducts", [])]
    D = Diagram(tuple(str(o) for o in obj.get("objects", [])), tuple(arrows), tuple(cops))
    ring = obj.get("ring", "Z")
    mats = {str(k): matrix_from_json(m, ring) for k, m in obj.get("matrices", {}).items()}
    return Representation(D, ring, {str(k): v for k, v in obj.get("values", {}).items()}, mats)


def stage_from_json(D: Diagram, spec) -> Diagram:
    """A stage is a list of objects (full subdiagram) or {"objects": [...], "arrows": [...]}."""
    if isinstance(spec, Mapping):
        return D.sub(spec["objects"], spec.get("arrows"))
    return D.sub(spec)


def named_stages(D: Diagram, obj: Mapping) -> dict[str, Diagram]:
    """Stages declared under "stages" in a diagram file, plus "full" for D itself."""
    out = {"full": D}
    for name, spec in obj.get("stages", {}).items():
        out[name] = stage_from_json(D, spec)
    return out


def diagram_from_arrows(objects: Sequence[str], arrows: Sequence[tuple[str, str, str]],
                        coproducts: Sequence[tuple] = ()) -> Diagram:
    return Diagram(tuple(objects), tuple(Arrow(*a) for a in arrows),
                   tuple(Coproduct(*c) for c in coproducts))
