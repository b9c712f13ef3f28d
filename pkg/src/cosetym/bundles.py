"""Principal G-bundles over closed surfaces and spheres.

For a two-dimensional base the equivalence classes of bundles sit in the exact
sequence of pointed sets

    0 -> H^2(M; pi_1 G) -> B_G(M) -> H^1(M; pi_0 G) -> 0

(pi_0 G abelian, acting trivially on the higher homotopy groups).  When one
flank vanishes the sequence collapses onto the other.  For spheres
B_G(S^n) = pi_{n-1}(G), available here for n = 1, 2.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .abelian import TRIVIAL, Z, Z2, AbelianGroup, GroupParseError

__all__ = [
    "GroupDescriptor", "SurfaceDescriptor", "ClassificationResult", "HypothesisError",
    "UnknownGroupError", "pi_table", "surface_cohomology", "classify", "classify_sphere",
    "witten_crosscheck", "parse_group", "parse_surface",
]

# method and provenance tags emitted in the JSON records
TAG_H1 = "B-H1"
TAG_H1_DISCRETE = "B-H1a"
TAG_H2 = "B-H2"
TAG_SPHERE = "B-Sn"
TAG_SEQUENCE = "HBH-sequence"
TAG_COLLAPSED = "HBH"
TAG_ORIENTABLE = "M-comp"
TAG_NONORIENTABLE = "M-noncomp"


class HypothesisError(ValueError):
    """The classification theorem does not apply (e.g. non-abelian pi_0)."""


class UnknownGroupError(ValueError):
    pass


@dataclass(frozen=True)
class GroupDescriptor:
    """A structure group, named or given by (pi_0, pi_1).

    ``kind`` is one of ``SU``, ``Sp``, ``SO``, ``U``, ``discrete`` or
    ``explicit``.  ``pi0_abelian`` records the caller's assertion for explicit
    descriptors; trivial action of pi_0 on higher homotopy is assumed.
    """

    kind: str
    rank: int = 0
    pi0: AbelianGroup = TRIVIAL
    pi1: AbelianGroup = TRIVIAL
    pi0_abelian: bool = True

    @classmethod
    def named(cls, kind: str, rank: int) -> "GroupDescriptor":
        g = cls(kind, rank)
        pi_table(g)  # validates the name
        return g

    @classmethod
    def discrete(cls, h: AbelianGroup) -> "GroupDescriptor":
        return cls("discrete", pi0=h)

    @classmethod
    def explicit(cls, pi0: AbelianGroup, pi1: AbelianGroup, pi0_abelian: bool = True):
        return cls("explicit", pi0=pi0, pi1=pi1, pi0_abelian=pi0_abelian)

    @property
    def name(self) -> str:
        if self.kind == "discrete":
            return f"discrete({self.pi0})"
        if self.kind == "explicit":
            return f"explicit(pi0={self.pi0}, pi1={self.pi1})"
        return f"{self.kind}({self.rank})"

    @property
    def is_discrete(self) -> bool:
        return self.kind == "discrete"


@dataclass(frozen=True)
class SurfaceDescriptor:
    """``sphere`` of dimension ``n``, or a closed ``orientable`` / ``nonorientable`` surface."""

    kind: str
    genus: int = 0
    dim: int = 2

    def __post_init__(self):
        if self.kind == "sphere":
            if self.dim < 1:
                raise ValueError("sphere dimension must be >= 1")
        elif self.kind == "orientable":
            if self.genus < 0:
                raise ValueError("genus must be nonnegative")
        elif self.kind == "nonorientable":
            if self.genus < 1:
                raise ValueError("non-orientable genus must be >= 1")
        else:
            raise ValueError(f"unknown surface kind {self.kind!r}")

    @classmethod
    def sphere(cls, n: int = 2) -> "SurfaceDescriptor":
        return cls("sphere", 0, n)

    @property
    def is_two_dimensional(self) -> bool:
        return self.kind != "sphere" or self.dim == 2

    @property
    def name(self) -> str:
        if self.kind == "sphere":
            return f"S^{self.dim}"
        return f"{self.kind}:{self.genus}"


@dataclass(frozen=True)
class ClassificationResult:
    group: str
    surface: str
    method: str
    provenance: str
    result: AbelianGroup | None = None
    sequence: tuple[AbelianGroup, AbelianGroup] | None = None  # (H^2(M;pi_1), H^1(M;pi_0))
    beyond_paper_table: bool = False
    notes: tuple[str, ...] = field(default=())

    @property
    def resolved(self) -> bool:
        return self.result is not None

    def to_dict(self) -> dict:
        d = {
            "group": self.group,
            "surface": self.surface,
            "method": self.method,
            "provenance": self.provenance,
            "beyond_paper_table": self.beyond_paper_table,
        }
        if self.result is not None:
            d["result"] = self.result.label()
        else:
            h2, h1 = self.sequence
            d["sequence"] = {"H2_pi1": h2.label(), "bundles": "extension (unresolved)",
                             "H1_pi0": h1.label()}
        if self.notes:
            d["notes"] = list(self.notes)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def pi_table(g: GroupDescriptor) -> tuple[AbelianGroup, AbelianGroup]:
    """(pi_0, pi_1) of a structure group."""
    if g.kind == "explicit":
        if not g.pi0_abelian:
            raise HypothesisError("pi_0 must be abelian")
        return g.pi0, g.pi1
    if g.kind == "discrete":
        if not g.pi0_abelian:
            raise HypothesisError("pi_0 must be abelian")
        return g.pi0, TRIVIAL
    if g.rank < 1:
        raise UnknownGroupError(f"{g.kind}({g.rank}) is not a valid group")
    if g.kind in ("SU", "Sp"):
        return TRIVIAL, TRIVIAL
    if g.kind == "U":
        return TRIVIAL, Z
    if g.kind == "SO":
        if g.rank == 3 or g.rank >= 5:
            return TRIVIAL, Z2
        raise UnknownGroupError(f"SO({g.rank}) is outside the supported table (SO(3), SO(n>=5))")
    raise UnknownGroupError(f"unknown group {g.kind!r}")


def surface_cohomology(m: SurfaceDescriptor, pi: AbelianGroup, degree: int) -> AbelianGroup:
    """H^degree(M; pi) for a closed surface, in closed form.

    Degree 2 is pi (orientable) or pi/2pi (non-orientable).  Degree 1 is 0 for
    the sphere, pi^{2g} for orientable genus g and pi^{k-1} + pi[2] for
    non-orientable genus k, where pi[2] is the 2-torsion of pi.
    """
    if not m.is_two_dimensional:
        raise ValueError(f"{m.name} is not a surface")
    if degree not in (1, 2):
        raise ValueError(f"unsupported degree {degree}")
    genus = 0 if m.kind == "sphere" else m.genus
    orientable = m.kind != "nonorientable"
    if degree == 2:
        return pi if orientable else pi.mod_multiples(2)
    if orientable:
        return pi.power(2 * genus)
    return pi.power(genus - 1) + pi.m_torsion(2)


def _beyond_table(m: SurfaceDescriptor, pi0: AbelianGroup) -> bool:
    # degree-1 entries are only tabulated for the sphere
    return not pi0.is_trivial and not (m.kind == "sphere" or (m.kind == "orientable" and m.genus == 0))


def classify_sphere(g: GroupDescriptor, n: int) -> AbelianGroup:
    """B_G(S^n) = pi_{n-1}(G), for n in {1, 2}."""
    pi0, pi1 = pi_table(g)
    if n == 1:
        return pi0
    if n == 2:
        return pi1
    raise ValueError(f"pi_{n - 1}(G) is not tabulated; only n = 1, 2 are supported")


def classify(g: GroupDescriptor, m: SurfaceDescriptor) -> ClassificationResult:
    """Equivalence classes of principal G-bundles over M."""
    pi0, pi1 = pi_table(g)
    if not m.is_two_dimensional:
        return ClassificationResult(g.name, m.name, TAG_SPHERE, TAG_SPHERE,
                                    result=classify_sphere(g, m.dim))
    h2_tag = TAG_NONORIENTABLE if m.kind == "nonorientable" else TAG_ORIENTABLE
    if pi0.is_trivial:
        return ClassificationResult(g.name, m.name, TAG_H2, f"{TAG_H2}+{h2_tag}",
                                    result=surface_cohomology(m, pi1, 2))
    beyond = _beyond_table(m, pi0)
    h1 = surface_cohomology(m, pi0, 1)
    if pi1.is_trivial:
        tag = TAG_H1_DISCRETE if g.is_discrete else TAG_H1
        return ClassificationResult(g.name, m.name, tag, tag, result=h1, beyond_paper_table=beyond)
    h2 = surface_cohomology(m, pi1, 2)
    if h1.is_trivial or h2.is_trivial:
        note = ("exact sequence with a trivial flank; the bundle set is identified "
                "with the other flank")
        return ClassificationResult(g.name, m.name, TAG_COLLAPSED, f"{TAG_COLLAPSED}+{h2_tag}",
                                    result=h2 if h1.is_trivial else h1,
                                    beyond_paper_table=beyond, notes=(note,))
    return ClassificationResult(g.name, m.name, TAG_SEQUENCE, f"{TAG_SEQUENCE}+{h2_tag}",
                                sequence=(h2, h1), beyond_paper_table=beyond)


def witten_crosscheck(g_tilde: GroupDescriptor, gamma: AbelianGroup, m: SurfaceDescriptor) -> bool:
    """Check B_G(M) = Gamma for G = G~/Gamma with G~ simply connected, M orientable.

    G is connected with pi_1(G) = Gamma, so B_G(M) = H^2(M; Gamma) = Gamma.
    """
    pi0, pi1 = pi_table(g_tilde)
    if not (pi0.is_trivial and pi1.is_trivial):
        raise HypothesisError(f"{g_tilde.name} is not connected and simply connected")
    if m.kind == "nonorientable" or not m.is_two_dimensional:
        raise ValueError("the cross-check needs a closed orientable surface")
    quotient = GroupDescriptor.explicit(TRIVIAL, gamma)
    res = classify(quotient, m)
    return res.resolved and res.result == gamma


# -- text specs (CLI) -----------------------------------------------------

_NONABELIAN = re.compile(r"^(S[3-9]|S\d\d+|D[3-9]|D\d\d+|A[4-9]|Q8)$")


def parse_group(text: str) -> GroupDescriptor:
    """``SU(2)``, ``Sp(1)``, ``SO(3)``, ``U(1)``, ``discrete:Z2`` or
    ``explicit:pi0=Z2,pi1=Z``.  Non-abelian finite groups such as ``discrete:S3``
    parse but fail the abelian hypothesis."""
    text = text.strip()
    m = re.fullmatch(r"(SU|Sp|SO|U)\((\d+)\)", text)
    if m:
        return GroupDescriptor.named(m.group(1), int(m.group(2)))
    try:
        if text.startswith("discrete:"):
            body = text.split(":", 1)[1]
            if _NONABELIAN.match(body):
                return GroupDescriptor("discrete", pi0_abelian=False)
            return GroupDescriptor.discrete(AbelianGroup.parse(body))
        if text.startswith("explicit:"):
            fields = dict(kv.split("=", 1) for kv in text.split(":", 1)[1].split(","))
            pi0 = fields.get("pi0", "0")
            if _NONABELIAN.match(pi0):
                return GroupDescriptor.explicit(TRIVIAL, AbelianGroup.parse(fields.get("pi1", "0")),
                                                pi0_abelian=False)
            return GroupDescriptor.explicit(AbelianGroup.parse(pi0),
                                            AbelianGroup.parse(fields.get("pi1", "0")))
    except (GroupParseError, ValueError) as exc:
        raise UnknownGroupError(f"cannot parse group {text!r}: {exc}") from exc
    raise UnknownGroupError(f"unknown group {text!r}")


def parse_surface(text: str) -> SurfaceDescriptor:
    """``sphere2`` / ``sphere:1``, ``orientable:g`` or ``nonorientable:k``."""
    text = text.strip()
    m = re.fullmatch(r"sphere:?(\d*)", text)
    if m:
        return SurfaceDescriptor.sphere(int(m.group(1) or 2))
    m = re.fullmatch(r"(orientable|nonorientable):(\d+)", text)
    if m:
        return SurfaceDescriptor(m.group(1), int(m.group(2)))
    raise ValueError(f"unknown surface {text!r}")
