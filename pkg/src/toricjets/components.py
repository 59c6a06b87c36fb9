"""Irreducible components of the jet fiber over the singular point.

Components at level m carry labels (i, s, l): the index i of a distinguished
pair of adjacent coordinates, the common order s = ord x_i, and the order
l = ord x_{i+1}, constrained by s <= l <= m_i^s.  Certain labels describe
the same component; a union-find applies those identifications and the
surviving classes are counted, measured, and compared against a closed-form
count that never enumerates anything.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import InputRangeError
from .lattice import ToricSurface, exceptional_count_dual_cf

Label = tuple[int, int, int]


class ComponentClass(NamedTuple):
    """A set of labels identified into one irreducible component."""

    canonical: Label
    members: tuple[Label, ...]
    s: int
    codim: int
    dim: int


class S1Count(NamedTuple):
    """Number of speciality-1 classes, and whether m >= max c_i holds."""

    count: int
    hypothesis_met: bool


def m_cap(surface: ToricSurface, i: int, s: int, m: int) -> int:
    """Largest admissible order of x_{i+1}: min((c_i - 1) s, m + 1 - s).

    Always >= s, because 2s <= m + 1 and c_i >= 2.
    """
    smax = (m + 1) // 2
    if not 1 <= s <= smax:
        raise InputRangeError(f"s must be in 1..{smax} for m={m}, got {s}")
    ci = surface.c(i)  # validates i
    return min((ci - 1) * s, m + 1 - s)


def codimension(surface: ToricSurface, s: int, m: int) -> int:
    """Codimension s e + (m - (2s - 1))(e - 2); depends only on s and m."""
    if m < 1:
        raise InputRangeError(f"jet level must be >= 1, got {m}")
    smax = (m + 1) // 2
    if not 1 <= s <= smax:
        raise InputRangeError(f"s must be in 1..{smax} for m={m}, got {s}")
    e = surface.e
    return s * e + (m - (2 * s - 1)) * (e - 2)


def dimension(surface: ToricSurface, s: int, m: int) -> int:
    """Dimension inside the ambient affine e(m+1)-space."""
    return surface.e * (m + 1) - codimension(surface, s, m)


def valid_labels(surface: ToricSurface, m: int) -> list[Label]:
    """All labels (i, s, l): i in 2..e-1, 1 <= s <= ceil(m/2), s <= l <= m_i^s."""
    out = []
    for s in range(1, (m + 1) // 2 + 1):
        for i in range(2, surface.e):
            for l in range(s, m_cap(surface, i, s, m) + 1):
                out.append((i, s, l))
    return out


def enumerate_classes(surface: ToricSurface, m: int) -> list[ComponentClass]:
    """All component classes at level m, identifications applied, sorted.

    Label (i, s, s) is glued to (i+1, s, m_{i+1}^s) for every i in 2..e-2.
    A union-find absorbs the chains that appear when caps collapse to s, so
    no assumption is made about how many gluings are effective.  Classes come
    out sorted by (s, canonical), the canonical label being the least member
    under (s, i, l).
    """
    if m < 1:
        raise InputRangeError(f"jet level must be >= 1, got {m}")
    e = surface.e
    entries = surface.entries
    out: list[ComponentClass] = []
    for s in range(1, (m + 1) // 2 + 1):
        caps = [min((c - 1) * s, m + 1 - s) for c in entries]  # index i-2 for c_i
        codim = s * e + (m - (2 * s - 1)) * (e - 2)
        dim = e * (m + 1) - codim

        parent: dict[tuple[int, int], tuple[int, int]] = {}

        def find(x: tuple[int, int]) -> tuple[int, int]:
            root = x
            while parent.get(root, root) != root:
                root = parent[root]
            while parent.get(x, x) != x:
                parent[x], x = root, parent[x]
            return root

        for i in range(2, e - 1):
            a = find((i, s))
            b = find((i + 1, caps[i - 1]))
            if a != b:
                parent[a] = b

        groups: dict[tuple[int, int], list[Label]] = {}
        slice_classes: list[ComponentClass] = []
        for i in range(2, e):
            cap = caps[i - 2]
            for l in range(s, cap + 1):
                # only endpoints of gluing edges can be in a nontrivial class
                if (l == s and i <= e - 2) or (l == cap and i >= 3):
                    groups.setdefault(find((i, l)), []).append((i, s, l))
                else:
                    label = (i, s, l)
                    slice_classes.append(ComponentClass(label, (label,), s, codim, dim))
        for labels in groups.values():
            labels.sort()
            slice_classes.append(ComponentClass(labels[0], tuple(labels), s, codim, dim))
        slice_classes.sort(key=lambda cl: (cl.canonical[0], cl.canonical[2]))
        out.extend(slice_classes)
    return out


def count_closed_form(surface: ToricSurface, m: int) -> int:
    """Component count from the counting formula, with no enumeration.

    When every entry is 2 the count is ceil(m/2).  Otherwise, writing
    m = q_c c + r for each entry c != 2, the entry contributes
    N_c^s(m) = s c - (2s - 1) for s <= q_c and m - (2s - 2) for s > q_c;
    per s, the first such entry counts in full and each further one
    contributes N_c^s(m) - 1.
    """
    if m < 1:
        raise InputRangeError(f"jet level must be >= 1, got {m}")
    smax = (m + 1) // 2
    big = [c for c in surface.entries if c != 2]
    if not big:
        return smax
    total = 0
    for s in range(1, smax + 1):
        for pos, c in enumerate(big):
            qc = m // c
            n = s * c - (2 * s - 1) if s <= qc else m - (2 * s - 2)
            total += n if pos == 0 else n - 1
    return total


def s1_count(surface: ToricSurface, m: int) -> S1Count:
    """Number of classes with speciality 1, plus whether m >= max c_i.

    At or above that threshold the count equals the number of exceptional
    divisors on the minimal resolution; below it the count is still returned
    but the correspondence is not promised.
    """
    classes = enumerate_classes(surface, m)
    count = sum(1 for cl in classes if cl.s == 1)
    return S1Count(count, m >= max(surface.entries))


def index_of_speciality(component: ComponentClass) -> int:
    """The shared s of the class: the t-order of the maximal ideal along it."""
    return component.s


@dataclass(frozen=True)
class ComponentReport:
    """Everything the classification yields at one level m.

    The enumerated and closed-form counts are both carried without being
    reconciled here; tests assert their equality, so a discrepancy surfaces
    loudly instead of being hidden at construction time.
    """

    m: int
    classes: tuple[ComponentClass, ...]
    n_enumerated: int
    n_closed_form: int
    s1_count: int
    exceptional_count: int
    main_codim: int


def component_report(surface: ToricSurface, m: int) -> ComponentReport:
    """Classify at level m and bundle counts, caps, and resolution data.

    main_codim = (m+1)(e-2) is the codimension of the closure of the jets
    over the smooth locus; it is metadata, not one of the classes.
    """
    classes = tuple(enumerate_classes(surface, m))
    return ComponentReport(
        m=m,
        classes=classes,
        n_enumerated=len(classes),
        n_closed_form=count_closed_form(surface, m),
        s1_count=sum(1 for cl in classes if cl.s == 1),
        exceptional_count=exceptional_count_dual_cf(surface.cone),
        main_codim=(m + 1) * (surface.e - 2),
    )


def report_as_dict(report: ComponentReport) -> dict:
    """JSON-ready mapping for a ComponentReport, matching the published schema."""
    return {
        "m": report.m,
        "classes": [
            {
                "canonical": list(cl.canonical),
                "members": [list(label) for label in cl.members],
                "s": cl.s,
                "codim": cl.codim,
                "dim": cl.dim,
            }
            for cl in report.classes
        ],
        "N": {
            "enumerated": report.n_enumerated,
            "closed_form": report.n_closed_form,
        },
        "s1_count": report.s1_count,
        "exceptional": report.exceptional_count,
        "main_codim": report.main_codim,
    }
