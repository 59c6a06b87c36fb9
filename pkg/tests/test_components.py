import pytest

from toricjets import (
    InputRangeError,
    ToricSurface,
    codimension,
    component_report,
    count_closed_form,
    dimension,
    enumerate_classes,
    exceptional_count_dual_cf,
    index_of_speciality,
    m_cap,
    report_as_dict,
    s1_count,
    valid_labels,
)


def _classes(p, q, m):
    return enumerate_classes(ToricSurface.from_pair(p, q), m)


def test_m_cap_frozen():
    surf = ToricSurface.from_pair(3, 5)  # entries (2, 3)
    assert m_cap(surf, 2, 1, 4) == 1
    assert m_cap(surf, 3, 1, 4) == 2
    assert m_cap(surf, 2, 2, 4) == 2
    assert m_cap(surf, 3, 2, 4) == 3
    assert m_cap(surf, 3, 1, 1) == 1  # m+1-s branch
    with pytest.raises(InputRangeError):
        m_cap(surf, 4, 1, 4)
    with pytest.raises(InputRangeError):
        m_cap(surf, 2, 0, 4)
    with pytest.raises(InputRangeError):
        m_cap(surf, 2, 3, 4)  # s exceeds ceil(m/2)


def test_codimension_dimension_frozen():
    surf = ToricSurface.from_pair(3, 5)  # e = 4
    assert codimension(surf, 1, 1) == 4
    assert codimension(surf, 1, 4) == 10
    assert codimension(surf, 2, 3) == 8
    assert codimension(surf, 2, 4) == 10
    assert dimension(surf, 1, 4) == 4 * 5 - 10
    with pytest.raises(InputRangeError):
        codimension(surf, 1, 0)
    with pytest.raises(InputRangeError):
        codimension(surf, 3, 4)


def test_deep_stratum_codimension_is_se(family30):
    # at m = 2s-1 the formula degenerates to s*e for every surface
    for surf in family30:
        for s in range(1, 6):
            assert codimension(surf, s, 2 * s - 1) == s * surf.e


def test_valid_labels_frozen():
    surf = ToricSurface.from_pair(3, 5)
    assert valid_labels(surf, 2) == [(2, 1, 1), (3, 1, 1), (3, 1, 2)]
    assert valid_labels(surf, 4) == [
        (2, 1, 1), (3, 1, 1), (3, 1, 2),
        (2, 2, 2), (3, 2, 2), (3, 2, 3),
    ]


def test_classes_frozen_3_5_m4():
    cls = _classes(3, 5, 4)
    assert [(c.canonical, c.members, c.s, c.codim, c.dim) for c in cls] == [
        ((2, 1, 1), ((2, 1, 1), (3, 1, 2)), 1, 10, 10),
        ((3, 1, 1), ((3, 1, 1),), 1, 10, 10),
        ((2, 2, 2), ((2, 2, 2), (3, 2, 3)), 2, 10, 10),
        ((3, 2, 2), ((3, 2, 2),), 2, 10, 10),
    ]


def test_classes_frozen_3_5_m2():
    cls = _classes(3, 5, 2)
    assert [(c.canonical, c.members, c.codim) for c in cls] == [
        ((2, 1, 1), ((2, 1, 1), (3, 1, 2)), 6),
        ((3, 1, 1), ((3, 1, 1),), 6),
    ]


def test_classes_frozen_5_7_m3():
    cls = _classes(5, 7, 3)
    assert [(c.canonical, c.members, c.codim, c.dim) for c in cls] == [
        ((2, 1, 1), ((2, 1, 1), (3, 1, 1), (4, 1, 2)), 11, 9),
        ((4, 1, 1), ((4, 1, 1),), 11, 9),
        ((2, 2, 2), ((2, 2, 2), (3, 2, 2), (4, 2, 2)), 10, 10),
    ]


def test_classes_frozen_2_3_m5():
    # all entries 2: one class per s, N = ceil(m/2)
    cls = _classes(2, 3, 5)
    assert [(c.canonical, c.members) for c in cls] == [
        ((2, 1, 1), ((2, 1, 1), (3, 1, 1))),
        ((2, 2, 2), ((2, 2, 2), (3, 2, 2))),
        ((2, 3, 3), ((2, 3, 3), (3, 3, 3))),
    ]
    assert all(c.codim == 12 for c in cls)


def test_classes_frozen_2_5_m2():
    cls = _classes(2, 5, 2)
    assert [(c.canonical, c.members) for c in cls] == [
        ((2, 1, 1), ((2, 1, 1), (3, 1, 1))),
        ((2, 1, 2), ((2, 1, 2),)),
    ]


def test_deep_stratum_merges_across_all_i(family12):
    # at m = 2s-1 the cap equals s everywhere, so one class spans every i
    for surf in family12:
        for s in (1, 2):
            m = 2 * s - 1
            deep = [c for c in enumerate_classes(surf, m) if c.s == s]
            assert len(deep) == 1
            assert deep[0].members == tuple(
                (i, s, s) for i in range(2, surf.e)
            )


def test_class_invariants(family12):
    for surf in family12:
        for m in (1, 2, 3, 5, 8):
            seen = set()
            for c in enumerate_classes(surf, m):
                assert c.canonical == min(c.members)
                assert all(lab[1] == c.s for lab in c.members)
                assert c.codim == codimension(surf, c.s, m)
                assert c.dim == surf.e * (m + 1) - c.codim
                assert index_of_speciality(c) == c.s
                seen.update(c.members)
            assert seen == set(valid_labels(surf, m))


def test_count_closed_form_matches_enumeration(family12):
    for surf in family12:
        for m in range(1, 21):
            assert count_closed_form(surf, m) == len(enumerate_classes(surf, m))


def test_count_closed_form_all_twos_branch():
    surf = ToricSurface.from_pair(4, 5)  # entries (2, 2, 2, 2)
    for m in range(1, 30):
        assert count_closed_form(surf, m) == (m + 1) // 2


def test_s1_count_frozen():
    s57 = ToricSurface.from_pair(5, 7)
    assert s1_count(s57, 2) == (2, False)
    assert s1_count(s57, 3) == (2, True)
    assert s1_count(s57, 10) == (2, True)
    s23 = ToricSurface.from_pair(2, 3)
    assert s1_count(s23, 5) == (1, True)


def test_s1_count_stabilizes_at_divisor_count(family30):
    for surf in family30:
        m = max(surf.entries)
        want = exceptional_count_dual_cf(surf.cone)
        for mm in (m, m + 7):
            count, met = s1_count(surf, mm)
            assert met
            assert count == want


def test_component_report_and_dict():
    surf = ToricSurface.from_pair(3, 5)
    rep = component_report(surf, 4)
    assert rep.m == 4
    assert rep.n_enumerated == rep.n_closed_form == 4
    assert rep.s1_count == 2
    assert rep.exceptional_count == 2
    assert rep.main_codim == 10
    doc = report_as_dict(rep)
    assert doc["m"] == 4
    assert doc["N"] == {"enumerated": 4, "closed_form": 4}
    assert doc["s1_count"] == 2
    assert doc["exceptional"] == 2
    assert doc["main_codim"] == 10
    assert doc["classes"][0] == {
        "canonical": [2, 1, 1],
        "members": [[2, 1, 1], [3, 1, 2]],
        "s": 1,
        "codim": 10,
        "dim": 10,
    }


def test_enumerate_rejects_bad_level():
    surf = ToricSurface.from_pair(3, 5)
    with pytest.raises(InputRangeError):
        enumerate_classes(surf, 0)
    with pytest.raises(InputRangeError):
        count_closed_form(surf, -1)
