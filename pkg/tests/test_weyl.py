import json
from fractions import Fraction

import pytest

from app.core.errors import GroupCacheError, NotARootError
from app.core.exact import ExactMatrix
from app.core.polyring import MultiPoly
from app.models.weyl import (
    CLASS_C_CHARPOLY,
    G3_MATRIX,
    GENERATOR_MATRICES,
    P5_VARIABLES,
    SIMPLE_ROOTS,
    V1,
)
from app.services.group_cache_service import GroupCacheService, _document_checksum
from app.services.variety_service import VarietyService
from app.services.weyl_service import WEYL_E6_ORDER, WeylService, projective_canonical


def test_simple_roots_form_e6_diagram():
    gram, edges = WeylService.gram_matrix()
    assert [gram[i, i] for i in range(6)] == [2] * 6
    assert WeylService.is_e6_diagram(edges)


def test_reflection_requires_root():
    with pytest.raises(NotARootError):
        WeylService.reflection(V1, V1)


def test_m_b_is_a_reflection():
    assert WeylService.reflection_matrix(SIMPLE_ROOTS[6]) == GENERATOR_MATRICES["M_B"]
    assert all(WeylService.preserves_b(g) for g in GENERATOR_MATRICES.values())


def test_single_reflection_generates_order_two():
    table = WeylService.generate_group({"s6": WeylService.reflection_matrix(SIMPLE_ROOTS[6])})
    assert table.order == 2


def test_group_order(group):
    assert group.order == WEYL_E6_ORDER
    identity = group.identity_index()
    assert group.multiply(identity, 17) == 17
    assert group.multiply(17, group.inverse(17)) == identity


def test_orbits(group):
    orbit = WeylService.orbit(group, V1)
    assert len(orbit) == 27
    assert all(WeylService.b_form(v, v) == Fraction(1, 3) for v in orbit)
    assert len(WeylService.root_system(group)) == 72


def test_reflections_are_involutions(group):
    roots = WeylService.root_system(group)
    assert WeylService.reflections_are_involutions(roots)


def test_generators_stabilize_orbit_and_roots(group):
    orbit = WeylService.orbit(group, V1)
    roots = WeylService.root_system(group)
    assert WeylService.stabilizes_setwise(GENERATOR_MATRICES, orbit)
    assert WeylService.stabilizes_setwise(GENERATOR_MATRICES, roots)
    assert not WeylService.stabilizes_setwise(GENERATOR_MATRICES, orbit[:26])


def test_lambda2_orbit(group):
    weight = WeylService.fundamental_weight(2)
    assert weight == (2, 0, 0, 0, 0, 0)
    assert len(WeylService.orbit(group, weight, projective=True)) == 27
    with pytest.raises(ValueError):
        WeylService.fundamental_weight(7)


def test_projective_canonical():
    assert projective_canonical((0, Fraction(-1, 2), 1)) == (0, 1, -2)
    with pytest.raises(ValueError):
        projective_canonical((0, 0, 0))


def test_minus_identity_not_in_group(group):
    assert not WeylService.minus_identity_in_group(group)
    assert group.contains(GENERATOR_MATRICES["M_B"])


def test_quadratic_invariant(invariants):
    x = dict(zip(P5_VARIABLES, MultiPoly.generators(P5_VARIABLES)))
    expected = x["X0"] ** 2 * Fraction(1, 2)
    for name in P5_VARIABLES[1:]:
        expected = expected + x[name] ** 2 * Fraction(3, 2)
    assert invariants[2] == expected


def test_invariants_fixed_by_generators(invariants):
    for degree, poly in invariants.items():
        assert VarietyService.verify_generator_invariance(poly, GENERATOR_MATRICES)[0], degree


def test_class_c(group, class_members):
    assert len(class_members) == 80
    assert G3_MATRIX.characteristic_polynomial() == [Fraction(c) for c in CLASS_C_CHARPOLY]
    g3 = WeylService.g3_element(group)
    assert g3 in class_members
    assert WeylService.conjugation_orbit(group, g3) == set(class_members)
    assert WeylService.centralizer_order(group, g3) == 648


def test_eigenplanes(group, class_members):
    assert VarietyService.g3_eigenplane_matches_w3(group)
    planes = WeylService.class_eigenplanes(group, class_members)
    assert len({p.canonical() for p in planes}) == 80


def test_hesse_invariants(group):
    result = VarietyService.hesse_invariants(group)
    assert result["vanishing"] == [2, 5, 8]
    assert result["i6_squared_i12_rank"] == 2


def test_cache_round_trip(group, tmp_path):
    path = str(tmp_path / "group.json")
    GroupCacheService.cache_group(group, path)
    loaded = GroupCacheService.load_group(path)
    assert loaded.order == WEYL_E6_ORDER
    assert loaded.payload() == group.payload()
    assert loaded.matrix(5) == group.matrix(5)


def test_corrupted_cache_is_rejected(group, tmp_path):
    path = tmp_path / "group.json"
    GroupCacheService.cache_group(group, str(path))
    document = json.loads(path.read_text(encoding="utf-8"))
    document["checksum"] = "0" * 64
    path.write_text(json.dumps(document), encoding="utf-8")
    with pytest.raises(GroupCacheError):
        GroupCacheService.load_group(str(path))

    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(GroupCacheError):
        GroupCacheService.load_group(str(path))


def test_missing_cache_is_regenerated(tmp_path):
    path = str(tmp_path / "missing" / "group.json")
    with pytest.raises(GroupCacheError):
        GroupCacheService.load_group(path)
    table, info = GroupCacheService.load_or_generate(path)
    assert info["source"] == "generated"
    assert table.order == WEYL_E6_ORDER
    _, again = GroupCacheService.load_or_generate(path)
    assert again["source"] == "cache"


def _rewrite(path, document, resign=False):
    if resign:
        document["checksum"] = _document_checksum(document)
    path.write_text(json.dumps(document), encoding="utf-8")


def test_cache_missing_key_is_regenerated(group, tmp_path):
    path = tmp_path / "group.json"
    GroupCacheService.cache_group(group, str(path))
    document = json.loads(path.read_text(encoding="utf-8"))
    document.pop("orbit")
    _rewrite(path, document, resign=True)
    with pytest.raises(GroupCacheError):
        GroupCacheService.load_group(str(path))

    table, info = GroupCacheService.load_or_generate(str(path))
    assert info["source"] == "generated"
    assert table.order == WEYL_E6_ORDER


@pytest.mark.parametrize("field", ["orbit", "degree", "generators"])
def test_cache_unreadable_fields_raise_cache_error(group, tmp_path, field):
    path = tmp_path / "group.json"
    GroupCacheService.cache_group(group, str(path))
    document = json.loads(path.read_text(encoding="utf-8"))
    document.pop(field)
    _rewrite(path, document, resign=True)
    with pytest.raises(GroupCacheError):
        GroupCacheService.load_group(str(path))


def test_cache_non_numeric_orbit_raises_cache_error(group, tmp_path):
    path = tmp_path / "group.json"
    GroupCacheService.cache_group(group, str(path))
    document = json.loads(path.read_text(encoding="utf-8"))
    document["orbit"][0] = ["x"] * 6
    _rewrite(path, document, resign=True)
    with pytest.raises(GroupCacheError, match="ilegível"):
        GroupCacheService.load_group(str(path))


def test_cache_swapped_generators_are_rejected(group, tmp_path):
    path = tmp_path / "group.json"
    GroupCacheService.cache_group(group, str(path))
    document = json.loads(path.read_text(encoding="utf-8"))
    generators = document["generators"]
    first, second = list(generators)[:2]
    generators[first], generators[second] = generators[second], generators[first]
    _rewrite(path, document)
    with pytest.raises(GroupCacheError, match="Checksum"):
        GroupCacheService.load_group(str(path))


def test_cache_records_generation_time(tmp_path):
    path = str(tmp_path / "group.json")
    _, generated = GroupCacheService.load_or_generate(path)
    assert generated["generate_seconds"] == generated["seconds"]

    _, cached = GroupCacheService.load_or_generate(path)
    assert cached["source"] == "cache"
    assert cached["generate_seconds"] == pytest.approx(generated["generate_seconds"])
    assert cached["seconds"] >= 0
