import pytest

from jacring.geom import (
    connectivity_bounds,
    curve_betti_identity,
    family_complex_conditions,
    hodge_table,
    torelli_report,
)
from jacring.parser import parse_poly
from jacring.ring import RingSpec, dim_b
from jacring.specfile import preset


def test_hodge_table_k3():
    table = hodge_table(preset("fermat-quartic").to_ringspec(), 0)
    rows = {r["label"]: r for r in table["rows"]}
    assert rows["h^{2,0}"]["primitive"] == 1
    assert rows["h^{1,1}"]["primitive"] == 19
    assert rows["h^{1,1}"]["full"] == 20
    assert rows["h^{1,1}"]["middle_correction_applied"]
    assert rows["h^{0,2}"]["primitive"] == 1


def test_hodge_table_quintic():
    table = hodge_table(preset("fermat-quintic").to_ringspec(), 0)
    rows = {r["label"]: r["primitive"] for r in table["rows"]}
    assert rows["h^{2,1}"] == 101
    assert rows["h^{3,0}"] == 1
    assert not any(r["middle_correction_applied"] for r in table["rows"])


def test_hodge_table_elliptic_line():
    table = hodge_table(preset("elliptic-line").to_ringspec(), 0)
    rows = {r["q"]: r["primitive"] for r in table["rows"]}
    assert rows == {0: 3, 1: 1}  # g + deg(Z) - 1 = 3 and g = 1


def test_hodge_table_cubic_surface_and_sextic_curve():
    cubic = RingSpec(3, [parse_poly("x0^3 + x1^3 + x2^3 + x3^3", 3)], [])
    rows = {r["label"]: r for r in hodge_table(cubic, 0)["rows"]}
    assert rows["h^{2,0}"]["primitive"] == 0
    assert rows["h^{1,1}"]["primitive"] == 6 and rows["h^{1,1}"]["full"] == 7
    assert rows["h^{0,2}"]["primitive"] == 0
    sextic = RingSpec(2, [parse_poly("x0^6 + x1^6 + x2^6", 2)], [])
    rows = {r["label"]: r["primitive"] for r in hodge_table(sextic, 0)["rows"]}
    assert rows == {"h^{1,0}": 10, "h^{0,1}": 10}  # genus 10


def test_pieces_vanish_above_top_degree():
    spec = preset("elliptic-line").to_ringspec()
    top = spec.n - spec.r
    for q in range(top + 1, top + 3):
        assert dim_b(spec, q, spec.bold_d - spec.n - 1) == 0


def test_hodge_rejects_negative_twist():
    with pytest.raises(ValueError):
        hodge_table(preset("fermat-quartic").to_ringspec(), -1)


def test_hodge_symmetry_closed_hypersurfaces():
    for name in ["quartic-curve", "fermat-quartic", "fermat-quintic"]:
        spec = preset(name).to_ringspec()
        twist = spec.bold_d - spec.n - 1
        m = spec.n - spec.r
        for q in range(m + 1):
            assert dim_b(spec, q, twist) == dim_b(spec, m - q, twist)


def test_torelli_quartic_k3():
    spec = preset("fermat-quartic").to_ringspec()
    for q in (1, 2):
        rep = torelli_report(spec, q)
        assert rep["predicate"], (q, rep)
        assert rep["surjective"], (q, rep)


def test_torelli_quartic_curve():
    rep = torelli_report(preset("quartic-curve").to_ringspec(), 1)
    assert rep["predicate"] and rep["surjective"]
    # source is two copies of the degree-1 piece, target the degree-2 piece
    assert rep["source_dims"] == [3, 3] and rep["target_dim"] == 6


def test_torelli_q_range_checked():
    with pytest.raises(ValueError):
        torelli_report(preset("quartic-curve").to_ringspec(), 2)


def test_torelli_degenerate_source_reports_without_assertion():
    # empty tensor factor, nonzero target: the predicate correctly stays off
    rep = torelli_report(preset("conic-two-lines").to_ringspec(), 1)
    assert not rep["predicate"] and not rep["surjective"]
    assert rep["source_dims"][1] == 0 and rep["target_dim"] == 1


def test_torelli_predicate_never_contradicts_surjectivity():
    for name in ["quartic-curve", "fermat-quartic", "elliptic-line",
                 "conic-two-lines", "cubic-three-lines"]:
        spec = preset(name).to_ringspec()
        for q in range(1, spec.n - spec.r + 1):
            rep = torelli_report(spec, q)
            assert not rep["predicate"] or rep["surjective"], (name, q, rep)


def test_connectivity_bounds_worked_examples():
    out = connectivity_bounds(5, 1, 1, [5], [5], t=3, c=0)
    assert out["open_case_vanishing"] is True
    out = connectivity_bounds(5, 1, 1, [5], [5], t=4, c=0)
    assert out["open_case_vanishing"] is False
    assert out["relative_case_vanishing"] is True
    out = connectivity_bounds(5, 1, 7, [9], [9] * 7, t=1, c=0)
    assert out["open_case_vanishing"] is False  # s = n - r + 3 always fails
    with pytest.raises(ValueError):
        connectivity_bounds(3, 2, 1, [2, 2], [1], t=1, c=0)


def test_family_conditions_worked_examples():
    out = family_complex_conditions(5, 1, 1, [5], [5], a=0, q=0, c=0)
    assert "i" not in out["absolute"]  # 5 >= 6 fails
    out = family_complex_conditions(5, 1, 1, [7], [5], a=0, q=0, c=0)
    assert "i" in out["absolute"]  # 7 >= 6
    out = family_complex_conditions(4, 1, 1, [5], [5], a=0, q=1, c=0)
    assert "iii" in out["relative"]  # 5 + 5 >= 1 + 0 + 4 + 1
    out = family_complex_conditions(5, 1, 1, [9], [9], a=0, q=2, c=0)
    assert "iii" in out["absolute"] and "iv" in out["absolute"]
    assert out["ambient_ok"] and out["star_ok"]


def test_curve_betti_identity_all_curve_presets():
    for name in ["elliptic-line", "conic-two-lines", "cubic-three-lines"]:
        out = curve_betti_identity(preset(name).to_ringspec())
        assert out["equal"], (name, out)
