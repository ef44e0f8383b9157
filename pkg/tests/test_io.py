import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfchar.cocycles import normalize_cocycle
from hopfchar.exactfield import CycNumber, root_of_unity
from hopfchar.io import (
    InputError,
    bundled_path,
    cocycle_from_json,
    cocycle_to_json,
    group_from_json,
    hopf_from_json,
    load_cocycle,
    load_group,
    load_json,
    load_rep,
    matrix_from_json,
    matrix_to_json,
    parse_scalar,
    rep_from_json,
    rep_to_json,
    resolve_file,
    resolve_subgroup,
    scalar_to_json,
)


def test_parse_scalar_forms():
    assert parse_scalar(3) == CycNumber.rational(3)
    assert parse_scalar("-2/3") == CycNumber.rational(-2) / 3
    assert parse_scalar("zeta(4,1)") == root_of_unity(4, 1)
    assert parse_scalar("-zeta(3,2)") == -root_of_unity(3, 2)
    assert parse_scalar("1/2*zeta(8,3)") == root_of_unity(8, 3) / 2
    assert parse_scalar({"order": 3, "coeffs": [["0", "1"], ["1", "1"]]}) == root_of_unity(3, 1)


@pytest.mark.parametrize("bad", [True, "zeta(0,1)", "1/0", "abc", {"order": 3}, {"order": 0, "coeffs": []}, 1.5])
def test_parse_scalar_rejects(bad):
    with pytest.raises(InputError):
        parse_scalar(bad, "x")


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([1, 2, 3, 4, 5, 8, 12]), st.dictionaries(st.integers(0, 11), st.fractions(-3, 3, max_denominator=5), max_size=3))
def test_scalar_json_round_trip(n, poly):
    x = CycNumber.from_poly(n, poly)
    obj = scalar_to_json(x)
    assert json.loads(json.dumps(obj)) == obj
    assert parse_scalar(obj) == x


def test_scalar_serialization_shape():
    assert scalar_to_json(root_of_unity(4, 1)) == {"order": 4, "coeffs": [["0", "1"], ["1", "1"]]}
    assert scalar_to_json(root_of_unity(8, 2)) == scalar_to_json(root_of_unity(4, 1))


def test_load_json_reports_location(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"a": 1,\n  "b": }')
    with pytest.raises(InputError, match="line 2 column"):
        load_json(p)
    with pytest.raises(InputError, match="cannot read"):
        load_json(tmp_path / "missing.json")


def test_resolve_file(tmp_path):
    assert resolve_file("S3", "groups") == bundled_path("groups", "S3.json")
    own = tmp_path / "g.json"
    own.write_text("{}")
    assert resolve_file(str(own), "groups") == own
    with pytest.raises(InputError):
        resolve_file("nope", "groups")
    with pytest.raises(InputError):
        resolve_file(str(tmp_path), "groups")


def test_group_files():
    for name, order in [("C2", 2), ("C4", 4), ("Klein", 4), ("S3", 6), ("D4", 8), ("Q8", 8)]:
        G, subs, stem = load_group(name)
        assert G.order == order and stem == name
        for sub in subs:
            resolve_subgroup(G, subs, sub)
    G, subs, _ = load_group("S3")
    assert resolve_subgroup(G, subs, "A3").order == 3
    assert resolve_subgroup(G, subs, "e,(0 1)").order == 2
    with pytest.raises(InputError):
        resolve_subgroup(G, subs, "(0 1),(0 2)")


@pytest.mark.parametrize("obj,msg", [
    ([], "object"),
    ({"labels": ["e"]}, "cayley"),
    ({"labels": ["e", "g"], "cayley": [[0, 1], [1, 1]]}, "inverse|identity"),
    ({"labels": ["e", "g"], "cayley": [["e", "g"], ["g", "h"]]}, "unknown label"),
    ({"degree": 3, "generators": [[0, 0, 1]]}, "permutation"),
    ({"labels": ["e"], "cayley": [[0]], "subgroups": {"X": ["q"]}}, "unknown label"),
])
def test_group_file_errors(obj, msg):
    with pytest.raises(InputError, match=msg):
        group_from_json(obj)


def test_cocycle_files_round_trip():
    for group, sub, name in [("C2", None, "C2-sign"), ("C4", None, "C4-twist"), ("Klein", None, "Klein-pauli"),
                             ("D4", "V", "D4-V-pauli"), ("S3", None, "S3-twist"), ("Q8", "C4", "Q8-C4-twist")]:
        G, subs, _ = load_group(group)
        F = resolve_subgroup(G, subs, sub)
        psi = load_cocycle(name, G, F)
        again = cocycle_from_json(json.loads(json.dumps(cocycle_to_json(psi))), G)
        assert again == psi


def test_cocycle_errors():
    G, subs, _ = load_group("Klein")
    labels = ["e", "a", "b", "ab"]
    sign = [[1 if not ((i >> 1) & (j & 1)) else -1 for j in range(4)] for i in range(4)]
    with pytest.raises(InputError, match="not normalized"):
        cocycle_from_json({"subgroup": labels, "values": sign}, G)
    psi = cocycle_from_json({"subgroup": labels, "values": sign}, G, require_normalized=False)
    out, _ = normalize_cocycle(psi)
    assert cocycle_from_json(cocycle_to_json(out), G) == out
    broken = [row[:] for row in sign]
    broken[1][2] = "zeta(3,1)"
    with pytest.raises(InputError, match="2-cocycle identity"):
        cocycle_from_json({"subgroup": labels, "values": broken}, G, require_normalized=False)
    with pytest.raises(InputError, match="4 x 4"):
        cocycle_from_json({"subgroup": labels, "values": [[1]]}, G)
    with pytest.raises(InputError, match="values\\[0\\]\\[1\\]"):
        cocycle_from_json({"subgroup": labels, "values": [[1, "??", 1, 1]] + sign[1:]}, G)
    with pytest.raises(InputError, match="not on the chosen subgroup"):
        load_cocycle("Klein-pauli", G, resolve_subgroup(G, subs, "A"))


def test_rep_round_trip_and_errors():
    G, subs, _ = load_group("Klein")
    psi = load_cocycle("Klein-pauli", G, G.whole())
    V = load_rep("Klein-pauli", psi)
    again = rep_from_json(json.loads(json.dumps(rep_to_json(V))), psi)
    assert again.matrices == V.matrices
    obj = rep_to_json(V)
    obj["matrices"]["a"] = [[1, 0], [0, 1]]
    with pytest.raises(InputError, match="psi rho"):
        rep_from_json(obj, psi)
    del obj["matrices"]["a"]
    with pytest.raises(InputError, match="missing element"):
        rep_from_json(obj, psi)
    triv = load_cocycle(None, G, G.whole())
    with pytest.raises(InputError, match="not simple"):
        rep_from_json({"field_order": 1, "matrices": {l: [[1, 0], [0, 1]] for l in G.labels}}, triv)


def test_matrix_round_trip():
    M = matrix_from_json([["zeta(3,1)", 0], ["1/2", -1]], "m")
    assert matrix_from_json(matrix_to_json(M), "m") == M
    with pytest.raises(InputError):
        matrix_from_json([[1], [1, 2]], "m")


def test_hopf_file_validation():
    H = hopf_from_json(load_json(bundled_path("hopf", "sweedler.json")))
    assert H.dim == 4 and not H.is_commutative()
    assert hopf_from_json({"group": "S3", "kind": "dual"}).dim == 6
    obj = load_json(bundled_path("hopf", "sweedler.json"))
    obj["antipode"][0] = [0, 1, 0, 0]
    with pytest.raises(InputError, match="axiom|antipode"):
        hopf_from_json(obj)
    with pytest.raises(InputError, match="missing field"):
        hopf_from_json({"dim": 1, "mult": [[0, 0, 0, 1]], "comult": [[0, 0, 0, 1]], "counit": [1], "antipode": [[1]]})
    with pytest.raises(InputError, match="kind"):
        hopf_from_json({"group": "S3", "kind": "other"})
