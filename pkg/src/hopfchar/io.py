"""JSON formats for scalars, groups, cocycles, representations, Hopf and comodule algebras.

Every loader raises ``InputError`` with a location string such as
``cocycle.json: values[1][2]`` so the CLI can report it and exit 2.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources
from math import lcm
from pathlib import Path
from typing import Any

from .cocycles import CocycleError, TwoCocycle, check_cocycle, cocycle_from_function, trivial_cocycle
from .comodule import ComoduleAlgebraData, ProjectiveRep, simple_check
from .exactfield import ZERO, CycNumber, ExactMatrix, root_of_unity
from .groups import FiniteGroup, GroupError, Subgroup, group_from_cayley, group_from_permutations
from .hopf import HopfData, HopfError, YDModule, hopf_axiom_failures


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

_RAT = r"[+-]?\d+(?:/\d+)?"
_ZETA = re.compile(rf"^\s*(?:({_RAT})\s*\*\s*|([+-])?)zeta\(\s*(\d+)\s*,\s*(-?\d+)\s*\)\s*$")
_PLAIN = re.compile(rf"^\s*{_RAT}\s*$")


def parse_scalar(obj: Any, where: str = "scalar") -> CycNumber:
    """int, "p/q", "zeta(n,k)", "-zeta(n,k)", "p/q*zeta(n,k)" or {"order": n, "coeffs": [["p","q"], ...]}."""
    if isinstance(obj, bool):
        raise InputError(f"{where}: booleans are not scalars")
    if isinstance(obj, int):
        return CycNumber.rational(obj)
    if isinstance(obj, str):
        if _PLAIN.match(obj):
            try:
                return CycNumber.rational(Fraction(obj.strip()))
            except ZeroDivisionError:
                raise InputError(f"{where}: zero denominator in {obj!r}") from None
        m = _ZETA.match(obj)
        if m:
            coef, sign, n, k = m.groups()
            n = int(n)
            if n < 1:
                raise InputError(f"{where}: root-of-unity order must be positive")
            c = Fraction(coef) if coef else Fraction(-1 if sign == "-" else 1)
            return root_of_unity(n, int(k)) * CycNumber.rational(c)
        raise InputError(f"{where}: cannot parse scalar {obj!r}")
    if isinstance(obj, dict):
        try:
            n = int(obj["order"])
            coeffs = [Fraction(int(p), int(q)) for p, q in obj["coeffs"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}: malformed scalar object ({exc})") from None
        if n < 1:
            raise InputError(f"{where}: order must be positive")
        return CycNumber.from_poly(n, {i: c for i, c in enumerate(coeffs)})
    raise InputError(f"{where}: unsupported scalar {obj!r}")


def scalar_to_json(x: CycNumber) -> dict:
    m = x.minimal()
    return {"order": m.order, "coeffs": [[str(c.numerator), str(c.denominator)] for c in m.coeffs]}


def vector_to_json(v: dict, labels: list[str] | None = None) -> list:
    """Sparse vector as sorted [index-or-label, scalar] pairs."""
    return [[labels[i] if labels else i, scalar_to_json(c)] for i, c in sorted(v.items())]


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------


def load_json(path: str | Path) -> Any:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def bundled_path(*parts: str) -> Path:
    node = resources.files("hopfchar").joinpath("data")
    for part in parts:
        node = node.joinpath(part)
    return Path(str(node))


def resolve_file(ref: str, kind: str) -> Path:
    """A filesystem path, or the name of a bundled fixture of the given kind."""
    p = Path(ref)
    if p.is_file():
        return p
    q = bundled_path(kind, ref if ref.endswith(".json") else ref + ".json")
    if q.exists():
        return q
    raise InputError(f"{ref}: no such file or bundled {kind[:-1]}")


def dumps_report(report: Any) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------


def _require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    return obj[key]


def group_from_json(obj: Any, where: str = "group") -> tuple[FiniteGroup, dict[str, list[str]]]:
    """{"labels": [...], "cayley": [[...]]} or {"degree": d, "generators": [[perm], ...]}; optional "subgroups"."""
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    try:
        if "cayley" in obj:
            labels = _require(obj, "labels", where)
            table = obj["cayley"]
            if not all(isinstance(r, list) for r in table):
                raise InputError(f"{where}: cayley must be a list of rows")
            rows = []
            for i, r in enumerate(table):
                row = []
                for j, x in enumerate(r):
                    if isinstance(x, str):
                        if x not in labels:
                            raise InputError(f"{where}: cayley[{i}][{j}] unknown label {x!r}")
                        row.append(labels.index(x))
                    elif isinstance(x, int) and not isinstance(x, bool):
                        row.append(x)
                    else:
                        raise InputError(f"{where}: cayley[{i}][{j}] must be a label or index")
                rows.append(row)
            G = group_from_cayley([str(l) for l in labels], rows)
        elif "generators" in obj:
            G = group_from_permutations(int(_require(obj, "degree", where)), obj["generators"])
        else:
            raise InputError(f"{where}: need either 'cayley' or 'generators'")
    except GroupError as exc:
        raise InputError(f"{where}: {exc}") from None
    subs = obj.get("subgroups", {})
    if not isinstance(subs, dict):
        raise InputError(f"{where}: subgroups must map names to label lists")
    for name, lbls in subs.items():
        for l in lbls:
            if l not in G.labels:
                raise InputError(f"{where}: subgroups[{name!r}] unknown label {l!r}")
    return G, {k: list(v) for k, v in subs.items()}


def load_group(ref: str) -> tuple[FiniteGroup, dict[str, list[str]], str]:
    path = resolve_file(ref, "groups")
    G, subs = group_from_json(load_json(path), str(path))
    return G, subs, Path(path).stem


def resolve_subgroup(G: FiniteGroup, subgroups: dict[str, list[str]], name: str | None) -> Subgroup:
    """A named subgroup, 'whole', 'trivial', or a comma-separated label list."""
    try:
        if name is None or name == "whole":
            return G.whole()
        if name == "trivial":
            return G.trivial_subgroup()
        if name in subgroups:
            return G.subgroup_by_labels(subgroups[name])
        labels = [x.strip() for x in name.split(",")]
        return G.subgroup_by_labels(labels)
    except (GroupError, ValueError) as exc:
        raise InputError(f"subgroup {name!r}: {exc}") from None


def subgroup_to_json(F: Subgroup) -> list[str]:
    return [F.parent.labels[f] for f in F.elements]


# ---------------------------------------------------------------------------
# cocycles
# ---------------------------------------------------------------------------


def cocycle_from_json(obj: Any, G: FiniteGroup, where: str = "cocycle", require_normalized: bool = True) -> TwoCocycle:
    """{"subgroup": [labels], "values": [[scalar, ...]] | "trivial"}; rows follow the label list."""
    labels = _require(obj, "subgroup", where)
    try:
        F = G.subgroup_by_labels(labels)
    except (GroupError, ValueError) as exc:
        raise InputError(f"{where}: subgroup: {exc}") from None
    values = _require(obj, "values", where)
    if values == "trivial":
        return trivial_cocycle(F)
    order = [G.index(l) for l in labels]
    n = len(order)
    if not isinstance(values, list) or len(values) != n or any(not isinstance(r, list) or len(r) != n for r in values):
        raise InputError(f"{where}: values must be a {n} x {n} table")
    table = {}
    for i, row in enumerate(values):
        for j, x in enumerate(row):
            table[(order[i], order[j])] = parse_scalar(x, f"{where}: values[{i}][{j}]")
    try:
        psi = cocycle_from_function(F, lambda a, b: table[(a, b)])
    except CocycleError as exc:
        raise InputError(f"{where}: {exc}") from None
    status = check_cocycle(psi)
    if not status["cocycle"]:
        raise InputError(f"{where}: values do not satisfy the 2-cocycle identity")
    if require_normalized and not status["normalized"]:
        raise InputError(f"{where}: cocycle is not normalized (run normalize-cocycle first)")
    return psi


def load_cocycle(ref: str | None, G: FiniteGroup, F: Subgroup, require_normalized: bool = True) -> TwoCocycle:
    if ref is None or ref == "trivial":
        return trivial_cocycle(F)
    path = resolve_file(ref, "cocycles")
    psi = cocycle_from_json(load_json(path), G, str(path), require_normalized)
    if psi.domain.elements != F.elements:
        raise InputError(f"{path}: cocycle lives on {subgroup_to_json(psi.domain)}, not on the chosen subgroup")
    return psi


def cocycle_to_json(psi: TwoCocycle) -> dict:
    F = psi.domain
    return {"subgroup": subgroup_to_json(F), "values": [[scalar_to_json(psi(a, b)) for b in F.elements] for a in F.elements]}


# ---------------------------------------------------------------------------
# projective representations
# ---------------------------------------------------------------------------


def matrix_from_json(obj: Any, where: str) -> ExactMatrix:
    if not isinstance(obj, list) or not obj or any(not isinstance(r, list) or len(r) != len(obj[0]) for r in obj):
        raise InputError(f"{where}: matrix must be a non-empty rectangular list of rows")
    return ExactMatrix.from_rows([[parse_scalar(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(obj)])


def matrix_to_json(M: ExactMatrix) -> list:
    return [[scalar_to_json(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


def rep_from_json(obj: Any, psi: TwoCocycle, where: str = "rep") -> ProjectiveRep:
    """{"field_order": n, "matrices": {label: matrix}} for every element of the cocycle's subgroup."""
    G = psi.group
    n = int(_require(obj, "field_order", where))
    mats_obj = _require(obj, "matrices", where)
    mats = {}
    for f in psi.domain.elements:
        lbl = G.labels[f]
        if lbl not in mats_obj:
            raise InputError(f"{where}: matrices: missing element {lbl!r}")
        M = matrix_from_json(mats_obj[lbl], f"{where}: matrices[{lbl!r}]")
        for i in range(M.rows):
            for j in range(M.cols):
                o = M[i, j].minimal().order
                if lcm(o, n) not in (n, 2 * n if n % 2 else n):
                    raise InputError(f"{where}: matrices[{lbl!r}][{i}][{j}] is not in Q(zeta_{n})")
        mats[f] = M
    dims = {(M.rows, M.cols) for M in mats.values()}
    if len(dims) != 1 or next(iter(dims))[0] != next(iter(dims))[1]:
        raise InputError(f"{where}: matrices must be square of one common size")
    rep = ProjectiveRep(psi, next(iter(dims))[0], mats)
    status = simple_check(rep)
    if not status["projective"]:
        a, b = status["witness"]
        raise InputError(f"{where}: rho({G.labels[a]}) rho({G.labels[b]}) != psi rho(product)")
    if not status["simple"]:
        raise InputError(f"{where}: representation is not simple (commutant has dimension {status['commutant_dim']})")
    return rep


def load_rep(ref: str, psi: TwoCocycle) -> ProjectiveRep:
    path = resolve_file(ref, "reps")
    return rep_from_json(load_json(path), psi, str(path))


def rep_to_json(rep: ProjectiveRep) -> dict:
    G = rep.psi.group
    order = lcm(1, *(rep.matrices[f][i, j].minimal().order for f in rep.matrices for i in range(rep.dim) for j in range(rep.dim)))
    return {"field_order": order, "matrices": {G.labels[f]: matrix_to_json(M) for f, M in sorted(rep.matrices.items())}}


# ---------------------------------------------------------------------------
# Hopf and comodule algebras
# ---------------------------------------------------------------------------


def _triples(obj: Any, arity: int, dim: int, where: str) -> list[tuple]:
    """Sparse entries [i, j, ..., scalar] with integer indices below dim."""
    if not isinstance(obj, list):
        raise InputError(f"{where}: expected a list of entries")
    out = []
    for n, e in enumerate(obj):
        if not isinstance(e, list) or len(e) != arity + 1:
            raise InputError(f"{where}[{n}]: expected {arity} indices and a scalar")
        idx = e[:arity]
        if any(not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < dim for i in idx):
            raise InputError(f"{where}[{n}]: index out of range")
        out.append((*idx, parse_scalar(e[arity], f"{where}[{n}]")))
    return out


def _dense(obj: Any, dim: int, where: str) -> dict:
    if not isinstance(obj, list) or len(obj) != dim:
        raise InputError(f"{where}: expected {dim} scalars")
    return {i: c for i, x in enumerate(obj) if (c := parse_scalar(x, f"{where}[{i}]"))}


def _accumulate(acc: dict, key, c: CycNumber) -> None:
    acc[key] = acc.get(key, ZERO) + c
    if not acc[key]:
        del acc[key]


def hopf_from_json(obj: Any, where: str = "hopf") -> HopfData:
    """{"dim", "labels", "mult": [[i,j,k,c]], "unit": [..], "comult": [[i,a,b,c]], "counit": [..], "antipode": [[..]]}.

    mult entry [i,j,k,c]: e_i e_j has coefficient c on e_k.  comult entry
    [i,a,b,c]: Delta(e_i) has coefficient c on e_a (x) e_b.  Row i of the
    antipode matrix is S(e_i).  A file {"group": ref, "kind": "group"|"dual"}
    builds kG or k^G instead.
    """
    from .hopf import dual_group_hopf, group_hopf

    if isinstance(obj, dict) and "group" in obj:
        G, _, _ = load_group(str(obj["group"]))
        kind = obj.get("kind", "group")
        if kind not in ("group", "dual"):
            raise InputError(f"{where}: kind must be 'group' or 'dual'")
        return group_hopf(G) if kind == "group" else dual_group_hopf(G)
    dim = int(_require(obj, "dim", where))
    labels = [str(x) for x in obj.get("labels", [f"e{i}" for i in range(dim)])]
    mult = [[{} for _ in range(dim)] for _ in range(dim)]
    for i, j, k, c in _triples(_require(obj, "mult", where), 3, dim, f"{where}: mult"):
        _accumulate(mult[i][j], k, c)
    comult = [{} for _ in range(dim)]
    for i, a, b, c in _triples(_require(obj, "comult", where), 3, dim, f"{where}: comult"):
        _accumulate(comult[i], (a, b), c)
    unit = _dense(_require(obj, "unit", where), dim, f"{where}: unit")
    counit_d = _dense(_require(obj, "counit", where), dim, f"{where}: counit")
    counit = [counit_d.get(i, ZERO) for i in range(dim)]
    anti = _require(obj, "antipode", where)
    if not isinstance(anti, list) or len(anti) != dim:
        raise InputError(f"{where}: antipode must have {dim} rows")
    antipode = [_dense(r, dim, f"{where}: antipode[{i}]") for i, r in enumerate(anti)]
    try:
        H = HopfData(dim, labels, mult, unit, comult, counit, antipode)
    except HopfError as exc:
        raise InputError(f"{where}: {exc}") from None
    fails = hopf_axiom_failures(H)
    if fails:
        raise InputError(f"{where}: Hopf axiom fails: {fails[0]}")
    return H


def comodule_algebra_from_json(obj: Any, H: HopfData, where: str = "algebra") -> ComoduleAlgebraData:
    """{"dim", "labels", "mult": [[i,j,k,c]], "unit": [..], "coaction": [[k,h,k2,c]]}: lambda(e_k) has c on h (x) e_k2."""
    dim = int(_require(obj, "dim", where))
    labels = [str(x) for x in obj.get("labels", [f"k{i}" for i in range(dim)])]
    mult = [[{} for _ in range(dim)] for _ in range(dim)]
    for i, j, k, c in _triples(_require(obj, "mult", where), 3, dim, f"{where}: mult"):
        _accumulate(mult[i][j], k, c)
    unit = _dense(_require(obj, "unit", where), dim, f"{where}: unit")
    coaction = [{} for _ in range(dim)]
    entries = _require(obj, "coaction", where)
    if not isinstance(entries, list):
        raise InputError(f"{where}: coaction must be a list")
    for n, e in enumerate(entries):
        if not isinstance(e, list) or len(e) != 4:
            raise InputError(f"{where}: coaction[{n}]: expected [k, h, k2, scalar]")
        k, h, k2 = e[:3]
        if not (isinstance(k, int) and isinstance(h, int) and isinstance(k2, int)) or not (0 <= k < dim and 0 <= h < H.dim and 0 <= k2 < dim):
            raise InputError(f"{where}: coaction[{n}]: index out of range")
        _accumulate(coaction[k], (h, k2), parse_scalar(e[3], f"{where}: coaction[{n}]"))
    K = ComoduleAlgebraData(H, dim, mult, unit, coaction, labels)
    fails = K.failures()
    if fails:
        raise InputError(f"{where}: comodule algebra axiom fails: {fails[0]}")
    return K


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def yd_to_json(V: YDModule) -> dict:
    """Action triples [h, v, w, c] (h.e_v has c on e_w), coaction triples [v, h, w, c]."""
    action = [[h, v, w, scalar_to_json(c)] for h in range(V.hopf.dim) for v in range(V.dim) for w, c in sorted(V.action[h][v].items())]
    coaction = [[v, h, w, scalar_to_json(c)] for v in range(V.dim) for (h, w), c in sorted(V.coaction[v].items())]
    out = {"dim": V.dim, "action": action, "coaction": coaction}
    if V.product is not None:
        out["product"] = [[a, b, w, scalar_to_json(c)] for a in range(V.dim) for b in range(V.dim) for w, c in sorted(V.product[a][b].items())]
        out["unit"] = vector_to_json(V.unit)
    if V.labels:
        out["labels"] = list(V.labels)
    return out
