"""JSON instance files with exact rational scalars.

Two failure channels, kept strictly apart for the CLI exit-code contract:
InputError for malformed files or values (exit 2), ValidationFailure for
well-formed data whose object fails a mathematical validator such as the
Jacobi identity or positive definiteness (exit 1).

Emission is canonical: fixed key order, brackets sorted by index pair,
sparse values in ascending index order, two-space indent, trailing newline.
Re-emitting a parsed canonical file is byte-identical.
"""
from __future__ import annotations

import json
from typing import NamedTuple, Optional

from .assoc import CommAssocAlgebra, check_axioms
from .complex_structures import ComplexStructure
from .hermitian import (
    HermitianTriple, InnerProduct, NotPositiveDefiniteError, is_hermitian,
)
from .lie import LieAlgebra, check_jacobi
from .linalg import DimensionMismatch, Matrix, is_zero_vec, rat


class InputError(ValueError):
    """Malformed file or value."""


class ValidationFailure(ValueError):
    """Well-formed data that fails a mathematical validator."""


INSTANCE_KEYS = {"dim", "basis", "brackets", "J", "metric"}
ALGEBRA_KEYS = {"dim", "basis", "products"}


def parse_scalar(value):
    if isinstance(value, bool):
        raise InputError("scalar must be a rational string or integer")
    if isinstance(value, int):
        return rat(value)
    if not isinstance(value, str):
        raise InputError("scalar must be a rational string like '2/3', got %r" % (value,))
    try:
        return rat(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError("bad rational %r (%s)" % (value, exc))


def scalar_str(q) -> str:
    return str(q)


def _matrix_from_json(data, n, what) -> Matrix:
    if (not isinstance(data, list) or len(data) != n
            or any(not isinstance(row, list) or len(row) != n for row in data)):
        raise InputError("%s must be a %d x %d array" % (what, n, n))
    return Matrix([[parse_scalar(e) for e in row] for row in data])


def _matrix_to_json(m: Matrix):
    return [[scalar_str(e) for e in row] for row in m.rows]


def _sparse_pairs(data, n, key, symmetric):
    """Common reader for 'brackets' (i < j) and 'products' (i <= j)."""
    items = data.get(key, [])
    if not isinstance(items, list):
        raise InputError("'%s' must be a list" % key)
    out = {}
    for item in items:
        if not isinstance(item, dict) or set(item) != {"pair", "value"}:
            raise InputError("each %s entry needs exactly 'pair' and 'value'" % key)
        pair = item["pair"]
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)):
            raise InputError("'pair' must be two indices")
        i, j = pair
        lo_ok = i <= j if symmetric else i < j
        if not (0 <= i < n and 0 <= j < n and lo_ok):
            raise InputError("bad index pair [%r, %r] for dim %d" % (i, j, n))
        if (i, j) in out:
            raise InputError("duplicate pair [%d, %d]" % (i, j))
        value = item["value"]
        if not isinstance(value, dict):
            raise InputError("'value' must map index strings to scalars")
        parsed = {}
        for k, s in value.items():
            try:
                idx = int(k)
            except (TypeError, ValueError):
                raise InputError("bad component index %r" % (k,))
            if not 0 <= idx < n or idx in parsed:
                raise InputError("bad or duplicate component index %r" % (k,))
            parsed[idx] = parse_scalar(s)
        out[(i, j)] = parsed
    return out


def _sparse_to_json(tensor, n, symmetric):
    items = []
    for i in range(n):
        start = i if symmetric else i + 1
        for j in range(start, n):
            v = tensor[i][j]
            if not is_zero_vec(v):
                items.append({
                    "pair": [i, j],
                    "value": {str(k): scalar_str(c) for k, c in enumerate(v) if c != 0},
                })
    return items


def _read_header(data, allowed):
    if not isinstance(data, dict):
        raise InputError("instance must be a JSON object")
    unknown = set(data) - allowed
    if unknown:
        raise InputError("unknown keys: %s" % ", ".join(sorted(unknown)))
    if "dim" not in data or isinstance(data["dim"], bool) or not isinstance(data["dim"], int):
        raise InputError("'dim' must be a nonnegative integer")
    n = data["dim"]
    if n < 0:
        raise InputError("'dim' must be a nonnegative integer")
    names = data.get("basis")
    if names is not None:
        if (not isinstance(names, list) or len(names) != n
                or not all(isinstance(s, str) for s in names)
                or len(set(names)) != n):
            raise InputError("'basis' must list %d distinct names" % n)
        names = tuple(names)
    return n, names


class Instance(NamedTuple):
    algebra: LieAlgebra
    j: Optional[ComplexStructure]
    metric: Optional[InnerProduct]

    def triple(self) -> HermitianTriple:
        if self.j is None:
            raise InputError("instance has no 'J' entry")
        if self.metric is None:
            raise InputError("instance has no 'metric' entry")
        return HermitianTriple(self.algebra, self.j, self.metric)


def instance_from_dict(data) -> Instance:
    n, names = _read_header(data, INSTANCE_KEYS)
    brackets = _sparse_pairs(data, n, "brackets", symmetric=False)
    try:
        g = LieAlgebra(n, brackets, names)
    except DimensionMismatch as exc:
        raise InputError(str(exc))
    wit = check_jacobi(g)
    if wit is not None:
        raise ValidationFailure(
            "Jacobi identity fails on basis triple %s (residual %s)"
            % (wit.triple, [scalar_str(c) for c in wit.residual]))
    j = None
    if data.get("J") is not None:
        try:
            j = ComplexStructure(_matrix_from_json(data["J"], n, "'J'"))
        except (ValueError, DimensionMismatch) as exc:
            if isinstance(exc, InputError):
                raise
            raise ValidationFailure("'J' is not a complex structure: %s" % exc)
    metric = None
    if data.get("metric") is not None:
        try:
            metric = InnerProduct(_matrix_from_json(data["metric"], n, "'metric'"))
        except NotPositiveDefiniteError as exc:
            raise ValidationFailure("'metric': %s" % exc)
    if j is not None and metric is not None and not is_hermitian(g, j, metric):
        raise ValidationFailure("'metric' is not compatible with 'J'")
    return Instance(g, j, metric)


def instance_to_dict(g, j=None, metric=None) -> dict:
    out = {"dim": g.dim, "basis": list(g.basis_names)}
    out["brackets"] = _sparse_to_json(g.c, g.dim, symmetric=False)
    if j is not None:
        out["J"] = _matrix_to_json(j.matrix)
    if metric is not None:
        out["metric"] = _matrix_to_json(metric.gram)
    return out


def algebra_from_dict(data) -> CommAssocAlgebra:
    n, names = _read_header(data, ALGEBRA_KEYS)
    products = _sparse_pairs(data, n, "products", symmetric=True)
    try:
        a = CommAssocAlgebra(n, products, names)
    except DimensionMismatch as exc:
        raise InputError(str(exc))
    wit = check_axioms(a)
    if wit is not None:
        raise ValidationFailure(
            "product fails %s on indices %s" % (wit.kind, (wit.indices,)))
    return a


def algebra_to_dict(a: CommAssocAlgebra) -> dict:
    return {
        "dim": a.dim,
        "basis": list(a.basis_names),
        "products": _sparse_to_json(a.m, a.dim, symmetric=True),
    }


def matrix_from_file_dict(data, what="matrix") -> Matrix:
    if not isinstance(data, dict) or "matrix" not in data:
        raise InputError("%s file must be an object with a 'matrix' key" % what)
    rows = data["matrix"]
    if (not isinstance(rows, list) or not rows
            or any(not isinstance(r, list) or len(r) != len(rows) for r in rows)):
        raise InputError("'matrix' must be a square array")
    return Matrix([[parse_scalar(e) for e in row] for row in rows])


def emit(data: dict) -> str:
    return json.dumps(data, indent=2) + "\n"


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc))
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("malformed JSON in %s: %s" % (path, exc))


def load_instance(path) -> Instance:
    return instance_from_dict(_load_json(path))


def load_algebra(path) -> CommAssocAlgebra:
    return algebra_from_dict(_load_json(path))


def load_matrix(path) -> Matrix:
    return matrix_from_file_dict(_load_json(path))


def save_instance(path, g, j=None, metric=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit(instance_to_dict(g, j, metric)))
