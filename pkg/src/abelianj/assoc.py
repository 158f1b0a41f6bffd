"""Commutative associative algebras: axioms, compatibility for double
products, nilradical, and primitive idempotent extraction.

Idempotents run in two deliberately independent modes: "exact" factors the
minimal polynomial of a generic multiplication operator over Q and reports
an irrational spectrum instead of guessing; "float" diagonalizes numerically
and must re-certify every identity exactly after rational rounding.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import NamedTuple, Optional

from .linalg import (
    DimensionMismatch, Matrix, Subspace, ONE, ZERO, basis_vec, is_zero_vec,
    rat, rat_from_float, vec, vec_add, vec_scale, vec_sub, zero_vec,
)
from .lie import PreconditionError


class AxiomWitness(NamedTuple):
    kind: str              # "commutativity" | "associativity"
    indices: tuple
    residual: tuple


class CompatibilityWitness(NamedTuple):
    identity: int          # 1: a*(b.c)=b*(a.c)   2: a.(b*c)=b.(a*c)
    indices: tuple
    residual: tuple


class NotSemisimpleError(ValueError):
    pass


class IrrationalSpectrumError(ValueError):
    """Exact mode found an irreducible factor that is not linear or an
    imaginary quadratic; the idempotents have irrational coordinates."""


class FloatCertificationError(ValueError):
    """Float mode produced candidates that fail exact re-certification."""


class GenericityError(ValueError):
    pass


class CommAssocAlgebra:
    __slots__ = ("dim", "m", "basis_names")

    def __init__(self, dim, products=None, basis_names=None):
        """products: {(i,j): value} for i<=j; value dense vector or {k: scalar}."""
        self.dim = dim
        table = [[zero_vec(dim) for _ in range(dim)] for _ in range(dim)]
        for (i, j), value in (products or {}).items():
            if not (0 <= i <= j < dim):
                raise DimensionMismatch("product pair (%d,%d) must satisfy 0 <= i <= j < dim" % (i, j))
            v = _as_vector(value, dim)
            table[i][j] = v
            table[j][i] = v
        self.m = tuple(tuple(row) for row in table)
        self.basis_names = tuple(basis_names) if basis_names else tuple(
            "e%d" % (i + 1) for i in range(dim))
        if len(self.basis_names) != dim:
            raise DimensionMismatch("basis_names length != dim")

    @classmethod
    def from_tensor(cls, tensor, basis_names=None):
        dim = len(tensor)
        products = {}
        for i in range(dim):
            for j in range(i, dim):
                if vec(tensor[i][j]) != vec(tensor[j][i]):
                    raise DimensionMismatch("product tensor not symmetric at (%d,%d)" % (i, j))
                if not is_zero_vec(tensor[i][j]):
                    products[(i, j)] = tensor[i][j]
        return cls(dim, products, basis_names)

    @classmethod
    def zero(cls, dim):
        return cls(dim, {})

    def multiply(self, x, y):
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch("multiply arguments must have dimension %d" % self.dim)
        out = list(zero_vec(self.dim))
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            mi = self.m[i]
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                f = xi * yj
                for k, wk in enumerate(mi[j]):
                    if wk != 0:
                        out[k] += f * wk
        return tuple(out)

    def left_mult(self, x):
        """Matrix of y -> x.y."""
        cols = []
        for j in range(self.dim):
            col = list(zero_vec(self.dim))
            for i, xi in enumerate(x):
                if xi != 0:
                    for k, wk in enumerate(self.m[i][j]):
                        if wk != 0:
                            col[k] += xi * wk
            cols.append(tuple(col))
        return Matrix.from_columns(cols)

    def __eq__(self, other):
        return isinstance(other, CommAssocAlgebra) and self.dim == other.dim and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return "CommAssocAlgebra(dim=%d)" % self.dim


def _as_vector(value, dim):
    if isinstance(value, dict):
        out = list(zero_vec(dim))
        for k, s in value.items():
            out[int(k)] = rat(s)
        return tuple(out)
    return vec(value)


def multiply(a, x, y):
    return a.multiply(x, y)


def left_mult(a, x):
    return a.left_mult(x)


def check_axioms(a) -> Optional[AxiomWitness]:
    """None if commutative and associative on basis triples, else a witness."""
    n = a.dim
    for i in range(n):
        for j in range(i + 1, n):
            if a.m[i][j] != a.m[j][i]:
                return AxiomWitness("commutativity", (i, j),
                                    vec_sub(a.m[i][j], a.m[j][i]))
    for i in range(n):
        ei = basis_vec(n, i)
        for j in range(n):
            prod_ij = a.m[i][j]
            for k in range(n):
                lhs = a.multiply(prod_ij, basis_vec(n, k))
                rhs = a.multiply(ei, a.m[j][k])
                if lhs != rhs:
                    return AxiomWitness("associativity", (i, j, k), vec_sub(lhs, rhs))
    return None


def check_compatibility(adot, astar) -> Optional[CompatibilityWitness]:
    """The two mixed-product identities a*(b.c) = b*(a.c), a.(b*c) = b.(a*c)."""
    if adot.dim != astar.dim:
        raise PreconditionError("algebras have different dimensions")
    if check_axioms(adot) is not None or check_axioms(astar) is not None:
        raise PreconditionError("compatibility requires both algebras to pass the axioms")
    n = adot.dim
    for i in range(n):
        ei = basis_vec(n, i)
        for j in range(n):
            ej = basis_vec(n, j)
            for k in range(n):
                lhs = astar.multiply(ei, adot.m[j][k])
                rhs = astar.multiply(ej, adot.multiply(ei, basis_vec(n, k)))
                if lhs != rhs:
                    return CompatibilityWitness(1, (i, j, k), vec_sub(lhs, rhs))
                lhs = adot.multiply(ei, astar.m[j][k])
                rhs = adot.multiply(ej, astar.multiply(ei, basis_vec(n, k)))
                if lhs != rhs:
                    return CompatibilityWitness(2, (i, j, k), vec_sub(lhs, rhs))
    return None


def square_span(a) -> Subspace:
    vecs = [a.m[i][j] for i in range(a.dim) for j in range(i, a.dim)]
    return Subspace(a.dim, vecs)


class NilradicalReport(NamedTuple):
    nilradical: Subspace
    is_semisimple: bool


def nilradical(a) -> NilradicalReport:
    """Kernel of the trace form b(x,y) = tr(l_{x.y}), iterated to stability.

    For commutative algebras in characteristic zero one pass already gives
    the set of nilpotent elements; each basis element of the result is
    certified nilpotent exactly.
    """
    if check_axioms(a) is not None:
        raise PreconditionError("nilradical requires a commutative associative algebra")
    n = a.dim
    traces = [[a.left_mult(a.m[i][j]).trace() for j in range(n)] for i in range(n)]
    current = Subspace.whole(n)
    while True:
        if current.is_zero():
            break
        rows = [tuple(sum((u[i] * traces[i][j] for i in range(n)), ZERO)
                      for j in range(n)) for u in current.basis]
        nxt = current.intersect(Subspace(n, Matrix(rows).kernel()))
        if nxt == current:
            break
        current = nxt
    for v in current.basis:
        power = a.left_mult(v)
        for _ in range(n):
            power = power @ a.left_mult(v)
        assert power.is_zero(), "trace-form kernel contains a non-nilpotent element"
    return NilradicalReport(current, current.is_zero())


def is_nilpotent_algebra(a) -> bool:
    return nilradical(a).nilradical == Subspace.whole(a.dim)


def unit(a):
    """The multiplicative unit as a vector, or None."""
    n = a.dim
    rows = []
    rhs = []
    for i in range(n):
        for k in range(n):
            rows.append(tuple(a.m[j][i][k] for j in range(n)))
            rhs.append(ONE if k == i else ZERO)
    aug = Matrix(rows)
    return aug.solve(tuple(rhs))


class IdempotentSet(NamedTuple):
    idempotents: tuple          # ambient coordinate vectors
    factor_types: tuple         # "R" | "C" per idempotent
    mode_used: str


# ---- polynomial evaluation over Q (ascending coefficients) ----

def _poly_eval_matrix(p, mat):
    n = mat.nrows
    if not p:
        return Matrix.zeros(n, n)
    acc = Matrix.identity(n).scale(p[-1])
    for c in reversed(p[:-1]):
        acc = (acc @ mat) + Matrix.identity(n).scale(c)
    return acc


def minimal_polynomial(mat: Matrix):
    """Monic minimal polynomial, ascending coefficients, via exact linalgebra."""
    n = mat.nrows
    powers = [Matrix.identity(n)]
    flat = [sum(powers[0].rows, ())]
    for _ in range(n):
        powers.append(powers[-1] @ mat)
        flat.append(sum(powers[-1].rows, ()))
        # solve c_0 I + ... + c_{d-1} M^{d-1} = -M^d
        cols = Matrix.from_columns(flat[:-1])
        sol = cols.solve(vec_scale(rat(-1), flat[-1]))
        if sol is not None:
            return list(sol) + [ONE]
    raise AssertionError("minimal polynomial must exist by Cayley-Hamilton")


def _factor_over_q(coeffs):
    """Irreducible monic factors over Q via sympy, as ascending-coeff lists."""
    from sympy import Poly, Rational, Symbol

    t = Symbol("t")
    p = Poly([Rational(str(c)) for c in reversed(coeffs)], t, domain="QQ")
    out = []
    for fac, mult in p.factor_list()[1]:
        monic = fac.monic()
        out.append(([rat(str(c)) for c in reversed(monic.all_coeffs())], mult))
    return out


def _block_unit(a, block: Subspace):
    """Unit of the restricted algebra on an ideal block, in ambient coords."""
    basis = block.basis
    m = len(basis)
    rows = []
    rhs = []
    for i in range(m):
        for k in range(m):
            col = []
            for j in range(m):
                prod = a.multiply(basis[j], basis[i])
                coords = block.coordinates(prod)
                if coords is None:
                    return None
                col.append(coords[k])
            rows.append(tuple(col))
            rhs.append(ONE if k == i else ZERO)
    sol = Matrix(rows).solve(tuple(rhs))
    if sol is None:
        return None
    out = zero_vec(a.dim)
    for coef, b in zip(sol, basis):
        out = vec_add(out, vec_scale(coef, b))
    return out


def _certify_idempotents(a, elements):
    for idx, e in enumerate(elements):
        if a.multiply(e, e) != e:
            return False
        for e2 in elements[idx + 1:]:
            if not is_zero_vec(a.multiply(e, e2)):
                return False
    return True


def _generic_elements(dim, max_retries, seed):
    """Vandermonde-style candidates (1, t, t^2, ...) first, then random."""
    rng = random.Random(seed)
    for t in range(1, max_retries + 1):
        if t <= 6:
            yield tuple(rat(t) ** i for i in range(dim))
        else:
            yield tuple(rat(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(dim))


def primitive_idempotents(a, mode="exact", max_retries=32, seed=0) -> IdempotentSet:
    """Complete primitive orthogonal idempotents of a semisimple algebra.

    Factor types: "R" for a 1-dim block, "C" for a 2-dim block on which the
    minimal polynomial factor is an imaginary quadratic.  Exact mode raises
    IrrationalSpectrumError when any factor is neither; float mode must
    re-certify all products exactly after rounding or raises.
    """
    rep = nilradical(a)
    if not rep.is_semisimple:
        raise NotSemisimpleError("algebra has a nonzero nilradical")
    if a.dim == 0:
        return IdempotentSet((), (), mode)
    if mode == "exact":
        return _idempotents_exact(a, max_retries, seed)
    if mode == "float":
        return _idempotents_float(a, max_retries, seed)
    raise ValueError("mode must be 'exact' or 'float'")


def _idempotents_exact(a, max_retries, seed):
    last_error = None
    for x in _generic_elements(a.dim, max_retries, seed):
        lx = a.left_mult(x)
        minpoly = minimal_polynomial(lx)
        factors = _factor_over_q(minpoly)
        if any(mult > 1 for _, mult in factors):
            last_error = GenericityError("minimal polynomial not squarefree")
            continue
        bad = [f for f, _ in factors
               if len(f) - 1 > 2 or (len(f) - 1 == 2 and f[1] * f[1] - 4 * f[0] >= 0)]
        if bad:
            raise IrrationalSpectrumError(
                "irrational spectrum: irreducible factor of degree %d is not "
                "linear or an imaginary quadratic" % (len(bad[0]) - 1))
        blocks = []
        ok = True
        for f, _ in factors:
            block = Subspace(a.dim, _poly_eval_matrix(f, lx).kernel())
            if block.dim != len(f) - 1:
                ok = False  # eigenvalue collision, redraw the generic element
                break
            blocks.append((f, block))
        if not ok or sum(b.dim for _, b in blocks) != a.dim:
            last_error = GenericityError("generic element did not separate the factors")
            continue
        elements = []
        types = []
        for f, block in blocks:
            e = _block_unit(a, block)
            assert e is not None, "semisimple block must be unital"
            elements.append(e)
            types.append("R" if len(f) - 1 == 1 else "C")
        assert _certify_idempotents(a, elements)
        u = unit(a)
        if u is not None:
            total = zero_vec(a.dim)
            for e in elements:
                total = vec_add(total, e)
            assert total == u
        order = sorted(range(len(elements)), key=lambda i: (types[i], elements[i]))
        return IdempotentSet(tuple(elements[i] for i in order),
                             tuple(types[i] for i in order), "exact")
    raise last_error or GenericityError("no generic element found")


def _idempotents_float(a, max_retries, seed):
    import numpy as np

    tol = 1e-9
    last_error = None
    for x in _generic_elements(a.dim, max_retries, seed):
        lx = a.left_mult(x)
        arr = np.array([[float(Fraction(str(e))) for e in row] for row in lx.rows],
                       dtype=np.float64)
        w, v = np.linalg.eig(arr)
        try:
            vinv = np.linalg.inv(v)
        except np.linalg.LinAlgError:
            last_error = GenericityError("numerically defective operator")
            continue
        clusters = _cluster_eigenvalues(w, tol)
        blocks, ok = _conjugate_blocks(w, clusters, tol)
        if not ok:
            last_error = GenericityError("eigenvalue clusters not separated")
            continue
        elements = []
        types = []
        for kind, idxs in blocks:
            proj = (v[:, idxs] @ vinv[idxs, :]).real
            block_space = Subspace(a.dim, [
                tuple(rat_from_float(proj[r, c]) for r in range(a.dim))
                for c in range(a.dim)])
            if block_space.dim != len(idxs):
                last_error = FloatCertificationError("rounded projection has wrong rank")
                break
            e = _block_unit(a, block_space)
            if e is None:
                last_error = FloatCertificationError("rounded block is not unital")
                break
            elements.append(e)
            types.append(kind)
        else:
            if not _certify_idempotents(a, elements):
                raise FloatCertificationError(
                    "candidates fail exact idempotent certification")
            order = sorted(range(len(elements)), key=lambda i: (types[i], elements[i]))
            return IdempotentSet(tuple(elements[i] for i in order),
                                 tuple(types[i] for i in order), "float")
    if isinstance(last_error, FloatCertificationError):
        raise last_error
    raise last_error or GenericityError("no generic element found")


def _cluster_eigenvalues(w, tol):
    n = len(w)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(w[i] - w[j]) <= tol:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _conjugate_blocks(w, clusters, tol):
    """Pair complex-conjugate clusters; single real -> R, conjugate pair -> C."""
    blocks = []
    used = set()
    for idx, cluster in enumerate(clusters):
        if idx in used:
            continue
        rep = w[cluster[0]]
        if abs(rep.imag) <= tol:
            if len(cluster) != 1:
                return [], False
            blocks.append(("R", cluster))
            used.add(idx)
            continue
        mate = None
        for jdx in range(idx + 1, len(clusters)):
            if jdx in used:
                continue
            if abs(w[clusters[jdx][0]] - rep.conjugate()) <= tol:
                mate = jdx
                break
        if mate is None or len(cluster) != 1 or len(clusters[mate]) != 1:
            return [], False
        blocks.append(("C", cluster + clusters[mate]))
        used.add(idx)
        used.add(mate)
    return blocks, True
