"""Finite-dimensional algebras over Q, their modules, radicals and lengths.

An algebra is a span of vertex-indexed matrix tuples inside a product of
matrix algebras; multiplication is componentwise.  Modules carry one action
matrix per algebra basis element.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import poly
from .ratlin import (
    Matrix,
    block_diag,
    column_space,
    hstack,
    inverse,
    kernel_basis,
    kron,
    left_inverse,
    pivot_columns,
    rank,
    solve,
)

Tuple_ = tuple  # a vertex-indexed matrix tuple


class AlgebraError(ValueError):
    pass


def _flatten(t: Sequence[Matrix]) -> list[Fraction]:
    out: list[Fraction] = []
    for m in t:
        out.extend(m.vec())
    return out


def _unflatten(values: Sequence, ambient: Sequence[int]) -> tuple[Matrix, ...]:
    out = []
    pos = 0
    for d in ambient:
        out.append(Matrix.unvec(values[pos:pos + d * d], d, d))
        pos += d * d
    return tuple(out)


def tuple_mul(s, t) -> tuple[Matrix, ...]:
    return tuple(a @ b for a, b in zip(s, t))


def tuple_identity(ambient: Sequence[int]) -> tuple[Matrix, ...]:
    return tuple(Matrix.identity(d) for d in ambient)


@dataclass(frozen=True, eq=False)
class FDAlgebra:
    ambient: tuple[int, ...]
    basis: tuple[tuple[Matrix, ...], ...]
    unit: tuple[Fraction, ...]

    @classmethod
    def from_span(cls, ambient: Sequence[int], elements: Sequence[Sequence[Matrix]], check: bool = True) -> "FDAlgebra":
        """Subalgebra spanned by ``elements`` (independent ones kept, first-pivot)."""
        ambient = tuple(ambient)
        elements = [tuple(e) for e in elements]
        size = sum(d * d for d in ambient)
        if elements:
            cols = Matrix.from_columns([_flatten(e) for e in elements], size)
            keep = pivot_columns(cols)
        else:
            keep = ()
        basis = tuple(elements[i] for i in keep)
        alg = cls(ambient, basis, ())
        unit = alg.coords(tuple_identity(ambient))
        alg = cls(ambient, basis, tuple(unit))
        if check:
            alg.check()
        return alg

    @classmethod
    def from_matrices(cls, mats: Sequence[Matrix], check: bool = True) -> "FDAlgebra":
        """Algebra spanned by square matrices of one size (plus the identity)."""
        if not mats:
            raise AlgebraError("need at least one matrix")
        n = mats[0].rows
        elems = [(Matrix.identity(n),)] + [(m,) for m in mats]
        return cls.from_span((n,), elems, check=check)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _flat(self) -> Matrix:
        size = sum(d * d for d in self.ambient)
        return Matrix.from_columns([_flatten(b) for b in self.basis], size)

    @cached_property
    def _coord_map(self) -> Matrix:
        return left_inverse(self._flat)

    def coords(self, t: Sequence[Matrix]) -> list[Fraction]:
        v = Matrix.from_columns([_flatten(t)], self._flat.rows)
        c = self._coord_map @ v
        if self._flat @ c != v:
            raise AlgebraError("element is not in the algebra")
        return c.column(0) if c.rows else []

    def contains(self, t: Sequence[Matrix]) -> bool:
        try:
            self.coords(t)
            return True
        except AlgebraError:
            return False

    def element(self, coords: Sequence) -> tuple[Matrix, ...]:
        size = self._flat.rows
        v = self._flat @ Matrix.from_columns([list(coords)], self.dim)
        return _unflatten(v.column(0) if size else [], self.ambient)

    def coords_many(self, ts: Sequence[Sequence[Matrix]]) -> Matrix:
        """Coordinates of several elements at once, as columns."""
        v = Matrix.from_columns([_flatten(t) for t in ts], self._flat.rows)
        c = self._coord_map @ v
        if self._flat @ c != v:
            raise AlgebraError("element is not in the algebra")
        return c

    @cached_property
    def structure_constants(self) -> tuple[tuple[tuple[Fraction, ...], ...], ...]:
        """c[i][j] = coordinates of basis[i] * basis[j]."""
        d = self.dim
        if d == 0:
            return ()
        prods = [tuple_mul(bi, bj) for bi in self.basis for bj in self.basis]
        c = self.coords_many(prods).T
        rows = [tuple(c.row_items(k).get(q, Fraction(0)) for q in range(d)) for k in range(d * d)]
        return tuple(tuple(rows[i * d + j] for j in range(d)) for i in range(d))

    def left_regular(self, i: int) -> Matrix:
        c = self.structure_constants
        return Matrix.from_columns([c[i][j] for j in range(self.dim)], self.dim)

    def check(self) -> None:
        if self.basis and rank(self._flat) != self.dim:
            raise AlgebraError("basis tuples are linearly dependent")
        if not self.contains(tuple_identity(self.ambient)):
            raise AlgebraError("identity tuple is not in the span")
        if self.basis:
            try:
                self.coords_many([tuple_mul(bi, bj) for bi in self.basis for bj in self.basis])
            except AlgebraError:
                raise AlgebraError("span is not closed under multiplication") from None

    def trace_form(self) -> Matrix:
        """tr of the product in the ambient (faithful) representation."""
        n = self.dim
        rows = []
        for bi in self.basis:
            rows.append([sum((( a @ b).trace() for a, b in zip(bi, bj)), Fraction(0)) for bj in self.basis])
        return Matrix.from_rows(rows, n)


@dataclass(frozen=True, eq=False)
class AModule:
    dim: int
    action: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(self.action))
        for m in self.action:
            if m.shape != (self.dim, self.dim):
                raise AlgebraError("action matrix has the wrong shape")

    def act(self, coords: Sequence) -> Matrix:
        acc = Matrix(self.dim, self.dim)
        for c, m in zip(coords, self.action):
            if c:
                acc = acc + m.scale(c)
        return acc

    def check(self, a: FDAlgebra) -> None:
        if len(self.action) != a.dim:
            raise AlgebraError("module has one action matrix per algebra basis element")
        if self.act(a.unit) != Matrix.identity(self.dim):
            raise AlgebraError("the unit does not act as the identity")
        c = a.structure_constants
        for i, mi in enumerate(self.action):
            for j, mj in enumerate(self.action):
                if mi @ mj != self.act(c[i][j]):
                    raise AlgebraError(f"action is not multiplicative on basis pair ({i}, {j})")


@dataclass(frozen=True, eq=False)
class AlgebraHom:
    source: FDAlgebra
    target: FDAlgebra
    matrix: Matrix  # target.dim x source.dim

    def apply(self, coords: Sequence) -> list[Fraction]:
        v = self.matrix @ Matrix.from_columns([list(coords)], self.source.dim)
        return v.column(0) if v.rows else []

    def compose(self, other: "AlgebraHom") -> "AlgebraHom":
        """self after other."""
        if other.target is not self.source and other.target.dim != self.source.dim:
            raise AlgebraError("homomorphisms are not composable")
        return AlgebraHom(other.source, self.target, self.matrix @ other.matrix)

    def check(self) -> None:
        if self.apply(self.source.unit) != list(self.target.unit):
            raise AlgebraError("unit is not preserved")
        src, tgt = self.source, self.target
        d = src.dim
        if d == 0:
            return
        # images of the basis as ambient tuples of the target
        imgs = tgt._flat @ self.matrix
        elems = [_unflatten(imgs.column(i), tgt.ambient) for i in range(d)]
        c = src.structure_constants
        consts = Matrix.from_columns([c[i][j] for i in range(d) for j in range(d)], d)
        lhs = imgs @ consts
        rhs = Matrix.from_columns([_flatten(tuple_mul(elems[i], elems[j])) for i in range(d) for j in range(d)],
                                  imgs.rows)
        if lhs != rhs:
            bad = next(k for k in range(d * d) if lhs.column(k) != rhs.column(k))
            raise AlgebraError(f"not multiplicative on basis pair ({bad // d}, {bad % d})")

    def pullback(self, m: AModule) -> AModule:
        """Restriction of scalars of a target-module to the source."""
        acts = []
        for j in range(self.source.dim):
            acts.append(m.act(self.matrix.column(j)))
        return AModule(m.dim, tuple(acts))


# ----------------------------------------------------------------------
# generic module constructions


def generated_algebra(ambient: Sequence[int], elements: Sequence[Sequence[Matrix]]) -> FDAlgebra:
    """Smallest subalgebra containing ``elements`` (and the identity)."""
    ambient = tuple(ambient)
    size = sum(d * d for d in ambient)
    gens = [tuple(e) for e in elements]
    cur = [tuple_identity(ambient)] + gens
    while True:
        cols = Matrix.from_columns([_flatten(e) for e in cur], size)
        cur = [cur[i] for i in pivot_columns(cols)]
        grown = cur + [tuple_mul(x, g) for x in cur for g in gens]
        cols = Matrix.from_columns([_flatten(e) for e in grown], size)
        if rank(cols) == len(cur):
            return FDAlgebra.from_span(ambient, cur)
        cur = grown


def regular_module(a: FDAlgebra) -> AModule:
    return AModule(a.dim, tuple(a.left_regular(i) for i in range(a.dim)))


def direct_sum(m1: AModule, m2: AModule) -> AModule:
    return AModule(m1.dim + m2.dim, tuple(block_diag([x, y]) for x, y in zip(m1.action, m2.action)))


def conjugate(m: AModule, p: Matrix) -> AModule:
    pinv = inverse(p)
    return AModule(m.dim, tuple(p @ x @ pinv for x in m.action))


def intertwiners(src: Sequence[Matrix], dst: Sequence[Matrix], n_src: int, n_dst: int) -> list[Matrix]:
    """Basis of {X : X s = d X} for paired operator lists."""
    if n_src == 0 or n_dst == 0:
        return []
    eqs = []
    ident_src = Matrix.identity(n_src)
    ident_dst = Matrix.identity(n_dst)
    for s, d in zip(src, dst):
        # vec_row(X s) = (I (x) s^T) vec(X);  vec_row(d X) = (d (x) I) vec(X)
        eqs.append(kron(ident_dst, s.T) - kron(d, ident_src))
    if not eqs:
        sysm = Matrix(0, n_src * n_dst)
    else:
        data = []
        for e in eqs:
            data.extend(e.row_items(i) for i in range(e.rows))
        sysm = Matrix(len(data), n_src * n_dst, data)
    ker = kernel_basis(sysm)
    return [Matrix.unvec(ker.column(k), n_dst, n_src) for k in range(ker.cols)]


def hom_space(m1: AModule, m2: AModule) -> list[Matrix]:
    """Module maps m1 -> m2 (as dim2 x dim1 matrices)."""
    return intertwiners(m1.action, m2.action, m1.dim, m2.dim)


def is_module_map(f: Matrix, m1: AModule, m2: AModule) -> bool:
    return f.shape == (m2.dim, m1.dim) and all(f @ x == y @ f for x, y in zip(m1.action, m2.action))


def is_submodule(m: AModule, u: Matrix) -> bool:
    r = rank(u)
    return all(rank(hstack([u, x @ u])) == r for x in m.action)


def generated_submodule(acts: Sequence[Matrix], vectors: Matrix) -> Matrix:
    cur = column_space(vectors)
    while True:
        nxt = column_space(hstack([cur] + [x @ cur for x in acts]))
        if nxt.cols == cur.cols:
            return cur
        cur = nxt


def restrict_action(acts: Sequence[Matrix], u: Matrix) -> tuple[Matrix, ...]:
    return tuple(solve(u, x @ u) for x in acts)


def complement(u: Matrix) -> Matrix:
    """Standard basis vectors completing the columns of u to a basis."""
    n = u.rows
    full = hstack([u, Matrix.identity(n)])
    piv = pivot_columns(full)
    idx = [j - u.cols for j in piv if j >= u.cols]
    return Matrix.identity(n).take_cols(idx)


def quotient_action(acts: Sequence[Matrix], u: Matrix) -> tuple[Matrix, tuple[Matrix, ...]]:
    """(complement basis C, action on M/U in the coordinates of C)."""
    c = complement(u)
    w = hstack([u, c])
    winv = inverse(w)
    k = u.cols
    rows = list(range(k, w.cols))
    cols = list(range(k, w.cols))
    return c, tuple((winv @ x @ w).take_rows(rows).take_cols(cols) for x in acts)


def submodule(m: AModule, u: Matrix) -> AModule:
    return AModule(u.cols, restrict_action(m.action, u))


def quotient_module(m: AModule, u: Matrix) -> AModule:
    _, acts = quotient_action(m.action, u)
    return AModule(m.dim - u.cols, acts)


def image_algebra(m: AModule) -> FDAlgebra:
    """The algebra of operators through which the action factors."""
    if m.dim == 0:
        return FDAlgebra((0,), ((Matrix(0, 0),),), (Fraction(1),))
    return FDAlgebra.from_matrices(list(m.action), check=False)


# ----------------------------------------------------------------------
# radical


def radical(a: FDAlgebra) -> Matrix:
    """Coordinates (columns) of a basis of the Jacobson radical.

    Characteristic zero: the radical is the kernel of the trace form of any
    faithful representation, here the ambient one.
    """
    return kernel_basis(a.trace_form())


def radical_elements(a: FDAlgebra) -> list[tuple[Matrix, ...]]:
    j = radical(a)
    return [a.element(j.column(k)) for k in range(j.cols)]


def span_products(a: FDAlgebra, left: Sequence, right: Sequence) -> list:
    prods = [tuple_mul(x, y) for x in left for y in right]
    if not prods:
        return []
    size = sum(d * d for d in a.ambient)
    cols = Matrix.from_columns([_flatten(p) for p in prods], size)
    return [prods[i] for i in pivot_columns(cols)]


def nilpotency_index(a: FDAlgebra, elems: Sequence) -> int | None:
    """Smallest m with (span elems)^m = 0, or None if not nilpotent within dim a + 1."""
    if not elems:
        return 1
    cur, m = list(elems), 1
    while m <= a.dim + 1:
        cur = span_products(a, cur, elems)
        m += 1
        if not cur:
            return m
    return None


def is_two_sided_ideal(a: FDAlgebra, elems: Sequence) -> bool:
    if not elems:
        return True
    size = sum(d * d for d in a.ambient)
    base = Matrix.from_columns([_flatten(e) for e in elems], size)
    r = rank(base)
    extra = []
    for b in a.basis:
        for e in elems:
            extra.append(_flatten(tuple_mul(b, e)))
            extra.append(_flatten(tuple_mul(e, b)))
    return rank(hstack([base, Matrix.from_columns(extra, size)])) == r


# ----------------------------------------------------------------------
# composition length


@dataclass
class CompositionSeries:
    length: int
    series: list[Matrix]  # M_0 = 0 subset ... subset M_length = M, as column bases
    certified: bool = True
    unconfirmed_layers: list[int] = field(default_factory=list)

    @property
    def note(self) -> str:
        if self.certified:
            return ""
        qs = ", ".join(str(q) for q in self.unconfirmed_layers)
        return f"length is a lower bound; simplicity of layer {qs} unconfirmed"


def _is_scalar(x: Matrix) -> bool:
    n = x.rows
    if n == 0:
        return True
    c = x[0, 0]
    return x == Matrix.identity(n).scale(c)


def _span_dim(mats: Sequence[Matrix]) -> int:
    if not mats:
        return 0
    n = mats[0].rows
    return rank(Matrix.from_columns([m.vec() for m in mats], n * n))


def _find_submodule(acts: Sequence[Matrix], n: int, rng: random.Random, budget: int) -> tuple[Matrix | None, bool]:
    """A proper nonzero submodule of a semisimple module, or (None, certified)."""
    if n <= 1:
        return None, True
    if _span_dim(list(acts) + [Matrix.identity(n)]) == n * n:
        return None, True  # the action is all of End(M)
    u, certified = _norton(acts, n, rng, budget)
    if u is not None or certified:
        return u, certified
    ends = intertwiners(acts, acts, n, n)
    if len(ends) <= 1:
        return None, True
    commutative = all(x @ y == y @ x for i, x in enumerate(ends) for y in ends[i + 1:])

    def candidates():
        yield from ends
        for i, x in enumerate(ends):
            for y in ends[i:]:
                yield x @ y
        for _ in range(budget):
            acc = Matrix(n, n)
            for e in ends:
                c = rng.randint(-3, 3)
                if c:
                    acc = acc + e.scale(c)
            yield acc

    for x in candidates():
        if _is_scalar(x):
            continue
        mu = poly.minimal_polynomial(x)
        f, certain = poly.split_polynomial(mu)
        if f is not None:
            u = kernel_basis(poly.eval_matrix(f, x))
            if 0 < u.cols < n:
                return u, True
        elif commutative and certain and poly.degree(mu) == len(ends):
            return None, True  # End(M) = Q[x] is a field
    return None, False


def _norton(acts: Sequence[Matrix], n: int, rng: random.Random, budget: int) -> tuple[Matrix | None, bool]:
    """Spin kernel vectors of f(x) for irreducible factors f of acting elements.

    When dim ker f(x) = deg f, a full spin of one kernel vector together with a
    full spin of one vector of ker f(x)^T under the transposed action proves
    the module simple.
    """
    acts = [x for x in acts if not _is_scalar(x)]
    if not acts:
        return None, False
    trans = [x.T for x in acts]

    def pool():
        yield from acts
        for i, x in enumerate(acts):
            for y in acts[i + 1:]:
                yield x @ y
                yield x + y
        for _ in range(budget):
            acc = Matrix(n, n)
            for x in acts:
                c = rng.randint(-3, 3)
                if c:
                    acc = acc + x.scale(c)
            yield acc

    for x in pool():
        if _is_scalar(x):
            continue
        factors = poly.irreducible_factors(poly.minimal_polynomial(x))
        if not factors:
            continue
        for f in sorted(factors, key=poly.degree):
            fx = poly.eval_matrix(f, x)
            ker = kernel_basis(fx)
            for k in range(ker.cols):
                sub = generated_submodule(acts, ker.take_cols([k]))
                if sub.cols < n:
                    return sub, True
            if ker.cols == poly.degree(f):
                kt = kernel_basis(fx.T)
                dual = generated_submodule(trans, kt.take_cols([0]))
                if dual.cols < n:
                    # the annihilator of an invariant subspace of the dual is a submodule
                    return kernel_basis(dual.T), True
                return None, True
    return None, False


def _refine(acts: tuple[Matrix, ...], n: int, rng, budget) -> tuple[list[Matrix], list[bool]]:
    """Ascending chain with simple quotients for a semisimple module."""
    if n == 0:
        return [], []
    u, certified = _find_submodule(acts, n, rng, budget)
    if u is None:
        return [Matrix.identity(n)], [certified]
    sub = restrict_action(acts, u)
    chain_u, cert_u = _refine(sub, u.cols, rng, budget)
    c, qacts = quotient_action(acts, u)
    chain_q, cert_q = _refine(qacts, n - u.cols, rng, budget)
    chain = [u @ v for v in chain_u] + [hstack([u, c @ v]) for v in chain_q]
    return chain, cert_u + cert_q


def radical_filtration(m: AModule) -> list[Matrix]:
    """[M, JM, J^2 M, ..., 0] as column bases, J the radical of the acting algebra."""
    if m.dim == 0:
        return [Matrix(0, 0)]
    b = image_algebra(m)
    jel = [t[0] for t in radical_elements(b)]
    out = [Matrix.identity(m.dim)]
    cur = out[0]
    while cur.cols:
        if not jel:
            nxt = Matrix(m.dim, 0)
        else:
            nxt = column_space(hstack([x @ cur for x in jel]))
        out.append(nxt)
        cur = nxt
    return out


def composition_length(m: AModule, a: FDAlgebra | None = None, seed: int = 0, budget: int = 64) -> CompositionSeries:
    """Composition series through the radical filtration, layers split by idempotent search."""
    if a is not None and len(m.action) != a.dim:
        raise AlgebraError("module does not match the algebra")
    if m.dim == 0:
        return CompositionSeries(0, [Matrix(0, 0)])
    rng = random.Random(seed)
    filt = radical_filtration(m)
    series = [Matrix(m.dim, 0)]
    certs: list[bool] = []
    unconfirmed = []
    depth = len(filt) - 1
    for q in range(depth - 1, -1, -1):
        lower, upper = filt[q + 1], filt[q]
        # coordinates for the layer upper / lower
        c_rel = complement(solve(upper, lower)) if lower.cols else Matrix.identity(upper.cols)
        lift = upper @ c_rel
        basis = hstack([lower, lift])
        winv = left_inverse(basis)
        k = lower.cols
        layer_acts = []
        for x in m.action:
            y = winv @ x @ lift
            layer_acts.append(y.take_rows(list(range(k, basis.cols))))
        chain, cert = _refine(tuple(layer_acts), lift.cols, rng, budget)
        for v, ok in zip(chain, cert):
            series.append(hstack([lower, lift @ v]))
            if not ok:
                unconfirmed.append(q)
        certs.extend(cert)
    return CompositionSeries(len(series) - 1, series, all(certs), sorted(set(unconfirmed)))


# ----------------------------------------------------------------------
# module / comodule duality


@dataclass(frozen=True, eq=False)
class Comodule:
    """Right comodule over the dual coalgebra of a finite-dimensional algebra."""

    coalgebra_dim: int
    comult: Matrix  # (c*c) x c, f^k -> sum c_ij^k f^i (x) f^j
    counit: Matrix  # 1 x c
    dim: int
    coaction: Matrix  # (dim*c) x dim, v -> sum_k (b_k v) (x) f^k

    def check(self) -> None:
        c, n = self.coalgebra_dim, self.dim
        ic, im = Matrix.identity(c), Matrix.identity(n)
        d = self.comult
        if kron(d, ic) @ d != kron(ic, d) @ d:
            raise AlgebraError("comultiplication is not coassociative")
        if kron(self.counit, ic) @ d != ic or kron(ic, self.counit) @ d != ic:
            raise AlgebraError("counit axiom fails for the coalgebra")
        rho = self.coaction
        if kron(rho, ic) @ rho != kron(im, d) @ rho:
            raise AlgebraError("coaction is not coassociative")
        if kron(im, self.counit) @ rho != im:
            raise AlgebraError("counit axiom fails for the coaction")


def dual_coalgebra(a: FDAlgebra) -> tuple[Matrix, Matrix]:
    c = a.dim
    consts = a.structure_constants
    entries = {}
    for i in range(c):
        for j in range(c):
            for k, v in enumerate(consts[i][j]):
                if v:
                    entries[(i * c + j, k)] = v
    comult = Matrix.from_entries(c * c, c, entries)
    counit = Matrix.from_rows([list(a.unit)], c)
    return comult, counit


def dual_comodule(m: AModule, a: FDAlgebra) -> Comodule:
    c = a.dim
    comult, counit = dual_coalgebra(a)
    entries = {}
    for k, x in enumerate(m.action):
        for q, p, v in x.entries():
            entries[(q * c + k, p)] = v
    coaction = Matrix.from_entries(m.dim * c, m.dim, entries)
    como = Comodule(c, comult, counit, m.dim, coaction)
    como.check()
    return como


def dualize_back(co: Comodule) -> tuple[AModule, FDAlgebra]:
    """Module over the dual algebra C^v, realized by its left regular representation."""
    co.check()
    c = co.coalgebra_dim
    regs = []
    for i in range(c):
        entries = {}
        for j in range(c):
            for k in range(c):
                v = co.comult[i * c + j, k]
                if v:
                    entries[(k, j)] = v
        regs.append((Matrix.from_entries(c, c, entries),))
    alg = FDAlgebra((c,), tuple(regs), tuple(co.counit.row_items(0).get(k, Fraction(0)) for k in range(c)))
    alg.check()
    acts = []
    for k in range(c):
        entries = {}
        for q in range(co.dim):
            for p, v in co.coaction.row_items(q * c + k).items():
                entries[(q, p)] = v
        acts.append(Matrix.from_entries(co.dim, co.dim, entries))
    mod = AModule(co.dim, tuple(acts))
    mod.check(alg)
    return mod, alg


def round_trip_isomorphism(m: AModule, a: FDAlgebra, seed: int = 0, budget: int = 64) -> Matrix:
    """Dualize m to a comodule and back, and return a verified module isomorphism."""
    back, _ = dualize_back(dual_comodule(m, a))
    if m.dim != back.dim:
        raise AlgebraError("double dual has the wrong dimension")
    if m.dim == 0:
        return Matrix(0, 0)
    homs = hom_space(m, back)
    rng = random.Random(seed)

    def candidates():
        yield Matrix.identity(m.dim)
        yield from homs
        for _ in range(budget):
            acc = Matrix(m.dim, m.dim)
            for h in homs:
                c = rng.randint(-3, 3)
                if c:
                    acc = acc + h.scale(c)
            yield acc

    for f in candidates():
        if rank(f) == m.dim and is_module_map(f, m, back):
            return f
    raise AlgebraError("no isomorphism found between m and its double dual")
