"""Finite diagrams, their representations and the commutant algebra End(T).

A module over End(T|F) for a finite full subdiagram F is an object of the
diagram category at stage F; restriction of scalars along F1 inside F2 moves
objects up the directed system.  Edge matrices map T(src) to T(dst).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (
    AlgebraHom,
    AModule,
    FDAlgebra,
    direct_sum,
    generated_submodule,
    hom_space,
    is_module_map,
    regular_module,
)
from .errors import InputError
from .ratlin import Matrix, block_diag, fmt_rat, hstack, kernel_basis, parse_rat, rank


@dataclass(frozen=True)
class Diagram:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (id, src, dst)

    def __post_init__(self):
        vs = tuple(sorted(set(self.vertices)))
        if len(vs) != len(self.vertices):
            raise InputError("duplicate vertex id")
        object.__setattr__(self, "vertices", vs)
        ids = set()
        for eid, src, dst in self.edges:
            if eid in ids:
                raise InputError(f"duplicate edge id {eid!r}")
            ids.add(eid)
            for v in (src, dst):
                if v not in vs:
                    raise InputError(f"edge {eid!r} refers to unknown vertex {v!r}")
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))


@dataclass(frozen=True, eq=False)
class Representation:
    diagram: Diagram
    vdim: dict
    emat: dict

    def __post_init__(self):
        for v in self.diagram.vertices:
            d = self.vdim.get(v)
            if not isinstance(d, int) or d < 0:
                raise InputError(f"vertex {v!r} needs a nonnegative dimension")
        for eid, src, dst in self.diagram.edges:
            m = self.emat.get(eid)
            if m is None:
                raise InputError(f"edge {eid!r} has no matrix")
            if m.shape != (self.vdim[dst], self.vdim[src]):
                raise InputError(
                    f"edge {eid!r} matrix is {m.rows}x{m.cols}, expected {self.vdim[dst]}x{self.vdim[src]}"
                )

    @classmethod
    def from_json(cls, obj) -> "Representation":
        if not isinstance(obj, dict) or not isinstance(obj.get("vertices"), list):
            raise InputError('diagram must be an object with a "vertices" list')
        vdim = {}
        for v in obj["vertices"]:
            if not isinstance(v, dict) or not isinstance(v.get("id"), str):
                raise InputError('each vertex is {"id": str, "dim": int}')
            d = v.get("dim")
            if not isinstance(d, int) or isinstance(d, bool) or d < 0:
                raise InputError(f"vertex {v['id']!r} needs a nonnegative integer dim")
            if v["id"] in vdim:
                raise InputError(f"duplicate vertex id {v['id']!r}")
            vdim[v["id"]] = d
        edges, emat = [], {}
        for e in obj.get("edges", []):
            if not isinstance(e, dict) or not all(isinstance(e.get(k), str) for k in ("id", "src", "dst")):
                raise InputError('each edge is {"id", "src", "dst", "matrix"}')
            for k in ("src", "dst"):
                if e[k] not in vdim:
                    raise InputError(f"edge {e['id']!r} refers to unknown vertex {e[k]!r}")
            rows = e.get("matrix")
            if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
                raise InputError(f"edge {e['id']!r} matrix must be a list of rows")
            try:
                vals = [[parse_rat(x) for x in r] for r in rows]
                m = Matrix.from_rows(vals, vdim[e["src"]] if not vals else None)
            except ValueError as exc:
                raise InputError(f"edge {e['id']!r}: {exc}") from None
            edges.append((e["id"], e["src"], e["dst"]))
            emat[e["id"]] = m
        return cls(Diagram(tuple(vdim), tuple(edges)), vdim, emat)

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "dim": self.vdim[v]} for v in self.diagram.vertices],
            "edges": [
                {"id": e, "src": s, "dst": t, "matrix": [[fmt_rat(x) for x in row] for row in self.emat[e].to_lists()]}
                for e, s, t in self.diagram.edges
            ],
        }

    def full(self) -> "FullSubdiagram":
        return FullSubdiagram(self.diagram, frozenset(self.diagram.vertices))


@dataclass(frozen=True)
class FullSubdiagram:
    diagram: Diagram
    vertex_set: frozenset

    def __post_init__(self):
        if not self.vertex_set:
            raise InputError("a full subdiagram needs at least one vertex")
        bad = set(self.vertex_set) - set(self.diagram.vertices)
        if bad:
            raise InputError(f"unknown vertices {sorted(bad)}")

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(v for v in self.diagram.vertices if v in self.vertex_set)

    @property
    def edges(self) -> tuple[tuple[str, str, str], ...]:
        """Every edge with both ends inside (fullness)."""
        return tuple(e for e in self.diagram.edges if e[1] in self.vertex_set and e[2] in self.vertex_set)

    def __le__(self, other: "FullSubdiagram") -> bool:
        return self.vertex_set <= other.vertex_set


def subdiagram(r: Representation, verts: Iterable[str]) -> FullSubdiagram:
    return FullSubdiagram(r.diagram, frozenset(verts))


# ----------------------------------------------------------------------
# End(T|F)


def commutator_system(r: Representation, f: FullSubdiagram) -> tuple[Matrix, dict]:
    """Stacked equations phi_w T(e) - T(e) phi_v = 0 on the row-major entries of all phi_v."""
    offs, pos = {}, 0
    for v in f.vertices:
        offs[v] = pos
        pos += r.vdim[v] ** 2
    rows = []
    for eid, v, w in f.edges:
        t = r.emat[eid]
        dv, dw = r.vdim[v], r.vdim[w]
        tr = [t.row_items(i) for i in range(t.rows)]
        tc = [dict() for _ in range(t.cols)]
        for i, j, x in t.entries():
            tc[j][i] = x
        for a in range(dw):
            for b in range(dv):
                row: dict = {}
                # (phi_w T)_{ab} = sum_c phi_w[a, c] T[c, b]
                for c, x in tc[b].items():
                    k = offs[w] + a * dw + c
                    row[k] = row.get(k, 0) + x
                # (T phi_v)_{ab} = sum_c T[a, c] phi_v[c, b]
                for c, x in tr[a].items():
                    k = offs[v] + c * dv + b
                    row[k] = row.get(k, 0) - x
                row = {k: Fraction(x) for k, x in row.items() if x}
                if row:
                    rows.append(row)
    return Matrix(len(rows), pos, rows), offs


def end_algebra(r: Representation, f: FullSubdiagram | None = None) -> FDAlgebra:
    """Tuples (phi_v) over the vertices of f commuting with every edge of f."""
    f = f or r.full()
    sysm, offs = commutator_system(r, f)
    ker = kernel_basis(sysm)
    ambient = tuple(r.vdim[v] for v in f.vertices)
    basis = []
    for k in range(ker.cols):
        col = ker.column(k)
        basis.append(
            tuple(Matrix.unvec(col[offs[v] : offs[v] + r.vdim[v] ** 2], r.vdim[v], r.vdim[v]) for v in f.vertices)
        )
    alg = FDAlgebra(ambient, tuple(basis), ())
    unit = alg.coords(tuple(Matrix.identity(d) for d in ambient))
    return FDAlgebra(ambient, tuple(basis), tuple(unit))


def restriction_hom(r: Representation, f1: FullSubdiagram, f2: FullSubdiagram,
                    a1: FDAlgebra | None = None, a2: FDAlgebra | None = None) -> AlgebraHom:
    """End(T|f2) -> End(T|f1): keep the components at vertices of f1."""
    if not f1 <= f2:
        raise InputError("restriction needs f1 inside f2")
    a1 = a1 or end_algebra(r, f1)
    a2 = a2 or end_algebra(r, f2)
    pos = [f2.vertices.index(v) for v in f1.vertices]
    cols = [a1.coords(tuple(b[p] for p in pos)) for b in a2.basis]
    return AlgebraHom(a2, a1, Matrix.from_columns(cols, a1.dim))


def vertex_module(r: Representation, f: FullSubdiagram, v: str, a: FDAlgebra | None = None) -> AModule:
    if v not in f.vertex_set:
        raise InputError(f"vertex {v!r} is not in the subdiagram")
    a = a or end_algebra(r, f)
    p = f.vertices.index(v)
    return AModule(r.vdim[v], tuple(b[p] for b in a.basis))


# ----------------------------------------------------------------------
# Hom in the diagram category


@dataclass
class HomResult:
    dim: int
    basis: list[Matrix]
    stabilized: bool


def _action_span_rank(mats: Sequence[Matrix], n: int) -> int:
    if not mats or n == 0:
        return 0
    return rank(Matrix.from_columns([m.vec() for m in mats], n * n))


def hom_diagram_cat(r: Representation, x: AModule, f1: FullSubdiagram, y: AModule, f2: FullSubdiagram,
                    f3: FullSubdiagram) -> HomResult:
    """Hom(X, Y) after restricting both along End(T|f3) -> End(T|f_i)."""
    if not (f1 <= f3 and f2 <= f3):
        raise InputError("f3 must contain f1 and f2")
    a1, a2, a3 = end_algebra(r, f1), end_algebra(r, f2), end_algebra(r, f3)
    if len(x.action) != a1.dim or len(y.action) != a2.dim:
        raise InputError("module does not match the algebra of its subdiagram")
    x3 = restriction_hom(r, f1, f3, a1, a3).pullback(x)
    y3 = restriction_hom(r, f2, f3, a2, a3).pullback(y)
    basis = hom_space(x3, y3)
    full = r.full()
    if f3.vertex_set == full.vertex_set:
        stable = True
    else:
        a4 = end_algebra(r, full)
        x4 = restriction_hom(r, f1, full, a1, a4).pullback(x)
        y4 = restriction_hom(r, f2, full, a2, a4).pullback(y)
        s3 = direct_sum(x3, y3)
        s4 = direct_sum(x4, y4)
        # the image of End(T) only shrinks along enlargement, so equal rank means equal span
        stable = _action_span_rank(s3.action, s3.dim) == _action_span_rank(s4.action, s4.dim)
    return HomResult(len(basis), basis, stable)


# ----------------------------------------------------------------------
# subquotient witnesses


@dataclass
class SubquotientWitness:
    multiplicities: dict  # vertex -> number of copies of Tv
    generators: list[int]  # indices of module basis vectors generating m
    injection: Matrix  # A^g -> sum of Tv^{c_v}
    surjection: Matrix  # A^g -> m
    ambient: AModule  # the sum of vertex modules
    free: AModule  # A^g


def subquotient_witness(m: AModule, r: Representation, f: FullSubdiagram) -> SubquotientWitness:
    """m as a quotient of A^g, with A^g embedded in a sum of vertex modules."""
    a = end_algebra(r, f)
    if len(m.action) != a.dim:
        raise InputError("module does not match the algebra of its subdiagram")
    for v in f.vertices:
        tv = vertex_module(r, f, v, a)
        if tv.dim == m.dim and tv.action == m.action:
            ident = Matrix.identity(m.dim)
            return SubquotientWitness({v: 1}, list(range(m.dim)), ident, ident, tv, tv)
    gens: list[int] = []
    span = Matrix(m.dim, 0)
    for i in range(m.dim):
        if span.cols == m.dim:
            break
        e = Matrix.identity(m.dim).take_cols([i])
        if rank(hstack([span, e])) > span.cols:
            gens.append(i)
            span = generated_submodule(m.action, hstack([span, e]))
    g = len(gens)
    reg = regular_module(a)
    free = AModule(a.dim * g, tuple(block_diag([x] * g) for x in reg.action)) if g else AModule(0, tuple(Matrix(0, 0) for _ in a.basis))
    # surjection: (c_1, ..., c_g) -> sum_k act(c_k) e_{gens[k]}
    cols = []
    for k in gens:
        e = Matrix.identity(m.dim).take_cols([k])
        for x in m.action:
            cols.append((x @ e).column(0))
    surj = Matrix.from_columns(cols, m.dim)
    # embedding of A: a -> (a_v e_1, ..., a_v e_dv) for each vertex v
    verts = f.vertices
    pieces = []
    for p, v in enumerate(verts):
        for c in range(r.vdim[v]):
            pieces.append((p, v, c))
    emb_cols = []
    for b in a.basis:
        col = []
        for p, v, c in pieces:
            col.extend(b[p].column(c))
        emb_cols.append(col)
    total = sum(r.vdim[v] for _, v, _ in pieces)
    emb = Matrix.from_columns(emb_cols, total)
    inj = block_diag([emb] * g) if g else Matrix(0, 0)
    amb_single = [block_diag([b[p] for p, v, c in pieces]) for b in a.basis]
    ambient = AModule(total * g, tuple(block_diag([x] * g) for x in amb_single)) if g else free
    mult = {v: r.vdim[v] * g for v in verts if r.vdim[v] and g}
    w = SubquotientWitness(mult, gens, inj, surj, ambient, free)
    if g:
        if not is_module_map(surj, free, m) or rank(surj) != m.dim:
            raise AssertionError("surjection from the free module failed to verify")
        if not is_module_map(inj, free, ambient) or rank(inj) != free.dim:
            raise AssertionError("embedding into vertex modules failed to verify")
    return w
