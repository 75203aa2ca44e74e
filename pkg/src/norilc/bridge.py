"""Local cohomology diagrams run through the commutant engine.

The fiber functor is the total box: a straight module goes to the direct sum
of its pieces over all subsets, a map to the block-diagonal matrix of its
pieces.  Relative local cohomology spaces and their maps come from the
non-cover model, where the support pair (Y, Z) is the subquotient on
NC(z) - NC(y) shifted by one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import AModule, composition_length
from .errors import InputError, VerificationError
from .localcoh import lyubeznik_table
from .monomial import (
    SqfIdeal,
    StraightMap,
    StraightModule,
    _gen_key,
    _sign,
    cech_on_list,
    cousin_complex,
    cousin_on_set,
    localize_module,
    popcount,
)
from .nori import Diagram, Representation, end_algebra
from .ratlin import Matrix, VectComplex, block_diag, cohomology, hstack, induced_map, inverse, is_invertible


def fiber(m: StraightModule) -> int:
    return m.total_dim


def fiber_map(f: StraightMap) -> Matrix:
    return block_diag(list(f.mats))


def fiber_offsets(m: StraightModule) -> list[int]:
    out, pos = [], 0
    for c in m.comp:
        out.append(pos)
        pos += c
    return out


# ----------------------------------------------------------------------
# diagrams of support pairs


@dataclass(frozen=True)
class LcohVertex:
    y: SqfIdeal
    z: SqfIdeal | None  # None: the empty closed subset
    i: int

    def __post_init__(self):
        if self.z is not None and not self.z.contains_ideal(self.y):
            raise InputError(f"V{self.z} is not inside V{self.y}")

    @property
    def z_ideal(self) -> SqfIdeal:
        return SqfIdeal.unit(self.y.n) if self.z is None else self.z

    def label(self) -> str:
        return f"({self.y}, {'0' if self.z is None else self.z}, {self.i})"


@dataclass
class LcohDiagram:
    vertices: list[LcohVertex]
    edges: list[tuple[int, int, str]] = field(default_factory=list)  # (src, dst, "i" | "ii")

    def check(self) -> None:
        for a, b, kind in self.edges:
            u, v = self.vertices[a], self.vertices[b]
            if kind == "i":
                # covariant in the supports: V(y_u) inside V(y_v), V(z_u) inside V(z_v)
                if u.i != v.i:
                    raise InputError(f"type-i edge {a}->{b} changes the degree")
                if not (u.y.contains_ideal(v.y) and u.z_ideal.contains_ideal(v.z_ideal)):
                    raise InputError(f"type-i edge {a}->{b} needs V(Y1) in V(Y2) and V(Z1) in V(Z2)")
            elif kind == "ii":
                if v.i != u.i + 1 or u.z is None or v.y != u.z:
                    raise InputError(f"type-ii edge {a}->{b} must go (Y, Z, i) -> (Z, W, i+1)")
                if not v.z_ideal.contains_ideal(v.y):
                    raise InputError(f"type-ii edge {a}->{b} needs W inside Z")
            else:
                raise InputError(f"unknown edge kind {kind!r}")


def _layer_set(v: LcohVertex) -> set[int]:
    return set(v.z_ideal.non_covers - v.y.non_covers)


@dataclass
class RealizedVertex:
    module: StraightModule
    coh: list  # per subset Cohomology of the layer model in degree i+1
    labels: list  # per subset labels of the degree i+1 term


def realize_vertex(v: LcohVertex) -> RealizedVertex:
    """H^i_{Y/Z} from the non-cover model, with bases per subset."""
    n = v.y.n
    c = cousin_on_set(n, _layer_set(v))
    hs = c.cohomology_data(v.i + 1)
    mod = c._module_from(hs, v.i + 1)
    k = v.i + 1 - c.offset
    labels = [c.labels[s][k] if 0 <= k < len(c.labels[s]) else () for s in range(1 << n)]
    return RealizedVertex(mod, hs, labels)


def _label_map(src: RealizedVertex, dst: RealizedVertex, image, n: int) -> StraightMap:
    mats = []
    for s in range(1 << n):
        hs, ht = src.coh[s], dst.coh[s]
        where = {lab: r for r, lab in enumerate(dst.labels[s])}
        ent = {}
        for c, lab in enumerate(src.labels[s]):
            for lab2, x in image(lab):
                r = where.get(lab2)
                if r is not None:
                    ent[(r, c)] = ent.get((r, c), 0) + x
        chain = Matrix.from_entries(len(dst.labels[s]), len(src.labels[s]), ent)
        mats.append(induced_map(chain, hs, ht))
    f = StraightMap(src.module, dst.module, tuple(mats))
    try:
        f.check()
    except ValueError as exc:
        raise VerificationError(f"realized edge is not a map of straight modules: {exc}") from None
    return f


def edge_map(d: LcohDiagram, real: Sequence[RealizedVertex], a: int, b: int, kind: str) -> StraightMap:
    n = d.vertices[a].y.n
    if kind == "i":
        keep = _layer_set(d.vertices[b])
        return _label_map(real[a], real[b], lambda k: [(k, 1)] if k in keep else [], n)

    def connecting(k):
        out = []
        for v in range(n):
            if not k >> v & 1:
                out.append((k | 1 << v, _sign(popcount(k & ((1 << v) - 1)))))
        return out

    return _label_map(real[a], real[b], connecting, n)


def realize_diagram(d: LcohDiagram) -> tuple[Representation, list[RealizedVertex], dict]:
    d.check()
    real = [realize_vertex(v) for v in d.vertices]
    ids = [f"v{k:03d}" for k in range(len(d.vertices))]
    vdim = {ids[k]: fiber(r.module) for k, r in enumerate(real)}
    edges, emat, maps = [], {}, {}
    for e, (a, b, kind) in enumerate(d.edges):
        f = edge_map(d, real, a, b, kind)
        eid = f"e{e:03d}"
        edges.append((eid, ids[a], ids[b]))
        emat[eid] = fiber_map(f)
        maps[eid] = f
    return Representation(Diagram(tuple(ids), tuple(edges)), vdim, emat), real, maps


def mv_diagram(i: SqfIdeal, j: SqfIdeal, deg: int) -> LcohDiagram:
    """The pair (Z_{I cap J}, Z_{I+J}) with its two excision pieces.

    Vertices: 0 = (Z_{I cap J}, 0, deg), 1 = (Z_{I cap J}, Z_{I+J}, deg),
    2 = (Z_I, Z_{I+J}, deg), 3 = (Z_J, Z_{I+J}, deg), 4 = (Z_{I+J}, 0, deg+1).
    The path 0 -> 1 -> 4 through a type-ii edge would vanish (two steps of one
    long exact sequence), so the connecting map goes 0 -> 1, back across the
    excision splitting 2 + 3 -> 1, then 2 -> 4.
    """
    inter, tot = i.intersect(j), i + j
    vs = [LcohVertex(inter, None, deg), LcohVertex(inter, tot, deg), LcohVertex(i, tot, deg),
          LcohVertex(j, tot, deg), LcohVertex(tot, None, deg + 1)]
    return LcohDiagram(vs, [(0, 1, "i"), (2, 1, "i"), (3, 1, "i"), (2, 4, "ii")])


def mv_connecting(i: SqfIdeal, j: SqfIdeal, deg: int) -> StraightMap:
    """H^deg_{I cap J} -> H^{deg+1}_{I+J} assembled from the realized edges of mv_diagram."""
    d = mv_diagram(i, j, deg)
    _, real, maps = realize_diagram(d)
    f, ei, ej, g = (maps[f"e{k:03d}"] for k in range(4))
    mats = []
    for s in range(1 << i.n):
        split = hstack([ei.mats[s], ej.mats[s]], real[1].module.comp[s])
        if not is_invertible(split):
            raise VerificationError(f"excision fails at subset {s}")
        proj = hstack([Matrix.identity(ei.mats[s].cols), Matrix(ei.mats[s].cols, ej.mats[s].cols)], ei.mats[s].cols)
        mats.append(g.mats[s] @ proj @ inverse(split) @ f.mats[s])
    out = StraightMap(real[0].module, real[4].module, tuple(mats))
    out.check()
    return out


# ----------------------------------------------------------------------
# the localization diagram and motivic lengths


@dataclass
class LocalizationDiagram:
    module: StraightModule
    subsets: list[int]  # J, ordered by size then lexicographically
    spaces: list[StraightModule]  # localizations at x_J
    rep: Representation
    ids: list[str]


def localization_diagram(m: StraightModule) -> LocalizationDiagram:
    """Vertices J in [n] with T_J = fiber(m localized at x_J); edges J -> J + {j}."""
    n = m.n
    js = sorted(range(1 << n), key=_gen_key)
    spaces = [localize_module(m, j) for j in js]
    ids = [f"J{''.join('1' if j >> k & 1 else '0' for k in range(n))}" for j in js]
    pos = {j: p for p, j in enumerate(js)}
    edges, emat = [], {}
    for p, j in enumerate(js):
        for v in range(n):
            if j >> v & 1:
                continue
            q = pos[j | 1 << v]
            eid = f"{ids[p]}>{v + 1}"
            edges.append((eid, ids[p], ids[q]))
            emat[eid] = fiber_map(localization_map(m, j, v, spaces[p], spaces[q]))
    rep = Representation(Diagram(tuple(ids), tuple(edges)), {ids[p]: fiber(s) for p, s in enumerate(spaces)}, emat)
    return LocalizationDiagram(m, js, spaces, rep, ids)


def localization_map(m: StraightModule, j: int, v: int, src: StraightModule, dst: StraightModule) -> StraightMap:
    """m_{x_J} -> m_{x_J x_v} in box coordinates."""
    mats = []
    for s in range(1 << m.n):
        base = s & ~j
        if base >> v & 1:
            mats.append(m.up_map(base, v))
        else:
            mats.append(Matrix.identity(m.comp[base]))
    f = StraightMap(src, dst, tuple(mats))
    f.check()
    return f


@dataclass
class MotiveEntry:
    r: int
    i: int
    lam: int
    motivic_length: int
    certified: bool
    note: str = ""
    algebra_dim: int = 0

    def to_json(self) -> dict:
        out = {"r": self.r, "i": self.i, "lambda": self.lam, "motivic_length": self.motivic_length,
               "certified": self.certified}
        if self.note:
            out["note"] = self.note
        return out


def lifted_cohomology(ld: LocalizationDiagram, r: int) -> tuple[AModule, object, int]:
    """H^r of the Cech complex of T_J's as a module over End(T) of the diagram."""
    n = ld.module.n
    alg = end_algebra(ld.rep, ld.rep.full())
    verts = ld.rep.diagram.vertices  # lexicographic, as End(T) orders its components
    index = {v: p for p, v in enumerate(verts)}
    terms = [[p for p, j in enumerate(ld.subsets) if popcount(j) == k] for k in range(n + 1)]
    dims = []
    offs = []
    for term in terms:
        o, pos = {}, 0
        for p in term:
            o[p] = pos
            pos += fiber(ld.spaces[p])
        offs.append(o)
        dims.append(pos)
    diffs = []
    pos_of = {j: p for p, j in enumerate(ld.subsets)}
    for k in range(n):
        ent = {}
        for p in terms[k]:
            j = ld.subsets[p]
            for v in range(n):
                if j >> v & 1:
                    continue
                q = pos_of[j | 1 << v]
                blk = ld.rep.emat[f"{ld.ids[p]}>{v + 1}"]
                sign = _sign(popcount(j & ((1 << v) - 1)))
                for a, b, x in blk.entries():
                    ent[(offs[k + 1][q] + a, offs[k][p] + b)] = sign * x
        diffs.append(Matrix.from_entries(dims[k + 1], dims[k], ent))
    cx = VectComplex(0, tuple(dims), tuple(diffs))
    cx.check()

    def act(k, phi):
        return block_diag([phi[index[ld.ids[p]]] for p in terms[k]]) if terms[k] else Matrix(0, 0)

    for phi in alg.basis:
        for k in range(n):
            if diffs[k] @ act(k, phi) != act(k + 1, phi) @ diffs[k]:
                raise VerificationError(f"lifted Cech differential {k} is not End(T)-equivariant")
    h = cohomology(cx, r)
    acts = tuple(h.projection @ act(r, phi) @ h.section if h.dim else Matrix(0, 0) for phi in alg.basis)
    mod = AModule(h.dim, acts)
    if h.dim:
        unit = mod.act(alg.unit)
        if unit != Matrix.identity(h.dim):
            raise VerificationError("the unit of End(T) does not act as the identity on cohomology")
    return mod, alg, h.dim


def motivic_lyubeznik(i: SqfIdeal, r: int, idx: int, seed: int = 0, table=None, model: str = "cech") -> MotiveEntry:
    if i.is_unit:
        raise InputError("need a proper ideal")
    n, d = i.n, i.dim
    if not (0 <= r <= d and 0 <= idx <= d):
        raise InputError(f"(r, i) must lie in [0, {d}]^2")
    table = table or lyubeznik_table(i, model)
    lam = table.entries[r][idx]
    h = h_module(i, n - idx, model)
    ld = localization_diagram(h)
    mod, alg, dim = lifted_cohomology(ld, r)
    if dim != lam:
        raise VerificationError(f"lifted cohomology has dimension {dim}, table says {lam}")
    cs = composition_length(mod, seed=seed)
    if cs.length > lam:
        raise VerificationError(f"motivic length {cs.length} exceeds lambda = {lam}")
    return MotiveEntry(r, idx, lam, cs.length, cs.certified, cs.note, alg.dim)


def h_module(i: SqfIdeal, deg: int, model: str = "cech") -> StraightModule:
    c = cech_on_list(i.n, list(i.gens)) if model == "cech" else cousin_complex(i)
    return c.cohomology_module(deg)


def motive_sweep(i: SqfIdeal, seed: int = 0, model: str = "cech") -> list[MotiveEntry]:
    table = lyubeznik_table(i, model)
    d = i.dim
    return [motivic_lyubeznik(i, r, idx, seed, table, model) for idx in range(d + 1) for r in range(d + 1)]


def localization_vertex(i: SqfIdeal, j: int, ell: int) -> LcohVertex:
    """(Y, Y - U_J, ell): the closed subset Y cut by x_J = 0."""
    n = i.n
    z = i + SqfIdeal(n, (j,)) if j else None
    return LcohVertex(i, z, ell)
