import json
import random
from fractions import Fraction

import pytest
import sympy

from _support import rand_representation
from norilc.algebra import composition_length, is_module_map, quotient_module, regular_module
from norilc.errors import InputError
from norilc.nori import (
    Representation,
    end_algebra,
    hom_diagram_cat,
    restriction_hom,
    subdiagram,
    subquotient_witness,
    vertex_module,
)
from norilc.ratlin import Matrix, rank, same_span


def rep(vertices, edges):
    return Representation.from_json({
        "vertices": [{"id": v, "dim": d} for v, d in vertices],
        "edges": [{"id": e, "src": s, "dst": t, "matrix": m} for e, s, t, m in edges],
    })


ONE = rep([("v", 2)], [])
IDENT = rep([("v", 1), ("w", 1)], [("e", "v", "w", [["1"]])])
JORDAN = rep([("v", 2)], [("n", "v", "v", [["0", "1"], ["0", "0"]])])
NOEDGE = rep([("v", 2), ("w", 1)], [])
# u --N--> v and v --id--> u: together they force the Jordan commutant on both vertices
GROW = rep([("u", 2), ("v", 2)], [("n", "u", "v", [["0", "1"], ["0", "0"]]), ("i", "v", "u", [["1", "0"], ["0", "1"]])])


def dense_commutant(r: Representation, verts):
    """Independent oracle: solve the commuting conditions with sympy symbols."""
    syms, unknowns = {}, []
    for v in verts:
        d = r.vdim[v]
        m = sympy.Matrix(d, d, lambda i, j: sympy.Symbol(f"{v}_{i}_{j}"))
        syms[v] = m
        unknowns.extend(list(m))
    eqs = []
    for eid, s, t in r.diagram.edges:
        if s in verts and t in verts:
            te = r.emat[eid]
            tm = sympy.Matrix(te.rows, te.cols, lambda i, j: sympy.Rational(te[i, j].numerator, te[i, j].denominator))
            eqs.extend(list(syms[t] * tm - tm * syms[s]))
    eqs = [e for e in eqs if e != 0]
    if not unknowns:
        return 0, []
    if not eqs:
        return len(unknowns), None
    a, _ = sympy.linear_eq_to_matrix(eqs, unknowns)
    null = a.nullspace()
    return len(null), null


def flatten(t):
    out = []
    for m in t:
        out.extend(m.vec())
    return out


def test_end_examples():
    assert end_algebra(ONE).dim == 4
    assert end_algebra(IDENT).dim == 1
    a = end_algebra(JORDAN)
    assert a.dim == 2
    assert same_span(Matrix.from_columns([b[0].vec() for b in a.basis], 4),
                     Matrix.from_columns([[1, 0, 0, 1], [0, 1, 0, 0]], 4))


def test_fullness_of_subdiagrams():
    f = subdiagram(GROW, ["u"])
    assert f.edges == ()
    assert {e[0] for e in GROW.full().edges} == {"i", "n"}
    with pytest.raises(InputError):
        subdiagram(GROW, ["x"])
    with pytest.raises(InputError):
        subdiagram(GROW, [])


def test_restriction_examples():
    f = IDENT.full()
    h = restriction_hom(IDENT, f, f)
    assert h.matrix == Matrix.identity(1)
    h = restriction_hom(IDENT, subdiagram(IDENT, ["v"]), f)
    h.check()
    assert rank(h.matrix) == 1
    p = restriction_hom(NOEDGE, subdiagram(NOEDGE, ["v"]), NOEDGE.full())
    p.check()
    assert rank(p.matrix) == 4  # surjective onto End(Tv)
    with pytest.raises(InputError):
        restriction_hom(NOEDGE, NOEDGE.full(), subdiagram(NOEDGE, ["v"]))


def test_vertex_modules():
    a = end_algebra(ONE)
    assert composition_length(vertex_module(ONE, ONE.full(), "v", a), a).length == 1
    a = end_algebra(JORDAN)
    assert composition_length(vertex_module(JORDAN, JORDAN.full(), "v", a), a).length == 2
    z = rep([("v", 0), ("w", 1)], [])
    assert vertex_module(z, z.full(), "v").dim == 0
    with pytest.raises(InputError):
        vertex_module(JORDAN, JORDAN.full(), "w")


def test_hom_examples():
    f = ONE.full()
    tv = vertex_module(ONE, f, "v")
    h = hom_diagram_cat(ONE, tv, f, tv, f, f)
    assert h.dim == 1 and h.stabilized
    fv, fw = subdiagram(NOEDGE, ["v"]), subdiagram(NOEDGE, ["w"])
    x, y = vertex_module(NOEDGE, fv, "v"), vertex_module(NOEDGE, fw, "w")
    assert hom_diagram_cat(NOEDGE, x, fv, y, fw, NOEDGE.full()).dim == 0
    f1 = subdiagram(GROW, ["v"])
    x = vertex_module(GROW, f1, "v")
    small = hom_diagram_cat(GROW, x, f1, x, f1, f1)
    big = hom_diagram_cat(GROW, x, f1, x, f1, GROW.full())
    assert (small.dim, small.stabilized) == (1, False)
    assert (big.dim, big.stabilized) == (2, True)


def test_subquotient_examples():
    f = JORDAN.full()
    a = end_algebra(JORDAN)
    tv = vertex_module(JORDAN, f, "v", a)
    w = subquotient_witness(tv, JORDAN, f)
    assert w.multiplicities == {"v": 1}
    assert w.injection == Matrix.identity(2) and w.surjection == Matrix.identity(2)
    an = end_algebra(NOEDGE)
    reg = regular_module(an)
    w = subquotient_witness(reg, NOEDGE, NOEDGE.full())
    g = len(w.generators)
    assert w.multiplicities == {"v": 2 * g, "w": g}
    assert is_module_map(w.injection, w.free, w.ambient) and rank(w.injection) == an.dim * g
    assert is_module_map(w.surjection, w.free, reg) and rank(w.surjection) == reg.dim
    top = quotient_module(tv, Matrix.from_rows([[1], [0]]))
    w = subquotient_witness(top, JORDAN, f)
    assert w.surjection.shape == (1, a.dim) and rank(w.surjection) == 1
    assert is_module_map(w.surjection, w.free, top)


def test_from_json_errors():
    bad = {"vertices": [{"id": "v", "dim": 1}], "edges": [{"id": "e", "src": "v", "dst": "v", "matrix": [["1", "2"]]}]}
    with pytest.raises(InputError, match="1x2"):
        Representation.from_json(bad)
    with pytest.raises(InputError, match="unknown vertex"):
        Representation.from_json({"vertices": [{"id": "v", "dim": 1}],
                                  "edges": [{"id": "e", "src": "v", "dst": "x", "matrix": [["1"]]}]})
    with pytest.raises(InputError):
        Representation.from_json({"vertices": [{"id": "v", "dim": -1}]})


def test_json_round_trip():
    r = GROW
    again = Representation.from_json(json.loads(json.dumps(r.to_json())))
    assert again.to_json() == r.to_json()


def _random_chain(rng, r):
    verts = list(r.diagram.vertices)
    rng.shuffle(verts)
    k1 = rng.randint(1, len(verts))
    k2 = rng.randint(k1, len(verts))
    return subdiagram(r, verts[:k1]), subdiagram(r, verts[:k2]), r.full()


def check_random_diagram(r, rng):
    """Commutant vs dense oracle, restriction triangle, Hom monotonicity; returns None or a failure string."""
    f = r.full()
    a = end_algebra(r, f)
    a.check()
    dim, null = dense_commutant(r, list(f.vertices))
    if a.dim != dim:
        return f"dimension {a.dim} != oracle {dim}"
    for b in a.basis:
        for eid, s, t in f.edges:
            ps, pt = f.vertices.index(s), f.vertices.index(t)
            if b[pt] @ r.emat[eid] != r.emat[eid] @ b[ps]:
                return "basis element does not commute"
    if null is not None and a.dim:
        ours = Matrix.from_columns([flatten(b) for b in a.basis], len(null[0]))
        theirs = Matrix.from_columns([[sympy_to_frac(x) for x in v] for v in null], len(null[0]))
        if not same_span(ours, theirs):
            return "span differs from oracle"
    f1, f2, f3 = _random_chain(rng, r)
    a1, a2, a3 = end_algebra(r, f1), end_algebra(r, f2), a
    h12 = restriction_hom(r, f1, f2, a1, a2)
    h23 = restriction_hom(r, f2, f3, a2, a3)
    h13 = restriction_hom(r, f1, f3, a1, a3)
    for h in (h12, h23, h13):
        h.check()
    if h12.compose(h23).matrix != h13.matrix:
        return "restriction triangle does not commute"
    v = rng.choice(f1.vertices)
    x = vertex_module(r, f1, v, a1)
    w = rng.choice(f1.vertices)
    y = vertex_module(r, f1, w, a1)
    hs = [hom_diagram_cat(r, x, f1, y, f1, g) for g in (f1, f2, f3)]
    for lo, hi in zip(hs, hs[1:]):
        if lo.dim > hi.dim:
            return "Hom dimension decreased"
        if lo.basis and (not hi.basis or rank(Matrix.from_columns([m.vec() for m in hi.basis + lo.basis], x.dim * y.dim)) != hi.dim):
            return "Hom over the smaller diagram is not contained in the larger one"
    if not hs[-1].stabilized:
        return "full diagram must be stabilized"
    return None


def sympy_to_frac(x):
    return Fraction(int(x.p), int(x.q))


def test_random_diagrams_small():
    rng = random.Random(3)
    for _ in range(25):
        r = rand_representation(rng, max_vertices=4, max_dim=3)
        assert check_random_diagram(r, rng) is None
