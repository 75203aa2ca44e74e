"""Iterated and relative local cohomology of monomial ideals.

Everything is computed from explicit complexes of straight modules: the Cech
complex on generators, the all-variable Cech complex of a module, mapping
cones for supports with a closed subset removed, and the non-cover model
(see ``monomial.cousin_on_set``) when generator lists get long.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import InputError, VerificationError
from .monomial import (
    SqfIdeal,
    StraightChainMap,
    StraightComplex,
    StraightModule,
    _gen_key,
    _sign,
    cech_on_list,
    cech_projection,
    cone_maps,
    cousin_complex,
    cousin_on_set,
    cousin_projection,
    degree_ideal,
    label_chain_map,
    label_complex,
    local_cohomology_dims,
    mask_str,
    members,
    popcount,
    straight_cone,
)
from .parallel import pmap
from .ratlin import (
    ChainMap,
    Matrix,
    VectComplex,
    block_diag,
    exact_at,
    induced_map,
    rank,
)

EMPTY = None  # stands for the empty closed subset (the unit ideal)

CECH_LIMIT = 8  # longest generator list handled by the Cech model under "auto"


def _closed(z: SqfIdeal | None, n: int) -> SqfIdeal:
    return SqfIdeal.unit(n) if z is None else z


# ----------------------------------------------------------------------
# the all-variable Cech complex of a module


def m_cech_complex(m: StraightModule) -> StraightComplex:
    """Term k: sum over k-subsets J of [n] of m localized at x_J."""
    n = m.n
    nsub = 1 << n
    js = [sorted((j for j in range(nsub) if popcount(j) == k), key=_gen_key) for k in range(n + 1)]

    def layout(s):
        out = []
        for term in js:
            offs, pos = {}, 0
            for j in term:
                offs[j] = pos
                pos += m.comp[s & ~j]
            out.append((offs, pos))
        return out

    lay = [layout(s) for s in range(nsub)]

    def part(s):
        dims = tuple(size for _, size in lay[s])
        diffs = []
        for k in range(n):
            src_off, _ = lay[s][k]
            dst_off, _ = lay[s][k + 1]
            ent = {}
            for jset in js[k]:
                base = s & ~jset
                for v in range(n):
                    if jset >> v & 1:
                        continue
                    new = jset | 1 << v
                    sign = _sign(popcount(jset & ((1 << v) - 1)))
                    if base >> v & 1:
                        blk = m.up_map(base, v)
                    else:
                        blk = Matrix.identity(m.comp[base])
                    r0, c0 = dst_off[new], src_off[jset]
                    for i, c, x in blk.entries():
                        ent[(r0 + i, c0 + c)] = sign * x
            diffs.append(Matrix.from_entries(dims[k + 1], dims[k], ent))
        return VectComplex(0, dims, tuple(diffs))

    parts = tuple(pmap(part, range(nsub)))
    ups = {}
    for s in range(nsub):
        for v in members(s):
            t = s & ~(1 << v)
            maps = {}
            for k in range(n + 1):
                blocks = []
                for jset in js[k]:
                    if jset >> v & 1:
                        blocks.append(Matrix.identity(m.comp[s & ~jset]))
                    else:
                        blocks.append(m.up_map(s & ~jset, v))
                maps[k] = block_diag(blocks) if blocks else Matrix(0, 0)
            ups[(s, v)] = ChainMap(parts[s], parts[t], maps)
    return StraightComplex(n, parts, ups)


def m_local_cohomology(m: StraightModule, r: int) -> StraightModule:
    return m_cech_complex(m).cohomology_module(r)


# ----------------------------------------------------------------------
# Lyubeznik tables


@dataclass
class LyubeznikTable:
    d: int
    entries: list[list[int]]  # entries[r][i]

    def to_json(self) -> dict:
        return {"d": self.d, "lambda": self.entries}

    def to_tsv(self) -> str:
        width = max([len(str(x)) for row in self.entries for x in row] + [1])
        head = "r\\i\t" + "\t".join(str(i).rjust(width) for i in range(self.d + 1))
        lines = [head]
        for r, row in enumerate(self.entries):
            lines.append(f"{r}\t" + "\t".join(str(x).rjust(width) for x in row))
        return "\n".join(lines)


def lyubeznik_table(i: SqfIdeal, model: str = "cech") -> LyubeznikTable:
    """lambda[r][i] = dim at S = [n] of H^r_m(H^{n-i}_I(R)), with the E^lambda shape verified."""
    n, d = i.n, i.dim
    full = (1 << n) - 1
    complex_ = cech_on_list(n, list(i.gens)) if model == "cech" else cousin_complex(i)
    entries = [[0] * (d + 1) for _ in range(d + 1)]
    for idx in range(d + 1):
        mod = complex_.cohomology_module(n - idx)
        mc = m_cech_complex(mod)
        for r in range(n + 1):
            h = mc.cohomology_module(r)
            stray = [s for s in h.support() if s != full]
            if stray:
                raise VerificationError(
                    f"H^{r}_m(H^{n - idx}_I) is nonzero at {mask_str(stray[0], n)}, outside S = [n]"
                )
            if r > d and h.comp[full]:
                raise VerificationError(f"H^{r}_m(H^{n - idx}_I) is nonzero above r = dim Y")
            if r <= d:
                entries[r][idx] = h.comp[full]
    return LyubeznikTable(d, entries)


# ----------------------------------------------------------------------
# Mayer-Vietoris


def _sum_cech(n: int, first: list[int], second: list[int]) -> StraightComplex:
    """Cech(first) + Cech(second) as one labelled complex."""
    gens = (first, second)
    labels = []
    for k in range(max(len(first), len(second)) + 1):
        term = [(0, t) for t in combinations(range(len(first)), k)]
        term += [(1, t) for t in combinations(range(len(second)), k)]
        labels.append(term)
    unions = {}
    for term in labels:
        for side, t in term:
            u = 0
            for x in t:
                u |= gens[side][x]
            unions[(side, t)] = u

    def present(lab, s):
        return s & ~unions[lab] == 0

    def diff(lab):
        side, t = lab
        out = []
        for x in range(len(gens[side])):
            if x not in t:
                new = tuple(sorted(t + (x,)))
                out.append(((side, new), _sign(new.index(x))))
        return out

    return label_complex(n, 0, labels, present, diff)


@dataclass
class MVReport:
    n: int
    exact: bool
    matches_intersection: bool
    dims: dict  # slot name -> degree -> per-subset dims
    failures: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "exact": self.exact,
            "matches_intersection": self.matches_intersection,
            "dims": {
                name: {str(k): {mask_str(s, self.n): v for s, v in enumerate(row)} for k, row in per.items()}
                for name, per in self.dims.items()
            },
            "failures": self.failures,
        }


def _les_check(f: StraightChainMap, c: StraightComplex, degrees) -> tuple[bool, list[str], dict]:
    """Exactness of H(A) -> H(B) -> H(cone) -> H(A[1]) at every slot and subset."""
    a, b = f.source, f.target
    n = a.n
    failures = []
    hs = {}
    dims = {"A": {}, "B": {}, "C": {}}
    for k in list(degrees) + [max(degrees) + 1]:
        hs[("A", k)] = a.cohomology_data(k)
        hs[("B", k)] = b.cohomology_data(k)
        hs[("C", k)] = c.cohomology_data(k)
    for k in degrees:
        for key in "ABC":
            dims[key][k] = tuple(h.dim for h in hs[(key, k)])
        inc, proj = cone_maps(f, c, k)
        for s in range(1 << n):
            ha, hb, hc = hs[("A", k)][s], hs[("B", k)][s], hs[("C", k)][s]
            ha1, hb1 = hs[("A", k + 1)][s], hs[("B", k + 1)][s]
            alpha = induced_map(f.parts[s].at(k), ha, hb)
            beta = induced_map(inc[s], hb, hc)
            gamma = induced_map(proj[s], hc, ha1)
            alpha1 = induced_map(f.parts[s].at(k + 1), ha1, hb1)
            if not exact_at(alpha, beta, hb.dim):
                failures.append(f"not exact at H^{k}(B), subset {mask_str(s, n)}")
            if not exact_at(beta, gamma, hc.dim):
                failures.append(f"not exact at H^{k}(cone), subset {mask_str(s, n)}")
            if not exact_at(gamma, alpha1, ha1.dim):
                failures.append(f"not exact at H^{k + 1}(A), subset {mask_str(s, n)}")
    return not failures, failures, dims


def mayer_vietoris(i: SqfIdeal, j: SqfIdeal) -> MVReport:
    """Cone model of R Gamma over I cap J from the refinement maps, checked against Cech of the intersection."""
    for x in (i, j):
        if x.is_unit:
            raise InputError("Mayer-Vietoris needs proper ideals")
    if i.n != j.n:
        raise InputError("ideals live in different polynomial rings")
    n = i.n
    gi, gj = list(i.gens), list(j.gens)
    big = cech_on_list(n, gi + gj)
    pair = _sum_cech(n, gi, gj)
    a = len(gi)

    def image(t):
        out = []
        if all(x < a for x in t):
            out.append(((0, t), 1))
        if all(x >= a for x in t):
            out.append(((1, tuple(x - a for x in t)), 1))
        return out

    f = label_chain_map(big, pair, image)
    f.check()
    c = straight_cone(f)
    degrees = range(0, n + 1)
    exact, failures, d = _les_check(f, c, degrees)
    direct = local_cohomology_dims(i.intersect(j), "cech")
    zero = (0,) * (1 << n)
    match = all(d["C"].get(k, zero) == direct[k] for k in degrees)
    if not match:
        failures.append("cone cohomology differs from the Cech complex of the intersection")
    dims = {"sum": d["A"], "pair": d["B"], "intersection": d["C"], "intersection_direct": direct}
    return MVReport(n, exact, match, dims, failures)


# ----------------------------------------------------------------------
# relative local cohomology


@dataclass
class RelativeModel:
    f: StraightChainMap  # R Gamma_Z -> R Gamma_Y
    cone: StraightComplex
    model: str


def choose_model(y: SqfIdeal, z: SqfIdeal, model: str) -> str:
    if model != "auto":
        return model
    return "cech" if len(y.gens) + len(z.gens) <= CECH_LIMIT else "cousin"


def relative_model(y: SqfIdeal, z: SqfIdeal | None, model: str = "auto") -> RelativeModel:
    n = y.n
    z = _closed(z, n)
    if z.n != n:
        raise InputError("ideals live in different polynomial rings")
    if not z.contains_ideal(y):
        raise InputError(f"V{z} is not contained in V{y}: need {y} inside {z}")
    model = choose_model(y, z, model)
    if model == "cech":
        gy = list(y.gens)
        src = cech_on_list(n, gy + list(z.gens))
        dst = cech_on_list(n, gy)
        f = cech_projection(src, dst, list(range(len(gy))))
    elif model == "cousin":
        src, dst = cousin_complex(z), cousin_complex(y)
        f = cousin_projection(src, dst)
    else:
        raise ValueError(f"unknown model {model!r}")
    return RelativeModel(f, straight_cone(f), model)


def relative_lc(y: SqfIdeal, z: SqfIdeal | None, deg: int, model: str = "auto") -> StraightModule:
    """H^deg_{Y/Z}: cohomology of the cone of R Gamma_Z -> R Gamma_Y."""
    return relative_model(y, z, model).cone.cohomology_module(deg)


def relative_dims(y: SqfIdeal, z: SqfIdeal | None, model: str = "auto") -> dict[int, tuple[int, ...]]:
    c = relative_model(y, z, model).cone
    dims = c.cohomology_dims()
    zero = (0,) * (1 << y.n)
    return {k: dims.get(k, zero) for k in range(0, y.n + 1)}


def relative_les(y: SqfIdeal, z: SqfIdeal | None, model: str = "auto") -> tuple[bool, list[str]]:
    rm = relative_model(y, z, model)
    ok, failures, _ = _les_check(rm.f, rm.cone, range(0, y.n + 1))
    return ok, failures


# ----------------------------------------------------------------------
# the height-bump search


def ideals_between(i: SqfIdeal, j: SqfIdeal) -> list[SqfIdeal]:
    """All squarefree monomial ideals a with i inside a inside j."""
    n = i.n
    lower = i.squarefree_monomials()
    upper = j.squarefree_monomials()
    free = sorted(upper - lower, key=lambda s: (-popcount(s), s))
    out = []

    def rec(pos, chosen):
        if pos == len(free):
            out.append(chosen)
            return
        s = free[pos]
        rec(pos + 1, chosen)
        sups = [s | 1 << v for v in range(n) if not s >> v & 1]
        if all(t in chosen for t in sups):
            rec(pos + 1, chosen | {s})

    rec(0, frozenset(lower))
    ideals = [SqfIdeal(n, tuple(sorted(u))) for u in out]
    return sorted(ideals, key=lambda a: (len(a.squarefree_monomials()), [(_gen_key(g)) for g in a.gens]))


@dataclass
class Prop3Report:
    h: int
    candidate: SqfIdeal | None
    checked: list[dict]

    def to_json(self) -> dict:
        return {
            "height": self.h,
            "a": None if self.candidate is None else self.candidate.to_json(),
            "checked": self.checked,
        }


def five_term_check(i: SqfIdeal, a: SqfIdeal, h: int, model: str = "auto") -> tuple[bool, dict]:
    """0 -> H^h_a -> H^h_I -> H^h_{a/I} -> H^{h+1}_a -> H^{h+1}_I -> 0, per subset."""
    rm = relative_model(i, a, model)
    f, c = rm.f, rm.cone
    n = i.n
    ok = True
    rows = {}
    ha = f.source.cohomology_data(h)
    hi = f.target.cohomology_data(h)
    hr = c.cohomology_data(h)
    ha1 = f.source.cohomology_data(h + 1)
    hi1 = f.target.cohomology_data(h + 1)
    inc, proj = cone_maps(f, c, h)
    for s in range(1 << n):
        m1 = induced_map(f.parts[s].at(h), ha[s], hi[s])
        m2 = induced_map(inc[s], hi[s], hr[s])
        m3 = induced_map(proj[s], hr[s], ha1[s])
        m4 = induced_map(f.parts[s].at(h + 1), ha1[s], hi1[s])
        dims = [ha[s].dim, hi[s].dim, hr[s].dim, ha1[s].dim, hi1[s].dim]
        good = (
            rank(m1) == dims[0]
            and exact_at(m1, m2, dims[1])
            and exact_at(m2, m3, dims[2])
            and exact_at(m3, m4, dims[3])
            and rank(m4) == dims[4]
        )
        ok &= good
        if any(dims):
            rows[mask_str(s, n)] = dims
    return ok, rows


def prop3_run(i: SqfIdeal, j: SqfIdeal, model: str = "auto") -> Prop3Report:
    if i.is_unit or j.is_unit:
        raise InputError("need proper ideals")
    if not j.contains_ideal(i):
        raise InputError(f"{i} is not contained in {j}")
    h = i.height
    if j.height < h + 1:
        raise InputError(f"height of {j} is {j.height}, need at least {h + 1}")
    base = local_cohomology_dims(i, "cech" if len(i.gens) <= CECH_LIMIT else "cousin")
    checked = []
    for a in ideals_between(i, j):
        if a.height < h + 1:
            continue
        dims_a = local_cohomology_dims(a, "cech" if len(a.gens) <= CECH_LIMIT else "cousin")
        same = all(base[k] == dims_a[k] for k in range(i.n + 1) if k not in (h, h + 1))
        entry = {"a": a.to_json(), "same_outside": same}
        if same:
            exact, rows = five_term_check(i, a, h, model)
            entry["five_term_exact"] = exact
            entry["dims"] = rows
        checked.append(entry)
        if same and entry["five_term_exact"]:
            return Prop3Report(h, a, checked)
    return Prop3Report(h, None, checked)


# ----------------------------------------------------------------------
# stratifications


@dataclass(frozen=True)
class Stratification:
    """levels[k] is the ideal of Y_k; Y_{-1} is empty."""

    n: int
    levels: tuple[SqfIdeal, ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        self.check()

    def check(self) -> None:
        if not self.levels:
            raise InputError("a stratification needs at least one level")
        for k, lev in enumerate(self.levels):
            if lev.n != self.n:
                raise InputError("levels live in different polynomial rings")
            if lev.dim > k:
                raise InputError(f"level {k} has dimension {lev.dim} > {k}")
            if k and not self.levels[k - 1].contains_ideal(lev):
                raise InputError(f"level {k - 1} is not contained in level {k}")

    def ideal(self, k: int) -> SqfIdeal:
        """Ideal of Y_k, the unit ideal for k < 0."""
        return SqfIdeal.unit(self.n) if k < 0 else self.levels[k]

    @property
    def top(self) -> SqfIdeal:
        return self.levels[-1]


def skeleton_stratification(i: SqfIdeal) -> Stratification:
    """Y_k = Y cut with the union of the k-dimensional coordinate subspaces."""
    if i.is_unit:
        raise InputError("need a proper ideal")
    levels = tuple(i + degree_ideal(i.n, k + 1) for k in range(i.dim + 1))
    return Stratification(i.n, levels)


@dataclass
class CellularReport:
    cellular: bool
    levels: list[dict]

    def to_json(self) -> dict:
        return {"cellular": self.cellular, "levels": self.levels}


def cellular_check(s: Stratification, model: str = "auto") -> CellularReport:
    n = s.n
    rows = []
    ok_all = True
    for k, lev in enumerate(s.levels):
        prev = s.ideal(k - 1)
        if lev.dim == k:
            dims = relative_dims(lev, prev, model)
            nonzero = {deg: sum(v) for deg, v in dims.items() if any(v)}
            ok = all(deg == n - k for deg in nonzero)
            rows.append({"level": k, "dim": lev.dim, "relative": {str(a): b for a, b in nonzero.items()}, "ok": ok})
        else:
            ok = lev == prev
            rows.append({"level": k, "dim": lev.dim, "equal_to_previous": ok, "ok": ok})
        ok_all &= ok
    return CellularReport(ok_all, rows)


@dataclass
class StratComplexReport:
    complex: StraightComplex  # degrees n - m .. n
    matches: bool
    dims: dict  # k -> per-subset dims of H^k(S)
    direct: dict  # k -> per-subset dims of H^k_Y

    def to_json(self) -> dict:
        n = self.complex.n
        return {
            "matches": self.matches,
            "terms": {str(k): {mask_str(s, n): p.dim(k) for s, p in enumerate(self.complex.parts)} for k in self.complex.degrees()},
            "cohomology": {str(k): {mask_str(s, n): v for s, v in enumerate(row)} for k, row in self.dims.items()},
        }


def _layer_sets(s: Stratification) -> list[set[int]]:
    """X_k = NC(J_{k-1}) - NC(J_k); the model of R Gamma_{Y_k / Y_{k-1}} lives on X_k."""
    return [set(s.ideal(k - 1).non_covers - s.ideal(k).non_covers) for k in range(len(s.levels))]


def strat_complex(s: Stratification, direct_model: str = "auto") -> StratComplexReport:
    """The complex with terms H^{n-k}_{Y_k/Y_{k-1}} and connecting maps as differentials."""
    n = s.n
    if not cellular_check(s).cellular:
        raise InputError("stratification is not cellular")
    m = len(s.levels) - 1
    layers = [cousin_on_set(n, x) for x in _layer_sets(s)]
    # H^q_{Y_k/Y_{k-1}} = H^{q+1} of the layer model
    nsub = 1 << n
    lo = n - m

    def level_of(deg):
        return n - deg

    coh = {}
    for deg in range(lo, n + 1):
        k = level_of(deg)
        coh[deg] = layers[k].cohomology_data(deg + 1)

    def connecting(deg: int, sub: int) -> Matrix:
        """H^{deg}_{Y_k/Y_{k-1}} -> H^{deg+1}_{Y_{k-1}/Y_{k-2}} at one subset (snake map)."""
        k = level_of(deg)
        src_layer, dst_layer = layers[k], layers[k - 1]
        hs, ht = coh[deg][sub], coh[deg + 1][sub]
        if not hs.dim or not ht.dim:
            return Matrix(ht.dim, hs.dim)
        src_labels = src_layer.labels[sub][deg + 1 - src_layer.offset]
        dst_labels = dst_layer.labels[sub][deg + 2 - dst_layer.offset]
        where = {lab: r for r, lab in enumerate(dst_labels)}
        ent = {}
        for c, lab in enumerate(src_labels):
            for v in range(n):
                if not lab >> v & 1:
                    k2 = lab | 1 << v
                    r = where.get(k2)
                    if r is not None:
                        ent[(r, c)] = _sign(popcount(lab & ((1 << v) - 1)))
        d = Matrix.from_entries(len(dst_labels), len(src_labels), ent)
        return ht.projection @ d @ hs.section

    def part(sub):
        dims = tuple(coh[deg][sub].dim for deg in range(lo, n + 1))
        diffs = tuple(connecting(deg, sub) for deg in range(lo, n))
        return VectComplex(lo, dims, diffs)

    parts = tuple(pmap(part, range(nsub)))
    ups = {}
    for sub in range(nsub):
        for v in members(sub):
            t = sub & ~(1 << v)
            maps = {}
            for deg in range(lo, n + 1):
                k = level_of(deg)
                maps[deg] = induced_map(layers[k].up_chain(sub, v).at(deg + 1), coh[deg][sub], coh[deg][t])
            ups[(sub, v)] = ChainMap(parts[sub], parts[t], maps)
    sx = StraightComplex(n, parts, ups)
    try:
        sx.check()
    except ValueError as exc:
        raise VerificationError(f"connecting maps do not form a complex of straight modules: {exc}") from None
    dims = sx.cohomology_dims()
    top = s.top
    dm = direct_model if direct_model != "auto" else ("cech" if len(top.gens) <= CECH_LIMIT else "cousin")
    direct = local_cohomology_dims(top, dm)
    zero = (0,) * nsub
    full_dims = {k: dims.get(k, zero) for k in range(n + 1)}
    matches = all(full_dims[k] == direct[k] for k in range(n + 1))
    return StratComplexReport(sx, matches, full_dims, direct)
