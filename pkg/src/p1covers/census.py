"""Exhaustive census of separable base-point-free 2-planes over F_q.

Equivalence classes of degree-d covers are exactly rank-2 reduced row
echelon matrices of shape 2 x (d+1) (columns by descending degree), so
counting classes is counting admissible echelon forms: the top-degree
pivot must sit in the x^d column (base-point-freeness at infinity), g and
h must be coprime (no finite base point) and h g' - g h' must not vanish
(separability).

Records group the stream by monic discriminant. Length multisets come
from the squarefree structure, which never needs a field extension and is
always exact; divisor points are materialized only when cheap or
requested. Per-class Zariski tangent dimensions of the
fixed-discriminant locus are computed in chart coordinates on the raw
fast path. Enumeration can be partitioned across processes; the merge is
a deterministic reduce keyed on the discriminant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cover import Cover, Divisor, INF, _raw_normalize
from .errors import BudgetExceeded, InputError
from .field import FieldSpec, make_field
from .poly import (Poly, raw_deriv, raw_gcd, raw_monic, raw_mul, raw_rank,
                   raw_sqf_list, raw_sub, raw_trim, roots_with_multiplicity)
from .deform import _columns_to_rows, _tangent_columns_raw

DEFAULT_BUDGET = 2_000_000
POINTS_AUTO_LIMIT = 50_000


def raw_plane_count(q: int, d: int) -> int:
    """Number of 2-planes in a (d+1)-space over F_q (Gaussian binomial)."""
    return ((q ** (d + 1) - 1) * (q ** d - 1)) // ((q ** 2 - 1) * (q - 1))


def _echelon_pairs(S, d, c2, prefix=()):
    """Raw (g, h) coefficient lists for echelon matrices with pivots at
    columns (0, c2); `prefix` pins the first free cells of the g row.

    Column j holds the coefficient of x^(d-j). Yields every matrix once,
    free cells iterated in the fixed element order, the h row fastest.
    """
    q = S.order
    free_g = [j for j in range(1, d + 1) if j != c2]
    free_h = list(range(c2 + 1, d + 1))
    ng, nh = len(free_g), len(free_h)
    if len(prefix) > ng:
        raise InputError("prefix longer than the free cells of the g row")
    head = list(prefix)
    for tail in itertools.product(range(q), repeat=ng - len(head)):
        gvals = head + list(tail)
        g = [0] * (d + 1)
        g[d] = 1
        for j, v in zip(free_g, gvals):
            g[d - j] = v
        g = raw_trim(g)
        for hvals in itertools.product(range(q), repeat=nh):
            h = [0] * (d + 1)
            h[d - c2] = 1
            for j, v in zip(free_h, hvals):
                h[d - j] = v
            yield g, raw_trim(list(h))


def enumerate_covers(spec: FieldSpec, d: int, budget: int = DEFAULT_BUDGET):
    """One validated Cover per equivalence class, in a deterministic order."""
    total = raw_plane_count(spec.order, d)
    if total > budget:
        raise BudgetExceeded(
            f"census of {total} planes exceeds the budget {budget}")
    for c2 in range(1, d + 1):
        for g, h in _echelon_pairs(spec, d, c2):
            if len(raw_gcd(spec, g, h)) > 1:
                continue
            disc = raw_sub(spec, raw_mul(spec, h, raw_deriv(spec, g)),
                           raw_mul(spec, g, raw_deriv(spec, h)))
            if not disc:
                continue
            yield Cover(Poly._raw(spec, g), Poly._raw(spec, h))


def _tangent_dim_raw(S, g, h, d, disc_raw, max_ext):
    """Chart tangent dimension of the fixed-discriminant locus, fast path."""
    if d == 1:
        return 0
    spec_n, gn, hn, _, _ = _raw_normalize(S, list(g), list(h), d, list(disc_raw), max_ext)
    cols = _tangent_columns_raw(spec_n, gn, hn, d)
    ncols = len(cols)
    rows = _columns_to_rows(cols, 2 * d - 2)
    return ncols - raw_rank(spec_n, rows, ncols)


def _scan_chunk(args):
    """Worker: scan one enumeration slice into {disc: [count, {dim: n}]}."""
    p, m, d, c2, prefix, max_ext, with_tangent = args
    S = make_field(p, m)
    table = {}
    gcd = raw_gcd
    for g, h in _echelon_pairs(S, d, c2, prefix):
        if len(gcd(S, g, h)) > 1:
            continue
        disc = raw_sub(S, raw_mul(S, h, raw_deriv(S, g)),
                       raw_mul(S, g, raw_deriv(S, h)))
        if not disc:
            continue
        key = tuple(raw_monic(S, disc))
        rec = table.get(key)
        if rec is None:
            rec = [0, {}]
            table[key] = rec
        rec[0] += 1
        if with_tangent:
            dim = _tangent_dim_raw(S, g, h, d, disc, max_ext)
            dims = rec[1]
            dims[dim] = dims.get(dim, 0) + 1
    return table


def _merge_tables(dst, src):
    for key, (count, dims) in src.items():
        rec = dst.get(key)
        if rec is None:
            dst[key] = [count, dict(dims)]
        else:
            rec[0] += count
            for dim, n in dims.items():
                rec[1][dim] = rec[1].get(dim, 0) + n
    return dst


@dataclass(frozen=True)
class CensusRecord:
    """All covers over F_q sharing one monic discriminant."""

    disc: Poly
    lengths: Divisor | None       # materialized points, when available
    finite_lengths: tuple         # sorted root multiplicities of disc
    l_inf: int
    class_count: int
    tangent_dims: dict            # {xd tangent dimension: number of classes}
    wild: bool                    # some length >= p, infinity included
    split_ok: bool                # points materialized within max_ext
    factor_profile: tuple         # (squarefree factor degree, multiplicity)

    def length_multiset(self) -> tuple:
        out = list(self.finite_lengths)
        if self.l_inf > 0:
            out.append(self.l_inf)
        return tuple(sorted(out))

    def mass(self) -> int:
        return sum(self.finite_lengths) + self.l_inf

    def to_json(self):
        return {
            "disc": str(self.disc),
            "lengths": self.lengths.to_json() if self.lengths is not None else None,
            "finite_lengths": list(self.finite_lengths),
            "l_inf": self.l_inf,
            "class_count": self.class_count,
            "tangent_dims": {str(k): v for k, v in sorted(self.tangent_dims.items())},
            "wild": self.wild,
            "split_ok": self.split_ok,
            "factor_profile": [list(t) for t in self.factor_profile],
        }


@dataclass(frozen=True)
class CensusResult:
    spec: FieldSpec
    d: int
    records: tuple
    raw_planes: int
    total_classes: int
    galois_orbits: int | None

    def summary(self):
        return {
            "p": self.spec.p,
            "ext": self.spec.m,
            "q": self.spec.order,
            "d": self.d,
            "raw_planes": self.raw_planes,
            "total_classes": self.total_classes,
            "records": len(self.records),
            "wild_classes": sum(r.class_count for r in self.records if r.wild),
            "galois_orbits": self.galois_orbits,
        }

    def to_json(self):
        return {"summary": self.summary(),
                "records": [r.to_json() for r in self.records]}


def _length_structure(S, disc_key, d):
    """(finite_lengths, l_inf, factor_profile) from the squarefree
    structure; exact, no extension needed. A squarefree factor of degree
    k with multiplicity e contributes k geometric roots of length e, so
    the multiset never needs the roots themselves."""
    finite = []
    profile = []
    for fac, mult in raw_sqf_list(S, list(disc_key)):
        k = len(fac) - 1
        profile.append((k, mult))
        finite.extend([mult] * k)
    l_inf = (2 * d - 2) - (len(disc_key) - 1)
    return tuple(sorted(finite)), l_inf, tuple(sorted(profile))


def census_by_disc(spec: FieldSpec, d: int, max_ext: int = 4,
                   budget: int = DEFAULT_BUDGET, processes: int = 1,
                   with_tangent: bool = True, points: bool | None = None,
                   orbit_count: bool = False) -> CensusResult:
    """Group every equivalence class over F_q by its monic discriminant.

    points=None materializes divisor points only when the run is small
    (raw plane count <= POINTS_AUTO_LIMIT); pass True/False to force.
    """
    if d < 1:
        raise InputError("census degree must be at least 1")
    q = spec.order
    total = raw_plane_count(q, d)
    if total > budget:
        raise BudgetExceeded(f"census of {total} planes exceeds the budget {budget}")
    if points is None:
        points = total <= POINTS_AUTO_LIMIT
    tasks = []
    for c2 in range(1, d + 1):
        n_free_g = d - 1
        n_covers = q ** (n_free_g + (d - c2))
        if processes > 1 and n_covers > 200_000:
            k = 2 if q ** (n_free_g - 2) * q ** (d - c2) <= 200_000 else 3
            k = min(k, n_free_g)
            for prefix in itertools.product(range(q), repeat=k):
                tasks.append((spec.p, spec.m, d, c2, prefix, max_ext, with_tangent))
        else:
            tasks.append((spec.p, spec.m, d, c2, (), max_ext, with_tangent))
    table = {}
    if processes > 1 and len(tasks) > 1:
        import concurrent.futures
        with concurrent.futures.ProcessPoolExecutor(max_workers=processes) as pool:
            for part in pool.map(_scan_chunk, tasks, chunksize=1):
                _merge_tables(table, part)
    else:
        for t in tasks:
            _merge_tables(table, _scan_chunk(t))
    records = []
    for key in sorted(table.keys(), key=lambda k: (len(k), k)):
        count, dims = table[key]
        finite, l_inf, profile = _length_structure(spec, key, d)
        wild = any(m >= spec.p for m in finite) or l_inf >= spec.p
        lengths = None
        split_ok = False
        if points:
            lengths, split_ok = _materialize_divisor(spec, key, l_inf, max_ext)
        records.append(CensusRecord(
            disc=Poly._raw(spec, list(key)), lengths=lengths,
            finite_lengths=finite, l_inf=l_inf, class_count=count,
            tangent_dims=dims, wild=wild, split_ok=split_ok,
            factor_profile=profile))
    orbits = _count_galois_orbits(spec, d) if orbit_count else None
    return CensusResult(spec=spec, d=d, records=tuple(records),
                        raw_planes=total,
                        total_classes=sum(r.class_count for r in records),
                        galois_orbits=orbits)


def _materialize_divisor(S, disc_key, l_inf, max_ext):
    pairs = []
    split_ok = True
    if len(disc_key) > 1:
        roots, residual = roots_with_multiplicity(Poly._raw(S, list(disc_key)), max_ext)
        split_ok = residual.degree() == 0
        pairs.extend(roots)
    if not split_ok:
        return None, False
    if l_inf > 0:
        pairs.append((INF, l_inf))
    return Divisor(pairs), True


def _count_galois_orbits(spec, d):
    """Orbits of the coefficient-wise p-power map on admissible planes."""
    if spec.m == 1:
        total = 0
        for c2 in range(1, d + 1):
            for g, h in _echelon_pairs(spec, d, c2):
                if len(raw_gcd(spec, g, h)) > 1:
                    continue
                if raw_sub(spec, raw_mul(spec, h, raw_deriv(spec, g)),
                           raw_mul(spec, g, raw_deriv(spec, h))):
                    total += 1
        return total
    frob = [spec.frob_code(c) for c in range(spec.order)]
    seen = set()
    orbits = 0
    for c2 in range(1, d + 1):
        for g, h in _echelon_pairs(spec, d, c2):
            if len(raw_gcd(spec, g, h)) > 1:
                continue
            if not raw_sub(spec, raw_mul(spec, h, raw_deriv(spec, g)),
                           raw_mul(spec, g, raw_deriv(spec, h))):
                continue
            key = (tuple(g), tuple(h))
            if key in seen:
                continue
            orbits += 1
            cg, ch = g, h
            while True:
                seen.add((tuple(cg), tuple(ch)))
                cg = [frob[c] for c in cg]
                ch = [frob[c] for c in ch]
                if (tuple(cg), tuple(ch)) == key:
                    break
    return orbits


def verify_theorem_char23(spec: FieldSpec, d: int, max_ext: int = 4,
                          budget: int = DEFAULT_BUDGET, processes: int = 1) -> dict:
    """Tangent-dimension scan in characteristic 2 or 3: every class whose
    lengths all sit below p must have xd tangent dimension zero, and in
    characteristic 2 no differential length 1 may occur at all.
    Violations are report content, never exceptions."""
    p = spec.p
    if p not in (2, 3):
        raise InputError("this verification targets characteristic 2 and 3")
    result = census_by_disc(spec, d, max_ext=max_ext, budget=budget,
                            processes=processes, with_tangent=True, points=False)
    violations = []
    checked = 0
    wild_classes = 0
    wild_dims = {}
    length_one_seen = False
    for rec in result.records:
        multiset = rec.length_multiset()
        if 1 in multiset:
            length_one_seen = True
        if rec.wild:
            wild_classes += rec.class_count
            for dim, n in rec.tangent_dims.items():
                wild_dims[dim] = wild_dims.get(dim, 0) + n
            continue
        checked += rec.class_count
        bad = {dim: n for dim, n in rec.tangent_dims.items() if dim != 0}
        if bad:
            violations.append({"disc": str(rec.disc), "dims": bad})
    report = {
        "p": p, "q": spec.order, "d": d,
        "total_classes": result.total_classes,
        "tame_classes_checked": checked,
        "violations": violations,
        "wild_classes": wild_classes,
        "wild_tangent_dims": {str(k): v for k, v in sorted(wild_dims.items())},
    }
    if p == 2:
        report["length_one_absent"] = not length_one_seen
    return report
