"""Integer-graded Bredon (co)homology of explicit C_p-CW complexes.

Cells are either fixed (acted on trivially) or free (a full orbit of cells).
With constant coefficients the value of the coefficient system is Z/q at
both orbits, restriction is the identity and transfer is multiplication
by p.  Consequently the Bredon cochain complex at the full-fixed-point
level has one Z/q summand per cell and integer differentials:

  cochains:  free->free entries are group-ring augmentations,
             fixed->free entries are the plain integer coefficients;
  chains:    free->fixed entries pick up a factor of p (the transfer).

At the underlying level free cells expand to p translates and the ordinary
cellular complex is recovered.  RO-graded values at a point are obtained
by suspension: a rotation-sphere smash trades the rotation coordinate of
the degree for an integer grading.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from . import linalg
from .ro_degree import Prime

LEVEL_GG = "gg"  # genuine fixed-point level G/G
LEVEL_GE = "ge"  # underlying level G/e


@dataclass(frozen=True)
class GCWCell:
    name: str
    dim: int
    free: bool


@dataclass(frozen=True)
class GroupData:
    """A finite abelian q-torsion group, as its multiset of cyclic orders."""

    orders: tuple

    @property
    def rank(self) -> int:
        return len(self.orders)

    def to_json(self) -> dict:
        return {"orders": list(self.orders), "rank": self.rank}


class GCWComplex:
    """A finite C_p-CW complex with Free/Fixed cells and validated boundaries.

    boundary maps a cell name to a list of (target name, coefficient);
    coefficients are length-p integer vectors (group ring elements) between
    free cells and plain integers when the target is fixed.  A marked
    basepoint cell is dropped from every chain group, so complexes carrying
    one compute reduced (co)homology.
    """

    def __init__(self, prime: Prime, cells, boundary, basepoint: Optional[str] = None):
        self.prime = prime
        self.cells = list(cells)
        self.boundary = {name: list(entries) for name, entries in boundary.items()}
        self.basepoint = basepoint
        self._by_name = {}
        for cell in self.cells:
            if cell.name in self._by_name:
                raise ValueError(f"duplicate cell name {cell.name!r}")
            if cell.dim < 0:
                raise ValueError("negative cell dimension")
            self._by_name[cell.name] = cell
        if basepoint is not None:
            bp = self._cell(basepoint)
            if bp.free or bp.dim != 0 or self.boundary.get(basepoint):
                raise ValueError("basepoint must be a fixed 0-cell without boundary")
        self._validate_entries()
        self._matrix_cache = {}
        self._validate_square_zero()

    # -- structure ---------------------------------------------------------

    def _cell(self, name: str) -> GCWCell:
        try:
            return self._by_name[name]
        except KeyError:
            raise ValueError(f"unknown cell {name!r}") from None

    def _validate_entries(self) -> None:
        p = self.prime.p
        for name, entries in self.boundary.items():
            cell = self._cell(name)
            for target, coeff in entries:
                tcell = self._cell(target)
                if tcell.dim != cell.dim - 1:
                    raise ValueError(f"boundary of {name!r} hits non-adjacent dimension")
                if not cell.free and tcell.free:
                    raise ValueError(f"fixed cell {name!r} cannot hit free cell {target!r}")
                if cell.free and tcell.free:
                    if not isinstance(coeff, (list, tuple)) or len(coeff) != p:
                        raise ValueError(f"free->free entry of {name!r} needs a length-{p} vector")
                else:
                    if not isinstance(coeff, int):
                        raise ValueError(f"entry of {name!r} into fixed cell must be an integer")

    def top_dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def _chain_cells(self, level: str):
        """Chain-group generators per dimension, basepoint removed."""
        names = {}
        for cell in self.cells:
            if cell.name == self.basepoint:
                continue
            gens = names.setdefault(cell.dim, [])
            if cell.free and level == LEVEL_GE:
                gens.extend((cell.name, t) for t in range(self.prime.p))
            else:
                gens.append((cell.name, None))
        return names

    def _entry_rows(self, cell, target, coeff, level, homology):
        """Yield ((target generator), (source translate), value) triples."""
        p = self.prime.p
        if level == LEVEL_GG:
            if cell.free and target.free:
                yield (target.name, None), (cell.name, None), sum(coeff)
            elif cell.free:
                factor = p if homology else 1
                yield (target.name, None), (cell.name, None), factor * coeff
            else:
                yield (target.name, None), (cell.name, None), coeff
            return
        # underlying level: expand orbits
        if cell.free and target.free:
            for t in range(p):
                for s, c in enumerate(coeff):
                    if c:
                        yield (target.name, (t + s) % p), (cell.name, t), c
        elif cell.free:
            for t in range(p):
                yield (target.name, None), (cell.name, t), coeff
        else:
            yield (target.name, None), (cell.name, None), coeff

    def boundary_matrices(self, level: str, homology: bool):
        """Integer boundary matrices d_n : C_n -> C_{n-1} per dimension."""
        key = (level, homology)
        if key in self._matrix_cache:
            return self._matrix_cache[key]
        gens = self._chain_cells(level)
        index = {n: {g: i for i, g in enumerate(gs)} for n, gs in gens.items()}
        mats = {}
        for n, gs in gens.items():
            rows = index.get(n - 1, {})
            mat = [[0] * len(gs) for _ in range(len(rows))]
            for cell_gen, col in index[n].items():
                cell = self._cell(cell_gen[0])
                for target_name, coeff in self.boundary.get(cell.name, ()):
                    if target_name == self.basepoint:
                        continue
                    target = self._cell(target_name)
                    for tgen, sgen, value in self._entry_rows(cell, target, coeff, level, homology):
                        if sgen == cell_gen and tgen in rows:
                            mat[rows[tgen]][col] += value
            mats[n] = mat
        self._matrix_cache[key] = (gens, mats)
        return gens, mats

    def _validate_square_zero(self) -> None:
        for level in (LEVEL_GE, LEVEL_GG):
            for homology in (True, False):
                gens, mats = self.boundary_matrices(level, homology)
                for n in sorted(gens):
                    a, b = mats.get(n), mats.get(n - 1)
                    if not a or not b or not b[0]:
                        continue
                    for col in range(len(a[0])):
                        vec = [row[col] for row in a]
                        comp = [sum(brow[i] * vec[i] for i in range(len(vec))) for brow in b]
                        if any(comp):
                            raise ValueError("boundary does not square to zero")

    # -- (co)homology ------------------------------------------------------

    def _complex_at(self, q: int, n: int, level: str, homology: bool):
        """(dim C_n, incoming matrix, outgoing matrix) of the Z/q complex."""
        p = self.prime.p
        if q not in (p, p * p):
            raise ValueError(f"coefficients must be Z/{p} or Z/{p * p}")
        gens, mats = self.boundary_matrices(level, homology)
        dims = {m: len(gs) for m, gs in gens.items()}
        empty = lambda r, c: [[0] * c for _ in range(r)]
        if homology:
            size = dims.get(n, 0)
            incoming = mats.get(n + 1, empty(size, 0))
            outgoing = mats.get(n, empty(dims.get(n - 1, 0), size))
        else:
            # cochains: transpose the homological-coboundary convention
            size = dims.get(n, 0)
            inc_src = mats.get(n, None)  # d_n : C_n -> C_{n-1}, transpose: C^{n-1} -> C^n
            incoming = _transpose(inc_src, size, dims.get(n - 1, 0))
            out_src = mats.get(n + 1, None)
            outgoing = _transpose(out_src, dims.get(n + 1, 0), size)
        return size, incoming, outgoing

    def group(self, q: int, n: int, level: str, homology: bool) -> GroupData:
        size, incoming, outgoing = self._complex_at(q, n, level, homology)
        if size == 0:
            return GroupData(())
        rank_in = len(linalg.integer_snf_diagonal(incoming)) if incoming and incoming[0] else 0
        rank_out = len(linalg.integer_snf_diagonal(outgoing)) if outgoing and outgoing[0] else 0
        free_rank = size - rank_in - rank_out
        orders = [q] * free_rank
        for mat in (incoming, outgoing):
            if mat and mat[0]:
                for d in linalg.integer_snf_diagonal(mat):
                    g = gcd(d, q)
                    if g > 1:
                        orders.append(g)
        return GroupData(tuple(sorted(orders)))

    def reduction_map_rank(self, n: int, level: str, homology: bool) -> int:
        """Rank of the coefficient map H(.;Z/p^2) -> H(.;Z/p) in degree n."""
        p = self.prime.p
        size, incoming, outgoing = self._complex_at(p, n, level, homology)
        if size == 0:
            return 0
        if outgoing and outgoing[0]:
            lattice = linalg.kernel_lattice_mod(outgoing, p * p)
        else:
            lattice = [[int(i == j) for i in range(size)] for j in range(size)]
        image_cols = []
        if incoming and incoming[0]:
            image_cols = [[row[j] for row in incoming] for j in range(len(incoming[0]))]
        base = linalg.fp_rank_of_stack([image_cols], p)
        total = linalg.fp_rank_of_stack([image_cols, lattice], p)
        return total - base


def _transpose(mat, nrows_src, ncols_src):
    if not mat or not mat[0]:
        return [[0] * nrows_src for _ in range(ncols_src)] if ncols_src else []
    return [[mat[i][j] for i in range(len(mat))] for j in range(len(mat[0]))]


def cohomology_int(complex_: GCWComplex, q: int, n: int, level: str = LEVEL_GG) -> GroupData:
    """Bredon cohomology H^n with constant Z/q coefficients at the given level."""
    return complex_.group(q, n, level, homology=False)


def homology_int(complex_: GCWComplex, q: int, n: int, level: str = LEVEL_GG) -> GroupData:
    """Bredon homology H_n with constant Z/q coefficients at the given level."""
    return complex_.group(q, n, level, homology=True)


def bockstein_rank(complex_: GCWComplex, n: int, level: str = LEVEL_GG) -> int:
    """Rank of the Bockstein H^n(.;Z/p) -> H^{n+1}(.;Z/p).

    Computed from the Z/p^2 -> Z/p comparison: classes not in the image of
    the coefficient reduction are exactly the ones the connecting map sees.
    """
    p = complex_.prime.p
    dim_n = cohomology_int(complex_, p, n, level).rank
    return dim_n - complex_.reduction_map_rank(n, level, homology=False)


def reduction_map_rank(complex_: GCWComplex, n: int, level: str = LEVEL_GG, homology: bool = True) -> int:
    """Rank of H(.;Z/p^2) -> H(.;Z/p) in degree n (homology by default)."""
    return complex_.reduction_map_rank(n, level, homology)


# -- model complexes -------------------------------------------------------


def _norm_vector(p: int):
    return tuple([1] * p)


def _one_minus_g(p: int):
    v = [0] * p
    v[0] = 1
    v[1] -= 1
    return tuple(v)


def model_sphere(prime: Prime, n: int) -> GCWComplex:
    """Representation sphere on n rotations (n sign copies for p = 2).

    One fixed basepoint, one fixed 0-cell, and a string of free cells with
    boundaries alternating between (1-g) and the norm element; the 1-cell
    connects the two fixed points.  n = 0 gives the two-point sphere.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    p = prime.p
    top_dim = n if prime.is_two else 2 * n
    cells = [GCWCell("bp", 0, False), GCWCell("f0", 0, False)]
    boundary = {}
    for i in range(1, top_dim + 1):
        cells.append(GCWCell(f"e{i}", i, True))
        if i == 1:
            boundary["e1"] = [("f0", 1), ("bp", -1)]
        elif i % 2 == 0:
            boundary[f"e{i}"] = [(f"e{i-1}", _one_minus_g(p))]
        else:
            boundary[f"e{i}"] = [(f"e{i-1}", _norm_vector(p))]
    return GCWComplex(prime, cells, boundary, basepoint="bp")


def model_sphere_free(prime: Prime, n: int) -> GCWComplex:
    """The free unit sphere of n rotations (n sign copies for p = 2).

    Free cells in every dimension up to the sphere dimension, boundaries
    alternating between (1-g) on odd cells and the norm on even ones.
    Computed unreduced (no basepoint), matching a disjoint-basepoint model.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    p = prime.p
    top_dim = (n - 1) if prime.is_two else (2 * n - 1)
    cells = [GCWCell(f"e{i}", i, True) for i in range(top_dim + 1)]
    boundary = {}
    for i in range(1, top_dim + 1):
        word = _one_minus_g(p) if i % 2 == 1 else _norm_vector(p)
        boundary[f"e{i}"] = [(f"e{i-1}", word)]
    return GCWComplex(prime, cells, boundary, basepoint=None)


_POINT_CACHE: dict = {}


def point_ro(prime: Prime, m: int, n: int) -> int:
    """Rank over F_p of the point's RO-graded cohomology in degree m + n*xi.

    Suspension reduces the rotation coordinate away: for n <= 0 the value
    is an integer-degree cohomology group of a rotation sphere, for n >= 0
    an integer-degree homology group.
    """
    key = (prime.p, abs(n))
    sphere = _POINT_CACHE.get(key)
    if sphere is None:
        sphere = model_sphere(prime, abs(n))
        _POINT_CACHE[key] = sphere
    if n <= 0:
        return cohomology_int(sphere, prime.p, m, LEVEL_GG).rank
    return homology_int(sphere, prime.p, -m, LEVEL_GG).rank


def smash_with_sphere(complex_: GCWComplex, prime: Prime, n: int) -> GCWComplex:
    """Reduced smash product with the rotation sphere on n rotations.

    Product cells of two free cells split into p free cells indexed by the
    relative translate; boundaries follow the Leibniz rule with terms into
    collapsed (basepoint) cells dropped.
    """
    if complex_.basepoint is None:
        raise ValueError("smash requires a based complex")
    if complex_.prime != prime:
        raise ValueError("mismatched primes")
    p = prime.p
    sphere = model_sphere(prime, n)

    def live(cx: GCWComplex):
        return [c for c in cx.cells if c.name != cx.basepoint]

    def bdy(cx: GCWComplex, name: str):
        return [(t, c) for t, c in cx.boundary.get(name, ()) if t != cx.basepoint]

    def pair_name(a, b, t=None):
        return f"{a}*{b}" if t is None else f"{a}*{b}@{t}"

    cells = []
    boundary = {}
    xs, ys = live(complex_), live(sphere)
    xcells = {c.name: c for c in xs}
    ycells = {c.name: c for c in ys}

    def groupring(index, value):
        v = [0] * p
        v[index % p] = value
        return v

    for cx in xs:
        for cy in ys:
            dim = cx.dim + cy.dim
            sign = -1 if cx.dim % 2 else 1
            entries = []
            if not cx.free and not cy.free:
                name = pair_name(cx.name, cy.name)
                cells.append(GCWCell(name, dim, False))
                for t, c in bdy(complex_, cx.name):
                    entries.append((pair_name(t, cy.name), c))
                for t, c in bdy(sphere, cy.name):
                    entries.append((pair_name(cx.name, t), sign * c))
            elif cx.free and not cy.free:
                name = pair_name(cx.name, cy.name)
                cells.append(GCWCell(name, dim, True))
                for t, c in bdy(complex_, cx.name):
                    if xcells[t].free:
                        entries.append((pair_name(t, cy.name), list(c)))
                    else:
                        entries.append((pair_name(t, cy.name), c))
                for t, c in bdy(sphere, cy.name):
                    # cy fixed, so its boundary is fixed; the product stays free
                    entries.append((pair_name(cx.name, t), groupring(0, sign * c)))
            elif not cx.free and cy.free:
                name = pair_name(cx.name, cy.name)
                cells.append(GCWCell(name, dim, True))
                for t, c in bdy(complex_, cx.name):
                    entries.append((pair_name(t, cy.name), groupring(0, c)))
                for t, c in bdy(sphere, cy.name):
                    if ycells[t].free:
                        entries.append((pair_name(cx.name, t), [sign * v for v in c]))
                    else:
                        entries.append((pair_name(cx.name, t), sign * c))
            else:
                # free x free splits into p free cells, one per relative translate
                for t in range(p):
                    name = pair_name(cx.name, cy.name, t)
                    cells.append(GCWCell(name, dim, True))
                    tentries = []
                    for tgt, c in bdy(complex_, cx.name):
                        if xcells[tgt].free:
                            for s, v in enumerate(c):
                                if v:
                                    tentries.append((pair_name(tgt, cy.name, (t - s) % p), groupring(s, v)))
                        else:
                            tentries.append((pair_name(tgt, cy.name), groupring(t, c)))
                    for tgt, c in bdy(sphere, cy.name):
                        if ycells[tgt].free:
                            for s, v in enumerate(c):
                                if v:
                                    tentries.append((pair_name(cx.name, tgt, (t + s) % p), groupring(0, sign * v)))
                        else:
                            tentries.append((pair_name(cx.name, tgt), groupring(0, sign * c)))
                    merged = _merge(tentries)
                    if merged:
                        boundary[name] = merged
                continue
            merged = _merge(entries)
            if merged:
                boundary[name] = merged
    return GCWComplex(prime, cells, boundary, basepoint=None)


def _merge(entries):
    """Combine repeated targets, summing group-ring vectors componentwise."""
    acc = {}
    for target, coeff in entries:
        if target in acc:
            old = acc[target]
            if isinstance(old, int):
                acc[target] = old + coeff
            else:
                acc[target] = [a + b for a, b in zip(old, coeff)]
        else:
            acc[target] = list(coeff) if isinstance(coeff, (list, tuple)) else coeff
    out = []
    for target, coeff in acc.items():
        if isinstance(coeff, int):
            if coeff:
                out.append((target, coeff))
        elif any(coeff):
            out.append((target, tuple(coeff)))
    return out


# -- JSON ------------------------------------------------------------------


def complex_to_json(complex_: GCWComplex) -> dict:
    data = {
        "p": complex_.prime.p,
        "cells": [{"name": c.name, "dim": c.dim, "free": c.free} for c in complex_.cells],
        "boundary": [],
    }
    if complex_.basepoint is not None:
        data["basepoint"] = complex_.basepoint
    for name, entries in complex_.boundary.items():
        for target, coeff in entries:
            entry = {"from": name, "to": target}
            if isinstance(coeff, (list, tuple)):
                entry["groupring"] = list(coeff)
            else:
                entry["int"] = coeff
            data["boundary"].append(entry)
    return data


def complex_from_json(data: dict) -> GCWComplex:
    prime = Prime(int(data["p"]))
    cells = [GCWCell(str(c["name"]), int(c["dim"]), bool(c["free"])) for c in data["cells"]]
    boundary: dict = {}
    for entry in data.get("boundary", ()):
        name = str(entry["from"])
        if "groupring" in entry:
            coeff = tuple(int(x) for x in entry["groupring"])
        else:
            coeff = int(entry["int"])
        boundary.setdefault(name, []).append((str(entry["to"]), coeff))
    return GCWComplex(prime, cells, boundary, basepoint=data.get("basepoint"))
