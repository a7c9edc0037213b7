"""Freeness engine for complexes built from representation discs.

A complex enters as an ordered list of cells, each an actual
representation, together with the algebraic boundary values of each
attachment on the generators of the previous stage.  While the boundary
values stay in the divisible part of the point ring the long exact
sequence of an attachment splits after a triangular change of basis, and
the cohomology remains free with explicitly shifted generator degrees.
Boundaries that land on the exterior divisible classes (which force cells
in consecutive dimensions) break the induction; those attachments are
certified non-free through a rank-profile search instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import point_ring as pr
from .point_ring import BOTTOM, TOP, ConeMonomial, RingElement
from .ro_degree import ONE, Prime, RealRep, RODegree, dimension, fixed_dimension
from .ro_degree import reduce as reduce_rep

KAPPA_BOUNDARY_CONSECUTIVE = "KappaBoundaryConsecutive"
PROFILE_MISMATCH = "ProfileMismatch"
UNDETERMINED = "Undetermined"


def unit_degree(prime: Prime) -> RODegree:
    """Degree of the periodicity class: rotation minus its dimension."""
    return RODegree(-1, 1) if prime.is_two else RODegree(-2, 1)


@dataclass(frozen=True)
class RepCell:
    name: str
    rep: RealRep


@dataclass(frozen=True)
class FreeBasis:
    """Generators of a free module over the point ring."""

    generators: tuple  # of (name, RODegree)
    beta_closed: bool = True

    def degrees(self):
        return [deg for _, deg in self.generators]


@dataclass
class NonFreeCertificate:
    reason: str
    witness: dict = field(default_factory=dict)


class RepComplex:
    """Ordered representation cells with algebraic boundary data.

    boundaries[cell] maps generator names of the stage being attached to
    (the names of earlier cells that survive) to point-ring elements of
    degree W + 1 - V, W the current degree of the generator and V the
    reduced degree of the attached cell.
    """

    def __init__(self, prime: Prime, cells, boundaries):
        self.prime = prime
        self.cells = list(cells)
        self.boundaries = {name: dict(dmap) for name, dmap in boundaries.items()}
        names = set()
        last_dim = None
        for cell in self.cells:
            if cell.name in names:
                raise ValueError(f"duplicate cell name {cell.name!r}")
            names.add(cell.name)
            d = self.cell_dim(cell)
            if last_dim is not None and d < last_dim:
                raise ValueError("cells must come in non-decreasing dimension")
            last_dim = d
        if not self.cells or self.cell_dim(self.cells[0]) != 0:
            raise ValueError("the complex must start with a fixed 0-cell")
        for name in self.boundaries:
            if name not in names:
                raise ValueError(f"boundary given for unknown cell {name!r}")

    def cell_degree(self, cell: RepCell) -> RODegree:
        return reduce_rep(self.prime, cell.rep)

    def cell_dim(self, cell: RepCell) -> int:
        return dimension(self.prime, self.cell_degree(cell))

    def top_dim(self) -> int:
        return max(self.cell_dim(c) for c in self.cells)

    def default_window(self) -> int:
        return self.top_dim() + 3


def is_sparse(complex_: RepComplex) -> bool:
    """No two cells in consecutive dimensions."""
    dims = sorted({complex_.cell_dim(c) for c in complex_.cells})
    return all(b - a != 1 for a, b in zip(dims, dims[1:]))


# -- single attachments ------------------------------------------------------


def two_cell(prime: Prime, w: RODegree, v: RODegree, d: RingElement):
    """Free basis of a two-generator extension with one differential.

    Requires dim w < dim v - 1.  A zero differential splits; a plain
    divisible differential with orientation exponent m shifts the
    generators by m times the periodicity degree, in opposite directions.
    Exterior-type differentials are impossible here: their Bockstein is
    nonzero unless the exponent forces consecutive dimensions.
    """
    if dimension(prime, w) >= dimension(prime, v) - 1:
        raise ValueError("two-cell case requires a dimension gap of at least two")
    if not d.is_zero():
        if d.degree != w + ONE - v:
            raise ValueError(f"differential degree {d.degree} != {w + ONE - v}")
        mono = d.monomial
        if mono.cone != BOTTOM or mono.kappa:
            raise ValueError("differential must be a plain divisible class")
        shift = unit_degree(prime).scaled(mono.j)
        return FreeBasis((("w", w + shift), ("v", v - shift)))
    return FreeBasis((("w", w), ("v", v)))


@dataclass
class Normalization:
    """Outcome of the triangular reduction of a boundary map."""

    dmap: dict  # generator name -> RingElement (possibly zero)
    chain: list  # names with surviving nonzero differentials, dims increasing
    base_change: list  # (target, source, coeff, a_exp, u_exp) records


def normalize_boundaries(prime: Prime, generators, dmap) -> Normalization:
    """Reduce plain divisible boundary values to a dominating staircase.

    Among the nonzero values, the ones maximal for componentwise
    domination of (orientation exponent, Euler exponent) form a staircase
    with strictly increasing orientation exponents and strictly decreasing
    Euler exponents; every other value is a polynomial multiple of a
    staircase one and is cleared by a unitriangular change of basis.
    """
    degree_of = dict(generators)
    data = {}
    for name, elt in dmap.items():
        if elt.is_zero():
            continue
        mono = elt.monomial
        if mono.cone != BOTTOM or mono.kappa:
            raise ValueError("normalization expects plain divisible differentials")
        data[name] = (mono.j, mono.k, elt.coeff)
    order = {name: i for i, (name, _) in enumerate(generators)}

    def dominated(a, b):  # a killed by b
        return a[0] <= b[0] and a[1] <= b[1]

    chain = []
    for name, (m, k, _) in data.items():
        maximal = True
        for other, (m2, k2, _) in data.items():
            if other == name:
                continue
            if (m, k) == (m2, k2):
                if order[other] < order[name]:
                    maximal = False
                    break
            elif dominated((m, k), (m2, k2)):
                maximal = False
                break
        if maximal:
            chain.append(name)
    chain.sort(key=lambda nm: (data[nm][1], order[nm]), reverse=True)  # k decreasing

    new_dmap = dict(dmap)
    base_change = []
    for name, (m, k, coeff) in data.items():
        if name in chain:
            continue
        pivots = [nm for nm in chain if dominated((m, k), data[nm][:2])]
        if not pivots:
            raise AssertionError("staircase misses a dominating element")
        pivot = min(pivots, key=lambda nm: order[nm])
        pm, pk, pcoeff = data[pivot]
        factor = (coeff * pow(pcoeff, -1, prime.p)) % prime.p
        base_change.append((name, pivot, factor, pk - k, pm - m))
        new_dmap[name] = pr.zero(prime, new_dmap[name].degree)
    return Normalization(new_dmap, chain, base_change)


def attach_cell(prime: Prime, basis: FreeBasis, v: RODegree, dmap, new_name: str = "nu"):
    """Attach a representation cell to a free stage.

    Plain divisible differentials are normalized to a staircase and the
    generators peeled off one at a time; the surviving generator degrees
    shift by the periodicity degree, the cell degree by its inverse.  A
    Bockstein obstruction that cannot be corrected (possible only with
    generators in consecutive dimensions) is reported as a certificate.
    """
    degree_of = dict(basis.generators)
    for name, elt in dmap.items():
        if name not in degree_of:
            raise ValueError(f"boundary hits unknown generator {name!r}")
        if not elt.is_zero() and elt.degree != degree_of[name] + ONE - v:
            raise ValueError(
                f"boundary on {name!r} has degree {elt.degree}, expected {degree_of[name] + ONE - v}"
            )
    kappa_offender = _kappa_differential(dmap)
    if kappa_offender is not None:
        name, elt = kappa_offender
        consecutive = elt.monomial.k == 1
        return NonFreeCertificate(
            KAPPA_BOUNDARY_CONSECUTIVE if consecutive else UNDETERMINED,
            witness={
                "offending_generator": name,
                "differential": elt.to_json(),
                "consecutive_dimensions": consecutive,
            },
        )
    top_type = [name for name, elt in dmap.items() if not elt.is_zero() and elt.monomial.cone == TOP]
    if top_type:
        raise ValueError("top-cone differentials require the consecutive-cell reduction")

    norm = normalize_boundaries(prime, basis.generators, dmap)
    shifts = {}
    prev = 0
    udeg = unit_degree(prime)
    for name in norm.chain:
        m = norm.dmap[name].monomial.j
        shifts[name] = udeg.scaled(m - prev)
        prev = m
    new_gens = []
    for name, deg in basis.generators:
        new_gens.append((name, deg + shifts.get(name, RODegree(0, 0))))
    new_gens.append((new_name, v - udeg.scaled(prev)))

    if not prime.is_two:
        chain_dims = [dimension(prime, degree_of[name]) for name in norm.chain]
        for name, deg in new_gens[:-1]:
            obstruction = pr.basis(prime, deg + ONE - v)
            if obstruction is not None and obstruction.cone == BOTTOM and obstruction.kappa:
                if any(cd == dimension(prime, deg) + 1 for cd in chain_dims):
                    return NonFreeCertificate(
                        PROFILE_MISMATCH,
                        witness={
                            "offending_generator": name,
                            "bockstein_obstruction": obstruction.to_json(),
                            "consecutive_generator_dimensions": True,
                        },
                    )
    return FreeBasis(tuple(new_gens), beta_closed=True)


@dataclass
class ConsecutiveReduction:
    """Result of the consecutive-dimension reduction of a boundary map."""

    case: str  # "all_zero" | "split" | "undetermined"
    dmap: dict
    cancelled: Optional[str] = None
    base_change: list = field(default_factory=list)
    note: str = ""


def consecutive_reduce(prime: Prime, generators, v: RODegree, dmap) -> ConsecutiveReduction:
    """Reduce differentials when generators sit one dimension below the cell.

    Such differentials are orientation-class powers.  The generator with
    the least power clears every other differential; if its own power is
    zero the pair cancels (the attached cell fills that generator), and a
    positive power is unrealizable for a finite complex, because the cell
    class would survive localization with orientation-class torsion.
    """
    degree_of = dict(generators)
    order = {name: i for i, (name, _) in enumerate(generators)}
    consec = {}
    for name, elt in dmap.items():
        if elt.is_zero():
            continue
        mono = elt.monomial
        if mono.cone == TOP:
            if mono.kappa or mono.j:
                return ConsecutiveReduction(
                    UNDETERMINED, dmap, note=f"unsupported top-cone differential on {name!r}"
                )
            if dimension(prime, degree_of[name]) != dimension(prime, v) - 1:
                return ConsecutiveReduction(
                    UNDETERMINED, dmap, note=f"orientation-power differential on {name!r} off by dimension"
                )
            if fixed_dimension(degree_of[name]) >= fixed_dimension(v):
                return ConsecutiveReduction(
                    UNDETERMINED, dmap, note="fixed-point condition violated"
                )
            consec[name] = (mono.k, elt.coeff)
    if not consec:
        return ConsecutiveReduction("all_zero", dmap)
    pivot = min(consec, key=lambda nm: (consec[nm][0], order[nm]))
    pk, pcoeff = consec[pivot]
    new_dmap = dict(dmap)
    base_change = []
    for name, (k, coeff) in consec.items():
        if name == pivot:
            continue
        factor = (coeff * pow(pcoeff, -1, prime.p)) % prime.p
        base_change.append((name, pivot, factor, 0, k - pk))
        new_dmap[name] = pr.zero(prime, new_dmap[name].degree)
    for name, elt in dmap.items():
        if name == pivot or elt.is_zero() or name in consec:
            continue
        mono = elt.monomial
        if mono.cone == BOTTOM:
            # divisible values divide by any orientation power, so the pivot
            # clears them as well
            factor = (elt.coeff * pow(pcoeff, -1, prime.p)) % prime.p
            base_change.append((name, pivot, factor, mono.k, mono.j + pk))
            new_dmap[name] = pr.zero(prime, elt.degree)
    if pk == 0:
        new_dmap[pivot] = pr.zero(prime, dmap[pivot].degree)
        return ConsecutiveReduction("split", new_dmap, cancelled=pivot, base_change=base_change)
    return ConsecutiveReduction(
        UNDETERMINED,
        new_dmap,
        base_change=base_change,
        note=f"orientation-power differential u^{pk} survives on {pivot!r};"
        " impossible for the cohomology of a finite complex",
    )


# -- whole-complex engine ------------------------------------------------------


@dataclass
class _Step:
    kind: str  # "free" | "certificate"
    basis: Optional[FreeBasis] = None
    certificate: Optional[NonFreeCertificate] = None


def _kappa_differential(dmap):
    for name, elt in dmap.items():
        if not elt.is_zero() and elt.monomial.cone == BOTTOM and elt.monomial.kappa:
            return name, elt
    return None


def _resolve_boundary(prime: Prime, complex_: RepComplex, cell: RepCell, basis: FreeBasis):
    """Boundary map of a cell on the current generators, degree-checked."""
    degree_of = dict(basis.generators)
    v = complex_.cell_degree(cell)
    raw = complex_.boundaries.get(cell.name, {})
    dmap = {}
    known = set(c.name for c in complex_.cells)
    for name, elt in raw.items():
        if name not in degree_of:
            if name in known:
                return None, NonFreeCertificate(
                    UNDETERMINED,
                    witness={"cell": cell.name, "missing_generator": name,
                             "note": "boundary hits a generator consumed by an earlier cancellation"},
                )
            raise ValueError(f"boundary of {cell.name!r} references unknown generator {name!r}")
        if not isinstance(elt, RingElement):
            raise ValueError("boundary values must be point-ring elements")
        if not elt.is_zero() and elt.degree != degree_of[name] + ONE - v:
            raise ValueError(
                f"boundary of {cell.name!r} on {name!r} has degree {elt.degree},"
                f" expected {degree_of[name] + ONE - v}"
            )
        dmap[name] = elt
    for name, deg in basis.generators:
        dmap.setdefault(name, pr.zero(prime, deg + ONE - v))
    return dmap, None


def _advance(prime: Prime, complex_: RepComplex, basis: FreeBasis, cell: RepCell) -> _Step:
    v = complex_.cell_degree(cell)
    if complex_.cell_dim(cell) == 0:
        if complex_.boundaries.get(cell.name):
            raise ValueError("0-cells cannot carry boundary data")
        return _Step("free", FreeBasis(basis.generators + ((cell.name, RODegree(0, 0)),)))
    dmap, cert = _resolve_boundary(prime, complex_, cell, basis)
    if cert is not None:
        return _Step("certificate", certificate=cert)
    if _kappa_differential(dmap) is not None:
        result = attach_cell(prime, basis, v, dmap, new_name=cell.name)
        result.witness["cell"] = cell.name
        return _Step("certificate", certificate=result)
    has_top = any(not e.is_zero() and e.monomial.cone == TOP for e in dmap.values())
    if has_top:
        reduction = consecutive_reduce(prime, basis.generators, v, dmap)
        if reduction.case == "split":
            gens = tuple((nm, d) for nm, d in basis.generators if nm != reduction.cancelled)
            return _Step("free", FreeBasis(gens, beta_closed=basis.beta_closed))
        if reduction.case == UNDETERMINED:
            return _Step(
                "certificate",
                certificate=NonFreeCertificate(UNDETERMINED, witness={"cell": cell.name, "note": reduction.note}),
            )
        dmap = reduction.dmap
    result = attach_cell(prime, basis, v, dmap, new_name=cell.name)
    if isinstance(result, NonFreeCertificate):
        result.witness["cell"] = cell.name
        return _Step("certificate", certificate=result)
    return _Step("free", result)


def cohomology(complex_: RepComplex):
    """Fold the attachment analysis over all cells.

    Sparse complexes always produce a free basis with Bockstein-closed
    generators.  Non-sparse ones are attempted anyway; failures return a
    certificate whose freeness verdict is confirmed (or left undetermined)
    by the rank-profile search.
    """
    prime = complex_.prime
    basis = FreeBasis(())
    for cell in complex_.cells:
        step = _advance(prime, complex_, basis, cell)
        if step.kind == "certificate":
            cert = step.certificate
            cert.witness.setdefault("initial_reason", cert.reason)
            window = complex_.default_window()
            try:
                profile = rank_profile(complex_, window)
            except ValueError:
                profile = None
            if profile is None:
                cert.reason = UNDETERMINED
                cert.witness.setdefault("note", "rank profile not computable past the failure")
                return cert
            match = is_free_profile(prime, profile)
            cert.witness["window"] = window
            cert.witness["free_profile_match"] = (
                None if match is None else [[d.m, d.n] for d in match]
            )
            if match is None:
                # the search disproves freeness on the window
                if cert.witness["initial_reason"] != KAPPA_BOUNDARY_CONSECUTIVE:
                    cert.reason = PROFILE_MISMATCH
            else:
                cert.reason = UNDETERMINED
                cert.witness["note"] = "profile is consistent with a free module on the window"
            return cert
        basis = step.basis
    return basis


def _profile_step(prime: Prime, table, generators, v: RODegree, dmap, window: int):
    """One long-exact-sequence update of the reduced rank table."""
    new = {}
    degree_of = dict(generators)

    def d_rank(alpha: RODegree) -> int:
        target = pr.basis(prime, alpha + ONE - v)
        if target is None:
            return 0
        for name, elt in dmap.items():
            if elt.is_zero():
                continue
            mono = pr.basis(prime, alpha - degree_of[name])
            if mono is None:
                continue
            product = pr.multiply(pr.element(prime, mono), elt)
            if not product.is_zero():
                return 1
        return 0

    for alpha, old in table.items():
        sphere = pr.rank(prime, alpha - v)
        new[alpha] = (sphere - d_rank(alpha - ONE)) + (old - d_rank(alpha))
    return new


def rank_profile(complex_: RepComplex, window: Optional[int] = None) -> dict:
    """Ranks of the complex's cohomology over a degree box.

    Computed degreewise from the attachment long exact sequences: each
    cell contributes the kernel of its differential in the degree and the
    cokernel one step below.  Works one attachment past the last free
    stage, which is all a terminal non-free cell needs.
    """
    prime = complex_.prime
    if window is None:
        window = complex_.default_window()
    box = [RODegree(m, n) for m in range(-window, window + 1) for n in range(-window, window + 1)]
    table = {alpha: 0 for alpha in box}
    basis = FreeBasis(())
    for i, cell in enumerate(complex_.cells):
        if complex_.cell_dim(cell) == 0:
            for alpha in box:
                table[alpha] += pr.rank(prime, alpha)
            basis = FreeBasis(basis.generators + ((cell.name, RODegree(0, 0)),))
            continue
        dmap, cert = _resolve_boundary(prime, complex_, cell, basis)
        if cert is not None:
            raise ValueError("profile cannot continue past a lost generator")
        table = _profile_step(prime, table, basis.generators, complex_.cell_degree(cell), dmap, window)
        step = _advance(prime, complex_, basis, cell)
        if step.kind == "certificate":
            if i != len(complex_.cells) - 1:
                raise ValueError("profile cannot continue past a non-free attachment")
            return table
        basis = step.basis
    return table


def free_rank_function(prime: Prime, degrees, window: int) -> dict:
    """Rank table of a free module with the given generator degrees."""
    table = {}
    for m in range(-window, window + 1):
        for n in range(-window, window + 1):
            alpha = RODegree(m, n)
            table[alpha] = sum(pr.rank(prime, alpha - w) for w in degrees)
    return table


def is_free_profile(prime: Prime, profile: dict):
    """Search for generator degrees whose free rank table matches the profile.

    Exhaustive backtracking over candidate degrees inside the window; a
    match only certifies consistency with freeness on the window, while
    None is evidence against freeness.
    """
    degrees = sorted(profile, key=lambda d: (d.m, d.n))
    candidates = degrees
    supports = {}
    for w in candidates:
        supports[w] = [alpha for alpha in degrees if pr.rank(prime, alpha - w)]

    current = {alpha: 0 for alpha in degrees}
    chosen = []
    budget = [200000]

    def deficit_degrees():
        return [alpha for alpha in degrees if current[alpha] < profile[alpha]]

    def search():
        if budget[0] <= 0:
            raise RuntimeError("profile search budget exhausted")
        budget[0] -= 1
        deficits = deficit_degrees()
        if not deficits:
            return True
        # branch on the deficit degree with the fewest candidate covers
        def covers(alpha):
            return [w for w in candidates if pr.rank(prime, alpha - w)]

        alpha = min(deficits, key=lambda a: len(covers(a)))
        for w in covers(alpha):
            ok = True
            for a in supports[w]:
                current[a] += 1
                if current[a] > profile[a]:
                    ok = False
            if ok:
                chosen.append(w)
                if search():
                    return True
                chosen.pop()
            for a in supports[w]:
                current[a] -= 1
        return False

    if search():
        return sorted(chosen, key=lambda d: (dimension(prime, d), d.m, d.n))
    return None


def localization_check(basis: FreeBasis, fixed_betti) -> bool:
    """Free rank must equal the total Betti number of the fixed points.

    Inverting the Euler class identifies the cohomology with that of the
    fixed-point set tensored with the localized point ring.
    """
    return len(basis.generators) == sum(fixed_betti)


# -- JSON ----------------------------------------------------------------------


def complex_to_json(complex_: RepComplex) -> dict:
    cells = []
    for cell in complex_.cells:
        entry = {"name": cell.name, "rep": cell.rep.to_json(complex_.prime)}
        dmap = complex_.boundaries.get(cell.name)
        if dmap:
            entry["boundary"] = [
                dict(gen=name, **elt.to_json()) for name, elt in dmap.items()
            ]
        cells.append(entry)
    return {"p": complex_.prime.p, "cells": cells}


def complex_from_json(data: dict) -> RepComplex:
    prime = Prime(int(data["p"]))
    cells = []
    boundaries = {}
    for entry in data["cells"]:
        name = str(entry["name"])
        rep = RealRep.from_json(prime, entry.get("rep", {}))
        cells.append(RepCell(name, rep))
        if entry.get("boundary"):
            dmap = {}
            for bentry in entry["boundary"]:
                dmap[str(bentry["gen"])] = pr.element_from_json(prime, bentry)
            boundaries[name] = dmap
    return RepComplex(prime, cells, boundaries)
