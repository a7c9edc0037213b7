"""Cohomology of free C_p-spaces from their orbit-space data.

A free space enters as the cohomology ring of its orbit space together
with the characteristic class tau of the covering and a Bockstein table.
The full RO-graded cohomology is that ring tensored with an invertible
orientation class, so a homogeneous class is an orbit-degree class times
a power of the periodicity unit.  Point-ring classes act through tau:
the exterior class acts as tau times the unit, the Euler class as
beta(tau) times the unit (as tau times the unit when p = 2).
"""

from __future__ import annotations

from dataclasses import dataclass

from .point_ring import BOTTOM, TOP, RingElement
from .ro_degree import Prime, RODegree, dimension


class OrbitAlgebra:
    """A finite graded-commutative F_p algebra with a Bockstein and tau.

    basis is a list of (name, degree) pairs; mult maps an index pair to a
    dict {index: coefficient}; bockstein maps an index to such a dict.
    Associativity, graded commutativity, unitality and the derivation
    property of the Bockstein are all checked at construction.
    """

    def __init__(self, prime: Prime, basis, mult, unit: str, tau, bockstein):
        self.prime = prime
        self.names = [name for name, _ in basis]
        self.degrees = [int(d) for _, d in basis]
        self.index = {name: i for i, name in enumerate(self.names)}
        if len(self.index) != len(self.names):
            raise ValueError("duplicate basis names")
        self.mult = {k: {i: c % prime.p for i, c in v.items() if c % prime.p} for k, v in mult.items()}
        self.bockstein = {k: {i: c % prime.p for i, c in v.items() if c % prime.p} for k, v in bockstein.items()}
        if unit not in self.index:
            raise ValueError("unit must be a basis element")
        self.unit = self.index[unit]
        # tau may be absent only when the orbit space has no degree-one part
        # (a point), in which case the covering class is zero.
        if tau is None:
            if any(d == 1 for d in self.degrees):
                raise ValueError("tau required when degree-one classes exist")
            self.tau = None
        else:
            if tau not in self.index:
                raise ValueError("tau must be a basis element")
            self.tau = self.index[tau]
        self._validate()

    # -- vector arithmetic ---------------------------------------------------

    def zero(self) -> dict:
        return {}

    def basis_vector(self, i: int) -> dict:
        return {i: 1}

    def add(self, a: dict, b: dict) -> dict:
        out = dict(a)
        for i, c in b.items():
            out[i] = (out.get(i, 0) + c) % self.prime.p
            if not out[i]:
                del out[i]
        return out

    def scale(self, a: dict, c: int) -> dict:
        c %= self.prime.p
        return {i: (v * c) % self.prime.p for i, v in a.items()} if c else {}

    def product(self, a: dict, b: dict) -> dict:
        out = {}
        for i, ci in a.items():
            for j, cj in b.items():
                for k, ck in self.mult.get((i, j), {}).items():
                    out[k] = (out.get(k, 0) + ci * cj * ck) % self.prime.p
        return {k: v for k, v in out.items() if v}

    def beta(self, a: dict) -> dict:
        out = {}
        for i, ci in a.items():
            for k, ck in self.bockstein.get(i, {}).items():
                out[k] = (out.get(k, 0) + ci * ck) % self.prime.p
        return {k: v for k, v in out.items() if v}

    def degree_of(self, a: dict):
        degs = {self.degrees[i] for i in a}
        if len(degs) > 1:
            raise ValueError("inhomogeneous class")
        return degs.pop() if degs else None

    def top_degree(self) -> int:
        return max(self.degrees)

    # -- validation ------------------------------------------------------------

    def _validate(self) -> None:
        p = self.prime.p
        n = len(self.names)
        if self.degrees[self.unit] != 0:
            raise ValueError("unit must have degree 0")
        if self.tau is not None and self.degrees[self.tau] != 1:
            raise ValueError("tau must have degree 1")
        for (i, j), out in self.mult.items():
            d = self.degrees[i] + self.degrees[j]
            for k in out:
                if self.degrees[k] != d:
                    raise ValueError("multiplication is not graded")
        for i, out in self.bockstein.items():
            for k in out:
                if self.degrees[k] != self.degrees[i] + 1:
                    raise ValueError("Bockstein must raise degree by one")
        vecs = [self.basis_vector(i) for i in range(n)]
        for i in range(n):
            if self.product(vecs[self.unit], vecs[i]) != vecs[i] or self.product(vecs[i], vecs[self.unit]) != vecs[i]:
                raise ValueError("unit fails")
        for i in range(n):
            for j in range(n):
                sign = -1 if (self.degrees[i] % 2 and self.degrees[j] % 2) else 1
                if self.product(vecs[i], vecs[j]) != self.scale(self.product(vecs[j], vecs[i]), sign):
                    raise ValueError("not graded commutative")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = self.product(self.product(vecs[i], vecs[j]), vecs[k])
                    rhs = self.product(vecs[i], self.product(vecs[j], vecs[k]))
                    if lhs != rhs:
                        raise ValueError("not associative")
        for i in range(n):
            if self.beta(self.beta(vecs[i])):
                raise ValueError("Bockstein does not square to zero")
            for j in range(n):
                lhs = self.beta(self.product(vecs[i], vecs[j]))
                sign = -1 if self.degrees[i] % 2 else 1
                rhs = self.add(self.product(self.beta(vecs[i]), vecs[j]),
                               self.scale(self.product(vecs[i], self.beta(vecs[j])), sign))
                if lhs != rhs:
                    raise ValueError("Bockstein is not a derivation")

    # -- JSON -------------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "p": self.prime.p,
            "basis": [{"name": nm, "deg": d} for nm, d in zip(self.names, self.degrees)],
            "mult": [[i, j, k, c] for (i, j), out in sorted(self.mult.items()) for k, c in sorted(out.items())],
            "unit": self.names[self.unit],
            "tau": None if self.tau is None else self.names[self.tau],
            "beta": [[i, k, c] for i, out in sorted(self.bockstein.items()) for k, c in sorted(out.items())],
        }

    @staticmethod
    def from_json(data: dict) -> "OrbitAlgebra":
        prime = Prime(int(data["p"]))
        basis = [(str(b["name"]), int(b["deg"])) for b in data["basis"]]
        mult: dict = {}
        for i, j, k, c in data["mult"]:
            mult.setdefault((int(i), int(j)), {})[int(k)] = int(c)
        bockstein: dict = {}
        for i, k, c in data.get("beta", ()):
            bockstein.setdefault(int(i), {})[int(k)] = int(c)
        unit = str(data.get("unit", basis[0][0]))
        tau = data.get("tau")
        return OrbitAlgebra(prime, basis, mult, unit, None if tau is None else str(tau), bockstein)


@dataclass(frozen=True)
class FreeClass:
    """A homogeneous class: an orbit-algebra element times a unit power."""

    coeffs: tuple  # sorted tuple of (basis index, coefficient)
    upower: int

    def is_zero(self) -> bool:
        return not self.coeffs


def _freeze(vec: dict, upower: int) -> FreeClass:
    if not vec:
        return FreeClass((), 0)
    return FreeClass(tuple(sorted(vec.items())), upower)


class FreeSpaceCohomology:
    """RO-graded cohomology of a free space, queried through its orbit data."""

    def __init__(self, orbit: OrbitAlgebra):
        self.orbit = orbit
        self.prime = orbit.prime

    def rank(self, degree: RODegree) -> int:
        """F_p-rank in a degree; only the total dimension matters."""
        d = dimension(self.prime, degree)
        return sum(1 for deg in self.orbit.degrees if deg == d)

    def classes(self, degree: RODegree):
        """Basis classes in a degree, as orbit classes times the forced unit power."""
        d = dimension(self.prime, degree)
        return [
            _freeze(self.orbit.basis_vector(i), degree.n)
            for i, deg in enumerate(self.orbit.degrees)
            if deg == d
        ]

    def unit_class(self) -> FreeClass:
        return _freeze(self.orbit.basis_vector(self.orbit.unit), 0)

    def act(self, r: RingElement, c: FreeClass) -> FreeClass:
        """Action of a point-ring element; divisible classes act as zero."""
        if r.prime != self.prime:
            raise ValueError("mismatched primes")
        if r.is_zero() or c.is_zero():
            return FreeClass((), 0)
        mono = r.monomial
        if mono.cone == BOTTOM:
            return FreeClass((), 0)
        vec = dict(c.coeffs)
        vec = self.orbit.scale(vec, r.coeff)
        tau = self.orbit.zero() if self.orbit.tau is None else self.orbit.basis_vector(self.orbit.tau)
        if self.prime.is_two:
            for _ in range(mono.j):
                vec = self.orbit.product(tau, vec)
            shift = mono.j + mono.k
        else:
            beta_tau = self.orbit.beta(tau)
            for _ in range(mono.kappa):
                vec = self.orbit.product(tau, vec)
            for _ in range(mono.j):
                vec = self.orbit.product(beta_tau, vec)
            shift = mono.kappa + mono.j + mono.k
        if not vec:
            return FreeClass((), 0)
        return _freeze(vec, c.upower + shift)

    def _annihilator_element(self, value: int) -> dict:
        """tau^eps * beta(tau)^j for the unique (eps, j) of total weight value."""
        tau = self.orbit.zero() if self.orbit.tau is None else self.orbit.basis_vector(self.orbit.tau)
        if self.prime.is_two:
            out = self.orbit.basis_vector(self.orbit.unit)
            for _ in range(value):
                out = self.orbit.product(out, tau)
            return out
        eps, j = value % 2, value // 2
        out = self.orbit.basis_vector(self.orbit.unit)
        if eps:
            out = self.orbit.product(out, tau)
        beta_tau = self.orbit.beta(tau)
        for _ in range(j):
            out = self.orbit.product(out, beta_tau)
        return out

    def n_invariant(self) -> int:
        """Least weight of an exterior-Euler monomial acting as zero.

        Weight counts the total dimension of the acting class: 2j + eps for
        kappa^eps a^j at odd p, j for a^j at p = 2.  Finite dimensionality
        guarantees termination.
        """
        bound = self.orbit.top_degree() + 2
        for value in range(bound + 1):
            elt = self._annihilator_element(value)
            if all(not self.orbit.product(elt, self.orbit.basis_vector(i)) for i in range(len(self.orbit.names))):
                return value
        raise AssertionError("no annihilating power below the dimension bound")

    def fh_first_index(self) -> int:
        """First degree where the classifying-space map has a kernel.

        The classifying space has rank one in each degree; the generator of
        degree i maps to tau^eps beta(tau)^j with 2j + eps = i (tau^i for
        p = 2), so the kernel starts where that product first vanishes.
        """
        bound = self.orbit.top_degree() + 2
        for i in range(1, bound + 1):
            if not self._annihilator_element(i):
                return i
        raise AssertionError("no kernel below the dimension bound")


# -- builders ----------------------------------------------------------------


def lens_space(prime: Prime, k: int) -> FreeSpaceCohomology:
    """Free sphere on k rotations, through its orbit (lens) space.

    Odd p: an exterior class x of degree 1 and a truncated polynomial
    class y of degree 2 with y^k = 0, tau = x, beta(x) = y.  For p = 2 the
    orbit space of k sign copies is handled by real_projective(k).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if prime.is_two:
        return real_projective(k)
    names = []
    for j in range(k):
        for eps in (0, 1):
            names.append(((eps, j), eps + 2 * j))
    return _monomial_algebra(prime, names, x_square_zero=True, y_power=k, truncate=None)


def bg_skeleton(prime: Prime, dim: int) -> FreeSpaceCohomology:
    """Skeleton of the classifying space: its ring truncated above dim."""
    if dim < 0:
        raise ValueError("dimension must be >= 0")
    if prime.is_two:
        return real_projective(dim + 1)
    names = []
    for j in range(dim // 2 + 1):
        for eps in (0, 1):
            if eps + 2 * j <= dim:
                names.append(((eps, j), eps + 2 * j))
    return _monomial_algebra(prime, names, x_square_zero=True, y_power=None, truncate=dim)


def real_projective(k: int) -> FreeSpaceCohomology:
    """Truncated polynomial ring on a degree-one class w with w^k = 0 (p=2)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    prime = Prime(2)
    basis = [(f"w{j}" if j else "1", j) for j in range(k)]
    index = {j: i for i, (_, j) in enumerate(basis)}
    mult = {}
    for a in range(k):
        for b in range(k):
            if a + b < k:
                mult[(index[a], index[b])] = {index[a + b]: 1}
    # beta(w^j) = j * w^{j+1}: tau = w with beta(tau) = tau^2
    bockstein = {}
    for j in range(1, k):
        if j % 2 and j + 1 < k:
            bockstein[index[j]] = {index[j + 1]: 1}
    algebra = OrbitAlgebra(prime, basis, mult, "1", "w1" if k > 1 else None, bockstein)
    return FreeSpaceCohomology(algebra)


def _monomial_algebra(prime: Prime, gens, x_square_zero: bool, y_power, truncate) -> FreeSpaceCohomology:
    """Algebra on monomials x^eps y^j with the given truncations (odd p)."""
    keys = [key for key, _ in gens]
    basis = []
    for (eps, j), deg in gens:
        name = "1" if (eps, j) == (0, 0) else ("x" if j == 0 else (f"y{j}" if eps == 0 else f"xy{j}"))
        basis.append((name, deg))
    index = {key: i for i, key in enumerate(keys)}
    keyset = set(keys)

    def reduce_key(eps, j):
        if x_square_zero and eps >= 2:
            return None
        if y_power is not None and j >= y_power:
            return None
        if truncate is not None and eps + 2 * j > truncate:
            return None
        return (eps, j) if (eps, j) in keyset else None

    mult = {}
    for (e1, j1) in keys:
        for (e2, j2) in keys:
            key = reduce_key(e1 + e2, j1 + j2)
            if key is not None:
                mult[(index[(e1, j1)], index[(e2, j2)])] = {index[key]: 1}
    bockstein = {}
    for (eps, j) in keys:
        if eps:
            key = reduce_key(0, j + 1)
            if key is not None:
                bockstein[index[(eps, j)]] = {index[key]: 1}
    tau = "x" if any(name == "x" for name, _ in basis) else None
    algebra = OrbitAlgebra(prime, basis, mult, "1", tau, bockstein)
    return FreeSpaceCohomology(algebra)
