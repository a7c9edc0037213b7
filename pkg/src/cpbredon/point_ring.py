"""The RO(C_p)-graded cohomology ring of a point with constant Z/p coefficients.

Additively the ring splits into a polynomial "top cone" and a divisible
square-zero "bottom cone".  Writing a for the Euler class of the rotation
(degree (0,1)), u for its orientation class (degree (-2,1) for odd p,
(-1,1) for p = 2) and, for odd p only, kappa for the exterior class of
degree (-1,1) with kappa^2 = 0:

  top cone      kappa^eps * a^j * u^k
  bottom cone   S^-1 * 1/(u^j a^k)          (j, k >= 1)
                S^-1 * kappa/(u^j a^k)      (j, k >= 1, odd p only)

Every graded piece has rank at most one, so elements are scalar multiples
of a canonical basis monomial.  The suspension symbol S^-1 contributes +1
to cohomological degree; all structure constants and generators are
normalized to +1, which a rank-one-per-degree ring always permits.

Degree dictionary (cohomological (m, n)):

  p odd:  Top(eps,j,k)      <-> (-eps - 2k,  eps + j + k)
          BottomPlain(j,k)  <-> (2j + 1,     -j - k)
          BottomKappa(j,k)  <-> (2j,         1 - j - k)
  p = 2:  Top(j,k)          <-> (-k,         j + k)
          BottomPlain(j,k)  <-> (j + 1,      -j - k)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .ro_degree import ONE, Prime, RealRep, RODegree, dimension, reduce, rep_dimension

TOP = "top"
BOTTOM = "bottom"


@dataclass(frozen=True)
class ConeMonomial:
    """Canonical basis monomial; kappa is the exterior-class exponent.

    For top-cone monomials j is the a-exponent and k the u-exponent; for
    bottom-cone ones they are the u- and a-exponents of the denominator.
    """

    cone: str
    kappa: int
    j: int
    k: int

    def to_json(self) -> dict:
        return {"cone": self.cone, "kappa": self.kappa, "j": self.j, "k": self.k}

    @staticmethod
    def from_json(data: dict) -> "ConeMonomial":
        return ConeMonomial(str(data["cone"]), int(data["kappa"]), int(data["j"]), int(data["k"]))


def top(eps: int, j: int, k: int) -> ConeMonomial:
    if eps not in (0, 1) or j < 0 or k < 0:
        raise ValueError(f"bad top monomial ({eps},{j},{k})")
    return ConeMonomial(TOP, eps, j, k)


def bottom_plain(j: int, k: int) -> ConeMonomial:
    if j < 1 or k < 1:
        raise ValueError(f"bad bottom monomial ({j},{k})")
    return ConeMonomial(BOTTOM, 0, j, k)


def bottom_kappa(j: int, k: int) -> ConeMonomial:
    if j < 1 or k < 1:
        raise ValueError(f"bad bottom monomial ({j},{k})")
    return ConeMonomial(BOTTOM, 1, j, k)


UNIT = top(0, 0, 0)


def check_monomial(prime: Prime, mono: ConeMonomial) -> None:
    if mono.cone not in (TOP, BOTTOM):
        raise ValueError(f"unknown cone {mono.cone!r}")
    if mono.kappa not in (0, 1):
        raise ValueError("kappa exponent must be 0 or 1")
    if prime.is_two and mono.kappa:
        raise ValueError("no exterior class for p = 2")
    if mono.cone == TOP and (mono.j < 0 or mono.k < 0):
        raise ValueError("negative top exponents")
    if mono.cone == BOTTOM and (mono.j < 1 or mono.k < 1):
        raise ValueError("bottom exponents must be >= 1")


def monomial_degree(prime: Prime, mono: ConeMonomial) -> RODegree:
    """Cohomological degree of a monomial, per the degree dictionary."""
    check_monomial(prime, mono)
    eps, j, k = mono.kappa, mono.j, mono.k
    if prime.is_two:
        if mono.cone == TOP:
            return RODegree(-k, j + k)
        return RODegree(j + 1, -j - k)
    if mono.cone == TOP:
        return RODegree(-eps - 2 * k, eps + j + k)
    if eps == 0:
        return RODegree(2 * j + 1, -j - k)
    return RODegree(2 * j, 1 - j - k)


def basis(prime: Prime, degree: RODegree) -> Optional[ConeMonomial]:
    """The canonical basis monomial in a given degree, or None if the group is 0."""
    m, n = degree.m, degree.n
    if prime.is_two:
        if m <= 0:
            j, k = n + m, -m
            if j >= 0:
                return top(0, j, k)
            return None
        j = m - 1
        k = -n - j
        if j >= 1 and k >= 1:
            return bottom_plain(j, k)
        return None
    if m <= 0:
        eps = (-m) % 2
        k = (-m - eps) // 2
        j = n - eps - k
        if j >= 0:
            return top(eps, j, k)
        return None
    if m % 2 == 1:
        j = (m - 1) // 2
        k = -n - j
        if j >= 1 and k >= 1:
            return bottom_plain(j, k)
        return None
    j = m // 2
    k = 1 - n - j
    if j >= 1 and k >= 1:
        return bottom_kappa(j, k)
    return None


def rank(prime: Prime, degree: RODegree) -> int:
    return 0 if basis(prime, degree) is None else 1


@dataclass(frozen=True)
class RingElement:
    """A scalar multiple of a basis monomial, tagged with its degree."""

    prime: Prime
    degree: RODegree
    coeff: int
    monomial: Optional[ConeMonomial]

    def is_zero(self) -> bool:
        return self.coeff == 0

    def to_json(self) -> dict:
        data = {"coeff": self.coeff}
        if self.monomial is not None:
            data.update(self.monomial.to_json())
        else:
            data["degree"] = self.degree.to_json()
        return data


def element(prime: Prime, mono: ConeMonomial, coeff: int = 1) -> RingElement:
    coeff %= prime.p
    if coeff == 0:
        return RingElement(prime, monomial_degree(prime, mono), 0, None)
    return RingElement(prime, monomial_degree(prime, mono), coeff, mono)


def zero(prime: Prime, degree: RODegree) -> RingElement:
    return RingElement(prime, degree, 0, None)


def one(prime: Prime) -> RingElement:
    return element(prime, UNIT)


def element_from_json(prime: Prime, data: dict) -> RingElement:
    coeff = int(data.get("coeff", 1))
    if "cone" in data:
        return element(prime, ConeMonomial.from_json(data), coeff)
    if coeff % prime.p:
        raise ValueError("nonzero element needs a monomial")
    return zero(prime, RODegree.from_json(data["degree"]))


def _multiply_monomials(prime: Prime, x: ConeMonomial, y: ConeMonomial) -> Optional[ConeMonomial]:
    if x.cone == BOTTOM and y.cone == BOTTOM:
        return None
    if x.cone == BOTTOM:
        x, y = y, x
    if y.cone == TOP:
        eps = x.kappa + y.kappa
        if eps >= 2:
            return None
        return top(eps, x.j + y.j, x.k + y.k)
    # top times bottom: cancel against the denominator
    if x.kappa and y.kappa:
        return None
    j, k = y.j - x.k, y.k - x.j
    if j < 1 or k < 1:
        return None
    return bottom_kappa(j, k) if (x.kappa or y.kappa) else bottom_plain(j, k)


def multiply(x: RingElement, y: RingElement) -> RingElement:
    """Product in the point ring; bottom-cone products vanish."""
    if x.prime != y.prime:
        raise ValueError("mismatched primes")
    prime = x.prime
    degree = x.degree + y.degree
    if x.is_zero() or y.is_zero():
        return zero(prime, degree)
    mono = _multiply_monomials(prime, x.monomial, y.monomial)
    if mono is None:
        return zero(prime, degree)
    return RingElement(prime, degree, (x.coeff * y.coeff) % prime.p, mono)


def power(x: RingElement, e: int) -> RingElement:
    result = one(x.prime)
    for _ in range(e):
        result = multiply(result, x)
    return result


def bockstein(x: RingElement) -> RingElement:
    """The mod-p Bockstein, a degree (1,0) derivation squaring to zero.

    It kills the Euler class; it sends the exterior class to the Euler
    class (odd p) and the orientation class to the Euler class (p = 2).
    On divisible classes the same derivation rules apply, with images
    outside the cones read as zero.
    """
    prime = x.prime
    degree = x.degree + ONE
    if x.is_zero():
        return zero(prime, degree)
    mono = x.monomial
    if prime.is_two:
        if mono.cone == TOP:
            if mono.k % 2 == 1:
                return element(prime, top(0, mono.j + 1, mono.k - 1), x.coeff)
            return zero(prime, degree)
        if mono.j % 2 == 1 and mono.k >= 2:
            return element(prime, bottom_plain(mono.j + 1, mono.k - 1), x.coeff)
        return zero(prime, degree)
    if mono.cone == TOP:
        if mono.kappa:
            return element(prime, top(0, mono.j + 1, mono.k), x.coeff)
        return zero(prime, degree)
    if mono.kappa and mono.k >= 2:
        return element(prime, bottom_plain(mono.j, mono.k - 1), x.coeff)
    return zero(prime, degree)


def leibniz_sign(x: RingElement) -> int:
    """Koszul sign of x in the Bockstein derivation law.

    With every structure constant normalized to +1 the stored products are
    strictly commutative, and the derivation law holds with the parity of
    the underlying (desuspended) class: divisible classes carry a
    suspension of odd cohomological shift, which flips their parity
    relative to the total dimension.
    """
    d = dimension(x.prime, x.degree)
    if x.monomial is not None and x.monomial.cone == BOTTOM:
        d += 1
    return -1 if d % 2 else 1


def euler_class(prime: Prime, rep: RealRep) -> RingElement:
    """Euler class of a fixed-point-free representation, normalized to +1.

    This is the class of the inclusion of the fixed sphere into the
    representation sphere; it is a power of the rotation's Euler class.
    """
    if rep.trivial:
        raise ValueError("Euler class requires a fixed-point-free representation")
    d = rep_dimension(prime, rep)
    if prime.is_two:
        return element(prime, top(d, 0, 0))
    return element(prime, top(0, d // 2, 0))


def orientation_class(prime: Prime, rep: RealRep) -> RingElement:
    """Orientation class of an orientable representation, normalized to +1."""
    if prime.is_two:
        if rep.sign % 2:
            raise ValueError("odd sign multiplicity is non-orientable")
        return element(prime, top(0, 0, rep.sign))
    reduce(prime, rep)  # validates
    return element(prime, top(0, 0, rep.rotation_total()))


def format_monomial(prime: Prime, mono: Optional[ConeMonomial]) -> str:
    """Render a monomial the way hand calculations are usually written."""
    if mono is None:
        return "0"
    def powstr(sym, e):
        if e == 0:
            return ""
        if e == 1:
            return sym
        return f"{sym}^{e}"
    if mono.cone == TOP:
        parts = [s for s in (powstr("kappa", mono.kappa), powstr("a", mono.j), powstr("u", mono.k)) if s]
        return " ".join(parts) if parts else "1"
    num = "kappa" if mono.kappa else "1"
    return f"S^-1 {num}/({powstr('u', mono.j) or '1'} {powstr('a', mono.k) or '1'})"


def format_element(x: RingElement) -> str:
    if x.is_zero():
        return "0"
    mono = format_monomial(x.prime, x.monomial)
    if x.coeff == 1:
        return mono
    return f"{x.coeff}*{mono}"
