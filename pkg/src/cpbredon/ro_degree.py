"""Degrees for RO(C_p)-graded cohomology, reduced to a single rotation class.

Every nontrivial irreducible real representation of C_p induces the same
twist on constant mod-p cohomology, so a virtual representation is recorded
only through its trivial part m and its total rotation count n.  For p = 2
the sign representation plays the rotation's role.
"""

from __future__ import annotations

from dataclasses import dataclass, field


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Prime:
    """The order of the acting cyclic group."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_two(self) -> bool:
        return self.p == 2

    @property
    def num_rotations(self) -> int:
        """Number of distinct nontrivial irreducibles, (p-1)/2 for odd p."""
        return 1 if self.p == 2 else (self.p - 1) // 2


@dataclass(frozen=True)
class RODegree:
    """Reduced virtual degree m + n*xi (m + n*sigma when p = 2)."""

    m: int
    n: int

    def __add__(self, other: "RODegree") -> "RODegree":
        return RODegree(self.m + other.m, self.n + other.n)

    def __sub__(self, other: "RODegree") -> "RODegree":
        return RODegree(self.m - other.m, self.n - other.n)

    def __neg__(self) -> "RODegree":
        return RODegree(-self.m, -self.n)

    def scaled(self, c: int) -> "RODegree":
        return RODegree(c * self.m, c * self.n)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n}

    @staticmethod
    def from_json(data: dict) -> "RODegree":
        return RODegree(int(data["m"]), int(data["n"]))


ZERO = RODegree(0, 0)
ONE = RODegree(1, 0)  # the cohomological suspension step


@dataclass(frozen=True)
class RealRep:
    """An actual orthogonal representation: trivial summands plus rotations.

    rotations maps a rotation index i (1 <= i <= (p-1)/2) to its
    multiplicity; sign is the sign-representation multiplicity for p = 2.
    """

    trivial: int = 0
    rotations: dict = field(default_factory=dict)
    sign: int = 0

    def __post_init__(self):
        if self.trivial < 0 or self.sign < 0:
            raise ValueError("multiplicities must be nonnegative")
        for i, mult in self.rotations.items():
            if i < 1 or mult < 0:
                raise ValueError("bad rotation entry (%s, %s)" % (i, mult))

    def rotation_total(self) -> int:
        return sum(self.rotations.values())

    def to_json(self, prime: Prime) -> dict:
        if prime.is_two:
            return {"trivial": self.trivial, "sigma": self.sign}
        return {
            "trivial": self.trivial,
            "rotations": {str(i): m for i, m in sorted(self.rotations.items())},
        }

    @staticmethod
    def from_json(prime: Prime, data: dict) -> "RealRep":
        trivial = int(data.get("trivial", 0))
        if prime.is_two:
            rep = RealRep(trivial=trivial, sign=int(data.get("sigma", 0)))
        else:
            rotations = {int(i): int(m) for i, m in data.get("rotations", {}).items()}
            rep = RealRep(trivial=trivial, rotations=rotations)
        validate_rep(prime, rep)
        return rep


def validate_rep(prime: Prime, rep: RealRep) -> None:
    """Check the representation data is admissible for this group order."""
    if prime.is_two:
        if rep.rotations:
            raise ValueError("rotations are not C_2 representations; use sign")
    else:
        if rep.sign:
            raise ValueError("sign representation only exists for p = 2")
        for i in rep.rotations:
            if i > prime.num_rotations:
                raise ValueError(f"rotation index {i} out of range for p={prime.p}")


def rep_dimension(prime: Prime, rep: RealRep) -> int:
    """Real dimension of the representation."""
    validate_rep(prime, rep)
    if prime.is_two:
        return rep.trivial + rep.sign
    return rep.trivial + 2 * rep.rotation_total()


def reduce(prime: Prime, plus: RealRep, minus: RealRep = RealRep()) -> RODegree:
    """Reduced degree of the virtual representation plus - minus.

    All rotation classes are identified with a single one; only total
    multiplicities survive.
    """
    validate_rep(prime, plus)
    validate_rep(prime, minus)
    m = plus.trivial - minus.trivial
    if prime.is_two:
        n = plus.sign - minus.sign
    else:
        n = plus.rotation_total() - minus.rotation_total()
    return RODegree(m, n)


def dimension(prime: Prime, degree: RODegree) -> int:
    """Total (virtual) real dimension of the degree."""
    if prime.is_two:
        return degree.m + degree.n
    return degree.m + 2 * degree.n


def fixed_dimension(degree: RODegree) -> int:
    """Dimension of the fixed-point part, the trivial coefficient."""
    return degree.m


def add(a: RODegree, b: RODegree) -> RODegree:
    return a + b


def negate(a: RODegree) -> RODegree:
    return -a
