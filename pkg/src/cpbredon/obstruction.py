"""Non-existence results for equivariant maps between free C_p-spaces.

All verdicts are one-sided: NoMap comes with re-checkable algebraic
evidence, everything else is Unknown.  The two mechanisms are the
vanishing of a representation-sphere cohomology group against a nonzero
Euler-class action, and monotonicity of the annihilation index under
equivariant maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import free_space as fs
from . import point_ring as pr
from .ro_degree import Prime, RealRep, RODegree, dimension, reduce, rep_dimension

NO_MAP = "NoMap"
UNKNOWN = "Unknown"


@dataclass
class Verdict:
    outcome: str
    evidence: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"outcome": self.outcome, "evidence": self.evidence}


def sphere_vanishing(prime: Prime, rep: RealRep) -> bool:
    """Multiplication by the Euler class is an isomorphism onto its degree.

    For a fixed-point-free representation the Euler class spans its degree
    and multiplies the unit to a generator, so the unit sphere's
    cohomology vanishes in the representation's own degree by exactness.
    """
    if rep.trivial:
        raise ValueError("representation must be fixed-point free")
    euler = pr.euler_class(prime, rep)
    degree = reduce(prime, rep)
    if pr.basis(prime, RODegree(0, 0)) is None or pr.rank(prime, degree) != 1:
        return False
    image = pr.multiply(pr.one(prime), euler)
    return (not image.is_zero()) and image.monomial == pr.basis(prime, degree)


def borsuk_ulam(prime: Prime, v: RealRep, v_prime: RealRep) -> Verdict:
    """No map from the bigger fixed-point-free sphere to the smaller one.

    The difference degree has vanishing point cohomology when the source
    dimension is strictly larger, so the Euler class of the target acts
    nonzero on the source sphere while the target group is zero.
    """
    for rep in (v, v_prime):
        if rep.trivial:
            raise ValueError("spheres must be fixed-point free")
    dim_v, dim_vp = rep_dimension(prime, v), rep_dimension(prime, v_prime)
    if dim_v <= dim_vp:
        return Verdict(UNKNOWN, [{"kind": "dimension_not_decreasing", "dim_source": dim_v, "dim_target": dim_vp}])
    diff = reduce(prime, v_prime) - reduce(prime, v)
    evidence = [
        {"kind": "point_rank_zero", "p": prime.p, "degree": diff.to_json()},
        {"kind": "sphere_vanishing", "p": prime.p, "rep": v_prime.to_json(prime)},
        {"kind": "euler_action_nonzero", "p": prime.p, "rep": v_prime.to_json(prime),
         "degree": reduce(prime, v_prime).to_json()},
    ]
    return Verdict(NO_MAP, evidence)


def index_obstruction(x: fs.FreeSpaceCohomology, y: fs.FreeSpaceCohomology) -> Verdict:
    """No map when the annihilation index of the source exceeds the target's."""
    nx, ny = x.n_invariant(), y.n_invariant()
    evidence = [
        {"kind": "n_invariant", "which": "source", "value": nx},
        {"kind": "n_invariant", "which": "target", "value": ny},
    ]
    if nx > ny:
        return Verdict(NO_MAP, evidence)
    return Verdict(UNKNOWN, evidence)


def _reduced_regular(prime: Prime, copies: int) -> RealRep:
    """copies of the sum of all nontrivial irreducibles, one of each."""
    if prime.is_two:
        return RealRep(sign=copies)
    return RealRep(rotations={i: copies for i in range(1, prime.num_rotations + 1)})


def tverberg(prime: Prime, d: int) -> Verdict:
    """No equivariant map from the N-skeleton of the free contractible space
    to the sphere of d+1 reduced regular summands, N = (p-1)(d+1).

    For odd p the Euler-class power of total degree N acts nonzero on the
    skeleton while the target sphere's group in that degree vanishes.  For
    p = 2 the skeleton contains a free sphere one dimension bigger than
    the target and the sphere-to-sphere comparison applies.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    n_total = (prime.p - 1) * (d + 1)
    target = _reduced_regular(prime, d + 1)
    if prime.is_two:
        source = RealRep(sign=n_total + 1)
        verdict = borsuk_ulam(prime, source, target)
        verdict.evidence.insert(0, {
            "kind": "skeleton_contains_sphere", "p": 2, "skeleton_dim": n_total,
            "rep": source.to_json(prime),
        })
        return verdict
    exponent = n_total // 2
    skeleton = fs.bg_skeleton(prime, n_total)
    acting = pr.element(prime, pr.top(0, exponent, 0))
    acted = skeleton.act(acting, skeleton.unit_class())
    if acted.is_zero():
        return Verdict(UNKNOWN, [{"kind": "euler_power_acts_zero", "exponent": exponent}])
    if not sphere_vanishing(prime, target):
        return Verdict(UNKNOWN, [{"kind": "sphere_vanishing_failed"}])
    evidence = [
        {"kind": "euler_power_acts_nonzero_on_skeleton", "p": prime.p,
         "skeleton_dim": n_total, "exponent": exponent},
        {"kind": "sphere_vanishing", "p": prime.p, "rep": target.to_json(prime)},
    ]
    return Verdict(NO_MAP, evidence)


def recheck(verdict: Verdict, source: fs.FreeSpaceCohomology = None, target: fs.FreeSpaceCohomology = None) -> bool:
    """Recompute every evidence fact of a verdict; True when all hold."""
    for fact in verdict.evidence:
        kind = fact["kind"]
        if kind == "point_rank_zero":
            prime = Prime(fact["p"])
            if pr.rank(prime, RODegree.from_json(fact["degree"])) != 0:
                return False
        elif kind == "sphere_vanishing":
            prime = Prime(fact["p"])
            if not sphere_vanishing(prime, RealRep.from_json(prime, fact["rep"])):
                return False
        elif kind == "euler_action_nonzero":
            prime = Prime(fact["p"])
            rep = RealRep.from_json(prime, fact["rep"])
            image = pr.multiply(pr.one(prime), pr.euler_class(prime, rep))
            if image.is_zero():
                return False
        elif kind == "euler_power_acts_nonzero_on_skeleton":
            prime = Prime(fact["p"])
            skeleton = fs.bg_skeleton(prime, fact["skeleton_dim"])
            acting = pr.element(prime, pr.top(0, fact["exponent"], 0))
            if skeleton.act(acting, skeleton.unit_class()).is_zero():
                return False
        elif kind == "skeleton_contains_sphere":
            prime = Prime(fact["p"])
            rep = RealRep.from_json(prime, fact["rep"])
            if rep_dimension(prime, rep) - 1 > fact["skeleton_dim"]:
                return False
        elif kind == "n_invariant":
            space = source if fact["which"] == "source" else target
            if space is None or space.n_invariant() != fact["value"]:
                return False
        elif kind == "dimension_not_decreasing":
            continue
        else:
            return False
    return True
