"""Commutative group-scheme data over a perfect field and its maximal
finite unipotent quotient.

A commutative algebraic group over a perfect field is recorded by its graded
pieces: an anti-affine (semi-abelian) part, a smooth connected unipotent
part, a torus rank, finite local pieces split into multiplicative (mu-type)
and unipotent (alpha-type) factors, and the finite component group.  The
maximal finite unipotent quotient keeps exactly the local unipotent pieces
and the p-primary part of the component group; everything else admits no
nonzero map to a finite unipotent group and dies.

Extensions are flattened: over a perfect field the quotient only depends on
the graded pieces, so non-split extension data is deliberately not modeled.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact import FiniteAbelianGroup
from .lattice import discriminant_group, root_lattice


def _check_local_orders(p: int, orders: tuple[int, ...], what: str) -> tuple[int, ...]:
    out = []
    for n in orders:
        n = int(n)
        q = n
        while q % p == 0:
            q //= p
        if q != 1 or n < p:
            raise ValueError(f"{what} orders must be powers of {p}, got {n}")
        out.append(n)
    return tuple(sorted(out))


@dataclass(frozen=True)
class GroupSchemeData:
    """Flattened decomposition of a commutative algebraic group scheme."""

    p: int
    abelian_dim: int = 0
    smooth_unipotent_dim: int = 0
    mult_rank: int = 0
    local_mult: tuple[int, ...] = ()
    local_unipotent: tuple[int, ...] = ()
    component_group: FiniteAbelianGroup = field(default_factory=FiniteAbelianGroup)

    def __post_init__(self):
        if self.p < 2 or any(self.p % d == 0 for d in range(2, self.p)):
            raise ValueError(f"{self.p} is not prime")
        for name in ("abelian_dim", "smooth_unipotent_dim", "mult_rank"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        object.__setattr__(
            self, "local_mult", _check_local_orders(self.p, tuple(self.local_mult), "mu")
        )
        object.__setattr__(
            self,
            "local_unipotent",
            _check_local_orders(self.p, tuple(self.local_unipotent), "alpha"),
        )

    def times(self, other: "GroupSchemeData") -> "GroupSchemeData":
        """Product of group schemes, componentwise on the graded pieces."""
        if self.p != other.p:
            raise ValueError("cannot multiply group schemes over different characteristics")
        return GroupSchemeData(
            p=self.p,
            abelian_dim=self.abelian_dim + other.abelian_dim,
            smooth_unipotent_dim=self.smooth_unipotent_dim + other.smooth_unipotent_dim,
            mult_rank=self.mult_rank + other.mult_rank,
            local_mult=self.local_mult + other.local_mult,
            local_unipotent=self.local_unipotent + other.local_unipotent,
            component_group=self.component_group.direct_sum(other.component_group),
        )

    @classmethod
    def from_json(cls, data: dict) -> "GroupSchemeData":
        return cls(
            p=int(data["p"]),
            abelian_dim=int(data.get("abelian_dim", 0)),
            smooth_unipotent_dim=int(data.get("smooth_unipotent_dim", 0)),
            mult_rank=int(data.get("mult_rank", 0)),
            local_mult=tuple(data.get("local_mult", ())),
            local_unipotent=tuple(data.get("local_unipotent", ())),
            component_group=FiniteAbelianGroup.from_orders(data.get("component", ())),
        )

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "abelian_dim": self.abelian_dim,
            "smooth_unipotent_dim": self.smooth_unipotent_dim,
            "mult_rank": self.mult_rank,
            "local_mult": list(self.local_mult),
            "local_unipotent": list(self.local_unipotent),
            "component": list(self.component_group.cyclic_orders),
        }


@dataclass(frozen=True)
class FiniteUnipotentData:
    """Finite unipotent group scheme: local pieces plus an etale p-group."""

    local_pieces: tuple[int, ...]
    etale_p_group: FiniteAbelianGroup

    def __post_init__(self):
        object.__setattr__(self, "local_pieces", tuple(sorted(self.local_pieces)))

    @property
    def order(self) -> int:
        out = self.etale_p_group.order
        for n in self.local_pieces:
            out *= n
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.local_pieces and self.etale_p_group.is_trivial

    def times(self, other: "FiniteUnipotentData") -> "FiniteUnipotentData":
        return FiniteUnipotentData(
            self.local_pieces + other.local_pieces,
            self.etale_p_group.direct_sum(other.etale_p_group),
        )

    def to_json(self) -> dict:
        return {
            "local_pieces": list(self.local_pieces),
            "etale": list(self.etale_p_group.cyclic_orders),
        }

    def __str__(self) -> str:
        parts = [f"alpha-type({n})" for n in self.local_pieces]
        if not self.etale_p_group.is_trivial:
            parts.append(str(self.etale_p_group))
        return " x ".join(parts) if parts else "trivial"


def upsilon(g: GroupSchemeData) -> FiniteUnipotentData:
    """Maximal finite unipotent quotient of a commutative group scheme.

    The abelian, smooth-unipotent and multiplicative pieces all die, the
    local unipotent pieces survive, and the component group contributes its
    p-primary part.
    """
    return FiniteUnipotentData(
        g.local_unipotent, g.component_group.p_primary(g.p)
    )


def component_quotient(phi: FiniteAbelianGroup, p: int) -> FiniteAbelianGroup:
    """Quotient of a finite abelian group by its l-Sylow parts for l != p."""
    return phi.p_primary(p)


def embed_unipotent(u: FiniteUnipotentData, p: int) -> GroupSchemeData:
    """A finite unipotent group scheme regarded as group-scheme data."""
    return GroupSchemeData(
        p=p, local_unipotent=u.local_pieces, component_group=u.etale_p_group
    )


ENRIQUES_KINDS = ("ordinary", "classical", "supersingular")


def enriques_pic_tau(kind: str) -> GroupSchemeData:
    """The order-two group scheme of the Enriques trichotomy in char 2:
    mu_2 for ordinary, Z/2Z for classical and alpha_2 for supersingular."""
    if kind == "ordinary":
        return GroupSchemeData(p=2, local_mult=(2,))
    if kind == "classical":
        return GroupSchemeData(p=2, component_group=FiniteAbelianGroup((2,)))
    if kind == "supersingular":
        return GroupSchemeData(p=2, local_unipotent=(2,))
    raise ValueError(f"unknown Enriques kind {kind!r}; expected one of {ENRIQUES_KINDS}")


def rdp_class_group(kind: str) -> FiniteAbelianGroup:
    """Local class group of a rational double point of the given ADE type.

    Equals the discriminant group of the corresponding root lattice, for
    example cyclic of order four for D5 and trivial for E8.
    """
    if kind.strip().endswith("~"):
        raise ValueError("rational double points have finite (non-affine) type")
    return discriminant_group(root_lattice(kind)).group
