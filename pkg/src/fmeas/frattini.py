"""Frattini subgroups, cover checking, and the embedding property.

The cover check runs two independent criteria on every call and insists
they agree: the kernel must lie inside the Frattini subgroup of the
source, and no proper subgroup of the source may map onto the target.
Both depend only on the source group and the kernel, so results are
memoized per (source, kernel).
"""

from __future__ import annotations

import weakref
from typing import Optional

from .groups import (
    DEFAULT_ORDER_CAP,
    CapExceeded,
    FiniteGroup,
    GroupError,
    GroupHom,
    Subgroup,
    all_subgroups,
    epimorphisms,
    image_classes,
    subgroup_masks_within,
)

_frattini_cache: "weakref.WeakKeyDictionary[FiniteGroup, FrattiniReport]" = (
    weakref.WeakKeyDictionary()
)
_cover_cache: "weakref.WeakKeyDictionary[FiniteGroup, dict[int, bool]]" = (
    weakref.WeakKeyDictionary()
)


class FrattiniReport:
    """Frattini subgroup together with the maximal subgroups defining it."""

    __slots__ = ("frattini_subgroup", "maximal_subgroups")

    def __init__(self, frattini_subgroup: Subgroup, maximal_subgroups: tuple[Subgroup, ...]):
        self.frattini_subgroup = frattini_subgroup
        self.maximal_subgroups = maximal_subgroups

    def __repr__(self) -> str:
        return "FrattiniReport(order=%d, n_maximal=%d)" % (
            self.frattini_subgroup.order,
            len(self.maximal_subgroups),
        )


def frattini_subgroup(G: FiniteGroup, *, order_cap: int = DEFAULT_ORDER_CAP) -> FrattiniReport:
    """Intersection of all maximal proper subgroups; all of G when G is trivial."""
    cached = _frattini_cache.get(G)
    if cached is not None:
        return cached
    if G.order > order_cap:
        raise CapExceeded("Frattini computation capped at order %d" % order_cap)
    subs = all_subgroups(G)
    proper = [H for H in subs if H.order < G.order]
    maximal = tuple(
        H
        for H in proper
        if not any(
            H.mask != K.mask and H.mask & K.mask == H.mask for K in proper
        )
    )
    if maximal:
        mask = (1 << G.order) - 1
        for H in maximal:
            mask &= H.mask
        phi = Subgroup(G, G.elems_of_mask(mask))
    else:
        phi = Subgroup(G, range(G.order))
    report = FrattiniReport(phi, maximal)
    _frattini_cache[G] = report
    return report


def is_frattini_cover(phi: GroupHom) -> bool:
    """True iff phi is surjective with kernel inside the Frattini subgroup.

    Verified two ways on every distinct (source, kernel): the kernel
    criterion, and the criterion that only the full source maps onto the
    whole target.  Disagreement would be an internal error.
    """
    if not phi.is_surjective:
        return False
    G = phi.source
    kernel_mask = 0
    for a in range(G.order):
        if phi.image_of[a] == 0:
            kernel_mask |= 1 << a
    memo = _cover_cache.get(G)
    if memo is None:
        memo = {}
        _cover_cache[G] = memo
    got = memo.get(kernel_mask)
    if got is not None:
        return got
    by_kernel = kernel_mask & ~frattini_subgroup(G).frattini_subgroup.mask == 0
    # independent route: H0 = G  <=>  H0 maps onto the target
    full_target = (1 << phi.target.order) - 1
    full_source = (1 << G.order) - 1
    by_subgroups = True
    for mask in subgroup_masks_within(G, full_source):
        onto = phi.image_mask(mask) == full_target
        if onto != (mask == full_source):
            by_subgroups = False
            break
    if by_kernel != by_subgroups:
        raise RuntimeError(
            "internal error: kernel criterion and subgroup criterion disagree"
        )
    memo[kernel_mask] = by_kernel
    return by_kernel


def is_frattini_restriction(H: Subgroup, r: GroupHom) -> bool:
    """True iff no proper subgroup of H still maps onto the target of r."""
    G = H.group
    if r.source is not G:
        raise GroupError("r is not defined on the parent group of H")
    full_target = (1 << r.target.order) - 1
    if r.image_mask(H.mask) != full_target:
        raise GroupError("restriction of r to H is not surjective")
    for mask in subgroup_masks_within(G, H.mask):
        if mask != H.mask and r.image_mask(mask) == full_target:
            return False
    return True


class EmbeddingReport:
    """Outcome of the embedding-property search, with witnesses on failure.

    witness is None when the property holds, else a violating diagram
    (A, B, alpha, beta): no epimorphism gamma from G onto B satisfies
    beta o gamma = alpha.
    """

    __slots__ = ("holds", "witness")

    def __init__(
        self,
        holds: bool,
        witness: Optional[tuple[FiniteGroup, FiniteGroup, GroupHom, GroupHom]],
    ):
        self.holds = holds
        self.witness = witness

    def __bool__(self) -> bool:
        return self.holds

    def __repr__(self) -> str:
        if self.holds:
            return "EmbeddingReport(holds=True)"
        A, B, _, _ = self.witness
        return "EmbeddingReport(holds=False, A order %d, B order %d)" % (
            A.order,
            B.order,
        )


def has_embedding_property(G: FiniteGroup, bound: int = 24) -> EmbeddingReport:
    """Exhaustive test over all diagrams alpha: G ->> A, beta: B ->> A.

    B runs over the images of G. For each beta the set of compositions
    beta o gamma over all gamma: G ->> B is indexed once, then every
    alpha is a lookup.
    """
    if G.order > bound:
        raise CapExceeded("embedding-property search capped at order %d" % bound)
    images = image_classes(G)
    for A in images:
        alphas = epimorphisms(G, A)
        for B in images:
            if B.order % A.order != 0:
                continue
            betas = epimorphisms(B, A)
            if not betas:
                continue
            gammas = epimorphisms(G, B)
            for beta in betas:
                reachable = {
                    tuple(beta.image_of[v] for v in gamma.image_of)
                    for gamma in gammas
                }
                for alpha in alphas:
                    if alpha.image_of not in reachable:
                        return EmbeddingReport(False, (A, B, alpha, beta))
    return EmbeddingReport(True, None)
