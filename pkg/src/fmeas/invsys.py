"""Finite groups as many-sorted coset structures.

A complete system collects the quotients G/N of one finite group into a
single relational structure: the universe is the disjoint union of the
coset spaces, C relates a coset to its image under the canonical
projection wherever N is contained in M, the order relation compares
elements by that containment alone, and P is the multiplication graph
within each quotient.  Complete subsystems correspond to families of
normal subgroups that contain G and are closed under intersection and
under passing to larger normal subgroups; the dual group of a subsystem
recovers G modulo the intersection of its family.
"""

from __future__ import annotations

from typing import Dict, Iterable, Sequence, Tuple

from .groups import (
    CapExceeded,
    FiniteGroup,
    GroupError,
    GroupHom,
    Subgroup,
    all_subgroups,
    quotient,
)

SYSTEM_ORDER_CAP = 64

Element = Tuple[int, int]  # (mask of the normal subgroup, least coset element)


def normal_family(G: FiniteGroup) -> tuple[Subgroup, ...]:
    """All normal subgroups, ordered by index then element tuple."""
    out = [H for H in all_subgroups(G) if H.is_normal()]
    out.sort(key=lambda H: (G.order // H.order, H.elements))
    return tuple(out)


class CompleteSystem:
    """Cosets of a closed family of normal subgroups with C, <=, P.

    Universe elements are (mask, rep) pairs naming the coset rep*N by
    the least element it contains, so a subsystem's universe is a
    literal subset of the parent's.  Relations are explicit tuple sets,
    which keeps the axioms checkable by enumeration; validate() does
    exactly that.
    """

    __slots__ = (
        "group",
        "normals",
        "universe",
        "compat",
        "leq",
        "prod",
        "one",
        "_rep_in",
        "_id_of",
    )

    def __init__(self, group: FiniteGroup, normals: Iterable[Subgroup]):
        family = list(normals)
        masks = set()
        for N in family:
            if N.group is not group:
                raise GroupError("subgroup does not live in the given group")
            if not N.is_normal():
                raise GroupError("family member %r is not normal" % (N,))
            if N.mask in masks:
                raise GroupError("duplicate normal subgroup in the family")
            masks.add(N.mask)
        full = (1 << group.order) - 1
        if full not in masks:
            raise GroupError("the family must contain the whole group")
        for a in masks:
            for b in masks:
                if a & b not in masks:
                    raise GroupError("the family is not closed under intersection")
        for M in normal_family(group):
            if M.mask not in masks and any(m & M.mask == m for m in masks):
                raise GroupError("the family is not upward closed")
        family.sort(key=lambda H: (group.order // H.order, H.elements))
        self.group = group
        self.normals = tuple(family)
        self._id_of = {N.mask: i for i, N in enumerate(self.normals)}

        # least representative of g's coset, per family member
        rep_in: Dict[int, tuple[int, ...]] = {}
        for N in self.normals:
            _, pi = quotient(group, N)
            least: Dict[int, int] = {}
            row = [0] * group.order
            for g in range(group.order):
                c = pi.image_of[g]
                if c not in least:
                    least[c] = g
                row[g] = least[c]
            rep_in[N.mask] = tuple(row)
        self._rep_in = rep_in

        universe: list[Element] = []
        for N in self.normals:
            reps = sorted(set(rep_in[N.mask]))
            universe.extend((N.mask, r) for r in reps)
        self.universe = tuple(universe)
        self.one = (full, 0)

        compat = set()
        leq = set()
        for N in self.normals:
            for M in self.normals:
                if N.mask & M.mask != N.mask:
                    continue
                to_m = rep_in[M.mask]
                for a in sorted(set(rep_in[N.mask])):
                    compat.add(((N.mask, a), (M.mask, to_m[a])))
                    for b in sorted(set(rep_in[M.mask])):
                        leq.add(((N.mask, a), (M.mask, b)))
        prod = set()
        t = group.table
        for N in self.normals:
            to_n = rep_in[N.mask]
            reps = sorted(set(to_n))
            for a in reps:
                for b in reps:
                    prod.add(((N.mask, a), (N.mask, b), (N.mask, to_n[t[a][b]])))
        self.compat = frozenset(compat)
        self.leq = frozenset(leq)
        self.prod = frozenset(prod)

    def __repr__(self) -> str:
        return "CompleteSystem(%d classes, %d elements)" % (
            len(self.normals),
            len(self.universe),
        )

    def sort_of(self, x: Element) -> int:
        """The index [G:N] of the element's class."""
        mask, rep = x
        if (
            mask not in self._id_of
            or not 0 <= rep < self.group.order
            or self._rep_in[mask][rep] != rep
        ):
            raise GroupError("element is not in the universe")
        return self.group.order // bin(mask).count("1")

    def class_reps(self, mask: int) -> tuple[int, ...]:
        return tuple(sorted(set(self._rep_in[mask])))

    def _key(self, x: Element) -> tuple[int, int]:
        return (self._id_of[x[0]], x[1])

    def _name(self, x: Element) -> str:
        return "N#%d rep=%d" % (self._id_of[x[0]], x[1])

    def dump(self) -> str:
        """Deterministic text form: universe lines, then relation tuples."""
        lines = []
        for N in self.normals:
            sort = self.group.order // N.order
            for r in self.class_reps(N.mask):
                lines.append("N#%d rep=%d sort=%d" % (self._id_of[N.mask], r, sort))
        for x, y in sorted(self.compat, key=lambda p: (self._key(p[0]), self._key(p[1]))):
            lines.append("C %s %s" % (self._name(x), self._name(y)))
        for x, y in sorted(self.leq, key=lambda p: (self._key(p[0]), self._key(p[1]))):
            lines.append("<= %s %s" % (self._name(x), self._name(y)))
        for x, y, z in sorted(
            self.prod, key=lambda p: (self._key(p[0]), self._key(p[1]), self._key(p[2]))
        ):
            lines.append("P %s %s %s" % (self._name(x), self._name(y), self._name(z)))
        return "\n".join(lines) + "\n"

    def validate(self) -> None:
        """Model-check the axioms by enumeration; raises on any failure."""
        G = self.group
        elems = set(self.universe)
        if self.one != ((1 << G.order) - 1, 0) or self.one not in elems:
            raise GroupError("the constant is not the coset of the whole group")
        by_mask: Dict[int, list[int]] = {}
        for mask, r in self.universe:
            by_mask.setdefault(mask, []).append(r)
        # each class is a group under P, with the class of 1 as identity
        for mask, reps in by_mask.items():
            pos = {r: i for i, r in enumerate(sorted(reps))}
            k = len(pos)
            table = [[-1] * k for _ in range(k)]
            for x, y, z in self.prod:
                if x[0] == mask:
                    if y[0] != mask or z[0] != mask:
                        raise GroupError("P relates cosets of different classes")
                    if table[pos[x[1]]][pos[y[1]]] != -1:
                        raise GroupError("P is not functional")
                    table[pos[x[1]]][pos[y[1]]] = pos[z[1]]
            if any(v == -1 for row in table for v in row):
                raise GroupError("P is not total on a class")
            if 0 not in pos:
                raise GroupError("a class is missing the coset of the identity")
            FiniteGroup(table)  # raises unless the class is a group
        # C between comparable classes is exactly the projection graph
        seen = {}
        for x, y in self.compat:
            if x[0] & y[0] != x[0]:
                raise GroupError("C crosses an incomparable pair of classes")
            if (x, y[0]) in seen:
                raise GroupError("C is not functional toward a class")
            seen[(x, y[0])] = y
            coset_of_y = {G.table[y[1]][m] for m in G.elems_of_mask(y[0])}
            if x[1] not in coset_of_y:
                raise GroupError("C does not follow the canonical projection")
        for x in elems:
            for mask in by_mask:
                if x[0] & mask == x[0] and (x, mask) not in seen:
                    raise GroupError("C misses a comparable pair")
        # <= compares classes by containment of the normal subgroups
        want = {
            (x, y)
            for x in elems
            for y in elems
            if x[0] & y[0] == x[0]
        }
        if set(self.leq) != want:
            raise GroupError("<= does not match containment of the classes")


def complete_system(G: FiniteGroup, *, order_cap: int = SYSTEM_ORDER_CAP) -> CompleteSystem:
    """The full system over every normal subgroup of G."""
    if G.order > order_cap:
        raise CapExceeded(
            "complete systems capped at group order %d (got %d)" % (order_cap, G.order)
        )
    return CompleteSystem(G, normal_family(G))


def generated_subsystem(S: CompleteSystem, A: Iterable[Element]) -> CompleteSystem:
    """Smallest complete subsystem containing A and the constant.

    On the families of normal subgroups this is closure under pairwise
    intersection plus everything above; whole coset classes come along
    with each family member.
    """
    elems = set(S.universe)
    base = {(1 << S.group.order) - 1}
    for x in A:
        if x not in elems:
            raise GroupError("generator %r is not in the universe" % (x,))
        base.add(x[0])
    grown = True
    while grown:
        grown = False
        for a in list(base):
            for b in list(base):
                if a & b not in base:
                    base.add(a & b)
                    grown = True
    closed = [N for N in S.normals if any(m & N.mask == m for m in base)]
    return CompleteSystem(S.group, closed)


def dual_group(S: CompleteSystem) -> tuple[FiniteGroup, GroupHom]:
    """The group the system describes: G over the intersection of its family."""
    core_mask = (1 << S.group.order) - 1
    for N in S.normals:
        core_mask &= N.mask
    core = Subgroup(S.group, S.group.elems_of_mask(core_mask))
    return quotient(S.group, core)


def level_quotient(G: FiniteGroup, i: int) -> FiniteGroup:
    """Dual of the subsystem generated by all cosets of index at most i."""
    if not isinstance(i, int) or isinstance(i, bool) or i < 1:
        raise GroupError("level must be a positive integer")
    S = complete_system(G)
    A = [x for x in S.universe if S.sort_of(x) <= i]
    return dual_group(generated_subsystem(S, A))[0]


class SystemEmbedding:
    """Injective relation-preserving map of complete systems."""

    __slots__ = ("source", "target", "image_of")

    def __init__(
        self, source: CompleteSystem, target: CompleteSystem, image_of: Dict[Element, Element]
    ):
        if set(image_of) != set(source.universe):
            raise GroupError("embedding must be defined on the whole source universe")
        values = list(image_of.values())
        if len(set(values)) != len(values):
            raise GroupError("embedding is not injective")
        missing = set(values) - set(target.universe)
        if missing:
            raise GroupError("embedding lands outside the target universe")
        self.source = source
        self.target = target
        self.image_of = dict(image_of)

    def __call__(self, x: Element) -> Element:
        return self.image_of[x]

    def __repr__(self) -> str:
        return "SystemEmbedding(%d -> %d elements)" % (
            len(self.source.universe),
            len(self.target.universe),
        )


def dual_embedding(phi: GroupHom) -> SystemEmbedding:
    """An epimorphism G -> H read backwards as a map of systems.

    Each coset h*M of H goes to its full preimage under phi, which is a
    coset of the preimage of M; every relation transfers verbatim.
    """
    if not phi.is_surjective:
        raise GroupError("dual embedding needs a surjective homomorphism")
    G, H = phi.source, phi.target
    source = complete_system(H)
    target = complete_system(G)
    img = phi.image_of
    image_of: Dict[Element, Element] = {}
    for M in source.normals:
        m_elems = set(M.elements)
        pre_mask = 0
        for g in range(G.order):
            if img[g] in m_elems:
                pre_mask |= 1 << g
        for h in source.class_reps(M.mask):
            coset = {H.table[h][m] for m in M.elements}
            rep = min(g for g in range(G.order) if img[g] in coset)
            image_of[(M.mask, h)] = (pre_mask, rep)
    return SystemEmbedding(source, target, image_of)
