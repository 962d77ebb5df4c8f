"""Finite groups on canonical element indices.

A group of order m lives on element indices 0..m-1, and index 0 is
always the identity.  Groups are built from an explicit Cayley table or
from permutation generators, are fully verified at construction
(associativity is checked on every triple up to order 64 and sampled
deterministically above that), and are immutable afterwards.

Subgroups carry their elements both as a sorted tuple (the canonical,
hashable form) and as a bitmask; the bitmask side keeps the closure
machinery used by the lattice and measure layers cheap.  Subgroup
enumeration and isomorphism testing are supported up to order 64.
"""

from __future__ import annotations

import random
from typing import Iterable, Optional, Sequence

FULL_ASSOC_LIMIT = 64
DEFAULT_ORDER_CAP = 64
PERM_POINTS_CAP = 16
PERM_CLOSURE_CAP = 4096


class GroupError(ValueError):
    """A group axiom, a precondition, or input validation failed."""


class CapExceeded(RuntimeError):
    """A configured size or enumeration cap would be exceeded."""


def _mask_to_elems(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _elems_to_mask(elems: Iterable[int]) -> int:
    mask = 0
    for x in elems:
        mask |= 1 << x
    return mask


class FiniteGroup:
    """An immutable finite group given by a verified Cayley table.

    table[a][b] is the index of a*b.  Instances compare by identity;
    structural comparison is what isomorphic() is for.
    """

    def __init__(self, table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None):
        n = len(table)
        if n == 0:
            raise GroupError("empty multiplication table")
        rows = tuple(tuple(row) for row in table)
        for row in rows:
            if len(row) != n:
                raise GroupError("multiplication table is not square")
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise GroupError("table entry %r is not an element index" % (v,))
        self.order = n
        self.table = rows
        if labels is None:
            self.labels: Optional[tuple[str, ...]] = None
        else:
            if len(labels) != n:
                raise GroupError("label count does not match group order")
            self.labels = tuple(str(x) for x in labels)
            if len(set(self.labels)) != n:
                raise GroupError("element labels must be distinct")
        self._check_identity()
        self._check_permutation_rows()
        self._inverse = self._compute_inverses()
        self._check_associativity()
        # caches, all derived and deterministic
        self._mask_elems: dict[int, tuple[int, ...]] = {1: (0,)}
        self._extend_memo: dict[tuple[int, int], int] = {}
        self._subgroups: Optional[tuple["Subgroup", ...]] = None
        self._subgroup_index: Optional[dict[int, int]] = None
        self._quotients: dict[int, tuple["FiniteGroup", "GroupHom"]] = {}
        self._element_orders: Optional[tuple[int, ...]] = None
        self._fingerprint: Optional[tuple] = None
        self._gen_sequence: Optional[tuple[int, ...]] = None

    # -- construction-time checks -------------------------------------

    def _check_identity(self) -> None:
        n = self.order
        if self.table[0] != tuple(range(n)):
            raise GroupError("element 0 is not a left identity")
        for a in range(n):
            if self.table[a][0] != a:
                raise GroupError("element 0 is not a right identity")

    def _check_permutation_rows(self) -> None:
        n = self.order
        full = frozenset(range(n))
        for a in range(n):
            if frozenset(self.table[a]) != full:
                raise GroupError("row %d is not a permutation; not a group table" % a)
            if frozenset(self.table[b][a] for b in range(n)) != full:
                raise GroupError("column %d is not a permutation; not a group table" % a)

    def _compute_inverses(self) -> tuple[int, ...]:
        n = self.order
        inv = [0] * n
        for a in range(n):
            b = self.table[a].index(0)
            if self.table[b][a] != 0:
                raise GroupError("element %d has no two-sided inverse" % a)
            inv[a] = b
        return tuple(inv)

    def _check_associativity(self) -> None:
        n = self.order
        t = self.table
        if n <= FULL_ASSOC_LIMIT:
            rng_n = range(n)
            for a in rng_n:
                ta = t[a]
                for b in rng_n:
                    tab = t[ta[b]]
                    tb = t[b]
                    for c in rng_n:
                        if tab[c] != ta[tb[c]]:
                            raise GroupError(
                                "non-associative triple (%d, %d, %d)" % (a, b, c)
                            )
        else:
            # deterministic sample: 10 * order^2 triples
            rng = random.Random(n)
            for _ in range(10 * n * n):
                a = rng.randrange(n)
                b = rng.randrange(n)
                c = rng.randrange(n)
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    raise GroupError("non-associative triple (%d, %d, %d)" % (a, b, c))

    # -- basic queries -------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def conj(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        t = self.table
        return t[t[g][x]][self._inverse[g]]

    def label(self, a: int) -> str:
        if self.labels is not None:
            return self.labels[a]
        return str(a)

    def element_orders(self) -> tuple[int, ...]:
        if self._element_orders is None:
            out = []
            for a in range(self.order):
                k = 1
                x = a
                while x != 0:
                    x = self.table[x][a]
                    k += 1
                out.append(k)
            self._element_orders = tuple(out)
        return self._element_orders

    def element_order(self, a: int) -> int:
        return self.element_orders()[a]

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(self.order))

    def __repr__(self) -> str:
        return "FiniteGroup(order=%d)" % self.order

    # -- closure machinery ---------------------------------------------

    def elems_of_mask(self, mask: int) -> tuple[int, ...]:
        got = self._mask_elems.get(mask)
        if got is None:
            got = _mask_to_elems(mask)
            self._mask_elems[mask] = got
        return got

    def closure_mask(self, gens: Iterable[int]) -> int:
        """Bitmask of the subgroup generated by gens (empty gens give {0})."""
        mask = 1
        elems = [0]
        pending = list(gens)
        t = self.table
        while pending:
            x = pending.pop()
            if mask >> x & 1:
                continue
            mask |= 1 << x
            tx = t[x]
            for y in elems:
                pending.append(tx[y])
                pending.append(t[y][x])
            pending.append(tx[x])
            elems.append(x)
        self._mask_elems.setdefault(mask, tuple(sorted(elems)))
        return mask

    def extend_mask(self, mask: int, x: int) -> int:
        """Bitmask of the subgroup generated by an existing subgroup plus x."""
        if mask >> x & 1:
            return mask
        key = (mask, x)
        got = self._extend_memo.get(key)
        if got is not None:
            return got
        elems = list(self.elems_of_mask(mask))
        out = mask
        pending = [x]
        t = self.table
        while pending:
            y = pending.pop()
            if out >> y & 1:
                continue
            out |= 1 << y
            ty = t[y]
            for z in elems:
                pending.append(ty[z])
                pending.append(t[z][y])
            pending.append(ty[y])
            elems.append(y)
        self._mask_elems.setdefault(out, tuple(sorted(elems)))
        self._extend_memo[key] = out
        return out

    # -- derived invariants ---------------------------------------------

    def center_mask(self) -> int:
        t = self.table
        n = self.order
        mask = 0
        for a in range(n):
            ta = t[a]
            if all(ta[b] == t[b][a] for b in range(n)):
                mask |= 1 << a
        return mask

    def derived_mask(self) -> int:
        t = self.table
        inv = self._inverse
        n = self.order
        comms = set()
        for a in range(n):
            for b in range(n):
                comms.add(t[t[a][b]][t[inv[a]][inv[b]]])
        return self.closure_mask(comms)

    def fingerprint(self) -> tuple:
        """Cheap isomorphism invariant used to prune searches."""
        if self._fingerprint is None:
            n = self.order
            orders = tuple(sorted(self.element_orders()))
            abelian = self.is_abelian()
            center = bin(self.center_mask()).count("1")
            derived = bin(self.derived_mask()).count("1")
            t = self.table
            inv = self._inverse
            seen = [False] * n
            class_sizes = []
            for a in range(n):
                if seen[a]:
                    continue
                cls = {t[t[g][a]][inv[g]] for g in range(n)}
                for x in cls:
                    seen[x] = True
                class_sizes.append(len(cls))
            self._fingerprint = (n, orders, abelian, center, derived, tuple(sorted(class_sizes)))
        return self._fingerprint

    def generator_sequence(self) -> tuple[int, ...]:
        """Deterministic small generating sequence (highest order first)."""
        if self._gen_sequence is None:
            orders = self.element_orders()
            by_pref = sorted(range(self.order), key=lambda a: (-orders[a], a))
            gens: list[int] = []
            mask = 1
            for a in by_pref:
                if mask >> a & 1:
                    continue
                gens.append(a)
                mask = self.extend_mask(mask, a)
                if mask == (1 << self.order) - 1:
                    break
            self._gen_sequence = tuple(gens)
        return self._gen_sequence


class Subgroup:
    """A verified subgroup of a FiniteGroup.

    Canonical form is the sorted tuple of element indices; mask is the
    same set as a bitmask.  elements is always the closure of
    generators, which is re-checked at construction.  Instances compare
    and hash by parent identity plus element set.
    """

    __slots__ = ("group", "elements", "generators", "mask")

    def __init__(
        self,
        group: FiniteGroup,
        generators: Iterable[int] = (),
        elements: Optional[Iterable[int]] = None,
    ):
        gens = tuple(generators)
        for x in gens:
            if not isinstance(x, int) or not 0 <= x < group.order:
                raise GroupError("generator %r is out of range" % (x,))
        mask = group.closure_mask(gens)
        closed = group.elems_of_mask(mask)
        if elements is not None:
            stated = tuple(sorted(set(elements)))
            if stated != closed:
                raise GroupError("stated elements differ from the closure of the generators")
        self.group = group
        self.generators = gens
        self.elements = closed
        self.mask = mask

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.group.order // len(self.elements)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.group is other.group
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.mask))

    def __repr__(self) -> str:
        return "Subgroup(order=%d, elements=%r)" % (self.order, self.elements)

    def is_normal(self) -> bool:
        G = self.group
        for g in range(G.order):
            for x in self.elements:
                if not self.mask >> G.conj(g, x) & 1:
                    return False
        return True

    def is_whole_group(self) -> bool:
        return len(self.elements) == self.group.order

    def intersection(self, other: "Subgroup") -> "Subgroup":
        if self.group is not other.group:
            raise GroupError("subgroups of different groups have no intersection")
        elems = self.group.elems_of_mask(self.mask & other.mask)
        return Subgroup(self.group, elems)

    def conjugate_by(self, g: int) -> "Subgroup":
        G = self.group
        return Subgroup(G, tuple(G.conj(g, x) for x in self.elements))

    def canonical_generators(self) -> tuple[int, ...]:
        """Least-index greedy generating sequence, for stable display names."""
        G = self.group
        gens: list[int] = []
        mask = 1
        for x in self.elements:
            if mask >> x & 1:
                continue
            gens.append(x)
            mask = G.extend_mask(mask, x)
            if mask == self.mask:
                break
        return tuple(gens)


class GroupHom:
    """A verified homomorphism between finite groups, as a total image table.

    The homomorphism property is checked on all pairs at construction;
    is_surjective is always recomputed from the image table.
    """

    __slots__ = ("source", "target", "image_of", "is_surjective")

    def __init__(self, source: FiniteGroup, target: FiniteGroup, image_of: Sequence[int]):
        imgs = tuple(image_of)
        if len(imgs) != source.order:
            raise GroupError("image table length does not match source order")
        for v in imgs:
            if not isinstance(v, int) or not 0 <= v < target.order:
                raise GroupError("image %r is not a target element index" % (v,))
        ts, tt = source.table, target.table
        for a in range(source.order):
            ia = imgs[a]
            row = ts[a]
            for b in range(source.order):
                if imgs[row[b]] != tt[ia][imgs[b]]:
                    raise GroupError(
                        "not a homomorphism: images of %d*%d disagree" % (a, b)
                    )
        self.source = source
        self.target = target
        self.image_of = imgs
        self.is_surjective = len(set(imgs)) == target.order

    def __call__(self, x: int) -> int:
        return self.image_of[x]

    def __repr__(self) -> str:
        return "GroupHom(%d -> %d elements%s)" % (
            self.source.order,
            self.target.order,
            ", onto" if self.is_surjective else "",
        )

    def kernel(self) -> Subgroup:
        elems = tuple(a for a in range(self.source.order) if self.image_of[a] == 0)
        return Subgroup(self.source, elems)

    def image_subgroup(self, H: Optional[Subgroup] = None) -> Subgroup:
        if H is None:
            gens = tuple(set(self.image_of))
        else:
            if H.group is not self.source:
                raise GroupError("subgroup does not live in the source group")
            gens = tuple({self.image_of[x] for x in H.elements})
        return Subgroup(self.target, gens)

    def image_mask(self, mask: int) -> int:
        out = 0
        for x in self.source.elems_of_mask(mask):
            out |= 1 << self.image_of[x]
        return out


def compose(outer: GroupHom, inner: GroupHom) -> GroupHom:
    """outer o inner, verified."""
    if inner.target is not outer.source and inner.target.table != outer.source.table:
        raise GroupError("homomorphisms do not compose: middle groups differ")
    return GroupHom(
        inner.source, outer.target, tuple(outer.image_of[v] for v in inner.image_of)
    )


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(range(G.order)))


# -- construction -------------------------------------------------------


def build_group(spec: dict, *, closure_cap: int = PERM_CLOSURE_CAP) -> FiniteGroup:
    """Build a verified group from a Cayley table or permutation generators.

    spec is {"table": [[...], ...]} or {"permutations": [[...], ...]},
    permutations being 0-indexed image arrays on up to 16 points.
    """
    if not isinstance(spec, dict):
        raise GroupError("group spec must be a mapping")
    keys = set(spec) & {"table", "permutations"}
    if len(keys) != 1:
        raise GroupError('group spec needs exactly one of "table" or "permutations"')
    if "table" in spec:
        return FiniteGroup(spec["table"])
    perms = spec["permutations"]
    if not isinstance(perms, (list, tuple)) or not perms:
        raise GroupError("permutation generator list is empty or not a list")
    d = len(perms[0])
    if d == 0 or d > PERM_POINTS_CAP:
        raise GroupError("permutations must act on 1..%d points" % PERM_POINTS_CAP)
    gens = []
    for p in perms:
        q = tuple(p)
        if len(q) != d or sorted(q) != list(range(d)):
            raise GroupError("malformed permutation %r" % (p,))
        gens.append(q)
    ident = tuple(range(d))
    elems = [ident]
    index = {ident: 0}
    pos = 0
    while pos < len(elems):
        p = elems[pos]
        pos += 1
        for g in gens:
            q = tuple(p[g[i]] for i in range(d))
            if q not in index:
                if len(elems) >= closure_cap:
                    raise CapExceeded(
                        "permutation closure exceeds the size cap of %d" % closure_cap
                    )
                index[q] = len(elems)
                elems.append(q)
    m = len(elems)
    table = [
        [index[tuple(p[q[i]] for i in range(d))] for q in elems]
        for p in elems
    ]
    labels = [str(p) for p in elems]
    return FiniteGroup(table, labels=labels)


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Closure of gens under multiplication; empty gens give the trivial subgroup."""
    return Subgroup(G, tuple(gens))


def all_subgroups(G: FiniteGroup, *, order_cap: int = DEFAULT_ORDER_CAP) -> tuple[Subgroup, ...]:
    """Every subgroup exactly once, ordered by size then element tuple.

    Bottom-up: cyclic subgroups first, then closures of single-element
    extensions of known subgroups until no new subgroup appears.
    """
    if G.order > order_cap:
        raise CapExceeded(
            "subgroup enumeration capped at order %d (group has order %d)"
            % (order_cap, G.order)
        )
    if G._subgroups is not None:
        return G._subgroups
    built: dict[int, tuple[int, ...]] = {1: ()}
    work = [1]
    for x in range(1, G.order):
        m = G.closure_mask((x,))
        if m not in built:
            built[m] = (x,)
            work.append(m)
    while work:
        mask = work.pop()
        gens = built[mask]
        for x in range(1, G.order):
            if mask >> x & 1:
                continue
            bigger = G.extend_mask(mask, x)
            if bigger not in built:
                built[bigger] = gens + (x,)
                work.append(bigger)
    subs = [Subgroup(G, gens, elements=G.elems_of_mask(mask)) for mask, gens in built.items()]
    subs.sort(key=lambda H: (H.order, H.elements))
    G._subgroups = tuple(subs)
    G._subgroup_index = {H.mask: i for i, H in enumerate(G._subgroups)}
    return G._subgroups


def subgroup_index(G: FiniteGroup) -> dict[int, int]:
    """Mask -> position in all_subgroups(G)."""
    all_subgroups(G)
    assert G._subgroup_index is not None
    return G._subgroup_index


def subgroup_masks_within(G: FiniteGroup, universe: int) -> list[int]:
    """Masks of all subgroups of G contained in the subgroup with this mask.

    Same bottom-up closure as all_subgroups, restricted to the elements
    of the universe mask; the universe must itself be a subgroup.
    """
    elems = G.elems_of_mask(universe)
    built = {1}
    work = [1]
    for x in elems:
        if x == 0:
            continue
        m = G.closure_mask((x,))
        if m not in built:
            built.add(m)
            work.append(m)
    while work:
        mask = work.pop()
        for x in elems:
            if mask >> x & 1:
                continue
            bigger = G.extend_mask(mask, x)
            if bigger not in built:
                built.add(bigger)
                work.append(bigger)
    return sorted(built, key=lambda m: (bin(m).count("1"), G.elems_of_mask(m)))


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """Quotient group on least coset representatives plus the projection."""
    if N.group is not G:
        raise GroupError("subgroup does not live in the given group")
    cached = G._quotients.get(N.mask)
    if cached is not None:
        return cached
    if not N.is_normal():
        raise GroupError("subgroup is not normal; no quotient group")
    t = G.table
    coset_of = [-1] * G.order
    reps: list[int] = []
    for g in range(G.order):
        if coset_of[g] != -1:
            continue
        idx = len(reps)
        reps.append(g)
        for x in N.elements:
            coset_of[t[g][x]] = idx
    table = [[coset_of[t[a][b]] for b in reps] for a in reps]
    labels = [G.label(r) + "N" for r in reps]
    Q = FiniteGroup(table, labels=labels)
    pi = GroupHom(G, Q, tuple(coset_of))
    G._quotients[N.mask] = (Q, pi)
    return Q, pi


# -- isomorphism and homomorphism search --------------------------------


def _bfs_edges(G: FiniteGroup, gens: Sequence[int]) -> list[tuple[int, int, int]]:
    """Spanning edges (x, s, x*gens[s]) reaching every element from 0."""
    seen = [False] * G.order
    seen[0] = True
    order = [0]
    edges: list[tuple[int, int, int]] = []
    t = G.table
    pos = 0
    while pos < len(order):
        x = order[pos]
        pos += 1
        for s, g in enumerate(gens):
            y = t[x][g]
            if not seen[y]:
                seen[y] = True
                edges.append((x, s, y))
                order.append(y)
    if len(order) != G.order:
        raise GroupError("generators do not generate the group")
    return edges


def _hom_images_from_generators(
    G: FiniteGroup,
    H: FiniteGroup,
    gens: Sequence[int],
    edges: Sequence[tuple[int, int, int]],
    imgs: Sequence[int],
) -> Optional[tuple[int, ...]]:
    """Total image table of the hom sending gens[s] to imgs[s], if one exists."""
    phi = [-1] * G.order
    phi[0] = 0
    th = H.table
    for x, s, y in edges:
        phi[y] = th[phi[x]][imgs[s]]
    tg = G.table
    for x in range(G.order):
        px = phi[x]
        for s, g in enumerate(gens):
            if phi[tg[x][g]] != th[px][imgs[s]]:
                return None
    return tuple(phi)


def isomorphic(G: FiniteGroup, H: FiniteGroup, *, order_cap: int = DEFAULT_ORDER_CAP) -> bool:
    """True iff a bijective homomorphism exists (exhaustive pruned search)."""
    if G.order > order_cap or H.order > order_cap:
        raise CapExceeded("isomorphism test capped at order %d" % order_cap)
    if G is H:
        return True
    if G.fingerprint() != H.fingerprint():
        return False
    gens = G.generator_sequence()
    edges = _bfs_edges(G, gens)
    g_orders = G.element_orders()
    h_orders = H.element_orders()
    # G-side prefix subgroup sizes, for pruning
    prefix_sizes = []
    m = 1
    for g in gens:
        m = G.extend_mask(m, g)
        prefix_sizes.append(bin(m).count("1"))
    candidates = [
        [h for h in range(H.order) if h_orders[h] == g_orders[g]] for g in gens
    ]

    def dfs(slot: int, mask: int, chosen: list[int]) -> bool:
        if slot == len(gens):
            phi = _hom_images_from_generators(G, H, gens, edges, chosen)
            return phi is not None and len(set(phi)) == G.order
        for h in candidates[slot]:
            grown = H.extend_mask(mask, h)
            if bin(grown).count("1") != prefix_sizes[slot]:
                continue
            chosen.append(h)
            if dfs(slot + 1, grown, chosen):
                return True
            chosen.pop()
        return False

    return dfs(0, 1, [])


def image_classes(G: FiniteGroup, *, order_cap: int = DEFAULT_ORDER_CAP) -> list[FiniteGroup]:
    """One representative per isomorphism class of quotients of G."""
    if G.order > order_cap:
        raise CapExceeded("image enumeration capped at order %d" % order_cap)
    reps: list[FiniteGroup] = []
    for N in all_subgroups(G):
        if not N.is_normal():
            continue
        Q, _ = quotient(G, N)
        if not any(isomorphic(Q, R) for R in reps):
            reps.append(Q)
    reps.sort(key=lambda R: (R.order, R.fingerprint()))
    return reps


def epimorphisms(G: FiniteGroup, H: FiniteGroup, *, order_cap: int = DEFAULT_ORDER_CAP) -> list[GroupHom]:
    """All surjective homomorphisms G -> H, in a deterministic order."""
    if G.order > order_cap or H.order > order_cap:
        raise CapExceeded("homomorphism search capped at order %d" % order_cap)
    if G.order % H.order != 0:
        return []
    if H.order == 1:
        return [GroupHom(G, H, (0,) * G.order)]
    if G.order == H.order and G.fingerprint() != H.fingerprint():
        return []
    gens = G.generator_sequence()
    edges = _bfs_edges(G, gens)
    g_orders = G.element_orders()
    h_orders = H.element_orders()
    candidates = [
        [h for h in range(H.order) if g_orders[g] % h_orders[h] == 0] for g in gens
    ]
    full = (1 << H.order) - 1
    out: list[GroupHom] = []

    def dfs(slot: int, mask: int, chosen: list[int]) -> None:
        if slot == len(gens):
            if mask != full:
                return
            phi = _hom_images_from_generators(G, H, gens, edges, chosen)
            if phi is not None:
                out.append(GroupHom(G, H, phi))
            return
        for h in candidates[slot]:
            chosen.append(h)
            dfs(slot + 1, H.extend_mask(mask, h), chosen)
            chosen.pop()

    dfs(0, 1, [])
    return out


# -- stock constructions -------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)])


def direct_product(*factors: FiniteGroup) -> FiniteGroup:
    if not factors:
        raise GroupError("direct product needs at least one factor")
    if len(factors) == 1:
        return factors[0]
    A, rest = factors[0], direct_product(*factors[1:])
    na, nb = A.order, rest.order
    table = [
        [A.table[a1][a2] * nb + rest.table[b1][b2] for a2 in range(na) for b2 in range(nb)]
        for a1 in range(na)
        for b1 in range(nb)
    ]
    labels = [
        "(%s,%s)" % (A.label(a), rest.label(b)) for a in range(na) for b in range(nb)
    ]
    return FiniteGroup(table, labels=labels)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: rotation r^k is k, reflection r^k s is n+k."""
    if n < 1:
        raise GroupError("dihedral parameter must be positive")
    m = 2 * n

    def mul(a: int, b: int) -> int:
        ra, fa = a % n, a >= n
        rb, fb = b % n, b >= n
        r = (ra - rb) % n if fa else (ra + rb) % n
        return r + n * (fa != fb)

    return FiniteGroup([[mul(a, b) for b in range(m)] for a in range(m)])


def dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group of order 4n (quaternion group for n = 2)."""
    if n < 1:
        raise GroupError("dicyclic parameter must be positive")
    m = 4 * n

    # elements a^r b^f with a of order 2n, b^2 = a^n, b a b^-1 = a^-1
    def mul(x: int, y: int) -> int:
        ra, fa = x % (2 * n), x >= 2 * n
        rb, fb = y % (2 * n), y >= 2 * n
        if not fa:
            r = (ra + rb) % (2 * n)
            return r + 2 * n * fb
        if not fb:
            return (ra - rb) % (2 * n) + 2 * n
        return (ra - rb + n) % (2 * n)

    return FiniteGroup([[mul(a, b) for b in range(m)] for a in range(m)])


def symmetric(n: int) -> FiniteGroup:
    if n < 1 or n > 5:
        raise GroupError("symmetric constructor supports 1..5 points")
    if n == 1:
        return cyclic(1)
    swap = [1, 0] + list(range(2, n))
    cycle = list(range(1, n)) + [0]
    return build_group({"permutations": [swap, cycle]})


def semidirect_product(
    N: FiniteGroup, H: FiniteGroup, action: Sequence[Sequence[int]]
) -> FiniteGroup:
    """N x| H where action[h] is the automorphism of N induced by h.

    Pairs (x, h) are indexed x*|H| + h and multiply as
    (x1, h1)(x2, h2) = (x1 * action[h1](x2), h1 h2).
    """
    if len(action) != H.order:
        raise GroupError("need one automorphism of N per element of H")
    maps = [tuple(a) for a in action]
    for h, a in enumerate(maps):
        if sorted(a) != list(range(N.order)) or a[0] != 0:
            raise GroupError("action of %d is not a permutation fixing 0" % h)
        for x in range(N.order):
            for y in range(N.order):
                if a[N.table[x][y]] != N.table[a[x]][a[y]]:
                    raise GroupError("action of %d is not an automorphism of N" % h)
    for h1 in range(H.order):
        for h2 in range(H.order):
            lhs = maps[H.table[h1][h2]]
            rhs = tuple(maps[h1][maps[h2][x]] for x in range(N.order))
            if lhs != rhs:
                raise GroupError("action is not a homomorphism H -> Aut(N)")
    nh = H.order
    table = []
    for x1 in range(N.order):
        for h1 in range(nh):
            row = []
            a1 = maps[h1]
            for x2 in range(N.order):
                for h2 in range(nh):
                    row.append(N.table[x1][a1[x2]] * nh + H.table[h1][h2])
            table.append(row)
    labels = [
        "(%s,%s)" % (N.label(x), H.label(h)) for x in range(N.order) for h in range(nh)
    ]
    return FiniteGroup(table, labels=labels)
