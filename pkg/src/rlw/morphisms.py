"""Homomorphism enumeration, isomorphism testing, essential embeddings.

Maps are arrays of target indices.  Enumeration is backtracking with forced
propagation: once two images are fixed, the image of any product/residual of
the two arguments is forced, which prunes almost everything at these sizes.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import FiniteAlgebra, NotAHomomorphism, NotAnEmbedding, SignatureMismatch
from .structure import congruences, natural_projection

_OPS = ("mult", "meet", "join", "lres", "rres")


@dataclass(frozen=True)
class Morphism:
    source: FiniteAlgebra = field(repr=False)
    target: FiniteAlgebra = field(repr=False)
    mapping: tuple

    @property
    def injective(self):
        return len(set(self.mapping)) == len(self.mapping)

    @property
    def is_embedding(self):
        return self.injective

    @property
    def is_iso(self):
        return self.injective and self.source.size == self.target.size

    def __call__(self, x):
        return self.mapping[x]

    def image(self):
        return tuple(sorted(set(self.mapping)))

    def __repr__(self):
        return f"{self.source.name}->{self.target.name}{list(self.mapping)}"


def compose(outer, inner):
    """outer o inner (apply inner first)."""
    if inner.target.key() != outer.source.key():
        raise SignatureMismatch("composition mismatch")
    return Morphism(inner.source, outer.target,
                    tuple(outer.mapping[v] for v in inner.mapping))


def is_hom(B, D, mapping):
    """Does the map preserve all five operations, the unit, and constants?"""
    if dict(B.constants).keys() != dict(D.constants).keys():
        return False
    if mapping[B.unit] != D.unit:
        return False
    for nm, v in B.constants:
        if mapping[v] != D.constant(nm):
            return False
    n = B.size
    for op in _OPS:
        tb, td = getattr(B, op), getattr(D, op)
        for x in range(n):
            mx = mapping[x]
            for y in range(n):
                if mapping[tb[x][y]] != td[mx][mapping[y]]:
                    return False
    return True


def morphism(B, D, mapping):
    m = Morphism(B, D, tuple(mapping))
    if not is_hom(B, D, m.mapping):
        raise NotAHomomorphism(f"{list(mapping)} is not a homomorphism {B.name} -> {D.name}")
    return m


def identity(A):
    return Morphism(A, A, tuple(A.elements))


def inclusion(A, B, subset):
    """The inclusion of subalgebra(B, subset) into B (subset given ascending)."""
    return morphism(A, B, tuple(sorted(subset)))


def homs(B, D, injective=False, commute_with=None, limit=None):
    """All homomorphisms B -> D, optionally injective, optionally pinned.

    commute_with = (phi, chi) with phi: A -> B and chi: A -> D restricts to
    maps psi with psi o phi = chi.  Same signature required.
    """
    if dict(B.constants).keys() != dict(D.constants).keys():
        raise SignatureMismatch(
            f"{B.name} and {D.name} designate different constants")
    n, m = B.size, D.size
    mapping = [-1] * n
    pinned = {B.unit: D.unit}
    for nm, v in B.constants:
        w = D.constant(nm)
        if v in pinned and pinned[v] != w:
            return []
        pinned[v] = w
    if commute_with is not None:
        phi, chi = commute_with
        for a in range(phi.source.size):
            v, w = phi.mapping[a], chi.mapping[a]
            if v in pinned and pinned[v] != w:
                return []
            pinned[v] = w
    if injective and len(set(pinned.values())) != len(pinned):
        return []

    b_tables = [getattr(B, op) for op in _OPS]
    d_tables = [getattr(D, op) for op in _OPS]
    bleq, dleq = B.leq, D.leq
    out = []

    def check_one(x, trail):
        """Order/injectivity checks for x, plus forced images of op results.
        Returns False on clash; appends forced elements to trail."""
        mx = mapping[x]
        for y in range(n):
            my = mapping[y]
            if my < 0 or y == x:
                continue
            if bleq[x][y] and not dleq[mx][my]:
                return False
            if bleq[y][x] and not dleq[my][mx]:
                return False
            if injective and my == mx:
                return False
        for tb, td in zip(b_tables, d_tables):
            for y in range(n):
                my = mapping[y]
                if my < 0:
                    continue
                for (p, q) in ((tb[x][y], td[mx][my]), (tb[y][x], td[my][mx])):
                    mp = mapping[p]
                    if mp >= 0:
                        if mp != q:
                            return False
                    else:
                        mapping[p] = q
                        trail.append(p)
        return True

    def undo(trail):
        for p in trail:
            mapping[p] = -1

    def assign(x, v):
        """mapping[x] = v plus propagation; returns the trail, or None."""
        if mapping[x] >= 0:
            return [] if mapping[x] == v else None
        mapping[x] = v
        trail = [x]
        done = 0
        while done < len(trail):
            z = trail[done]
            done += 1
            if not check_one(z, trail):
                undo(trail)
                return None
        return trail

    def search(idx):
        if limit is not None and len(out) >= limit:
            return
        while idx < n and mapping[idx] >= 0:
            idx += 1
        if idx == n:
            mp = tuple(mapping)
            if is_hom(B, D, mp):
                out.append(Morphism(B, D, mp))
            return
        for v in range(m):
            trail = assign(idx, v)
            if trail is not None:
                search(idx + 1)
                undo(trail)
            if limit is not None and len(out) >= limit:
                return

    ok = True
    for x, v in sorted(pinned.items()):
        if assign(x, v) is None:
            ok = False
            break
    if ok:
        search(0)
    return out


def embeddings(A, C, limit=None):
    return homs(A, C, injective=True, limit=limit)


def are_isomorphic(A, B):
    """An isomorphism A -> B, or None."""
    if A.size != B.size or dict(A.constants).keys() != dict(B.constants).keys():
        return None
    if A.key() == B.key():
        return identity(A) if A is B else Morphism(A, B, tuple(A.elements))
    found = homs(A, B, injective=True, limit=1)
    return found[0] if found else None


@dataclass(frozen=True)
class EssentialCheck:
    essential: bool
    witness: object = None   # a congruence of the target that misses the image

    def __bool__(self):
        return self.essential


def is_essential(phi):
    """phi is essential iff every nontrivial congruence of the target
    identifies two distinct image points; checked on the atoms of Con."""
    if not phi.injective or not is_hom(phi.source, phi.target, phi.mapping):
        raise NotAnEmbedding(f"{phi} is not an embedding")
    img = sorted(set(phi.mapping))
    for atom in congruences(phi.target).atoms():
        hit = any(atom.same(x, y)
                  for i, x in enumerate(img) for y in img[i + 1:])
        if not hit:
            return EssentialCheck(False, atom)
    return EssentialCheck(True)


def essentialize(phi):
    """A maximal congruence theta of C with trivial restriction to the image,
    plus the induced essential embedding A -> C/theta."""
    if not phi.injective or not is_hom(phi.source, phi.target, phi.mapping):
        raise NotAnEmbedding(f"{phi} is not an embedding")
    C = phi.target
    img = sorted(set(phi.mapping))
    ok = [th for th in congruences(C)
          if all(not th.same(x, y) for i, x in enumerate(img) for y in img[i + 1:])]
    maximal = [th for th in ok
               if not any(other is not th and _con_le(th, other) for other in ok)]
    theta = maximal[0]
    Q, proj = natural_projection(C, theta)
    psi = morphism(phi.source, Q, tuple(proj[v] for v in phi.mapping))
    return theta, psi


def _con_le(c1, c2):
    return all(len({c2.block_of(x) for x in block}) == 1 for block in c1.blocks)
