"""Congruence lattices, convex normal subalgebras, quotients, subalgebras,
simplicity classification, and the congruence extension property.

Congruences are computed by principal-congruence closure followed by join
closure.  The partition brute-force oracle (congruences_bruteforce) is kept as
an independent cross-check for small algebras.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import FiniteAlgebra, NotASubuniverse, finite_algebra

_OPS = ("mult", "meet", "join", "lres", "rres")


def _canon_blocks(rep, n):
    by_rep = {}
    for x in range(n):
        by_rep.setdefault(rep(x), []).append(x)
    return tuple(tuple(sorted(b)) for b in sorted(by_rep.values(), key=min))


@dataclass(frozen=True)
class Congruence:
    blocks: tuple
    algebra: FiniteAlgebra = field(compare=False, repr=False)

    def __post_init__(self):
        index = {}
        for i, block in enumerate(self.blocks):
            for x in block:
                index[x] = i
        object.__setattr__(self, "_index", index)

    def block_of(self, x):
        return self._index[x]

    def same(self, x, y):
        return self._index[x] == self._index[y]

    @property
    def nblocks(self):
        return len(self.blocks)

    @property
    def is_identity(self):
        return self.nblocks == self.algebra.size

    @property
    def is_full(self):
        return self.nblocks == 1

    def unit_class(self):
        return self.blocks[self.block_of(self.algebra.unit)]

    def restrict(self, subset):
        """Blocks of the restriction to a subset (pairs inside subset)."""
        sub = sorted(subset)
        by = {}
        for x in sub:
            by.setdefault(self.block_of(x), []).append(x)
        return tuple(tuple(sorted(b)) for b in sorted(by.values(), key=min))

    def __repr__(self):
        return "Con" + "|".join("".join(self.algebra.label(x) for x in b) for b in self.blocks)


class _UF:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.p[rb] = ra
        return True


def _close_pairs(A, pairs):
    """Least congruence containing the given pairs (translation closure)."""
    n = A.size
    uf = _UF(n)
    tables = [getattr(A, op) for op in _OPS]
    work = [p for p in pairs if uf.union(*p)]
    while work:
        x, y = work.pop()
        for t in tables:
            tx, ty = t[x], t[y]
            for c in range(n):
                if uf.union(tx[c], ty[c]):
                    work.append((tx[c], ty[c]))
                if uf.union(t[c][x], t[c][y]):
                    work.append((t[c][x], t[c][y]))
    return Congruence(_canon_blocks(uf.find, n), A)


def principal_congruence(A, a, b):
    """Theta(a,b): least congruence of A containing (a,b)."""
    return _close_pairs(A, [(a, b)])


def congruence_join(c1, c2):
    A = c1.algebra
    uf = _UF(A.size)
    for block in itertools.chain(c1.blocks, c2.blocks):
        for x in block[1:]:
            uf.union(block[0], x)
    # transitive closure of a union of congruences is already a congruence
    return Congruence(_canon_blocks(uf.find, A.size), A)


def congruence_meet(c1, c2):
    A = c1.algebra
    rep = lambda x: (c1.block_of(x), c2.block_of(x))
    pairs = {}
    for x in range(A.size):
        pairs.setdefault(rep(x), []).append(x)
    blocks = tuple(tuple(sorted(b)) for b in sorted(pairs.values(), key=min))
    return Congruence(blocks, A)


def congruence_leq(c1, c2):
    """Refinement order: every c1 block inside some c2 block."""
    return all(len({c2.block_of(x) for x in block}) == 1 for block in c1.blocks)


@dataclass(frozen=True)
class ConLattice:
    algebra: FiniteAlgebra
    congruences: tuple  # sorted: identity first, full last

    def __len__(self):
        return len(self.congruences)

    def __iter__(self):
        return iter(self.congruences)

    @property
    def identity(self):
        return self.congruences[0]

    @property
    def full(self):
        return self.congruences[-1]

    def atoms(self):
        nontrivial = [c for c in self.congruences if not c.is_identity]
        return [c for c in nontrivial
                if not any(congruence_leq(d, c) and d != c for d in nontrivial)]

    def monolith(self):
        """Least nontrivial congruence, or None (A is SI iff it exists)."""
        ats = self.atoms()
        if len(ats) == 1 and self.algebra.size > 1:
            return ats[0]
        return None


def _con_key(c):
    return (c.algebra.size - c.nblocks, c.blocks)


@lru_cache(maxsize=512)
def congruences(A):
    """The full congruence lattice, via principal congruences + join closure."""
    n = A.size
    delta = Congruence(tuple((x,) for x in range(n)), A)
    found = {delta.blocks: delta}
    for a in range(n):
        for b in range(a + 1, n):
            c = principal_congruence(A, a, b)
            found.setdefault(c.blocks, c)
    frontier = list(found.values())
    while frontier:
        fresh = []
        for c1 in frontier:
            for c2 in list(found.values()):
                j = congruence_join(c1, c2)
                if j.blocks not in found:
                    found[j.blocks] = j
                    fresh.append(j)
        frontier = fresh
    ordered = tuple(sorted(found.values(), key=_con_key))
    return ConLattice(A, ordered)


def _is_congruence_partition(A, blocks):
    index = {}
    for i, block in enumerate(blocks):
        for x in block:
            index[x] = i
    n = A.size
    for op in _OPS:
        t = getattr(A, op)
        for block in blocks:
            x = block[0]
            for y in block[1:]:
                for c in range(n):
                    if index[t[x][c]] != index[t[y][c]] or index[t[c][x]] != index[t[c][y]]:
                        return False
    return True


def _partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def congruences_bruteforce(A):
    """Independent oracle: test every partition of the carrier (small n only)."""
    out = []
    for part in _partitions(list(A.elements)):
        blocks = tuple(tuple(sorted(b)) for b in sorted(part, key=min))
        if _is_congruence_partition(A, blocks):
            out.append(Congruence(blocks, A))
    return ConLattice(A, tuple(sorted(out, key=_con_key)))


# -- convex normal subalgebras ----------------------------------------------

def convex_normal_subalgebras(A):
    """e-classes of all congruences, in the same order as congruences(A)."""
    return tuple(frozenset(c.unit_class()) for c in congruences(A))


def cns_generated(A, seed):
    """Least convex normal subalgebra containing the seed set (via Theta(s,e))."""
    pairs = [(s, A.unit) for s in seed]
    return frozenset(_close_pairs(A, pairs).unit_class())


# -- quotients and subalgebras ----------------------------------------------

def natural_projection(A, theta, name=None):
    """Quotient algebra plus the projection map A -> A/theta.

    Blocks are ordered by the induced order when it is total, else by least
    element; the projection is returned as an index mapping.
    """
    blocks = theta.blocks
    k = len(blocks)
    reps = [b[0] for b in blocks]
    bl = theta.block_of
    # [x] <= [y] iff x /\ y ~ x
    leq = [[bl(A.meet[reps[i]][reps[j]]) == i for j in range(k)] for i in range(k)]
    chainlike = all(leq[i][j] or leq[j][i] for i in range(k) for j in range(k))
    if chainlike:
        order = sorted(range(k), key=lambda i: sum(leq[j][i] for j in range(k)))
    else:
        order = list(range(k))
    pos = {b: i for i, b in enumerate(order)}
    mult = [[pos[bl(A.mult[reps[order[i]]][reps[order[j]]])] for j in range(k)]
            for i in range(k)]
    consts = {nm: pos[bl(v)] for nm, v in A.constants}
    leq_arg = "chain" if chainlike else [[leq[order[i]][order[j]] for j in range(k)]
                                         for i in range(k)]
    labels = None
    if A.labels is not None:
        labels = tuple("".join(A.label(x) for x in blocks[order[i]]) for i in range(k))
    if name is None:
        name = A.name if k == A.size else f"{A.name}/~{k}"
    Q = finite_algebra(name, k, leq_arg, pos[bl(A.unit)], mult, consts, labels)
    mapping = tuple(pos[bl(x)] for x in A.elements)
    return Q, mapping


def quotient(A, theta, name=None):
    return natural_projection(A, theta, name)[0]


def subuniverse_closure(A, seed):
    """Closure of seed + designated constants + unit under all five operations."""
    current = set(seed) | {A.unit} | {v for _, v in A.constants}
    tables = [getattr(A, op) for op in _OPS]
    changed = True
    while changed:
        changed = False
        elems = list(current)
        for t in tables:
            for x in elems:
                for y in elems:
                    v = t[x][y]
                    if v not in current:
                        current.add(v)
                        changed = True
    return frozenset(current)


@lru_cache(maxsize=512)
def subuniverses(A):
    """All subuniverses, by closure of subset seeds, sorted by (size, tuple)."""
    base = subuniverse_closure(A, ())
    found = {base}
    frontier = [base]
    while frontier:
        fresh = []
        for s in frontier:
            for x in A.elements:
                if x not in s:
                    s2 = subuniverse_closure(A, s | {x})
                    if s2 not in found:
                        found.add(s2)
                        fresh.append(s2)
        frontier = fresh
    return tuple(tuple(sorted(s)) for s in sorted(found, key=lambda s: (len(s), tuple(sorted(s)))))


def is_subuniverse(A, subset):
    s = frozenset(subset)
    return subuniverse_closure(A, s) == s and {v for _, v in A.constants} <= s


def subalgebra(A, subset, name=None):
    """The subalgebra on a subuniverse, re-coded with ascending indices."""
    sub = sorted(set(subset))
    s = set(sub)
    if A.unit not in s or not all(v in s for _, v in A.constants):
        raise NotASubuniverse(f"{sub} misses a designated constant of {A.name}")
    pos = {x: i for i, x in enumerate(sub)}
    for op in _OPS:
        t = getattr(A, op)
        for x in sub:
            for y in sub:
                if t[x][y] not in s:
                    raise NotASubuniverse(f"{sub} not closed under {op} at ({x},{y})")
    k = len(sub)
    mult = [[pos[A.mult[x][y]] for y in sub] for x in sub]
    chainlike = all(A.leq[sub[i]][sub[j]] or A.leq[sub[j]][sub[i]]
                    for i in range(k) for j in range(k))
    if chainlike:
        leq_arg = "chain"  # ascending re-coding keeps the induced order
    else:
        leq_arg = [[A.leq[x][y] for y in sub] for x in sub]
    consts = {nm: pos[v] for nm, v in A.constants}
    labels = tuple(A.label(x) for x in sub) if A.labels is not None else None
    if name is None:
        name = A.name if k == A.size else f"{A.name}|{''.join(map(str, sub))}"
    return finite_algebra(name, k, leq_arg, pos[A.unit], mult, consts, labels)


# -- classification and CEP ---------------------------------------------------

@dataclass(frozen=True)
class Classification:
    fsi: bool
    si: bool
    simple: bool
    strictly_simple: bool
    monolith: Congruence | None


def classify(A):
    con = congruences(A)
    atoms = con.atoms()
    fsi = len(atoms) <= 1       # identity congruence is meet-irreducible
    mono = con.monolith()
    si = mono is not None
    simple = len(con) == 2
    strictly = False
    if simple:
        proper = [s for s in subuniverses(A) if len(s) < A.size]
        strictly = (all(len(s) == 1 for s in proper)
                    and all(v == A.unit for _, v in A.constants))
    return Classification(fsi, si, simple, strictly, mono)


@dataclass(frozen=True)
class CepResult:
    holds: bool
    witness: tuple | None = None   # (subuniverse, Congruence of the subalgebra)

    def __bool__(self):
        return self.holds


def extends(A, sub, theta_blocks):
    """Is there Phi in Con(A) with Phi restricted to sub equal to theta?"""
    for phi in congruences(A):
        if phi.restrict(sub) == theta_blocks:
            return True
    return False


def has_cep(A):
    """Exhaustive congruence extension property check with witness."""
    for sub in subuniverses(A):
        if len(sub) == A.size:
            continue
        B = subalgebra(A, sub)
        back = dict(enumerate(sub))
        for theta in congruences(B):
            lifted = tuple(tuple(back[x] for x in block) for block in theta.blocks)
            if not extends(A, sub, lifted):
                return CepResult(False, (sub, theta))
    return CepResult(True)
