"""Finite residuated lattices as explicit tables, plus the canonical file format.

Elements of an algebra of size n are the indices 0..n-1.  For a chain the index
order is the algebra order; a general lattice order is given as a boolean
matrix.  Residual tables are always derived from the order and the
multiplication table on load, never stored in files.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

FILE_FORMAT = "rlw-algebra/1"
SPAN_FORMAT = "rlw-span/1"
CONSTANT_NAMES = ("f", "bot", "top")


class AlgebraError(Exception):
    pass


class ParseError(AlgebraError):
    pass


class NotALattice(AlgebraError):
    pass


class NotAMonoid(AlgebraError):
    pass


class NotResiduated(AlgebraError):
    pass


class BadConstant(AlgebraError):
    pass


class MissingConstant(AlgebraError):
    pass


class BadParameter(AlgebraError):
    pass


class NotAChain(AlgebraError):
    pass


class NotAdmissible(AlgebraError):
    pass


class NotASubuniverse(AlgebraError):
    pass


class SignatureMismatch(AlgebraError):
    pass


class NotAnEmbedding(AlgebraError):
    pass


class NotAHomomorphism(AlgebraError):
    pass


class NotSimple(AlgebraError):
    pass


class NotSubalgebraClosed(AlgebraError):
    pass


class NotSemilinear(AlgebraError):
    pass


class NoCompletion(AlgebraError):
    pass


@dataclass(frozen=True)
class FiniteAlgebra:
    """A validated finite residuated lattice, possibly with f/bot/top constants.

    mult/meet/join/lres/rres are n x n tuples; lres[x][z] = x\\z and
    rres[z][y] = z/y.  `chain` records whether the file/order tag was "chain"
    (index order = algebra order); it is preserved by serialization.
    """

    name: str
    size: int
    unit: int
    mult: tuple
    chain: bool
    leq: tuple
    constants: tuple  # ((name, index), ...) in f, bot, top order
    meet: tuple = field(compare=False)
    join: tuple = field(compare=False)
    lres: tuple = field(compare=False)
    rres: tuple = field(compare=False)
    labels: tuple | None = field(default=None, compare=False)

    # -- basic access -------------------------------------------------------

    @property
    def elements(self):
        return range(self.size)

    def le(self, x, y):
        return self.leq[x][y]

    def mul(self, x, y):
        return self.mult[x][y]

    def under(self, x, z):
        """x\\z = max{y : x*y <= z}."""
        return self.lres[x][z]

    def over(self, z, y):
        """z/y = max{x : x*y <= z}."""
        return self.rres[z][y]

    @property
    def constants_map(self):
        return dict(self.constants)

    def has_constant(self, nm):
        return any(k == nm for k, _ in self.constants)

    def constant(self, nm):
        for k, v in self.constants:
            if k == nm:
                return v
        raise MissingConstant(f"{self.name}: constant '{nm}' is not designated")

    @property
    def bottom(self):
        for x in self.elements:
            if all(self.leq[x][y] for y in self.elements):
                return x
        raise NotALattice(f"{self.name}: no least element")

    @property
    def top(self):
        for x in self.elements:
            if all(self.leq[y][x] for y in self.elements):
                return x
        raise NotALattice(f"{self.name}: no greatest element")

    @property
    def is_trivial(self):
        return self.size == 1

    @property
    def is_totally_ordered(self):
        n = self.size
        return all(self.leq[x][y] or self.leq[y][x] for x in range(n) for y in range(n))

    def label(self, x):
        if self.labels is not None:
            return self.labels[x]
        return str(x)

    def key(self):
        """Identity of the algebra up to renaming/labels (used for dedup)."""
        return (self.size, self.unit, self.mult, self.leq, self.constants)

    # -- derived views ------------------------------------------------------

    def renamed(self, name):
        return FiniteAlgebra(name, self.size, self.unit, self.mult, self.chain,
                             self.leq, self.constants, self.meet, self.join,
                             self.lres, self.rres, self.labels)

    def reduct(self, keep=()):
        """Drop designated constants not listed in `keep` (the unit stays)."""
        consts = tuple((k, v) for k, v in self.constants if k in keep)
        return FiniteAlgebra(self.name, self.size, self.unit, self.mult, self.chain,
                             self.leq, consts, self.meet, self.join,
                             self.lres, self.rres, self.labels)

    def as_chain(self):
        """Re-code a totally ordered algebra so index order = algebra order."""
        if self.chain:
            return self
        if not self.is_totally_ordered:
            raise NotAChain(f"{self.name} is not totally ordered")
        order = sorted(self.elements, key=lambda x: sum(self.leq[y][x] for y in self.elements))
        pos = {x: i for i, x in enumerate(order)}
        n = self.size
        mult = [[pos[self.mult[order[i]][order[j]]] for j in range(n)] for i in range(n)]
        consts = {k: pos[v] for k, v in self.constants}
        labels = tuple(self.label(x) for x in order) if self.labels else None
        return finite_algebra(self.name, n, "chain", pos[self.unit], mult, consts, labels)

    def save(self):
        """Canonical one-line JSON (fixed key order, no whitespace variation)."""
        leq = "chain" if self.chain else [[1 if b else 0 for b in row] for row in self.leq]
        doc = {"format": FILE_FORMAT, "name": self.name, "size": self.size,
               "leq": leq, "unit": self.unit,
               "mult": [list(row) for row in self.mult],
               "constants": {k: v for k, v in self.constants}}
        return json.dumps(doc, separators=(",", ":"))

    def __repr__(self):
        return f"<FiniteAlgebra {self.name} n={self.size}>"


def chain_leq(n):
    return tuple(tuple(i <= j for j in range(n)) for i in range(n))


def _lattice_tables(n, leq):
    meet = [[None] * n for _ in range(n)]
    join = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            lower = [z for z in range(n) if leq[z][x] and leq[z][y]]
            glb = [z for z in lower if all(leq[w][z] for w in lower)]
            if len(glb) != 1:
                raise NotALattice(f"no meet for ({x},{y})")
            meet[x][y] = glb[0]
            upper = [z for z in range(n) if leq[x][z] and leq[y][z]]
            lub = [z for z in upper if all(leq[z][w] for w in upper)]
            if len(lub) != 1:
                raise NotALattice(f"no join for ({x},{y})")
            join[x][y] = lub[0]
    return meet, join


def _residual_tables(n, leq, mult, join):
    # x\z exists iff {y : x*y <= z} is nonempty and contains its own join;
    # afterwards the full residuation law is checked for every triple.
    lres = [[None] * n for _ in range(n)]
    rres = [[None] * n for _ in range(n)]
    for x in range(n):
        for z in range(n):
            ys = [y for y in range(n) if leq[mult[x][y]][z]]
            if not ys:
                raise NotResiduated(f"{x}\\{z} does not exist: no y with {x}*y <= {z}")
            m = ys[0]
            for y in ys[1:]:
                m = join[m][y]
            if not leq[mult[x][m]][z]:
                raise NotResiduated(f"{x}\\{z} does not exist: witness set has no maximum")
            lres[x][z] = m
            xs = [w for w in range(n) if leq[mult[w][x]][z]]
            if not xs:
                raise NotResiduated(f"{z}/{x} does not exist: no w with w*{x} <= {z}")
            m = xs[0]
            for w in xs[1:]:
                m = join[m][w]
            if not leq[mult[m][x]][z]:
                raise NotResiduated(f"{z}/{x} does not exist: witness set has no maximum")
            rres[z][x] = m
    for x in range(n):
        for y in range(n):
            for z in range(n):
                prod_le = leq[mult[x][y]][z]
                if prod_le != leq[y][lres[x][z]]:
                    raise NotResiduated(f"residuation law fails at x={x}, y={y}, z={z} (left)")
                if prod_le != leq[x][rres[z][y]]:
                    raise NotResiduated(f"residuation law fails at x={x}, y={y}, z={z} (right)")
    return lres, rres


def finite_algebra(name, size, leq, unit, mult, constants=None, labels=None):
    """Validate raw tables and return a FiniteAlgebra with derived tables.

    `leq` is either the string "chain" or an n x n 0/1 (or bool) matrix.
    Raises ParseError / NotALattice / NotAMonoid / NotResiduated / BadConstant.
    """
    if not isinstance(size, int) or size < 1:
        raise ParseError(f"bad size {size!r}")
    n = size
    chain = leq == "chain"
    if chain:
        le = chain_leq(n)
    else:
        if len(leq) != n or any(len(row) != n for row in leq):
            raise ParseError("leq matrix has wrong shape")
        le = tuple(tuple(bool(v) for v in row) for row in leq)
        for x in range(n):
            if not le[x][x]:
                raise NotALattice(f"leq not reflexive at {x}")
            for y in range(n):
                if x != y and le[x][y] and le[y][x]:
                    raise NotALattice(f"leq not antisymmetric at ({x},{y})")
                for z in range(n):
                    if le[x][y] and le[y][z] and not le[x][z]:
                        raise NotALattice(f"leq not transitive at ({x},{y},{z})")
    if len(mult) != n or any(len(row) != n for row in mult):
        raise ParseError("mult table has wrong shape")
    mt = tuple(tuple(int(v) for v in row) for row in mult)
    for row in mt:
        for v in row:
            if not 0 <= v < n:
                raise ParseError(f"mult entry {v} out of range")
    if not isinstance(unit, int) or not 0 <= unit < n:
        raise ParseError(f"unit {unit!r} out of range")

    meet, join = _lattice_tables(n, le)

    for x in range(n):
        if mt[unit][x] != x or mt[x][unit] != x:
            raise NotAMonoid(f"unit law fails: e*{x}={mt[unit][x]}, {x}*e={mt[x][unit]}")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if mt[mt[x][y]][z] != mt[x][mt[y][z]]:
                    raise NotAMonoid(f"associativity fails at ({x},{y},{z})")

    lres, rres = _residual_tables(n, le, mt, join)

    consts = dict(constants or {})
    for k in consts:
        if k not in CONSTANT_NAMES:
            raise ParseError(f"unknown constant name {k!r}")
        if not isinstance(consts[k], int) or not 0 <= consts[k] < n:
            raise ParseError(f"constant {k}={consts[k]!r} out of range")
    if "bot" in consts:
        b = consts["bot"]
        if not all(le[b][x] for x in range(n)):
            raise BadConstant(f"bot={b} is not the least element")
    if "top" in consts:
        t = consts["top"]
        if not all(le[x][t] for x in range(n)):
            raise BadConstant(f"top={t} is not the greatest element")
    const_tuple = tuple((k, consts[k]) for k in CONSTANT_NAMES if k in consts)
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise ParseError("labels have wrong length")

    return FiniteAlgebra(str(name), n, unit,
                         tuple(tuple(row) for row in mt), chain, le, const_tuple,
                         tuple(tuple(row) for row in meet), tuple(tuple(row) for row in join),
                         tuple(tuple(row) for row in lres), tuple(tuple(row) for row in rres),
                         labels)


def load_algebra(text):
    """Parse and fully validate an algebra file (UTF-8 JSON, rlw-algebra/1)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != FILE_FORMAT:
        raise ParseError(f"missing or wrong format tag (want {FILE_FORMAT!r})")
    for key in ("name", "size", "leq", "unit", "mult"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    return finite_algebra(doc["name"], doc["size"], doc["leq"], doc["unit"],
                          doc["mult"], doc.get("constants") or {})


def load_algebra_file(path):
    with open(path, encoding="utf-8") as fh:
        return load_algebra(fh.read())


def save_algebra_file(algebra, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(algebra.save())
