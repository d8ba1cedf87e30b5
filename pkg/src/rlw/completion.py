"""Backtracking completion of partial multiplication tables, and exhaustive
enumeration of residuated chains.

The search fills unknown cells in growing-principal-submatrix order, so the
left and upper neighbours of a cell are always decided first:

  * unit row/column and the absorbing row/column of the least element are
    pre-filled (residuals cannot exist otherwise);
  * candidate values are narrowed by monotonicity against decided neighbours;
  * associativity is enforced incrementally: setting m[i][j] checks every
    triple whose four lookups just became available (a product index maps
    each value to the pairs producing it);
  * centrality/commutativity ties force the mirror cell.

Constraint flags that cannot be propagated cheaply (non-central witnesses,
equations, involutivity, profile filters) are checked on completed tables,
and every completed table passes full validation before it is returned.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .algebra import ParseError, chain_leq, finite_algebra
from . import properties, terms

PARTIAL_FORMAT = "rlw-partial/1"


@dataclass
class PartialAlgebra:
    name: str
    size: int
    leq: object                     # "chain" or boolean matrix
    unit: int
    mult: list                      # n x n entries: int or None
    constants: dict = field(default_factory=dict)
    labels: tuple | None = None
    idempotent: frozenset = frozenset()
    non_idempotent: frozenset = frozenset()
    central: frozenset = frozenset()
    non_central: frozenset = frozenset()
    commutative: bool | None = None
    involutive_f: bool | None = None
    equations: tuple = ()           # strings in term syntax over labels
    require: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CompletionResult:
    algebras: tuple
    nodes: int
    seconds: float

    @property
    def multiplicity(self):
        return len(self.algebras)


def load_partial(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if doc.get("format") != PARTIAL_FORMAT:
        raise ParseError(f"missing or wrong format tag (want {PARTIAL_FORMAT!r})")
    cs = doc.get("constraints") or {}
    return PartialAlgebra(
        name=doc.get("name", "partial"),
        size=doc["size"],
        leq=doc["leq"],
        unit=doc["unit"],
        mult=[[v for v in row] for row in doc["mult"]],
        constants=doc.get("constants") or {},
        labels=tuple(doc["labels"]) if doc.get("labels") else None,
        idempotent=frozenset(cs.get("idempotent", ())),
        non_idempotent=frozenset(cs.get("non_idempotent", ())),
        central=frozenset(cs.get("central", ())),
        non_central=frozenset(cs.get("non_central", ())),
        commutative=cs.get("commutative"),
        involutive_f=cs.get("involutive_f"),
        equations=tuple(cs.get("equations", ())),
    )


def _leq_matrix(P):
    if P.leq == "chain":
        return chain_leq(P.size)
    return tuple(tuple(bool(v) for v in row) for row in P.leq)


def _bottom_of(leq, n):
    for x in range(n):
        if all(leq[x][y] for y in range(n)):
            return x
    return None


class _Search:
    def __init__(self, P: PartialAlgebra, limit=None, on_found=None):
        self.P = P
        self.n = P.size
        self.leq = _leq_matrix(P)
        self.limit = limit
        self.on_found = on_found
        self.nodes = 0
        self.out = []
        self.failed_setup = False
        n = self.n
        self.m = [[None] * n for _ in range(n)]
        self.pairs_for = [[] for _ in range(n)]   # value -> [(i, j)] with m[i][j] = value
        # ties: mirror cell forced equal (commutative globally, or central element)
        self.tied = P.commutative is True
        self.central = set(P.central)
        for i, row in enumerate(P.mult):
            for j, v in enumerate(row):
                if v is not None and not self._set(i, j, v):
                    self.failed_setup = True
                    return
        e = P.unit
        for x in range(n):
            for (i, j, v) in ((e, x, x), (x, e, x)):
                if not self._set(i, j, v):
                    self.failed_setup = True
                    return
        bot = _bottom_of(self.leq, n)
        if bot is not None:
            for x in range(n):
                for (i, j) in ((bot, x), (x, bot)):
                    if not self._set(i, j, bot):
                        self.failed_setup = True
                        return
        for x in P.idempotent:
            if not self._set(x, x, x):
                self.failed_setup = True
                return
        order = sorted(((i, j) for i in range(n) for j in range(n)),
                       key=lambda c: (max(c), c[0], c[1]))
        self.cells = [c for c in order if self.m[c[0]][c[1]] is None]

    # -- incremental constraint checks --------------------------------------

    def _mono_ok(self, i, j, v):
        m, leq, n = self.m, self.leq, self.n
        for k in range(n):
            w = m[k][j]
            if w is not None:
                if leq[k][i] and not leq[w][v]:
                    return False
                if leq[i][k] and not leq[v][w]:
                    return False
            w = m[i][k]
            if w is not None:
                if leq[k][j] and not leq[w][v]:
                    return False
                if leq[j][k] and not leq[v][w]:
                    return False
        return True

    def _assoc_ok(self, i, j, v):
        m = self.m
        for k in range(self.n):
            jk = m[j][k]
            if jk is not None:
                left, right = m[v][k], m[i][jk]
                if left is not None and right is not None and left != right:
                    return False
            ki = m[k][i]
            if ki is not None:
                left, right = m[ki][j], m[k][v]
                if left is not None and right is not None and left != right:
                    return False
        for (a, b) in self.pairs_for[i]:
            bj = m[b][j]
            if bj is not None:
                r = m[a][bj]
                if r is not None and r != v:
                    return False
        for (b, c) in self.pairs_for[j]:
            ib = m[i][b]
            if ib is not None:
                l = m[ib][c]
                if l is not None and l != v:
                    return False
        return True

    def _cell_ok(self, i, j, v):
        if i == j:
            if i in self.P.non_idempotent and v == i:
                return False
            if i in self.P.idempotent and v != i:
                return False
        return self._mono_ok(i, j, v) and self._assoc_ok(i, j, v)

    def _set(self, i, j, v, trail=None):
        """Place v at (i,j) plus the tied mirror; False on conflict."""
        queue = [(i, j, v)]
        if self.tied or i in self.central or j in self.central:
            queue.append((j, i, v))
        for (a, b, w) in queue:
            cur = self.m[a][b]
            if cur is not None:
                if cur != w:
                    return False
                continue
            if not self._cell_ok(a, b, w):
                return False
            self.m[a][b] = w
            self.pairs_for[w].append((a, b))
            if trail is not None:
                trail.append((a, b))
        return True

    def _unset(self, trail):
        for (a, b) in trail:
            v = self.m[a][b]
            self.m[a][b] = None
            self.pairs_for[v].pop()

    # -- completion-time checks ----------------------------------------------

    def _finish(self):
        P = self.P
        try:
            A = finite_algebra(P.name, self.n, P.leq, P.unit,
                               [list(row) for row in self.m], P.constants, P.labels)
        except Exception:
            return
        for c in P.central:
            if not properties.is_central(A, c):
                return
        for c in P.non_central:
            if properties.is_central(A, c):
                return
        if P.commutative is not None and properties.is_commutative(A) != P.commutative:
            return
        if P.involutive_f is not None and properties.is_involutive_f(A) != P.involutive_f:
            return
        if P.equations:
            env = {A.label(x): x for x in A.elements}
            for eq in P.equations:
                lhs, rhs = eq.split("=")
                if terms.eval_term(A, terms.parse_term(lhs), env) != \
                        terms.eval_term(A, terms.parse_term(rhs), env):
                    return
        if P.require and not properties.satisfies_flags(A, P.require):
            return
        if self.on_found is not None:
            self.on_found(A)
        else:
            self.out.append(A)

    def run(self):
        if self.failed_setup:
            return
        self._dfs(0)

    def _dfs(self, idx):
        if self.limit is not None and len(self.out) >= self.limit:
            return
        while idx < len(self.cells) and self.m[self.cells[idx][0]][self.cells[idx][1]] is not None:
            idx += 1
        if idx == len(self.cells):
            self._finish()
            return
        i, j = self.cells[idx]
        for v in range(self.n):
            self.nodes += 1
            trail = []
            if self._set(i, j, v, trail):
                self._dfs(idx + 1)
            self._unset(trail)
            if self.limit is not None and len(self.out) >= self.limit:
                return


def complete_partial(P, limit=None):
    """All completions of the partial algebra (up to `limit`), canonically
    sorted by multiplication table."""
    t0 = time.perf_counter()
    s = _Search(P, limit=limit)
    s.run()
    algebras = tuple(sorted(s.out, key=lambda A: (A.mult, A.constants)))
    return CompletionResult(algebras, s.nodes, time.perf_counter() - t0)


def enumerate_chains(n, require=None, constants=(), name_prefix=None):
    """Every residuated chain of size n over the given constant set satisfying
    the property filter, exactly once per (table, constants) assignment.

    Yields in deterministic order: unit position ascending, table lex order in
    search-cell order, then f placement.  bot/top, when in the signature, are
    pinned to the endpoints.
    """
    require = dict(require or {})
    if n < 1:
        raise ParseError("size must be >= 1")
    sig = tuple(constants)
    pre, post = {}, {}
    for key, want in require.items():
        if key in ("idempotent", "commutative", "integral") and want:
            pre[key] = True
        else:
            post[key] = want
    units = range(n - 1, n) if pre.get("integral") or n == 1 else range(1, n)
    for e in units:
        P = PartialAlgebra(
            name="tmp", size=n, leq="chain", unit=e,
            mult=[[None] * n for _ in range(n)],
            idempotent=frozenset(range(n)) if pre.get("idempotent") else frozenset(),
            commutative=True if pre.get("commutative") else None,
        )
        found = []
        s = _Search(P, on_found=found.append)
        s.run()
        found.sort(key=lambda A: A.mult)
        for k, A in enumerate(found):
            base = f"{name_prefix or 'chain'}{n}u{e}n{k}"
            consts_options = [{}]
            if "bot" in sig or "top" in sig:
                base_consts = {}
                if "bot" in sig:
                    base_consts["bot"] = 0
                if "top" in sig:
                    base_consts["top"] = n - 1
                consts_options = [base_consts]
            if "f" in sig:
                consts_options = [dict(c, f=fpos) for c in consts_options
                                  for fpos in range(n)]
            for consts in consts_options:
                out = finite_algebra(base if not consts else
                                     base + "".join(f"{k2}{v2}" for k2, v2 in sorted(consts.items())),
                                     n, "chain", e, [list(r) for r in A.mult], consts)
                if properties.satisfies_flags(out, post):
                    yield out
