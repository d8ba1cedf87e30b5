"""Independent brute-force oracles for the test suite.

Everything here is deliberately naive and written directly from the
definitions, so it shares no code path with the library's validators,
completion search, or hom enumeration.
"""
import itertools


def law_violation(n, unit, mult):
    """First violated residuated-chain law on 0 < 1 < ... < n-1, or None.

    Checks: unit, associativity, monotonicity, and existence of both
    residuals (max of the witness set) for every pair.
    """
    for x in range(n):
        if mult[unit][x] != x or mult[x][unit] != x:
            return "unit"
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if mult[mult[x][y]][z] != mult[x][mult[y][z]]:
                    return "assoc"
    for x in range(n):
        for y in range(n):
            for y2 in range(y, n):
                if mult[x][y] > mult[x][y2] or mult[y][x] > mult[y2][x]:
                    return "monotone"
    for x in range(n):
        for z in range(n):
            left = [y for y in range(n) if mult[x][y] <= z]
            right = [w for w in range(n) if mult[w][x] <= z]
            if not left or not right:
                return "residual"
            if mult[x][max(left)] > z or mult[max(right)][x] > z:
                return "residual"
    return None


def brute_chains(n):
    """All valid residuated chains of size n as (unit, mult) pairs, by
    filtering every conceivable table.  Only feasible for n <= 3-4."""
    out = []
    cells = [(i, j) for i in range(n) for j in range(n)]
    for unit in range(n):
        for values in itertools.product(range(n), repeat=len(cells)):
            mult = [[0] * n for _ in range(n)]
            for (i, j), v in zip(cells, values):
                mult[i][j] = v
            if law_violation(n, unit, mult) is None:
                out.append((unit, tuple(tuple(r) for r in mult)))
    return out


def brute_completions(n, unit, known, checks=(), bottom_absorbing=True):
    """All chain tables extending `known` (dict (i,j)->v) and passing all the
    extra check predicates; unit row/column and the absorbing bottom row are
    filled first.  Returns a sorted list of tables."""
    base = dict(known)
    for x in range(n):
        base.setdefault((unit, x), x)
        base.setdefault((x, unit), x)
        if bottom_absorbing:
            base.setdefault((0, x), 0)
            base.setdefault((x, 0), 0)
    free = [(i, j) for i in range(n) for j in range(n) if (i, j) not in base]
    out = []
    for values in itertools.product(range(n), repeat=len(free)):
        mult = [[None] * n for _ in range(n)]
        for (i, j), v in base.items():
            if mult[i][j] is not None and mult[i][j] != v:
                break
            mult[i][j] = v
        else:
            for (i, j), v in zip(free, values):
                mult[i][j] = v
            if law_violation(n, unit, mult) is not None:
                continue
            if all(chk(mult) for chk in checks):
                out.append(tuple(tuple(r) for r in mult))
    return sorted(out)


def chain_residuals(n, mult):
    """(lres, rres) computed directly from the definition on a chain."""
    lres = [[max(y for y in range(n) if mult[x][y] <= z) for z in range(n)]
            for x in range(n)]
    rres = [[max(w for w in range(n) if mult[w][y] <= z) for y in range(n)]
            for z in range(n)]
    return lres, rres


def square_nonsemilinear():
    """A 4-element residuated lattice on the square 0 < a,b < 1 with unit at
    the coatom a: valid, simple, and not semilinear (found by search)."""
    from rlw.algebra import finite_algebra
    leq = [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]
    mult = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 2, 2], [0, 3, 2, 3]]
    return finite_algebra("sq_a", 4, leq, 1, mult)


def brute_homs(B, D, injective=False):
    """All homomorphisms by filtering every map (independent checker)."""
    out = []
    consts_b, consts_d = dict(B.constants), dict(D.constants)
    if consts_b.keys() != consts_d.keys():
        return out
    for mapping in itertools.product(range(D.size), repeat=B.size):
        if injective and len(set(mapping)) != B.size:
            continue
        if mapping[B.unit] != D.unit:
            continue
        if any(mapping[v] != consts_d[k] for k, v in consts_b.items()):
            continue
        ok = True
        for op in ("mult", "meet", "join", "lres", "rres"):
            tb, td = getattr(B, op), getattr(D, op)
            for x in range(B.size):
                for y in range(B.size):
                    if mapping[tb[x][y]] != td[mapping[x]][mapping[y]]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.append(mapping)
    return out
